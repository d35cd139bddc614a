//! Sequence file loading and writing: FASTA records or one bare sequence
//! per line.

use std::fmt;
use std::path::Path;

use clap::ValueEnum;
use thiserror::Error;

use nosp::model::{Item, Sequence, SequenceDatabase};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// '>' header lines introduce records; residues are uppercased
    Fasta,
    /// one sequence per non-empty line, sid = line number
    Lines,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Format::Fasta => write!(f, "fasta"),
            Format::Lines => write!(f, "lines"),
        }
    }
}

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}:{line}: {message}")]
    Parse {
        path: String,
        line: usize,
        message: String,
    },
}

pub fn load_database(path: &Path, format: Format) -> Result<SequenceDatabase, LoadError> {
    let text = std::fs::read_to_string(path).map_err(|source| LoadError::Read {
        path: path.display().to_string(),
        source,
    })?;
    parse_database(&text, format).map_err(|(line, message)| LoadError::Parse {
        path: path.display().to_string(),
        line,
        message,
    })
}

/// Parses file contents; errors carry the offending 1-based line number.
pub fn parse_database(text: &str, format: Format) -> Result<SequenceDatabase, (usize, String)> {
    let sequences = match format {
        Format::Fasta => parse_fasta(text)?,
        Format::Lines => parse_lines(text)?,
    };
    if sequences.is_empty() {
        return Err((1, "empty database: no sequences found".to_string()));
    }
    let mut sids = std::collections::HashSet::new();
    for (seq, line) in &sequences {
        if !sids.insert(seq.sid().to_string()) {
            return Err((*line, format!("duplicate sequence id {:?}", seq.sid())));
        }
    }
    SequenceDatabase::new(sequences.into_iter().map(|(s, _)| s).collect())
        .map_err(|e| (1, e.to_string()))
}

fn parse_fasta(text: &str) -> Result<Vec<(Sequence, usize)>, (usize, String)> {
    let mut out: Vec<(Sequence, usize)> = Vec::new();
    let mut current: Option<(String, Vec<Item>, usize)> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(header) = trimmed.strip_prefix('>') {
            if let Some((sid, items, at)) = current.take() {
                out.push((Sequence::new(sid, items), at));
            }
            let sid = header
                .split_whitespace()
                .next()
                .ok_or_else(|| (line, "missing sequence identifier after '>'".to_string()))?;
            current = Some((sid.to_string(), Vec::new(), line));
        } else {
            let Some((_, items, _)) = current.as_mut() else {
                return Err((line, "sequence data before any '>' header".to_string()));
            };
            for c in trimmed.chars().filter(|c| !c.is_whitespace()) {
                for upper in c.to_uppercase() {
                    items.push(Item::new(upper).expect("whitespace already filtered"));
                }
            }
        }
    }
    if let Some((sid, items, at)) = current.take() {
        out.push((Sequence::new(sid, items), at));
    }
    Ok(out)
}

fn parse_lines(text: &str) -> Result<Vec<(Sequence, usize)>, (usize, String)> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.trim();
        if content.is_empty() {
            continue;
        }
        if content.chars().any(char::is_whitespace) {
            return Err((line, "whitespace inside a sequence line".to_string()));
        }
        let items = content
            .chars()
            .map(|c| Item::new(c).expect("whitespace already rejected"))
            .collect();
        out.push((Sequence::new(line.to_string(), items), line));
    }
    Ok(out)
}

/// Renders a database in the given format; `load ∘ write` is the identity
/// for fasta, and for lines whenever sids are consecutive line numbers
/// (which `write` itself produces).
pub fn write_database(db: &SequenceDatabase, format: Format) -> String {
    let mut out = String::new();
    for seq in db.sequences() {
        let text: String = seq.items().iter().map(|i| i.as_char()).collect();
        match format {
            Format::Fasta => {
                out.push('>');
                out.push_str(seq.sid());
                out.push('\n');
                out.push_str(&text);
                out.push('\n');
            }
            Format::Lines => {
                out.push_str(&text);
                out.push('\n');
            }
        }
    }
    out
}
