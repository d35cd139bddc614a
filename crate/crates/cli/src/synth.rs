//! Deterministic synthetic database generation, optionally planting a
//! motif with gaps drawn from a window so mining recovers it.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use nosp::model::{Item, Sequence, SequenceDatabase};

#[derive(Debug, Clone)]
pub struct SynthSpec {
    pub alphabet: usize,
    pub count: usize,
    pub length: usize,
    pub motif: Option<String>,
    /// gap window used between adjacent motif items
    pub motif_gap: (usize, usize),
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SynthError {
    #[error("alphabet size must be between 1 and 26, got {0}")]
    AlphabetSize(usize),
    #[error("sequence count must be at least 1")]
    ZeroCount,
    #[error("sequence length must be at least 1")]
    ZeroLength,
    #[error("motif gap window [{0}, {1}] has min above max")]
    GapWindow(usize, usize),
    #[error("motif items must be non-whitespace characters")]
    MotifItem,
    #[error("motif needs up to {needed} positions but sequences have {available}")]
    MotifDoesNotFit { needed: usize, available: usize },
}

/// ACGT first so DNA-sized alphabets look like DNA, then the remaining
/// capital letters.
pub fn alphabet_letters(n: usize) -> Result<Vec<char>, SynthError> {
    if n == 0 || n > 26 {
        return Err(SynthError::AlphabetSize(n));
    }
    let order: Vec<char> = "ACGT"
        .chars()
        .chain(('A'..='Z').filter(|c| !"ACGT".contains(*c)))
        .collect();
    Ok(order.into_iter().take(n).collect())
}

/// Builds `count` sequences of `length` uniform random letters; when a
/// motif is given, one occurrence is planted per sequence at a random
/// start with gaps drawn uniformly from the window. A fixed seed gives a
/// byte-identical database.
pub fn gen_synthetic(spec: &SynthSpec) -> Result<SequenceDatabase, SynthError> {
    let letters = alphabet_letters(spec.alphabet)?;
    if spec.count == 0 {
        return Err(SynthError::ZeroCount);
    }
    if spec.length == 0 {
        return Err(SynthError::ZeroLength);
    }
    let (gmin, gmax) = spec.motif_gap;
    if gmin > gmax {
        return Err(SynthError::GapWindow(gmin, gmax));
    }
    let motif: Vec<char> = match &spec.motif {
        None => Vec::new(),
        Some(m) => {
            if m.chars().any(char::is_whitespace) || m.is_empty() {
                return Err(SynthError::MotifItem);
            }
            let worst = m.chars().count() + (m.chars().count() - 1) * gmax;
            if worst > spec.length {
                return Err(SynthError::MotifDoesNotFit {
                    needed: worst,
                    available: spec.length,
                });
            }
            m.chars().collect()
        }
    };

    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut sequences = Vec::with_capacity(spec.count);
    for i in 0..spec.count {
        let mut chars: Vec<char> = (0..spec.length)
            .map(|_| letters[rng.random_range(0..letters.len())])
            .collect();
        if !motif.is_empty() {
            let gaps: Vec<usize> = (1..motif.len())
                .map(|_| rng.random_range(gmin..=gmax))
                .collect();
            let span = motif.len() + gaps.iter().sum::<usize>();
            let start = rng.random_range(0..=spec.length - span);
            let mut pos = start;
            chars[pos] = motif[0];
            for (j, g) in gaps.iter().enumerate() {
                pos += 1 + g;
                chars[pos] = motif[j + 1];
            }
        }
        let items: Vec<Item> = chars
            .into_iter()
            .map(|c| Item::new(c).expect("letters are never whitespace"))
            .collect();
        sequences.push(Sequence::new(format!("s{}", i + 1), items));
    }
    Ok(SequenceDatabase::new(sequences).expect("generated sids are unique"))
}
