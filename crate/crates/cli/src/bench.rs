//! Run dispatch and the evaluation harness: one mining run per config,
//! and sweeps over k or database-size prefixes comparing the exact miner,
//! the no-QMSP variant, and the heuristic baseline.

use std::fmt;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::ValueEnum;
use serde::Serialize;
use thiserror::Error;

use nosp::model::{GapConstraint, LengthConstraint, SequenceDatabase};
use nosp::oracle::{exhaustive_topk, OracleError, OracleLimits};
use nosp::{heuristic_mine, precision, tnosp_mine, MinerError, MiningReport};

use crate::io::{load_database, Format, LoadError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algorithm {
    Tnosp,
    TnospNoqmsp,
    Heuristic,
    Bruteforce,
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Algorithm::Tnosp => "tnosp",
            Algorithm::TnospNoqmsp => "tnosp-noqmsp",
            Algorithm::Heuristic => "heuristic",
            Algorithm::Bruteforce => "bruteforce",
        };
        write!(f, "{name}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Load(#[from] LoadError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Miner(#[from] MinerError),
    #[error("cannot write {path}: {source}")]
    Write {
        path: String,
        source: std::io::Error,
    },
}

impl CliError {
    /// 1 usage/config, 2 input parse, 3 oracle limits.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Miner(_) | CliError::Write { .. } => 1,
            CliError::Load(_) => 2,
            CliError::Oracle(OracleError::ZeroK) => 1,
            CliError::Oracle(_) => 3,
        }
    }
}

/// Limits applied to `--algorithm bruteforce`; far above the library
/// defaults so small real inputs work, still finite so runaway pattern
/// spaces are refused instead of hanging.
pub fn cli_oracle_limits() -> OracleLimits {
    OracleLimits {
        max_sequence_length: 100_000,
        max_pattern_length: 64,
        max_total_patterns: 2_000_000,
        max_occurrences: 1_000_000,
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub input: PathBuf,
    pub format: Format,
    pub k: usize,
    pub gap: GapConstraint,
    pub len: LengthConstraint,
    pub algorithm: Algorithm,
    pub heuristic_max_len: Option<usize>,
}

/// Everything measured about one run: the config echo, the split
/// wall-clock view (file handling vs mining), and the engine counters.
#[derive(Debug, Clone, Serialize)]
pub struct BenchRecord {
    pub algorithm: String,
    pub input: String,
    pub format: String,
    pub k: usize,
    pub mingap: usize,
    pub maxgap: usize,
    pub minlen: usize,
    pub maxlen: usize,
    pub heuristic_max_len: Option<usize>,
    pub io_ms: f64,
    pub runtime_ms: f64,
    pub visited_nodes: u64,
    pub candidates_per_length: Vec<usize>,
    pub supports_computed: u64,
    pub result_count: usize,
    pub l_max: usize,
    pub precision_vs_exact: Option<f64>,
}

fn record(config: &RunConfig, report: &MiningReport, io_ms: f64) -> BenchRecord {
    BenchRecord {
        algorithm: config.algorithm.to_string(),
        input: config.input.display().to_string(),
        format: config.format.to_string(),
        k: config.k,
        mingap: config.gap.mingap(),
        maxgap: config.gap.maxgap(),
        minlen: config.len.minlen(),
        maxlen: config.len.maxlen(),
        heuristic_max_len: config.heuristic_max_len,
        io_ms,
        runtime_ms: report.metrics.runtime.as_secs_f64() * 1e3,
        visited_nodes: report.metrics.visited_nodes,
        candidates_per_length: report.metrics.candidates_per_length.clone(),
        supports_computed: report.metrics.supports_computed,
        result_count: report.ranked.len(),
        l_max: report.l_max,
        precision_vs_exact: None,
    }
}

fn dispatch(
    db: &SequenceDatabase,
    algorithm: Algorithm,
    k: usize,
    gap: GapConstraint,
    len: LengthConstraint,
    heuristic_max_len: Option<usize>,
) -> Result<MiningReport, CliError> {
    match algorithm {
        Algorithm::Tnosp => Ok(tnosp_mine(db, k, gap, len, true)?),
        Algorithm::TnospNoqmsp => Ok(tnosp_mine(db, k, gap, len, false)?),
        Algorithm::Heuristic => {
            let max_len = heuristic_max_len.ok_or_else(|| {
                CliError::Usage(
                    "--heuristic-max-len is required with --algorithm heuristic".to_string(),
                )
            })?;
            Ok(heuristic_mine(db, k, max_len, gap, len)?)
        }
        Algorithm::Bruteforce => Ok(exhaustive_topk(db, k, gap, len, &cli_oracle_limits())?),
    }
}

/// Loads the input, runs the configured algorithm, and returns the report
/// with its bench record. Mining time and file time are kept separate.
pub fn run_mine(config: &RunConfig) -> Result<(MiningReport, BenchRecord), CliError> {
    let io_start = Instant::now();
    let db = load_database(&config.input, config.format)?;
    let io_ms = io_start.elapsed().as_secs_f64() * 1e3;
    let report = dispatch(
        &db,
        config.algorithm,
        config.k,
        config.gap,
        config.len,
        config.heuristic_max_len,
    )?;
    let rec = record(config, &report, io_ms);
    Ok((report, rec))
}

#[derive(Debug, Clone)]
pub struct EvalConfig {
    pub input: PathBuf,
    pub format: Format,
    pub k_list: Vec<usize>,
    /// When set, sweep database-size prefixes in this increment with k
    /// fixed to the first entry of k_list.
    pub size_step: Option<usize>,
    pub gap: GapConstraint,
    pub len: LengthConstraint,
}

/// One sweep row. Failed runs keep the sweep going and carry the error.
#[derive(Debug, Clone, Serialize)]
pub struct EvalRow {
    pub status: String,
    pub error: Option<String>,
    pub k: usize,
    pub size: usize,
    pub algorithm: String,
    pub heuristic_max_len: Option<usize>,
    pub runtime_ms: Option<f64>,
    pub visited_nodes: Option<u64>,
    pub candidates_total: Option<usize>,
    pub supports_computed: Option<u64>,
    pub result_count: Option<usize>,
    pub l_max: Option<usize>,
    pub precision_vs_exact: Option<f64>,
}

impl EvalRow {
    fn ok(
        k: usize,
        size: usize,
        algorithm: &str,
        heuristic_max_len: Option<usize>,
        report: &MiningReport,
        precision_vs_exact: Option<f64>,
    ) -> Self {
        EvalRow {
            status: "ok".to_string(),
            error: None,
            k,
            size,
            algorithm: algorithm.to_string(),
            heuristic_max_len,
            runtime_ms: Some(report.metrics.runtime.as_secs_f64() * 1e3),
            visited_nodes: Some(report.metrics.visited_nodes),
            candidates_total: Some(report.metrics.candidates_per_length.iter().sum()),
            supports_computed: Some(report.metrics.supports_computed),
            result_count: Some(report.ranked.len()),
            l_max: Some(report.l_max),
            precision_vs_exact,
        }
    }

    fn failed(k: usize, size: usize, algorithm: &str, error: String) -> Self {
        EvalRow {
            status: "failed".to_string(),
            error: Some(error),
            k,
            size,
            algorithm: algorithm.to_string(),
            heuristic_max_len: None,
            runtime_ms: None,
            visited_nodes: None,
            candidates_total: None,
            supports_computed: None,
            result_count: None,
            l_max: None,
            precision_vs_exact: None,
        }
    }
}

fn eval_one(db: &SequenceDatabase, k: usize, size: usize, cfg: &EvalConfig) -> Vec<EvalRow> {
    let mut rows = Vec::new();
    let exact = match tnosp_mine(db, k, cfg.gap, cfg.len, true) {
        Ok(r) => r,
        Err(e) => {
            rows.push(EvalRow::failed(k, size, "tnosp", e.to_string()));
            return rows;
        }
    };
    let self_precision = precision(&exact, &exact).ok();
    rows.push(EvalRow::ok(k, size, "tnosp", None, &exact, self_precision));

    match tnosp_mine(db, k, cfg.gap, cfg.len, false) {
        Ok(r) => {
            let p = precision(&exact, &r).ok();
            rows.push(EvalRow::ok(k, size, "tnosp-noqmsp", None, &r, p));
        }
        Err(e) => rows.push(EvalRow::failed(k, size, "tnosp-noqmsp", e.to_string())),
    }

    // the baseline needs an explicit length bound; feed it the exact
    // miner's deepest result length
    let max_len = exact.l_max.max(1);
    match heuristic_mine(db, k, max_len, cfg.gap, cfg.len) {
        Ok(r) => {
            let p = precision(&exact, &r).ok();
            rows.push(EvalRow::ok(k, size, "heuristic", Some(max_len), &r, p));
        }
        Err(e) => rows.push(EvalRow::failed(k, size, "heuristic", e.to_string())),
    }
    rows
}

/// Runs the sweep: one trio of rows (tnosp, tnosp-noqmsp, heuristic) per
/// k, or per database-size prefix when `size_step` is set.
pub fn run_eval(cfg: &EvalConfig) -> Result<Vec<EvalRow>, CliError> {
    if cfg.k_list.is_empty() {
        return Err(CliError::Usage(
            "--k-list must name at least one k".to_string(),
        ));
    }
    let db = load_database(&cfg.input, cfg.format)?;
    let mut rows = Vec::new();
    match cfg.size_step {
        None => {
            let size = db.len();
            for &k in &cfg.k_list {
                rows.extend(eval_one(&db, k, size, cfg));
            }
        }
        Some(step) => {
            if step == 0 {
                return Err(CliError::Usage(
                    "--size-step must be at least 1".to_string(),
                ));
            }
            let k = cfg.k_list[0];
            let mut size = step;
            while size <= db.len() {
                let prefix = SequenceDatabase::new(db.sequences()[..size].to_vec())
                    .expect("sids stay unique");
                rows.extend(eval_one(&prefix, k, size, cfg));
                size += step;
            }
        }
    }
    Ok(rows)
}

/// Writes the sweep table: JSON when the path ends in .json, CSV
/// otherwise.
pub fn write_eval_table(rows: &[EvalRow], path: &Path) -> Result<(), CliError> {
    let is_json = path
        .extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("json"));
    let body = if is_json {
        let mut s = serde_json::to_string_pretty(rows).expect("rows serialize");
        s.push('\n');
        s
    } else {
        let mut w = csv::Writer::from_writer(Vec::new());
        for row in rows {
            w.serialize(row)
                .map_err(|e| CliError::Usage(e.to_string()))?;
        }
        String::from_utf8(w.into_inner().expect("csv flush")).expect("csv is utf-8")
    };
    std::fs::write(path, body).map_err(|source| CliError::Write {
        path: path.display().to_string(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write as _;

    fn walkthrough_file() -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        writeln!(f, "AGTCAGCAC").unwrap();
        f
    }

    fn config(algorithm: Algorithm, path: &Path) -> RunConfig {
        RunConfig {
            input: path.to_path_buf(),
            format: Format::Lines,
            k: 3,
            gap: GapConstraint::new(0, 3).unwrap(),
            len: LengthConstraint::new(1, 9).unwrap(),
            algorithm,
            heuristic_max_len: None,
        }
    }

    #[test]
    fn all_algorithms_agree_on_the_walkthrough() {
        let f = walkthrough_file();
        let (exact, rec) = run_mine(&config(Algorithm::Tnosp, f.path())).unwrap();
        assert_eq!(rec.result_count, 3);
        assert_eq!(rec.l_max, 2);

        let (noq, _) = run_mine(&config(Algorithm::TnospNoqmsp, f.path())).unwrap();
        assert_eq!(exact.ranked, noq.ranked);

        let (brute, _) = run_mine(&config(Algorithm::Bruteforce, f.path())).unwrap();
        assert_eq!(exact.ranked, brute.ranked);

        let mut heur_cfg = config(Algorithm::Heuristic, f.path());
        heur_cfg.heuristic_max_len = Some(exact.l_max);
        let (heur, hrec) = run_mine(&heur_cfg).unwrap();
        assert_eq!(exact.ranked, heur.ranked);
        assert_eq!(hrec.heuristic_max_len, Some(2));
    }

    #[test]
    fn heuristic_requires_its_length_bound() {
        let f = walkthrough_file();
        let err = run_mine(&config(Algorithm::Heuristic, f.path())).unwrap_err();
        assert_eq!(err.exit_code(), 1);
    }

    #[test]
    fn eval_sweep_reports_precision_per_row() {
        let f = walkthrough_file();
        let cfg = EvalConfig {
            input: f.path().to_path_buf(),
            format: Format::Lines,
            k_list: vec![3, 2],
            size_step: None,
            gap: GapConstraint::new(0, 3).unwrap(),
            len: LengthConstraint::new(1, 9).unwrap(),
        };
        let rows = run_eval(&cfg).unwrap();
        assert_eq!(rows.len(), 6);
        assert!(rows.iter().all(|r| r.status == "ok"));
        for r in &rows {
            if r.algorithm == "tnosp" {
                assert_eq!(r.precision_vs_exact, Some(1.0));
            }
            if r.algorithm == "tnosp-noqmsp" {
                assert_eq!(r.precision_vs_exact, Some(1.0));
            }
        }
        // QMSP generates no more candidates than the unpruned run
        let with: usize = rows[0].candidates_total.unwrap();
        let without: usize = rows[1].candidates_total.unwrap();
        assert!(with <= without);
    }

    #[test]
    fn eval_marks_failed_rows_instead_of_aborting() {
        let f = walkthrough_file();
        let cfg = EvalConfig {
            input: f.path().to_path_buf(),
            format: Format::Lines,
            k_list: vec![0, 3],
            size_step: None,
            gap: GapConstraint::new(0, 3).unwrap(),
            len: LengthConstraint::new(1, 9).unwrap(),
        };
        let rows = run_eval(&cfg).unwrap();
        assert_eq!(rows[0].status, "failed");
        assert!(rows[0].error.as_deref().unwrap_or("").contains("k"));
        assert_eq!(rows.len(), 4);
        assert!(rows[1..].iter().all(|r| r.status == "ok"));
    }

    #[test]
    fn oracle_limit_errors_map_to_exit_three() {
        let f = walkthrough_file();
        let mut cfg = config(Algorithm::Bruteforce, f.path());
        cfg.len = LengthConstraint::new(1, 20).unwrap();
        let err = run_mine(&cfg).unwrap_err();
        assert_eq!(err.exit_code(), 3);
    }

    #[test]
    fn load_errors_map_to_exit_two() {
        let cfg = config(Algorithm::Tnosp, Path::new("/nonexistent/db.txt"));
        let err = run_mine(&cfg).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }
}
