use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use nosp::model::{GapConstraint, LengthConstraint};
use nosp_cli::bench::{
    run_eval, run_mine, write_eval_table, Algorithm, CliError, EvalConfig, OutputFormat, RunConfig,
};
use nosp_cli::io::{write_database, Format};
use nosp_cli::report::{to_csv, to_json};
use nosp_cli::synth::{gen_synthetic, SynthSpec};

/// Top-k non-overlapping sequential pattern mining over symbol sequences.
#[derive(Parser)]
#[command(name = "nosp", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Mine the top-k patterns from a sequence file
    Mine(MineArgs),
    /// Sweep k values or database-size prefixes and tabulate miner
    /// comparisons with precision against the exact result
    Eval(EvalArgs),
    /// Generate a synthetic sequence database
    Gen(GenArgs),
}

#[derive(Args)]
struct MineArgs {
    /// Sequence file to mine
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Fasta)]
    format: Format,
    /// Number of patterns to return
    #[arg(long)]
    k: usize,
    /// Minimum items between adjacent matched positions
    #[arg(long, default_value_t = 0)]
    mingap: usize,
    /// Maximum items between adjacent matched positions
    #[arg(long, default_value_t = 5)]
    maxgap: usize,
    /// Minimum occurrence span
    #[arg(long, default_value_t = 1)]
    minlen: usize,
    /// Maximum occurrence span
    #[arg(long, default_value_t = 20)]
    maxlen: usize,
    #[arg(long, value_enum, default_value_t = Algorithm::Tnosp)]
    algorithm: Algorithm,
    /// Longest pattern length the heuristic explores (required with
    /// --algorithm heuristic)
    #[arg(long)]
    heuristic_max_len: Option<usize>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    output: OutputFormat,
    /// Write the bench record to this file instead of stderr
    #[arg(long)]
    stats: Option<PathBuf>,
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Fasta)]
    format: Format,
    /// k values to sweep
    #[arg(
        long = "k-list",
        value_delimiter = ',',
        default_value = "10,20,30,40,50,60"
    )]
    k_list: Vec<usize>,
    /// Sweep database-size prefixes in this increment instead of k
    /// (k is then fixed to the first entry of --k-list)
    #[arg(long = "size-step")]
    size_step: Option<usize>,
    #[arg(long, default_value_t = 0)]
    mingap: usize,
    #[arg(long, default_value_t = 5)]
    maxgap: usize,
    #[arg(long, default_value_t = 1)]
    minlen: usize,
    #[arg(long, default_value_t = 20)]
    maxlen: usize,
    /// Table destination; .json gets a JSON array, anything else CSV
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct GenArgs {
    /// Alphabet size (ACGT first, then further capital letters)
    #[arg(long)]
    alphabet: usize,
    /// Number of sequences
    #[arg(long)]
    count: usize,
    /// Items per sequence
    #[arg(long)]
    len: usize,
    /// Motif to plant once per sequence
    #[arg(long)]
    motif: Option<String>,
    /// Gap window between motif items, written a,b
    #[arg(long = "motif-gap", value_parser = parse_gap_pair, default_value = "0,0")]
    motif_gap: (usize, usize),
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
    /// Output file format
    #[arg(long, value_enum, default_value_t = Format::Fasta)]
    format: Format,
}

fn parse_gap_pair(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected two comma-separated integers, got {s:?}"))?;
    let lo: usize = a.trim().parse().map_err(|_| format!("bad integer {a:?}"))?;
    let hi: usize = b.trim().parse().map_err(|_| format!("bad integer {b:?}"))?;
    Ok((lo, hi))
}

fn constraints(
    mingap: usize,
    maxgap: usize,
    minlen: usize,
    maxlen: usize,
) -> Result<(GapConstraint, LengthConstraint), CliError> {
    let gap = GapConstraint::new(mingap, maxgap).map_err(|e| CliError::Usage(e.to_string()))?;
    let len = LengthConstraint::new(minlen, maxlen).map_err(|e| CliError::Usage(e.to_string()))?;
    Ok((gap, len))
}

fn cmd_mine(args: MineArgs) -> Result<(), CliError> {
    if args.k == 0 {
        return Err(CliError::Usage("--k must be at least 1".to_string()));
    }
    let (gap, len) = constraints(args.mingap, args.maxgap, args.minlen, args.maxlen)?;
    let config = RunConfig {
        input: args.input,
        format: args.format,
        k: args.k,
        gap,
        len,
        algorithm: args.algorithm,
        heuristic_max_len: args.heuristic_max_len,
    };
    let (report, record) = run_mine(&config)?;
    let body = match args.output {
        OutputFormat::Json => to_json(&report),
        OutputFormat::Csv => to_csv(&report),
    };
    print!("{body}");
    let stats = serde_json::to_string_pretty(&record).expect("record serializes");
    match args.stats {
        Some(path) => std::fs::write(&path, stats + "\n").map_err(|source| CliError::Write {
            path: path.display().to_string(),
            source,
        })?,
        None => eprintln!("{stats}"),
    }
    Ok(())
}

fn cmd_eval(args: EvalArgs) -> Result<(), CliError> {
    if args.k_list.contains(&0) {
        return Err(CliError::Usage(
            "--k-list entries must be at least 1".to_string(),
        ));
    }
    let (gap, len) = constraints(args.mingap, args.maxgap, args.minlen, args.maxlen)?;
    let cfg = EvalConfig {
        input: args.input,
        format: args.format,
        k_list: args.k_list,
        size_step: args.size_step,
        gap,
        len,
    };
    let rows = run_eval(&cfg)?;
    write_eval_table(&rows, &args.out)?;
    eprintln!("wrote {} rows to {}", rows.len(), args.out.display());
    Ok(())
}

fn cmd_gen(args: GenArgs) -> Result<(), CliError> {
    let spec = SynthSpec {
        alphabet: args.alphabet,
        count: args.count,
        length: args.len,
        motif: args.motif,
        motif_gap: args.motif_gap,
        seed: args.seed,
    };
    let db = gen_synthetic(&spec).map_err(|e| CliError::Usage(e.to_string()))?;
    let body = write_database(&db, args.format);
    std::fs::write(&args.out, body).map_err(|source| CliError::Write {
        path: args.out.display().to_string(),
        source,
    })?;
    eprintln!(
        "wrote {} sequences of length {} to {}",
        spec.count,
        spec.length,
        args.out.display()
    );
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Mine(args) => cmd_mine(args),
        Command::Eval(args) => cmd_eval(args),
        Command::Gen(args) => cmd_gen(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
