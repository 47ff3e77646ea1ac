mod commands;
mod output;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{ArgGroup, Args, CommandFactory, Parser, Subcommand, ValueEnum};
use natave::{Direction, ScanConfig, ShapeKind};

use output::{Failure, Format};

/// Prime-tower trees of the natural numbers.
#[derive(Debug, Parser)]
#[command(name = "natave", version, about)]
struct Cli {
    /// Output format. `dot` is only available for `tree`.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Worker threads for range scans [default: available parallelism]
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..=1024))]
    threads: Option<u32>,

    /// Report elapsed time on stderr.
    #[arg(long, global = true)]
    timing: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// The tree of a single integer.
    Tree {
        n: u64,
        /// Keep the prime labels.
        #[arg(long)]
        labeled: bool,
        /// Sort children into the order-free canonical form.
        #[arg(long, conflicts_with = "labeled")]
        unordered: bool,
    },
    /// First occurrences of each shape up to a bound.
    Seq {
        #[arg(long)]
        max: u64,
        #[arg(long, value_enum, default_value_t = Kind::Planar)]
        kind: Kind,
    },
    /// Positions where a word occurs.
    Match {
        #[arg(long)]
        word: String,
        #[arg(long)]
        max: u64,
        /// Stop after this many positions.
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Least window extension that makes the window at `n` unique.
    Kappa {
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum)]
        direction: Dir,
        #[arg(long)]
        bound: u64,
        /// Largest extension tried.
        #[arg(long, default_value_t = natave::observable::DEFAULT_KAPPA_CAP)]
        cap: u64,
    },
    /// Unique words whose proper subwords all repeat.
    Milestones {
        #[arg(long)]
        bound: u64,
        #[arg(long)]
        max_len: u64,
    },
    /// Match counts against an analytic model.
    Density(DensityArgs),
    /// Gap statistics between consecutive occurrences of a word.
    Gaps {
        #[arg(long)]
        word: String,
        #[arg(long)]
        max: u64,
    },
    /// Least integer with a given shape.
    Minreal {
        #[arg(long)]
        shape: String,
        #[arg(long)]
        unordered: bool,
    },
    /// Check first occurrences against a b-file.
    Compare {
        #[arg(long = "oeis-bfile")]
        bfile: std::path::PathBuf,
        #[arg(long, value_enum, default_value_t = Kind::Planar)]
        kind: Kind,
        #[arg(long)]
        max: u64,
    },
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("target").required(true).args(["word", "squarefree", "shape"])))]
struct DensityArgs {
    #[arg(long)]
    word: Option<String>,
    #[arg(long)]
    squarefree: bool,
    #[arg(long)]
    shape: Option<String>,
    /// Count shapes up to child order.
    #[arg(long, requires = "shape")]
    unordered: bool,
    #[arg(long)]
    max: u64,
    /// pnt, li, semiprime or const:<c>
    #[arg(long, default_value = "pnt")]
    model: String,
    /// Comma-separated bounds to report [default: --max]
    #[arg(long, value_delimiter = ',')]
    checkpoints: Vec<u64>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Kind {
    Planar,
    Unordered,
}

impl From<Kind> for ShapeKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Planar => ShapeKind::Planar,
            Kind::Unordered => ShapeKind::Unordered,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Dir {
    Plus,
    Minus,
}

impl From<Dir> for Direction {
    fn from(d: Dir) -> Self {
        match d {
            Dir::Plus => Direction::Forward,
            Dir::Minus => Direction::Backward,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.format == Format::Dot && !matches!(cli.command, Command::Tree { .. }) {
        Cli::command()
            .error(
                clap::error::ErrorKind::ArgumentConflict,
                "--format dot is only supported by `tree`",
            )
            .exit();
    }
    let started = Instant::now();
    let (name, params, outcome) = run(&cli);
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let code = match outcome {
        Ok(payload) => {
            output::emit(&mut out, cli.format, name, &params, &payload).expect("write to stdout");
            ExitCode::SUCCESS
        }
        Err(failure) => {
            output::emit_error(&mut out, cli.format, name, &params, &failure)
                .expect("write to stdout");
            ExitCode::from(1)
        }
    };
    out.flush().ok();
    if cli.timing {
        eprintln!("elapsed: {:.3} s", started.elapsed().as_secs_f64());
    }
    code
}

fn scan_config(threads: Option<u32>) -> Result<ScanConfig, Failure> {
    let threads = match threads {
        Some(t) => t as usize,
        None => std::thread::available_parallelism().map_or(1, |n| n.get()),
    };
    Ok(ScanConfig::from_env()?.with_threads(threads))
}

fn run(
    cli: &Cli,
) -> (
    &'static str,
    output::Params,
    Result<output::Payload, Failure>,
) {
    use commands::*;
    use serde_json::json;

    let cfg = scan_config(cli.threads);
    let with_cfg = |f: &dyn Fn(&ScanConfig) -> Result<output::Payload, Failure>| match &cfg {
        Ok(c) => f(c),
        Err(e) => Err(e.clone()),
    };
    let format = cli.format;
    match &cli.command {
        Command::Tree {
            n,
            labeled,
            unordered,
        } => (
            "tree",
            output::params([
                ("n", json!(n)),
                ("labeled", json!(labeled)),
                ("unordered", json!(unordered)),
            ]),
            tree(*n, *labeled, *unordered, format),
        ),
        Command::Seq { max, kind } => (
            "seq",
            output::params([
                ("max", json!(max)),
                ("kind", json!(ShapeKind::from(*kind).to_string())),
            ]),
            with_cfg(&|c| seq(*max, (*kind).into(), c)),
        ),
        Command::Match { word, max, limit } => (
            "match",
            output::params([
                ("word", json!(word)),
                ("max", json!(max)),
                ("limit", json!(limit)),
            ]),
            with_cfg(&|c| find(word, *max, *limit, c)),
        ),
        Command::Kappa {
            n,
            direction,
            bound,
            cap,
        } => (
            "kappa",
            output::params([
                ("n", json!(n)),
                (
                    "direction",
                    json!(direction
                        .to_possible_value()
                        .map(|v| v.get_name().to_string())),
                ),
                ("bound", json!(bound)),
                ("cap", json!(cap)),
            ]),
            with_cfg(&|c| kappa(*n, (*direction).into(), *bound, *cap, c)),
        ),
        Command::Milestones { bound, max_len } => (
            "milestones",
            output::params([("bound", json!(bound)), ("max_len", json!(max_len))]),
            with_cfg(&|c| milestones(*bound, *max_len, c)),
        ),
        Command::Density(args) => {
            let checkpoints = if args.checkpoints.is_empty() {
                vec![args.max]
            } else {
                args.checkpoints.clone()
            };
            (
                "density",
                output::params([
                    ("word", json!(args.word)),
                    ("squarefree", json!(args.squarefree)),
                    ("shape", json!(args.shape)),
                    ("unordered", json!(args.unordered)),
                    ("max", json!(args.max)),
                    ("model", json!(args.model)),
                    ("checkpoints", json!(checkpoints)),
                ]),
                with_cfg(&|c| density(args, &checkpoints, c)),
            )
        }
        Command::Gaps { word, max } => (
            "gaps",
            output::params([("word", json!(word)), ("max", json!(max))]),
            with_cfg(&|c| gaps(word, *max, c)),
        ),
        Command::Minreal { shape, unordered } => (
            "minreal",
            output::params([("shape", json!(shape)), ("unordered", json!(unordered))]),
            minreal(shape, *unordered),
        ),
        Command::Compare { bfile, kind, max } => (
            "compare",
            output::params([
                ("oeis_bfile", json!(bfile.display().to_string())),
                ("kind", json!(ShapeKind::from(*kind).to_string())),
                ("max", json!(max)),
            ]),
            with_cfg(&|c| compare(bfile, (*kind).into(), *max, c)),
        ),
    }
}
