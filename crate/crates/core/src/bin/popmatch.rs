use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use popmatch::census::{bounds, census, CPolicy};
use popmatch::error::{Error, Result};
use popmatch::experiment::{sweep, threshold_search, to_csv, SweepRow, TrialConfig};
use popmatch::fsgraph::build;
use popmatch::instance::{gen_full, gen_reduced, Instance, WeightConfig};
use popmatch::popularity::{find_popular, DEFAULT_CAP};
use popmatch::wellformed::check;

#[derive(Parser)]
#[command(name = "popmatch", version, about = "Two-weight popular matchings: decide, certify, and sample")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Full,
    Reduced,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random instance file.
    Gen {
        #[arg(long)]
        n1: usize,
        #[arg(long)]
        n2: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, value_enum, default_value = "reduced")]
        kind: Kind,
        #[arg(long, default_value_t = 2)]
        w1: u64,
        #[arg(long, default_value_t = 1)]
        w2: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Decide existence; print a matching or a forbidden-pattern witness.
    Check {
        #[arg(long = "in")]
        input: PathBuf,
        /// Also write the fs-relation graph in Graphviz format.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Brute-force popularity search over every matching (full instances only).
    Oracle {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u128,
    },
    /// Pattern and component counts for one instance.
    Census {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Evaluate the analytic bounds exactly.
    Bounds {
        #[arg(long)]
        n1: u64,
        #[arg(long)]
        n2: u64,
        #[arg(long)]
        m: u64,
        /// `auto` for m/(m-n), or an integer, fraction or decimal.
        #[arg(long, default_value = "auto")]
        c: String,
    },
    /// Monte Carlo sweep over a list of m values, written as CSV.
    Sweep {
        #[arg(long)]
        n1: usize,
        #[arg(long)]
        n2: usize,
        /// Comma-separated m values.
        #[arg(long = "m-list")]
        m_list: String,
        #[arg(long)]
        trials: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long)]
        out: PathBuf,
        /// Also print the records, with exact bounds, as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Locate the smallest m with p_hat(m) >= target.
    Threshold {
        #[arg(long)]
        n1: usize,
        #[arg(long)]
        n2: usize,
        #[arg(long)]
        trials: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 0.5)]
        target: f64,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn parse_m_list(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse()
                .map_err(|_| Error::InvalidParameters(format!("bad m value {s:?}")))
        })
        .collect()
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Gen {
            n1,
            n2,
            m,
            seed,
            kind,
            w1,
            w2,
            out,
        } => {
            let weights = WeightConfig::new(w1, w2)?;
            let instance = match kind {
                Kind::Full => Instance::Full(gen_full(n1, n2, m, seed)?.with_weights(weights)),
                Kind::Reduced => Instance::Reduced(gen_reduced(n1, n2, m, seed)?.with_weights(weights)),
            };
            instance.write(&out)
        }
        Command::Check { input, dot } => {
            let reduced = Instance::read(&input)?.to_reduced();
            let report = check(&reduced)?;
            if let Some(path) = dot {
                fs::write(path, build(&reduced)?.to_dot())?;
            }
            print_json(&report)
        }
        Command::Oracle { input, cap } => match Instance::read(&input)? {
            Instance::Full(full) => print_json(&find_popular(&full, cap)?),
            Instance::Reduced(_) => Err(Error::Format(
                "the oracle needs full preference lists; got a reduced instance".into(),
            )),
        },
        Command::Census { input } => {
            let reduced = Instance::read(&input)?.to_reduced();
            let graph = build(&reduced)?;
            print_json(&census(&reduced, &graph))
        }
        Command::Bounds { n1, n2, m, c } => print_json(&bounds(n1, n2, m, &c.parse::<CPolicy>()?)?),
        Command::Sweep {
            n1,
            n2,
            m_list,
            trials,
            seed,
            jobs,
            out,
            json,
        } => {
            let ms = parse_m_list(&m_list)?;
            let base = TrialConfig {
                jobs,
                ..TrialConfig::new(n1, n2, 0, trials, seed)
            };
            let rows = sweep(&ms, &base);
            for row in &rows {
                if let SweepRow::Failed { m, error, .. } = row {
                    eprintln!("m = {m}: {error}");
                }
            }
            fs::write(&out, to_csv(&rows))?;
            if json {
                print_json(&rows)?;
            }
            Ok(())
        }
        Command::Threshold {
            n1,
            n2,
            trials,
            seed,
            target,
            jobs,
        } => print_json(&threshold_search(n1, n2, trials, seed, target, jobs)?),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
