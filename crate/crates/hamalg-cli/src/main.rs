//! Command line entry point.
//!
//! Exit codes: 0 when every check passes, 1 when any check fails, 2 for
//! configuration or input errors, 3 when a closure run ends inconclusive
//! (neither certified its goals nor reached a fixed point).

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use hamalg::closure::Window;
use hamalg::rational::Int;

mod config;
mod report;
mod suites;

use config::{build, config_digest, Built, ConfigDocument};
use report::{RunReport, Status};
use suites::CommandError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
enum Format {
    #[default]
    Text,
    Machine,
}

#[derive(Debug, Parser)]
#[command(name = "hamalg", version, about = "Exact checks and closure probes for twisted Hamiltonian-type Lie algebras")]
struct Cli {
    /// Path to the TOML configuration.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Override [run] seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Override [run] samples.
    #[arg(long, global = true)]
    samples: Option<usize>,
    /// Replace the [window] box with the symmetric box [-B, B]^m.
    #[arg(long, global = true)]
    window_box: Option<u32>,
    /// Override the [window] degree cap.
    #[arg(long, global = true)]
    degree_cap: Option<u32>,
    /// Override [run] max_iter.
    #[arg(long, global = true)]
    max_iter: Option<u32>,
    /// Report rendering.
    #[arg(long, global = true, value_enum, default_value_t)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the signature conditions, and the module conditions if present.
    Validate,
    /// Evaluate both bracket constructions on two elements and compare.
    Bracket {
        /// Left element, for example "1 * x[0,0,1,0,0|0,0,0,0]".
        lhs: String,
        /// Right element.
        rhs: String,
    },
    /// Run one exact property suite.
    Check {
        #[arg(long, value_enum)]
        suite: Suite,
    },
    /// Probe simplicity: ideal closures, or the derived span when all
    /// index slots are pinned.
    Simplicity {
        /// Number of seeded random noncentral generators.
        #[arg(long, default_value_t = 20)]
        generators: usize,
    },
    /// Probe irreducibility: the shift intertwiner when the weight
    /// equations solve over the lattice, submodule closures otherwise.
    Irreducibility {
        /// Number of seeded random nonzero vectors.
        #[arg(long, default_value_t = 10)]
        vectors: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Jacobi,
    Leibniz,
    Center,
    Representation,
    Twist,
    Contact,
    Block,
}

fn command_echo(cli: &Cli) -> String {
    match &cli.command {
        Command::Validate => "validate".into(),
        Command::Bracket { lhs, rhs } => format!("bracket {lhs:?} {rhs:?}"),
        Command::Check { suite } => {
            format!("check --suite {}", suite.to_possible_value().expect("named variant").get_name())
        }
        Command::Simplicity { generators } => format!("simplicity --generators {generators}"),
        Command::Irreducibility { vectors } => format!("irreducibility --vectors {vectors}"),
    }
}

fn load(cli: &Cli) -> Result<(Built, String), String> {
    let path = cli
        .config
        .as_ref()
        .ok_or_else(|| "missing --config PATH".to_string())?;
    let raw = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let digest = config_digest(&raw);
    let doc = ConfigDocument::parse(&raw).map_err(|e| e.to_string())?;
    let mut built = build(doc).map_err(|e| e.to_string())?;
    if let Some(seed) = cli.seed {
        built.run.seed = seed;
    }
    if let Some(samples) = cli.samples {
        built.run.samples = samples;
    }
    if let Some(max_iter) = cli.max_iter {
        built.run.max_iter = max_iter;
    }
    if let Some(radius) = cli.window_box {
        built.probe = Window::symmetric(
            built.algebra.signature.rank,
            radius,
            cli.degree_cap.unwrap_or(built.probe.degree_cap()),
        );
    } else if let Some(cap) = cli.degree_cap {
        let bounds: Vec<(Int, Int)> = built.probe.bounds().to_vec();
        built.probe = Window::new(bounds, cap).map_err(|e| e.to_string())?;
    }
    Ok((built, digest))
}

fn run(cli: &Cli, built: &Built) -> Result<Vec<report::CheckRecord>, CommandError> {
    match &cli.command {
        Command::Validate => Ok(suites::cmd_validate(built)),
        Command::Bracket { lhs, rhs } => suites::cmd_bracket(built, lhs, rhs),
        Command::Check { suite } => match suite {
            Suite::Jacobi => Ok(suites::suite_jacobi(built)),
            Suite::Leibniz => Ok(suites::suite_leibniz(built)),
            Suite::Center => suites::suite_center(built),
            Suite::Representation => suites::suite_representation(built),
            Suite::Twist => Ok(suites::suite_twist(built)),
            Suite::Contact => Ok(suites::suite_contact(built)),
            Suite::Block => suites::suite_block(built),
        },
        Command::Simplicity { generators } => suites::cmd_simplicity(built, *generators),
        Command::Irreducibility { vectors } => suites::cmd_irreducibility(built, *vectors),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let (built, digest) = match load(&cli) {
        Ok(ok) => ok,
        Err(message) => {
            eprintln!("config error: {message}");
            return ExitCode::from(2);
        }
    };
    let records = match run(&cli, &built) {
        Ok(records) => records,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let report = RunReport {
        command: command_echo(&cli),
        config_digest: digest,
        records,
        wall_clock: started.elapsed(),
    };
    match cli.format {
        Format::Text => print!("{}", report.render_text()),
        Format::Machine => print!("{}", report.render_machine()),
    }
    match report.worst_status() {
        Status::Pass => ExitCode::SUCCESS,
        Status::Fail => ExitCode::from(1),
        Status::Inconclusive => ExitCode::from(3),
    }
}
