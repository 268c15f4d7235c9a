use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, ValueEnum};

use ssb_lab::report::{self, Config, PartialConfig, Subcommand};
use ssb_lab::steiner;

#[derive(Parser)]
#[command(name = "ssb-lab", version, about = "Numerical symmetry-breaking checks")]
struct Cli {
    #[arg(value_enum)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Clone, Copy, ValueEnum)]
enum Command {
    Steiner,
    Scalar,
    Ode,
    Maxwell,
    Potential,
    Classify,
    All,
}

impl From<Command> for Subcommand {
    fn from(c: Command) -> Self {
        match c {
            Command::Steiner => Subcommand::Steiner,
            Command::Scalar => Subcommand::Scalar,
            Command::Ode => Subcommand::Ode,
            Command::Maxwell => Subcommand::Maxwell,
            Command::Potential => Subcommand::Potential,
            Command::Classify => Subcommand::Classify,
            Command::All => Subcommand::All,
        }
    }
}

#[derive(Args)]
struct Opts {
    /// Side length of the square terminal set.
    #[arg(long)]
    square: Option<f64>,
    /// JSON file with an array of [x, y] terminals (replaces the square).
    #[arg(long)]
    terminals: Option<PathBuf>,
    /// Spatial dimension of the point charge.
    #[arg(short = 'n', long = "dim")]
    n: Option<usize>,
    /// Charge.
    #[arg(short = 'q', long = "charge", allow_hyphen_values = true)]
    q: Option<f64>,
    /// Reference scale of the two-dimensional potential.
    #[arg(long)]
    mu: Option<f64>,
    /// Scaling factor.
    #[arg(long)]
    lambda: Option<f64>,
    /// Base grid size for the Maxwell suite.
    #[arg(long)]
    grid: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Random restarts per Steiner topology.
    #[arg(long)]
    restarts: Option<usize>,
    /// Output directory for the manifest and plot data.
    #[arg(long, env = "SSB_LAB_OUT", default_value = "ssb-lab-out")]
    out: PathBuf,
    /// JSON config file; command-line flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Print the manifest to stdout instead of a summary.
    #[arg(long)]
    json: bool,
}

fn resolve(opts: &Opts) -> ssb_lab::Result<Config> {
    let file = opts
        .config
        .as_ref()
        .map(|p| PartialConfig::from_json(&std::fs::read_to_string(p)?))
        .transpose()?;
    let terminals = opts
        .terminals
        .as_ref()
        .map(|p| steiner::parse_terminals(&std::fs::read_to_string(p)?))
        .transpose()?;
    let cli = PartialConfig {
        square: opts.square,
        terminals,
        n: opts.n,
        q: opts.q,
        mu: opts.mu,
        lambda: opts.lambda,
        grid: opts.grid,
        seed: opts.seed,
        restarts: opts.restarts,
    };
    Ok(Config::resolve(file.as_ref(), &cli))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = match resolve(&cli.opts) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let manifest = match report::run_subcommand(cli.command.into(), &config) {
        Ok(m) => m,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let written = report::write_manifest(&manifest, &cli.opts.out)
        .and_then(|m| Ok((m, report::emit_plot_data(&manifest, &cli.opts.out)?)));
    let (manifest_path, plots) = match written {
        Ok(w) => w,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };

    if cli.opts.json {
        match manifest.to_json() {
            Ok(s) => print!("{s}"),
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
        }
    } else {
        for r in &manifest.reports {
            println!("{} {}", if r.pass { "PASS" } else { "FAIL" }, r.name);
        }
        println!("manifest: {}", manifest_path.display());
        for p in plots {
            println!("data: {}", p.display());
        }
    }
    if manifest.all_passed() {
        ExitCode::SUCCESS
    } else {
        for r in manifest.failures() {
            eprintln!(
                "check failed: {} (measured {}, expected {}, tolerance {})",
                r.name, r.measured, r.expected, r.tolerance
            );
        }
        ExitCode::from(1)
    }
}
