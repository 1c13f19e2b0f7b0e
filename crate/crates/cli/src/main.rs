use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use pathres::commands::{run_groebner, run_koszul, run_resolve, run_verify, Report, RunOptions};
use pathres::problem::parse_problem;
use pathres::{Error, Exec};

/// Projective resolutions over quotients of path algebras.
#[derive(Parser)]
#[command(name = "pathres", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Complete the relations and print the reduced Gröbner basis.
    Groebner(Common),
    /// Build a projective resolution of the module.
    Resolve(Common),
    /// Build a linear resolution over a quadratic algebra.
    Koszul {
        #[command(flatten)]
        common: Common,
        /// Use only the linear-algebra construction.
        #[arg(long)]
        fast: bool,
    },
    /// Build a resolution and check that it is an exact complex.
    Verify(Common),
}

#[derive(Args)]
struct Common {
    /// Problem file.
    file: PathBuf,
    #[arg(long)]
    steps: Option<usize>,
    #[arg(long)]
    degree_cap: Option<usize>,
    #[arg(long)]
    length_cap: Option<usize>,
    #[arg(long)]
    no_verify: bool,
    /// Accepted for compatibility; every computation is deterministic.
    #[arg(long)]
    seed: Option<u64>,
    /// Run on a single thread.
    #[arg(long)]
    sequential: bool,
}

impl Common {
    fn options(&self, fast: bool) -> RunOptions {
        RunOptions {
            steps: self.steps,
            degree_cap: self.degree_cap,
            length_cap: self.length_cap,
            no_verify: self.no_verify,
            fast,
            exec: if self.sequential { Exec::Sequential } else { Exec::Parallel },
        }
    }
}

fn run(cli: &Cli) -> Result<Report, Error> {
    let (common, fast) = match &cli.command {
        Command::Groebner(c) | Command::Resolve(c) | Command::Verify(c) => (c, false),
        Command::Koszul { common, fast } => (common, *fast),
    };
    let text = std::fs::read_to_string(&common.file)
        .map_err(|e| Error::Precondition(format!("cannot read {}: {e}", common.file.display())))?;
    let problem = parse_problem(&text)?;
    let opts = common.options(fast);
    match &cli.command {
        Command::Groebner(_) => run_groebner(&problem, &opts),
        Command::Resolve(_) => run_resolve(&problem, &opts),
        Command::Koszul { .. } => run_koszul(&problem, &opts),
        Command::Verify(_) => run_verify(&problem, &opts),
    }
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            print!("{}", report.text());
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(4)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
