use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use coqdyn_cli::{
    cmd_classify, cmd_compare, cmd_evolve, cmd_figures, cmd_verify, CliError, FileConfig,
    OutputFormat, RunConfig, Tolerances, EXIT_USAGE,
};

#[derive(Debug, Parser)]
#[command(
    name = "coqdyn",
    version,
    about = "Coquaternionic two-level quantum dynamics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Report regime, case, energies and orbit diagnostics of a Hamiltonian.
    Classify {
        /// Hamiltonian parameters u0..u5.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, num_args = 1)]
        u: Vec<f64>,
    },
    /// Integrate and write one row per time step.
    Evolve(RunArgs),
    /// Integrate and check that every invariant is conserved.
    Verify {
        #[command(flatten)]
        run: RunArgs,
        /// Tolerance on the norm drift.
        #[arg(long, default_value_t = Tolerances::default().norm)]
        tol_norm: f64,
        /// Tolerance on the other invariants.
        #[arg(long, default_value_t = Tolerances::default().other)]
        tol: f64,
    },
    /// Compare the integrator against the matrix-exponential solution.
    Compare(RunArgs),
    /// Write the case A/B/C datasets, a gnuplot script and a manifest.
    Figures {
        /// Output directory.
        #[arg(long, default_value = "figures")]
        out: PathBuf,
    },
}

#[derive(Debug, Args)]
struct RunArgs {
    /// Flat JSON file with any of the run fields; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Hamiltonian parameters u0..u5.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, num_args = 1)]
    u: Option<Vec<f64>>,
    /// Initial state: eight reals, the components of psi1 then psi2.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, num_args = 1)]
    psi0: Option<Vec<f64>>,
    /// Initial Bloch vector sigma1..sigma5.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, num_args = 1)]
    bloch0: Option<Vec<f64>>,
    #[arg(long)]
    t_max: Option<f64>,
    #[arg(long)]
    dt: Option<f64>,
    /// Output file (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,
    /// Seed for a random normalised initial state.
    #[arg(long)]
    seed: Option<u64>,
}

impl RunArgs {
    fn resolve(self) -> Result<RunConfig, CliError> {
        let file = match &self.config {
            Some(path) => FileConfig::load(path)?,
            None => FileConfig::default(),
        };
        let flags = FileConfig {
            u: self.u,
            psi0: self.psi0,
            bloch0: self.bloch0,
            t_max: self.t_max,
            dt: self.dt,
            output_path: self.out,
            output_format: self.format,
            seed: self.seed,
        };
        RunConfig::resolve(file.overlay(flags))
    }
}

fn dispatch(command: Command) -> Result<u8, CliError> {
    let mut out = io::stdout().lock();
    let mut err = io::stderr();
    let code = match command {
        Command::Classify { u } => {
            let u: [f64; 6] = u
                .as_slice()
                .try_into()
                .map_err(|_| CliError::Config(format!("--u needs 6 values, got {}", u.len())))?;
            if u.iter().any(|x| !x.is_finite()) {
                return Err(CliError::Config("--u has non-finite values".into()));
            }
            cmd_classify(&u, &mut out)?.exit_code()
        }
        Command::Evolve(run) => cmd_evolve(&run.resolve()?, &mut out, &mut err)?.exit_code(),
        Command::Verify { run, tol_norm, tol } => {
            let tol = Tolerances {
                norm: tol_norm,
                other: tol,
            };
            cmd_verify(&run.resolve()?, &tol, &mut out, &mut err)?.exit_code()
        }
        Command::Compare(run) => cmd_compare(&run.resolve()?, &mut out, &mut err)?.exit_code(),
        Command::Figures { out: dir } => {
            cmd_figures(&dir, &mut out)?;
            0
        }
    };
    out.flush()?;
    Ok(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(CliError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
