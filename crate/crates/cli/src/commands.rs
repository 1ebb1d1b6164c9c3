use std::fs::File;
use std::io::{BufWriter, Write};

use coqdyn::dynamics::{check_step, evolve_bloch_unchecked, evolve_state_unchecked, invariants};
use coqdyn::{classify, oracle, orbit_diagnostics, Hamiltonian, Params, Trajectory};

use crate::config::{Initial, RunConfig};
use crate::{output, CliError, EXIT_OK, EXIT_VERIFY_FAILED};

/// Outcome of a command that ran to completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Pass => EXIT_OK,
            Status::Fail => EXIT_VERIFY_FAILED,
        }
    }

    fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        }
    }
}

/// Largest allowed relative drift of each invariant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub norm: f64,
    pub other: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            norm: 1e-8,
            other: 1e-7,
        }
    }
}

/// Largest allowed scaled deviation between the integrator and the oracle.
pub const COMPARE_TOLERANCE: f64 = 1e-6;

fn fmt_opt(v: Option<f64>) -> String {
    v.map_or_else(|| "none".to_string(), |x| x.to_string())
}

pub fn cmd_classify(u: &Params, out: &mut dyn Write) -> Result<Status, CliError> {
    let h = Hamiltonian::allowing_null(*u);
    let regime = h.regime();
    let spectrum = h.eigenvalues();
    let diag = orbit_diagnostics(&h);
    let case = regime
        .case_label
        .map_or_else(|| "none".to_string(), |c| format!("{c:?}"));
    let summary = match regime.case_label {
        Some(c) => format!("{:?}, case {c:?}", regime.kind),
        None => format!("{:?} regime", regime.kind),
    };
    writeln!(
        out,
        "{summary}, E+ = {}, E- = {}",
        spectrum.e_plus, spectrum.e_minus
    )?;
    writeln!(out, "regime: {:?}", regime.kind)?;
    writeln!(out, "case: {case}")?;
    writeln!(out, "spectrum: {:?}", spectrum.kind)?;
    writeln!(out, "E+: {}", spectrum.e_plus)?;
    writeln!(out, "E-: {}", spectrum.e_minus)?;
    writeln!(out, "gap2: {}", spectrum.gap2)?;
    writeln!(out, "discriminant: {}", classify::generator_discriminant(u))?;
    writeln!(out, "nu: {}", h.nu())?;
    writeln!(out, "orbit: {:?}", diag.kind)?;
    writeln!(out, "rate: {}", fmt_opt(diag.rate))?;
    writeln!(out, "period: {}", fmt_opt(diag.period()))?;
    writeln!(
        out,
        "axis: {},{},{}",
        diag.axis[0], diag.axis[1], diag.axis[2]
    )?;
    writeln!(out, "axis_angle: {}", diag.axis_angle)?;
    Ok(Status::Pass)
}

/// Runs the configured evolution. A step that resolves the orbit too
/// coarsely is reported on `err` and the run goes ahead anyway.
pub fn run(cfg: &RunConfig, err: &mut dyn Write) -> Result<Trajectory, CliError> {
    let h = Hamiltonian::new(cfg.u)?;
    if let Err(e) = check_step(&h, cfg.dt) {
        writeln!(err, "warning: {e}")?;
    }
    let traj = match cfg.initial {
        Initial::State(psi) => evolve_state_unchecked(&h, psi, cfg.t_max, cfg.dt)?,
        Initial::Bloch(sigma) => evolve_bloch_unchecked(&h, sigma, cfg.t_max, cfg.dt)?,
    };
    Ok(traj)
}

pub fn cmd_evolve(
    cfg: &RunConfig,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<Status, CliError> {
    let traj = run(cfg, err)?;
    match &cfg.output_path {
        Some(path) => {
            let file = File::create(path)
                .map_err(|e| CliError::Config(format!("cannot create {}: {e}", path.display())))?;
            output::write(BufWriter::new(file), &traj, cfg.output_format)?;
        }
        None => output::write(out, &traj, cfg.output_format)?,
    }
    Ok(Status::Pass)
}

pub fn cmd_verify(
    cfg: &RunConfig,
    tol: &Tolerances,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<Status, CliError> {
    let traj = run(cfg, err)?;
    let drift = traj.max_relative_drift();
    let mut status = Status::Pass;
    writeln!(out, "invariant max_drift tolerance result")?;
    for (name, value) in drift.entries() {
        let limit = if name == invariants::NAMES[0] {
            tol.norm
        } else {
            tol.other
        };
        let ok = if value <= limit {
            Status::Pass
        } else {
            Status::Fail
        };
        if ok == Status::Fail {
            status = Status::Fail;
        }
        writeln!(out, "{name} {value:e} {limit:e} {}", ok.label())?;
    }
    writeln!(out, "{}", status.label())?;
    Ok(status)
}

pub fn cmd_compare(
    cfg: &RunConfig,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<Status, CliError> {
    let Initial::State(psi0) = cfg.initial else {
        return Err(CliError::Config("compare needs psi0 or seed".into()));
    };
    let h = Hamiltonian::new(cfg.u)?;
    let traj = run(cfg, err)?;
    let mut abs_dev = 0.0f64;
    let mut scaled_dev = 0.0f64;
    for s in &traj.samples {
        let psi = s.state.expect("state-level run");
        let exact = oracle::evolve_exact(&h, &psi0, s.t)?;
        let d = psi.max_abs_diff(&exact);
        abs_dev = abs_dev.max(d);
        scaled_dev = scaled_dev.max(d / exact.max_abs().max(1.0));
    }
    let status = if scaled_dev <= COMPARE_TOLERANCE {
        Status::Pass
    } else {
        Status::Fail
    };
    writeln!(out, "max_abs_deviation {abs_dev:e}")?;
    writeln!(out, "max_scaled_deviation {scaled_dev:e}")?;
    writeln!(out, "tolerance {COMPARE_TOLERANCE:e}")?;
    writeln!(out, "{}", status.label())?;
    Ok(status)
}
