//! Plot-ready datasets for the three orbit types of the reduced dynamics.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::Path;
use std::thread;

use coqdyn::dynamics::evolve_state;
use coqdyn::{
    orbit_diagnostics, CaseLabel, Coquaternion, Hamiltonian, Params, StateVector, Trajectory,
};
use serde::Serialize;

use crate::{output, CliError};

#[derive(Debug, Clone, Serialize)]
pub struct Scenario {
    pub name: &'static str,
    pub file: &'static str,
    pub description: &'static str,
    pub case: String,
    pub u: Params,
    pub psi0: [f64; 8],
    pub t_max: f64,
    pub dt: f64,
    pub rate: Option<f64>,
    pub period: Option<f64>,
    pub certified_by: &'static str,
}

const DT: f64 = 1e-3;

fn up() -> [f64; 8] {
    StateVector::new(Coquaternion::ONE, Coquaternion::ZERO).components()
}

fn scenario(
    name: &'static str,
    description: &'static str,
    certified_by: &'static str,
    u: Params,
    periods: Option<f64>,
    t_max: f64,
) -> Scenario {
    let h = Hamiltonian::allowing_null(u);
    let diag = orbit_diagnostics(&h);
    let period = diag.period();
    let t_max = match (periods, period) {
        (Some(n), Some(p)) => n * p,
        _ => t_max,
    };
    Scenario {
        name,
        file: match name {
            "a" => "case_a.csv",
            "b" => "case_b.csv",
            _ => "case_c.csv",
        },
        description,
        case: h
            .regime()
            .case_label
            .map_or_else(|| "none".into(), |c: CaseLabel| format!("{c:?}")),
        u,
        psi0: up(),
        t_max,
        dt: DT,
        rate: diag.rate,
        period,
        certified_by,
    }
}

/// The three default scenarios: a spherical Rabi orbit, an open orbit on a
/// hyperboloid and a closed orbit on a hyperboloid.
pub fn scenarios() -> [Scenario; 3] {
    [
        scenario(
            "a",
            "time-like regime: rigid rotation on the sphere sx^2+sy^2+sz^2",
            "inv_reduced constant (sphere)",
            [0.0, 1.0, 2.0, 0.5, 0.6, 0.8],
            Some(2.0),
            0.0,
        ),
        scenario(
            "b",
            "space-like regime, real spectrum: open orbit on the hyperboloid sx^2-sy^2+sz^2",
            "inv_reduced constant, reduced norm increasing",
            [0.0, 2.0, 0.0, 0.0, 1.0, 0.0],
            None,
            3.0,
        ),
        scenario(
            "c",
            "space-like regime, complex spectrum: closed orbit on the hyperboloid sx^2-sy^2+sz^2",
            "inv_reduced constant, last row equals first row",
            [0.0, 0.5, 0.0, 0.0, 1.0, 0.5],
            Some(1.0),
            0.0,
        ),
    ]
}

pub fn simulate(s: &Scenario) -> Result<Trajectory, CliError> {
    let h = Hamiltonian::new(s.u)?;
    Ok(evolve_state(
        &h,
        StateVector::from_components(s.psi0),
        s.t_max,
        s.dt,
    )?)
}

fn plot_script(scenarios: &[Scenario]) -> String {
    let mut s = String::from(
        "# Reduced-state-space orbits. Every data file has a header row with the columns\n",
    );
    s.push_str(&format!("#   {}\n", output::COLUMNS.join(", ")));
    s.push_str("# The reduced triple is sx, sy, sz (columns ");
    s.push_str(&format!(
        "{}, {}, {}); the per-row invariants are the inv_* columns.\n",
        output::column("sx") + 1,
        output::column("sy") + 1,
        output::column("sz") + 1
    ));
    s.push_str("set datafile separator ','\nset key autotitle columnhead\n");
    s.push_str("set xlabel 'sx'\nset ylabel 'sy'\nset zlabel 'sz'\n");
    for sc in scenarios {
        s.push_str(&format!(
            "set title 'case {}: {}'\nsplot '{}' using 'sx':'sy':'sz' with lines\npause -1\n",
            sc.case, sc.description, sc.file
        ));
    }
    s
}

/// Writes `case_a.csv`, `case_b.csv`, `case_c.csv`, `plot.gp` and
/// `manifest.json` into `dir`, creating it if needed.
pub fn cmd_figures(dir: &Path, out: &mut dyn Write) -> Result<(), CliError> {
    fs::create_dir_all(dir)
        .map_err(|e| CliError::Config(format!("cannot create {}: {e}", dir.display())))?;
    let scenarios = scenarios();
    let results: Vec<Result<(), CliError>> = thread::scope(|scope| {
        let handles: Vec<_> = scenarios
            .iter()
            .map(|sc| {
                scope.spawn(move || {
                    let traj = simulate(sc)?;
                    let path = dir.join(sc.file);
                    let file = File::create(&path).map_err(|e| {
                        CliError::Config(format!("cannot write {}: {e}", path.display()))
                    })?;
                    output::write_csv(BufWriter::new(file), &traj)
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("figure worker panicked"))
            .collect()
    });
    for r in results {
        r?;
    }
    fs::write(dir.join("plot.gp"), plot_script(&scenarios))?;
    let manifest = serde_json::json!({
        "columns": output::COLUMNS,
        "scenarios": scenarios,
    });
    fs::write(
        dir.join("manifest.json"),
        serde_json::to_string_pretty(&manifest)?,
    )?;
    for sc in &scenarios {
        writeln!(out, "{}", dir.join(sc.file).display())?;
    }
    writeln!(out, "{}", dir.join("plot.gp").display())?;
    writeln!(out, "{}", dir.join("manifest.json").display())?;
    Ok(())
}
