//! Trajectory tables: one row per sample, CSV or JSON lines.
//!
//! Numbers are written in shortest round-trip form; cells that do not apply
//! (state columns of Bloch-level runs, reduced quantities on the null
//! boundary) are empty in CSV and `null` in JSON.

use std::io::{BufRead, Write};

use coqdyn::dynamics::{Sample, Trajectory};

use crate::config::OutputFormat;
use crate::CliError;

pub const COLUMNS: [&str; 25] = [
    "t",
    "psi1_0",
    "psi1_1",
    "psi1_2",
    "psi1_3",
    "psi2_0",
    "psi2_1",
    "psi2_2",
    "psi2_3",
    "sigma1",
    "sigma2",
    "sigma3",
    "sigma4",
    "sigma5",
    "sx",
    "sy",
    "sz",
    "aux1",
    "aux2",
    "aux3",
    "inv_norm",
    "inv_state",
    "inv_reduced",
    "inv_cylinder",
    "inv_aux",
];

pub type Row = Vec<Option<f64>>;

pub fn row(sample: &Sample) -> Row {
    let mut r = Vec::with_capacity(COLUMNS.len());
    r.push(Some(sample.t));
    match sample.state {
        Some(psi) => r.extend(psi.components().map(Some)),
        None => r.extend([None; 8]),
    }
    r.extend(sample.bloch.sigma.map(Some));
    match sample.bloch.reduced {
        Some(red) => r.extend(red.map(Some)),
        None => r.extend([None; 3]),
    }
    r.extend(sample.bloch.auxiliary.map(Some));
    r.extend(sample.invariants.values());
    r
}

pub fn rows(traj: &Trajectory) -> Vec<Row> {
    traj.samples.iter().map(row).collect()
}

fn cell(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

pub fn write_csv<W: Write>(out: W, traj: &Trajectory) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(COLUMNS)?;
    for s in &traj.samples {
        w.write_record(row(s).into_iter().map(cell))?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_json_lines<W: Write>(mut out: W, traj: &Trajectory) -> Result<(), CliError> {
    for s in &traj.samples {
        let obj: serde_json::Map<String, serde_json::Value> = COLUMNS
            .iter()
            .zip(row(s))
            .map(|(k, v)| ((*k).to_string(), serde_json::json!(v)))
            .collect();
        serde_json::to_writer(&mut out, &obj)?;
        out.write_all(b"\n")?;
    }
    out.flush()?;
    Ok(())
}

pub fn write<W: Write>(out: W, traj: &Trajectory, format: OutputFormat) -> Result<(), CliError> {
    match format {
        OutputFormat::Csv => write_csv(out, traj),
        OutputFormat::JsonLines => write_json_lines(out, traj),
    }
}

/// Parses a table written by [`write_csv`], checking the header.
pub fn read_csv<R: std::io::Read>(input: R) -> Result<Vec<Row>, CliError> {
    let mut r = csv::Reader::from_reader(input);
    let header: Vec<String> = r.headers()?.iter().map(str::to_owned).collect();
    if header != COLUMNS {
        return Err(CliError::Config(format!("unexpected header {header:?}")));
    }
    let mut out = Vec::new();
    for rec in r.records() {
        let rec = rec?;
        let parsed = rec
            .iter()
            .map(|c| {
                if c.is_empty() {
                    Ok(None)
                } else {
                    c.parse::<f64>()
                        .map(Some)
                        .map_err(|e| CliError::Config(format!("bad number {c:?}: {e}")))
                }
            })
            .collect::<Result<Row, _>>()?;
        out.push(parsed);
    }
    Ok(out)
}

/// Parses a table written by [`write_json_lines`].
pub fn read_json_lines<R: BufRead>(input: R) -> Result<Vec<Row>, CliError> {
    let mut out = Vec::new();
    for line in input.lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let obj: serde_json::Map<String, serde_json::Value> = serde_json::from_str(&line)?;
        out.push(
            COLUMNS
                .iter()
                .map(|k| obj.get(*k).and_then(|v| v.as_f64()))
                .collect(),
        );
    }
    Ok(out)
}

pub fn column(name: &str) -> usize {
    COLUMNS
        .iter()
        .position(|c| *c == name)
        .unwrap_or_else(|| panic!("no column {name}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use coqdyn::dynamics::{evolve_bloch, evolve_state};
    use coqdyn::{Hamiltonian, StateVector};

    fn sample_traj() -> Trajectory {
        let h = Hamiltonian::new([0.3, 0.7, -0.4, 0.2, 0.9, 0.1]).unwrap();
        let psi = StateVector::from_components([1.0, 0.1, -0.2, 0.05, 0.3, 0.0, 0.2, -0.1]);
        evolve_state(&h, psi, 0.5, 0.01).unwrap()
    }

    #[test]
    fn header_matches_column_list() {
        let mut buf = Vec::new();
        write_csv(&mut buf, &sample_traj()).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().next().unwrap(), COLUMNS.join(","));
        assert_eq!(text.lines().count(), 52);
    }

    #[test]
    fn csv_round_trip_is_exact() {
        let traj = sample_traj();
        let mut buf = Vec::new();
        write_csv(&mut buf, &traj).unwrap();
        let back = read_csv(buf.as_slice()).unwrap();
        assert_eq!(back, rows(&traj));
    }

    #[test]
    fn json_round_trip_is_exact() {
        let traj = sample_traj();
        let mut buf = Vec::new();
        write_json_lines(&mut buf, &traj).unwrap();
        let back = read_json_lines(buf.as_slice()).unwrap();
        assert_eq!(back, rows(&traj));
    }

    #[test]
    fn bloch_runs_leave_state_cells_empty() {
        let h = Hamiltonian::new([0.0, 0.0, 1.0, 0.0, 0.0, 0.0]).unwrap();
        let traj = evolve_bloch(&h, [0.0, 0.0, 1.0, 0.0, 0.0], 0.01, 0.01).unwrap();
        let mut buf = Vec::new();
        write_csv(&mut buf, &traj).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text
            .lines()
            .nth(1)
            .unwrap()
            .starts_with("0,,,,,,,,,0,0,1,0,0,"));
    }
}
