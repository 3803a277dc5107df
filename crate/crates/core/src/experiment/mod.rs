//! Runs, sweeps and self-checks behind the command-line tool.

pub mod config;
pub mod spec;
pub mod sweep;
pub mod verify;

use std::io::{Read, Write};

use crate::ctqw::{self, CtqwParams};
use crate::error::{Error, Result};
use crate::phase::{self, Runtime};
use crate::reduced;
use crate::walk::{self, WalkParams};

pub use config::Config;
pub use spec::{ExperimentSpec, Mode};

/// Independent variable of a result curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Step,
    Time,
}

impl Axis {
    pub fn header(&self) -> &'static str {
        match self {
            Axis::Step => "step",
            Axis::Time => "time",
        }
    }
}

/// Predicted time of the first success peak.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Prediction {
    Steps(Runtime),
    Time(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentResult {
    pub spec: ExperimentSpec,
    pub axis: Axis,
    /// `(step or time, success probability)`.
    pub rows: Vec<(f64, f64)>,
    pub peak_at: f64,
    pub peak_probability: f64,
    pub predicted: Prediction,
    /// Correction phase used for walk modes; zero when uncorrected.
    pub eta: f64,
}

/// Walk parameters for a discrete-time spec.
pub fn walk_params(spec: &ExperimentSpec) -> Result<WalkParams> {
    let phi = phase::phi_from_beta(spec.beta)?;
    let base = if spec.corrected {
        WalkParams::corrected(spec.n_vertices, phi)?
    } else {
        WalkParams::uncorrected(spec.n_vertices, phi)?
    };
    base.with_marked(spec.marked)
}

pub fn ctqw_params(spec: &ExperimentSpec) -> Result<CtqwParams> {
    let gamma = if spec.corrected {
        ctqw::corrected_gamma(spec.n_vertices, spec.epsilon)?
    } else {
        1.0 / spec.n_vertices as f64
    };
    CtqwParams::new(spec.n_vertices, spec.epsilon, gamma, spec.marked)
}

/// Runs `spec` to completion.
pub fn simulate(spec: &ExperimentSpec) -> Result<ExperimentResult> {
    spec.validate()?;
    let (axis, rows, predicted, eta) = match spec.mode {
        Mode::DtqwFull | Mode::DtqwReduced => {
            let params = walk_params(spec)?;
            let probs = if spec.mode == Mode::DtqwFull {
                walk::evolve(&params, spec.steps)
            } else {
                reduced::reduced_evolve(
                    params.n_vertices(),
                    params.phi(),
                    params.eta(),
                    spec.steps,
                )?
            };
            let rows = probs
                .into_iter()
                .enumerate()
                .map(|(t, p)| (t as f64, p))
                .collect();
            let predicted =
                Prediction::Steps(phase::runtime_t_star(params.phi(), params.n_vertices())?);
            (Axis::Step, rows, predicted, params.eta())
        }
        Mode::Ctqw => {
            let params = ctqw_params(spec)?;
            let runtime = ctqw::ctqw_runtime(spec.n_vertices)?;
            let t_max = spec.t_max.unwrap_or(2.0 * runtime);
            let rows = ctqw::ctqw_curve(&params, t_max, spec.steps)?;
            (Axis::Time, rows, Prediction::Time(runtime), 0.0)
        }
    };
    let (peak_at, peak_probability) = rows
        .iter()
        .copied()
        .fold(None, |best: Option<(f64, f64)>, (x, p)| match best {
            Some((_, q)) if q >= p => best,
            _ => Some((x, p)),
        })
        .expect("at least one row");
    Ok(ExperimentResult {
        spec: spec.clone(),
        axis,
        rows,
        peak_at,
        peak_probability,
        predicted,
        eta,
    })
}

/// Fixed-width scientific notation with 12 significant digits.
pub fn format_value(x: f64) -> String {
    // no "-0"
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.11e}")
}

fn format_axis(axis: Axis, x: f64) -> String {
    match axis {
        Axis::Step => format!("{}", x as u64),
        Axis::Time => format_value(x),
    }
}

impl ExperimentResult {
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        write_curve_csv(out, self.axis, &self.rows)
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("ascii output")
    }

    /// One-line human-readable summary.
    pub fn summary(&self) -> String {
        let predicted = match self.predicted {
            Prediction::Steps(Runtime::Steps { steps, .. }) => steps.to_string(),
            Prediction::Steps(Runtime::Blocked) => "inf".to_string(),
            Prediction::Time(t) => format_value(t),
        };
        format!(
            "mode={} n={} beta={} epsilon={} corrected={} eta={} peak_probability={} peak_{}={} predicted_t_star={}",
            self.spec.mode,
            self.spec.n_vertices,
            self.spec.beta,
            self.spec.epsilon,
            self.spec.corrected,
            format_value(self.eta),
            format_value(self.peak_probability),
            self.axis.header(),
            format_axis(self.axis, self.peak_at),
            predicted,
        )
    }
}

pub fn write_curve_csv<W: Write>(out: W, axis: Axis, rows: &[(f64, f64)]) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    let csv_err = |e: csv::Error| Error::Csv(e.to_string());
    w.write_record([axis.header(), "probability"])
        .map_err(csv_err)?;
    for &(x, p) in rows {
        w.write_record([format_axis(axis, x), format_value(p)])
            .map_err(csv_err)?;
    }
    w.flush().map_err(|e| Error::Csv(e.to_string()))
}

/// Reads a curve written by [`write_curve_csv`].
pub fn read_curve_csv<R: Read>(input: R) -> Result<(Axis, Vec<(f64, f64)>)> {
    let mut r = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(input);
    let headers = r.headers().map_err(|e| Error::Csv(e.to_string()))?.clone();
    let axis = match (headers.get(0), headers.get(1), headers.len()) {
        (Some("step"), Some("probability"), 2) => Axis::Step,
        (Some("time"), Some("probability"), 2) => Axis::Time,
        _ => {
            return Err(Error::Csv(format!(
                "unexpected header {:?}",
                headers.iter().collect::<Vec<_>>()
            )))
        }
    };
    let mut rows = Vec::new();
    for (i, record) in r.records().enumerate() {
        let record = record.map_err(|e| Error::Csv(e.to_string()))?;
        let field = |k: usize| -> Result<f64> {
            let s = record
                .get(k)
                .ok_or_else(|| Error::Csv(format!("row {}: missing field", i + 1)))?;
            s.parse::<f64>()
                .map_err(|e| Error::Csv(format!("row {}: `{s}`: {e}", i + 1)))
        };
        let (x, p) = (field(0)?, field(1)?);
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::Csv(format!(
                "row {}: probability {p} outside [0, 1]",
                i + 1
            )));
        }
        if axis == Axis::Step && x.fract() != 0.0 {
            return Err(Error::Csv(format!(
                "row {}: step {x} is not an integer",
                i + 1
            )));
        }
        rows.push((x, p));
    }
    Ok((axis, rows))
}
