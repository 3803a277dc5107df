//! Grid of discrete-time runs over graph size and barrier strength.

use std::io::Write;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::experiment::config::Config;
use crate::experiment::format_value;
use crate::experiment::spec::{Mode, DEFAULT_MAX_FULL_N};
use crate::phase::{self, Runtime};
use crate::reduced;
use crate::walk::{self, WalkParams};

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub n_values: Vec<usize>,
    pub beta_values: Vec<f64>,
    pub corrected: bool,
    /// Steps simulated per point. `None` searches two predicted runtimes.
    pub steps: Option<usize>,
    /// `DtqwFull` falls back to the reduced model above `max_full_n`.
    pub mode: Mode,
    pub max_full_n: usize,
    pub workers: usize,
}

impl Default for SweepSpec {
    fn default() -> Self {
        Self {
            n_values: vec![256, 1024, 4096],
            beta_values: vec![0.0],
            corrected: false,
            steps: None,
            mode: Mode::DtqwFull,
            max_full_n: DEFAULT_MAX_FULL_N,
            workers: 1,
        }
    }
}

pub const SWEEP_KEYS: &[&str] = &[
    "mode",
    "n",
    "beta",
    "corrected",
    "steps",
    "max-full-n",
    "workers",
    "out",
];

impl SweepSpec {
    pub fn from_config(config: &Config) -> Result<Self> {
        config.expect_keys(SWEEP_KEYS)?;
        let mut s = SweepSpec::default();
        if let Some(n) = config.parse_list("n")? {
            s.n_values = n;
        }
        if let Some(b) = config.parse_list("beta")? {
            s.beta_values = b;
        }
        if let Some(c) = config.parse_bool("corrected")? {
            s.corrected = c;
        }
        if let Some(steps) = config.parse_value("steps")? {
            s.steps = Some(steps);
        }
        if let Some(mode) = config.parse_value("mode")? {
            s.mode = mode;
        }
        if let Some(cap) = config.parse_value("max-full-n")? {
            s.max_full_n = cap;
        }
        if let Some(w) = config.parse_value("workers")? {
            s.workers = w;
        }
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_values.is_empty() || self.beta_values.is_empty() {
            return Err(Error::InvalidValue {
                key: "grid".into(),
                msg: "empty grid".into(),
            });
        }
        if self.mode == Mode::Ctqw {
            return Err(Error::InvalidValue {
                key: "mode".into(),
                msg: "sweeps cover the discrete-time walk only".into(),
            });
        }
        if self.workers == 0 {
            return Err(Error::InvalidValue {
                key: "workers".into(),
                msg: "need at least one worker".into(),
            });
        }
        if let Some(&n) = self.n_values.iter().find(|&&n| n < 3) {
            return Err(Error::TooFewVertices(n, 3));
        }
        for &beta in &self.beta_values {
            phase::phi_from_beta(beta)?;
            if self.corrected && beta == 1.0 {
                return Err(Error::Blocked);
            }
        }
        Ok(())
    }

    /// Grid points in row order: `n` outer, `beta` inner.
    pub fn points(&self) -> Vec<(usize, f64)> {
        self.n_values
            .iter()
            .flat_map(|&n| self.beta_values.iter().map(move |&b| (n, b)))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Backend {
    Full,
    Reduced,
    /// Full space was requested but `N` is above the cap.
    ReducedFallback,
}

impl Backend {
    pub fn as_str(&self) -> &'static str {
        match self {
            Backend::Full => "full",
            Backend::Reduced => "reduced",
            Backend::ReducedFallback => "reduced-fallback",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub n_vertices: usize,
    pub beta: f64,
    pub eta: f64,
    pub sigma: f64,
    pub t_star_predicted: Runtime,
    pub t_star_measured: usize,
    pub peak_probability: f64,
    pub steps: usize,
    pub backend: Backend,
}

impl SweepRow {
    /// `t*_measured / sqrt(N)`.
    pub fn scaled_runtime(&self) -> f64 {
        self.t_star_measured as f64 / (self.n_vertices as f64).sqrt()
    }
}

/// Search window used when no step count is given.
pub fn default_window(phi: f64, n: usize) -> Result<usize> {
    let runtime = match phase::runtime_t_star(phi, n)? {
        Runtime::Blocked => phase::runtime_t_star(0.0, n)?,
        r => r,
    };
    Ok((2.0 * runtime.exact().expect("finite runtime")).ceil() as usize)
}

pub fn run_point(spec: &SweepSpec, n: usize, beta: f64) -> Result<SweepRow> {
    let phi = phase::phi_from_beta(beta)?;
    let params = if spec.corrected {
        WalkParams::corrected(n, phi)?
    } else {
        WalkParams::uncorrected(n, phi)?
    };
    let steps = match spec.steps {
        Some(s) => s,
        None => default_window(phi, n)?,
    };
    let backend = match spec.mode {
        Mode::DtqwFull if n <= spec.max_full_n => Backend::Full,
        Mode::DtqwFull => Backend::ReducedFallback,
        _ => Backend::Reduced,
    };
    let probs = match backend {
        Backend::Full => walk::evolve(&params, steps),
        _ => reduced::reduced_evolve(n, phi, params.eta(), steps)?,
    };
    let (t_star_measured, peak_probability) = walk::peak(&probs).expect("nonempty curve");
    Ok(SweepRow {
        n_vertices: n,
        beta,
        eta: params.eta(),
        sigma: phase::rotation_angle_sigma(phi, n)?,
        t_star_predicted: phase::runtime_t_star(phi, n)?,
        t_star_measured,
        peak_probability,
        steps,
        backend,
    })
}

/// Runs every grid point on `spec.workers` threads. Rows come back in grid
/// order whatever the completion order.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    spec.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(spec.workers)
        .build()
        .map_err(|e| Error::InvalidValue {
            key: "workers".into(),
            msg: e.to_string(),
        })?;
    let points = spec.points();
    pool.install(|| {
        points
            .par_iter()
            .map(|&(n, b)| run_point(spec, n, b))
            .collect()
    })
}

pub const SWEEP_HEADER: [&str; 9] = [
    "n",
    "beta",
    "eta",
    "sigma",
    "t_star_predicted",
    "t_star_measured",
    "peak_probability",
    "steps",
    "backend",
];

pub fn write_sweep_csv<W: Write>(out: W, rows: &[SweepRow]) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    let err = |e: csv::Error| Error::Csv(e.to_string());
    w.write_record(SWEEP_HEADER).map_err(err)?;
    for r in rows {
        let predicted = match r.t_star_predicted {
            Runtime::Steps { steps, .. } => steps.to_string(),
            Runtime::Blocked => "inf".into(),
        };
        w.write_record([
            r.n_vertices.to_string(),
            format!("{:?}", r.beta),
            format_value(r.eta),
            format_value(r.sigma),
            predicted,
            r.t_star_measured.to_string(),
            format_value(r.peak_probability),
            r.steps.to_string(),
            r.backend.as_str().to_string(),
        ])
        .map_err(err)?;
    }
    w.flush().map_err(|e| Error::Csv(e.to_string()))
}
