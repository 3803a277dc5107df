use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::experiment::config::Config;

/// Which simulator backs a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    DtqwFull,
    DtqwReduced,
    Ctqw,
}

impl Mode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::DtqwFull => "dtqw-full",
            Mode::DtqwReduced => "dtqw-reduced",
            Mode::Ctqw => "ctqw",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "dtqw-full" => Ok(Mode::DtqwFull),
            "dtqw-reduced" => Ok(Mode::DtqwReduced),
            "ctqw" => Ok(Mode::Ctqw),
            other => Err(format!(
                "unknown mode `{other}` (expected dtqw-full, dtqw-reduced or ctqw)"
            )),
        }
    }
}

/// Default cap on the graph size simulated in the full space.
pub const DEFAULT_MAX_FULL_N: usize = 4096;

/// A single simulation run.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSpec {
    pub mode: Mode,
    pub n_vertices: usize,
    /// Magnitude of the staying amplitude; `phi = asin(beta)`.
    pub beta: f64,
    /// Hop-amplitude reduction for the continuous-time walk.
    pub epsilon: f64,
    pub corrected: bool,
    /// Walk steps, or time samples for `ctqw`.
    pub steps: usize,
    /// End of the time grid for `ctqw`; defaults to twice `pi sqrt(N)/2`.
    pub t_max: Option<f64>,
    pub marked: usize,
    pub max_full_n: usize,
    pub out: Option<PathBuf>,
}

impl Default for ExperimentSpec {
    fn default() -> Self {
        Self {
            mode: Mode::DtqwFull,
            n_vertices: 1024,
            beta: 0.0,
            epsilon: 0.0,
            corrected: false,
            steps: 100,
            t_max: None,
            marked: 0,
            max_full_n: DEFAULT_MAX_FULL_N,
            out: None,
        }
    }
}

pub const SPEC_KEYS: &[&str] = &[
    "mode",
    "n",
    "beta",
    "epsilon",
    "corrected",
    "steps",
    "t-max",
    "marked",
    "max-full-n",
    "out",
];

impl ExperimentSpec {
    /// Defaults overlaid with whatever `config` sets, then validated.
    pub fn from_config(config: &Config) -> Result<Self> {
        config.expect_keys(SPEC_KEYS)?;
        let mut spec = ExperimentSpec::default();
        if let Some(mode) = config.parse_value::<Mode>("mode")? {
            spec.mode = mode;
        }
        if let Some(n) = config.parse_value("n")? {
            spec.n_vertices = n;
        }
        if let Some(beta) = config.parse_value("beta")? {
            spec.beta = beta;
        }
        if let Some(eps) = config.parse_value("epsilon")? {
            spec.epsilon = eps;
        }
        if let Some(c) = config.parse_bool("corrected")? {
            spec.corrected = c;
        }
        if let Some(s) = config.parse_value("steps")? {
            spec.steps = s;
        }
        if let Some(t) = config.parse_value("t-max")? {
            spec.t_max = Some(t);
        }
        if let Some(m) = config.parse_value("marked")? {
            spec.marked = m;
        }
        if let Some(cap) = config.parse_value("max-full-n")? {
            spec.max_full_n = cap;
        }
        if let Some(out) = config.get("out") {
            spec.out = Some(PathBuf::from(out));
        }
        spec.validate()?;
        Ok(spec)
    }

    /// The spec as configuration text; parsing it back gives the same spec.
    pub fn to_config(&self) -> Config {
        let mut c = Config::default();
        c.set("mode", self.mode.as_str());
        c.set("n", self.n_vertices.to_string());
        c.set("beta", format!("{:?}", self.beta));
        c.set("epsilon", format!("{:?}", self.epsilon));
        c.set("corrected", self.corrected.to_string());
        c.set("steps", self.steps.to_string());
        if let Some(t) = self.t_max {
            c.set("t-max", format!("{t:?}"));
        }
        c.set("marked", self.marked.to_string());
        c.set("max-full-n", self.max_full_n.to_string());
        if let Some(out) = &self.out {
            c.set("out", out.to_string_lossy().into_owned());
        }
        c
    }

    pub fn validate(&self) -> Result<()> {
        let min_n = if self.mode == Mode::Ctqw { 2 } else { 3 };
        if self.n_vertices < min_n {
            return Err(Error::TooFewVertices(self.n_vertices, min_n));
        }
        if self.marked >= self.n_vertices {
            return Err(Error::MarkedOutOfRange {
                marked: self.marked,
                n: self.n_vertices,
            });
        }
        if !(self.beta.is_finite() && (0.0..=1.0).contains(&self.beta)) {
            return Err(Error::BarrierOutOfRange(self.beta));
        }
        if !(self.epsilon.is_finite() && (0.0..1.0).contains(&self.epsilon)) {
            return Err(Error::EpsilonOutOfRange(self.epsilon));
        }
        if let Some(t) = self.t_max {
            if !(t.is_finite() && t >= 0.0) {
                return Err(Error::InvalidValue {
                    key: "t-max".into(),
                    msg: format!("{t} is not a nonnegative time"),
                });
            }
        }
        match self.mode {
            Mode::DtqwFull | Mode::DtqwReduced if self.corrected && self.beta == 1.0 => {
                return Err(Error::Blocked);
            }
            Mode::DtqwFull if self.n_vertices > self.max_full_n => {
                return Err(Error::InvalidValue {
                    key: "n".into(),
                    msg: format!(
                        "{} exceeds the full-space cap {}; use mode dtqw-reduced or raise max-full-n",
                        self.n_vertices, self.max_full_n
                    ),
                });
            }
            _ => {}
        }
        Ok(())
    }
}
