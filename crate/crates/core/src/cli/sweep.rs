//! One-dimensional parameter sweeps.

use rayon::prelude::*;

use crate::error::{require_positive, Error};
use crate::response::Model;

use super::output::{evaluate_point, Record};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum SweepVar {
    X,
    Q,
}

impl SweepVar {
    pub fn name(self) -> &'static str {
        match self {
            SweepVar::X => "x",
            SweepVar::Q => "q",
        }
    }
}

/// A 1-D sweep over `x` or `q` at fixed values of the other variables.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub var: SweepVar,
    pub from: f64,
    pub to: f64,
    pub points: usize,
    pub log_scale: bool,
    /// Fixed `q`; must be absent when sweeping `q`.
    pub q: Option<f64>,
    /// Fixed `x`; must be absent when sweeping `x`.
    pub x: Option<f64>,
    pub y: f64,
    pub xp: Option<f64>,
    pub models: Vec<Model>,
}

/// Sweep validation failure; the message names the offending flag.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SpecError {
    #[error(transparent)]
    Domain(#[from] Error),
    #[error("--from must be < --to (got {from} >= {to})")]
    EmptyRange { from: f64, to: f64 },
    #[error("--points must be >= 2 (got {0})")]
    TooFewPoints(usize),
    #[error("--{0} is the swept variable and cannot also be fixed")]
    SweptAndFixed(&'static str),
    #[error("--{0} is required when sweeping {1}")]
    MissingFixed(&'static str, &'static str),
    #[error("--model selects no model")]
    NoModels,
}

impl SweepSpec {
    pub fn validate(&self) -> std::result::Result<(), SpecError> {
        require_positive("from", self.from)?;
        require_positive("to", self.to)?;
        if self.from >= self.to {
            return Err(SpecError::EmptyRange {
                from: self.from,
                to: self.to,
            });
        }
        if self.points < 2 {
            return Err(SpecError::TooFewPoints(self.points));
        }
        let (swept, fixed, fixed_name) = match self.var {
            SweepVar::X => (self.x, self.q, "q"),
            SweepVar::Q => (self.q, self.x, "x"),
        };
        if swept.is_some() {
            return Err(SpecError::SweptAndFixed(self.var.name()));
        }
        match fixed {
            Some(v) => {
                require_positive(fixed_name, v)?;
            }
            None => return Err(SpecError::MissingFixed(fixed_name, self.var.name())),
        }
        require_positive("y", self.y)?;
        if let Some(xp) = self.xp {
            require_positive("xp", xp)?;
        }
        if self.models.is_empty() {
            return Err(SpecError::NoModels);
        }
        Ok(())
    }

    /// Grid values; both endpoints are reproduced exactly.
    pub fn grid(&self) -> Vec<f64> {
        let n = self.points;
        let last = n - 1;
        (0..n)
            .map(|i| {
                if i == 0 {
                    self.from
                } else if i == last {
                    self.to
                } else {
                    let t = i as f64 / last as f64;
                    if self.log_scale {
                        (self.from.ln() + t * (self.to.ln() - self.from.ln())).exp()
                    } else {
                        self.from + t * (self.to - self.from)
                    }
                }
            })
            .collect()
    }

    /// Fixed values and models, e.g. `q=0.25 y=0.1 models=mermin`.
    pub fn describe(&self) -> String {
        let mut parts = Vec::new();
        if let Some(q) = self.q {
            parts.push(format!("q={q}"));
        }
        if let Some(x) = self.x {
            parts.push(format!("x={x}"));
        }
        parts.push(format!("y={}", self.y));
        if let Some(xp) = self.xp {
            parts.push(format!("xp={xp}"));
        }
        let models: Vec<&str> = self.models.iter().map(|m| m.name()).collect();
        parts.push(format!("models={}", models.join(";")));
        parts.join(" ")
    }

    /// Provenance header for a single-block sweep.
    pub fn comments(&self) -> Vec<String> {
        vec![format!(
            "sweep {} from={} to={} points={} scale={} {}",
            self.var.name(),
            self.from,
            self.to,
            self.points,
            if self.log_scale { "log" } else { "linear" },
            self.describe()
        )]
    }

    /// Evaluates every point, in parallel on the current rayon pool.
    ///
    /// Records are in grid order, then model order; warnings likewise.
    pub fn run(&self) -> (Vec<Record>, Vec<String>) {
        let per_point: Vec<(Vec<Record>, Vec<String>)> = self
            .grid()
            .into_par_iter()
            .map(|v| {
                let (q, x) = match self.var {
                    SweepVar::X => (self.q.unwrap_or(f64::NAN), v),
                    SweepVar::Q => (v, self.x.unwrap_or(f64::NAN)),
                };
                evaluate_point(v, q, x, self.y, self.xp, &self.models)
            })
            .collect();
        let mut records = Vec::with_capacity(self.points * self.models.len());
        let mut warnings = Vec::new();
        for (r, w) in per_point {
            records.extend(r);
            warnings.extend(w);
        }
        (records, warnings)
    }
}

/// Runs `f` on a pool with `workers` threads, or the global pool when `None`.
pub fn with_workers<T: Send>(
    workers: Option<usize>,
    f: impl FnOnce() -> T + Send,
) -> std::result::Result<T, String> {
    match workers {
        None => Ok(f()),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map(|pool| pool.install(f))
            .map_err(|e| format!("cannot start {n} workers: {e}")),
    }
}
