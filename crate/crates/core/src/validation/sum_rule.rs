//! f-sum rule: `2 ∫_0^∞ x Im ε(q, x, y) dx = π x_p²`.
//!
//! `Re ε` is even in `x`, so the first moment of the full complex `ε` over
//! the whole frequency line reduces to twice the half-line moment of `Im ε`.
//! The integral is truncated at `x_max` and evaluated with the trapezoidal
//! rule on a geometric grid, which is dense where `Im ε` peaks (`x ≲ y`).

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::response::{epsilon, Model};
use crate::scales::DimensionlessQuery;

use super::{Check, Suite, ValidationCase, ValidationReport};

/// Smallest nonzero node of the frequency grid.
const GRID_START: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SumRuleIntegral {
    /// `2 ∫_0^{x_max} x Im ε dx`.
    pub value: f64,
    /// `π x_p²`.
    pub target: f64,
}

impl SumRuleIntegral {
    pub fn rel_error(&self) -> f64 {
        ((self.value - self.target) / self.target).abs()
    }
}

/// Geometric grid `0, x_0, x_0 r, …, x_max` with `n_points` nodes in total.
pub fn graded_grid(x_max: f64, n_points: usize) -> Vec<f64> {
    let n = n_points.max(3);
    let ratio = (x_max / GRID_START).ln() / (n - 2) as f64;
    std::iter::once(0.0)
        .chain((0..n - 1).map(|i| {
            if i == n - 2 {
                x_max
            } else {
                GRID_START * (ratio * i as f64).exp()
            }
        }))
        .collect()
}

pub fn f_sum_integral(
    model: Model,
    q: f64,
    y: f64,
    x_p: f64,
    x_max: f64,
    n_points: usize,
) -> Result<SumRuleIntegral> {
    if x_max.is_nan() || x_max < 50.0 {
        return Err(Error::Domain {
            field: "x_max",
            requirement: ">= 50",
            value: x_max,
        });
    }
    if n_points < 10_000 {
        return Err(Error::Domain {
            field: "n_points",
            requirement: ">= 10000",
            value: n_points as f64,
        });
    }
    let grid = graded_grid(x_max, n_points);
    let mut values = Vec::with_capacity(grid.len());
    // x Im ε is finite at x = 0 and vanishes linearly; take the endpoint as 0.
    values.push(0.0);
    for &x in &grid[1..] {
        let query = DimensionlessQuery::new(q, x, y)?.with_plasma_frequency(x_p)?;
        values.push(x * epsilon(model, &query)?.im);
    }
    let value = 2.0
        * grid
            .windows(2)
            .zip(values.windows(2))
            .map(|(x, f)| 0.5 * (x[1] - x[0]) * (f[0] + f[1]))
            .sum::<f64>();
    Ok(SumRuleIntegral {
        value,
        target: PI * x_p * x_p,
    })
}

/// Sum rule for the collisional quantum model, reported against `rel_tol`.
pub fn f_sum_check(
    q: f64,
    y: f64,
    x_p: f64,
    x_max: f64,
    n_points: usize,
    rel_tol: f64,
) -> Result<ValidationReport> {
    let integral = f_sum_integral(Model::Mermin, q, y, x_p, x_max, n_points)?;
    let case = ValidationCase::compare(
        format!("f-sum mermin q={q} y={y} x_p={x_p} x_max={x_max}"),
        integral.value.into(),
        integral.target.into(),
        Check::Relative(rel_tol),
    );
    Ok(ValidationReport::from_cases(Suite::SumRule, vec![case]))
}
