//! Physics checks and independent oracles, grouped into suites.
//!
//! A suite never fails with an error: evaluation failures become failing
//! cases with `NaN` values. Case order is fixed by the grids below.

mod oracle3d;
mod sum_rule;

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::Serialize;

use crate::kernels::{t0_closed, t0_quadrature, t1_closed, t1_quadrature};
use crate::response::{
    drude_limit, eps_lindhard, eps_mermin, j_nu, j_omega, sigma_classical, sigma_mermin_variant,
    MerminVariant,
};
use crate::scales::DimensionlessQuery;
use crate::Result;

pub use oracle3d::j_integrals_3d;
pub use sum_rule::{f_sum_check, f_sum_integral, graded_grid, SumRuleIntegral};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Kernels,
    Oracle3d,
    Limits,
    SumRule,
    All,
}

impl Suite {
    pub const INDIVIDUAL: [Suite; 4] = [
        Suite::Kernels,
        Suite::Oracle3d,
        Suite::Limits,
        Suite::SumRule,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Kernels => "kernels",
            Suite::Oracle3d => "oracle3d",
            Suite::Limits => "limits",
            Suite::SumRule => "sumrule",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "kernels" => Ok(Suite::Kernels),
            "oracle3d" => Ok(Suite::Oracle3d),
            "limits" => Ok(Suite::Limits),
            "sumrule" => Ok(Suite::SumRule),
            "all" => Ok(Suite::All),
            other => Err(format!(
                "unknown suite '{other}' (expected kernels, oracle3d, limits, sumrule or all)"
            )),
        }
    }
}

/// Pass condition of a case.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum Check {
    /// `rel_error <= tol`.
    Relative(f64),
    /// `abs_error <= tol`.
    Absolute(f64),
    /// `Re computed >= threshold`.
    AtLeast(f64),
    /// `Re computed < threshold`.
    Below(f64),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationCase {
    pub label: String,
    pub computed: Complex64,
    pub reference: Complex64,
    pub abs_error: f64,
    pub rel_error: f64,
    pub check: Check,
    pub passed: bool,
}

impl ValidationCase {
    /// Compares `computed` with `reference`; relative error is taken against `|reference|`.
    pub fn compare(label: String, computed: Complex64, reference: Complex64, check: Check) -> Self {
        Self::compare_scaled(label, computed, reference, reference.norm(), check)
    }

    /// As [`compare`](Self::compare) with an explicit scale for the relative error.
    pub fn compare_scaled(
        label: String,
        computed: Complex64,
        reference: Complex64,
        scale: f64,
        check: Check,
    ) -> Self {
        let abs_error = (computed - reference).norm();
        let rel_error = if scale > 0.0 {
            abs_error / scale
        } else {
            abs_error
        };
        let mut case = Self {
            label,
            computed,
            reference,
            abs_error,
            rel_error,
            check,
            passed: false,
        };
        case.passed = case.evaluate();
        case
    }

    /// A scalar compared against a threshold.
    pub fn threshold(label: String, value: f64, check: Check) -> Self {
        let mut case = Self {
            label,
            computed: value.into(),
            reference: Complex64::new(f64::NAN, 0.0),
            abs_error: f64::NAN,
            rel_error: f64::NAN,
            check,
            passed: false,
        };
        if let Check::AtLeast(t) | Check::Below(t) = check {
            case.reference = t.into();
        }
        case.passed = case.evaluate();
        case
    }

    /// A case whose evaluation itself failed.
    pub fn failed(label: String, check: Check, error: &crate::Error) -> Self {
        let nan = Complex64::new(f64::NAN, f64::NAN);
        Self {
            label: format!("{label}: {error}"),
            computed: nan,
            reference: nan,
            abs_error: f64::NAN,
            rel_error: f64::NAN,
            check,
            passed: false,
        }
    }

    fn evaluate(&self) -> bool {
        match self.check {
            Check::Relative(tol) => self.rel_error <= tol,
            Check::Absolute(tol) => self.abs_error <= tol,
            Check::AtLeast(t) => self.computed.re >= t,
            Check::Below(t) => self.computed.re < t,
        }
    }

    fn with_tolerance(mut self, tol: f64) -> Self {
        self.check = match self.check {
            Check::Relative(_) => Check::Relative(tol),
            Check::Absolute(_) => Check::Absolute(tol),
            other => other,
        };
        // Failed evaluations stay failed.
        self.passed = !self.computed.re.is_nan() && self.evaluate();
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub suite: Suite,
    pub cases: Vec<ValidationCase>,
    /// Largest relative error over the comparison cases (`inf` if any is undefined).
    pub worst_rel_error: f64,
    pub passed: bool,
}

impl ValidationReport {
    pub fn from_cases(suite: Suite, cases: Vec<ValidationCase>) -> Self {
        let worst_rel_error = cases
            .iter()
            .filter(|c| matches!(c.check, Check::Relative(_) | Check::Absolute(_)))
            .map(|c| {
                if c.rel_error.is_nan() {
                    f64::INFINITY
                } else {
                    c.rel_error
                }
            })
            .fold(0.0, f64::max);
        let passed = cases.iter().all(|c| c.passed);
        Self {
            suite,
            cases,
            worst_rel_error,
            passed,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &ValidationCase> {
        self.cases.iter().filter(|c| !c.passed)
    }
}

/// Grids and designated points shared by the suites and acceptance checks.
pub mod grids {
    use num_complex::Complex64;

    pub const KERNEL_Q: [f64; 6] = [0.1, 0.25, 0.5, 1.0, 1.9, 2.5];
    pub const KERNEL_X: [f64; 5] = [0.01, 0.1, 0.5, 1.0, 2.0];
    pub const KERNEL_Y: [f64; 4] = [1e-3, 1e-2, 0.1, 1.0];

    /// 60 values of `q` in `[0.05, 3]` avoiding `(1.99, 2.01)`.
    pub fn t0_grid() -> Vec<f64> {
        let lower = (0..40).map(|i| 0.05 + (1.98 - 0.05) * i as f64 / 39.0);
        let upper = (0..20).map(|i| 2.02 + (3.0 - 2.02) * i as f64 / 19.0);
        lower.chain(upper).collect()
    }

    /// The 120-point `(q, x, y)` kernel grid.
    pub fn t1_grid() -> Vec<(f64, f64, f64)> {
        let mut out = Vec::with_capacity(120);
        for &q in &KERNEL_Q {
            for &x in &KERNEL_X {
                for &y in &KERNEL_Y {
                    out.push((q, x, y));
                }
            }
        }
        out
    }

    /// The `(q, x)` grid used for the vanishing-collision comparison.
    pub fn qx_grid() -> Vec<(f64, f64)> {
        KERNEL_Q
            .iter()
            .flat_map(|&q| KERNEL_X.iter().map(move |&x| (q, x)))
            .collect()
    }

    pub const ORACLE_J_NU_Q: [f64; 3] = [0.25, 0.5, 1.0];

    pub fn oracle_j_omega_points() -> [(f64, Complex64); 2] {
        [
            (0.5, Complex64::new(0.5, 0.1)),
            (1.0, Complex64::new(1.0, 0.01)),
        ]
    }

    pub const DRUDE_X: [f64; 4] = [0.1, 0.5, 1.0, 2.0];
    pub const DRUDE_Y: [f64; 3] = [0.01, 0.1, 1.0];
    pub const DRUDE_Q: f64 = 1e-3;

    /// Fixed `a = z/q` for the classical-limit sequence.
    pub fn classical_a() -> [Complex64; 3] {
        [
            Complex64::new(1.5, 0.5),
            Complex64::new(0.8, 0.4),
            Complex64::new(3.0, 1.0),
        ]
    }
    pub const CLASSICAL_Q: [f64; 3] = [0.2, 0.1, 0.05];
}

/// Options for [`run_suite_with`].
#[derive(Debug, Clone, Copy, Default)]
pub struct SuiteOptions {
    /// Replaces the tolerance of every relative/absolute comparison.
    pub tolerance: Option<f64>,
    /// Bracket used for the collisional quantum model in the limit checks.
    pub variant: MerminVariant,
}

pub fn run_suite(suite: Suite, tolerance: Option<f64>) -> ValidationReport {
    run_suite_with(
        suite,
        SuiteOptions {
            tolerance,
            ..SuiteOptions::default()
        },
    )
}

pub fn run_suite_with(suite: Suite, options: SuiteOptions) -> ValidationReport {
    let cases = match suite {
        Suite::Kernels => kernel_cases(),
        Suite::Oracle3d => oracle_cases(),
        Suite::Limits => limit_cases(options.variant),
        Suite::SumRule => sum_rule_cases(),
        Suite::All => Suite::INDIVIDUAL
            .iter()
            .flat_map(|&s| run_suite_with(s, options).cases)
            .collect(),
    };
    let cases = match options.tolerance {
        Some(tol) => cases.into_iter().map(|c| c.with_tolerance(tol)).collect(),
        None => cases,
    };
    ValidationReport::from_cases(suite, cases)
}

fn case_or_failure(
    label: String,
    check: Check,
    f: impl FnOnce() -> Result<ValidationCase>,
) -> ValidationCase {
    match f() {
        Ok(case) => case,
        Err(e) => ValidationCase::failed(label, check, &e),
    }
}

/// Fraction of the kernel grid above which branch fallbacks are a failure.
pub const MAX_FALLBACK_FRACTION: f64 = 0.01;

fn kernel_cases() -> Vec<ValidationCase> {
    let mut cases = Vec::new();
    let check = Check::Relative(1e-9);
    for q in grids::t0_grid() {
        let label = format!("T0 q={q:.6}");
        cases.push(case_or_failure(label.clone(), check, || {
            let closed = t0_closed(q)?;
            let quad = t0_quadrature(q, 1e-12)?;
            Ok(ValidationCase::compare_scaled(
                label,
                closed.into(),
                quad.into(),
                quad.abs().max(1.0),
                check,
            ))
        }));
    }

    let check = Check::Relative(1e-8);
    let grid = grids::t1_grid();
    let mut flagged = 0usize;
    for &(q, x, y) in &grid {
        let z = Complex64::new(x, y);
        let label = format!("T1 q={q} x={x} y={y}");
        cases.push(case_or_failure(label.clone(), check, || {
            let closed = t1_closed(q, z)?;
            if closed.is_flagged() {
                flagged += 1;
            }
            let quad = t1_quadrature(q, z, 1e-12)?;
            Ok(ValidationCase::compare(label, closed.value, quad, check))
        }));
    }
    cases.push(ValidationCase::threshold(
        "T1 quadrature-fallback fraction".into(),
        flagged as f64 / grid.len() as f64,
        Check::Below(MAX_FALLBACK_FRACTION),
    ));
    cases
}

fn oracle_cases() -> Vec<ValidationCase> {
    let tol = 1e-7;
    let check = Check::Relative(1e-5);
    let mut cases = Vec::new();
    let probe = Complex64::new(0.5, 0.1);
    for q in grids::ORACLE_J_NU_Q {
        let label = format!("J_nu 3-D q={q}");
        cases.push(case_or_failure(label.clone(), check, || {
            let (_, nu) = j_integrals_3d(q, probe, tol)?;
            Ok(ValidationCase::compare(
                label,
                nu.into(),
                j_nu(q)?.into(),
                check,
            ))
        }));
    }
    for (q, z) in grids::oracle_j_omega_points() {
        let label = format!("J_omega 3-D q={q} z={z}");
        cases.push(case_or_failure(label.clone(), check, || {
            let (omega, _) = j_integrals_3d(q, z, tol)?;
            Ok(ValidationCase::compare(label, omega, j_omega(q, z)?, check))
        }));
    }
    let check = Check::Absolute(1e-3);
    let label = "J_nu 3-D q=0.01 vs -1".to_string();
    cases.push(case_or_failure(label.clone(), check, || {
        let (_, nu) = j_integrals_3d(1e-2, probe, tol)?;
        Ok(ValidationCase::compare(
            label,
            nu.into(),
            (-1.0).into(),
            check,
        ))
    }));
    cases
}

/// `|σ(q) - iy/(x+iy)|` for the chosen bracket.
fn drude_deviation(q: f64, x: f64, y: f64, variant: MerminVariant) -> Result<f64> {
    let query = DimensionlessQuery::new(q, x, y)?;
    Ok((sigma_mermin_variant(&query, variant)? - drude_limit(x, y)).norm())
}

fn limit_cases(variant: MerminVariant) -> Vec<ValidationCase> {
    let mut cases = Vec::new();

    let check = Check::Absolute(1e-4);
    for &x in &grids::DRUDE_X {
        for &y in &grids::DRUDE_Y {
            let label = format!("Drude q={} x={x} y={y}", grids::DRUDE_Q);
            cases.push(case_or_failure(label.clone(), check, || {
                let query = DimensionlessQuery::new(grids::DRUDE_Q, x, y)?;
                let s = sigma_mermin_variant(&query, variant)?;
                Ok(ValidationCase::compare(label, s, drude_limit(x, y), check))
            }));
            let label = format!("Drude O(q²) halving x={x} y={y}");
            let check = Check::AtLeast(3.5);
            cases.push(case_or_failure(label.clone(), check, || {
                let coarse = drude_deviation(grids::DRUDE_Q, x, y, variant)?;
                let fine = drude_deviation(0.5 * grids::DRUDE_Q, x, y, variant)?;
                Ok(ValidationCase::threshold(label, coarse / fine, check))
            }));
        }
    }

    let check = Check::Absolute(1e-3);
    let label = "static q=1e-4 x=1e-6 y=0.1".to_string();
    cases.push(case_or_failure(label.clone(), check, || {
        let query = DimensionlessQuery::new(1e-4, 1e-6, 0.1)?;
        let s = sigma_mermin_variant(&query, variant)?;
        Ok(ValidationCase::compare(label, s, 1.0.into(), check))
    }));

    let check = Check::Absolute(1e-4);
    for (q, x) in grids::qx_grid() {
        let label = format!("Lindhard limit q={q} x={x} y=1e-6");
        cases.push(case_or_failure(label.clone(), check, || {
            let query = DimensionlessQuery::new(q, x, 1e-6)?.with_plasma_frequency(1.0)?;
            Ok(ValidationCase::compare(
                label,
                eps_mermin(&query)?,
                eps_lindhard(&query)?,
                check,
            ))
        }));
    }

    for a in grids::classical_a() {
        let label = format!("classical limit a={a}");
        let check = Check::Below(1.0);
        cases.push(case_or_failure(label.clone(), check, || {
            let errors = grids::CLASSICAL_Q
                .iter()
                .map(|&q| {
                    let z = a * q;
                    let query = DimensionlessQuery::new(q, z.re, z.im)?;
                    let quantum = sigma_mermin_variant(&query, variant)?;
                    Ok((quantum - sigma_classical(&query)?).norm())
                })
                .collect::<Result<Vec<f64>>>()?;
            // Largest successive error ratio; < 1 means monotone decrease.
            let worst = errors.windows(2).map(|w| w[1] / w[0]).fold(0.0, f64::max);
            Ok(ValidationCase::threshold(label, worst, check))
        }));
    }
    cases
}

fn sum_rule_cases() -> Vec<ValidationCase> {
    [(100.0, 0.02), (400.0, 0.005)]
        .iter()
        .map(|&(x_max, tol)| {
            let label = format!("f-sum q=0.5 y=0.1 x_p=1 x_max={x_max}");
            let check = Check::Relative(tol);
            match f_sum_check(0.5, 0.1, 1.0, x_max, 40_000, tol) {
                Ok(report) => {
                    let mut case = report.cases.into_iter().next().expect("one case");
                    case.label = label;
                    case
                }
                Err(e) => ValidationCase::failed(label, check, &e),
            }
        })
        .collect()
}
