//! Transverse conductivity `σ/σ₀` and permittivity `ε` for three models.
//!
//! Every model is written as `σ/σ₀ = (iy/x)·B` and `ε = 1 - (x_p²/x²)·B`,
//! which is `ε = 1 + 4πiσ/ω` in dimensionless form. The models differ only in
//! the bracket `B`:
//!
//! | model     | `B`                                          |
//! |-----------|----------------------------------------------|
//! | mermin    | `1 + (x J_ω + iy J_ν)/(x + iy)`              |
//! | lindhard  | `1 + J_ω`                                    |
//! | classical | `x/(x + iy) · C(z/q)`                        |
//!
//! with `J_ω = (3/16) T1(q, z)`, `J_ν = (3/8) T0(q)` and
//! `C(a) = (3a/4)[2a - (1 - a²) Log((a-1)/(a+1))]`.
//!
//! The classical bracket is the small-`q` reduction of the quantum model with
//! the occupation difference linearised onto the Fermi surface:
//! `C(a) = 1 - (3/4) ∫_-1^1 μ(1-μ²)/(μ-a) dμ`, which integrates in closed form
//! to the expression above.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernels::{t0_closed, t1_closed};
use crate::scales::DimensionlessQuery;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Mermin,
    Lindhard,
    Classical,
}

impl Model {
    /// Canonical output order.
    pub const ALL: [Model; 3] = [Model::Mermin, Model::Lindhard, Model::Classical];

    pub fn name(self) -> &'static str {
        match self {
            Model::Mermin => "mermin",
            Model::Lindhard => "lindhard",
            Model::Classical => "classical",
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Model {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "mermin" => Ok(Model::Mermin),
            "lindhard" => Ok(Model::Lindhard),
            "classical" => Ok(Model::Classical),
            other => Err(format!(
                "unknown model '{other}' (expected mermin, lindhard or classical)"
            )),
        }
    }
}

/// Variants of the collisional quantum bracket.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MerminVariant {
    #[default]
    Canonical,
    /// `B = (x J_ω + iy J_ν)/(x + iy)` without the leading `1`. This misprinted
    /// form does not reduce to the Drude limit and is kept as a regression guard.
    MissingLeadingOne,
}

/// Response of one model at one query point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ResponseSample {
    pub model: Model,
    /// `σ_tr/σ₀`.
    pub sigma_ratio: Complex64,
    /// `ε_tr`, present when the query carries `x_p`.
    pub epsilon: Option<Complex64>,
    pub query: DimensionlessQuery,
}

/// `J_ω = (3/16) T1(q, z)`.
pub fn j_omega(q: f64, z: Complex64) -> Result<Complex64> {
    Ok(t1_closed(q, z)?.value * (3.0 / 16.0))
}

/// `J_ν = (3/8) T0(q)`.
pub fn j_nu(q: f64) -> Result<f64> {
    Ok(0.375 * t0_closed(q)?)
}

/// `q → 0` limit of every model: `σ/σ₀ = iy/(x + iy)`.
pub fn drude_limit(x: f64, y: f64) -> Complex64 {
    let i_y = Complex64::new(0.0, y);
    i_y / Complex64::new(x, y)
}

fn check_domain(query: &DimensionlessQuery) -> Result<()> {
    for (field, value) in [("x", query.x()), ("y", query.y())] {
        if value.is_nan() || value <= 0.0 {
            return Err(Error::Domain {
                field,
                requirement: "> 0 (use the limit operations at the boundary)",
                value,
            });
        }
    }
    Ok(())
}

/// `C(a) = 1 - (3/4) ∫_-1^1 μ(1-μ²)/(μ-a) dμ` for `Im a > 0`.
fn classical_factor(a: Complex64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    if a.norm() >= 4.0 {
        // 1 + Σ_k 3 a^{-2k} / ((2k+1)(2k+3)); the closed form cancels here.
        let inv2 = (a * a).inv();
        let mut power = one;
        let mut sum = one;
        for k in 1..=60 {
            power *= inv2;
            let kf = f64::from(k);
            let term = power * (3.0 / ((2.0 * kf + 1.0) * (2.0 * kf + 3.0)));
            sum += term;
            if term.norm() <= 1e-17 * sum.norm() {
                break;
            }
        }
        return sum;
    }
    let log = (one - a).ln() - (-one - a).ln();
    a * 0.75 * (2.0 * a - (one - a * a) * log)
}

/// Bracket `B` for signed `x` (nonzero) and `y > 0`.
fn bracket(model: Model, variant: MerminVariant, q: f64, x: f64, y: f64) -> Result<Complex64> {
    let z = Complex64::new(x, y);
    let one = Complex64::new(1.0, 0.0);
    match model {
        Model::Mermin => {
            let mixed = (j_omega(q, z)? * x + Complex64::new(0.0, y * j_nu(q)?)) / z;
            Ok(match variant {
                MerminVariant::Canonical => one + mixed,
                MerminVariant::MissingLeadingOne => mixed,
            })
        }
        Model::Lindhard => Ok(one + j_omega(q, z)?),
        Model::Classical => Ok(classical_factor(z / q) * x / z),
    }
}

fn sigma_from_bracket(x: f64, y: f64, b: Complex64) -> Complex64 {
    Complex64::new(0.0, y / x) * b
}

fn epsilon_from_bracket(x: f64, x_p: f64, b: Complex64) -> Complex64 {
    Complex64::new(1.0, 0.0) - b * (x_p * x_p / (x * x))
}

fn require_plasma_frequency(query: &DimensionlessQuery) -> Result<f64> {
    query.x_p().ok_or(Error::MissingPlasmaFrequency)
}

/// `σ/σ₀` of `model` at `query`.
pub fn sigma(model: Model, query: &DimensionlessQuery) -> Result<Complex64> {
    check_domain(query)?;
    let b = bracket(
        model,
        MerminVariant::Canonical,
        query.q(),
        query.x(),
        query.y(),
    )?;
    Ok(sigma_from_bracket(query.x(), query.y(), b))
}

/// `ε` of `model` at `query`; requires `x_p`.
pub fn epsilon(model: Model, query: &DimensionlessQuery) -> Result<Complex64> {
    check_domain(query)?;
    let x_p = require_plasma_frequency(query)?;
    let b = bracket(
        model,
        MerminVariant::Canonical,
        query.q(),
        query.x(),
        query.y(),
    )?;
    Ok(epsilon_from_bracket(query.x(), x_p, b))
}

pub fn sigma_mermin(query: &DimensionlessQuery) -> Result<Complex64> {
    sigma(Model::Mermin, query)
}

pub fn eps_mermin(query: &DimensionlessQuery) -> Result<Complex64> {
    epsilon(Model::Mermin, query)
}

pub fn sigma_lindhard(query: &DimensionlessQuery) -> Result<Complex64> {
    sigma(Model::Lindhard, query)
}

pub fn eps_lindhard(query: &DimensionlessQuery) -> Result<Complex64> {
    epsilon(Model::Lindhard, query)
}

pub fn sigma_classical(query: &DimensionlessQuery) -> Result<Complex64> {
    sigma(Model::Classical, query)
}

pub fn eps_classical(query: &DimensionlessQuery) -> Result<Complex64> {
    epsilon(Model::Classical, query)
}

/// `σ/σ₀` of the collisional quantum model for a chosen bracket variant.
pub fn sigma_mermin_variant(
    query: &DimensionlessQuery,
    variant: MerminVariant,
) -> Result<Complex64> {
    check_domain(query)?;
    let b = bracket(Model::Mermin, variant, query.q(), query.x(), query.y())?;
    Ok(sigma_from_bracket(query.x(), query.y(), b))
}

/// Evaluates `σ/σ₀` and, when `x_p` is present, `ε` from a single bracket.
pub fn sample(model: Model, query: &DimensionlessQuery) -> Result<ResponseSample> {
    check_domain(query)?;
    let b = bracket(
        model,
        MerminVariant::Canonical,
        query.q(),
        query.x(),
        query.y(),
    )?;
    Ok(ResponseSample {
        model,
        sigma_ratio: sigma_from_bracket(query.x(), query.y(), b),
        epsilon: query
            .x_p()
            .map(|x_p| epsilon_from_bracket(query.x(), x_p, b)),
        query: *query,
    })
}

/// All three models in canonical order. A failing model does not stop the others.
pub fn eval_all(query: &DimensionlessQuery) -> Vec<(Model, Result<ResponseSample>)> {
    Model::ALL
        .iter()
        .map(|&model| (model, sample(model, query)))
        .collect()
}

/// `σ/σ₀` and `ε` of `model` at the mirrored frequency `-x + iy`.
///
/// Reality of the time-domain response requires `σ(-x) = conj σ(x)` and
/// `ε(-x) = conj ε(x)`; this evaluates the left-hand sides through the same
/// kernels with `z → -x + iy`.
pub fn mirrored(
    model: Model,
    query: &DimensionlessQuery,
) -> Result<(Complex64, Option<Complex64>)> {
    check_domain(query)?;
    let mirror = DimensionlessQuery::unchecked(query.q(), -query.x(), query.y(), query.x_p());
    let b = bracket(
        model,
        MerminVariant::Canonical,
        mirror.q(),
        mirror.x(),
        mirror.y(),
    )?;
    Ok((
        sigma_from_bracket(mirror.x(), mirror.y(), b),
        mirror
            .x_p()
            .map(|x_p| epsilon_from_bracket(mirror.x(), x_p, b)),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::t0_quadrature;
    use crate::quadrature::{integrate_with_breaks, Tolerance};

    fn query(q: f64, x: f64, y: f64) -> DimensionlessQuery {
        DimensionlessQuery::new(q, x, y).unwrap()
    }

    fn query_p(q: f64, x: f64, y: f64, x_p: f64) -> DimensionlessQuery {
        query(q, x, y).with_plasma_frequency(x_p).unwrap()
    }

    #[test]
    fn j_nu_limits() {
        assert!((j_nu(1e-6).unwrap() + 1.0).abs() < 1e-12);
        let reference = 0.375 * t0_quadrature(1.0, 1e-12).unwrap();
        assert!((j_nu(1.0).unwrap() - reference).abs() < 1e-10);
        assert!((j_nu(1.0).unwrap() + 0.762_988_529_640_929).abs() < 1e-12);
    }

    #[test]
    fn j_omega_vanishes_as_q_goes_to_zero() {
        let z = Complex64::new(1.0, 0.5);
        let small = j_omega(1e-3, z).unwrap();
        let expected = 0.2 * 1e-6 / (z * z);
        assert!((small - expected).norm() < 1e-6 * expected.norm() + 1e-15);
        assert!(j_omega(1e-5, z).unwrap().norm() < 1e-10);
    }

    #[test]
    fn mermin_drude_value() {
        let s = sigma_mermin(&query(1e-4, 1.0, 0.5)).unwrap();
        assert!((s - Complex64::new(0.2, 0.4)).norm() < 1e-7);
    }

    #[test]
    fn mermin_static_value() {
        let s = sigma_mermin(&query(1e-4, 1e-6, 0.1)).unwrap();
        assert!((s - Complex64::new(1.0, 0.0)).norm() < 1e-3);
    }

    #[test]
    fn imaginary_parts_coincide_as_y_vanishes() {
        for q in [0.1, 0.5, 1.0, 2.5] {
            for x in [0.01, 0.1, 0.5, 2.0] {
                let p = query(q, x, 1e-6);
                let m = sigma_mermin(&p).unwrap();
                let l = sigma_lindhard(&p).unwrap();
                assert!((m.im - l.im).abs() < 1e-4, "q={q} x={x}: {m} vs {l}");
            }
        }
    }

    #[test]
    fn mermin_and_lindhard_eps_close_at_moderate_x() {
        let p = query_p(1.0, 0.5, 1e-6, 1.0);
        let m = eps_mermin(&p).unwrap();
        let l = eps_lindhard(&p).unwrap();
        assert!((m - l).norm() < 1e-4);
    }

    #[test]
    fn mermin_eps_drude() {
        let (x, y, xp) = (2.0, 0.1, 1.0);
        let eps = eps_mermin(&query_p(1e-4, x, y, xp)).unwrap();
        let drude = Complex64::new(1.0, 0.0) - xp * xp / (x * Complex64::new(x, y));
        assert!((eps - drude).norm() < 1e-7);
    }

    #[test]
    fn lindhard_small_q_is_free_electron() {
        let (x, y) = (0.7, 0.2);
        let s = sigma_lindhard(&query(1e-5, x, y)).unwrap();
        assert!((s - Complex64::new(0.0, y / x)).norm() < 1e-9);
    }

    #[test]
    fn classical_large_a_is_drude() {
        let (x, y) = (1.0, 0.3);
        let s = sigma_classical(&query(1e-4, x, y)).unwrap();
        assert!((s - drude_limit(x, y)).norm() < 1e-8);
    }

    #[test]
    fn classical_matches_quadrature_of_linearised_integral() {
        for q in [0.1, 0.25, 0.5, 1.0, 1.9, 2.5] {
            for x in [0.01, 0.1, 0.5, 1.0, 2.0] {
                for y in [1e-3, 1e-2, 0.1, 1.0] {
                    let z = Complex64::new(x, y);
                    let a = z / q;
                    let integral = integrate_with_breaks(
                        |mu: f64| {
                            Complex64::new(mu * (1.0 - mu * mu), 0.0)
                                / (Complex64::new(mu, 0.0) - a)
                        },
                        -1.0,
                        1.0,
                        &[a.re],
                        Tolerance::relative(1e-13),
                    )
                    .unwrap()
                    .value;
                    let oracle = drude_limit(x, y) * (Complex64::new(1.0, 0.0) - integral * 0.75);
                    let s = sigma_classical(&query(q, x, y)).unwrap();
                    assert!(
                        (s - oracle).norm() <= 1e-9 * oracle.norm(),
                        "q={q} x={x} y={y}: {s} vs {oracle}"
                    );
                }
            }
        }
    }

    #[test]
    fn classical_series_and_closed_form_agree_at_switch() {
        let a = Complex64::from_polar(4.0, 0.4);
        let one = Complex64::new(1.0, 0.0);
        let closed = a * 0.75 * (2.0 * a - (one - a * a) * ((one - a).ln() - (-one - a).ln()));
        assert!((classical_factor(a) - closed).norm() < 1e-12);
    }

    #[test]
    fn mirrored_sigma_is_conjugate() {
        for model in Model::ALL {
            let p = query_p(0.6, 0.8, 0.05, 1.3);
            let (s_m, e_m) = mirrored(model, &p).unwrap();
            let s = sample(model, &p).unwrap();
            assert!((s_m - s.sigma_ratio.conj()).norm() < 1e-12 * s.sigma_ratio.norm());
            let e = s.epsilon.unwrap();
            assert!((e_m.unwrap() - e.conj()).norm() < 1e-12 * e.norm());
        }
    }

    #[test]
    fn eps_sigma_identity() {
        let p = query_p(1.0, 0.5, 0.1, 1.0);
        for (model, result) in eval_all(&p) {
            let s = result.unwrap();
            let eps = s.epsilon.unwrap();
            let rhs = Complex64::new(0.0, 1.0 / (0.5 * 0.1)) * s.sigma_ratio;
            assert!(((eps - 1.0) - rhs).norm() <= 1e-12 * rhs.norm(), "{model}");
            assert_eq!(epsilon(model, &p).unwrap(), eps);
        }
    }

    #[test]
    fn eval_all_order_and_large_x_agreement() {
        let samples = eval_all(&query(1.0, 10.0, 0.1));
        let order: Vec<Model> = samples.iter().map(|(m, _)| *m).collect();
        assert_eq!(order, Model::ALL.to_vec());
        let mags: Vec<f64> = samples
            .iter()
            .map(|(_, r)| r.as_ref().unwrap().sigma_ratio.norm())
            .collect();
        for i in 0..3 {
            for j in 0..3 {
                assert!((mags[i] - mags[j]).abs() <= 0.1 * mags[i].max(mags[j]));
            }
        }
    }

    #[test]
    fn eval_all_reports_errors_per_model() {
        let p = query(1.0, 0.0, 0.1);
        let results = eval_all(&p);
        assert_eq!(results.len(), 3);
        assert!(results.iter().all(|(_, r)| r.is_err()));
    }

    #[test]
    fn boundary_values_are_rejected() {
        assert!(matches!(
            sigma_mermin(&query(1.0, 0.0, 0.1)),
            Err(Error::Domain { field: "x", .. })
        ));
        assert!(matches!(
            sigma_lindhard(&query(1.0, 0.5, 0.0)),
            Err(Error::Domain { field: "y", .. })
        ));
        assert_eq!(
            eps_mermin(&query(1.0, 0.5, 0.1)),
            Err(Error::MissingPlasmaFrequency)
        );
    }

    #[test]
    fn missing_one_variant_breaks_drude_limit() {
        let (x, y) = (1.0, 0.5);
        let p = query(1e-3, x, y);
        let bad = sigma_mermin_variant(&p, MerminVariant::MissingLeadingOne).unwrap();
        // Limit of the misprint: y²/(x(x+iy)).
        let expected = Complex64::new(y * y / x, 0.0) / Complex64::new(x, y);
        assert!((bad - expected).norm() < 1e-5);
        assert!((bad - drude_limit(x, y)).norm() > 0.1);
    }

    #[test]
    fn model_names_round_trip() {
        for m in Model::ALL {
            assert_eq!(m.name().parse::<Model>().unwrap(), m);
        }
        assert!("bogus".parse::<Model>().is_err());
    }
}
