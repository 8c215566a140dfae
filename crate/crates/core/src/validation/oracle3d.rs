//! Direct integration of `J_ω` and `J_ν` over the Fermi-ball occupation difference.
//!
//! ```text
//! J(w) = 3/(8πq) ∫ [Θ(1-K²) - Θ(1-(K-q)²)] K⊥² / (K_x - q/2 - w) d³K
//! ```
//!
//! with `w = z/q` for `J_ω` and `w = 0` for `J_ν`. Cylindrical coordinates
//! with the axis along `q`: the inner integral runs over `r = K⊥` at fixed
//! `t = K_x`, the outer over `t ∈ [-1, 1+q]`. No shift of the integration
//! variable and no linearisation of the step functions is used.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{require_positive, Error, Result};
use crate::quadrature::{integrate_with_breaks, Tolerance};

fn step(v: f64) -> f64 {
    if v > 0.0 {
        1.0
    } else {
        0.0
    }
}

/// `∫_0^∞ 2π r³ [Θ(1 - t² - r²) - Θ(1 - (t-q)² - r²)] dr` by adaptive quadrature.
fn transverse_moment(t: f64, q: f64, tol: Tolerance) -> Result<f64> {
    let inner_sq = 1.0 - t * t;
    let outer_sq = 1.0 - (t - q) * (t - q);
    let r_inner = inner_sq.max(0.0).sqrt();
    let r_outer = outer_sq.max(0.0).sqrt();
    let r_max = r_inner.max(r_outer);
    if r_max == 0.0 {
        return Ok(0.0);
    }
    let occupation = |r: f64| {
        let r2 = r * r;
        2.0 * PI * r2 * r * (step(inner_sq - r2) - step(outer_sq - r2))
    };
    Ok(integrate_with_breaks(occupation, 0.0, r_max, &[r_inner, r_outer], tol)?.value)
}

fn outer_integral(q: f64, shift: Complex64, tol: Tolerance) -> Result<Complex64> {
    let pole = 0.5 * q + shift.re;
    let breaks = [q - 1.0, 1.0, 0.5 * q, pole];
    let mut failure: Option<Error> = None;
    let integrand = |t: f64| match transverse_moment(t, q, tol) {
        Ok(m) => Complex64::new(m, 0.0) / (Complex64::new(t - 0.5 * q, 0.0) - shift),
        Err(e) => {
            failure.get_or_insert(e);
            Complex64::new(0.0, 0.0)
        }
    };
    let value = integrate_with_breaks(integrand, -1.0, 1.0 + q, &breaks, tol)?.value;
    match failure {
        Some(e) => Err(e),
        None => Ok(value * (3.0 / (8.0 * PI * q))),
    }
}

/// `(J_ω, J_ν)` at `(q, z)` from the three-dimensional integrals.
///
/// `tol` is the relative tolerance of both the inner and outer quadratures.
pub fn j_integrals_3d(q: f64, z: Complex64, tol: f64) -> Result<(Complex64, f64)> {
    require_positive("q", q)?;
    if !(z.im > 0.0 && z.im.is_finite() && z.re.is_finite()) {
        return Err(Error::Domain {
            field: "Im z",
            requirement: "> 0",
            value: z.im,
        });
    }
    let tolerance = Tolerance::relative(tol).with_max_intervals(20_000);
    let j_omega = outer_integral(q, z / q, tolerance)?;
    let j_nu = outer_integral(q, Complex64::new(0.0, 0.0), tolerance)?;
    Ok((j_omega, j_nu.re))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::response::{j_nu, j_omega};

    #[test]
    fn transverse_moment_is_difference_of_disk_moments() {
        // ∫_0^R 2π r³ dr = π R⁴ / 2 for each disk.
        for (t, q) in [(0.2_f64, 0.5_f64), (-0.5, 1.0), (1.2, 0.7), (0.9, 2.5)] {
            let r1: f64 = (1.0_f64 - t * t).max(0.0);
            let r2: f64 = (1.0_f64 - (t - q) * (t - q)).max(0.0);
            let expected = 0.5 * PI * (r1 * r1 - r2 * r2);
            let m = transverse_moment(t, q, Tolerance::relative(1e-12)).unwrap();
            assert!((m - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn j_nu_matches_reduction() {
        let (_, nu) = j_integrals_3d(0.5, Complex64::new(0.5, 0.1), 1e-8).unwrap();
        let reference = j_nu(0.5).unwrap();
        assert!(((nu - reference) / reference).abs() < 1e-6);
    }

    #[test]
    fn j_omega_matches_reduction() {
        let z = Complex64::new(0.5, 0.1);
        let (omega, _) = j_integrals_3d(0.5, z, 1e-8).unwrap();
        let reference = j_omega(0.5, z).unwrap();
        assert!((omega - reference).norm() < 1e-6 * reference.norm());
    }

    #[test]
    fn small_q_j_nu_is_minus_one() {
        let (_, nu) = j_integrals_3d(1e-2, Complex64::new(0.3, 0.1), 1e-7).unwrap();
        assert!((nu + 1.0).abs() < 1e-3);
    }

    #[test]
    fn non_overlapping_spheres() {
        let z = Complex64::new(1.0, 0.2);
        let (omega, nu) = j_integrals_3d(2.5, z, 1e-8).unwrap();
        assert!((omega - j_omega(2.5, z).unwrap()).norm() < 1e-6 * omega.norm());
        assert!((nu - j_nu(2.5).unwrap()).abs() < 1e-6 * nu.abs());
    }

    #[test]
    fn rejects_real_z() {
        assert!(j_integrals_3d(1.0, Complex64::new(1.0, 0.0), 1e-6).is_err());
        assert!(j_integrals_3d(0.0, Complex64::new(1.0, 1.0), 1e-6).is_err());
    }
}
