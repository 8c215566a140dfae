//! Fermi-sphere kernels of the degenerate electron gas.
//!
//! ```text
//! T0(q)    = PV ∫_0^1  (1-t²)² dt / (t² - q²/4)
//! T1(q, z) =    ∫_-1^1 (1-t²)² dt / ((t - z/q)² - q²/4),   Im z > 0
//! ```
//!
//! Both have elementary closed forms. `T1` is evaluated by one of three
//! routes, reported in [`T1Route`]:
//!
//! * a moment series in `q/z` when both poles `z/q ± q/2` are far from the
//!   segment `[-1, 1]` (the closed form cancels catastrophically there),
//! * the closed form, with every logarithm taken of a single linear factor
//!   `±1 - c` so that no principal-branch cut is crossed,
//! * adaptive quadrature, when the closed form is ill-conditioned.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{require_positive, Error, Result};
use crate::quadrature::{integrate, integrate_with_breaks, Tolerance};

/// Below this `q` the closed form of `T0` is replaced by its Taylor series.
pub const T0_SERIES_THRESHOLD: f64 = 1e-3;

/// Minimum distance of both `T1` poles from the origin for the moment series.
pub const T1_SERIES_RADIUS: f64 = 4.0;

/// Largest tolerated cancellation factor in the `T1` closed form.
pub const T1_MAX_CONDITION: f64 = 1e6;

/// Tolerance used when `T1` falls back to quadrature.
pub const T1_FALLBACK_TOL: f64 = 1e-12;

/// Both kernels at one query point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KernelPair {
    pub t0: f64,
    pub t1: Complex64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum T1Route {
    Series,
    ClosedForm,
    /// Served by quadrature; counts as a flagged point.
    Quadrature,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct T1Value {
    pub value: Complex64,
    pub route: T1Route,
}

impl T1Value {
    pub fn is_flagged(&self) -> bool {
        self.route == T1Route::Quadrature
    }
}

pub fn kernel_pair(q: f64, z: Complex64) -> Result<KernelPair> {
    Ok(KernelPair {
        t0: t0_closed(q)?,
        t1: t1_closed(q, z)?.value,
    })
}

/// `T0(q) = -5/3 + q²/4 + (q²-4)²/(16q) ln|(2-q)/(2+q)|`.
pub fn t0_closed(q: f64) -> Result<f64> {
    require_positive("q", q)?;
    if q < T0_SERIES_THRESHOLD {
        return Ok(t0_series(q));
    }
    if q == 2.0 {
        return Ok(-2.0 / 3.0);
    }
    // ln|(2-q)/(2+q)| = -2 atanh(min(q/2, 2/q)), accurate on both sides of 2.
    let log = -2.0
        * if q < 2.0 {
            (0.5 * q).atanh()
        } else {
            (2.0 / q).atanh()
        };
    let d = q * q - 4.0;
    Ok(-5.0 / 3.0 + 0.25 * q * q + d * d / (16.0 * q) * log)
}

/// `T0 = -5/3 + u - (1-u)² Σ_k u^k/(2k+1)` with `u = q²/4`.
fn t0_series(q: f64) -> f64 {
    let u = 0.25 * q * q;
    let mut sum = 0.0;
    let mut power = 1.0;
    for k in 0..40 {
        let term = power / f64::from(2 * k + 1);
        sum += term;
        if term < 1e-18 * sum {
            break;
        }
        power *= u;
    }
    -5.0 / 3.0 + u - (1.0 - u) * (1.0 - u) * sum
}

/// Principal value of the `T0` integral by symmetric excision around `t = q/2`.
pub fn t0_quadrature(q: f64, tol: f64) -> Result<f64> {
    require_positive("q", q)?;
    if (q - 2.0).abs() <= 1e-6 + 4.0 * f64::EPSILON {
        return Err(Error::Domain {
            field: "q",
            requirement: "at least 1e-6 away from 2 (pole at the endpoint t = 1)",
            value: q,
        });
    }
    let tolerance = Tolerance::relative(tol);
    let pole = 0.5 * q;
    let f = move |t: f64| {
        let w = 1.0 - t * t;
        w * w / (t * t - pole * pole)
    };
    if pole >= 1.0 {
        return Ok(integrate(f, 0.0, 1.0, tolerance)?.value);
    }

    // g(t) = (1-t²)²/(t+p), so f = g/(t-p); the folded integrand is regular at s = 0.
    let g = move |t: f64| {
        let w = 1.0 - t * t;
        w * w / (t + pole)
    };
    let half_width = pole.min(1.0 - pole);
    let folded = integrate(
        move |s: f64| (g(pole + s) - g(pole - s)) / s,
        0.0,
        half_width,
        tolerance,
    )?;
    let left = integrate(f, 0.0, pole - half_width, tolerance)?;
    let right = integrate(f, pole + half_width, 1.0, tolerance)?;
    Ok(folded.value + left.value + right.value)
}

fn check_t1_domain(q: f64, z: Complex64) -> Result<()> {
    require_positive("q", q)?;
    if !(z.im.is_finite() && z.im > 0.0 && z.re.is_finite()) {
        return Err(Error::Domain {
            field: "Im z",
            requirement: "> 0",
            value: z.im,
        });
    }
    Ok(())
}

/// Evaluates `T1(q, z)`, choosing the series, closed form or quadrature route.
pub fn t1_closed(q: f64, z: Complex64) -> Result<T1Value> {
    check_t1_domain(q, z)?;
    let a = z / q;
    let b = 0.5 * q;
    let (c_minus, c_plus) = (a - b, a + b);

    if c_minus.norm().min(c_plus.norm()) >= T1_SERIES_RADIUS {
        return Ok(T1Value {
            value: t1_moment_series(c_minus, c_plus),
            route: T1Route::Series,
        });
    }

    let (value, condition) = t1_factored_logs(a, b);
    if value.re.is_finite() && value.im.is_finite() && condition <= T1_MAX_CONDITION {
        return Ok(T1Value {
            value,
            route: T1Route::ClosedForm,
        });
    }
    Ok(T1Value {
        value: t1_quadrature(q, z, T1_FALLBACK_TOL)?,
        route: T1Route::Quadrature,
    })
}

/// Logarithmic part of `G(c) = ∫_-1^1 (1-t²)²/(t-c) dt = 2c³ - 10c/3 + (1-c²)² [Log(1-c) - Log(-1-c)]`.
///
/// For `Im c > 0` both `1-c` and `-1-c` stay in the lower half-plane along the
/// whole path, so the difference of principal logs is the exact antiderivative.
fn g_log_part(c: Complex64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    let w = one - c * c;
    w * w * ((one - c).ln() - (-one - c).ln())
}

/// Closed form via `T1 = [G(a+b) - G(a-b)]/(2b)`; also returns the cancellation factor.
fn t1_factored_logs(a: Complex64, b: f64) -> (Complex64, f64) {
    // Rational part collapses exactly: [poly(a+b) - poly(a-b)]/(2b) = 6a² + 2b² - 10/3.
    let rational = 6.0 * a * a + 2.0 * b * b - 10.0 / 3.0;
    let log_plus = g_log_part(a + b);
    let log_minus = g_log_part(a - b);
    let scale = 0.5 / b;
    let value = rational + (log_plus - log_minus) * scale;
    let magnitude = rational.norm() + (log_plus.norm() + log_minus.norm()) * scale;
    (value, magnitude / value.norm())
}

/// Closed form with each logarithm taken of a single complex ratio, principal branch.
///
/// Algebraically identical to the factored form but crosses the branch cut
/// for part of the parameter space; kept for comparison and diagnostics.
pub fn t1_log_ratio_form(q: f64, z: Complex64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    let a = z / q;
    let b = 0.5 * q;
    let s = one - a * a;
    let first = ((1.0 - b) * (1.0 - b) - a * a) / ((1.0 + b) * (1.0 + b) - a * a);
    let second = ((one - a) * (one - a) - b * b) / ((one + a) * (one + a) - b * b);
    let rational = 6.0 * a * a + 0.5 * q * q - 10.0 / 3.0;
    let first_coef = (s * s + q.powi(4) / 16.0 - 0.5 * q * q + 1.5 * z * z) / q;
    let second_coef = -(z * q * 0.5) * (s * (4.0 / (q * q)) - 1.0);
    rational + first_coef * first.ln() + second_coef * second.ln()
}

/// `∫_-1^1 t^n (1-t²)² dt` for even `n`.
fn even_moment(n: u32) -> f64 {
    let n = f64::from(n);
    16.0 / ((n + 1.0) * (n + 3.0) * (n + 5.0))
}

/// `T1 = Σ_{n even} m_n D_{n+1}` with `D_k = (c₋^{-k} - c₊^{-k})/(c₊ - c₋)`.
///
/// `D_k` obeys `D_k = (D_{k-1} + c₋^{-k})/c₊`, which avoids the subtraction.
fn t1_moment_series(c_minus: Complex64, c_plus: Complex64) -> Complex64 {
    let inv_minus = c_minus.inv();
    let inv_plus = c_plus.inv();
    let mut d = Complex64::new(0.0, 0.0);
    let mut power = Complex64::new(1.0, 0.0);
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 1..=120u32 {
        power *= inv_minus;
        d = (d + power) * inv_plus;
        if k % 2 == 1 {
            let term = d * even_moment(k - 1);
            sum += term;
            if term.norm() <= 1e-17 * sum.norm() {
                break;
            }
        }
    }
    sum
}

/// Integrand of `T1` as a function of `t`.
pub fn t1_integrand(q: f64, z: Complex64) -> impl Fn(f64) -> Complex64 + Copy {
    let a = z / q;
    let b2 = 0.25 * q * q;
    move |t: f64| {
        let w = 1.0 - t * t;
        let d = Complex64::new(t, 0.0) - a;
        Complex64::new(w * w, 0.0) / (d * d - b2)
    }
}

/// Adaptive quadrature of the `T1` integral over `[-1, 1]`.
pub fn t1_quadrature(q: f64, z: Complex64, tol: f64) -> Result<Complex64> {
    t1_quadrature_on(q, z, -1.0, 1.0, tol)
}

/// Adaptive quadrature of the `T1` integrand over `[lo, hi]`.
///
/// The real parts of the poles `z/q ± q/2` are used as initial break points.
pub fn t1_quadrature_on(q: f64, z: Complex64, lo: f64, hi: f64, tol: f64) -> Result<Complex64> {
    check_t1_domain(q, z)?;
    let a = z / q;
    let breaks = [a.re - 0.5 * q, a.re + 0.5 * q];
    let r = integrate_with_breaks(
        t1_integrand(q, z),
        lo,
        hi,
        &breaks,
        Tolerance::relative(tol).with_max_intervals(20_000),
    )?;
    Ok(r.value)
}
