//! Globally adaptive Gauss–Kronrod (G10/K21) quadrature.
//!
//! Works for any integrand value that behaves like a vector over the reals
//! (`f64`, `Complex64`). The interval with the largest error estimate is
//! bisected until the summed estimate satisfies the tolerance or the
//! subdivision budget runs out.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Values that can be integrated.
pub trait QuadValue:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self>
{
    fn zero() -> Self;
    fn magnitude(&self) -> f64;
}

impl QuadValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

impl QuadValue for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

/// Stopping rule: converged when `error <= max(abs, rel * |value|)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub rel: f64,
    pub abs: f64,
    /// Maximum number of subintervals held at once.
    pub max_intervals: usize,
}

impl Tolerance {
    pub fn relative(rel: f64) -> Self {
        Self {
            rel,
            abs: 0.0,
            max_intervals: 5000,
        }
    }

    pub fn with_abs(mut self, abs: f64) -> Self {
        self.abs = abs;
        self
    }

    pub fn with_max_intervals(mut self, max_intervals: usize) -> Self {
        self.max_intervals = max_intervals;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral<T> {
    pub value: T,
    pub error: f64,
    pub intervals: usize,
}

// Kronrod abscissae; odd indices are the 10-point Gauss nodes.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689,
    0.973_906_528_517_171_720_077_964_012_084,
    0.930_157_491_355_708_226_001_207_180_060,
    0.865_063_366_688_984_510_732_096_688_423,
    0.780_817_726_586_416_897_063_717_578_345,
    0.679_409_568_299_024_406_234_327_365_115,
    0.562_757_134_668_604_683_339_000_099_273,
    0.433_395_394_129_247_190_799_265_943_166,
    0.294_392_862_701_460_198_131_126_603_104,
    0.148_874_338_981_631_210_884_826_001_130,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062,
    0.032_558_162_307_964_727_478_818_972_459,
    0.054_755_896_574_351_996_031_381_300_245,
    0.075_039_674_810_919_952_767_043_140_916,
    0.093_125_454_583_697_605_535_065_465_083,
    0.109_387_158_802_297_641_899_210_590_326,
    0.123_491_976_262_065_851_077_208_977_432,
    0.134_709_217_311_473_325_928_054_001_772,
    0.142_775_938_577_060_080_797_094_273_139,
    0.147_739_104_901_338_491_374_841_515_972,
    0.149_445_554_002_916_905_664_936_468_390,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893,
    0.149_451_349_150_580_593_145_776_339_658,
    0.219_086_362_515_982_043_995_534_934_228,
    0.269_266_719_309_996_355_091_226_921_569,
    0.295_524_224_714_752_870_173_892_994_651,
];

fn kronrod21<T: QuadValue, F: FnMut(f64) -> T>(f: &mut F, a: f64, b: f64) -> (T, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut kronrod = f(center) * WGK[10];
    let mut gauss = T::zero();
    for (j, (&x, &w)) in XGK.iter().zip(WGK.iter()).take(10).enumerate() {
        let dx = half * x;
        let pair = f(center - dx) + f(center + dx);
        kronrod = kronrod + pair * w;
        if j % 2 == 1 {
            gauss = gauss + pair * WG[j / 2];
        }
    }
    let value = kronrod * half;
    let error = (value - gauss * half).magnitude();
    (value, error)
}

struct Segment<T> {
    a: f64,
    b: f64,
    value: T,
    error: f64,
}

impl<T> PartialEq for Segment<T> {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl<T> Eq for Segment<T> {}
impl<T> PartialOrd for Segment<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<T> Ord for Segment<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn resum<T: QuadValue>(heap: &BinaryHeap<Segment<T>>) -> (T, f64) {
    heap.iter()
        .fold((T::zero(), 0.0), |(v, e), s| (v + s.value, e + s.error))
}

/// Integrates `f` over `[a, b]`.
pub fn integrate<T, F>(f: F, a: f64, b: f64, tol: Tolerance) -> Result<Integral<T>>
where
    T: QuadValue,
    F: FnMut(f64) -> T,
{
    integrate_with_breaks(f, a, b, &[], tol)
}

/// Integrates `f` over `[a, b]`, starting from a partition at `breaks`.
///
/// Break points outside `(a, b)` are ignored. Placing them at kinks, jumps or
/// near-singular peaks lets the adaptive stage start from smooth pieces.
pub fn integrate_with_breaks<T, F>(
    mut f: F,
    a: f64,
    b: f64,
    breaks: &[f64],
    tol: Tolerance,
) -> Result<Integral<T>>
where
    T: QuadValue,
    F: FnMut(f64) -> T,
{
    if a == b {
        return Ok(Integral {
            value: T::zero(),
            error: 0.0,
            intervals: 0,
        });
    }
    let (lo, hi, sign) = if a < b { (a, b, 1.0) } else { (b, a, -1.0) };

    let mut nodes: Vec<f64> = std::iter::once(lo)
        .chain(breaks.iter().copied().filter(|&p| p > lo && p < hi))
        .chain(std::iter::once(hi))
        .collect();
    nodes.sort_by(f64::total_cmp);
    nodes.dedup();

    let mut heap = BinaryHeap::new();
    let mut total = T::zero();
    let mut total_error = 0.0;
    for w in nodes.windows(2) {
        let (value, error) = kronrod21(&mut f, w[0], w[1]);
        total = total + value;
        total_error += error;
        heap.push(Segment {
            a: w[0],
            b: w[1],
            value,
            error,
        });
    }

    loop {
        if total_error <= tol.abs.max(tol.rel * total.magnitude()) {
            // Incremental sums can absorb small terms after a huge segment is
            // replaced; confirm against a fresh sum before stopping.
            (total, total_error) = resum(&heap);
            if total_error <= tol.abs.max(tol.rel * total.magnitude()) {
                break;
            }
        }
        if heap.len() >= tol.max_intervals {
            return Err(Error::NotConverged {
                estimate: total.magnitude(),
                error: total_error,
                intervals: heap.len(),
            });
        }
        let worst = heap.pop().expect("heap holds at least one segment");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // Interval below floating-point resolution; cannot refine further.
            return Err(Error::NotConverged {
                estimate: total.magnitude(),
                error: total_error,
                intervals: heap.len() + 1,
            });
        }
        let (left, left_err) = kronrod21(&mut f, worst.a, mid);
        let (right, right_err) = kronrod21(&mut f, mid, worst.b);
        total = total - worst.value + left + right;
        total_error += left_err + right_err - worst.error;
        heap.push(Segment {
            a: worst.a,
            b: mid,
            value: left,
            error: left_err,
        });
        heap.push(Segment {
            a: mid,
            b: worst.b,
            value: right,
            error: right_err,
        });
    }

    let (value, error) = resum(&heap);
    let intervals = heap.len();
    Ok(Integral {
        value: value * sign,
        error,
        intervals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn rule_weights_sum_to_interval_length() {
        let k: f64 = WGK[10] + 2.0 * WGK[..10].iter().sum::<f64>();
        let g: f64 = 2.0 * WG.iter().sum::<f64>();
        assert_relative_eq!(k, 2.0, max_relative = 1e-15);
        assert_relative_eq!(g, 2.0, max_relative = 1e-15);
    }

    #[test]
    fn kronrod_is_exact_for_degree_31() {
        for n in [0_i32, 2, 10, 20, 30] {
            let (v, _) = kronrod21(&mut |x: f64| x.powi(n), -1.0, 1.0);
            assert_relative_eq!(v, 2.0 / f64::from(n + 1), max_relative = 1e-13);
        }
    }

    #[test]
    fn gauss_nodes_are_legendre_roots() {
        // P10 vanishes at the odd-indexed Kronrod abscissae.
        fn legendre(n: usize, x: f64) -> f64 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 1..n {
                let kf = k as f64;
                let p2 = ((2.0 * kf + 1.0) * x * p1 - kf * p0) / (kf + 1.0);
                p0 = p1;
                p1 = p2;
            }
            p1
        }
        for j in (1..10).step_by(2) {
            assert!(legendre(10, XGK[j]).abs() < 1e-14);
        }
    }

    #[test]
    fn sharp_peak_converges() {
        let eps = 1e-3;
        let r = integrate(
            |x: f64| eps / (x * x + eps * eps),
            -1.0,
            1.0,
            Tolerance::relative(1e-12),
        )
        .unwrap();
        assert_relative_eq!(r.value, 2.0 * (1.0 / eps).atan(), max_relative = 1e-12);
    }

    #[test]
    fn complex_integrand() {
        let r = integrate(
            |x: f64| Complex64::new(0.0, x).exp(),
            0.0,
            std::f64::consts::PI,
            Tolerance::relative(1e-13),
        )
        .unwrap();
        assert!((r.value - Complex64::new(0.0, 2.0)).norm() < 1e-13);
    }

    #[test]
    fn reversed_limits_flip_sign() {
        let f = |x: f64| x.exp();
        let fwd = integrate(f, 0.0, 1.0, Tolerance::relative(1e-13)).unwrap();
        let back = integrate(f, 1.0, 0.0, Tolerance::relative(1e-13)).unwrap();
        assert_relative_eq!(fwd.value, -back.value, max_relative = 1e-15);
    }

    #[test]
    fn budget_exhaustion_reports_estimate() {
        let err = integrate(
            |x: f64| 1.0 / x.abs().sqrt().max(1e-300),
            -1.0,
            1.0,
            Tolerance::relative(1e-15).with_max_intervals(8),
        )
        .unwrap_err();
        assert!(matches!(err, Error::NotConverged { intervals: 8, .. }));
    }
}
