use plasma_response::response::{eval_all, Model};
use plasma_response::DimensionlessQuery;

fn sigmas(q: f64, x: f64, y: f64) -> Vec<(Model, num_complex::Complex64)> {
    let query = DimensionlessQuery::new(q, x, y).unwrap();
    eval_all(&query)
        .into_iter()
        .map(|(m, s)| (m, s.unwrap().sigma_ratio))
        .collect()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().min(b.abs())
}

#[test]
fn all_models_coincide_at_large_x() {
    let s = sigmas(1.0, 10.0, 0.1);
    for (_, a) in &s {
        for (_, b) in &s {
            assert!(rel(a.norm(), b.norm()) <= 0.1);
        }
    }
}

#[test]
fn mermin_lindhard_coincide_at_small_x() {
    let s = sigmas(1.0, 0.01, 0.1);
    let (m, l) = (s[0].1.norm(), s[1].1.norm());
    assert!(rel(m, l) <= 0.1, "|σ| mermin {m} lindhard {l}");
}

#[test]
fn mermin_lindhard_coincide_at_small_q() {
    let s = sigmas(0.05, 0.1, 0.01);
    let (m, l) = (s[0].1, s[1].1);
    assert!((m - l).norm() <= 0.05 * m.norm().min(l.norm()), "mermin {m} lindhard {l}");
}
