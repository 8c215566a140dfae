//! Physical plasma parameters (Gaussian-CGS) and the dimensionless variables
//! the rest of the crate works in.
//!
//! Frequencies are measured in units of `k_F v_F = 2 E_F / ħ` and wavenumbers
//! in units of `k_F`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{require_non_negative, require_positive, Result};

/// Electron constants in Gaussian-CGS units.
pub mod cgs {
    /// Elementary charge, statC.
    pub const ELECTRON_CHARGE: f64 = 4.803_204_712_570_263e-10;
    /// Electron mass, g.
    pub const ELECTRON_MASS: f64 = 9.109_383_701_5e-28;
    /// Reduced Planck constant, erg·s.
    pub const HBAR: f64 = 1.054_571_817e-27;
}

/// Degenerate electron gas scales derived from density and fundamental constants.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FermiScales {
    /// Electron number density, cm⁻³.
    pub density: f64,
    /// Electron charge, statC.
    pub charge: f64,
    /// Electron mass, g.
    pub mass: f64,
    /// Reduced Planck constant, erg·s.
    pub hbar: f64,
    /// Collision frequency used for `sigma_0`, s⁻¹.
    pub collision_frequency: f64,
    /// Fermi wavenumber, cm⁻¹.
    pub k_f: f64,
    /// Fermi velocity, cm/s.
    pub v_f: f64,
    /// Fermi energy, erg.
    pub e_f: f64,
    /// Plasma frequency, rad/s.
    pub omega_p: f64,
    /// Static conductivity `e²N/(mν)`, s⁻¹.
    pub sigma_0: f64,
}

impl FermiScales {
    /// Frequency unit `k_F v_F`.
    pub fn frequency_unit(&self) -> f64 {
        self.k_f * self.v_f
    }
}

/// Derives the Fermi scales for density `n` and collision frequency `nu`.
pub fn derive_fermi_scales(n: f64, e: f64, m: f64, hbar: f64, nu: f64) -> Result<FermiScales> {
    require_positive("N", n)?;
    require_positive("e", e)?;
    require_positive("m", m)?;
    require_positive("hbar", hbar)?;
    require_positive("nu", nu)?;

    let k_f = (3.0 * PI * PI * n).cbrt();
    let v_f = hbar * k_f / m;
    let e_f = 0.5 * m * v_f * v_f;
    let omega_p = (4.0 * PI * e * e * n / m).sqrt();
    let sigma_0 = e * e * n / (m * nu);
    Ok(FermiScales {
        density: n,
        charge: e,
        mass: m,
        hbar,
        collision_frequency: nu,
        k_f,
        v_f,
        e_f,
        omega_p,
        sigma_0,
    })
}

/// Electron gas scales with physical electron constants.
pub fn electron_gas(n: f64, nu: f64) -> Result<FermiScales> {
    derive_fermi_scales(n, cgs::ELECTRON_CHARGE, cgs::ELECTRON_MASS, cgs::HBAR, nu)
}

/// Evaluation point in dimensionless variables.
///
/// `q = k/k_F`, `x = ω/(k_F v_F)`, `y = ν/(k_F v_F)` and optionally the
/// plasma frequency `x_p = ω_p/(k_F v_F)`. The boundary values `x = 0` and
/// `y = 0` are representable; response operations reject them.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DimensionlessQuery {
    q: f64,
    x: f64,
    y: f64,
    x_p: Option<f64>,
}

impl DimensionlessQuery {
    pub fn new(q: f64, x: f64, y: f64) -> Result<Self> {
        require_positive("q", q)?;
        require_non_negative("x", x)?;
        require_non_negative("y", y)?;
        Ok(Self { q, x, y, x_p: None })
    }

    pub fn with_plasma_frequency(mut self, x_p: f64) -> Result<Self> {
        self.x_p = Some(require_positive("x_p", x_p)?);
        Ok(self)
    }

    /// Builds a query without validation; used only by the mirrored-frequency checks.
    pub(crate) fn unchecked(q: f64, x: f64, y: f64, x_p: Option<f64>) -> Self {
        Self { q, x, y, x_p }
    }

    pub fn q(&self) -> f64 {
        self.q
    }
    pub fn x(&self) -> f64 {
        self.x
    }
    pub fn y(&self) -> f64 {
        self.y
    }
    pub fn x_p(&self) -> Option<f64> {
        self.x_p
    }
    /// Complex frequency `z = x + iy`.
    pub fn z(&self) -> Complex64 {
        Complex64::new(self.x, self.y)
    }
}

/// Converts physical frequency, collision frequency and wavenumber into a query.
pub fn to_dimensionless(
    omega: f64,
    nu: f64,
    k: f64,
    scales: &FermiScales,
) -> Result<DimensionlessQuery> {
    require_positive("omega", omega)?;
    require_positive("nu", nu)?;
    require_positive("k", k)?;
    let unit = scales.frequency_unit();
    DimensionlessQuery::new(k / scales.k_f, omega / unit, nu / unit)?
        .with_plasma_frequency(scales.omega_p / unit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use approx::assert_relative_eq;

    fn unit_scales() -> FermiScales {
        derive_fermi_scales(1.0 / (3.0 * PI * PI), 1.0, 1.0, 1.0, 1.0).unwrap()
    }

    #[test]
    fn unit_density_gives_unit_fermi_wavenumber() {
        let s = unit_scales();
        assert_relative_eq!(s.k_f, 1.0, max_relative = 1e-15);
        assert_relative_eq!(s.v_f, 1.0, max_relative = 1e-15);
        assert_relative_eq!(s.e_f, 0.5, max_relative = 1e-15);
    }

    #[test]
    fn eightfold_density_doubles_k_f() {
        let a = derive_fermi_scales(3.7e21, 1.0, 2.0, 3.0, 1.0).unwrap();
        let b = derive_fermi_scales(8.0 * 3.7e21, 1.0, 2.0, 3.0, 1.0).unwrap();
        assert_relative_eq!(b.k_f / a.k_f, 2.0, max_relative = 1e-15);
    }

    #[test]
    fn metallic_density_k_f() {
        let n = 8.5e22;
        let s = electron_gas(n, 1e13).unwrap();
        // Independent arithmetic: (3π²N)^(1/3) via exp/ln.
        let expected = ((3.0 * PI * PI * n).ln() / 3.0).exp();
        assert_relative_eq!(s.k_f, expected, max_relative = 1e-13);
        assert!((s.k_f - 1.36e8).abs() < 0.01e8);
    }

    #[test]
    fn invariants_hold() {
        let s = electron_gas(2.3e22, 4.1e13).unwrap();
        assert_relative_eq!(
            s.k_f.powi(3),
            3.0 * PI * PI * s.density,
            max_relative = 1e-14
        );
        assert_relative_eq!(s.e_f, 0.5 * s.mass * s.v_f * s.v_f, max_relative = 1e-15);
        assert_relative_eq!(s.v_f, s.hbar * s.k_f / s.mass, max_relative = 1e-15);
        assert_relative_eq!(
            s.omega_p * s.omega_p,
            4.0 * PI * s.charge * s.charge * s.density / s.mass,
            max_relative = 1e-14
        );
        assert_relative_eq!(
            s.sigma_0,
            s.charge * s.charge * s.density / (s.mass * s.collision_frequency),
            max_relative = 1e-15
        );
    }

    #[test]
    fn non_positive_inputs_name_the_field() {
        let err = derive_fermi_scales(1.0, 1.0, -1.0, 1.0, 1.0).unwrap_err();
        assert!(matches!(err, Error::Domain { field: "m", .. }));
        let err = derive_fermi_scales(0.0, 1.0, 1.0, 1.0, 1.0).unwrap_err();
        assert!(err.to_string().contains("N must be > 0"));
        let err = derive_fermi_scales(1.0, 1.0, 1.0, 1.0, f64::NAN).unwrap_err();
        assert!(matches!(err, Error::Domain { field: "nu", .. }));
    }

    #[test]
    fn definitions_of_x_and_q() {
        let s = electron_gas(8.5e22, 1e13).unwrap();
        let unit = s.k_f * s.v_f;
        let query = to_dimensionless(unit, 0.1 * unit, s.k_f, &s).unwrap();
        assert_relative_eq!(query.x(), 1.0, max_relative = 1e-15);
        assert_relative_eq!(query.q(), 1.0, max_relative = 1e-15);
        assert_relative_eq!(query.y(), 0.1, max_relative = 1e-15);
        assert_eq!(query.z(), Complex64::new(query.x(), query.y()));
    }

    #[test]
    fn energy_form_of_x_agrees() {
        let s = electron_gas(5.9e22, 3e13).unwrap();
        let omega = 2.7e15;
        let query = to_dimensionless(omega, 3e13, 1e7, &s).unwrap();
        assert_relative_eq!(
            query.x(),
            s.hbar * omega / (2.0 * s.e_f),
            max_relative = 1e-14
        );
        assert_relative_eq!(
            query.x_p().unwrap(),
            s.hbar * s.omega_p / (2.0 * s.e_f),
            max_relative = 1e-14
        );
    }

    #[test]
    fn conversion_rejects_non_positive() {
        let s = unit_scales();
        assert!(to_dimensionless(0.0, 1.0, 1.0, &s).is_err());
        assert!(to_dimensionless(1.0, 1.0, -2.0, &s).is_err());
    }

    #[test]
    fn query_accepts_boundary_but_not_negative() {
        assert!(DimensionlessQuery::new(1.0, 0.0, 0.0).is_ok());
        assert!(DimensionlessQuery::new(0.0, 1.0, 1.0).is_err());
        assert!(DimensionlessQuery::new(1.0, -1.0, 1.0).is_err());
        assert!(DimensionlessQuery::new(1.0, 1.0, 1.0)
            .unwrap()
            .with_plasma_frequency(0.0)
            .is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn frequency_round_trip(log_n in 18.0f64..25.0, x in 1e-3f64..50.0, y in 1e-3f64..5.0) {
                let s = electron_gas(10f64.powf(log_n), 1e13).unwrap();
                let unit = s.k_f * s.v_f;
                let query = to_dimensionless(x * unit, y * unit, 0.5 * s.k_f, &s).unwrap();
                prop_assert!(((query.x() - x) / x).abs() < 1e-14);
                prop_assert!(((query.y() - y) / y).abs() < 1e-14);
            }
        }
    }
}
