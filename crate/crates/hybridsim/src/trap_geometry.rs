//! Surface-electrode trap geometry.
//!
//! Two rf electrodes of widths `b` and `c` separated by `a` set the ion
//! height
//!
//! ```text
//! h = √(a·b·c·(a+b+c)) / (b+c)
//! ```
//!
//! With `c = b/2` the optimum width ratio is `b/a = 4.90`, and the outer
//! segmented dc electrodes take `w_outer ≈ 3.66·a` to maximise the quartic
//! term of the axial potential `V(z) ≈ 2eγz² + 2eβz⁴` (γ < 0, β > 0 forms
//! the wedge used for ion separation). Anomalous heating falls off with ion
//! height roughly as `r^(−3.5±0.1)`.

use crate::error::{Error, Result};
use crate::quantities::constants::ELEMENTARY_CHARGE;

/// Optimum rf width ratio b/a for c = b/2.
pub const RF_WIDTH_RATIO: f64 = 4.90;
/// Outer dc electrode width ratio w_outer/a.
pub const OUTER_WIDTH_RATIO: f64 = 3.66;
/// Default heating-rate scaling exponent; the measured band is ±0.1.
pub const HEATING_EXPONENT: f64 = 3.5;

/// Ion height above the trap surface for rf separation `a` and widths
/// `b`, `c` (all metres).
pub fn ion_height(a: f64, b: f64, c: f64) -> Result<f64> {
    if a <= 0.0 || b <= 0.0 || c <= 0.0 {
        return Err(Error::Domain(format!(
            "electrode dimensions must be positive (a={a}, b={b}, c={c})"
        )));
    }
    Ok((a * b * c * (a + b + c)).sqrt() / (b + c))
}

/// Optimum electrode widths for a given rf separation `a`:
/// `(b, c, w_outer) = (4.90a, 2.45a, 3.66a)`.
pub fn optimum_widths(a: f64) -> Result<(f64, f64, f64)> {
    if a <= 0.0 {
        return Err(Error::Domain(format!("rf separation must be positive, got {a}")));
    }
    let b = RF_WIDTH_RATIO * a;
    Ok((b, b / 2.0, OUTER_WIDTH_RATIO * a))
}

/// A validated trap cross-section. `h` is always the height formula applied
/// to `(a, b, c)`; construction is the only way to set the fields.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrapGeometry {
    a: f64,
    b: f64,
    c: f64,
    w_outer: f64,
    h: f64,
}

impl TrapGeometry {
    pub fn new(a: f64, b: f64, c: f64, w_outer: f64) -> Result<Self> {
        let h = ion_height(a, b, c)?;
        if w_outer <= 0.0 {
            return Err(Error::Domain(format!(
                "outer electrode width must be positive, got {w_outer}"
            )));
        }
        Ok(TrapGeometry { a, b, c, w_outer, h })
    }

    /// Geometry from the rf separation alone, using the optimum ratios.
    pub fn from_separation(a: f64) -> Result<Self> {
        let (b, c, w_outer) = optimum_widths(a)?;
        Self::new(a, b, c, w_outer)
    }

    pub fn a(&self) -> f64 {
        self.a
    }
    pub fn b(&self) -> f64 {
        self.b
    }
    pub fn c(&self) -> f64 {
        self.c
    }
    pub fn w_outer(&self) -> f64 {
        self.w_outer
    }
    pub fn ion_height(&self) -> f64 {
        self.h
    }

    /// Unequal rf widths give the Doppler laser a projection on all three
    /// principal axes.
    pub fn is_asymmetric(&self) -> bool {
        self.b != self.c
    }

    /// Whether (b/a, c/b, w_outer/a) sit within `tol` (relative) of the
    /// optimum ratios. Rounded published electrode sets pass at 3%.
    pub fn matches_optimum_ratios(&self, tol: f64) -> bool {
        let rel = |x: f64, target: f64| (x / target - 1.0).abs() <= tol;
        rel(self.b / self.a, RF_WIDTH_RATIO)
            && rel(self.c / self.b, 0.5)
            && rel(self.w_outer / self.a, OUTER_WIDTH_RATIO)
    }
}

/// Axial potential coefficients: `V(z) = 2eγz² + 2eβz⁴`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxialPotential {
    /// Quadratic coefficient γ (V/m²).
    pub gamma: f64,
    /// Quartic coefficient β (V/m⁴).
    pub beta_quartic: f64,
}

impl AxialPotential {
    /// Potential energy (J) at axial position `z` (m).
    pub fn energy(&self, z: f64) -> f64 {
        let z2 = z * z;
        2.0 * ELEMENTARY_CHARGE * (self.gamma * z2 + self.beta_quartic * z2 * z2)
    }

    /// γ < 0 with β > 0 forms the double-well wedge used to separate ions.
    pub fn is_separation_wedge(&self) -> bool {
        self.gamma < 0.0 && self.beta_quartic > 0.0
    }
}

/// Rescale a heating rate from ion height `r0` to `r1`:
/// `rate0 × (r0/r1)^exponent`.
pub fn heating_rate_scaled(rate0: f64, r0: f64, r1: f64, exponent: f64) -> Result<f64> {
    if rate0 < 0.0 {
        return Err(Error::Domain(format!("heating rate must be ≥ 0, got {rate0}")));
    }
    if r0 <= 0.0 || r1 <= 0.0 {
        return Err(Error::Domain(format!(
            "ion heights must be positive (r0={r0}, r1={r1})"
        )));
    }
    Ok(rate0 * (r0 / r1).powf(exponent))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(x: f64, y: f64, rel: f64) {
        assert!(
            (x - y).abs() <= rel * y.abs().max(x.abs()),
            "{x} vs {y} (rel {rel})"
        );
    }

    #[test]
    fn height_of_published_electrode_set() {
        // direct evaluation; the rounded design quotes 25 µm
        let h = ion_height(18e-6, 90e-6, 45e-6).unwrap();
        assert_close(h, 24.7386337537e-6, 1e-9);
        assert!((h - 25e-6).abs() / 25e-6 < 0.02);
    }

    #[test]
    fn height_homogeneity_and_symmetry() {
        let base = ion_height(18e-6, 90e-6, 45e-6).unwrap();
        let k = 7.0;
        let scaled = ion_height(7.0 * 18e-6, 7.0 * 90e-6, 7.0 * 45e-6).unwrap();
        assert_close(scaled, k * base, 1e-12);

        // invariant under b ↔ c
        for (a, b, c) in [(1.0, 2.0, 3.0), (18e-6, 90e-6, 45e-6), (0.5, 0.1, 7.0)] {
            let h1 = ion_height(a, b, c).unwrap();
            let h2 = ion_height(a, c, b).unwrap();
            assert_eq!(h1, h2);
        }
    }

    #[test]
    fn height_symmetric_closed_form() {
        let h = ion_height(1.0, 1.0, 1.0).unwrap();
        assert_close(h, 3f64.sqrt() / 2.0, 1e-15);
    }

    #[test]
    fn height_ratio_constant_at_optimum_widths() {
        // h/a with b = 4.90a, c = b/2, evaluated once from the formula
        let expected = ion_height(1.0, 4.90, 2.45).unwrap();
        assert_close(expected, 1.3621877827801703, 1e-12);
        for a in [0.37e-6, 1e-6, 18e-6, 2.5e-3, 1.0, 42.0] {
            let (b, c, _) = optimum_widths(a).unwrap();
            assert_close(ion_height(a, b, c).unwrap() / a, expected, 1e-12);
        }
    }

    #[test]
    fn optimum_widths_examples() {
        let (b, c, w) = optimum_widths(18e-6).unwrap();
        assert_close(b, 88.2e-6, 1e-12);
        assert_close(c, 44.1e-6, 1e-12);
        assert_close(w, 65.88e-6, 1e-12);

        let (b, c, w) = optimum_widths(1.0).unwrap();
        assert_eq!((b, c, w), (4.90, 2.45, 3.66));

        assert!(optimum_widths(0.0).is_err());
        assert!(ion_height(-1.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn published_set_passes_ratio_validator() {
        // 90/18 = 5.00 vs 4.90 → 2.04% off, inside the 3% band
        let g = TrapGeometry::new(18e-6, 90e-6, 45e-6, 66e-6).unwrap();
        assert!(g.matches_optimum_ratios(0.03));
        assert!(!g.matches_optimum_ratios(0.01));
        assert!(g.is_asymmetric());
        assert_close(g.ion_height(), 24.7386337537e-6, 1e-9);

        let exact = TrapGeometry::from_separation(18e-6).unwrap();
        assert!(exact.matches_optimum_ratios(1e-12));
    }

    #[test]
    fn axial_potential_examples() {
        let p = AxialPotential { gamma: -1.0, beta_quartic: 1.0 };
        assert_eq!(p.energy(0.0), 0.0);
        assert!(p.energy(1.0).abs() < 1e-30); // 2e(−1) + 2e(+1)
        // 2e(−4) + 2e(16) = 24e
        assert_close(p.energy(2.0), 24.0 * ELEMENTARY_CHARGE, 1e-12);
        assert_close(p.energy(2.0), 3.8452239216e-18, 1e-9);
        assert!(p.is_separation_wedge());
        assert!(!AxialPotential { gamma: 1.0, beta_quartic: 1.0 }.is_separation_wedge());
    }

    #[test]
    fn heating_rate_examples() {
        assert_eq!(heating_rate_scaled(100.0, 25e-6, 25e-6, 3.5).unwrap(), 100.0);
        assert_close(
            heating_rate_scaled(100.0, 25e-6, 50e-6, 3.5).unwrap(),
            8.838834764831844,
            1e-12,
        );
        // edge of the ±0.1 uncertainty band
        assert_close(
            heating_rate_scaled(100.0, 25e-6, 12.5e-6, 3.4).unwrap(),
            1055.6063286183153,
            1e-12,
        );
        assert!(heating_rate_scaled(100.0, 0.0, 1.0, 3.5).is_err());
        assert!(heating_rate_scaled(-1.0, 1.0, 1.0, 3.5).is_err());
    }
}
