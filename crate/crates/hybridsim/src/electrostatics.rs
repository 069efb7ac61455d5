//! Electrostatic field of the ion-interaction capacitor plates.
//!
//! Two thin rectangular plates carrying ±q lie in the trap plane, separated
//! along the trap axis (x here), with the ion at height h above the
//! midpoint. Each plate is discretised into a uniform grid of point charges
//! and the Coulomb fields superposed. Charge density is uniform — the
//! reference sweep fixes the charge, not the plate potential — and the
//! 1 µm plate thickness is ignored (thin-plate limit).
//!
//! In the point-charge limit the axial field at height h is
//! `E_x ∝ d/(h² + d²/4)^(3/2)`, maximised at a centre separation
//! `d* = h√2`; that closed form is the oracle for the finite-plate
//! separation optimiser.

use crate::error::{Error, Result};
use crate::quantities::constants::VACUUM_PERMITTIVITY;

/// Golden-section termination: bracket width below 0.1 µm.
pub const SEPARATION_RESOLUTION: f64 = 0.1e-6;

/// A pair of thin rectangular plates carrying ±charge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlatePair {
    /// Extent along the separation axis (m).
    pub plate_length: f64,
    /// Extent across the trap axis (m).
    pub plate_width: f64,
    /// Distance between plate centres (m).
    pub center_separation: f64,
    /// Magnitude of the charge on each plate (C); one plate +q, the other −q.
    pub charge: f64,
    /// Point charges per plate edge; the plate carries grid² charges.
    pub grid_resolution: usize,
}

impl PlatePair {
    pub fn validate(&self) -> Result<()> {
        if self.plate_length <= 0.0 || self.plate_width <= 0.0 {
            return Err(Error::Domain(format!(
                "plate dimensions must be positive ({} × {})",
                self.plate_length, self.plate_width
            )));
        }
        if self.center_separation < self.plate_length {
            return Err(Error::Domain(format!(
                "plates overlap: centre separation {} < plate length {}",
                self.center_separation, self.plate_length
            )));
        }
        if self.grid_resolution < 2 {
            return Err(Error::Domain(format!(
                "grid resolution must be ≥ 2, got {}",
                self.grid_resolution
            )));
        }
        Ok(())
    }
}

/// Coulomb field (V/m) of the plate pair at `point`, by superposing
/// `2·grid²` point charges at the cell centres of each plate.
pub fn plate_pair_field(p: &PlatePair, point: [f64; 3]) -> Result<[f64; 3]> {
    p.validate()?;
    let k = 1.0 / (4.0 * std::f64::consts::PI * VACUUM_PERMITTIVITY);
    let res = p.grid_resolution;
    let q_cell = p.charge / (res * res) as f64;
    let mut field = [0.0f64; 3];
    for (sign, xc) in [(1.0, -p.center_separation / 2.0), (-1.0, p.center_separation / 2.0)] {
        for i in 0..res {
            let sx = xc + ((i as f64 + 0.5) / res as f64 - 0.5) * p.plate_length;
            for j in 0..res {
                let sy = ((j as f64 + 0.5) / res as f64 - 0.5) * p.plate_width;
                let d = [point[0] - sx, point[1] - sy, point[2]];
                let r2 = d[0] * d[0] + d[1] * d[1] + d[2] * d[2];
                if r2 < 1e-30 {
                    return Err(Error::Numerical(format!(
                        "field point coincides with a source charge at ({sx}, {sy}, 0)"
                    )));
                }
                let coef = sign * k * q_cell / (r2 * r2.sqrt());
                field[0] += coef * d[0];
                field[1] += coef * d[1];
                field[2] += coef * d[2];
            }
        }
    }
    Ok(field)
}

/// |E_x| at the ion position (0, 0, ion_height) for a given centre
/// separation.
fn axial_field_magnitude(p: &PlatePair, separation: f64, ion_height: f64) -> Result<f64> {
    let plates = PlatePair { center_separation: separation, ..*p };
    let e = plate_pair_field(&plates, [0.0, 0.0, ion_height])?;
    Ok(e[0].abs())
}

/// Centre separation maximising the axial field magnitude at the ion,
/// located by a coarse scan (which also confirms the peak is interior)
/// followed by golden-section refinement to [`SEPARATION_RESOLUTION`].
///
/// `p.center_separation` is ignored; the plate dimensions, charge and grid
/// come from `p`. The search range must respect the no-overlap rule.
pub fn optimum_plate_separation(
    p: &PlatePair,
    ion_height: f64,
    search_range: (f64, f64),
) -> Result<f64> {
    let (lo, hi) = search_range;
    if ion_height <= 0.0 {
        return Err(Error::Domain(format!("ion height must be positive, got {ion_height}")));
    }
    #[allow(clippy::neg_cmp_op_on_partial_ord)] // !(lo < hi) also rejects NaN bounds
    if !(lo < hi) || lo < p.plate_length {
        return Err(Error::Domain(format!(
            "empty feasible range [{lo}, {hi}] for plate length {}",
            p.plate_length
        )));
    }

    // coarse pre-scan to bracket the peak
    const SCAN: usize = 33;
    let mut best = (0usize, f64::NEG_INFINITY);
    for i in 0..SCAN {
        let d = lo + (hi - lo) * i as f64 / (SCAN - 1) as f64;
        let v = axial_field_magnitude(p, d, ion_height)?;
        if v > best.1 {
            best = (i, v);
        }
    }
    let step = (hi - lo) / (SCAN - 1) as f64;
    let mut a = lo + step * best.0.saturating_sub(1) as f64;
    let mut b = (lo + step * (best.0 + 1) as f64).min(hi);

    // golden-section on the bracket
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - phi * (b - a);
    let mut x2 = a + phi * (b - a);
    let mut f1 = axial_field_magnitude(p, x1, ion_height)?;
    let mut f2 = axial_field_magnitude(p, x2, ion_height)?;
    while b - a > SEPARATION_RESOLUTION {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = axial_field_magnitude(p, x2, ion_height)?;
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = axial_field_magnitude(p, x1, ion_height)?;
        }
    }
    Ok(0.5 * (a + b))
}

/// Least-squares line through a field-vs-length sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
}

/// Field magnitude at the ion for each plate length, plus a linear fit.
#[derive(Debug, Clone, PartialEq)]
pub struct LengthSweep {
    /// (plate length m, |E| V/m)
    pub points: Vec<(f64, f64)>,
    /// `None` when fewer than two distinct lengths make the fit degenerate.
    pub fit: Option<LinearFit>,
}

/// Sweep the plate length at fixed centre separation and fixed surface
/// charge density (anchored at `p.plate_length`/`p.charge`): a longer
/// superconducting plate recruits proportionally more surface charge, which
/// is what makes the field at the ion grow with plate length.
pub fn field_vs_plate_length(
    p: &PlatePair,
    ion_height: f64,
    lengths: &[f64],
) -> Result<LengthSweep> {
    let mut points = Vec::with_capacity(lengths.len());
    for &len in lengths {
        let plates = PlatePair {
            plate_length: len,
            charge: p.charge * len / p.plate_length,
            ..*p
        };
        let e = plate_pair_field(&plates, [0.0, 0.0, ion_height])?;
        let mag = (e[0] * e[0] + e[1] * e[1] + e[2] * e[2]).sqrt();
        points.push((len, mag));
    }
    Ok(LengthSweep { fit: linear_fit(&points), points })
}

fn linear_fit(points: &[(f64, f64)]) -> Option<LinearFit> {
    let n = points.len() as f64;
    let sx: f64 = points.iter().map(|p| p.0).sum();
    let sy: f64 = points.iter().map(|p| p.1).sum();
    let sxx: f64 = points.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = points.iter().map(|p| p.0 * p.1).sum();
    let denom = n * sxx - sx * sx;
    if points.len() < 2 || denom.abs() < 1e-300 {
        return None;
    }
    let slope = (n * sxy - sx * sy) / denom;
    Some(LinearFit { slope, intercept: (sy - slope * sx) / n })
}
