//! Ion–circuit coupling strengths.
//!
//! The workhorse is the motional coupling of a trapped ion to the charge on
//! an LC circuit's capacitor,
//!
//! ```text
//! g₀ = e·ζ·z₀·Δq₀ / (r·C₀·ħ),    z₀ = √(ħ/2mω_i),
//! ```
//!
//! with geometry factor ζ, ion height r and circuit capacitance C₀. Two
//! effective-coupling conventions circulate: `g = η·g₀` and the interaction
//! Hamiltonian's prefactor `G = (2/3)·η·g₀`. Both are computed and labeled;
//! the dynamics module defaults to the Hamiltonian convention.
//!
//! Also here: the magnetic-dipole coupling of a hyperfine qubit to a
//! resonator's transverse field (≈1 Hz per µG), √N ensemble enhancement,
//! the charge-qubit/transmission-line coupling, the cavity decay rate
//! κ = ω/Q, and strong/weak regime classification against decay and
//! decoherence.

use crate::error::{Error, Result};
use crate::quantities::constants::{BOHR_MAGNETON, ELEMENTARY_CHARGE, HBAR, NUCLEAR_MAGNETON};
use crate::quantities::IonSpecies;

/// Decoherence rate assumed when none is supplied (rad/s).
pub const DEFAULT_DECOHERENCE_RATE: f64 = 1e3;

/// Inputs for [`motional_coupling`]. All rates angular (rad/s).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MotionalCouplingInput {
    /// Electrode geometry factor ζ ∈ (0, 1].
    pub zeta_geom: f64,
    /// Ion height r (m).
    pub ion_height: f64,
    /// Total circuit capacitance C₀ (F).
    pub c0: f64,
    /// Ion ground-state length z₀ (m).
    pub z0: f64,
    /// Zero-point charge fluctuation Δq₀ (C).
    pub dq0: f64,
    /// Capacitance modulation depth η.
    pub eta: f64,
    /// Ion secular frequency ω_i (rad/s).
    pub omega_i: f64,
    /// Circuit frequency ω_LC (rad/s).
    pub omega_lc: f64,
    /// Drive detuning Δ = ν − (ω_LC − ω_i) (rad/s), any sign.
    pub delta: f64,
    /// Resonator decay rate κ (rad/s), if known.
    pub kappa: Option<f64>,
    /// Motional decoherence rate (rad/s); defaults to
    /// [`DEFAULT_DECOHERENCE_RATE`].
    pub decoherence: Option<f64>,
}

impl MotionalCouplingInput {
    fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("zeta_geom", self.zeta_geom),
            ("ion_height", self.ion_height),
            ("c0", self.c0),
            ("z0", self.z0),
            ("dq0", self.dq0),
            ("omega_i", self.omega_i),
            ("omega_lc", self.omega_lc),
        ] {
            if v <= 0.0 {
                return Err(Error::Domain(format!("{name} must be positive, got {v}")));
            }
        }
        if self.zeta_geom > 1.0 {
            return Err(Error::Domain(format!(
                "geometry factor must lie in (0, 1], got {}",
                self.zeta_geom
            )));
        }
        if !(0.0..1.0).contains(&self.eta) {
            return Err(Error::Domain(format!(
                "modulation depth must lie in [0, 1), got {}",
                self.eta
            )));
        }
        Ok(())
    }
}

/// Coupling against loss: strong when the effective coupling beats both the
/// resonator decay and the motional decoherence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    Strong,
    Weak,
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", if *self == Regime::Strong { "strong" } else { "weak" })
    }
}

/// Output of [`motional_coupling`]. All rates angular (rad/s).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingResult {
    /// Bare coupling constant g₀.
    pub g0: f64,
    /// Text convention g = η·g₀.
    pub g_text: f64,
    /// Hamiltonian convention G = (2/3)·η·g₀.
    pub g_hamiltonian: f64,
    pub kappa: Option<f64>,
    /// Decoherence rate used for classification.
    pub decoherence: f64,
    /// Strong iff g_text > max(κ, decoherence).
    pub regime: Regime,
}

/// Ground-state harmonic oscillator length z₀ = √(ħ/2mω) (m).
pub fn harmonic_oscillator_length(mass: f64, omega_i: f64) -> Result<f64> {
    if mass <= 0.0 || omega_i <= 0.0 {
        return Err(Error::Domain(format!(
            "mass and frequency must be positive (m={mass}, ω={omega_i})"
        )));
    }
    Ok((HBAR / (2.0 * mass * omega_i)).sqrt())
}

/// Motional coupling g₀ = e·ζ·z₀·Δq₀/(r·C₀·ħ) plus both effective-coupling
/// conventions and the regime classification.
pub fn motional_coupling(input: &MotionalCouplingInput) -> Result<CouplingResult> {
    input.validate()?;
    let g0 = ELEMENTARY_CHARGE * input.zeta_geom * input.z0 * input.dq0
        / (input.ion_height * input.c0 * HBAR);
    let g_text = input.eta * g0;
    let g_hamiltonian = 2.0 / 3.0 * input.eta * g0;
    let decoherence = input.decoherence.unwrap_or(DEFAULT_DECOHERENCE_RATE);
    let loss = input.kappa.unwrap_or(0.0).max(decoherence);
    let regime = if g_text > loss { Regime::Strong } else { Regime::Weak };
    Ok(CouplingResult { g0, g_text, g_hamiltonian, kappa: input.kappa, decoherence, regime })
}

/// g₀/2π versus total capacitance at fixed circuit frequency: per point,
/// `Z = 1/(ω_LC·C)`, `Δq₀ = √(ħ/2Z)`, `z₀` from the ion mass. Returns
/// `(C (F), g₀/2π (Hz))` pairs ordered by capacitance.
#[allow(clippy::too_many_arguments)]
pub fn coupling_vs_capacitance(
    ion: &IonSpecies,
    c_range: (f64, f64),
    n_points: usize,
    omega_lc: f64,
    zeta: f64,
    r: f64,
    omega_i: f64,
) -> Result<Vec<(f64, f64)>> {
    let (lo, hi) = c_range;
    if !(lo > 0.0 && hi > lo) || n_points == 0 {
        return Err(Error::Domain(format!(
            "capacitance range must satisfy 0 < lo < hi with n_points ≥ 1, got [{lo}, {hi}] × {n_points}"
        )));
    }
    let z0 = harmonic_oscillator_length(ion.mass, omega_i)?;
    let mut curve = Vec::with_capacity(n_points);
    for i in 0..n_points {
        // geometric spacing matches the decades the sweep spans
        let f = if n_points == 1 { 0.0 } else { i as f64 / (n_points - 1) as f64 };
        let c = lo * (hi / lo).powf(f);
        let z = 1.0 / (omega_lc * c);
        let dq0 = (HBAR / (2.0 * z)).sqrt();
        let g0 = ELEMENTARY_CHARGE * zeta * z0 * dq0 / (r * c * HBAR);
        curve.push((c, g0 / (2.0 * std::f64::consts::PI)));
    }
    Ok(curve)
}

/// Magnetic dipole coupling of a hyperfine transition to a transverse field
/// (rad/s): `g = μ_B·B/(√2·ħ) · matrix_element · (g_s − (μ_N/μ_B)·g_I)`,
/// the nuclear term entering only when `nuclear_g_factor` is given. The
/// default matrix element 1/2 is the σ-type value for a spin-1/2 clock
/// transition.
pub fn magnetic_dipole_coupling(
    b_trans: f64,
    matrix_element: f64,
    g_s: f64,
    nuclear_g_factor: Option<f64>,
) -> Result<f64> {
    if b_trans < 0.0 {
        return Err(Error::Domain(format!("field must be ≥ 0, got {b_trans}")));
    }
    let nuclear = nuclear_g_factor
        .map(|g_i| NUCLEAR_MAGNETON / BOHR_MAGNETON * g_i)
        .unwrap_or(0.0);
    Ok(BOHR_MAGNETON * b_trans / (2f64.sqrt() * HBAR) * matrix_element * (g_s - nuclear))
}

/// √N enhancement of a single-particle coupling by an N-ion ensemble.
pub fn ensemble_coupling(g_single: f64, n: u64) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("ensemble size must be ≥ 1".into()));
    }
    Ok((n as f64).sqrt() * g_single)
}

/// Charge-qubit coupling to a transmission-line resonator (rad/s):
/// `g = (β·e/ħ)·√(ħ·ω_r/(c·L))` with capacitance ratio β = C_g/C_Σ,
/// angular resonator frequency ω_r, capacitance per length c and line
/// length L.
pub fn charge_qubit_coupling(
    beta_cg: f64,
    omega_r: f64,
    c_per_len: f64,
    line_len: f64,
) -> Result<f64> {
    if !(0.0..1.0).contains(&beta_cg) || beta_cg == 0.0 {
        return Err(Error::Domain(format!(
            "capacitance ratio must lie in (0, 1), got {beta_cg}"
        )));
    }
    if omega_r <= 0.0 || c_per_len <= 0.0 || line_len <= 0.0 {
        return Err(Error::Domain(
            "frequency, capacitance per length and line length must be positive".into(),
        ));
    }
    Ok(beta_cg * ELEMENTARY_CHARGE / HBAR * (HBAR * omega_r / (c_per_len * line_len)).sqrt())
}

/// Cavity decay rate κ = ω/Q = 2π·f/Q (rad/s).
pub fn cavity_decay_rate(f: f64, q: f64) -> Result<f64> {
    if f <= 0.0 || q <= 0.0 {
        return Err(Error::Domain(format!(
            "frequency and quality factor must be positive (f={f}, Q={q})"
        )));
    }
    Ok(2.0 * std::f64::consts::PI * f / q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantities::lookup_ion;

    const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

    fn assert_close(x: f64, y: f64, rel: f64) {
        assert!(
            (x - y).abs() <= rel * y.abs().max(x.abs()),
            "{x} vs {y} (rel {rel})"
        );
    }

    fn nominal_input() -> MotionalCouplingInput {
        MotionalCouplingInput {
            zeta_geom: 0.25,
            ion_height: 25e-6,
            c0: 46e-15,
            z0: 24e-9,
            dq0: 1.4e-19,
            eta: 0.3,
            omega_i: TWO_PI * 1e6,
            omega_lc: TWO_PI * 1e9,
            delta: 0.0,
            kappa: None,
            decoherence: None,
        }
    }

    #[test]
    fn oscillator_length_examples() {
        let be = lookup_ion("Be-9").unwrap();
        let z0 = harmonic_oscillator_length(be.mass, TWO_PI * 1e6).unwrap();
        assert_close(z0, 23.680648771939935e-9, 1e-12);
        assert!((z0 - 24e-9).abs() / 24e-9 < 0.02);

        // quadrupling the mass halves z0
        let z0_heavy = harmonic_oscillator_length(4.0 * be.mass, TWO_PI * 1e6).unwrap();
        assert_close(z0_heavy, z0 / 2.0, 1e-12);

        // mass-ratio scaling to Yb-171
        let yb = lookup_ion("Yb-171").unwrap();
        let z0_yb = harmonic_oscillator_length(yb.mass, TWO_PI * 1e6).unwrap();
        assert_close(z0_yb, z0 * (be.mass / yb.mass).sqrt(), 1e-12);
        assert_close(z0_yb, 5.43740161460481e-9, 1e-12);

        assert!(harmonic_oscillator_length(0.0, 1.0).is_err());
    }

    #[test]
    fn motional_coupling_nominal_inputs() {
        // direct evaluation with the rounded design inputs; the design
        // quotes 200 kHz / 60 kHz after rounding
        let r = motional_coupling(&nominal_input()).unwrap();
        assert_close(r.g0 / TWO_PI, 176618.34463924615, 1e-12);
        assert_close(r.g_text / TWO_PI, 52985.50339177384, 1e-12);
        assert_close(r.g_hamiltonian / TWO_PI, 35323.66892784923, 1e-12);
        assert_close(r.g_text, 0.3 * r.g0, 1e-15);
        assert_close(r.g_hamiltonian, 2.0 / 3.0 * 0.3 * r.g0, 1e-15);
        // decoherence default: 10³ rad/s, far below g_text
        assert_eq!(r.decoherence, DEFAULT_DECOHERENCE_RATE);
        assert_eq!(r.regime, Regime::Strong);
    }

    #[test]
    fn motional_coupling_scalings() {
        let base = motional_coupling(&nominal_input()).unwrap();
        let doubled_c = motional_coupling(&MotionalCouplingInput {
            c0: 2.0 * 46e-15,
            ..nominal_input()
        })
        .unwrap();
        assert_close(doubled_c.g0, base.g0 / 2.0, 1e-12);

        for k in [0.5, 2.0, 7.0] {
            let taller = motional_coupling(&MotionalCouplingInput {
                ion_height: k * 25e-6,
                ..nominal_input()
            })
            .unwrap();
            assert_close(taller.g0, base.g0 / k, 1e-12);
        }
    }

    #[test]
    fn regime_boundary() {
        // classification flips exactly at g_text = max(κ, decoherence)
        let base = motional_coupling(&nominal_input()).unwrap();
        let g_text = base.g_text;
        let at = motional_coupling(&MotionalCouplingInput {
            kappa: Some(g_text),
            ..nominal_input()
        })
        .unwrap();
        assert_eq!(at.regime, Regime::Weak);
        let below = motional_coupling(&MotionalCouplingInput {
            kappa: Some(g_text * (1.0 - 1e-12)),
            ..nominal_input()
        })
        .unwrap();
        assert_eq!(below.regime, Regime::Strong);
        let above = motional_coupling(&MotionalCouplingInput {
            decoherence: Some(g_text * (1.0 + 1e-12)),
            kappa: None,
            ..nominal_input()
        })
        .unwrap();
        assert_eq!(above.regime, Regime::Weak);
    }

    #[test]
    fn curve_slope_is_minus_half() {
        let yb = lookup_ion("Yb-171").unwrap();
        let curve = coupling_vs_capacitance(
            yb,
            (2e-15, 50e-15),
            30,
            TWO_PI * 1e9,
            0.25,
            25e-6,
            TWO_PI * 1e6,
        )
        .unwrap();
        // log-log least squares
        let pts: Vec<(f64, f64)> = curve.iter().map(|&(c, g)| (c.ln(), g.ln())).collect();
        let n = pts.len() as f64;
        let sx: f64 = pts.iter().map(|p| p.0).sum();
        let sy: f64 = pts.iter().map(|p| p.1).sum();
        let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
        let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
        let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        assert!((slope + 0.5).abs() < 1e-6, "slope {slope}");
    }

    #[test]
    fn curve_consistent_with_motional_coupling() {
        let be = lookup_ion("Be-9").unwrap();
        let omega_lc = TWO_PI * 1e9;
        let curve =
            coupling_vs_capacitance(be, (46e-15, 47e-15), 1, omega_lc, 0.25, 25e-6, TWO_PI * 1e6)
                .unwrap();
        let (c, g_curve) = curve[0];
        assert_eq!(c, 46e-15);

        let z = 1.0 / (omega_lc * c);
        let direct = motional_coupling(&MotionalCouplingInput {
            dq0: (HBAR / (2.0 * z)).sqrt(),
            z0: harmonic_oscillator_length(be.mass, TWO_PI * 1e6).unwrap(),
            ..nominal_input()
        })
        .unwrap();
        assert_close(g_curve, direct.g0 / TWO_PI, 1e-12);
    }

    #[test]
    fn species_ordering_by_inverse_sqrt_mass() {
        let be = lookup_ion("Be-9").unwrap();
        let yb = lookup_ion("Yb-171").unwrap();
        let args = ((5e-15, 50e-15), 5, TWO_PI * 1e9, 0.25, 25e-6, TWO_PI * 1e6);
        let c_be = coupling_vs_capacitance(be, args.0, args.1, args.2, args.3, args.4, args.5)
            .unwrap();
        let c_yb = coupling_vs_capacitance(yb, args.0, args.1, args.2, args.3, args.4, args.5)
            .unwrap();
        for (p_be, p_yb) in c_be.iter().zip(&c_yb) {
            assert_close(p_be.1 / p_yb.1, (yb.mass / be.mass).sqrt(), 1e-12);
            assert!(p_be.1 > p_yb.1, "heavier ion couples more weakly");
        }
    }

    #[test]
    fn heavy_ion_band_at_low_capacitance() {
        // 5 fF circuit at ω_LC = 2π×1 GHz
        let yb = lookup_ion("Yb-171").unwrap();
        let curve = coupling_vs_capacitance(
            yb,
            (5e-15, 6e-15),
            1,
            TWO_PI * 1e9,
            0.25,
            25e-6,
            TWO_PI * 1e6,
        )
        .unwrap();
        let g = curve[0].1;
        assert_close(g, 107022.17943493335, 1e-9);
        assert!(g > 100e3 && g < 250e3);
    }

    #[test]
    fn magnetic_dipole_examples() {
        // 1 µG transverse field on a spin-1/2 clock transition → ~1 Hz
        let g = magnetic_dipole_coupling(1e-10, 0.5, 2.0, None).unwrap();
        assert_close(g / TWO_PI, 0.9896839705444884, 1e-12);
        assert!(g / TWO_PI > 0.5 && g / TWO_PI < 2.0);

        assert_eq!(magnetic_dipole_coupling(0.0, 0.5, 2.0, None).unwrap(), 0.0);

        let g_mg = magnetic_dipole_coupling(1e-7, 0.5, 2.0, None).unwrap();
        assert_close(g_mg, 1e3 * g, 1e-12);

        // the nuclear correction is parts in 10³ and enters with a minus sign
        let g_nuc = magnetic_dipole_coupling(1e-10, 0.5, 2.0, Some(0.98734)).unwrap();
        assert!(g_nuc < g);
        assert_close(g_nuc / g, 1.0 - NUCLEAR_MAGNETON / BOHR_MAGNETON * 0.98734 / 2.0, 1e-12);

        assert!(magnetic_dipole_coupling(-1.0, 0.5, 2.0, None).is_err());
    }

    #[test]
    fn ensemble_scaling() {
        assert_eq!(ensemble_coupling(5.0, 1).unwrap(), 5.0);
        let g = TWO_PI * 1.0;
        assert_close(ensemble_coupling(g, 1_000_000).unwrap(), 1000.0 * g, 1e-15);
        assert_close(ensemble_coupling(3.0, 4).unwrap(), 6.0, 1e-15);
        // (√N·g)²/N = g² exactly
        for n in [2u64, 10, 1000] {
            let ge = ensemble_coupling(3.0, n).unwrap();
            assert_close(ge * ge / n as f64, 9.0, 1e-12);
        }
        assert!(ensemble_coupling(1.0, 0).is_err());
    }

    #[test]
    fn charge_qubit_example() {
        let g = charge_qubit_coupling(0.1, TWO_PI * 10e9, 50e-12, 1e-2).unwrap();
        assert_close(g / TWO_PI, 88.02324542193986e6, 1e-9);

        // g ∝ 1/√L and ∝ β
        let quarter = charge_qubit_coupling(0.1, TWO_PI * 10e9, 50e-12, 4e-2).unwrap();
        assert_close(quarter, g / 2.0, 1e-12);
        let double_beta = charge_qubit_coupling(0.2, TWO_PI * 10e9, 50e-12, 1e-2).unwrap();
        assert_close(double_beta, 2.0 * g, 1e-12);

        assert!(charge_qubit_coupling(1.5, 1.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn cavity_decay_examples() {
        let kappa = cavity_decay_rate(12.6e9, 1e5).unwrap();
        assert_close(kappa / TWO_PI, 126e3, 1e-12);
        let kappa_hi_q = cavity_decay_rate(12.6e9, 5e6).unwrap();
        assert_close(kappa_hi_q / TWO_PI, 2.52e3, 1e-12);
        // Q → ∞ kills the decay
        assert!(cavity_decay_rate(12.6e9, 1e18).unwrap() < 1e-7);
        assert!(cavity_decay_rate(0.0, 1e5).is_err());
    }
}
