//! Superconducting LC circuit quantities.
//!
//! From the static capacitance C₀ and inductance L₀ follow the angular
//! resonant frequency ω_r = 1/√(L₀C₀), the characteristic impedance
//! Z = √(L₀/C₀), and the zero-point fluctuations of charge and flux,
//!
//! ```text
//! Δq₀ = √(ħ/2Z),   Δφ₀ = √(ħZ/2),   Δq₀·Δφ₀ = ħ/2.
//! ```
//!
//! Also here: the reactance of open/short transmission-line stubs (the
//! microfabricated inductor is a radial stub, inductive or capacitive
//! depending on its electrical length, switching every λ/4), and a
//! low-fidelity parallel-edge estimate of interdigital capacitance.

use crate::error::{Error, Result};
use crate::quantities::constants::{HBAR, VACUUM_PERMITTIVITY};

/// Derived circuit quantities; build with [`derive_circuit`] or
/// [`LcCircuit::with_forced_impedance`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LcCircuit {
    /// Total static capacitance (F).
    pub c0: f64,
    /// Inductance (H).
    pub l0: f64,
    /// Angular resonant frequency (rad/s).
    pub omega_r: f64,
    /// Characteristic impedance (Ω). May be forced rather than derived.
    pub z: f64,
    /// Zero-point charge fluctuation (C).
    pub dq0: f64,
    /// Zero-point flux fluctuation (Wb).
    pub dphi0: f64,
}

/// Zero-point charge fluctuation √(ħ/2Z) for impedance `z` (Ω).
pub fn zero_point_charge(z: f64) -> Result<f64> {
    if z <= 0.0 {
        return Err(Error::Domain(format!("impedance must be positive, got {z}")));
    }
    Ok((HBAR / (2.0 * z)).sqrt())
}

/// Zero-point flux fluctuation √(ħZ/2) for impedance `z` (Ω).
pub fn zero_point_flux(z: f64) -> Result<f64> {
    if z <= 0.0 {
        return Err(Error::Domain(format!("impedance must be positive, got {z}")));
    }
    Ok((HBAR * z / 2.0).sqrt())
}

/// Fill every derived field from (C₀, L₀).
pub fn derive_circuit(c0: f64, l0: f64) -> Result<LcCircuit> {
    if c0 <= 0.0 || l0 <= 0.0 {
        return Err(Error::Domain(format!(
            "capacitance and inductance must be positive (C0={c0}, L0={l0})"
        )));
    }
    let omega_r = 1.0 / (l0 * c0).sqrt();
    let z = (l0 / c0).sqrt();
    Ok(LcCircuit {
        c0,
        l0,
        omega_r,
        z,
        dq0: zero_point_charge(z)?,
        dphi0: zero_point_flux(z)?,
    })
}

impl LcCircuit {
    /// Like [`derive_circuit`] but with the impedance (and hence the
    /// zero-point fluctuations) forced to a stated value rather than
    /// derived from L₀/C₀. Published circuits sometimes quote an impedance
    /// that is not consistent with their own L and C; this reproduces such
    /// numbers without silently altering the frequency.
    pub fn with_forced_impedance(c0: f64, l0: f64, z: f64) -> Result<LcCircuit> {
        let derived = derive_circuit(c0, l0)?;
        if z <= 0.0 {
            return Err(Error::Domain(format!("impedance must be positive, got {z}")));
        }
        Ok(LcCircuit {
            z,
            dq0: zero_point_charge(z)?,
            dphi0: zero_point_flux(z)?,
            ..derived
        })
    }
}

/// Stub termination.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StubTermination {
    Short,
    Open,
}

/// Sign classification of a stub's input reactance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReactanceCharacter {
    Inductive,
    Capacitive,
    Resonant,
}

impl std::fmt::Display for ReactanceCharacter {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            ReactanceCharacter::Inductive => "inductive",
            ReactanceCharacter::Capacitive => "capacitive",
            ReactanceCharacter::Resonant => "resonant",
        };
        write!(f, "{s}")
    }
}

/// Numeric guard near the tan/cot poles.
pub const STUB_SINGULARITY_GUARD: f64 = 1e8;

/// Input reactance of a lossless stub of physical `length` at the given
/// `wavelength`: `X = Z₀·tan(2πl/λ)` (short) or `X = −Z₀·cot(2πl/λ)`
/// (open). Singular points classify as `Resonant`.
pub fn stub_reactance(
    z0: f64,
    length: f64,
    wavelength: f64,
    termination: StubTermination,
) -> Result<(f64, ReactanceCharacter)> {
    if z0 <= 0.0 || wavelength <= 0.0 {
        return Err(Error::Domain(format!(
            "impedance and wavelength must be positive (Z0={z0}, λ={wavelength})"
        )));
    }
    if length < 0.0 {
        return Err(Error::Domain(format!("stub length must be ≥ 0, got {length}")));
    }
    let t = (2.0 * std::f64::consts::PI * length / wavelength).tan();
    let (x, singular) = match termination {
        StubTermination::Short => (z0 * t, t.abs() > STUB_SINGULARITY_GUARD),
        StubTermination::Open => (-z0 / t, t.abs() < 1.0 / STUB_SINGULARITY_GUARD),
    };
    let character = if singular || !x.is_finite() {
        ReactanceCharacter::Resonant
    } else if x > 0.0 {
        ReactanceCharacter::Inductive
    } else {
        ReactanceCharacter::Capacitive
    };
    Ok((x, character))
}

/// Interdigital capacitor geometry for the parallel-edge estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterdigitalGeometry {
    pub n_fingers: u32,
    /// m
    pub finger_length: f64,
    /// m
    pub finger_width: f64,
    /// m
    pub finger_thickness: f64,
    /// Gap between adjacent fingers (m).
    pub gap: f64,
    /// Effective relative permittivity of the gap region.
    pub eps_eff: f64,
    /// Number of such capacitors wired in parallel.
    pub n_parallel: u32,
}

impl InterdigitalGeometry {
    fn validate(&self) -> Result<()> {
        if self.n_fingers < 2 {
            return Err(Error::Domain(format!(
                "need at least 2 fingers, got {}",
                self.n_fingers
            )));
        }
        if self.n_parallel < 1 {
            return Err(Error::Domain("n_parallel must be ≥ 1".into()));
        }
        for (name, v) in [
            ("finger_length", self.finger_length),
            ("finger_width", self.finger_width),
            ("finger_thickness", self.finger_thickness),
            ("gap", self.gap),
            ("eps_eff", self.eps_eff),
        ] {
            if v <= 0.0 {
                return Err(Error::Domain(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(())
    }
}

/// LOW-FIDELITY advisory estimate of an interdigital capacitance from the
/// facing finger edges alone:
///
/// ```text
/// C ≈ n_parallel · (n_fingers − 1) · ε₀ · ε_eff · t · l / gap
/// ```
///
/// This captures only the parallel-edge contribution; fringe fields and any
/// plate above the fingers add capacitance the model cannot see, so treat
/// the result as a lower-bound sanity figure, not a design value.
pub fn interdigital_capacitance_estimate(g: &InterdigitalGeometry) -> Result<f64> {
    g.validate()?;
    Ok(f64::from(g.n_parallel)
        * f64::from(g.n_fingers - 1)
        * VACUUM_PERMITTIVITY
        * g.eps_eff
        * g.finger_thickness
        * g.finger_length
        / g.gap)
}
