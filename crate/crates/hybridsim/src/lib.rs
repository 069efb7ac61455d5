//! Design and simulation workbench for coupling a trapped ion to a
//! superconducting LC circuit.
//!
//! The crate is organised around the physical subsystems of such a hybrid
//! device:
//!
//! - [`quantities`]: SI unit tags, quantity parsing/formatting, physical
//!   constants and the ion-species registry.
//! - [`trap_geometry`]: surface-electrode trap geometry (ion height,
//!   optimum electrode widths, axial potential, heating-rate scaling).
//! - [`lc_circuit`]: LC resonator quantities (frequency, impedance,
//!   zero-point fluctuations), stub reactance and an advisory interdigital
//!   capacitance estimator.
//! - [`electrostatics`]: point-charge superposition field of the
//!   ion-interaction capacitor plates and plate-separation optimisation.
//! - [`modulation`]: mechanically modulated capacitance waveforms, harmonic
//!   analysis, FM sideband (Bessel) powers, flexural-mode estimates.
//! - [`coupling`]: coupling-strength formulas (motional, magnetic dipole,
//!   ensemble, charge-qubit) and regime classification.
//! - [`dynamics`]: two-mode Fock-space time evolution of the photon/motion
//!   exchange, with optional Lindblad damping.
//! - [`cryo_budget`]: dilution-fridge conduction loads, thermal noise,
//!   attenuation chains and heat-budget aggregation.
//! - [`workbench`]: config ingestion, the parameter-sweep engine and
//!   CSV/JSON/SVG report emission used by the `hybridsim` binary.
//!
//! All internal computation is in base SI units; `Quantity` tags exist only
//! at the I/O boundary.

pub mod coupling;
pub mod cryo_budget;
pub mod dynamics;
pub mod electrostatics;
pub mod error;
pub mod lc_circuit;
pub mod modulation;
pub mod quantities;
pub mod trap_geometry;
pub mod workbench;

pub use error::{Error, Result};
