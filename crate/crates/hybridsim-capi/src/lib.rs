//! C ABI for the hybridsim workbench.
//!
//! Conventions:
//! - every fallible call returns an [`HsStatus`] code and writes results
//!   through out-pointers; `HS_STATUS_OK` is zero;
//! - the last failure message is retrievable per thread via
//!   [`hs_last_error_message`];
//! - `HsCircuit` and `HsReport` are opaque handles created and destroyed
//!   by the corresponding `_new`/`_free` pairs; strings returned through
//!   `char **` are released with [`hs_string_free`].
//!
//! Safety contract, uniform across the API: string arguments must be
//! NUL-terminated and valid for the duration of the call, out-pointers
//! must be writable, handles must come from the matching `_new` and must
//! not be used after `_free`. Null handle/string arguments are tolerated
//! and reported; dangling ones cannot be detected.
//!
//! The header `include/hybridsim.h` is regenerated by the build script.

#![warn(unsafe_op_in_unsafe_fn)]
// The safety contract is uniform across the API (valid pointers, handles
// from the matching _new, NUL-terminated strings) and documented once in
// the crate docs rather than per function.
#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;

use hybridsim::error::Error;
use hybridsim::lc_circuit::LcCircuit;
use hybridsim::workbench::{self, load_config, OutputFormat, Report};
use hybridsim::{coupling, cryo_budget, dynamics, electrostatics, modulation, trap_geometry};

/// Status codes returned by every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HsStatus {
    Ok = 0,
    /// Input violated a mathematical precondition.
    Domain = 1,
    /// Text failed to parse as a quantity.
    Parse = 2,
    /// Unknown ion species.
    NotFound = 3,
    /// Malformed configuration or unit mismatch.
    Config = 4,
    /// Numerical failure (NaN, truncation guard, non-convergence).
    Numerical = 5,
    /// Heat budget exceeded a stage's cooling power.
    Budget = 6,
    /// I/O failure.
    Io = 7,
    /// A required pointer argument was null.
    NullArgument = 8,
    /// Invalid UTF-8 in a string argument.
    Utf8 = 9,
    /// Internal panic; state is unspecified.
    Panic = 10,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn record_error(message: &str) {
    let sanitized = message.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap_or_default();
    });
}

fn status_of(e: &Error) -> HsStatus {
    match e {
        Error::Domain(_) => HsStatus::Domain,
        Error::Parse { .. } => HsStatus::Parse,
        Error::UnknownSpecies { .. } => HsStatus::NotFound,
        Error::UnitMismatch { .. } | Error::Config(_) => HsStatus::Config,
        Error::Numerical(_) => HsStatus::Numerical,
        Error::BudgetExceeded(_) => HsStatus::Budget,
        Error::Io(_) => HsStatus::Io,
    }
}

fn fail(e: &Error) -> HsStatus {
    record_error(&e.to_string());
    status_of(e)
}

/// Run a fallible body, catching panics at the FFI boundary.
fn guarded(body: impl FnOnce() -> HsStatus) -> HsStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => {
            record_error("internal panic");
            HsStatus::Panic
        }
    }
}

/// Write a scalar result through an out-pointer.
fn write_out(out: *mut f64, value: Result<f64, Error>) -> HsStatus {
    if out.is_null() {
        record_error("null out pointer");
        return HsStatus::NullArgument;
    }
    match value {
        Ok(v) => {
            unsafe { *out = v };
            HsStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, HsStatus> {
    if ptr.is_null() {
        record_error("null string argument");
        return Err(HsStatus::NullArgument);
    }
    unsafe { CStr::from_ptr(ptr) }.to_str().map_err(|_| {
        record_error("string argument is not valid UTF-8");
        HsStatus::Utf8
    })
}

/// Copy the last error message for this thread into `buf` (NUL-terminated,
/// truncated to `cap`). Returns the full length including the NUL, so a
/// return value greater than `cap` means truncation.
#[no_mangle]
pub unsafe extern "C" fn hs_last_error_message(buf: *mut c_char, cap: usize) -> usize {
    LAST_ERROR.with(|slot| {
        let msg = slot.borrow();
        let bytes = msg.as_bytes_with_nul();
        if !buf.is_null() && cap > 0 {
            let n = bytes.len().min(cap);
            unsafe {
                std::ptr::copy_nonoverlapping(bytes.as_ptr() as *const c_char, buf, n);
                *buf.add(n - 1) = 0;
            }
        }
        bytes.len()
    })
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn hs_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

// ── quantities ──────────────────────────────────────────────────────────

/// Parse a quantity string like "46fF" into its base-SI value; the unit
/// symbol is copied into `unit_buf` (NUL-terminated, truncated to
/// `unit_cap`).
#[no_mangle]
pub unsafe extern "C" fn hs_parse_quantity(
    text: *const c_char,
    value: *mut f64,
    unit_buf: *mut c_char,
    unit_cap: usize,
) -> HsStatus {
    guarded(|| {
        let text = match unsafe { read_str(text) } {
            Ok(s) => s,
            Err(status) => return status,
        };
        match hybridsim::quantities::parse_quantity(text) {
            Ok(q) => {
                if value.is_null() {
                    record_error("null out pointer");
                    return HsStatus::NullArgument;
                }
                unsafe { *value = q.value };
                if !unit_buf.is_null() && unit_cap > 0 {
                    let symbol = q.unit.symbol().as_bytes();
                    let n = symbol.len().min(unit_cap - 1);
                    unsafe {
                        std::ptr::copy_nonoverlapping(
                            symbol.as_ptr() as *const c_char,
                            unit_buf,
                            n,
                        );
                        *unit_buf.add(n) = 0;
                    }
                }
                HsStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Mass (kg), charge (C) and qubit frequency (Hz; 0 when the species has
/// none registered) of an ion species such as "Yb-171".
#[no_mangle]
pub unsafe extern "C" fn hs_lookup_ion(
    symbol: *const c_char,
    mass: *mut f64,
    charge: *mut f64,
    qubit_frequency: *mut f64,
) -> HsStatus {
    guarded(|| {
        let symbol = match unsafe { read_str(symbol) } {
            Ok(s) => s,
            Err(status) => return status,
        };
        match hybridsim::quantities::lookup_ion(symbol) {
            Ok(ion) => {
                if mass.is_null() || charge.is_null() || qubit_frequency.is_null() {
                    record_error("null out pointer");
                    return HsStatus::NullArgument;
                }
                unsafe {
                    *mass = ion.mass;
                    *charge = ion.charge;
                    *qubit_frequency = ion.qubit_frequency.unwrap_or(0.0);
                }
                HsStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

// ── trap geometry ───────────────────────────────────────────────────────

/// Ion height √(abc(a+b+c))/(b+c) over a surface trap (all metres).
#[no_mangle]
pub unsafe extern "C" fn hs_ion_height(a: f64, b: f64, c: f64, out: *mut f64) -> HsStatus {
    guarded(|| write_out(out, trap_geometry::ion_height(a, b, c)))
}

/// Optimum electrode widths (b, c, w_outer) for an rf separation `a`.
#[no_mangle]
pub unsafe extern "C" fn hs_optimum_widths(
    a: f64,
    b: *mut f64,
    c: *mut f64,
    w_outer: *mut f64,
) -> HsStatus {
    guarded(|| {
        if b.is_null() || c.is_null() || w_outer.is_null() {
            record_error("null out pointer");
            return HsStatus::NullArgument;
        }
        match trap_geometry::optimum_widths(a) {
            Ok((vb, vc, vw)) => {
                unsafe {
                    *b = vb;
                    *c = vc;
                    *w_outer = vw;
                }
                HsStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Heating rate rescaled between ion heights: rate0·(r0/r1)^exponent.
#[no_mangle]
pub unsafe extern "C" fn hs_heating_rate_scaled(
    rate0: f64,
    r0: f64,
    r1: f64,
    exponent: f64,
    out: *mut f64,
) -> HsStatus {
    guarded(|| write_out(out, trap_geometry::heating_rate_scaled(rate0, r0, r1, exponent)))
}

// ── coupling ────────────────────────────────────────────────────────────

/// Ground-state oscillator length √(ħ/2mω) (m).
#[no_mangle]
pub unsafe extern "C" fn hs_harmonic_oscillator_length(
    mass: f64,
    omega_i: f64,
    out: *mut f64,
) -> HsStatus {
    guarded(|| write_out(out, coupling::harmonic_oscillator_length(mass, omega_i)))
}

/// Bare motional coupling g₀ = e·ζ·z₀·Δq₀/(r·C₀·ħ) (rad/s).
#[no_mangle]
pub unsafe extern "C" fn hs_motional_coupling_g0(
    zeta: f64,
    ion_height: f64,
    c0: f64,
    z0: f64,
    dq0: f64,
    out: *mut f64,
) -> HsStatus {
    guarded(|| {
        let result = coupling::motional_coupling(&coupling::MotionalCouplingInput {
            zeta_geom: zeta,
            ion_height,
            c0,
            z0,
            dq0,
            eta: 0.0,
            omega_i: 1.0,
            omega_lc: 1.0,
            delta: 0.0,
            kappa: None,
            decoherence: None,
        })
        .map(|r| r.g0);
        write_out(out, result)
    })
}

/// Magnetic dipole coupling of a hyperfine transition (rad/s); the nuclear
/// term is neglected.
#[no_mangle]
pub unsafe extern "C" fn hs_magnetic_dipole_coupling(
    b_trans: f64,
    matrix_element: f64,
    g_s: f64,
    out: *mut f64,
) -> HsStatus {
    guarded(|| write_out(out, coupling::magnetic_dipole_coupling(b_trans, matrix_element, g_s, None)))
}

/// √N ensemble enhancement.
#[no_mangle]
pub unsafe extern "C" fn hs_ensemble_coupling(g_single: f64, n: u64, out: *mut f64) -> HsStatus {
    guarded(|| write_out(out, coupling::ensemble_coupling(g_single, n)))
}

/// Cavity decay rate κ = 2πf/Q (rad/s).
#[no_mangle]
pub unsafe extern "C" fn hs_cavity_decay_rate(f: f64, q: f64, out: *mut f64) -> HsStatus {
    guarded(|| write_out(out, coupling::cavity_decay_rate(f, q)))
}

// ── modulation ──────────────────────────────────────────────────────────

/// Power fraction in the carrier plus first sideband at FM index `m`.
#[no_mangle]
pub unsafe extern "C" fn hs_fm_carrier_plus_first(index: f64, out: *mut f64) -> HsStatus {
    guarded(|| {
        write_out(
            out,
            modulation::fm_sideband_powers(index, 20).map(|p| p.carrier_plus_first),
        )
    })
}

/// Largest FM index keeping carrier-plus-first power at or above
/// `threshold`.
#[no_mangle]
pub unsafe extern "C" fn hs_max_index_for_power_fraction(threshold: f64, out: *mut f64) -> HsStatus {
    guarded(|| write_out(out, modulation::max_index_for_power_fraction(threshold)))
}

/// Euler–Bernoulli flexural mode frequency (Hz) of a clamped-clamped beam.
#[no_mangle]
pub unsafe extern "C" fn hs_flexural_mode_frequency(
    length: f64,
    width: f64,
    thickness: f64,
    youngs_modulus: f64,
    density: f64,
    mode_number: u32,
    out: *mut f64,
) -> HsStatus {
    guarded(|| {
        write_out(
            out,
            modulation::flexural_mode_frequency(&modulation::BawBeam {
                length,
                width,
                thickness,
                youngs_modulus,
                density,
                boundary: modulation::BeamBoundary::ClampedClamped,
                mode_number,
            }),
        )
    })
}

// ── electrostatics ──────────────────────────────────────────────────────

/// Optimum plate centre separation (m) maximising the axial field at the
/// ion; plates are `plate_length × plate_width` with `grid` point charges
/// per edge, searched over [lo, hi].
#[no_mangle]
pub unsafe extern "C" fn hs_optimum_plate_separation(
    plate_length: f64,
    plate_width: f64,
    charge: f64,
    grid: usize,
    ion_height: f64,
    lo: f64,
    hi: f64,
    out: *mut f64,
) -> HsStatus {
    guarded(|| {
        let plates = electrostatics::PlatePair {
            plate_length,
            plate_width,
            center_separation: lo.max(plate_length),
            charge,
            grid_resolution: grid,
        };
        write_out(
            out,
            electrostatics::optimum_plate_separation(&plates, ion_height, (lo, hi)),
        )
    })
}

// ── dynamics ────────────────────────────────────────────────────────────

/// Closed-form |1,0⟩ → |0,1⟩ transfer probability at coupling `g_eff`,
/// detuning `delta` and time `t`. Total function; no error path.
#[no_mangle]
pub extern "C" fn hs_analytic_transfer(g_eff: f64, delta: f64, t: f64) -> f64 {
    dynamics::analytic_transfer(g_eff, delta, t)
}

/// Swap fidelity after one swap time π/2G under Lindblad damping
/// (rates in rad/s), on an `n_trunc`-truncated Fock space.
#[no_mangle]
pub unsafe extern "C" fn hs_swap_fidelity_with_damping(
    g_eff: f64,
    kappa: f64,
    gamma_ion: f64,
    n_trunc: usize,
    out: *mut f64,
) -> HsStatus {
    guarded(|| {
        let cfg = dynamics::DynamicsConfig::for_rates(g_eff, 0.0, kappa, gamma_ion, 0.0);
        write_out(out, dynamics::swap_fidelity_with_damping(&cfg, n_trunc))
    })
}

// ── cryo budget ─────────────────────────────────────────────────────────

/// Conducted power λ·δT·A/L (W).
#[no_mangle]
pub unsafe extern "C" fn hs_conduction_load(
    lambda_mean: f64,
    area: f64,
    length: f64,
    delta_t: f64,
    out: *mut f64,
) -> HsStatus {
    guarded(|| write_out(out, cryo_budget::conduction_load(lambda_mean, area, length, delta_t)))
}

/// Johnson–Nyquist noise density k_B·T (J/Hz).
#[no_mangle]
pub unsafe extern "C" fn hs_thermal_noise_density(temperature: f64, out: *mut f64) -> HsStatus {
    guarded(|| write_out(out, cryo_budget::thermal_noise_density(temperature)))
}

/// Quasiparticle diffusion length √(D·τ) (m).
#[no_mangle]
pub unsafe extern "C" fn hs_quasiparticle_diffusion_length(
    diffusion: f64,
    tau_qp: f64,
    out: *mut f64,
) -> HsStatus {
    guarded(|| write_out(out, cryo_budget::quasiparticle_diffusion_length(diffusion, tau_qp)))
}

// ── opaque circuit handle ───────────────────────────────────────────────

/// Opaque LC-circuit handle; create with `hs_circuit_new*`, destroy with
/// `hs_circuit_free`.
pub struct HsCircuit(LcCircuit);

/// Derive a circuit from capacitance (F) and inductance (H).
#[no_mangle]
pub unsafe extern "C" fn hs_circuit_new(c0: f64, l0: f64, out: *mut *mut HsCircuit) -> HsStatus {
    guarded(|| {
        if out.is_null() {
            record_error("null out pointer");
            return HsStatus::NullArgument;
        }
        match hybridsim::lc_circuit::derive_circuit(c0, l0) {
            Ok(c) => {
                unsafe { *out = Box::into_raw(Box::new(HsCircuit(c))) };
                HsStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Like `hs_circuit_new` but with the impedance used for the zero-point
/// fluctuations forced to `z` (Ω).
#[no_mangle]
pub unsafe extern "C" fn hs_circuit_new_forced_z(
    c0: f64,
    l0: f64,
    z: f64,
    out: *mut *mut HsCircuit,
) -> HsStatus {
    guarded(|| {
        if out.is_null() {
            record_error("null out pointer");
            return HsStatus::NullArgument;
        }
        match LcCircuit::with_forced_impedance(c0, l0, z) {
            Ok(c) => {
                unsafe { *out = Box::into_raw(Box::new(HsCircuit(c))) };
                HsStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

// cbindgen does not expand macros, so the getters are spelled out.

/// Angular resonant frequency ω_r = 1/√(L₀C₀) (rad/s); NaN on null.
#[no_mangle]
pub unsafe extern "C" fn hs_circuit_omega_r(circuit: *const HsCircuit) -> f64 {
    if circuit.is_null() {
        return f64::NAN;
    }
    unsafe { &*circuit }.0.omega_r
}

/// Impedance used for the fluctuations (Ω); NaN on null.
#[no_mangle]
pub unsafe extern "C" fn hs_circuit_impedance(circuit: *const HsCircuit) -> f64 {
    if circuit.is_null() {
        return f64::NAN;
    }
    unsafe { &*circuit }.0.z
}

/// Zero-point charge fluctuation Δq₀ (C); NaN on null.
#[no_mangle]
pub unsafe extern "C" fn hs_circuit_dq0(circuit: *const HsCircuit) -> f64 {
    if circuit.is_null() {
        return f64::NAN;
    }
    unsafe { &*circuit }.0.dq0
}

/// Zero-point flux fluctuation Δφ₀ (Wb); NaN on null.
#[no_mangle]
pub unsafe extern "C" fn hs_circuit_dphi0(circuit: *const HsCircuit) -> f64 {
    if circuit.is_null() {
        return f64::NAN;
    }
    unsafe { &*circuit }.0.dphi0
}

/// Release a circuit handle. Null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn hs_circuit_free(circuit: *mut HsCircuit) {
    if !circuit.is_null() {
        drop(unsafe { Box::from_raw(circuit) });
    }
}

// ── opaque report handle ────────────────────────────────────────────────

/// Opaque report handle produced by `hs_run_config_file`.
pub struct HsReport(Report);

/// Load a TOML config file, run its scenario (or sweep) and return the
/// report.
#[no_mangle]
pub unsafe extern "C" fn hs_run_config_file(path: *const c_char, out: *mut *mut HsReport) -> HsStatus {
    guarded(|| {
        let path = match unsafe { read_str(path) } {
            Ok(s) => s,
            Err(status) => return status,
        };
        if out.is_null() {
            record_error("null out pointer");
            return HsStatus::NullArgument;
        }
        let result = load_config(Path::new(path)).and_then(|cfg| workbench::run(&cfg));
        match result {
            Ok(report) => {
                unsafe { *out = Box::into_raw(Box::new(HsReport(report))) };
                HsStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Number of data rows in a report; 0 on null.
#[no_mangle]
pub unsafe extern "C" fn hs_report_rows(report: *const HsReport) -> usize {
    if report.is_null() {
        return 0;
    }
    unsafe { &*report }.0.rows.len()
}

/// Render a report as "csv", "json" or "svg" into a newly allocated
/// string; release it with `hs_string_free`.
#[no_mangle]
pub unsafe extern "C" fn hs_report_emit(
    report: *const HsReport,
    format: *const c_char,
    out: *mut *mut c_char,
) -> HsStatus {
    guarded(|| {
        if report.is_null() || out.is_null() {
            record_error("null argument");
            return HsStatus::NullArgument;
        }
        let format = match unsafe { read_str(format) } {
            Ok(s) => s,
            Err(status) => return status,
        };
        let format: OutputFormat = match format.parse() {
            Ok(f) => f,
            Err(e) => return fail(&e),
        };
        match unsafe { &*report }.0.emit(format) {
            Ok(text) => match CString::new(text) {
                Ok(cstring) => {
                    unsafe { *out = cstring.into_raw() };
                    HsStatus::Ok
                }
                Err(_) => {
                    record_error("rendered output contained an interior NUL");
                    HsStatus::Numerical
                }
            },
            Err(e) => fail(&e),
        }
    })
}

/// Release a report handle. Null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn hs_report_free(report: *mut HsReport) {
    if !report.is_null() {
        drop(unsafe { Box::from_raw(report) });
    }
}

/// Release a string returned by `hs_report_emit`. Null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn hs_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}
