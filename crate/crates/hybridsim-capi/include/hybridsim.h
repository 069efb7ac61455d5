#ifndef HYBRIDSIM_H
#define HYBRIDSIM_H

/* Generated by cbindgen from hybridsim-capi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes returned by every fallible call.
typedef enum HsStatus {
  HS_STATUS_OK = 0,
  // Input violated a mathematical precondition.
  HS_STATUS_DOMAIN = 1,
  // Text failed to parse as a quantity.
  HS_STATUS_PARSE = 2,
  // Unknown ion species.
  HS_STATUS_NOT_FOUND = 3,
  // Malformed configuration or unit mismatch.
  HS_STATUS_CONFIG = 4,
  // Numerical failure (NaN, truncation guard, non-convergence).
  HS_STATUS_NUMERICAL = 5,
  // Heat budget exceeded a stage's cooling power.
  HS_STATUS_BUDGET = 6,
  // I/O failure.
  HS_STATUS_IO = 7,
  // A required pointer argument was null.
  HS_STATUS_NULL_ARGUMENT = 8,
  // Invalid UTF-8 in a string argument.
  HS_STATUS_UTF8 = 9,
  // Internal panic; state is unspecified.
  HS_STATUS_PANIC = 10,
} HsStatus;

// Opaque LC-circuit handle; create with `hs_circuit_new*`, destroy with
// `hs_circuit_free`.
typedef struct HsCircuit HsCircuit;

// Opaque report handle produced by `hs_run_config_file`.
typedef struct HsReport HsReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Copy the last error message for this thread into `buf` (NUL-terminated,
// truncated to `cap`). Returns the full length including the NUL, so a
// return value greater than `cap` means truncation.
uintptr_t hs_last_error_message(char *buf, uintptr_t cap);

// Library version as a static NUL-terminated string.
const char *hs_version(void);

// Parse a quantity string like "46fF" into its base-SI value; the unit
// symbol is copied into `unit_buf` (NUL-terminated, truncated to
// `unit_cap`).
enum HsStatus hs_parse_quantity(const char *text,
                                double *value,
                                char *unit_buf,
                                uintptr_t unit_cap);

// Mass (kg), charge (C) and qubit frequency (Hz; 0 when the species has
// none registered) of an ion species such as "Yb-171".
enum HsStatus hs_lookup_ion(const char *symbol,
                            double *mass,
                            double *charge,
                            double *qubit_frequency);

// Ion height √(abc(a+b+c))/(b+c) over a surface trap (all metres).
enum HsStatus hs_ion_height(double a, double b, double c, double *out);

// Optimum electrode widths (b, c, w_outer) for an rf separation `a`.
enum HsStatus hs_optimum_widths(double a, double *b, double *c, double *w_outer);

// Heating rate rescaled between ion heights: rate0·(r0/r1)^exponent.
enum HsStatus hs_heating_rate_scaled(double rate0,
                                     double r0,
                                     double r1,
                                     double exponent,
                                     double *out);

// Ground-state oscillator length √(ħ/2mω) (m).
enum HsStatus hs_harmonic_oscillator_length(double mass, double omega_i, double *out);

// Bare motional coupling g₀ = e·ζ·z₀·Δq₀/(r·C₀·ħ) (rad/s).
enum HsStatus hs_motional_coupling_g0(double zeta,
                                      double ion_height,
                                      double c0,
                                      double z0,
                                      double dq0,
                                      double *out);

// Magnetic dipole coupling of a hyperfine transition (rad/s); the nuclear
// term is neglected.
enum HsStatus hs_magnetic_dipole_coupling(double b_trans,
                                          double matrix_element,
                                          double g_s,
                                          double *out);

// √N ensemble enhancement.
enum HsStatus hs_ensemble_coupling(double g_single, uint64_t n, double *out);

// Cavity decay rate κ = 2πf/Q (rad/s).
enum HsStatus hs_cavity_decay_rate(double f, double q, double *out);

// Power fraction in the carrier plus first sideband at FM index `m`.
enum HsStatus hs_fm_carrier_plus_first(double index, double *out);

// Largest FM index keeping carrier-plus-first power at or above
// `threshold`.
enum HsStatus hs_max_index_for_power_fraction(double threshold, double *out);

// Euler–Bernoulli flexural mode frequency (Hz) of a clamped-clamped beam.
enum HsStatus hs_flexural_mode_frequency(double length,
                                         double width,
                                         double thickness,
                                         double youngs_modulus,
                                         double density,
                                         uint32_t mode_number,
                                         double *out);

// Optimum plate centre separation (m) maximising the axial field at the
// ion; plates are `plate_length × plate_width` with `grid` point charges
// per edge, searched over [lo, hi].
enum HsStatus hs_optimum_plate_separation(double plate_length,
                                          double plate_width,
                                          double charge,
                                          uintptr_t grid,
                                          double ion_height,
                                          double lo,
                                          double hi,
                                          double *out);

// Closed-form |1,0⟩ → |0,1⟩ transfer probability at coupling `g_eff`,
// detuning `delta` and time `t`. Total function; no error path.
double hs_analytic_transfer(double g_eff, double delta, double t);

// Swap fidelity after one swap time π/2G under Lindblad damping
// (rates in rad/s), on an `n_trunc`-truncated Fock space.
enum HsStatus hs_swap_fidelity_with_damping(double g_eff,
                                            double kappa,
                                            double gamma_ion,
                                            uintptr_t n_trunc,
                                            double *out);

// Conducted power λ·δT·A/L (W).
enum HsStatus hs_conduction_load(double lambda_mean,
                                 double area,
                                 double length,
                                 double delta_t,
                                 double *out);

// Johnson–Nyquist noise density k_B·T (J/Hz).
enum HsStatus hs_thermal_noise_density(double temperature, double *out);

// Quasiparticle diffusion length √(D·τ) (m).
enum HsStatus hs_quasiparticle_diffusion_length(double diffusion, double tau_qp, double *out);

// Derive a circuit from capacitance (F) and inductance (H).
enum HsStatus hs_circuit_new(double c0, double l0, struct HsCircuit **out);

// Like `hs_circuit_new` but with the impedance used for the zero-point
// fluctuations forced to `z` (Ω).
enum HsStatus hs_circuit_new_forced_z(double c0, double l0, double z, struct HsCircuit **out);

// Angular resonant frequency ω_r = 1/√(L₀C₀) (rad/s); NaN on null.
double hs_circuit_omega_r(const struct HsCircuit *circuit);

// Impedance used for the fluctuations (Ω); NaN on null.
double hs_circuit_impedance(const struct HsCircuit *circuit);

// Zero-point charge fluctuation Δq₀ (C); NaN on null.
double hs_circuit_dq0(const struct HsCircuit *circuit);

// Zero-point flux fluctuation Δφ₀ (Wb); NaN on null.
double hs_circuit_dphi0(const struct HsCircuit *circuit);

// Release a circuit handle. Null is a no-op.
void hs_circuit_free(struct HsCircuit *circuit);

// Load a TOML config file, run its scenario (or sweep) and return the
// report.
enum HsStatus hs_run_config_file(const char *path, struct HsReport **out);

// Number of data rows in a report; 0 on null.
uintptr_t hs_report_rows(const struct HsReport *report);

// Render a report as "csv", "json" or "svg" into a newly allocated
// string; release it with `hs_string_free`.
enum HsStatus hs_report_emit(const struct HsReport *report, const char *format, char **out);

// Release a report handle. Null is a no-op.
void hs_report_free(struct HsReport *report);

// Release a string returned by `hs_report_emit`. Null is a no-op.
void hs_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HYBRIDSIM_H */
