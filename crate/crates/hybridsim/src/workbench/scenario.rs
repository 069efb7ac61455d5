//! Scenario schemas and runners.
//!
//! Each CLI subcommand maps to a scenario with a declared parameter schema
//! (key, expected kind/unit, required?). Validation checks presence and
//! unit compatibility up front — and rejects undeclared keys in strict
//! mode — then the runner turns parameters into a [`Report`].
//!
//! Frequency-valued keys (`f_i`, `f_lc`, `freq`, `delta_f`, `cavity_f`,
//! `g0_over_2pi`, `g_eff_over_2pi`) are ordinary frequencies in Hz and get
//! multiplied by 2π internally; `*_rate` keys (`decoherence_rate`,
//! `kappa_rate`, `gamma_rate`) are angular rates in s⁻¹ used verbatim.

use std::str::FromStr;

use crate::coupling;
use crate::cryo_budget::{self, Stage};
use crate::dynamics::{self, DynamicsConfig, TwoModeState};
use crate::electrostatics::{self, PlatePair};
use crate::error::{Error, Result};
use crate::lc_circuit::{self, LcCircuit};
use crate::modulation::{self, BawBeam, BeamBoundary, ModulationScheme, ModulationSpec};
use crate::quantities::{constants::HBAR, lookup_ion, Unit};
use crate::trap_geometry::{self, TrapGeometry};

use super::config::{RunConfig, SweepScale};
use super::report::{Column, Report, Value, PLUMBING};

const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scenario {
    Geometry,
    Circuit,
    Plates,
    Modulation,
    Coupling,
    Dynamics,
    Budget,
    Sweep,
}

impl FromStr for Scenario {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "geometry" => Scenario::Geometry,
            "circuit" => Scenario::Circuit,
            "plates" => Scenario::Plates,
            "modulation" => Scenario::Modulation,
            "coupling" => Scenario::Coupling,
            "dynamics" => Scenario::Dynamics,
            "budget" => Scenario::Budget,
            "sweep" => Scenario::Sweep,
            other => {
                return Err(Error::Config(format!(
                    "unknown scenario `{other}` (expected geometry|circuit|plates|modulation|\
                     coupling|dynamics|budget|sweep)"
                )))
            }
        })
    }
}

impl std::fmt::Display for Scenario {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Scenario::Geometry => "geometry",
            Scenario::Circuit => "circuit",
            Scenario::Plates => "plates",
            Scenario::Modulation => "modulation",
            Scenario::Coupling => "coupling",
            Scenario::Dynamics => "dynamics",
            Scenario::Budget => "budget",
            Scenario::Sweep => "sweep",
        };
        write!(f, "{s}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParamKind {
    Quantity(Unit),
    /// Dimensionless number (float or integer).
    Number,
    Integer,
    Text,
}

#[derive(Debug, Clone, Copy)]
pub struct ParamSpec {
    pub key: &'static str,
    pub kind: ParamKind,
    pub required: bool,
}

const fn req(key: &'static str, kind: ParamKind) -> ParamSpec {
    ParamSpec { key, kind, required: true }
}
const fn opt(key: &'static str, kind: ParamKind) -> ParamSpec {
    ParamSpec { key, kind, required: false }
}

use ParamKind::{Integer, Number, Quantity, Text};

pub fn schema(scenario: Scenario) -> &'static [ParamSpec] {
    const GEOMETRY: &[ParamSpec] = &[
        req("a", Quantity(Unit::Meter)),
        opt("b", Quantity(Unit::Meter)),
        opt("c", Quantity(Unit::Meter)),
        opt("w_outer", Quantity(Unit::Meter)),
    ];
    const CIRCUIT: &[ParamSpec] = &[
        req("c0", Quantity(Unit::Farad)),
        req("l0", Quantity(Unit::Henry)),
        opt("force_z", Quantity(Unit::Ohm)),
        opt("idc_fingers", Integer),
        opt("idc_finger_length", Quantity(Unit::Meter)),
        opt("idc_finger_width", Quantity(Unit::Meter)),
        opt("idc_finger_thickness", Quantity(Unit::Meter)),
        opt("idc_gap", Quantity(Unit::Meter)),
        opt("idc_eps_eff", Number),
        opt("idc_parallel", Integer),
    ];
    const PLATES: &[ParamSpec] = &[
        opt("plate_length", Quantity(Unit::Meter)),
        opt("plate_width", Quantity(Unit::Meter)),
        opt("charge", Quantity(Unit::Coulomb)),
        opt("grid_resolution", Integer),
        opt("ion_height", Quantity(Unit::Meter)),
        opt("sep_start", Quantity(Unit::Meter)),
        opt("sep_stop", Quantity(Unit::Meter)),
        opt("n_points", Integer),
    ];
    const MODULATION: &[ParamSpec] = &[
        opt("table", Text),
        opt("c0", Quantity(Unit::Farad)),
        opt("alpha", Quantity(Unit::Meter)),
        opt("beta_amp", Quantity(Unit::Meter)),
        opt("freq", Quantity(Unit::Hertz)),
        opt("scheme", Text),
        opt("n_points", Integer),
        opt("n_samples", Integer),
        opt("n_harmonics", Integer),
        opt("fm_index", Number),
        opt("n_sidebands", Integer),
        opt("beam_length", Quantity(Unit::Meter)),
        opt("beam_width", Quantity(Unit::Meter)),
        opt("beam_thickness", Quantity(Unit::Meter)),
        opt("youngs_modulus_pa", Number),
        opt("density_kg_m3", Number),
        opt("mode_number", Integer),
        opt("max_ratio_den", Integer),
        opt("ratio_tol", Number),
    ];
    const COUPLING: &[ParamSpec] = &[
        opt("species", Text),
        opt("zeta", Number),
        opt("r", Quantity(Unit::Meter)),
        opt("c0", Quantity(Unit::Farad)),
        opt("eta", Number),
        opt("f_i", Quantity(Unit::Hertz)),
        opt("f_lc", Quantity(Unit::Hertz)),
        opt("delta_f", Quantity(Unit::Hertz)),
        opt("z0", Quantity(Unit::Meter)),
        opt("dq0", Quantity(Unit::Coulomb)),
        opt("decoherence_rate", Quantity(Unit::Hertz)),
        opt("cavity_f", Quantity(Unit::Hertz)),
        opt("cavity_q", Number),
        opt("b_trans", Quantity(Unit::Tesla)),
        opt("matrix_element", Number),
        opt("g_s", Number),
        opt("ensemble_n", Integer),
    ];
    const DYNAMICS: &[ParamSpec] = &[
        opt("g_eff_over_2pi", Quantity(Unit::Hertz)),
        opt("g0_over_2pi", Quantity(Unit::Hertz)),
        opt("eta", Number),
        opt("convention", Text),
        opt("delta_f", Quantity(Unit::Hertz)),
        opt("kappa_rate", Quantity(Unit::Hertz)),
        opt("gamma_rate", Quantity(Unit::Hertz)),
        opt("n_trunc", Integer),
        opt("t_end", Quantity(Unit::Second)),
        opt("dt", Quantity(Unit::Second)),
        opt("record_stride", Integer),
    ];
    match scenario {
        Scenario::Geometry => GEOMETRY,
        Scenario::Circuit => CIRCUIT,
        Scenario::Plates => PLATES,
        Scenario::Modulation => MODULATION,
        Scenario::Coupling => COUPLING,
        Scenario::Dynamics => DYNAMICS,
        Scenario::Budget | Scenario::Sweep => &[],
    }
}

/// Presence, unit-compatibility and (strict) unknown-key validation.
pub fn validate(cfg: &RunConfig) -> Result<()> {
    let base = base_scenario(cfg)?;
    let schema = schema(base);
    for spec in schema {
        if spec.required && !cfg.params.contains(spec.key) {
            return Err(Error::Config(format!(
                "scenario `{base}` requires parameter `{}`",
                spec.key
            )));
        }
    }
    for (key, value) in &cfg.params.0 {
        match schema.iter().find(|s| s.key == key) {
            Some(spec) => check_kind(key, value, spec.kind)?,
            None if cfg.strict => {
                return Err(Error::Config(format!(
                    "unknown parameter `{key}` for scenario `{base}` (strict mode)"
                )))
            }
            None => {}
        }
    }
    if let Some(sweep) = &cfg.sweep {
        let spec = schema
            .iter()
            .find(|s| s.key == sweep.parameter)
            .ok_or_else(|| {
                Error::Config(format!(
                    "sweep parameter `{}` is not a `{base}` parameter",
                    sweep.parameter
                ))
            })?;
        match spec.kind {
            Quantity(unit) => {
                if sweep.start.unit != unit {
                    return Err(Error::UnitMismatch {
                        key: format!("sweep.{}", sweep.parameter),
                        expected: unit.symbol().to_string(),
                        actual: sweep.start.unit.symbol().to_string(),
                    });
                }
            }
            Number => {
                if sweep.start.unit != Unit::Dimensionless {
                    return Err(Error::UnitMismatch {
                        key: format!("sweep.{}", sweep.parameter),
                        expected: "dimensionless".to_string(),
                        actual: sweep.start.unit.symbol().to_string(),
                    });
                }
            }
            _ => {
                return Err(Error::Config(format!(
                    "sweep parameter `{}` is not numeric",
                    sweep.parameter
                )))
            }
        }
    }
    Ok(())
}

fn check_kind(key: &str, value: &super::config::ParamValue, kind: ParamKind) -> Result<()> {
    use super::config::ParamValue as P;
    let ok = match (kind, value) {
        (Quantity(unit), P::Quantity(q)) => q.unit == unit,
        (Number, P::Quantity(q)) => q.unit == Unit::Dimensionless,
        (Number, P::Integer(_)) => true,
        (Integer, P::Integer(_)) => true,
        (Integer, P::Quantity(q)) => q.unit == Unit::Dimensionless,
        (Text, P::Text(_)) => true,
        _ => false,
    };
    if ok {
        Ok(())
    } else {
        let expected = match kind {
            Quantity(unit) => unit.symbol().to_string(),
            Number => "dimensionless".into(),
            Integer => "integer".into(),
            Text => "text".into(),
        };
        Err(Error::UnitMismatch {
            key: key.to_string(),
            expected,
            actual: match value {
                P::Quantity(q) => {
                    if q.unit == Unit::Dimensionless {
                        "dimensionless".into()
                    } else {
                        q.unit.symbol().to_string()
                    }
                }
                P::Text(_) => "text".into(),
                P::Integer(_) => "integer".into(),
                P::Bool(_) => "bool".into(),
            },
        })
    }
}

fn base_scenario(cfg: &RunConfig) -> Result<Scenario> {
    match cfg.scenario {
        Scenario::Sweep => cfg
            .sweep
            .as_ref()
            .and_then(|s| s.scenario)
            .ok_or_else(|| {
                Error::Config(
                    "scenario `sweep` needs a [sweep] block with a `scenario` field".into(),
                )
            }),
        s => Ok(s),
    }
}

/// How a runner is being invoked; sweeps ask for curve-shaped rows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RunMode {
    Direct,
    Sweep,
}

/// Entry point: dispatches to the sweep engine or a direct runner.
pub fn run(cfg: &RunConfig) -> Result<Report> {
    validate(cfg)?;
    if cfg.scenario == Scenario::Sweep || cfg.sweep.is_some() {
        run_sweep(cfg)
    } else {
        run_direct(cfg.scenario, cfg, RunMode::Direct)
    }
}

/// Evaluate the base scenario at every sweep point, rows ordered by sweep
/// value.
pub fn run_sweep(cfg: &RunConfig) -> Result<Report> {
    let spec = cfg
        .sweep
        .as_ref()
        .ok_or_else(|| Error::Config("sweep run needs a [sweep] block".into()))?;
    let base = base_scenario(cfg)?;
    if matches!(base, Scenario::Sweep | Scenario::Budget) {
        return Err(Error::Config(format!("scenario `{base}` cannot be swept")));
    }
    let mut combined: Option<Report> = None;
    for value in spec.values()? {
        let mut sub = RunConfig {
            scenario: base,
            params: cfg.params.clone(),
            sweep: None,
            stages: None,
            items: Vec::new(),
            input_sha256: cfg.input_sha256.clone(),
            strict: cfg.strict,
        };
        sub.params.set(&spec.parameter, super::config::ParamValue::Quantity(value));
        let rep = run_direct(base, &sub, RunMode::Sweep)?;
        match &mut combined {
            None => combined = Some(rep),
            Some(acc) => acc.rows.extend(rep.rows),
        }
    }
    let mut report = combined.expect("n_points ≥ 1 enforced");
    report.x_log = spec.scale == SweepScale::Log;
    report.metadata.input_sha256 = cfg.input_sha256.clone();
    Ok(report)
}

fn run_direct(scenario: Scenario, cfg: &RunConfig, mode: RunMode) -> Result<Report> {
    let mut report = match scenario {
        Scenario::Geometry => run_geometry(cfg),
        Scenario::Circuit => run_circuit(cfg),
        Scenario::Plates => run_plates(cfg),
        Scenario::Modulation => run_modulation(cfg),
        Scenario::Coupling => run_coupling(cfg, mode),
        Scenario::Dynamics => run_dynamics(cfg),
        Scenario::Budget => run_budget(cfg),
        Scenario::Sweep => Err(Error::Config("sweep is not a direct scenario".into())),
    }?;
    report.metadata.input_sha256 = cfg.input_sha256.clone();
    Ok(report)
}

fn yes_no(b: bool) -> Value {
    Value::text(if b { "yes" } else { "no" })
}

fn run_geometry(cfg: &RunConfig) -> Result<Report> {
    let p = &cfg.params;
    let a = p.quantity("a", Unit::Meter)?;
    let derived = !p.contains("b") && !p.contains("c");
    let (b, c, w_opt) = if derived {
        trap_geometry::optimum_widths(a)?
    } else {
        (
            p.quantity("b", Unit::Meter)?,
            p.quantity("c", Unit::Meter)?,
            trap_geometry::OUTER_WIDTH_RATIO * a,
        )
    };
    let w_outer = p.quantity_or("w_outer", Unit::Meter, w_opt)?;
    let g = TrapGeometry::new(a, b, c, w_outer)?;

    let width_prov = if derived { "b=4.90*a; c=b/2" } else { "input" };
    let mut report = Report::new(vec![
        Column::new("a_m", "input"),
        Column::new("b_m", width_prov),
        Column::new("c_m", width_prov),
        Column::new("w_outer_m", if cfg.params.contains("w_outer") { "input" } else { "w_outer=3.66*a" }),
        Column::new("h_m", "h=sqrt(a*b*c*(a+b+c))/(b+c)"),
        Column::new("asymmetric", PLUMBING),
        Column::new("near_optimum_ratios_3pct", PLUMBING),
    ]);
    report.push_row(vec![
        Value::Num(g.a()),
        Value::Num(g.b()),
        Value::Num(g.c()),
        Value::Num(g.w_outer()),
        Value::Num(g.ion_height()),
        yes_no(g.is_asymmetric()),
        yes_no(g.matches_optimum_ratios(0.03)),
    ]);
    Ok(report)
}

fn run_circuit(cfg: &RunConfig) -> Result<Report> {
    let p = &cfg.params;
    let c0 = p.quantity("c0", Unit::Farad)?;
    let l0 = p.quantity("l0", Unit::Henry)?;
    let derived = lc_circuit::derive_circuit(c0, l0)?;
    let circuit = match p.quantity_or("force_z", Unit::Ohm, derived.z)? {
        z if z != derived.z => LcCircuit::with_forced_impedance(c0, l0, z)?,
        _ => derived,
    };

    let mut columns = vec![
        Column::new("c0_F", "input"),
        Column::new("l0_H", "input"),
        Column::new("f_r_Hz", "f_r=1/(2*pi*sqrt(L0*C0))"),
        Column::new("omega_r_rad_per_s", "omega_r=1/sqrt(L0*C0)"),
        Column::new("z_derived_Ohm", "Z=sqrt(L0/C0)"),
        Column::new("z_used_Ohm", PLUMBING),
        Column::new("dq0_C", "dq0=sqrt(hbar/(2*Z))"),
        Column::new("dphi0_Wb", "dphi0=sqrt(hbar*Z/2)"),
        Column::new("uncertainty_product_hbar_over_2", "dq0*dphi0/(hbar/2)"),
    ];
    // parallel-edge interdigital estimate, advisory only
    let idc = if p.contains("idc_fingers") {
        let g = lc_circuit::InterdigitalGeometry {
            n_fingers: p.integer_or("idc_fingers", 4)? as u32,
            finger_length: p.quantity_or("idc_finger_length", Unit::Meter, 84e-6)?,
            finger_width: p.quantity_or("idc_finger_width", Unit::Meter, 5e-6)?,
            finger_thickness: p.quantity_or("idc_finger_thickness", Unit::Meter, 1e-6)?,
            gap: p.quantity_or("idc_gap", Unit::Meter, 5e-6)?,
            eps_eff: p.number_or("idc_eps_eff", 6.25)?,
            n_parallel: p.integer_or("idc_parallel", 2)? as u32,
        };
        columns.push(Column::new(
            "interdigital_estimate_LOW_FIDELITY_F",
            "C~n_par*(n_fingers-1)*eps0*eps_eff*t*l/gap (parallel edges only)",
        ));
        Some(lc_circuit::interdigital_capacitance_estimate(&g)?)
    } else {
        None
    };

    let mut report = Report::new(columns);
    let mut row = vec![
        Value::Num(circuit.c0),
        Value::Num(circuit.l0),
        Value::Num(circuit.omega_r / TWO_PI),
        Value::Num(circuit.omega_r),
        Value::Num(derived.z),
        Value::Num(circuit.z),
        Value::Num(circuit.dq0),
        Value::Num(circuit.dphi0),
        Value::Num(circuit.dq0 * circuit.dphi0 / (HBAR / 2.0)),
    ];
    if let Some(c) = idc {
        row.push(Value::Num(c));
        report.summary = Some(format!(
            "interdigital estimate {:.2} fF is LOW-FIDELITY (parallel-edge model; \
             fringe and plate terms ignored)",
            c * 1e15
        ));
    }
    report.push_row(row);
    Ok(report)
}

fn run_plates(cfg: &RunConfig) -> Result<Report> {
    let p = &cfg.params;
    let plates = PlatePair {
        plate_length: p.quantity_or("plate_length", Unit::Meter, 17e-6)?,
        plate_width: p.quantity_or("plate_width", Unit::Meter, 8e-6)?,
        center_separation: 0.0, // overridden per point below
        charge: p.quantity_or("charge", Unit::Coulomb, 1e-18)?,
        grid_resolution: p.integer_or("grid_resolution", 32)? as usize,
    };
    let ion_height = p.quantity_or("ion_height", Unit::Meter, 25e-6)?;
    let sep_start = p.quantity_or("sep_start", Unit::Meter, 20e-6)?;
    let sep_stop = p.quantity_or("sep_stop", Unit::Meter, 50e-6)?;
    let n = p.integer_or("n_points", 61)? as usize;
    #[allow(clippy::neg_cmp_op_on_partial_ord)] // !(a < b) also rejects NaN bounds
    if !(sep_start < sep_stop) || n < 2 {
        return Err(Error::Config(format!(
            "separation sweep needs sep_start < sep_stop and n_points ≥ 2, got [{sep_start}, {sep_stop}] × {n}"
        )));
    }

    let mut fields = Vec::with_capacity(n);
    for i in 0..n {
        let d = sep_start + (sep_stop - sep_start) * i as f64 / (n - 1) as f64;
        let pair = PlatePair { center_separation: d, ..plates };
        let e = electrostatics::plate_pair_field(&pair, [0.0, 0.0, ion_height])?;
        fields.push((d, e[0].abs()));
    }
    let peak = fields.iter().map(|f| f.1).fold(0.0, f64::max);
    let norm = if peak > 0.0 { peak } else { 1.0 };

    let mut report = Report::new(vec![
        Column::new("separation_m", PLUMBING),
        Column::new("field_rel", "superposed Coulomb field at the ion, fixed charge, peak-normalized"),
    ]);
    for (d, f) in fields {
        report.push_row(vec![Value::Num(d), Value::Num(f / norm)]);
    }
    let optimum = electrostatics::optimum_plate_separation(
        &plates,
        ion_height,
        (sep_start.max(plates.plate_length), sep_stop),
    )?;
    report.summary = Some(format!("optimum separation ≈ {:.2} µm", optimum * 1e6));
    Ok(report)
}

fn run_modulation(cfg: &RunConfig) -> Result<Report> {
    let p = &cfg.params;
    let table = p.text_or("table", "waveform")?;
    let c0 = p.quantity_or("c0", Unit::Farad, 46e-15)?;
    let alpha = p.quantity_or("alpha", Unit::Meter, 2e-6)?;
    let beta_amp = p.quantity_or("beta_amp", Unit::Meter, 0.6e-6)?;
    let freq = p.quantity_or("freq", Unit::Hertz, 1e6)?;
    let scheme = match p.text_or("scheme", "paired")?.as_str() {
        "single" => ModulationScheme::Single,
        "paired" => ModulationScheme::Paired,
        other => {
            return Err(Error::Config(format!(
                "scheme must be single|paired, got `{other}`"
            )))
        }
    };

    match table.as_str() {
        "waveform" => {
            let spec = ModulationSpec::new(c0, alpha, beta_amp, TWO_PI * freq, scheme)?;
            let n = p.integer_or("n_points", 256)? as usize;
            let period = TWO_PI / spec.nu;
            let prov = match scheme {
                ModulationScheme::Single => "C=C0*alpha/(alpha+beta*sin(nu*t))",
                ModulationScheme::Paired => {
                    "C=(C0/2)*(alpha/(alpha+beta*sin(nu*t))+alpha/(alpha+beta*cos(nu*t)))"
                }
            };
            let mut report = Report::new(vec![
                Column::new("t_s", PLUMBING),
                Column::new("c_F", prov),
            ]);
            for j in 0..n {
                let t = j as f64 * period / n as f64;
                report.push_row(vec![
                    Value::Num(t),
                    Value::Num(modulation::capacitance_waveform(&spec, t)),
                ]);
            }
            if spec.eta_is_large() {
                report.summary =
                    Some(format!("warning: modulation depth η = {:.2} > 0.5", spec.eta()));
            }
            Ok(report)
        }
        "harmonics" => {
            let spec = ModulationSpec::new(c0, alpha, beta_amp, TWO_PI * freq, scheme)?;
            let n_samples = p.integer_or("n_samples", 1024)? as usize;
            let n_keep = p.integer_or("n_harmonics", 16)? as usize;
            let spectrum = modulation::harmonic_spectrum(&spec, n_samples)?;
            let mut report = Report::new(vec![
                Column::new("harmonic", PLUMBING),
                Column::new("amplitude_rel", "one-period DFT of C(t)/C0"),
            ]);
            for &(k, a) in spectrum.iter().take(n_keep + 1) {
                report.push_row(vec![Value::Num(k as f64), Value::Num(a)]);
            }
            Ok(report)
        }
        "sidebands" => {
            let index = p.number_or("fm_index", 0.3)?;
            let n_max = p.integer_or("n_sidebands", 20)? as usize;
            let powers = modulation::fm_sideband_powers(index, n_max)?;
            let mut report = Report::new(vec![
                Column::new("order", PLUMBING),
                Column::new("power_rel", "P0=J0(m)^2, Pn=2*Jn(m)^2"),
            ]);
            for (n, power) in powers.powers.iter().enumerate() {
                report.push_row(vec![Value::Num(n as f64), Value::Num(*power)]);
            }
            report.summary = Some(format!(
                "carrier+first sideband power fraction = {:.6}",
                powers.carrier_plus_first
            ));
            Ok(report)
        }
        "beam" => {
            let beam = BawBeam {
                length: p.quantity_or("beam_length", Unit::Meter, 200e-6)?,
                width: p.quantity_or("beam_width", Unit::Meter, 50e-6)?,
                thickness: p.quantity_or("beam_thickness", Unit::Meter, 3e-6)?,
                youngs_modulus: p.number_or("youngs_modulus_pa", modulation::PZT_YOUNGS_MODULUS)?,
                density: p.number_or("density_kg_m3", modulation::PZT_DENSITY)?,
                boundary: BeamBoundary::ClampedClamped,
                mode_number: 1,
            };
            let n_modes = p.integer_or("mode_number", 4)? as u32;
            let mut report = Report::new(vec![
                Column::new("mode", PLUMBING),
                Column::new("f_Hz", "f=(beta_n*L)^2/(2*pi*L^2)*sqrt(E*t^2/(12*rho))"),
            ]);
            for mode in 1..=n_modes {
                let f = modulation::flexural_mode_frequency(&BawBeam { mode_number: mode, ..beam })?;
                report.push_row(vec![Value::Num(mode as f64), Value::Num(f)]);
            }
            Ok(report)
        }
        "mode_check" => {
            let len = p.quantity_or("beam_length", Unit::Meter, 200e-6)?;
            let wid = p.quantity_or("beam_width", Unit::Meter, 50e-6)?;
            let thick = p.quantity_or("beam_thickness", Unit::Meter, 3e-6)?;
            let den = p.integer_or("max_ratio_den", 5)? as u32;
            let tol = p.number_or("ratio_tol", 0.02)?;
            let check = modulation::mode_separation_check(len, wid, thick, den, tol)?;
            let mut report = Report::new(vec![
                Column::new("pair", PLUMBING),
                Column::new("ratio", PLUMBING),
                Column::new("near_rational", "flag |ratio - p/q|/(p/q) <= tol"),
            ]);
            for c in &check.checks {
                report.push_row(vec![
                    Value::text(c.pair),
                    Value::Num(c.ratio),
                    Value::Text(
                        c.near_rational
                            .map(|(p, q)| format!("{p}/{q}"))
                            .unwrap_or_else(|| "-".to_string()),
                    ),
                ]);
            }
            report.summary = Some(format!(
                "mode separation {}",
                if check.pass { "pass" } else { "flagged" }
            ));
            Ok(report)
        }
        other => Err(Error::Config(format!(
            "table must be waveform|harmonics|sidebands|beam|mode_check, got `{other}`"
        ))),
    }
}

fn run_coupling(cfg: &RunConfig, mode: RunMode) -> Result<Report> {
    let p = &cfg.params;
    let species_list = p.text_or("species", "Be-9")?;
    let zeta = p.number_or("zeta", 0.25)?;
    let r = p.quantity_or("r", Unit::Meter, 25e-6)?;
    let c0 = p.quantity_or("c0", Unit::Farad, 46e-15)?;
    let eta = p.number_or("eta", 0.3)?;
    let omega_i = TWO_PI * p.quantity_or("f_i", Unit::Hertz, 1e6)?;
    let omega_lc = TWO_PI * p.quantity_or("f_lc", Unit::Hertz, 1e9)?;
    let delta = TWO_PI * p.quantity_or("delta_f", Unit::Hertz, 0.0)?;

    let kappa = match (p.contains("cavity_f"), p.contains("cavity_q")) {
        (true, true) => Some(coupling::cavity_decay_rate(
            p.quantity("cavity_f", Unit::Hertz)?,
            p.number_or("cavity_q", 1e5)?,
        )?),
        (false, false) => None,
        _ => {
            return Err(Error::Config(
                "cavity_f and cavity_q must be given together".into(),
            ))
        }
    };
    let decoherence = if p.contains("decoherence_rate") {
        Some(p.quantity("decoherence_rate", Unit::Hertz)?)
    } else {
        None
    };
    let magnetic = if p.contains("b_trans") {
        Some(coupling::magnetic_dipole_coupling(
            p.quantity("b_trans", Unit::Tesla)?,
            p.number_or("matrix_element", 0.5)?,
            p.number_or("g_s", 2.0)?,
            None,
        )?)
    } else {
        None
    };
    let ensemble = match (magnetic, p.contains("ensemble_n")) {
        (Some(g), true) => Some(coupling::ensemble_coupling(
            g,
            p.integer_or("ensemble_n", 1)? as u64,
        )?),
        (None, true) => {
            return Err(Error::Config(
                "ensemble_n needs b_trans to set the single-ion coupling".into(),
            ))
        }
        _ => None,
    };

    let mut columns = vec![
        Column::new("c_F", "input"),
        Column::new("species", "input"),
        Column::new("g0_over_2pi_Hz", "g0=e*zeta*z0*dq0/(r*C0*hbar)"),
    ];
    if mode == RunMode::Direct {
        columns.extend([
            Column::new("z0_m", "z0=sqrt(hbar/(2*m*omega_i))"),
            Column::new("dq0_C", "dq0=sqrt(hbar/(2*Z)), Z=1/(omega_lc*C)"),
            Column::new("g_text_over_2pi_Hz", "g=eta*g0"),
            Column::new("g_hamiltonian_over_2pi_Hz", "G=(2/3)*eta*g0"),
            Column::new("decoherence_rate_per_s", PLUMBING),
            Column::new("regime", "strong iff eta*g0 > max(kappa, decoherence)"),
        ]);
        if kappa.is_some() {
            columns.push(Column::new("kappa_over_2pi_Hz", "kappa=omega/Q"));
        }
        if magnetic.is_some() {
            columns.push(Column::new(
                "g_magnetic_over_2pi_Hz",
                "g=mu_B*g_s*<m>*B/(sqrt(2)*hbar)",
            ));
        }
        if ensemble.is_some() {
            columns.push(Column::new("g_ensemble_over_2pi_Hz", "g_ens=sqrt(N)*g"));
        }
    }
    let mut report = Report::new(columns);

    for symbol in species_list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let ion = lookup_ion(symbol)?;
        let z0 = if p.contains("z0") {
            p.quantity("z0", Unit::Meter)?
        } else {
            coupling::harmonic_oscillator_length(ion.mass, omega_i)?
        };
        let dq0 = if p.contains("dq0") {
            p.quantity("dq0", Unit::Coulomb)?
        } else {
            let z = 1.0 / (omega_lc * c0);
            (HBAR / (2.0 * z)).sqrt()
        };
        let result = coupling::motional_coupling(&coupling::MotionalCouplingInput {
            zeta_geom: zeta,
            ion_height: r,
            c0,
            z0,
            dq0,
            eta,
            omega_i,
            omega_lc,
            delta,
            kappa,
            decoherence,
        })?;

        let mut row = vec![
            Value::Num(c0),
            Value::text(symbol),
            Value::Num(result.g0 / TWO_PI),
        ];
        if mode == RunMode::Direct {
            row.extend([
                Value::Num(z0),
                Value::Num(dq0),
                Value::Num(result.g_text / TWO_PI),
                Value::Num(result.g_hamiltonian / TWO_PI),
                Value::Num(result.decoherence),
                Value::text(&result.regime.to_string()),
            ]);
            if let Some(k) = kappa {
                row.push(Value::Num(k / TWO_PI));
            }
            if let Some(g) = magnetic {
                row.push(Value::Num(g / TWO_PI));
            }
            if let Some(g) = ensemble {
                row.push(Value::Num(g / TWO_PI));
            }
        }
        report.push_row(row);
    }
    Ok(report)
}

fn run_dynamics(cfg: &RunConfig) -> Result<Report> {
    let p = &cfg.params;
    let g_eff = if p.contains("g_eff_over_2pi") {
        TWO_PI * p.quantity("g_eff_over_2pi", Unit::Hertz)?
    } else {
        let g0 = TWO_PI * p.quantity("g0_over_2pi", Unit::Hertz).map_err(|_| {
            Error::Config("dynamics needs g_eff_over_2pi or g0_over_2pi".into())
        })?;
        let eta = p.number_or("eta", 0.3)?;
        match p.text_or("convention", "hamiltonian")?.as_str() {
            "hamiltonian" => 2.0 / 3.0 * eta * g0,
            "text" => eta * g0,
            other => {
                return Err(Error::Config(format!(
                    "convention must be hamiltonian|text, got `{other}`"
                )))
            }
        }
    };
    if g_eff <= 0.0 {
        return Err(Error::Domain(format!("effective coupling must be positive, got {g_eff}")));
    }
    let delta = TWO_PI * p.quantity_or("delta_f", Unit::Hertz, 0.0)?;
    let kappa = p.quantity_or("kappa_rate", Unit::Hertz, 0.0)?;
    let gamma = p.quantity_or("gamma_rate", Unit::Hertz, 0.0)?;
    let n_trunc = p.integer_or("n_trunc", 4)? as usize;
    let t_swap = std::f64::consts::PI / (2.0 * g_eff);
    let t_end = p.quantity_or("t_end", Unit::Second, 2.0 * t_swap)?;

    let mut run_cfg = DynamicsConfig::for_rates(g_eff, delta, kappa, gamma, t_end);
    if p.contains("dt") {
        run_cfg.dt = p.quantity("dt", Unit::Second)?;
    }

    let initial = TwoModeState::fock(n_trunc, 1, 0)?;
    let initial = if kappa > 0.0 || gamma > 0.0 { initial.to_density() } else { initial };
    let traj = dynamics::evolve(&initial, &run_cfg)?;

    let stride = match p.integer_or("record_stride", 0)? {
        0 => (traj.points.len() / 1000).max(1),
        s => s as usize,
    };
    let mut report = Report::new(vec![
        Column::new("t_s", PLUMBING),
        Column::new("n_lc", "<a†a>"),
        Column::new("n_ion", "<b†b>"),
        Column::new("p_swap", "population of |0,1>"),
    ]);
    let last = traj.points.len() - 1;
    for (i, pt) in traj.points.iter().enumerate() {
        if i % stride == 0 || i == last {
            report.push_row(vec![
                Value::Num(pt.t),
                Value::Num(pt.n_lc),
                Value::Num(pt.n_ion),
                Value::Num(pt.p_swap),
            ]);
        }
    }
    let peak = traj.points.iter().map(|pt| pt.p_swap).fold(0.0, f64::max);
    report.summary = Some(format!(
        "swap time = {:.4e} s, peak transfer = {:.6}",
        t_swap, peak
    ));
    Ok(report)
}

fn run_budget(cfg: &RunConfig) -> Result<Report> {
    let stages = cfg.stages.clone().unwrap_or_else(Stage::default_chain);
    let result = cryo_budget::aggregate_budget(&cfg.items, &stages)?;

    let mut report = Report::new(vec![
        Column::new("stage", "input"),
        Column::new("temperature_K", "input"),
        Column::new("load_W", "sum of anchored loads"),
        Column::new("cooling_power_W", "input"),
        Column::new("noise_density_J_per_Hz", "P_th/bandwidth = kB*T"),
        Column::new("status", "load <= cooling power"),
    ]);
    for s in &result.per_stage {
        report.push_row(vec![
            Value::text(&s.name),
            Value::Num(s.temperature),
            Value::Num(s.total_load),
            Value::Num(s.cooling_power),
            Value::Num(cryo_budget::thermal_noise_density(s.temperature)?),
            Value::text(if s.ok { "pass" } else { "FAIL" }),
        ]);
    }
    report.budget_pass = Some(result.pass);
    report.summary = Some(format!(
        "budget {}; outside (unbudgeted): {} W",
        if result.pass { "pass" } else { "FAIL" },
        result.outside_total
    ));
    Ok(report)
}
