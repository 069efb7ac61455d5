//! Dilution-refrigerator heat and noise budget.
//!
//! Conduction down a wire carries `P = λ·δT·A/L`; thermal noise density is
//! Johnson–Nyquist `k_B·T` per hertz of bandwidth; input microwave lines
//! need ≥60 dB of thermally anchored attenuation to push 300 K noise below
//! the millikelvin floor. Heat loads are aggregated per stage and compared
//! against the stage cooling powers — the binding constraint is the
//! mixing-chamber circuit's ~10 mW at 100 mK.
//!
//! One detector-side number lives here too: the quasiparticle diffusion
//! length `l ≈ √(D·τ_qp)` that sets how far broken Cooper pairs travel in a
//! kinetic-inductance detector before recombining.

use crate::error::{Error, Result};
use crate::quantities::constants::BOLTZMANN;

/// Sink name for loads dumped outside the fridge; recorded but excluded
/// from stage totals.
pub const OUTSIDE_SINK: &str = "outside";

/// One temperature stage of the refrigerator.
#[derive(Debug, Clone, PartialEq)]
pub struct Stage {
    pub name: String,
    /// K
    pub temperature: f64,
    /// W available at this stage.
    pub cooling_power: f64,
}

impl Stage {
    pub fn new(name: &str, temperature: f64, cooling_power: f64) -> Self {
        Stage { name: name.to_string(), temperature, cooling_power }
    }

    /// The stage set used throughout: 300 K plate, 40 K and 4 K shields,
    /// 1 K still, 100 mK plate (10 mW) and 10 mK mixing chamber. Cooling
    /// powers other than the 100 mK figure are typical machine values;
    /// the ambient plate gets a nominal 1 kW so it never binds.
    pub fn default_chain() -> Vec<Stage> {
        vec![
            Stage::new("300K", 300.0, 1e3),
            Stage::new("40K", 40.0, 30.0),
            Stage::new("4K", 4.0, 1.5),
            Stage::new("still", 1.0, 30e-3),
            Stage::new("100mK", 0.1, 10e-3),
            Stage::new("mixing", 0.01, 20e-6),
        ]
    }
}

/// Require strictly decreasing temperatures along the chain.
pub fn validate_stage_chain(stages: &[Stage]) -> Result<()> {
    if stages.is_empty() {
        return Err(Error::Config("stage chain is empty".into()));
    }
    for pair in stages.windows(2) {
        if pair[1].temperature >= pair[0].temperature {
            return Err(Error::Config(format!(
                "stage temperatures must strictly decrease: {} ({} K) → {} ({} K)",
                pair[0].name, pair[0].temperature, pair[1].name, pair[1].temperature
            )));
        }
    }
    Ok(())
}

/// A heat source anchored at one stage.
#[derive(Debug, Clone, PartialEq)]
pub struct BudgetItem {
    pub source: String,
    /// W
    pub load: f64,
    /// Stage name, or [`OUTSIDE_SINK`].
    pub sink_stage: String,
}

/// Conducted power `λ·δT·A/L` (W) through a wire of cross-section `area`
/// and length `length` with mean conductivity `lambda_mean`.
pub fn conduction_load(lambda_mean: f64, area: f64, length: f64, delta_t: f64) -> Result<f64> {
    if lambda_mean <= 0.0 || area <= 0.0 || length <= 0.0 {
        return Err(Error::Domain(format!(
            "conductivity and geometry must be positive (λ={lambda_mean}, A={area}, L={length})"
        )));
    }
    if delta_t < 0.0 {
        return Err(Error::Domain(format!("temperature drop must be ≥ 0, got {delta_t}")));
    }
    Ok(lambda_mean * delta_t * area / length)
}

/// Johnson–Nyquist noise power density k_B·T (J/Hz = W/Hz).
pub fn thermal_noise_density(temperature: f64) -> Result<f64> {
    if temperature < 0.0 {
        return Err(Error::Domain(format!(
            "temperature must be ≥ 0, got {temperature}"
        )));
    }
    Ok(BOLTZMANN * temperature)
}

/// Result of cascading attenuators down the input line.
#[derive(Debug, Clone, PartialEq)]
pub struct AttenuationChainResult {
    /// Noise temperature presented at the cold end (K).
    pub output_noise_temp: f64,
    /// Heat each attenuator dumps into its stage (W) for the given input
    /// signal power.
    pub dissipated_per_stage: Vec<f64>,
    /// Product of all attenuation factors.
    pub total_attenuation: f64,
}

/// Cascade matched resistive attenuators anchored at fridge stages.
///
/// Input noise is divided by each attenuation factor while every attenuator
/// re-emits its own stage temperature:
///
/// ```text
/// T_out = T_in/ΠAᵢ + Σᵢ Tᵢ·(1 − 1/Aᵢ)/Π_{j>i}Aⱼ
/// ```
///
/// Each stage absorbs `(1 − 1/Aᵢ)` of the signal power incident on it.
pub fn attenuation_chain(
    input_noise_temp: f64,
    stages: &[(Stage, f64)],
    signal_power: f64,
) -> Result<AttenuationChainResult> {
    if input_noise_temp < 0.0 || signal_power < 0.0 {
        return Err(Error::Domain(
            "input noise temperature and signal power must be ≥ 0".into(),
        ));
    }
    let mut factors = Vec::with_capacity(stages.len());
    for (stage, db) in stages {
        if *db < 0.0 {
            return Err(Error::Domain(format!(
                "attenuation at {} must be ≥ 0 dB, got {db}",
                stage.name
            )));
        }
        factors.push(10f64.powf(db / 10.0));
    }

    let mut noise_temp = input_noise_temp;
    let mut incident = signal_power;
    let mut dissipated = Vec::with_capacity(stages.len());
    for ((stage, _), a) in stages.iter().zip(&factors) {
        noise_temp = noise_temp / a + stage.temperature * (1.0 - 1.0 / a);
        dissipated.push(incident * (1.0 - 1.0 / a));
        incident /= a;
    }
    Ok(AttenuationChainResult {
        output_noise_temp: noise_temp,
        dissipated_per_stage: dissipated,
        total_attenuation: factors.iter().product(),
    })
}

/// Per-stage totals of an aggregated budget.
#[derive(Debug, Clone, PartialEq)]
pub struct StageLoad {
    pub name: String,
    pub temperature: f64,
    /// Summed load anchored here (W).
    pub total_load: f64,
    pub cooling_power: f64,
    /// total_load ≤ cooling_power.
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BudgetReport {
    pub per_stage: Vec<StageLoad>,
    /// Loads recorded against [`OUTSIDE_SINK`] (W); not budgeted.
    pub outside_total: f64,
    /// Every stage within its cooling power.
    pub pass: bool,
}

/// Sum item loads per sink stage and compare against cooling powers.
pub fn aggregate_budget(items: &[BudgetItem], stages: &[Stage]) -> Result<BudgetReport> {
    validate_stage_chain(stages)?;
    for item in items {
        if item.load < 0.0 {
            return Err(Error::Domain(format!(
                "load for `{}` must be ≥ 0, got {}",
                item.source, item.load
            )));
        }
    }
    let mut outside_total = 0.0;
    let mut totals = vec![0.0f64; stages.len()];
    for item in items {
        if item.sink_stage == OUTSIDE_SINK {
            outside_total += item.load;
            continue;
        }
        match stages.iter().position(|s| s.name == item.sink_stage) {
            Some(i) => totals[i] += item.load,
            None => {
                return Err(Error::Config(format!(
                    "item `{}` anchors to unknown stage `{}`; stages: {}",
                    item.source,
                    item.sink_stage,
                    stages.iter().map(|s| s.name.as_str()).collect::<Vec<_>>().join(", ")
                )))
            }
        }
    }
    let per_stage: Vec<StageLoad> = stages
        .iter()
        .zip(&totals)
        .map(|(s, &total)| StageLoad {
            name: s.name.clone(),
            temperature: s.temperature,
            total_load: total,
            cooling_power: s.cooling_power,
            ok: total <= s.cooling_power,
        })
        .collect();
    let pass = per_stage.iter().all(|s| s.ok);
    Ok(BudgetReport { per_stage, outside_total, pass })
}

/// Quasiparticle diffusion length √(D·τ_qp) (m).
pub fn quasiparticle_diffusion_length(diffusion: f64, tau_qp: f64) -> Result<f64> {
    if diffusion <= 0.0 {
        return Err(Error::Domain(format!(
            "diffusion constant must be positive, got {diffusion}"
        )));
    }
    if tau_qp < 0.0 {
        return Err(Error::Domain(format!("lifetime must be ≥ 0, got {tau_qp}")));
    }
    Ok((diffusion * tau_qp).sqrt())
}
