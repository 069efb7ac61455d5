//! Run configuration: TOML ingestion, typed parameters and sweep specs.
//!
//! Configs are TOML with unit-suffixed string values:
//!
//! ```toml
//! scenario = "circuit"
//!
//! [params]
//! c0 = "46fF"
//! l0 = "400nH"
//!
//! [sweep]            # optional
//! parameter = "c0"
//! start = "2fF"
//! stop = "50fF"
//! n_points = 30
//! scale = "log"
//! ```
//!
//! Budget configs add `[[stages]]` and `[[items]]` arrays. String values
//! parse as quantities where they can and stay text where they cannot
//! (species names, scheme selectors); plain numbers are dimensionless. In
//! strict mode any parameter key the scenario does not declare is an
//! error.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use sha2::{Digest, Sha256};

use crate::cryo_budget::{BudgetItem, Stage};
use crate::error::{Error, Result};
use crate::quantities::{parse_quantity, Quantity, Unit};

use super::scenario::Scenario;

/// One configuration value.
#[derive(Debug, Clone, PartialEq)]
pub enum ParamValue {
    Quantity(Quantity),
    Text(String),
    Integer(i64),
    Bool(bool),
}

impl ParamValue {
    /// Parse a raw string the way TOML string values are treated: quantity
    /// if it parses, text otherwise.
    pub fn from_raw(s: &str) -> ParamValue {
        match parse_quantity(s) {
            Ok(q) => ParamValue::Quantity(q),
            Err(_) => ParamValue::Text(s.to_string()),
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            ParamValue::Quantity(_) => "quantity",
            ParamValue::Text(_) => "text",
            ParamValue::Integer(_) => "integer",
            ParamValue::Bool(_) => "bool",
        }
    }
}

/// Ordered parameter map with unit-checked accessors.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Params(pub BTreeMap<String, ParamValue>);

impl Params {
    pub fn set(&mut self, key: &str, value: ParamValue) {
        self.0.insert(key.to_string(), value);
    }

    pub fn contains(&self, key: &str) -> bool {
        self.0.contains_key(key)
    }

    /// Required quantity in base SI, checked against `unit`.
    pub fn quantity(&self, key: &str, unit: Unit) -> Result<f64> {
        match self.0.get(key) {
            Some(ParamValue::Quantity(q)) => q.expect_unit(unit, key),
            Some(other) => Err(Error::UnitMismatch {
                key: key.to_string(),
                expected: unit.symbol().to_string(),
                actual: other.kind().to_string(),
            }),
            None => Err(Error::Config(format!("missing required parameter `{key}`"))),
        }
    }

    pub fn quantity_or(&self, key: &str, unit: Unit, default: f64) -> Result<f64> {
        if self.contains(key) {
            self.quantity(key, unit)
        } else {
            Ok(default)
        }
    }

    /// Dimensionless number; integers are accepted too.
    pub fn number_or(&self, key: &str, default: f64) -> Result<f64> {
        match self.0.get(key) {
            None => Ok(default),
            Some(ParamValue::Integer(i)) => Ok(*i as f64),
            Some(ParamValue::Quantity(q)) => q.expect_unit(Unit::Dimensionless, key),
            Some(other) => Err(Error::UnitMismatch {
                key: key.to_string(),
                expected: "dimensionless".to_string(),
                actual: other.kind().to_string(),
            }),
        }
    }

    pub fn integer_or(&self, key: &str, default: i64) -> Result<i64> {
        match self.0.get(key) {
            None => Ok(default),
            Some(ParamValue::Integer(i)) => Ok(*i),
            Some(ParamValue::Quantity(q)) if q.unit == Unit::Dimensionless => Ok(q.value as i64),
            Some(other) => Err(Error::UnitMismatch {
                key: key.to_string(),
                expected: "integer".to_string(),
                actual: other.kind().to_string(),
            }),
        }
    }

    pub fn text_or(&self, key: &str, default: &str) -> Result<String> {
        match self.0.get(key) {
            None => Ok(default.to_string()),
            Some(ParamValue::Text(s)) => Ok(s.clone()),
            Some(other) => Err(Error::UnitMismatch {
                key: key.to_string(),
                expected: "text".to_string(),
                actual: other.kind().to_string(),
            }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepScale {
    Linear,
    Log,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    /// Base scenario to evaluate per point (needed when the config's own
    /// scenario is `sweep`).
    pub scenario: Option<Scenario>,
    /// Target parameter key.
    pub parameter: String,
    pub start: Quantity,
    pub stop: Quantity,
    pub n_points: usize,
    pub scale: SweepScale,
}

impl SweepSpec {
    /// The sweep values, linearly or geometrically spaced, start to stop
    /// inclusive.
    pub fn values(&self) -> Result<Vec<Quantity>> {
        if self.start.unit != self.stop.unit {
            return Err(Error::Config(format!(
                "sweep bounds disagree on units: {} vs {}",
                self.start.unit, self.stop.unit
            )));
        }
        if self.n_points == 0 {
            return Err(Error::Config("sweep needs n_points ≥ 1".into()));
        }
        let (a, b) = (self.start.value, self.stop.value);
        if self.scale == SweepScale::Log && (a <= 0.0 || b <= 0.0) {
            return Err(Error::Config(format!(
                "log sweep requires positive bounds, got [{a}, {b}]"
            )));
        }
        let n = self.n_points;
        let values = (0..n)
            .map(|i| {
                let f = if n == 1 { 0.0 } else { i as f64 / (n - 1) as f64 };
                let v = match self.scale {
                    SweepScale::Linear => a + (b - a) * f,
                    SweepScale::Log => a * (b / a).powf(f),
                };
                Quantity::new(v, self.start.unit)
            })
            .collect();
        Ok(values)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub scenario: Scenario,
    pub params: Params,
    pub sweep: Option<SweepSpec>,
    /// Budget scenario stage chain (defaulted when absent).
    pub stages: Option<Vec<Stage>>,
    /// Budget scenario items.
    pub items: Vec<BudgetItem>,
    /// SHA-256 of the input bytes, for report metadata.
    pub input_sha256: String,
    pub strict: bool,
}

impl RunConfig {
    pub fn new(scenario: Scenario) -> Self {
        RunConfig {
            scenario,
            params: Params::default(),
            sweep: None,
            stages: None,
            items: Vec::new(),
            input_sha256: String::new(),
            strict: false,
        }
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// Load and validate a TOML config file.
pub fn load_config(path: &Path) -> Result<RunConfig> {
    let bytes = std::fs::read(path)
        .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
    let text = String::from_utf8(bytes.clone())
        .map_err(|e| Error::Config(format!("{} is not UTF-8: {e}", path.display())))?;
    let mut cfg = parse_config(&text)?;
    cfg.input_sha256 = sha256_hex(&bytes);
    Ok(cfg)
}

/// Parse config text. TOML syntax errors surface with line/column from the
/// parser.
pub fn parse_config(text: &str) -> Result<RunConfig> {
    let doc: toml::Table = text
        .parse()
        .map_err(|e: toml::de::Error| Error::Config(format!("TOML parse error: {e}")))?;

    const TOP_KEYS: [&str; 5] = ["scenario", "params", "sweep", "stages", "items"];
    for key in doc.keys() {
        if !TOP_KEYS.contains(&key.as_str()) {
            return Err(Error::Config(format!(
                "unknown top-level key `{key}` (expected one of {})",
                TOP_KEYS.join(", ")
            )));
        }
    }

    let scenario_name = doc
        .get("scenario")
        .and_then(|v| v.as_str())
        .ok_or_else(|| Error::Config("missing `scenario` key".into()))?;
    let scenario = Scenario::from_str(scenario_name)?;

    let mut cfg = RunConfig::new(scenario);
    cfg.input_sha256 = sha256_hex(text.as_bytes());

    if let Some(params) = doc.get("params") {
        let table = params
            .as_table()
            .ok_or_else(|| Error::Config("`params` must be a table".into()))?;
        for (key, value) in table {
            cfg.params.set(key, toml_value_to_param(key, value)?);
        }
    }

    if let Some(sweep) = doc.get("sweep") {
        let table = sweep
            .as_table()
            .ok_or_else(|| Error::Config("`sweep` must be a table".into()))?;
        cfg.sweep = Some(parse_sweep(table)?);
    }

    if let Some(stages) = doc.get("stages") {
        let arr = stages
            .as_array()
            .ok_or_else(|| Error::Config("`stages` must be an array of tables".into()))?;
        let mut chain = Vec::new();
        for (i, entry) in arr.iter().enumerate() {
            let t = entry
                .as_table()
                .ok_or_else(|| Error::Config(format!("stages[{i}] must be a table")))?;
            chain.push(Stage {
                name: require_str(t, "name", &format!("stages[{i}]"))?,
                temperature: require_quantity(t, "temperature", Unit::Kelvin, &format!("stages[{i}]"))?,
                cooling_power: require_quantity(t, "cooling_power", Unit::Watt, &format!("stages[{i}]"))?,
            });
        }
        cfg.stages = Some(chain);
    }

    if let Some(items) = doc.get("items") {
        let arr = items
            .as_array()
            .ok_or_else(|| Error::Config("`items` must be an array of tables".into()))?;
        for (i, entry) in arr.iter().enumerate() {
            let t = entry
                .as_table()
                .ok_or_else(|| Error::Config(format!("items[{i}] must be a table")))?;
            cfg.items.push(BudgetItem {
                source: require_str(t, "source", &format!("items[{i}]"))?,
                load: require_quantity(t, "load", Unit::Watt, &format!("items[{i}]"))?,
                sink_stage: require_str(t, "sink", &format!("items[{i}]"))?,
            });
        }
    }

    Ok(cfg)
}

fn toml_value_to_param(key: &str, value: &toml::Value) -> Result<ParamValue> {
    match value {
        toml::Value::String(s) => Ok(ParamValue::from_raw(s)),
        toml::Value::Integer(i) => Ok(ParamValue::Integer(*i)),
        toml::Value::Float(f) => Ok(ParamValue::Quantity(Quantity::dimensionless(*f))),
        toml::Value::Boolean(b) => Ok(ParamValue::Bool(*b)),
        other => Err(Error::Config(format!(
            "parameter `{key}` has unsupported TOML type {}",
            other.type_str()
        ))),
    }
}

fn require_str(t: &toml::Table, key: &str, ctx: &str) -> Result<String> {
    t.get(key)
        .and_then(|v| v.as_str())
        .map(str::to_string)
        .ok_or_else(|| Error::Config(format!("{ctx} needs a string `{key}`")))
}

fn require_quantity(t: &toml::Table, key: &str, unit: Unit, ctx: &str) -> Result<f64> {
    let raw = t
        .get(key)
        .ok_or_else(|| Error::Config(format!("{ctx} needs `{key}`")))?;
    match raw {
        toml::Value::String(s) => parse_quantity(s)?.expect_unit(unit, &format!("{ctx}.{key}")),
        toml::Value::Float(f) if unit == Unit::Dimensionless => Ok(*f),
        _ => Err(Error::Config(format!(
            "{ctx}.{key} must be a quantity string like \"10mW\""
        ))),
    }
}

fn parse_sweep(t: &toml::Table) -> Result<SweepSpec> {
    let scenario = match t.get("scenario") {
        Some(v) => {
            let name = v
                .as_str()
                .ok_or_else(|| Error::Config("sweep.scenario must be a string".into()))?;
            Some(Scenario::from_str(name)?)
        }
        None => None,
    };
    let parameter = require_str(t, "parameter", "sweep")?;
    let start = parse_quantity(
        t.get("start")
            .and_then(|v| v.as_str())
            .ok_or_else(|| Error::Config("sweep.start must be a quantity string".into()))?,
    )?;
    let stop = parse_quantity(
        t.get("stop")
            .and_then(|v| v.as_str())
            .ok_or_else(|| Error::Config("sweep.stop must be a quantity string".into()))?,
    )?;
    let n_points = t
        .get("n_points")
        .and_then(|v| v.as_integer())
        .ok_or_else(|| Error::Config("sweep.n_points must be an integer".into()))?;
    if n_points < 1 {
        return Err(Error::Config("sweep.n_points must be ≥ 1".into()));
    }
    let scale = match t.get("scale").and_then(|v| v.as_str()).unwrap_or("linear") {
        "linear" => SweepScale::Linear,
        "log" => SweepScale::Log,
        other => {
            return Err(Error::Config(format!(
                "sweep.scale must be linear|log, got `{other}`"
            )))
        }
    };
    Ok(SweepSpec { scenario, parameter, start, stop, n_points: n_points as usize, scale })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_geometry_config() {
        let cfg = parse_config("scenario = \"geometry\"\n[params]\na = \"18um\"\n").unwrap();
        assert_eq!(cfg.scenario, Scenario::Geometry);
        assert_eq!(cfg.params.quantity("a", Unit::Meter).unwrap(), 18e-6);
    }

    #[test]
    fn circuit_config_with_design_values() {
        let cfg = parse_config(
            "scenario = \"circuit\"\n[params]\nc0 = \"46fF\"\nl0 = \"400nH\"\n",
        )
        .unwrap();
        assert_eq!(cfg.params.quantity("c0", Unit::Farad).unwrap(), 46e-15);
        assert_eq!(cfg.params.quantity("l0", Unit::Henry).unwrap(), 400e-9);
    }

    #[test]
    fn unit_mismatch_names_the_key() {
        let cfg = parse_config("scenario = \"geometry\"\n[params]\na = \"18kg\"\n").unwrap();
        match cfg.params.quantity("a", Unit::Meter) {
            Err(Error::UnitMismatch { key, .. }) => assert_eq!(key, "a"),
            other => panic!("expected unit mismatch, got {other:?}"),
        }
    }

    #[test]
    fn toml_error_carries_location() {
        match parse_config("scenario = \"geometry\"\n[params\na = 3\n") {
            Err(Error::Config(msg)) => assert!(msg.contains("line"), "{msg}"),
            other => panic!("expected config error, got {other:?}"),
        }
    }

    #[test]
    fn unknown_top_level_key_rejected() {
        assert!(parse_config("scenario = \"geometry\"\nbogus = 1\n").is_err());
        assert!(parse_config("[params]\na = \"1m\"\n").is_err(), "scenario is required");
        assert!(parse_config("scenario = \"warp\"\n").is_err());
    }

    #[test]
    fn sweep_values_linear_and_log() {
        let spec = SweepSpec {
            scenario: None,
            parameter: "c0".into(),
            start: parse_quantity("2fF").unwrap(),
            stop: parse_quantity("50fF").unwrap(),
            n_points: 3,
            scale: SweepScale::Log,
        };
        let vals = spec.values().unwrap();
        assert_eq!(vals.len(), 3);
        assert_eq!(vals[0].value, 2e-15);
        assert_eq!(vals[2].value, 50e-15);
        // geometric midpoint
        let mid = (2e-15f64 * 50e-15).sqrt();
        assert!((vals[1].value - mid).abs() / mid < 1e-12);

        let lin = SweepSpec { scale: SweepScale::Linear, ..spec.clone() };
        let vals = lin.values().unwrap();
        assert!((vals[1].value - 26e-15).abs() < 1e-26);

        let bad = SweepSpec {
            start: parse_quantity("0fF").unwrap(),
            scale: SweepScale::Log,
            ..spec
        };
        assert!(bad.values().is_err());
    }

    #[test]
    fn budget_arrays_parse() {
        let cfg = parse_config(
            r#"scenario = "budget"

[[stages]]
name = "40K"
temperature = "40K"
cooling_power = "30W"

[[stages]]
name = "4K"
temperature = "4K"
cooling_power = "1.5W"

[[items]]
source = "laser beams"
load = "1.8mW"
sink = "4K"
"#,
        )
        .unwrap();
        let stages = cfg.stages.unwrap();
        assert_eq!(stages.len(), 2);
        assert_eq!(stages[0].temperature, 40.0);
        assert_eq!(cfg.items[0].load, 1.8e-3);
        assert_eq!(cfg.items[0].sink_stage, "4K");
    }

    #[test]
    fn species_strings_stay_text() {
        let cfg =
            parse_config("scenario = \"coupling\"\n[params]\nspecies = \"Be-9\"\n").unwrap();
        assert_eq!(cfg.params.text_or("species", "x").unwrap(), "Be-9");
    }
}
