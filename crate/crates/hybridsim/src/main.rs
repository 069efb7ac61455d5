//! `hybridsim` — batch CLI over the workbench scenarios.
//!
//! Every subcommand accepts `--config <file.toml>` plus repeatable
//! `--set key=value` overrides; a few high-traffic parameters also have
//! dedicated flags. Output defaults to a human table on stdout; `--format
//! csv|json|svg` with `--out` writes machine artifacts. Exit codes: 0 ok,
//! 1 computation/domain failure (including a failed heat budget), 2
//! configuration problems.

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};

use hybridsim::error::Error;
use hybridsim::workbench::{
    self, load_config, OutputFormat, ParamValue, RunConfig, Scenario,
};

#[derive(Parser)]
#[command(name = "hybridsim", version, about = "Trapped-ion / superconducting-circuit design workbench")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Default)]
struct Common {
    /// TOML config file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Set or override a parameter, e.g. --set c0=46fF (repeatable).
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// table | csv | json | svg.
    #[arg(long, default_value = "table")]
    format: String,
    /// Reject parameters the scenario does not declare.
    #[arg(long)]
    strict: bool,
    /// Stamp the report with the current unix time (breaks byte-for-byte
    /// reproducibility of the output).
    #[arg(long)]
    stamp: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Surface-trap geometry: ion height, optimum widths, axial checks.
    Geometry {
        #[command(flatten)]
        common: Common,
        /// rf electrode separation, e.g. 18um.
        #[arg(long)]
        a: Option<String>,
        /// First rf electrode width (with --c).
        #[arg(long)]
        b: Option<String>,
        /// Second rf electrode width (with --b).
        #[arg(long)]
        c: Option<String>,
    },
    /// LC circuit quantities and zero-point fluctuations.
    Circuit {
        #[command(flatten)]
        common: Common,
        /// Total static capacitance, e.g. 46fF.
        #[arg(long)]
        c0: Option<String>,
        /// Inductance, e.g. 400nH.
        #[arg(long)]
        l0: Option<String>,
        /// Force the impedance used for the zero-point fluctuations.
        #[arg(long = "force-z")]
        force_z: Option<String>,
    },
    /// Plate-separation sweep of the ion-interaction capacitor (CSV curve).
    Plates {
        #[command(flatten)]
        common: Common,
    },
    /// Capacitance waveform, harmonic, sideband, beam and mode tables.
    Modulation {
        #[command(flatten)]
        common: Common,
        /// waveform | harmonics | sidebands | beam | mode_check.
        #[arg(long)]
        table: Option<String>,
    },
    /// Motional (and optional magnetic/ensemble) coupling strengths.
    Coupling {
        #[command(flatten)]
        common: Common,
        /// Ion species symbol or comma list, e.g. Be-9 or Be-9,Yb-171.
        #[arg(long)]
        species: Option<String>,
    },
    /// Photon/motion exchange trajectory.
    Dynamics {
        #[command(flatten)]
        common: Common,
    },
    /// Heat-budget aggregation; exits 1 when a stage is over budget.
    Budget {
        #[command(flatten)]
        common: Common,
    },
    /// Run a config's [sweep] block.
    Sweep {
        #[command(flatten)]
        common: Common,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn execute(cli: Cli) -> Result<ExitCode, Error> {
    let (scenario, common, flag_params) = match cli.command {
        Command::Geometry { common, a, b, c } => (
            Scenario::Geometry,
            common,
            vec![("a", a), ("b", b), ("c", c)],
        ),
        Command::Circuit { common, c0, l0, force_z } => (
            Scenario::Circuit,
            common,
            vec![("c0", c0), ("l0", l0), ("force_z", force_z)],
        ),
        Command::Plates { common } => (Scenario::Plates, common, vec![]),
        Command::Modulation { common, table } => {
            (Scenario::Modulation, common, vec![("table", table)])
        }
        Command::Coupling { common, species } => {
            (Scenario::Coupling, common, vec![("species", species)])
        }
        Command::Dynamics { common } => (Scenario::Dynamics, common, vec![]),
        Command::Budget { common } => (Scenario::Budget, common, vec![]),
        Command::Sweep { common } => (Scenario::Sweep, common, vec![]),
    };

    let mut cfg = match &common.config {
        Some(path) => {
            let cfg = load_config(path)?;
            match scenario {
                Scenario::Sweep => {
                    if cfg.sweep.is_none() {
                        return Err(Error::Config(format!(
                            "{} has no [sweep] block",
                            path.display()
                        )));
                    }
                }
                s => {
                    if cfg.scenario != s {
                        return Err(Error::Config(format!(
                            "{} declares scenario `{}` but the `{s}` subcommand was invoked",
                            path.display(),
                            cfg.scenario
                        )));
                    }
                    if cfg.sweep.is_some() {
                        return Err(Error::Config(
                            "config contains a [sweep] block; run it with the `sweep` subcommand"
                                .into(),
                        ));
                    }
                }
            }
            cfg
        }
        None => RunConfig::new(scenario),
    };
    cfg.strict = common.strict;

    for (key, value) in flag_params {
        if let Some(v) = value {
            cfg.params.set(key, ParamValue::from_raw(&v));
        }
    }
    for kv in &common.set {
        let (key, value) = kv.split_once('=').ok_or_else(|| {
            Error::Config(format!("--set expects KEY=VALUE, got `{kv}`"))
        })?;
        cfg.params.set(key.trim(), ParamValue::from_raw(value.trim()));
    }
    if common.config.is_none() {
        // no file to hash: fingerprint the effective parameters instead
        let canon: Vec<String> = cfg
            .params
            .0
            .iter()
            .map(|(k, v)| format!("{k}={v:?}"))
            .collect();
        cfg.input_sha256 =
            workbench::config::sha256_hex(format!("{scenario}:{}", canon.join(";")).as_bytes());
    }

    let mut report = workbench::run(&cfg)?;
    if common.stamp {
        let unix = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        report.metadata.generated_at = Some(format!("unix:{unix}"));
    }

    let format = OutputFormat::from_str(&common.format)?;
    let rendered = report.emit(format)?;
    match &common.out {
        Some(path) => std::fs::write(path, rendered.as_bytes())?,
        None => print!("{rendered}"),
    }
    if let Some(summary) = &report.summary {
        eprintln!("{summary}");
    }

    if report.budget_pass == Some(false) {
        return Ok(ExitCode::from(1));
    }
    Ok(ExitCode::SUCCESS)
}
