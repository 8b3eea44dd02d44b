//! Run configuration: a single JSON document with `model`, `cycle`,
//! `sweep` and `output` sections. Missing keys take the baseline defaults;
//! unknown keys are rejected.

use std::path::{Path, PathBuf};

use qdotto_core::{
    figure_preset, CycleSpec, Grid, JzConvention, ModelError, ModelParams, OttoError, PairingRule,
    StateTag, SweepAxis, SweepError, SweepSpec,
};
use serde::{Deserialize, Serialize};

use crate::CliError;

/// Couplings of the three-dot model. The dipole-field energy is set per
/// cycle endpoint in [`CycleSection`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ModelSection {
    /// Exciton energies ħωᵢ, meV.
    pub omega_mev: [f64; 3],
    /// Static dipolar coupling ħJ_z, meV.
    pub jz_mev: f64,
    /// Förster coupling λ, meV. Used by `cycle` and `entangle`; sweeps vary it.
    pub lambda_mev: f64,
    pub jz_convention: JzConvention,
}

impl Default for ModelSection {
    fn default() -> Self {
        let p = ModelParams::default();
        Self {
            omega_mev: p.omega_mev,
            jz_mev: p.jz_mev,
            lambda_mev: p.lambda_mev,
            jz_convention: p.jz_convention,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CycleSection {
    /// Uniform dipole-field energy ħΩ at the hot end, meV.
    pub omega_field_hot_mev: f64,
    /// Uniform dipole-field energy ħΩ at the cold end, meV.
    pub omega_field_cold_mev: f64,
    /// Hot-bath temperature, K.
    pub t_hot_k: f64,
    /// Cold-bath temperature, K.
    pub t_cold_k: f64,
    pub pairing: PairingRule,
}

impl Default for CycleSection {
    fn default() -> Self {
        let cs = CycleSpec::baseline();
        Self {
            omega_field_hot_mev: cs.omega_field_hot_mev,
            omega_field_cold_mev: cs.omega_field_cold_mev,
            t_hot_k: cs.t_hot_k,
            t_cold_k: cs.t_cold_k,
            pairing: cs.pairing,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepSection {
    pub vary: SweepAxis,
    pub grid: Grid,
    pub measure_entanglement: bool,
    /// Cycle state whose entanglement is measured: `cold` or `hot`.
    pub entanglement_at: StateTag,
}

impl Default for SweepSection {
    fn default() -> Self {
        Self {
            vary: SweepAxis::Lambda,
            grid: Grid::default(),
            measure_entanglement: false,
            entanglement_at: StateTag::ColdEnd,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputSection {
    pub format: Format,
    /// Output file; standard output when absent.
    pub path: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub model: ModelSection,
    pub cycle: CycleSection,
    pub sweep: SweepSection,
    pub output: OutputSection,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Config(format!("invalid config: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read config {}: {e}", path.display())))?;
        Self::from_json(&text).map_err(|e| match e {
            CliError::Config(msg) => CliError::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// Replaces model, cycle and sweep settings with those of a named preset.
    pub fn apply_preset(&mut self, name: &str) -> Result<(), CliError> {
        let spec = figure_preset(name).map_err(sweep_error)?;
        let p = &spec.base.base;
        self.model = ModelSection {
            omega_mev: p.omega_mev,
            jz_mev: p.jz_mev,
            lambda_mev: p.lambda_mev,
            jz_convention: p.jz_convention,
        };
        self.cycle = CycleSection {
            omega_field_hot_mev: spec.base.omega_field_hot_mev,
            omega_field_cold_mev: spec.base.omega_field_cold_mev,
            t_hot_k: spec.base.t_hot_k,
            t_cold_k: spec.base.t_cold_k,
            pairing: spec.base.pairing,
        };
        self.sweep = SweepSection {
            vary: spec.vary,
            grid: spec.grid,
            measure_entanglement: spec.measure_entanglement,
            entanglement_at: spec.entanglement_at,
        };
        Ok(())
    }

    /// The validated single-cycle specification.
    pub fn cycle_spec(&self) -> Result<CycleSpec, CliError> {
        let m = &self.model;
        let cs = CycleSpec {
            base: ModelParams {
                omega_mev: m.omega_mev,
                omega_field_mev: [self.cycle.omega_field_hot_mev; 3],
                jz_mev: m.jz_mev,
                lambda_mev: m.lambda_mev,
                jz_convention: m.jz_convention,
            },
            omega_field_hot_mev: self.cycle.omega_field_hot_mev,
            omega_field_cold_mev: self.cycle.omega_field_cold_mev,
            t_hot_k: self.cycle.t_hot_k,
            t_cold_k: self.cycle.t_cold_k,
            pairing: self.cycle.pairing,
        };
        cs.validate().map_err(otto_config_error)?;
        Ok(cs)
    }

    /// The validated sweep specification.
    pub fn sweep_spec(&self) -> Result<SweepSpec, CliError> {
        let spec = SweepSpec {
            base: self.cycle_spec()?,
            vary: self.sweep.vary,
            grid: self.sweep.grid,
            measure_entanglement: self.sweep.measure_entanglement,
            entanglement_at: self.sweep.entanglement_at,
        };
        spec.validate().map_err(sweep_error)?;
        Ok(spec)
    }
}

/// Prefixes the config section to a validation message so it names the
/// offending key as written in the config file.
fn otto_config_error(e: OttoError) -> CliError {
    match e {
        OttoError::InvalidSpec { field, reason } => {
            CliError::Config(format!("cycle.{field} {reason}"))
        }
        OttoError::Model(ModelError::NonFinite { field, value }) => {
            CliError::Config(format!("model.{field} must be finite (got {value})"))
        }
        OttoError::Model(ModelError::NegativeExcitonEnergy { field, value }) => {
            CliError::Config(format!("model.{field} must be non-negative (got {value})"))
        }
        other => CliError::Numerical(other.to_string()),
    }
}

/// Maps sweep failures onto configuration or numerical errors.
pub fn sweep_error(e: SweepError) -> CliError {
    match e {
        SweepError::InvalidGrid { field, reason } => {
            CliError::Config(format!("sweep.grid.{field} {reason}"))
        }
        SweepError::CustomStateTag => {
            CliError::Config("sweep.entanglement_at must be 'cold' or 'hot'".into())
        }
        SweepError::UnknownPreset(_) => CliError::Config(e.to_string()),
        SweepError::InvalidCycle(inner) => otto_config_error(inner),
        SweepError::Cycle { .. } | SweepError::Entanglement { .. } => {
            CliError::Numerical(e.to_string())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_document_gives_baseline() {
        let cfg = RunConfig::from_json("{}").unwrap();
        assert_eq!(cfg, RunConfig::default());
        assert_eq!(cfg.cycle_spec().unwrap(), CycleSpec::baseline());
    }

    #[test]
    fn partial_sections_fill_defaults() {
        let cfg =
            RunConfig::from_json(r#"{"model": {"lambda_mev": 3.5}, "cycle": {"t_hot_k": 20}}"#)
                .unwrap();
        assert_eq!(cfg.model.lambda_mev, 3.5);
        assert_eq!(cfg.model.jz_mev, 2.5);
        assert_eq!(cfg.cycle.t_hot_k, 20.0);
        assert_eq!(cfg.cycle.t_cold_k, 1.0);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        for doc in [
            r#"{"modle": {}}"#,
            r#"{"model": {"lambda": 1}}"#,
            r#"{"sweep": {"grid": {"start_mev": 0, "stop_mev": 1, "step_mev": 0.1, "n": 3}}}"#,
        ] {
            assert!(
                matches!(RunConfig::from_json(doc), Err(CliError::Config(_))),
                "{doc}"
            );
        }
    }

    #[test]
    fn validation_names_the_field() {
        let mut cfg = RunConfig::default();
        cfg.cycle.t_cold_k = 40.0;
        let msg = cfg.cycle_spec().unwrap_err().to_string();
        assert!(msg.contains("cycle.t_cold_k"), "{msg}");
        let mut cfg = RunConfig::default();
        cfg.model.omega_mev[1] = -1.0;
        assert!(cfg
            .cycle_spec()
            .unwrap_err()
            .to_string()
            .contains("model.omega_mev[1]"));
        let mut cfg = RunConfig::default();
        cfg.sweep.grid.step_mev = -0.1;
        assert!(cfg
            .sweep_spec()
            .unwrap_err()
            .to_string()
            .contains("sweep.grid.step_mev"));
    }

    #[test]
    fn json_round_trip() {
        let mut cfg = RunConfig::default();
        cfg.apply_preset("ent_asym_4_4_6").unwrap();
        cfg.cycle.pairing = PairingRule::SortedIndex;
        cfg.model.jz_convention = JzConvention::PerPair;
        cfg.output.path = Some("out.csv".into());
        assert_eq!(RunConfig::from_json(&cfg.to_json()).unwrap(), cfg);
    }

    #[test]
    fn preset_matches_core_spec() {
        let mut cfg = RunConfig::default();
        cfg.apply_preset("ent_sym_4mev").unwrap();
        assert_eq!(
            cfg.sweep_spec().unwrap(),
            figure_preset("ent_sym_4mev").unwrap()
        );
        assert!(matches!(cfg.apply_preset("nope"), Err(CliError::Config(_))));
    }
}
