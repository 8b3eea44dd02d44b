//! λ sweeps over the Otto cycle, named figure presets, and detection of
//! critical couplings (work zero crossings and entanglement onsets).

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::entanglement::{report_for_cycle, EntanglementError, StateTag};
use crate::otto::{run_cycle, CycleSpec, Mode, OttoError};

/// Values below this are "not entangled" when locating onsets.
pub const ENTANGLEMENT_ONSET_THRESHOLD: f64 = 1e-6;

/// Grid values are snapped to multiples of this, so that e.g. `0.1 · 3`
/// prints as `0.3`.
const GRID_SNAP: f64 = 1e-12;

/// Grid used by [`figure_preset`]: 0 to 10 meV in 0.05 meV steps.
pub const DEFAULT_GRID: Grid = Grid {
    start_mev: 0.0,
    stop_mev: 10.0,
    step_mev: 0.05,
};

pub const PRESET_NAMES: [&str; 7] = [
    "work_heat_baseline",
    "work_vs_omega_equal",
    "work_vs_omega_mixed",
    "ent_sym_2mev",
    "ent_sym_4mev",
    "ent_asym_2_2_4",
    "ent_asym_4_4_6",
];

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SweepError {
    #[error("invalid grid: {field} {reason}")]
    InvalidGrid { field: &'static str, reason: String },
    #[error("unknown preset '{0}' (known: {known})", known = PRESET_NAMES.join(", "))]
    UnknownPreset(String),
    #[error("entanglement_at must be 'cold' or 'hot'")]
    CustomStateTag,
    #[error(transparent)]
    InvalidCycle(OttoError),
    #[error("cycle failed at lambda = {lambda_mev} meV: {source}")]
    Cycle { lambda_mev: f64, source: OttoError },
    #[error("entanglement failed at lambda = {lambda_mev} meV: {source}")]
    Entanglement {
        lambda_mev: f64,
        source: EntanglementError,
    },
}

/// Inclusive, evenly spaced grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Grid {
    pub start_mev: f64,
    pub stop_mev: f64,
    pub step_mev: f64,
}

impl Default for Grid {
    fn default() -> Self {
        DEFAULT_GRID
    }
}

impl Grid {
    pub fn new(start_mev: f64, stop_mev: f64, step_mev: f64) -> Self {
        Self {
            start_mev,
            stop_mev,
            step_mev,
        }
    }

    pub fn validate(&self) -> Result<(), SweepError> {
        for (field, v) in [
            ("start_mev", self.start_mev),
            ("stop_mev", self.stop_mev),
            ("step_mev", self.step_mev),
        ] {
            if !v.is_finite() {
                return Err(SweepError::InvalidGrid {
                    field,
                    reason: format!("must be finite (got {v})"),
                });
            }
        }
        if self.step_mev <= 0.0 {
            return Err(SweepError::InvalidGrid {
                field: "step_mev",
                reason: format!("must be positive (got {})", self.step_mev),
            });
        }
        if self.start_mev > self.stop_mev {
            return Err(SweepError::InvalidGrid {
                field: "stop_mev",
                reason: format!(
                    "must not be below start_mev (got {} < {})",
                    self.stop_mev, self.start_mev
                ),
            });
        }
        if self.num_points() < 2 {
            return Err(SweepError::InvalidGrid {
                field: "step_mev",
                reason: "grid must contain at least 2 points".into(),
            });
        }
        Ok(())
    }

    /// Number of points. A stop value within half a step of the last grid
    /// point is treated as landing on it, so `(0, 8, 0.1)` has 81 points.
    pub fn num_points(&self) -> usize {
        let ratio = (self.stop_mev - self.start_mev) / self.step_mev;
        let nearest = ratio.round();
        let steps = if (ratio - nearest).abs() < 1e-6 {
            nearest
        } else {
            ratio.floor()
        };
        steps.max(0.0) as usize + 1
    }

    pub fn points(&self) -> Vec<f64> {
        let n = self.num_points();
        (0..n)
            .map(|k| {
                let v = self.start_mev + k as f64 * self.step_mev;
                let snapped = (v / GRID_SNAP).round() * GRID_SNAP;
                // Reinterpret through the shortest decimal form to drop the
                // residue of the snapping multiplication.
                format!("{snapped:.12}").parse::<f64>().unwrap_or(v)
            })
            .collect()
    }
}

/// Parameter varied along a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepAxis {
    /// Förster coupling λ.
    #[default]
    Lambda,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub base: CycleSpec,
    #[serde(default)]
    pub vary: SweepAxis,
    pub grid: Grid,
    #[serde(default)]
    pub measure_entanglement: bool,
    #[serde(default)]
    pub entanglement_at: StateTag,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<(), SweepError> {
        self.grid.validate()?;
        self.base.validate().map_err(SweepError::InvalidCycle)?;
        if self.entanglement_at == StateTag::Custom {
            return Err(SweepError::CustomStateTag);
        }
        Ok(())
    }
}

/// One sampled point of a sweep. Entanglement columns are `None` unless
/// the sweep measures entanglement.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub lambda_mev: f64,
    pub w_mev: f64,
    pub q_hot_mev: f64,
    pub q_cold_mev: f64,
    pub efficiency: Option<f64>,
    pub mode: Mode,
    pub c12: Option<f64>,
    pub c13: Option<f64>,
    pub c23: Option<f64>,
    pub tau3: Option<f64>,
}

fn evaluate(spec: &SweepSpec, lambda_mev: f64) -> Result<SweepRow, SweepError> {
    let cs = spec.base.clone().with_lambda(lambda_mev);
    let cycle = run_cycle(&cs).map_err(|source| SweepError::Cycle { lambda_mev, source })?;
    let ent = if spec.measure_entanglement {
        Some(
            report_for_cycle(&cs, spec.entanglement_at)
                .map_err(|source| SweepError::Entanglement { lambda_mev, source })?,
        )
    } else {
        None
    };
    Ok(SweepRow {
        lambda_mev,
        w_mev: cycle.w,
        q_hot_mev: cycle.q_hot,
        q_cold_mev: cycle.q_cold,
        efficiency: cycle.efficiency,
        mode: cycle.mode,
        c12: ent.map(|e| e.c12),
        c13: ent.map(|e| e.c13),
        c23: ent.map(|e| e.c23),
        tau3: ent.map(|e| e.tau3),
    })
}

/// Evaluates the cycle at every grid point, in ascending λ.
///
/// Points are computed in parallel; the output and the reported error (the
/// one at the lowest failing λ) do not depend on scheduling.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>, SweepError> {
    spec.validate()?;
    let results: Vec<Result<SweepRow, SweepError>> = spec
        .grid
        .points()
        .into_par_iter()
        .map(|lambda| evaluate(spec, lambda))
        .collect();
    results.into_iter().collect()
}

/// Named parameter sets for the standard figures, on [`DEFAULT_GRID`].
pub fn figure_preset(name: &str) -> Result<SweepSpec, SweepError> {
    let (omega, entangle) = match name {
        "work_heat_baseline" => ([2.0, 2.0, 2.0], false),
        "work_vs_omega_equal" => ([4.0, 4.0, 4.0], false),
        "work_vs_omega_mixed" => ([2.0, 3.0, 4.0], false),
        "ent_sym_2mev" => ([2.0, 2.0, 2.0], true),
        "ent_sym_4mev" => ([4.0, 4.0, 4.0], true),
        "ent_asym_2_2_4" => ([2.0, 2.0, 4.0], true),
        "ent_asym_4_4_6" => ([4.0, 4.0, 6.0], true),
        _ => return Err(SweepError::UnknownPreset(name.to_string())),
    };
    let mut base = CycleSpec::baseline();
    base.base.omega_mev = omega;
    Ok(SweepSpec {
        base,
        vary: SweepAxis::Lambda,
        grid: DEFAULT_GRID,
        measure_entanglement: entangle,
        entanglement_at: StateTag::ColdEnd,
    })
}

/// Numeric sweep column that can be scanned for critical points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Column {
    W,
    QHot,
    QCold,
    Efficiency,
    C12,
    C13,
    C23,
    Tau3,
}

impl Column {
    pub const ALL: [Column; 8] = [
        Column::W,
        Column::QHot,
        Column::QCold,
        Column::Efficiency,
        Column::C12,
        Column::C13,
        Column::C23,
        Column::Tau3,
    ];

    /// Name of the column in tabular output.
    pub fn header(self) -> &'static str {
        match self {
            Column::W => "w_mev",
            Column::QHot => "q_hot_mev",
            Column::QCold => "q_cold_mev",
            Column::Efficiency => "efficiency",
            Column::C12 => "c12",
            Column::C13 => "c13",
            Column::C23 => "c23",
            Column::Tau3 => "tau3",
        }
    }

    pub fn is_entanglement(self) -> bool {
        matches!(self, Column::C12 | Column::C13 | Column::C23 | Column::Tau3)
    }

    pub fn value(self, row: &SweepRow) -> Option<f64> {
        match self {
            Column::W => Some(row.w_mev),
            Column::QHot => Some(row.q_hot_mev),
            Column::QCold => Some(row.q_cold_mev),
            Column::Efficiency => row.efficiency,
            Column::C12 => row.c12,
            Column::C13 => row.c13,
            Column::C23 => row.c23,
            Column::Tau3 => row.tau3,
        }
    }

    /// Level whose crossing counts as a critical point: zero for signed
    /// columns, [`ENTANGLEMENT_ONSET_THRESHOLD`] for entanglement columns.
    pub fn threshold(self) -> f64 {
        if self.is_entanglement() {
            ENTANGLEMENT_ONSET_THRESHOLD
        } else {
            0.0
        }
    }
}

impl fmt::Display for Column {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.header())
    }
}

impl FromStr for Column {
    type Err = String;

    /// Accepts the output header (`w_mev`) or its short form (`w`).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let short = |c: Column| c.header().trim_end_matches("_mev");
        Column::ALL
            .into_iter()
            .find(|&c| s == c.header() || s == short(c))
            .ok_or_else(|| {
                let names: Vec<&str> = Column::ALL.iter().map(|c| c.header()).collect();
                format!(
                    "unknown column '{s}' (expected one of {})",
                    names.join(", ")
                )
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Rising,
    Falling,
}

impl Direction {
    pub fn as_str(self) -> &'static str {
        match self {
            Direction::Rising => "rising",
            Direction::Falling => "falling",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CriticalPoint {
    pub lambda_mev: f64,
    pub direction: Direction,
}

/// Crossings of the column's threshold between adjacent rows, located by
/// linear interpolation, in ascending λ.
///
/// A value is "above" when strictly greater than the threshold. Pairs where
/// either value is absent are skipped.
pub fn find_critical_lambdas(rows: &[SweepRow], column: Column) -> Vec<CriticalPoint> {
    let thr = column.threshold();
    let mut out = Vec::new();
    for pair in rows.windows(2) {
        let (Some(a), Some(b)) = (column.value(&pair[0]), column.value(&pair[1])) else {
            continue;
        };
        let (above_a, above_b) = (a > thr, b > thr);
        if above_a == above_b {
            continue;
        }
        let (la, lb) = (pair[0].lambda_mev, pair[1].lambda_mev);
        let lambda_mev = la + (thr - a) / (b - a) * (lb - la);
        out.push(CriticalPoint {
            lambda_mev,
            direction: if above_b {
                Direction::Rising
            } else {
                Direction::Falling
            },
        });
    }
    out
}
