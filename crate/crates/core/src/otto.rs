//! One quantum Otto cycle in the ideal adiabatic limit.
//!
//! The working substance is thermalized at `(Ω_H, T_H)`, driven to `Ω_C`
//! with populations carried level by level, thermalized at `(Ω_C, T_C)`,
//! and driven back. Heats and work follow from the two endpoint spectra and
//! the two sets of Boltzmann populations:
//!
//! ```text
//! Q_H = Σₙ Eₙᴴ [Pₙ(T_H) − Pₙ(T_C)]
//! Q_C = Σₙ Eₙᶜ [Pₙ(T_C) − Pₙ(T_H)]
//! W   = Q_H + Q_C
//! ```
//!
//! `W > 0` is work delivered by the engine.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::EigenDecomposition;
use crate::model::{build_hamiltonian, ModelError, ModelParams};
use crate::thermo::{gibbs_state, ThermalState, ThermoError};

/// Sign tolerance for mode classification, meV.
pub const MODE_EPS: f64 = 1e-12;

/// Minimum overlap for a hot level to be considered the adiabatic
/// continuation of a cold level.
pub const MIN_PAIRING_OVERLAP: f64 = 0.5;

/// Levels closer than this (meV, scaled by `max(1, |E|)`) are one
/// degenerate cluster when pairing.
const DEGENERACY_TOL: f64 = 1e-9;

/// How hot-side levels are paired with cold-side levels across the
/// adiabatic strokes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairingRule {
    /// Follow eigenvectors: each hot level goes to the cold level it overlaps
    /// most. Exact for the uniform-field protocol, where the endpoint
    /// Hamiltonians commute.
    #[default]
    Overlap,
    /// Pair the n-th lowest hot level with the n-th lowest cold level,
    /// regardless of eigenvector content.
    #[serde(rename = "sorted")]
    SortedIndex,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CycleSpec {
    /// Couplings held fixed over the cycle. Its `omega_field_mev` is
    /// replaced by the uniform hot and cold values.
    pub base: ModelParams,
    pub omega_field_hot_mev: f64,
    pub omega_field_cold_mev: f64,
    pub t_hot_k: f64,
    pub t_cold_k: f64,
    #[serde(default)]
    pub pairing: PairingRule,
}

impl CycleSpec {
    /// ω = 2 meV, J_z = 2.5 meV, Ω_H = 5 meV, Ω_C = 1 meV, T_H = 40 K,
    /// T_C = 1 K, λ = 0.
    pub fn baseline() -> Self {
        Self {
            base: ModelParams::default(),
            omega_field_hot_mev: 5.0,
            omega_field_cold_mev: 1.0,
            t_hot_k: 40.0,
            t_cold_k: 1.0,
            pairing: PairingRule::Overlap,
        }
    }

    pub fn with_lambda(mut self, lambda_mev: f64) -> Self {
        self.base.lambda_mev = lambda_mev;
        self
    }

    pub fn hot_params(&self) -> ModelParams {
        self.base
            .clone()
            .with_uniform_field(self.omega_field_hot_mev)
    }

    pub fn cold_params(&self) -> ModelParams {
        self.base
            .clone()
            .with_uniform_field(self.omega_field_cold_mev)
    }

    /// Full validation for user-supplied cycles, including `T_H > T_C > 0`.
    ///
    /// [`run_cycle`] itself only needs positive temperatures, so single-bath
    /// cycles can still be evaluated programmatically.
    pub fn validate(&self) -> Result<(), OttoError> {
        self.base.validate()?;
        for (field, value) in [
            ("omega_field_hot_mev", self.omega_field_hot_mev),
            ("omega_field_cold_mev", self.omega_field_cold_mev),
            ("t_hot_k", self.t_hot_k),
            ("t_cold_k", self.t_cold_k),
        ] {
            if !value.is_finite() {
                return Err(OttoError::InvalidSpec {
                    field,
                    reason: format!("must be finite (got {value})"),
                });
            }
        }
        if self.t_cold_k <= 0.0 {
            return Err(OttoError::InvalidSpec {
                field: "t_cold_k",
                reason: format!("must be positive (got {})", self.t_cold_k),
            });
        }
        if self.t_cold_k >= self.t_hot_k {
            return Err(OttoError::InvalidSpec {
                field: "t_cold_k",
                reason: format!(
                    "must be below t_hot_k (got t_cold_k = {}, t_hot_k = {})",
                    self.t_cold_k, self.t_hot_k
                ),
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    Engine,
    Refrigerator,
    Accelerator,
    Heater,
    Unclassified,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Engine => "Engine",
            Mode::Refrigerator => "Refrigerator",
            Mode::Accelerator => "Accelerator",
            Mode::Heater => "Heater",
            Mode::Unclassified => "Unclassified",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CycleResult {
    /// Net work output W, meV.
    pub w: f64,
    /// Heat taken from the hot bath Q_H, meV.
    pub q_hot: f64,
    /// Heat taken from the cold bath Q_C, meV (negative when released).
    pub q_cold: f64,
    /// W / Q_H, only in [`Mode::Engine`].
    pub efficiency: Option<f64>,
    pub mode: Mode,
    /// `level_pairing[n]` is the cold-spectrum partner of hot level `n`.
    pub level_pairing: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OttoError {
    #[error("hot level {hot_level} has no adiabatic partner (best overlap {overlap:.3})")]
    AmbiguousPairing { hot_level: usize, overlap: f64 },
    #[error("spectra have different dimensions ({hot} vs {cold})")]
    DimensionMismatch { hot: usize, cold: usize },
    #[error("invalid cycle: {field} {reason}")]
    InvalidSpec { field: &'static str, reason: String },
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Thermo(#[from] ThermoError),
}

/// Groups ascending eigenvalues into runs of (numerically) equal values.
fn degenerate_clusters(eigenvalues: &[f64]) -> Vec<Vec<usize>> {
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    for (k, &e) in eigenvalues.iter().enumerate() {
        match clusters.last_mut() {
            Some(last)
                if {
                    let prev = eigenvalues[*last.last().unwrap()];
                    (e - prev).abs() <= DEGENERACY_TOL * prev.abs().max(e.abs()).max(1.0)
                } =>
            {
                last.push(k)
            }
            _ => clusters.push(vec![k]),
        }
    }
    clusters
}

/// Pairs each hot level with a cold level by eigenvector overlap.
///
/// Greedy in descending overlap, each level used once. Overlaps are
/// accumulated over degenerate clusters on both sides, since any basis of
/// a degenerate eigenspace is equally valid and carries identical energies
/// and populations. Fails with [`OttoError::AmbiguousPairing`] when a
/// matched overlap falls below [`MIN_PAIRING_OVERLAP`].
pub fn match_levels(
    spec_hot: &EigenDecomposition,
    spec_cold: &EigenDecomposition,
) -> Result<Vec<usize>, OttoError> {
    let n = spec_hot.dim();
    if spec_cold.dim() != n {
        return Err(OttoError::DimensionMismatch {
            hot: n,
            cold: spec_cold.dim(),
        });
    }

    let vh = &spec_hot.eigenvectors;
    let vc = &spec_cold.eigenvectors;
    let overlap = |a: usize, b: usize| -> f64 {
        (0..n)
            .map(|k| vh[(k, a)].conj() * vc[(k, b)])
            .sum::<num_complex::Complex64>()
            .norm_sqr()
    };

    let hot_clusters = degenerate_clusters(&spec_hot.eigenvalues);
    let cold_clusters = degenerate_clusters(&spec_cold.eigenvalues);

    // Remaining overlap weight between each pair of clusters.
    let mut weight: Vec<Vec<f64>> = hot_clusters
        .iter()
        .map(|hc| {
            cold_clusters
                .iter()
                .map(|cc| {
                    hc.iter()
                        .flat_map(|&a| cc.iter().map(move |&b| (a, b)))
                        .map(|(a, b)| overlap(a, b))
                        .sum()
                })
                .collect()
        })
        .collect();
    let mut hot_next = vec![0usize; hot_clusters.len()];
    let mut cold_next = vec![0usize; cold_clusters.len()];
    let mut pairing = vec![usize::MAX; n];

    for _ in 0..n {
        let mut best: Option<(usize, usize, f64)> = None;
        for (a, hc) in hot_clusters.iter().enumerate() {
            if hot_next[a] == hc.len() {
                continue;
            }
            for (b, cc) in cold_clusters.iter().enumerate() {
                if cold_next[b] == cc.len() {
                    continue;
                }
                let w = weight[a][b];
                if best.is_none_or(|(_, _, bw)| w > bw) {
                    best = Some((a, b, w));
                }
            }
        }
        let (a, b, w) = best.expect("a free level remains on both sides");
        let hot_level = hot_clusters[a][hot_next[a]];
        let score = w.min(1.0);
        if score < MIN_PAIRING_OVERLAP {
            return Err(OttoError::AmbiguousPairing {
                hot_level,
                overlap: score,
            });
        }
        pairing[hot_level] = cold_clusters[b][cold_next[b]];
        hot_next[a] += 1;
        cold_next[b] += 1;
        weight[a][b] -= 1.0;
    }
    Ok(pairing)
}

/// Sign-pattern taxonomy of a cycle, checked in the order
/// Engine, Refrigerator, Accelerator, Heater.
pub fn classify_mode(w: f64, q_hot: f64, q_cold: f64) -> Mode {
    let eps = MODE_EPS;
    if q_hot >= -eps && q_cold <= eps && w > eps {
        Mode::Engine
    } else if q_hot <= eps && q_cold >= -eps && w <= eps {
        Mode::Refrigerator
    } else if q_hot >= -eps && q_cold <= eps && w < -eps {
        Mode::Accelerator
    } else if q_hot <= eps && q_cold <= eps && w <= eps {
        Mode::Heater
    } else {
        Mode::Unclassified
    }
}

/// `W / Q_H` for an engine, `None` for every other mode.
pub fn efficiency_of(cr: &CycleResult) -> Option<f64> {
    (cr.mode == Mode::Engine).then(|| cr.w / cr.q_hot)
}

/// The two bath-equilibrated states of a cycle.
#[derive(Debug, Clone)]
pub struct CycleStates {
    /// Gibbs state of `H(Ω_H)` at `T_H`.
    pub hot: ThermalState,
    /// Gibbs state of `H(Ω_C)` at `T_C`.
    pub cold: ThermalState,
}

pub fn cycle_states(cs: &CycleSpec) -> Result<CycleStates, OttoError> {
    cs.base.validate()?;
    let hot = gibbs_state(&build_hamiltonian(&cs.hot_params()), cs.t_hot_k)?;
    let cold = gibbs_state(&build_hamiltonian(&cs.cold_params()), cs.t_cold_k)?;
    Ok(CycleStates { hot, cold })
}

/// Heats, work and operating mode of one cycle.
pub fn run_cycle(cs: &CycleSpec) -> Result<CycleResult, OttoError> {
    let CycleStates { hot, cold } = cycle_states(cs)?;
    let pairing = match cs.pairing {
        PairingRule::Overlap => match_levels(&hot.spectrum, &cold.spectrum)?,
        PairingRule::SortedIndex => (0..hot.probs.len()).collect(),
    };

    let e_hot = &hot.spectrum.eigenvalues;
    let e_cold = &cold.spectrum.eigenvalues;
    let mut q_hot = 0.0;
    let mut q_cold = 0.0;
    for (n, &m) in pairing.iter().enumerate() {
        let dp = hot.probs[n] - cold.probs[m];
        q_hot += e_hot[n] * dp;
        q_cold -= e_cold[m] * dp;
    }
    let w = q_hot + q_cold;
    let mode = classify_mode(w, q_hot, q_cold);
    let mut result = CycleResult {
        w,
        q_hot,
        q_cold,
        efficiency: None,
        mode,
        level_pairing: pairing,
    };
    result.efficiency = efficiency_of(&result);
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{eig_hermitian, ComplexMatrix};
    use crate::thermo::K_B;

    fn decoupled_spec() -> CycleSpec {
        let mut cs = CycleSpec::baseline();
        cs.base.jz_mev = 0.0;
        cs
    }

    fn excited(gap: f64, t: f64) -> f64 {
        1.0 / (1.0 + (gap / (K_B * t)).exp())
    }

    #[test]
    fn decoupled_matches_two_level_otto() {
        let r = run_cycle(&decoupled_spec()).unwrap();
        let (p_h, p_c) = (excited(7.0, 40.0), excited(3.0, 1.0));
        let w = 3.0 * (7.0 - 3.0) * (p_h - p_c);
        let q_hot = 3.0 * 7.0 * (p_h - p_c);
        let q_cold = -3.0 * 3.0 * (p_h - p_c);
        assert!((r.w - w).abs() < 1e-12);
        assert!((r.q_hot - q_hot).abs() < 1e-12);
        assert!((r.q_cold - q_cold).abs() < 1e-12);
        assert!((r.w - 1.3921).abs() < 5e-5);
        assert!((r.q_hot - 2.4362).abs() < 5e-5);
        assert!((r.q_cold + 1.0441).abs() < 5e-5);
        assert_eq!(r.mode, Mode::Engine);
        let eta = r.efficiency.unwrap();
        assert!((eta - (1.0 - 3.0 / 7.0)).abs() < 1e-12);
    }

    #[test]
    fn identical_endpoints_do_no_work() {
        let mut cs = CycleSpec::baseline().with_lambda(2.0);
        cs.omega_field_cold_mev = cs.omega_field_hot_mev;
        let r = run_cycle(&cs).unwrap();
        assert_eq!(r.w, 0.0);
        assert_eq!(r.q_hot, -r.q_cold);
        assert_eq!(r.mode, Mode::Unclassified);
        assert_eq!(r.efficiency, None);
        assert_eq!(r.level_pairing, (0..8).collect::<Vec<_>>());
    }

    #[test]
    fn baseline_engine_then_heater() {
        let r0 = run_cycle(&CycleSpec::baseline()).unwrap();
        assert_eq!(r0.mode, Mode::Engine);
        assert!(r0.w > 0.0);
        let r = run_cycle(&CycleSpec::baseline().with_lambda(4.0)).unwrap();
        assert_eq!(r.mode, Mode::Heater);
    }

    #[test]
    fn commuting_endpoints_pair_perfectly() {
        let cs = CycleSpec::baseline().with_lambda(3.7);
        let hot = eig_hermitian(&build_hamiltonian(&cs.hot_params())).unwrap();
        let cold = eig_hermitian(&build_hamiltonian(&cs.cold_params())).unwrap();
        let pairing = match_levels(&hot, &cold).unwrap();
        let mut seen = pairing.clone();
        seen.sort_unstable();
        assert_eq!(seen, (0..8).collect::<Vec<_>>());
        // Energies and populations are shared across each degenerate cluster,
        // so check cluster-level overlap of each matched pair.
        for (n, &m) in pairing.iter().enumerate() {
            let cluster: Vec<usize> = (0..8)
                .filter(|&k| (cold.eigenvalues[k] - cold.eigenvalues[m]).abs() < 1e-9)
                .collect();
            let ov: f64 = cluster
                .iter()
                .map(|&k| {
                    (0..8)
                        .map(|i| hot.eigenvectors[(i, n)].conj() * cold.eigenvectors[(i, k)])
                        .sum::<num_complex::Complex64>()
                        .norm_sqr()
                })
                .sum();
            assert!(ov > 1.0 - 1e-10, "level {n}: overlap {ov}");
        }
    }

    #[test]
    fn identical_spectra_pair_identically() {
        let h = build_hamiltonian(&CycleSpec::baseline().with_lambda(1.2).hot_params());
        let e = eig_hermitian(&h).unwrap();
        assert_eq!(match_levels(&e, &e).unwrap(), (0..8).collect::<Vec<_>>());
    }

    #[test]
    fn level_crossing_gives_swap() {
        // Shared eigenvectors; the sorted order of |0⟩ and |1⟩ swaps.
        let hot = eig_hermitian(&ComplexMatrix::from_real_diagonal(&[
            1., 2., 3., 4., 5., 6., 7., 8.,
        ]))
        .unwrap();
        let cold = eig_hermitian(&ComplexMatrix::from_real_diagonal(&[
            2., 1., 3., 4., 5., 6., 7., 8.,
        ]))
        .unwrap();
        let pairing = match_levels(&hot, &cold).unwrap();
        assert_eq!(pairing, vec![1, 0, 2, 3, 4, 5, 6, 7]);
    }

    #[test]
    fn fourier_basis_is_ambiguous() {
        // Cold eigenvectors form the 3-point DFT basis: every overlap with the
        // computational basis is exactly 1/3.
        use num_complex::Complex64;
        let w = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
        let f = ComplexMatrix::from_fn(3, 3, |i, j| w.powu((i * j) as u32) / 3f64.sqrt());
        let cold =
            eig_hermitian(&ComplexMatrix::from_real_diagonal(&[0.0, 1.0, 2.0]).conjugate_by(&f))
                .unwrap();
        let hot = eig_hermitian(&ComplexMatrix::from_real_diagonal(&[0.0, 1.0, 2.0])).unwrap();
        match match_levels(&hot, &cold) {
            Err(OttoError::AmbiguousPairing { overlap, .. }) => {
                assert!((overlap - 1.0 / 3.0).abs() < 1e-12)
            }
            other => panic!("unexpected {other:?}"),
        }
        let hot2 = eig_hermitian(&ComplexMatrix::from_real_diagonal(&[1.0, 2.0])).unwrap();
        assert!(matches!(
            match_levels(&hot2, &hot),
            Err(OttoError::DimensionMismatch { hot: 2, cold: 3 })
        ));
    }

    #[test]
    fn mode_fixtures() {
        assert_eq!(classify_mode(1.39, 2.44, -1.04), Mode::Engine);
        assert_eq!(classify_mode(-0.1, -0.3, 0.2), Mode::Refrigerator);
        assert_eq!(classify_mode(-0.1, 0.2, -0.3), Mode::Accelerator);
        assert_eq!(classify_mode(-0.5, -0.2, -0.3), Mode::Heater);
        assert_eq!(classify_mode(0.0, 0.0, 0.0), Mode::Refrigerator);
        assert_eq!(classify_mode(0.0, 0.5, -0.5), Mode::Unclassified);
        assert_eq!(classify_mode(0.1, -0.2, 0.3), Mode::Unclassified);
    }

    #[test]
    fn sorted_pairing_is_identity() {
        let mut cs = CycleSpec::baseline().with_lambda(3.3);
        cs.pairing = PairingRule::SortedIndex;
        let r = run_cycle(&cs).unwrap();
        assert_eq!(r.level_pairing, (0..8).collect::<Vec<_>>());
        assert!((r.w - r.q_hot - r.q_cold).abs() < 1e-12);
    }

    #[test]
    fn validation_names_the_field() {
        let mut cs = CycleSpec::baseline();
        cs.t_cold_k = 40.0;
        match cs.validate() {
            Err(OttoError::InvalidSpec { field, .. }) => assert_eq!(field, "t_cold_k"),
            other => panic!("unexpected {other:?}"),
        }
        cs.t_cold_k = 0.0;
        assert!(cs.validate().is_err());
        assert!(CycleSpec::baseline().validate().is_ok());
    }

    #[test]
    fn non_positive_temperature_propagates() {
        let mut cs = CycleSpec::baseline();
        cs.t_cold_k = -1.0;
        assert!(matches!(
            run_cycle(&cs),
            Err(OttoError::Thermo(ThermoError::NonPositiveTemperature(_)))
        ));
    }
}
