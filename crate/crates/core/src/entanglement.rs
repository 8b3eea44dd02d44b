//! Mixed-state entanglement of the engine's thermal states.
//!
//! Two-qubit entanglement is measured by the Wootters concurrence of each
//! reduced pair. Three-qubit entanglement is bounded from below by `τ₃`,
//! assembled from spin-flip spectra of the three bipartitions
//! `12|3`, `13|2`, `23|1` with the six SO(4) generators on the pair factor.
//!
//! Spectra of the non-Hermitian products `ρ·ρ̃` are taken through the
//! similar Hermitian matrix `√ρ·ρ̃·√ρ`, which has the same eigenvalues.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{
    eig_hermitian, kron, partial_trace, permute_qubits, spectral_floor, sqrt_psd, ComplexMatrix,
    LinalgError, PSD_CLAMP,
};
use crate::otto::{cycle_states, CycleSpec, OttoError};

/// Tolerance on trace and Hermiticity of density-matrix inputs.
pub const DENSITY_TOL: f64 = 1e-10;

/// Qubit orders that bring each pair of a bipartition to the front:
/// `12|3`, `13|2`, `23|1`.
pub const BIPARTITIONS: [[usize; 3]; 3] = [[0, 1, 2], [0, 2, 1], [1, 2, 0]];

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EntanglementError {
    #[error("invalid density matrix: {0}")]
    InvalidDensityMatrix(String),
    #[error(
        "spin-flip spectrum has {count} eigenvalues above {threshold:e}, expected at most {max}"
    )]
    NumericalFailure {
        count: usize,
        max: usize,
        threshold: f64,
    },
    #[error("a custom state has no cycle position; use report_for_state")]
    CustomTagForCycle,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Cycle(#[from] OttoError),
}

/// Which state of a cycle a report describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StateTag {
    /// Gibbs state at `(T_C, Ω_C)`, the end of cold-bath contact.
    #[default]
    #[serde(rename = "cold")]
    ColdEnd,
    /// Gibbs state at `(T_H, Ω_H)`.
    #[serde(rename = "hot")]
    HotEnd,
    Custom,
}

impl StateTag {
    pub fn as_str(self) -> &'static str {
        match self {
            StateTag::ColdEnd => "cold",
            StateTag::HotEnd => "hot",
            StateTag::Custom => "custom",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EntanglementReport {
    pub c12: f64,
    pub c13: f64,
    pub c23: f64,
    pub tau3: f64,
    pub state_tag: StateTag,
}

/// The six Hermitian SO(4) generators `L_jk = −i(|j⟩⟨k| − |k⟩⟨j|)`,
/// `0 ≤ j < k ≤ 3`, in lexicographic `(j, k)` order.
#[derive(Debug, Clone, PartialEq)]
pub struct So4GeneratorSet {
    generators: Vec<ComplexMatrix>,
}

impl Default for So4GeneratorSet {
    fn default() -> Self {
        Self::new()
    }
}

impl So4GeneratorSet {
    pub fn new() -> Self {
        let mut generators = Vec::with_capacity(6);
        for j in 0..4 {
            for k in j + 1..4 {
                let mut l = ComplexMatrix::zeros(4, 4);
                l[(j, k)] = Complex64::new(0.0, -1.0);
                l[(k, j)] = Complex64::new(0.0, 1.0);
                generators.push(l);
            }
        }
        Self { generators }
    }

    /// Uses an arbitrary set of 4×4 matrices in place of the standard
    /// generators.
    pub fn from_matrices(generators: Vec<ComplexMatrix>) -> Self {
        assert!(generators.iter().all(|g| g.rows() == 4 && g.cols() == 4));
        Self { generators }
    }

    pub fn generators(&self) -> &[ComplexMatrix] {
        &self.generators
    }
}

pub fn pauli_y() -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(2, 2);
    m[(0, 1)] = Complex64::new(0.0, -1.0);
    m[(1, 0)] = Complex64::new(0.0, 1.0);
    m
}

/// Checks shape, Hermiticity, unit trace and positivity.
pub fn validate_density(rho: &ComplexMatrix, dim: usize) -> Result<(), EntanglementError> {
    let invalid = |msg: String| Err(EntanglementError::InvalidDensityMatrix(msg));
    if rho.rows() != dim || rho.cols() != dim {
        return invalid(format!(
            "expected {dim}x{dim}, got {}x{}",
            rho.rows(),
            rho.cols()
        ));
    }
    let dev = rho.hermitian_deviation();
    if dev > DENSITY_TOL {
        return invalid(format!("not Hermitian (deviation {dev:e})"));
    }
    let tr = rho.trace();
    if (tr.re - 1.0).abs() > DENSITY_TOL || tr.im.abs() > DENSITY_TOL {
        return invalid(format!("trace is {tr}, expected 1"));
    }
    let min = eig_hermitian(rho)?.eigenvalues[0];
    if min < -PSD_CLAMP {
        return invalid(format!("negative eigenvalue {min:e}"));
    }
    Ok(())
}

/// Square roots of the eigenvalues of `ρ·ρ̃` with `ρ̃ = F ρ* F`, descending.
///
/// `sqrt_rho` must be `√ρ`. Values at the rounding floor are reported as 0.
fn spin_flip_roots(
    sqrt_rho: &ComplexMatrix,
    rho_conj: &ComplexMatrix,
    flip: &ComplexMatrix,
) -> Result<Vec<f64>, EntanglementError> {
    let flipped = &(flip * rho_conj) * flip;
    let m = (&(sqrt_rho * &flipped) * sqrt_rho).hermitian_part();
    let eig = eig_hermitian(&m)?;
    let floor = spectral_floor(1.0);
    let mut roots = Vec::with_capacity(eig.dim());
    for &mu in eig.eigenvalues.iter().rev() {
        if mu < -PSD_CLAMP {
            return Err(EntanglementError::InvalidDensityMatrix(format!(
                "spin-flipped product has eigenvalue {mu:e}"
            )));
        }
        roots.push(if mu <= floor { 0.0 } else { mu.sqrt() });
    }
    Ok(roots)
}

fn wootters_combination(roots: &[f64]) -> f64 {
    (roots[0] - roots[1..4].iter().sum::<f64>()).max(0.0)
}

/// Wootters concurrence of a two-qubit density matrix, in `[0, 1]`.
pub fn concurrence(rho2: &ComplexMatrix) -> Result<f64, EntanglementError> {
    validate_density(rho2, 4)?;
    let yy = kron(&pauli_y(), &pauli_y());
    let roots = spin_flip_roots(&sqrt_psd(rho2)?, &rho2.conj(), &yy)?;
    Ok(wootters_combination(&roots).min(1.0))
}

/// Concurrences `(C₁₂, C₁₃, C₂₃)` of the two-qubit reductions.
pub fn pairwise_concurrences(rho3: &ComplexMatrix) -> Result<(f64, f64, f64), EntanglementError> {
    validate_density(rho3, 8)?;
    let pair = |a: usize, b: usize| -> Result<f64, EntanglementError> {
        let reduced = partial_trace(rho3, 3, &[a, b])?.hermitian_part();
        concurrence(&reduced)
    };
    Ok((pair(0, 1)?, pair(0, 2)?, pair(1, 2)?))
}

/// Per-generator bipartite terms `C_α^p`, indexed `[bipartition][generator]`
/// in the orders of [`BIPARTITIONS`] and [`So4GeneratorSet`].
pub fn lower_bound_terms(
    rho3: &ComplexMatrix,
    generators: &So4GeneratorSet,
) -> Result<Vec<Vec<f64>>, EntanglementError> {
    validate_density(rho3, 8)?;
    let sy = pauli_y();
    let floor = 1e-10;
    let mut terms = Vec::with_capacity(BIPARTITIONS.len());
    for perm in BIPARTITIONS {
        let rho = permute_qubits(rho3, &perm)?;
        let sqrt_rho = sqrt_psd(&rho)?;
        let rho_conj = rho.conj();
        let mut row = Vec::with_capacity(generators.generators().len());
        for l in generators.generators() {
            let flip = kron(l, &sy);
            let roots = spin_flip_roots(&sqrt_rho, &rho_conj, &flip)?;
            let significant = roots.iter().filter(|&&r| r * r > floor).count();
            if significant > 4 {
                return Err(EntanglementError::NumericalFailure {
                    count: significant,
                    max: 4,
                    threshold: floor,
                });
            }
            row.push(wootters_combination(&roots));
        }
        terms.push(row);
    }
    Ok(terms)
}

/// Tripartite concurrence lower bound
/// `τ₃ = ⅓ Σ_α [(C_α^{12|3})² + (C_α^{13|2})² + (C_α^{23|1})²]`.
pub fn tau3_lower_bound(rho3: &ComplexMatrix) -> Result<f64, EntanglementError> {
    tau3_with_generators(rho3, &So4GeneratorSet::new())
}

pub fn tau3_with_generators(
    rho3: &ComplexMatrix,
    generators: &So4GeneratorSet,
) -> Result<f64, EntanglementError> {
    let terms = lower_bound_terms(rho3, generators)?;
    Ok(terms.iter().flatten().map(|c| c * c).sum::<f64>() / 3.0)
}

pub fn report_for_state(
    rho3: &ComplexMatrix,
    tag: StateTag,
) -> Result<EntanglementReport, EntanglementError> {
    let (c12, c13, c23) = pairwise_concurrences(rho3)?;
    let tau3 = tau3_lower_bound(rho3)?;
    Ok(EntanglementReport {
        c12,
        c13,
        c23,
        tau3,
        state_tag: tag,
    })
}

/// Entanglement of the cold-end or hot-end thermal state of a cycle.
pub fn report_for_cycle(
    cs: &CycleSpec,
    at: StateTag,
) -> Result<EntanglementReport, EntanglementError> {
    let states = cycle_states(cs)?;
    let rho = match at {
        StateTag::ColdEnd => &states.cold.rho,
        StateTag::HotEnd => &states.hot.rho,
        StateTag::Custom => return Err(EntanglementError::CustomTagForCycle),
    };
    report_for_state(rho, at)
}
