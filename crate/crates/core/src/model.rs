//! The three-dot exciton Hamiltonian.
//!
//! Basis convention: state index `b = 4·n₁ + 2·n₂ + n₃` where `nᵢ = 1` when
//! dot `i` holds an exciton (`|+⟩`) and `0` otherwise (`|−⟩`). Dot 1 is the
//! most significant bit. All energies are in meV with ħ absorbed.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{kron, ComplexMatrix};

pub const N_DOTS: usize = 3;
pub const DIM: usize = 1 << N_DOTS;

/// How the ordered-pair `J_z` sum is read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum JzConvention {
    /// Sum over ordered pairs `i ≠ j` with no ½, i.e. `2·J_z` per excited pair.
    #[default]
    Literal,
    /// `J_z` once per unordered excited pair.
    PerPair,
}

impl JzConvention {
    fn pair_factor(self) -> f64 {
        match self {
            JzConvention::Literal => 1.0,
            JzConvention::PerPair => 0.5,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelParams {
    /// Exciton energies ħωᵢ.
    pub omega_mev: [f64; N_DOTS],
    /// Dipole-field energies ħΩᵢ.
    pub omega_field_mev: [f64; N_DOTS],
    /// Static dipolar coupling ħJ_z.
    pub jz_mev: f64,
    /// Förster coupling λ.
    pub lambda_mev: f64,
    #[serde(default)]
    pub jz_convention: JzConvention,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("{field} must be finite (got {value})")]
    NonFinite { field: &'static str, value: f64 },
    #[error("{field} must be non-negative (got {value})")]
    NegativeExcitonEnergy { field: &'static str, value: f64 },
}

impl Default for ModelParams {
    /// ω = 2 meV on every dot, J_z = 2.5 meV, λ = 0, Ω = 5 meV.
    fn default() -> Self {
        Self {
            omega_mev: [2.0; N_DOTS],
            omega_field_mev: [5.0; N_DOTS],
            jz_mev: 2.5,
            lambda_mev: 0.0,
            jz_convention: JzConvention::Literal,
        }
    }
}

impl ModelParams {
    pub fn with_lambda(mut self, lambda_mev: f64) -> Self {
        self.lambda_mev = lambda_mev;
        self
    }

    /// Sets the same field energy Ω on every dot.
    pub fn with_uniform_field(mut self, omega_field_mev: f64) -> Self {
        self.omega_field_mev = [omega_field_mev; N_DOTS];
        self
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        const OMEGA: [&str; 3] = ["omega_mev[0]", "omega_mev[1]", "omega_mev[2]"];
        const FIELD: [&str; 3] = [
            "omega_field_mev[0]",
            "omega_field_mev[1]",
            "omega_field_mev[2]",
        ];
        for (i, &w) in self.omega_mev.iter().enumerate() {
            if !w.is_finite() {
                return Err(ModelError::NonFinite {
                    field: OMEGA[i],
                    value: w,
                });
            }
            if w < 0.0 {
                return Err(ModelError::NegativeExcitonEnergy {
                    field: OMEGA[i],
                    value: w,
                });
            }
        }
        for (i, &f) in self.omega_field_mev.iter().enumerate() {
            if !f.is_finite() {
                return Err(ModelError::NonFinite {
                    field: FIELD[i],
                    value: f,
                });
            }
        }
        for (field, value) in [("jz_mev", self.jz_mev), ("lambda_mev", self.lambda_mev)] {
            if !value.is_finite() {
                return Err(ModelError::NonFinite { field, value });
            }
        }
        Ok(())
    }
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Single-dot `S_z`. Local index 0 is `|−⟩` and local index 1 is `|+⟩`
/// (see [`local_index`]), so `S_z = diag(−½, +½)`.
pub fn spin_z() -> ComplexMatrix {
    ComplexMatrix::from_real_diagonal(&[-0.5, 0.5])
}

/// `S₊ = |+⟩⟨−|`.
pub fn spin_plus() -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(2, 2);
    m[(1, 0)] = c(1.0);
    m
}

/// `S₋ = |−⟩⟨+|`.
pub fn spin_minus() -> ComplexMatrix {
    spin_plus().adjoint()
}

/// Local basis index of a dot state: 0 for `|−⟩`, 1 for `|+⟩`.
pub const fn local_index(excited: bool) -> usize {
    excited as usize
}

/// Embeds a single-dot operator on dot `site` of the three-dot register.
pub fn on_site(op: &ComplexMatrix, site: usize) -> ComplexMatrix {
    assert!(site < N_DOTS);
    let id = ComplexMatrix::identity(2);
    let mut out = if site == 0 { op.clone() } else { id.clone() };
    for k in 1..N_DOTS {
        out = kron(&out, if k == site { op } else { &id });
    }
    out
}

/// `nᵢ = S_zⁱ + ½` on dot `site`.
pub fn occupation(site: usize) -> ComplexMatrix {
    on_site(&ComplexMatrix::from_real_diagonal(&[0.0, 1.0]), site)
}

/// Total excitation number `N = Σᵢ (S_zⁱ + ½)`.
pub fn excitation_number() -> ComplexMatrix {
    let mut n = ComplexMatrix::zeros(DIM, DIM);
    for i in 0..N_DOTS {
        n = &n + &occupation(i);
    }
    n
}

/// Builds the 8×8 Hamiltonian in meV:
///
/// `H = Σᵢ ωᵢ nᵢ + Σᵢ Ωᵢ S_zⁱ + f·J_z Σ_{i≠j} nᵢ nⱼ + λ Σ_{i<j} (S₊ⁱS₋ʲ + S₊ʲS₋ⁱ)`
///
/// with `f = 1` for [`JzConvention::Literal`] and `f = ½` for
/// [`JzConvention::PerPair`].
pub fn build_hamiltonian(p: &ModelParams) -> ComplexMatrix {
    let sz = spin_z();
    let sp = spin_plus();
    let sm = spin_minus();
    let n: Vec<ComplexMatrix> = (0..N_DOTS).map(occupation).collect();

    let mut h = ComplexMatrix::zeros(DIM, DIM);
    for (i, n_i) in n.iter().enumerate() {
        h = &h + &n_i.scale(c(p.omega_mev[i]));
        h = &h + &on_site(&sz, i).scale(c(p.omega_field_mev[i]));
    }

    let jz = p.jz_mev * p.jz_convention.pair_factor();
    for i in 0..N_DOTS {
        for j in 0..N_DOTS {
            if i != j {
                h = &h + &(&n[i] * &n[j]).scale(c(jz));
            }
        }
    }

    for i in 0..N_DOTS {
        for j in i + 1..N_DOTS {
            let hop =
                &(&on_site(&sp, i) * &on_site(&sm, j)) + &(&on_site(&sp, j) * &on_site(&sm, i));
            h = &h + &hop.scale(c(p.lambda_mev));
        }
    }
    h
}

/// `ωᵢ + Ωᵢ`, the splitting of dot `i` when it is decoupled from the others.
pub fn single_qubit_gap(p: &ModelParams, i: usize) -> f64 {
    p.omega_mev[i] + p.omega_field_mev[i]
}
