//! Gibbs states of a Hamiltonian in contact with a bath.

use thiserror::Error;

use crate::linalg::{eig_hermitian, ComplexMatrix, EigenDecomposition, LinalgError};

/// Boltzmann constant in meV/K.
pub const K_B: f64 = 8.617333262e-2;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ThermoError {
    #[error("temperature must be positive and finite (got {0} K)")]
    NonPositiveTemperature(f64),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Thermal-equilibrium state `ρ = Σₙ Pₙ |ψₙ⟩⟨ψₙ|` at temperature `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct ThermalState {
    pub rho: ComplexMatrix,
    /// Partition function of the spectrum shifted so the ground level sits at
    /// zero. Multiply by `exp(−β·E₀)` for the unshifted value.
    pub z: f64,
    /// Occupation probabilities, aligned with `spectrum.eigenvalues`.
    pub probs: Vec<f64>,
    pub temperature: f64,
    pub spectrum: EigenDecomposition,
}

impl ThermalState {
    pub fn beta(&self) -> f64 {
        1.0 / (K_B * self.temperature)
    }

    pub fn purity(&self) -> f64 {
        self.probs.iter().map(|p| p * p).sum()
    }
}

/// Thermal state from an existing eigendecomposition.
pub fn gibbs_from_spectrum(
    spectrum: EigenDecomposition,
    t: f64,
) -> Result<ThermalState, ThermoError> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(ThermoError::NonPositiveTemperature(t));
    }
    let beta = 1.0 / (K_B * t);
    let e0 = spectrum.eigenvalues[0];
    let weights: Vec<f64> = spectrum
        .eigenvalues
        .iter()
        .map(|e| (-beta * (e - e0)).exp())
        .collect();
    let z: f64 = weights.iter().sum();
    let probs: Vec<f64> = weights.iter().map(|w| w / z).collect();
    let rho = spectrum.reconstruct_with_weights(&probs);
    Ok(ThermalState {
        rho,
        z,
        probs,
        temperature: t,
        spectrum,
    })
}

/// Gibbs state of `h` (meV) at temperature `t` (K).
pub fn gibbs_state(h: &ComplexMatrix, t: f64) -> Result<ThermalState, ThermoError> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(ThermoError::NonPositiveTemperature(t));
    }
    gibbs_from_spectrum(eig_hermitian(h)?, t)
}

/// `Σₙ Pₙ Eₙ` in meV.
pub fn internal_energy(ts: &ThermalState) -> f64 {
    ts.probs
        .iter()
        .zip(&ts.spectrum.eigenvalues)
        .map(|(p, e)| p * e)
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{build_hamiltonian, JzConvention, ModelParams};

    fn decoupled(field: f64) -> ModelParams {
        ModelParams {
            omega_mev: [2.0; 3],
            omega_field_mev: [field; 3],
            jz_mev: 0.0,
            lambda_mev: 0.0,
            jz_convention: JzConvention::Literal,
        }
    }

    /// Excited-state population of a two-level system with splitting `gap`.
    fn two_level_excited(gap: f64, t: f64) -> f64 {
        1.0 / (1.0 + (gap / (K_B * t)).exp())
    }

    #[test]
    fn infinite_temperature_is_uniform() {
        let ts = gibbs_state(&build_hamiltonian(&ModelParams::default()), 1e9).unwrap();
        for p in &ts.probs {
            assert!((p - 0.125).abs() < 1e-6);
        }
        let mean = ts.spectrum.eigenvalues.iter().sum::<f64>() / 8.0;
        assert!((internal_energy(&ts) - mean).abs() < 1e-5);
    }

    #[test]
    fn cold_decoupled_is_ground_state() {
        let ts = gibbs_state(&build_hamiltonian(&decoupled(5.0)), 1.0).unwrap();
        assert!(ts.probs[0] >= 1.0 - 1e-14);
        assert!((internal_energy(&ts) - ts.spectrum.eigenvalues[0]).abs() < 1e-12);
    }

    #[test]
    fn decoupled_partition_function_factorizes() {
        for t in [1.0, 10.0, 40.0, 300.0] {
            let ts = gibbs_state(&build_hamiltonian(&decoupled(5.0)), t).unwrap();
            let z1 = 1.0 + (-7.0 / (K_B * t)).exp();
            assert!((ts.z - z1.powi(3)).abs() < 1e-12 * z1.powi(3));
        }
    }

    #[test]
    fn decoupled_internal_energy_closed_form() {
        let ts = gibbs_state(&build_hamiltonian(&decoupled(5.0)), 40.0).unwrap();
        let p = two_level_excited(7.0, 40.0);
        assert!((p - 0.116008).abs() < 1e-6);
        let expected = 3.0 * (-2.5 + 7.0 * p);
        assert!((internal_energy(&ts) - expected).abs() < 1e-12);
        assert!((expected - (-5.0639)).abs() < 1e-4);
    }

    #[test]
    fn state_invariants_on_coupled_model() {
        let mut p = ModelParams::default().with_uniform_field(1.0);
        for lambda in [0.0, 1.5, 3.0, 4.5, 8.0] {
            p.lambda_mev = lambda;
            let h = build_hamiltonian(&p);
            for t in [1.0, 5.0, 40.0] {
                let ts = gibbs_state(&h, t).unwrap();
                assert!((ts.rho.trace().re - 1.0).abs() < 1e-12);
                assert!(ts.rho.is_hermitian(1e-15));
                assert!((ts.probs.iter().sum::<f64>() - 1.0).abs() < 1e-12);
                assert!(ts.probs.windows(2).all(|w| w[0] >= w[1]));
                assert!(ts.rho.commutator(&h).max_abs() < 1e-10);
                let tr_rho_h = (&ts.rho * &h).trace().re;
                assert!((tr_rho_h - internal_energy(&ts)).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn purity_falls_with_temperature() {
        let h = build_hamiltonian(&ModelParams::default().with_lambda(3.5));
        let mut last = f64::INFINITY;
        for t in [0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 40.0, 100.0, 1000.0] {
            let ts = gibbs_state(&h, t).unwrap();
            let purity = (&ts.rho * &ts.rho).trace().re;
            assert!((purity - ts.purity()).abs() < 1e-12);
            assert!(purity <= last);
            last = purity;
        }
    }

    #[test]
    fn diagonal_hamiltonian_gives_diagonal_state() {
        let ts = gibbs_state(&build_hamiltonian(&ModelParams::default()), 40.0).unwrap();
        for i in 0..8 {
            for j in 0..8 {
                if i != j {
                    assert!(ts.rho[(i, j)].norm() < 1e-14);
                }
            }
        }
    }

    #[test]
    fn rejects_bad_temperature() {
        let h = build_hamiltonian(&ModelParams::default());
        for t in [0.0, -1.0, f64::NAN, f64::INFINITY] {
            assert!(matches!(
                gibbs_state(&h, t),
                Err(ThermoError::NonPositiveTemperature(_))
            ));
        }
    }
}
