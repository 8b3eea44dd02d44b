//! Shared inputs for the kernel benchmarks.

use num_complex::Complex64;
use qdotto_core::{
    build_hamiltonian, figure_preset, gibbs_state, ComplexMatrix, CycleSpec, Grid, SweepSpec,
};

/// Coupled eight-level Hamiltonian with every term switched on.
pub fn coupled_hamiltonian() -> ComplexMatrix {
    let mut cs = CycleSpec::baseline().with_lambda(3.5);
    cs.base.omega_mev = [2.0, 3.0, 4.0];
    build_hamiltonian(&cs.hot_params())
}

/// Cold-end Gibbs state of an entangling cycle, as measured in sweeps.
pub fn entangled_thermal_state() -> ComplexMatrix {
    let cs = CycleSpec::baseline().with_lambda(8.0);
    let h = build_hamiltonian(&cs.cold_params());
    gibbs_state(&h, cs.t_cold_k).expect("valid temperature").rho
}

/// Three-qubit GHZ projector.
pub fn ghz_state() -> ComplexMatrix {
    let a = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let mut psi = vec![Complex64::new(0.0, 0.0); 8];
    psi[0] = a;
    psi[7] = a;
    ComplexMatrix::outer(&psi)
}

/// A short entanglement sweep over the symmetric 2 meV preset.
pub fn small_sweep() -> SweepSpec {
    let mut spec = figure_preset("ent_sym_2mev").expect("known preset");
    spec.grid = Grid::new(0.0, 8.0, 0.5);
    spec
}
