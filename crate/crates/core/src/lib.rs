//! Simulation of a quantum Otto heat engine whose working substance is three
//! coupled quantum dots, each carrying one exciton qubit.
//!
//! The crate is organized bottom-up:
//!
//! - [`linalg`]: dense complex matrices, Hermitian eigendecomposition,
//!   partial traces and qubit relabelings.
//! - [`model`]: the exciton Hamiltonian with field, dipolar and Förster terms.
//! - [`thermo`]: Gibbs states and internal energies.
//! - [`otto`]: one four-stroke cycle: heats, work, efficiency, operating mode.
//! - [`entanglement`]: pairwise concurrence and the tripartite lower bound.
//! - [`sweep`]: λ sweeps, figure presets and critical-coupling detection.
//!
//! Energies are in meV and temperatures in K throughout.

pub mod entanglement;
pub mod linalg;
pub mod model;
pub mod otto;
pub mod sweep;
pub mod thermo;

pub use entanglement::{
    concurrence, pairwise_concurrences, report_for_cycle, report_for_state, tau3_lower_bound,
    EntanglementError, EntanglementReport, So4GeneratorSet, StateTag,
};
pub use linalg::{
    eig_hermitian, kron, partial_trace, permute_qubits, sqrt_psd, ComplexMatrix,
    EigenDecomposition, LinalgError,
};
pub use model::{build_hamiltonian, single_qubit_gap, JzConvention, ModelError, ModelParams};
pub use otto::{
    classify_mode, efficiency_of, match_levels, run_cycle, CycleResult, CycleSpec, Mode, OttoError,
    PairingRule,
};
pub use sweep::{
    figure_preset, find_critical_lambdas, run_sweep, Column, CriticalPoint, Direction, Grid,
    SweepAxis, SweepError, SweepRow, SweepSpec, DEFAULT_GRID, PRESET_NAMES,
};
pub use thermo::{gibbs_state, internal_energy, ThermalState, ThermoError, K_B};

pub use num_complex::Complex64;
