//! Quantum Fisher information and signal-to-noise analysis for the
//! Hamiltonian and circuit models.

mod lemma;
mod qfi;
mod sld;
mod snr;
mod types;

pub use lemma::{lemma_distance, tmsv_reconstruction_distance};
pub use qfi::{
    circuit_benchmarks, energy_exponent_fit, gaussian_qfi_from_covariance, qfi_circuit, qfi_numeric,
    qfi_phi_closed, qfi_theta0_closed, theta0_scaling, CircuitBenchmarks, Theta0Scaling,
};
pub use sld::{numerical_rank, sld_matrix, sld_smallg_residual};
pub use snr::{approximant_theta_snr, snr_numeric, NOISE_FLOOR, SIGNAL_FLOOR};
pub use types::{
    Backend, Model, QfiMethod, QfiReport, SnrReport, Wrt, DEFAULT_COVARIANCE_STEP,
    DEFAULT_FIDELITY_STEP, STEP_RANGE,
};
