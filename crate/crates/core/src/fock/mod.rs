//! Brute-force truncated Fock-space oracle on the pair sector `span{|n,n⟩}`.

mod propagate;
mod state;
mod unsqueeze;

pub use propagate::{
    adaptive, apply_layers, circuit_layers, circuit_state, evolve_vacuum, evolve_vacuum_at,
    propagate_tridiagonal, tmsv_state, tmsv_state_at, Layer,
};
pub use state::{
    infidelity, observable_stats, overlap, phase_aligned_distance, quadrature_covariance,
    reduced_covariance, weighted_shift_moments, FockStateNN, ObservableStats, ObservableTag,
    TruncationPolicy, WeightedShiftMoments, TAIL_LEVELS,
};
pub use unsqueeze::{unsqueezed_snr, unsqueezed_state};
