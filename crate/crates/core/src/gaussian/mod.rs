//! Exact phase-space description of the Hamiltonian model.

mod covariance;
mod params;
mod squeezing;
mod transform;
mod williamson;

pub use covariance::{
    energy_closed_form, pure_state_fidelity, state_moments, transform_infidelity, CovarianceMatrix,
    StateMoments,
};
pub use params::{classify_domain, DomainTag, ModelParams, BOUNDARY_EPS};
pub use squeezing::{
    lemma_approximant, tmsv_covariance, tmsv_distance, tmsv_overlap, tmsv_params, wrap_phase,
    SqueezingParams,
};
pub use transform::{symplectic_form, symplectic_transform, SymplecticMatrix};
pub use williamson::{symplectic_eigenvalues, symplectic_spectrum};
