use std::f64::consts::PI;

use super::types::Backend;
use crate::error::{invalid, Result};
use crate::fock::{evolve_vacuum_at, phase_aligned_distance, tmsv_state, evolve_vacuum, TruncationPolicy};
use crate::gaussian::{lemma_approximant, tmsv_distance, tmsv_params, ModelParams};

/// Phase-aligned `ℓ²` distance between `e^{-iH}|0,0⟩` at `(λ/2, θ, π)` and the
/// large-`λ` approximant `TMSV(√(λ²−θ²), π + arccos(θ/λ))`.
///
/// The Gaussian backend uses the closed-form TMSV overlap with the exact
/// squeezing of the model state; the Fock backend evolves the state.
pub fn lemma_distance(theta: f64, lambda: f64, backend: Backend, trunc: &TruncationPolicy) -> Result<f64> {
    if !(lambda > theta.abs()) {
        return Err(invalid(format!("the approximant needs λ > |θ|, got λ = {lambda}, θ = {theta}")));
    }
    let params = ModelParams::new(0.5 * lambda, theta, PI)?;
    let approx = lemma_approximant(theta, lambda)?;
    match backend {
        Backend::Gaussian => Ok(tmsv_distance(&tmsv_params(&params), &approx)),
        Backend::Fock => {
            let state = evolve_vacuum(&params, trunc)?;
            let policy = TruncationPolicy {
                initial_nmax: Some(state.nmax()),
                ..*trunc
            };
            let target = tmsv_state(approx.f, approx.u, &policy)?;
            let state = if target.nmax() > state.nmax() {
                evolve_vacuum_at(&params, target.nmax())
            } else {
                state
            };
            Ok(phase_aligned_distance(&state, &target))
        }
    }
}

/// Phase-aligned distance between the evolved Fock state and the TMSV rebuilt
/// from the covariance (`cosh 2f` and the quadrant-resolved phase `u`).
pub fn tmsv_reconstruction_distance(params: &ModelParams, trunc: &TruncationPolicy) -> Result<f64> {
    let state = evolve_vacuum(params, trunc)?;
    let sq = tmsv_params(params);
    let policy = TruncationPolicy {
        initial_nmax: Some(state.nmax()),
        ..*trunc
    };
    let target = tmsv_state(sq.f, sq.u, &policy)?;
    let state = if target.nmax() > state.nmax() {
        evolve_vacuum_at(params, target.nmax())
    } else {
        state
    };
    Ok(phase_aligned_distance(&state, &target))
}
