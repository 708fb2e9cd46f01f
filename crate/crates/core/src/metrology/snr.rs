use std::f64::consts::PI;

use super::qfi::fock_triplet;
use super::types::{check_step, Backend, Model, SnrReport, Wrt};
use crate::circuit::CircuitSpec;
use crate::error::{Error, Result};
use crate::fock::{
    apply_layers, circuit_layers, evolve_vacuum_at, observable_stats, tmsv_state_at, ObservableTag,
    TruncationPolicy,
};
use crate::gaussian::{lemma_approximant, state_moments, ModelParams};

/// Variances at or below this are treated as a noiseless readout.
pub const NOISE_FLOOR: f64 = 1e-14;
/// Signals at or below this (in absolute value) count as zero.
pub const SIGNAL_FLOOR: f64 = 1e-9;

fn shifted(params: &ModelParams, wrt: Wrt, dx: f64) -> Result<ModelParams> {
    match wrt {
        Wrt::Phi => params.with_phi(params.phi() + dx),
        Wrt::Theta => params.with_theta(params.theta() + dx),
    }
}

fn finish(
    signal: f64,
    noise: f64,
    obs: ObservableTag,
    params: &ModelParams,
    wrt: Wrt,
    step: f64,
    model: Model,
    backend: Backend,
) -> Result<SnrReport> {
    let snr = if noise <= NOISE_FLOOR {
        if signal.abs() > SIGNAL_FLOOR {
            return Err(Error::DegenerateReadout { signal });
        }
        0.0
    } else {
        signal * signal / noise
    };
    Ok(SnrReport {
        signal,
        noise,
        snr,
        observable: obs,
        wrt,
        step,
        params: *params,
        model,
        backend,
    })
}

/// Signal-to-noise ratio `(∂⟨O⟩)² / Var O` with a central-difference signal.
///
/// For the circuit model the state is `V(g, −g, θ)|0,0⟩` with `g` and `θ`
/// taken from `params`; only `θ` derivatives and the Fock backend apply. The
/// Gaussian backend supports the total photon number only.
pub fn snr_numeric(
    obs: ObservableTag,
    params: &ModelParams,
    wrt: Wrt,
    step: f64,
    model: Model,
    backend: Backend,
    trunc: &TruncationPolicy,
) -> Result<SnrReport> {
    check_step(step)?;
    let h = step;
    match (model, backend) {
        (Model::Hamiltonian, Backend::Gaussian) => {
            if obs != ObservableTag::TotalPhotonN {
                return Err(Error::Incompatible(
                    "the weighted-shift observable is not a quadratic quadrature form; use the fock backend".into(),
                ));
            }
            let mean = |dx: f64| -> Result<f64> {
                Ok(state_moments(&shifted(params, wrt, dx)?).cov.total_photon_stats().0)
            };
            let signal = (mean(h)? - mean(-h)?) / (2.0 * h);
            let noise = state_moments(params).cov.total_photon_stats().1;
            finish(signal, noise, obs, params, wrt, step, model, backend)
        }
        (Model::Hamiltonian, Backend::Fock) => {
            let start = trunc.starting_nmax(params.g(), params.phi());
            let [c, p, m] = fock_triplet(trunc, start, h, |dx, n| Ok(evolve_vacuum_at(&shifted(params, wrt, dx)?, n)))?;
            let signal = (observable_stats(&p, obs).mean - observable_stats(&m, obs).mean) / (2.0 * h);
            let noise = observable_stats(&c, obs).variance;
            finish(signal, noise, obs, params, wrt, step, model, backend)
        }
        (Model::Circuit, Backend::Fock) => {
            if wrt != Wrt::Theta {
                return Err(Error::Incompatible("the circuit model has no φ parameter".into()));
            }
            let g = params.g();
            let theta = params.theta();
            let start = trunc.starting_nmax(g, PI);
            let [c, p, m] = fock_triplet(trunc, start, h, |dx, n| {
                Ok(apply_layers(&circuit_layers(&CircuitSpec::new(g, -g, theta + dx)?), n))
            })?;
            let signal = (observable_stats(&p, obs).mean - observable_stats(&m, obs).mean) / (2.0 * h);
            let noise = observable_stats(&c, obs).variance;
            finish(signal, noise, obs, params, wrt, step, model, backend)
        }
        (Model::Circuit, Backend::Gaussian) => Err(Error::Incompatible(
            "the circuit model is simulated with the fock backend".into(),
        )),
    }
}

/// Signal-to-noise ratio of the weighted-shift observable for `θ` on the
/// large-coupling approximant `TMSV(√(λ²−θ²), π + arccos(θ/λ))`, `λ = 2g`.
pub fn approximant_theta_snr(g: f64, theta: f64, step: f64, trunc: &TruncationPolicy) -> Result<f64> {
    check_step(step)?;
    let lambda = 2.0 * g;
    let build = |dx: f64, n: usize| -> Result<_> {
        let sq = lemma_approximant(theta + dx, lambda)?;
        Ok(tmsv_state_at(sq.f, sq.u, n))
    };
    let start = trunc.starting_nmax(g, PI);
    let [c, p, m] = fock_triplet(trunc, start, step, build)?;
    let obs = ObservableTag::WeightedShiftO;
    let signal = (observable_stats(&p, obs).mean - observable_stats(&m, obs).mean) / (2.0 * step);
    let noise = observable_stats(&c, obs).variance;
    Ok(signal * signal / noise)
}
