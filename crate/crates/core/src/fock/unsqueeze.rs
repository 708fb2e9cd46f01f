use std::f64::consts::PI;

use num_complex::Complex64;

use super::propagate::{adaptive, apply_layers, Layer};
use super::state::{observable_stats, FockStateNN, ObservableTag, TruncationPolicy};
use crate::error::{invalid, Result};
use crate::gaussian::ModelParams;

/// `e^{2ig(a₁†a₂† + a₁a₂)} e^{-iH}|0,0⟩` at `φ = π`, truncated at `nmax`.
///
/// The first factor undoes the `θ = 0` squeezing, so the total photon number
/// of this state is the unsqueezed readout of the probe.
pub fn unsqueezed_state(g: f64, theta: f64, nmax: usize) -> Result<FockStateNN> {
    let params = ModelParams::new(g, theta, PI)?;
    Ok(apply_layers(
        &[
            Layer::Hamiltonian(params),
            Layer::Squeeze(Complex64::new(0.0, 2.0 * g)),
        ],
        nmax,
    ))
}

/// Signal-to-noise ratio of the unsqueezed photon-number readout near
/// `θ = 0` at `φ = π`, evaluated at `θ = theta_step`.
///
/// The signal is the central difference of `⟨N⟩` with spacing
/// `theta_step / 100` and the noise the variance of `N`, both on
/// [`unsqueezed_state`]. The same truncation is used for every evaluation.
pub fn unsqueezed_snr(g: f64, theta_step: f64, trunc: &TruncationPolicy) -> Result<f64> {
    if !(g.is_finite() && g >= 0.0) {
        return Err(invalid(format!("g must be finite and non-negative, got {g}")));
    }
    if !(theta_step > 0.0 && theta_step <= 1e-2) {
        return Err(invalid(format!("theta step must lie in (0, 1e-2], got {theta_step}")));
    }
    if g == 0.0 {
        return Ok(0.0);
    }
    let start = trunc.starting_nmax(g, PI);
    let mut failure = None;
    let center = adaptive(trunc, start, |n| match unsqueezed_state(g, theta_step, n) {
        Ok(s) => s,
        Err(e) => {
            failure = Some(e);
            FockStateNN::vacuum(n)
        }
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    let nmax = center.nmax();
    let h = theta_step / 100.0;
    let mean = |t: f64| -> Result<f64> {
        Ok(observable_stats(&unsqueezed_state(g, t, nmax)?, ObservableTag::TotalPhotonN).mean)
    };
    let signal = (mean(theta_step + h)? - mean(theta_step - h)?) / (2.0 * h);
    let noise = observable_stats(&center, ObservableTag::TotalPhotonN).variance;
    if noise <= 0.0 {
        return Ok(0.0);
    }
    Ok(signal * signal / noise)
}
