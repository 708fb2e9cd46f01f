use std::f64::consts::PI;

use nalgebra::Matrix4;
use serde::{Deserialize, Serialize};

use super::types::{check_step, Backend, Model, QfiMethod, QfiReport, Wrt};
use crate::circuit::CircuitSpec;
use crate::error::{invalid, Error, Result};
use crate::fock::{apply_layers, circuit_layers, evolve_vacuum_at, infidelity, FockStateNN, TruncationPolicy};
use crate::gaussian::{symplectic_transform, transform_infidelity, ModelParams, SymplecticMatrix};

/// `¼sinh²(4g sin(φ/2)) + 4g²cos²(φ/2)`: the QFI for `φ` of the `θ = 0` probe,
/// a two-mode squeezed vacuum with `f = 2g sin(φ/2)` and `u = −φ/2`.
pub fn qfi_phi_closed(g: f64, phi: f64) -> Result<QfiReport> {
    let params = ModelParams::new(g, 0.0, phi)?;
    let half = 0.5 * params.phi();
    let value = 0.25 * (4.0 * g * half.sin()).sinh().powi(2) + 4.0 * g * g * half.cos().powi(2);
    Ok(QfiReport {
        value,
        method: QfiMethod::ClosedForm,
        wrt: Wrt::Phi,
        step: 0.0,
        params,
        model: Model::Hamiltonian,
        backend: None,
    })
}

/// `sinh⁴(2g)/g²`, the QFI for `θ` at `θ = 0`, `φ = π` (`16g²` as `g → 0`).
pub fn qfi_theta0_closed(g: f64) -> f64 {
    if g == 0.0 {
        0.0
    } else {
        (2.0 * g).sinh().powi(4) / (g * g)
    }
}

/// `¼ tr[(Σ⁻¹ ∂Σ)²]` for a pure two-mode Gaussian state.
pub fn gaussian_qfi_from_covariance(sigma: &Matrix4<f64>, dsigma: &Matrix4<f64>) -> Result<f64> {
    let inv = sigma
        .try_inverse()
        .ok_or_else(|| invalid("covariance matrix is singular"))?;
    let m = inv * dsigma;
    Ok(0.25 * (m * m).trace())
}

fn shifted(params: &ModelParams, wrt: Wrt, dx: f64) -> Result<ModelParams> {
    match wrt {
        Wrt::Phi => params.with_phi(params.phi() + dx),
        Wrt::Theta => params.with_theta(params.theta() + dx),
    }
}

fn transform_at(params: &ModelParams, wrt: Wrt, dx: f64) -> Result<Matrix4<f64>> {
    Ok(*symplectic_transform(&shifted(params, wrt, dx)?).matrix())
}

/// `∂T` by central differences with one Richardson level.
fn transform_derivative(params: &ModelParams, wrt: Wrt, h: f64) -> Result<Matrix4<f64>> {
    let central = |s: f64| -> Result<Matrix4<f64>> {
        Ok((transform_at(params, wrt, s)? - transform_at(params, wrt, -s)?) / (2.0 * s))
    };
    let coarse = central(h)?;
    let fine = central(0.5 * h)?;
    Ok((4.0 * fine - coarse) / 3.0)
}

/// QFI of the Hamiltonian model from the covariance formula, evaluated
/// through the transform: with `G = ∂T·T⁻¹`, `Σ⁻¹∂Σ` is similar to `G + Gᵀ`.
fn gaussian_formula(params: &ModelParams, wrt: Wrt, h: f64) -> Result<f64> {
    let t = symplectic_transform(params);
    let dt = transform_derivative(params, wrt, h)?;
    let g = dt * t.inverse().matrix();
    let s = g + g.transpose();
    Ok(0.25 * (s * s).trace())
}

/// `2(D(x+h) + D(x−h))/h²` with `D = 1 − |⟨ψ(x)|ψ(x±h)⟩|²`; equal to
/// `−2(F₊ − 2F₀ + F₋)/h²` since `F₀ = 1`.
fn curvature(d_plus: f64, d_minus: f64, h: f64) -> f64 {
    2.0 * (d_plus + d_minus) / (h * h)
}

fn gaussian_fidelity_fd(params: &ModelParams, wrt: Wrt, h: f64) -> Result<f64> {
    let t0 = symplectic_transform(params);
    let offsets = stencil_offsets(h);
    let mut d = [0.0; 4];
    for (k, &dx) in offsets[1..].iter().enumerate() {
        let t = SymplecticMatrix::from_matrix_unchecked(transform_at(params, wrt, dx)?);
        d[k] = transform_infidelity(&t0, &t);
    }
    Ok(richardson_curvature(|k| d[k], h))
}

/// States at `x + dx` for each offset, sharing one truncation. The first
/// offset is the reference point; its truncation is found adaptively and
/// doubled further if a shifted state has a heavier tail.
pub(crate) fn fock_stencil<F>(
    trunc: &TruncationPolicy,
    start: usize,
    offsets: &[f64],
    build: F,
) -> Result<Vec<FockStateNN>>
where
    F: Fn(f64, usize) -> Result<FockStateNN>,
{
    trunc.validate()?;
    let mut nmax = start.max(TruncationPolicy::MIN_NMAX);
    let mut doublings = 0;
    let mut center = build(offsets[0], nmax)?;
    loop {
        if center.tail_mass() < trunc.tail_tol {
            let mut states = Vec::with_capacity(offsets.len());
            for &dx in &offsets[1..] {
                let s = build(dx, nmax)?;
                if s.tail_mass() >= trunc.tail_tol {
                    break;
                }
                states.push(s);
            }
            if states.len() + 1 == offsets.len() {
                states.insert(0, center);
                return Ok(states);
            }
        }
        if doublings == trunc.max_doublings {
            return Err(Error::TruncationFailure {
                nmax,
                tail: center.tail_mass(),
                tolerance: trunc.tail_tol,
            });
        }
        doublings += 1;
        nmax *= 2;
        center = build(offsets[0], nmax)?;
    }
}

/// States at `x`, `x + h` and `x − h` with a shared truncation.
pub(crate) fn fock_triplet<F>(
    trunc: &TruncationPolicy,
    start: usize,
    h: f64,
    build: F,
) -> Result<[FockStateNN; 3]>
where
    F: Fn(f64, usize) -> Result<FockStateNN>,
{
    let v = fock_stencil(trunc, start, &[0.0, h, -h], build)?;
    let [c, p, m]: [FockStateNN; 3] = v.try_into().expect("three offsets");
    Ok([c, p, m])
}

/// Fidelity curvature at steps `h` and `h/2` combined by one Richardson level.
fn richardson_curvature(infidelity_at: impl Fn(usize) -> f64, h: f64) -> f64 {
    let coarse = curvature(infidelity_at(0), infidelity_at(1), h);
    let fine = curvature(infidelity_at(2), infidelity_at(3), 0.5 * h);
    (4.0 * fine - coarse) / 3.0
}

fn stencil_offsets(h: f64) -> [f64; 5] {
    [0.0, h, -h, 0.5 * h, -0.5 * h]
}

fn fock_fidelity_fd(params: &ModelParams, wrt: Wrt, h: f64, trunc: &TruncationPolicy) -> Result<f64> {
    let start = trunc.starting_nmax(params.g(), params.phi());
    let states = fock_stencil(trunc, start, &stencil_offsets(h), |dx, n| {
        Ok(evolve_vacuum_at(&shifted(params, wrt, dx)?, n))
    })?;
    Ok(richardson_curvature(|k| infidelity(&states[0], &states[k + 1]), h))
}

/// Numerical QFI of the Hamiltonian model.
///
/// `GaussianFormula` needs the Gaussian backend; `FidelityFD` works with
/// either. `ClosedForm` is available for `φ` at `θ = 0` and for `θ` at
/// `θ = 0, φ = π`.
pub fn qfi_numeric(
    params: &ModelParams,
    wrt: Wrt,
    method: QfiMethod,
    backend: Backend,
    step: f64,
    trunc: &TruncationPolicy,
) -> Result<QfiReport> {
    let (value, step, backend) = match method {
        QfiMethod::ClosedForm => (qfi_closed(params, wrt)?, 0.0, None),
        // at g = 0 the output is the vacuum for every θ and φ
        QfiMethod::GaussianFormula if params.g() == 0.0 && backend == Backend::Gaussian => {
            check_step(step)?;
            (0.0, step, Some(backend))
        }
        QfiMethod::FidelityFD if params.g() == 0.0 => {
            check_step(step)?;
            (0.0, step, Some(backend))
        }
        QfiMethod::GaussianFormula => {
            check_step(step)?;
            if backend != Backend::Gaussian {
                return Err(Error::Incompatible(
                    "the covariance QFI formula needs the gaussian backend".into(),
                ));
            }
            (gaussian_formula(params, wrt, step)?, step, Some(backend))
        }
        QfiMethod::FidelityFD => {
            check_step(step)?;
            let v = match backend {
                Backend::Gaussian => gaussian_fidelity_fd(params, wrt, step)?,
                Backend::Fock => fock_fidelity_fd(params, wrt, step, trunc)?,
            };
            (v, step, Some(backend))
        }
    };
    Ok(QfiReport {
        value,
        method,
        wrt,
        step,
        params: *params,
        model: Model::Hamiltonian,
        backend,
    })
}

fn qfi_closed(params: &ModelParams, wrt: Wrt) -> Result<f64> {
    match wrt {
        Wrt::Phi if params.theta() == 0.0 => Ok(qfi_phi_closed(params.g(), params.phi())?.value),
        Wrt::Theta if params.theta() == 0.0 && (params.phi() - PI).abs() < 1e-15 => {
            Ok(qfi_theta0_closed(params.g()))
        }
        _ => Err(Error::Incompatible(format!(
            "no closed form for the QFI of {wrt} at θ = {}, φ = {}",
            params.theta(),
            params.phi()
        ))),
    }
}

/// Closed-form figures of merit of the circuit model `V(g, −g, θ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CircuitBenchmarks {
    /// `4N(N+1) = E² − 1 = sinh²2g` with `N = sinh²g`, `E = cosh 2g`.
    pub qfi_theta: f64,
    /// `lim_{θ→0}` SNR of the total photon number, `sinh²2g`.
    pub snr_limit_ntot: f64,
    /// `cosh 2g`.
    pub energy: f64,
}

pub fn circuit_benchmarks(g: f64) -> Result<CircuitBenchmarks> {
    if !(g.is_finite() && g >= 0.0) {
        return Err(invalid(format!("g must be finite and non-negative, got {g}")));
    }
    let n = g.sinh().powi(2);
    let energy = (2.0 * g).cosh();
    Ok(CircuitBenchmarks {
        qfi_theta: 4.0 * n * (n + 1.0),
        snr_limit_ntot: (2.0 * g).sinh().powi(2),
        energy,
    })
}

/// QFI for `θ` of the circuit state `V(g, −g, θ)|0,0⟩`: the closed form
/// `4N(N+1)` or Fock-state fidelity curvature.
pub fn qfi_circuit(
    g: f64,
    theta: f64,
    method: QfiMethod,
    step: f64,
    trunc: &TruncationPolicy,
) -> Result<QfiReport> {
    let params = ModelParams::new(g, theta, PI)?;
    let (value, step, backend) = match method {
        QfiMethod::ClosedForm => (circuit_benchmarks(g)?.qfi_theta, 0.0, None),
        QfiMethod::FidelityFD => {
            check_step(step)?;
            let start = trunc.starting_nmax(g, PI);
            let states = fock_stencil(trunc, start, &stencil_offsets(step), |dx, n| {
                let spec = CircuitSpec::new(g, -g, theta + dx)?;
                Ok(apply_layers(&circuit_layers(&spec), n))
            })?;
            let value = richardson_curvature(|k| infidelity(&states[0], &states[k + 1]), step);
            (value, step, Some(Backend::Fock))
        }
        QfiMethod::GaussianFormula => {
            return Err(Error::Incompatible(
                "the circuit model is evaluated with the closed form or Fock fidelities".into(),
            ))
        }
    };
    Ok(QfiReport {
        value,
        method,
        wrt: Wrt::Theta,
        step,
        params,
        model: Model::Circuit,
        backend,
    })
}

/// Exact QFI at `θ = 0, φ = π` against the logarithmic Heisenberg asymptote.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Theta0Scaling {
    /// `sinh⁴2g / g²`.
    pub qfi_exact: f64,
    /// `4(E / ln 2E)²` with `E = cosh 4g`.
    pub asymptote: f64,
    pub ratio: f64,
}

pub fn theta0_scaling(g: f64) -> Result<Theta0Scaling> {
    if !(g.is_finite() && g > 0.0) {
        return Err(invalid(format!("g must be positive, got {g}")));
    }
    let qfi_exact = qfi_theta0_closed(g);
    let e = (4.0 * g).cosh();
    let asymptote = 4.0 * (e / (2.0 * e).ln()).powi(2);
    Ok(Theta0Scaling {
        qfi_exact,
        asymptote,
        ratio: qfi_exact / asymptote,
    })
}

/// Least-squares slope of `ln QFI` against `ln E` over the given points.
pub fn energy_exponent_fit(points: &[(f64, f64)]) -> Result<f64> {
    let pts: Vec<(f64, f64)> = points
        .iter()
        .filter(|(e, q)| *e > 1.0 && *q > 0.0)
        .map(|(e, q)| (e.ln(), q.ln()))
        .collect();
    if pts.len() < 2 {
        return Err(invalid("the exponent fit needs two points with E > 1 and QFI > 0"));
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        return Err(invalid("the exponent fit needs distinct energies"));
    }
    Ok(sxy / sxx)
}
