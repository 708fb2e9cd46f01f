use std::f64::consts::PI;

use nalgebra::Matrix4;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::covariance::{state_moments, CovarianceMatrix};
use super::params::ModelParams;
use crate::error::{invalid, Result};

/// Two-mode squeezing `ζ = f e^{iu}` of `e^{ζa₁†a₂† − ζ̄a₁a₂}|0,0⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SqueezingParams {
    /// Squeeze magnitude, `f ≥ 0`.
    pub f: f64,
    /// Squeeze phase in `(−π, π]`.
    pub u: f64,
}

impl SqueezingParams {
    pub fn new(f: f64, u: f64) -> Result<Self> {
        if !f.is_finite() || f < 0.0 || !u.is_finite() {
            return Err(invalid(format!("squeezing needs finite f >= 0 and finite u, got ({f}, {u})")));
        }
        Ok(Self { f, u: wrap_phase(u) })
    }

    pub fn zeta(&self) -> Complex64 {
        Complex64::from_polar(self.f, self.u)
    }
}

/// Reduces an angle to `(−π, π]`.
pub fn wrap_phase(u: f64) -> f64 {
    let w = (u + PI).rem_euclid(2.0 * PI) - PI;
    if w <= -PI {
        w + 2.0 * PI
    } else {
        w
    }
}

/// Squeezing parameters of the model state `e^{-iH}|0,0⟩`.
///
/// `sinh 2f` and `u` come from the cross block of the covariance,
/// `½ sinh 2f (cos u Z + sin u X)`: the `Z` component fixes `cos u`, the `X`
/// component `sin u`, and `atan2` picks the quadrant. `cosh 2f` then equals
/// the energy.
pub fn tmsv_params(params: &ModelParams) -> SqueezingParams {
    let cov = state_moments(params).cov;
    let m = cov.matrix();
    let cos_part = 0.5 * (m[(0, 2)] - m[(1, 3)]);
    let sin_part = 0.5 * (m[(0, 3)] + m[(1, 2)]);
    let half_sinh = cos_part.hypot(sin_part);
    let f = 0.5 * (2.0 * half_sinh).asinh();
    let u = if half_sinh > 0.0 {
        wrap_phase(sin_part.atan2(cos_part))
    } else {
        0.0
    };
    SqueezingParams { f, u }
}

/// `½cosh 2f I⊗I + ½sinh 2f cos u X⊗Z + ½sinh 2f sin u X⊗X`.
pub fn tmsv_covariance(sq: &SqueezingParams) -> CovarianceMatrix {
    let c = 0.5 * (2.0 * sq.f).cosh();
    let s = 0.5 * (2.0 * sq.f).sinh();
    let (zc, xc) = (s * sq.u.cos(), s * sq.u.sin());
    let m = Matrix4::new(
        c, 0.0, zc, xc, //
        0.0, c, xc, -zc, //
        zc, xc, c, 0.0, //
        xc, -zc, 0.0, c,
    );
    CovarianceMatrix::new(m).expect("TMSV covariance is symmetric by construction")
}

/// Large-`λ` approximant of the Domain 2 state at `φ = π`:
/// `f = √(λ² − θ²)`, `u = π + arccos(θ/λ)`.
pub fn lemma_approximant(theta: f64, lambda: f64) -> Result<SqueezingParams> {
    if !(theta.is_finite() && lambda.is_finite()) || lambda <= theta.abs() {
        return Err(invalid(format!("approximant needs λ > |θ|, got λ = {lambda}, θ = {theta}")));
    }
    let f = ((lambda - theta) * (lambda + theta)).sqrt();
    SqueezingParams::new(f, PI + (theta / lambda).acos())
}

/// Closed-form overlap `⟨ζ_a|ζ_b⟩ = 1 / (cosh f_a cosh f_b (1 − t_a t_b e^{i(u_b−u_a)}))`.
pub fn tmsv_overlap(a: &SqueezingParams, b: &SqueezingParams) -> Complex64 {
    let (ta, tb) = (a.f.tanh(), b.f.tanh());
    let denom = Complex64::new(1.0, 0.0) - Complex64::from_polar(ta * tb, b.u - a.u);
    Complex64::new(1.0 / (a.f.cosh() * b.f.cosh()), 0.0) / denom
}

/// `min_α ‖ψ_a − e^{iα}ψ_b‖ = √(2 − 2|⟨ψ_a|ψ_b⟩|)`.
pub fn tmsv_distance(a: &SqueezingParams, b: &SqueezingParams) -> f64 {
    (2.0 - 2.0 * tmsv_overlap(a, b).norm()).max(0.0).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn squeezer_point_has_phase_minus_half_pi() {
        let sq = tmsv_params(&ModelParams::new(1.0, 0.0, PI).unwrap());
        assert!((sq.f - 2.0).abs() < 1e-12);
        assert!((sq.u + FRAC_PI_2).abs() < 1e-12);
    }

    #[test]
    fn tmsv_covariance_reproduces_model_covariance() {
        for &(g, theta, phi) in &[(1.0, 0.5, PI), (0.4, 1.5, 1.0), (0.7, 0.3, 2.0), (0.2, 0.0, 5.5)] {
            let p = ModelParams::new(g, theta, phi).unwrap();
            let sq = tmsv_params(&p);
            let model = state_moments(&p).cov;
            let tm = tmsv_covariance(&sq);
            assert!((model.matrix() - tm.matrix()).amax() < 1e-9, "{p:?}");
        }
    }

    #[test]
    fn cosh_two_f_is_the_energy() {
        for &(g, theta, phi) in &[(1.0, 0.5, PI), (0.4, 1.5, 1.0), (0.9, 2.0, 3.0)] {
            let p = ModelParams::new(g, theta, phi).unwrap();
            let sq = tmsv_params(&p);
            let e = state_moments(&p).energy;
            assert!(((2.0 * sq.f).cosh() - e).abs() < 1e-10 * e);
        }
    }

    #[test]
    fn cos_u_matches_the_per_domain_formulas() {
        // Domain 2: (x cosh x sin ξ − θ sinh x cos ξ)/√(λ²cosh²x − θ²)
        let p = ModelParams::new(1.0, 0.5, PI).unwrap();
        let (l, t, x, xi) = (p.lambda(), p.theta(), p.x(), p.xi());
        let cu = (x * x.cosh() * xi.sin() - t * x.sinh() * xi.cos())
            / (l * l * x.cosh().powi(2) - t * t).sqrt();
        assert!((tmsv_params(&p).u.cos() - cu).abs() < 1e-12);
        // Domain 1: (x cos x sin ξ − θ sin x cos ξ)/√(θ² − λ²cos²x)
        let p = ModelParams::new(0.4, 1.5, 1.0).unwrap();
        let (l, t, x, xi) = (p.lambda(), p.theta(), p.x(), p.xi());
        let cu = (x * x.cos() * xi.sin() - t * x.sin() * xi.cos())
            / (t * t - l * l * x.cos().powi(2)).sqrt();
        assert!((tmsv_params(&p).u.cos() - cu).abs() < 1e-12);
    }

    #[test]
    fn boundary_limit_of_the_squeezing() {
        // λ → θ⁺ at φ = π: f → ½ acosh(1 + 2λ²); the phase tends to
        // π + arccos(θ/√(1+θ²)) (mod 2π).
        for &theta in &[0.5, 1.0, 2.0] {
            let g = 0.5 * theta * (1.0 + 1e-7);
            let sq = tmsv_params(&ModelParams::new(g, theta, PI).unwrap());
            let l = 2.0 * g;
            assert!((sq.f - 0.5 * (1.0 + 2.0 * l * l).acosh()).abs() < 1e-6);
            let u_lim = wrap_phase(PI + (theta / (1.0 + theta * theta).sqrt()).acos());
            assert!((wrap_phase(sq.u - u_lim)).abs() < 1e-6);
        }
    }

    #[test]
    fn large_lambda_limit_approaches_the_approximant() {
        let theta = 1.0;
        let mut prev = f64::INFINITY;
        for &l in &[4.0, 8.0, 16.0, 32.0] {
            let sq = tmsv_params(&ModelParams::new(0.5 * l, theta, PI).unwrap());
            let ap = lemma_approximant(theta, l).unwrap();
            let df = (sq.f - ap.f).abs();
            let du = wrap_phase(sq.u - ap.u).abs();
            assert!(df < prev);
            assert!(du < 1e-3 * 32.0 / l);
            prev = df;
        }
    }

    #[test]
    fn overlap_is_unity_on_the_diagonal_and_sech_with_vacuum() {
        let a = SqueezingParams::new(1.3, 0.4).unwrap();
        assert!((tmsv_overlap(&a, &a).re - 1.0).abs() < 1e-14);
        let vac = SqueezingParams::new(0.0, 0.0).unwrap();
        let b = SqueezingParams::new(1.0, 0.0).unwrap();
        assert!((tmsv_overlap(&vac, &b).re - 1.0 / 1f64.cosh()).abs() < 1e-15);
        assert!(tmsv_distance(&a, &a) < 1e-7);
    }

    #[test]
    fn wrap_phase_range() {
        assert_eq!(wrap_phase(PI), PI);
        assert!((wrap_phase(-PI) - PI).abs() < 1e-15);
        assert!((wrap_phase(3.0 * PI / 2.0) + FRAC_PI_2).abs() < 1e-15);
    }
}
