use nalgebra::{DMatrix, Matrix2, Matrix4, SMatrix, SymmetricEigen};

use super::params::{ModelParams, BOUNDARY_EPS};
use super::transform::{symplectic_form, symplectic_transform, SymplecticMatrix};
use crate::error::{invalid, Result};

/// Symmetric two-mode covariance matrix `Σ = ⟨Rᵀ∘R⟩` (zero-mean states).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CovarianceMatrix(Matrix4<f64>);

impl CovarianceMatrix {
    /// Validates symmetry to `1e-12` relative to the largest entry.
    pub fn new(m: Matrix4<f64>) -> Result<Self> {
        if m.iter().any(|v| !v.is_finite()) {
            return Err(invalid("covariance has non-finite entries"));
        }
        let scale = m.amax().max(1.0);
        if (m - m.transpose()).amax() > 1e-12 * scale {
            return Err(invalid("covariance matrix is not symmetric"));
        }
        Ok(Self(0.5 * (m + m.transpose())))
    }

    /// Vacuum `I/2`.
    pub fn vacuum() -> Self {
        Self(Matrix4::identity() * 0.5)
    }

    /// `½ TᵀT`, the covariance of `U|0,0⟩` when `T` is the transform of `U`.
    pub fn from_transform(t: &SymplecticMatrix) -> Self {
        let m = t.matrix();
        let s = 0.5 * m.transpose() * m;
        Self(0.5 * (s + s.transpose()))
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.0
    }

    /// Diagonal 2×2 block `½A` of mode `k` (0 or 1): the reduced single-mode covariance.
    pub fn mode_block(&self, k: usize) -> Matrix2<f64> {
        assert!(k < 2, "two-mode covariance has modes 0 and 1");
        self.0.fixed_view::<2, 2>(2 * k, 2 * k).into_owned()
    }

    /// Off-diagonal 2×2 block `½B`.
    pub fn cross_block(&self) -> Matrix2<f64> {
        self.0.fixed_view::<2, 2>(0, 2).into_owned()
    }

    /// `½ tr Σ`, the total energy including the vacuum contribution 1/2 per mode.
    pub fn energy(&self) -> f64 {
        0.5 * self.0.trace()
    }

    pub fn determinant(&self) -> f64 {
        self.0.determinant()
    }

    /// Smallest eigenvalue of the Hermitian matrix `Σ + (i/2)Δ`; the
    /// uncertainty relation demands it be non-negative.
    pub fn uncertainty_min_eigenvalue(&self) -> f64 {
        // Real embedding [[S, −A], [A, S]] of S + iA doubles every eigenvalue.
        let a = 0.5 * symplectic_form();
        let mut big = SMatrix::<f64, 8, 8>::zeros();
        big.fixed_view_mut::<4, 4>(0, 0).copy_from(&self.0);
        big.fixed_view_mut::<4, 4>(4, 4).copy_from(&self.0);
        big.fixed_view_mut::<4, 4>(0, 4).copy_from(&(-a));
        big.fixed_view_mut::<4, 4>(4, 0).copy_from(&a);
        SymmetricEigen::new(big).eigenvalues.min()
    }

    /// Mean and variance of the total photon number `n₁ + n₂`:
    /// `½trΣ − 1` and `½tr Σ² − ½` for zero-mean Gaussian states.
    pub fn total_photon_stats(&self) -> (f64, f64) {
        let mean = 0.5 * self.0.trace() - 1.0;
        let var = 0.5 * self.0.component_mul(&self.0).sum() - 0.5;
        (mean, var)
    }

    pub fn to_dmatrix(&self) -> DMatrix<f64> {
        DMatrix::from_iterator(4, 4, self.0.iter().copied())
    }
}

/// Covariance, energy and reduced symplectic eigenvalue of `e^{-iH}|0,0⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateMoments {
    pub cov: CovarianceMatrix,
    /// `½ tr Σ`.
    pub energy: f64,
    /// Symplectic eigenvalue of either single-mode reduced state, `energy / 2`.
    pub reduced_nu: f64,
}

pub fn state_moments(params: &ModelParams) -> StateMoments {
    let cov = CovarianceMatrix::from_transform(&symplectic_transform(params));
    let energy = cov.energy();
    StateMoments {
        cov,
        energy,
        reduced_nu: 0.5 * energy,
    }
}

/// Energy from the per-domain closed forms `(θ² − λ²cos 2x)/x²` and
/// `(λ²cosh 2x − θ²)/x²`, with the series `1 + λ²(2 − 2s/3 + 4s²/45 − …)` in
/// `s = θ² − λ²` on the boundary band.
///
/// This is the second route to the energy; [`state_moments`] takes the trace
/// of `½TᵀT` instead.
pub fn energy_closed_form(params: &ModelParams) -> f64 {
    let theta = params.theta();
    let lambda = params.lambda();
    let s = params.discriminant();
    if s.abs() < BOUNDARY_EPS {
        // (1 − cos 2√s)/s = Σ_{k≥1} (−1)^{k+1} 4^k s^{k−1} / (2k)!
        let mut sum = 0.0;
        let mut pow = 1.0;
        let mut fact = 1.0;
        for k in 1..=5u32 {
            fact *= ((2 * k - 1) * (2 * k)) as f64;
            let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
            sum += sign * 4f64.powi(k as i32) * pow / fact;
            pow *= s;
        }
        1.0 + lambda * lambda * sum
    } else if s > 0.0 {
        let x = s.sqrt();
        (theta * theta - lambda * lambda * (2.0 * x).cos()) / (x * x)
    } else {
        let x = (-s).sqrt();
        (lambda * lambda * (2.0 * x).cosh() - theta * theta) / (x * x)
    }
}

/// `|⟨ψ₁|ψ₂⟩|² = 1/√det(Σ₁ + Σ₂)` for zero-mean pure two-mode Gaussian states.
pub fn pure_state_fidelity(a: &CovarianceMatrix, b: &CovarianceMatrix) -> f64 {
    1.0 / (a.matrix() + b.matrix()).determinant().sqrt()
}

/// `1 − |⟨0|U₁†U₂|0⟩|²` from the transforms of `U₁` and `U₂`.
///
/// With `K = T₂T₁⁻¹`, `det(Σ₁+Σ₂) = det(½(I + KᵀK))`; the deviation
/// `KᵀK − I` is formed from `T₂ − T₁` so nearby states keep full relative
/// precision in the infidelity.
pub fn transform_infidelity(t1: &SymplecticMatrix, t2: &SymplecticMatrix) -> f64 {
    let inv1 = t1.inverse();
    let dm = (t2.matrix() - t1.matrix()) * inv1.matrix();
    let e = dm + dm.transpose() + dm.transpose() * dm;
    let half = 0.5 * (e + e.transpose()) * 0.5;
    let log_det: f64 = SymmetricEigen::new(half)
        .eigenvalues
        .iter()
        .map(|mu| mu.ln_1p())
        .sum();
    -(-0.5 * log_det).exp_m1()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn vacuum_moments() {
        for &phi in &[0.0, 2.0, PI] {
            let m = state_moments(&ModelParams::new(0.0, 1.7, phi).unwrap());
            assert!((m.cov.matrix() - Matrix4::identity() * 0.5).amax() < 1e-15);
            assert!((m.energy - 1.0).abs() < 1e-15);
            assert!((m.reduced_nu - 0.5).abs() < 1e-15);
        }
    }

    #[test]
    fn squeezer_energy_is_cosh_two() {
        let p = ModelParams::new(0.5, 0.0, PI).unwrap();
        let m = state_moments(&p);
        assert!((m.energy - 2f64.cosh()).abs() < 1e-12);
        assert!((m.energy - 3.762_195_691_083_631).abs() < 1e-12);
        assert!((energy_closed_form(&p) - m.energy).abs() < 1e-12);
    }

    #[test]
    fn theta_zero_covariance_has_the_squeezer_block_form() {
        // A = cosh(4g sin(φ/2)) I, B = sinh(4g sin(φ/2)) (cos(φ/2) Z − sin(φ/2) X).
        for &(g, phi) in &[(0.4, PI), (0.3, 1.2), (0.8, 4.5)] {
            let m = state_moments(&ModelParams::new(g, 0.0, phi).unwrap());
            let r = 4.0 * g * (0.5 * phi).sin();
            let a = m.cov.mode_block(0) * 2.0;
            let b = m.cov.cross_block() * 2.0;
            let (c, s) = ((0.5 * phi).cos(), (0.5 * phi).sin());
            let expected_b = Matrix2::new(c, -s, -s, -c) * r.sinh();
            assert!((a - Matrix2::identity() * r.cosh()).amax() < 1e-12 * r.cosh());
            assert!((b - expected_b).amax() < 1e-12 * r.cosh());
        }
    }

    #[test]
    fn energy_routes_agree_off_the_boundary() {
        for &(g, theta, phi) in &[(0.3, 2.0, 1.0), (1.0, 0.5, PI), (0.7, 1.4, 2.5), (1.2, 5.0, 3.0)] {
            let p = ModelParams::new(g, theta, phi).unwrap();
            let e = state_moments(&p).energy;
            assert!((energy_closed_form(&p) - e).abs() < 1e-10 * e, "{p:?}");
        }
    }

    #[test]
    fn uncertainty_relation_holds_and_vacuum_saturates_it() {
        let v = CovarianceMatrix::vacuum();
        assert!(v.uncertainty_min_eigenvalue().abs() < 1e-14);
        let m = state_moments(&ModelParams::new(0.9, 0.2, 2.0).unwrap());
        assert!(m.cov.uncertainty_min_eigenvalue() > -1e-10);
        // Half the vacuum violates it.
        let bad = CovarianceMatrix::new(Matrix4::identity() * 0.25).unwrap();
        assert!(bad.uncertainty_min_eigenvalue() < -0.1);
    }

    #[test]
    fn rejects_asymmetric_input() {
        let mut m = Matrix4::identity();
        m[(0, 1)] = 0.1;
        assert!(CovarianceMatrix::new(m).is_err());
    }

    #[test]
    fn infidelity_matches_determinant_formula() {
        let p = ModelParams::new(0.4, 0.3, 2.0).unwrap();
        let q = ModelParams::new(0.4, 0.5, 2.3).unwrap();
        let (tp, tq) = (symplectic_transform(&p), symplectic_transform(&q));
        let f = pure_state_fidelity(
            &CovarianceMatrix::from_transform(&tp),
            &CovarianceMatrix::from_transform(&tq),
        );
        assert!((transform_infidelity(&tp, &tq) - (1.0 - f)).abs() < 1e-13);
        assert!(transform_infidelity(&tp, &tp).abs() < 1e-16);
    }

    #[test]
    fn total_photon_stats_of_a_squeezer() {
        // TMSV with f = 2g: ⟨N⟩ = 2 sinh² f, Var N = sinh² 2f.
        let g = 0.6;
        let m = state_moments(&ModelParams::new(g, 0.0, PI).unwrap());
        let (mean, var) = m.cov.total_photon_stats();
        let f = 2.0 * g;
        assert!((mean - 2.0 * f.sinh().powi(2)).abs() < 1e-12);
        assert!((var - (2.0 * f).sinh().powi(2)).abs() < 1e-11);
    }
}
