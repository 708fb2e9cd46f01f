use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::log::{expi, HamiltonianCoeffs};
use super::rep::{max_abs, Rep2x2};

/// Factors of `expi(H) = expi(αK₃)·expi(p₁K₁ + p₂K₂)·expi(βK₃)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KakFactors {
    pub alpha: f64,
    pub p1: f64,
    pub p2: f64,
    pub beta: f64,
}

impl KakFactors {
    /// The product of the three factors in the defining representation.
    pub fn recompose(&self) -> Rep2x2 {
        let left = expi(&HamiltonianCoeffs::new(0.0, 0.0, self.alpha));
        let mid = expi(&HamiltonianCoeffs::new(self.p1, self.p2, 0.0));
        let right = expi(&HamiltonianCoeffs::new(0.0, 0.0, self.beta));
        Rep2x2::from_matrix_unchecked(left.matrix() * mid.matrix() * right.matrix())
    }

    /// Two-mode squeezing `ζ` with `exp(ζa₁†a₂† − ζ̄a₁a₂)` equal to the middle
    /// factor on the pair sector: `ζ = −½(p₂ + ip₁)`.
    pub fn squeeze(&self) -> Complex64 {
        Complex64::new(-0.5 * self.p2, -0.5 * self.p1)
    }
}

/// Cartan factorization of `expi(H)` with the symmetric choice `α = β`.
pub fn kak_decompose(coeffs: &HamiltonianCoeffs) -> KakFactors {
    kak_of(&expi(coeffs))
}

/// Cartan factorization of an element `[[a, b], [b̄, ā]]`.
///
/// The polar part has `|a| = cosh(ρ/2)`, `ρ = |p|`; the phase of `a` is split
/// evenly between the two `K₃` factors and the phase of `b` fixes the
/// direction of `p`.
pub fn kak_of(m: &Rep2x2) -> KakFactors {
    let a = m.matrix()[(0, 0)];
    let b = m.matrix()[(0, 1)];
    let alpha = if a.norm() > 0.0 { -a.arg() } else { 0.0 };
    let rho = 2.0 * a.norm().max(1.0).acosh();
    let scale = if rho < 1e-8 { 2.0 } else { rho / (0.5 * rho).sinh() };
    let p = -b * scale;
    // p = p₁ − i p₂
    KakFactors {
        alpha,
        p1: p.re,
        p2: -p.im,
        beta: alpha,
    }
}

/// `max |recompose − expi(H)|`.
pub fn kak_residual(coeffs: &HamiltonianCoeffs, factors: &KakFactors) -> f64 {
    max_abs(&(factors.recompose().matrix() - expi(coeffs).matrix()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::ModelParams;
    use std::f64::consts::PI;

    #[test]
    fn zero_hamiltonian() {
        let k = kak_decompose(&HamiltonianCoeffs::new(0.0, 0.0, 0.0));
        assert_eq!((k.alpha, k.p1, k.p2, k.beta), (0.0, 0.0, 0.0, 0.0));
    }

    #[test]
    fn pure_k1_is_already_polar() {
        for &s1 in &[0.7, -1.3, 3.0] {
            let k = kak_decompose(&HamiltonianCoeffs::new(s1, 0.0, 0.0));
            assert!(k.alpha.abs() < 1e-15 && k.beta.abs() < 1e-15);
            assert!((k.p1 - s1).abs() < 1e-12 && k.p2.abs() < 1e-12);
        }
    }

    #[test]
    fn model_point_reconstructs() {
        let c = HamiltonianCoeffs::from_model(&ModelParams::new(1.0, 0.5, PI).unwrap());
        let k = kak_decompose(&c);
        assert!(kak_residual(&c, &k) < 1e-10);
    }

    #[test]
    fn generic_coefficients_reconstruct() {
        for &(a, b, c) in &[(0.3, -0.2, 1.1), (2.0, 1.0, 0.5), (-0.4, 0.9, -3.0), (0.0, 0.0, 2.5)] {
            let h = HamiltonianCoeffs::new(a, b, c);
            assert!(kak_residual(&h, &kak_decompose(&h)) < 1e-10);
        }
    }
}
