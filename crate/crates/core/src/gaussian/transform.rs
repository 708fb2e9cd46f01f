use nalgebra::Matrix4;

use super::params::{ModelParams, BOUNDARY_EPS};

/// The two-mode symplectic form `Δ = ⊕ [[0,1],[-1,0]]` in the `(q₁,p₁,q₂,p₂)` ordering.
pub fn symplectic_form() -> Matrix4<f64> {
    Matrix4::new(
        0.0, 1.0, 0.0, 0.0, //
        -1.0, 0.0, 0.0, 0.0, //
        0.0, 0.0, 0.0, 1.0, //
        0.0, 0.0, -1.0, 0.0,
    )
}

/// A real 4×4 matrix `T` with `TᵀΔT = Δ`, acting on row vectors of
/// quadratures: `e^{iH} R e^{-iH} = R T`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymplecticMatrix(Matrix4<f64>);

impl SymplecticMatrix {
    /// Wraps a matrix without checking the symplectic condition.
    pub fn from_matrix_unchecked(m: Matrix4<f64>) -> Self {
        Self(m)
    }

    pub fn identity() -> Self {
        Self(Matrix4::identity())
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.0
    }

    /// Max-abs entry of `TᵀΔT − Δ`.
    pub fn symplectic_residual(&self) -> f64 {
        let d = symplectic_form();
        (self.0.transpose() * d * self.0 - d).amax()
    }

    pub fn determinant(&self) -> f64 {
        self.0.determinant()
    }

    /// `T⁻¹ = Δᵀ Tᵀ Δ`, exact for symplectic `T`.
    pub fn inverse(&self) -> Self {
        let d = symplectic_form();
        Self(d.transpose() * self.0.transpose() * d)
    }

    /// Transform of the composite unitary `U₂U₁` given `T₁ = self` and `T₂ = later`.
    pub fn then(&self, later: &SymplecticMatrix) -> Self {
        Self(self.0 * later.0)
    }
}

/// `(cos x, sin x / x)` continued analytically to `cosh`/`sinh` in the
/// discriminant `s = θ² − λ² = ±x²`.
pub(crate) fn propagator_functions(s: f64) -> (f64, f64) {
    if s.abs() < BOUNDARY_EPS {
        // Fourth order in x²: Σ (−s)^k/(2k)! and Σ (−s)^k/(2k+1)!.
        let mut c = 0.0;
        let mut sinc = 0.0;
        let mut term = 1.0;
        for k in 0..=4 {
            let kk = k as f64;
            if k > 0 {
                term *= -s;
            }
            c += term / factorial(2.0 * kk);
            sinc += term / factorial(2.0 * kk + 1.0);
        }
        (c, sinc)
    } else if s > 0.0 {
        let x = s.sqrt();
        (x.cos(), x.sin() / x)
    } else {
        let x = (-s).sqrt();
        (x.cosh(), x.sinh() / x)
    }
}

fn factorial(n: f64) -> f64 {
    (1..=n as u64).map(|k| k as f64).product()
}

/// Symplectic matrix of `e^{-iH}` for the Hamiltonian model.
///
/// Domain 1 uses `(cos x, sin x / x)`, Domain 2 `(cosh x, sinh x / x)`, and
/// the boundary band a Taylor series in `x²`; the entry layout is shared.
pub fn symplectic_transform(params: &ModelParams) -> SymplecticMatrix {
    let (c, sinc) = propagator_functions(params.discriminant());
    let lambda = params.lambda();
    let xi = params.xi();
    let a = params.theta() * sinc;
    let b = lambda * xi.sin() * sinc;
    let d = lambda * xi.cos() * sinc;
    SymplecticMatrix(Matrix4::new(
        c, -a, b, -d, //
        a, c, -d, -b, //
        b, -d, c, -a, //
        -d, -b, a, c,
    ))
}
