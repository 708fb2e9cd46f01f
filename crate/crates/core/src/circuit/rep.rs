use nalgebra::Matrix2;
use num_complex::Complex64;

use super::spec::CircuitSpec;

pub type CMatrix2 = Matrix2<Complex64>;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn pauli_x() -> CMatrix2 {
    Matrix2::new(c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0))
}

pub fn pauli_y() -> CMatrix2 {
    Matrix2::new(c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0))
}

pub fn pauli_z() -> CMatrix2 {
    Matrix2::new(c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0))
}

/// Images of the generators in the defining representation:
/// `K₁ = −iX/2`, `K₂ = −iY/2`, `K₃ = Z/2`.
pub fn generators() -> [CMatrix2; 3] {
    let mi = c(0.0, -0.5);
    [pauli_x() * mi, pauli_y() * mi, pauli_z() * c(0.5, 0.0)]
}

/// Matrix exponential of a 2×2 complex matrix.
///
/// The traceless part `N` satisfies `N² = δI` with `δ = −det N`, so
/// `e^N = cosh√δ I + (sinh√δ/√δ) N`.
pub fn expm2(m: &CMatrix2) -> CMatrix2 {
    let half_tr = (m[(0, 0)] + m[(1, 1)]) * 0.5;
    let n = m - CMatrix2::identity() * half_tr;
    let delta = -(n[(0, 0)] * n[(1, 1)] - n[(0, 1)] * n[(1, 0)]);
    let (ch, shc) = cosh_sinhc(delta);
    (CMatrix2::identity() * ch + n * shc) * half_tr.exp()
}

/// `(cosh √δ, sinh √δ / √δ)` as entire functions of `δ`.
fn cosh_sinhc(delta: Complex64) -> (Complex64, Complex64) {
    if delta.norm() < 1e-6 {
        let d2 = delta * delta;
        (
            c(1.0, 0.0) + delta / 2.0 + d2 / 24.0 + d2 * delta / 720.0,
            c(1.0, 0.0) + delta / 6.0 + d2 / 120.0 + d2 * delta / 5040.0,
        )
    } else {
        let r = delta.sqrt();
        (r.cosh(), r.sinh() / r)
    }
}

pub fn max_abs(m: &CMatrix2) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// 2×2 defining-representation matrix of an SU(1,1) element.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rep2x2(CMatrix2);

impl Rep2x2 {
    pub fn from_matrix_unchecked(m: CMatrix2) -> Self {
        Self(m)
    }

    pub fn matrix(&self) -> &CMatrix2 {
        &self.0
    }

    pub fn trace(&self) -> Complex64 {
        self.0.trace()
    }

    pub fn determinant(&self) -> Complex64 {
        self.0[(0, 0)] * self.0[(1, 1)] - self.0[(0, 1)] * self.0[(1, 0)]
    }

    /// `max |M†ZM − Z|`: zero for elements preserving the SU(1,1) form.
    pub fn metric_residual(&self) -> f64 {
        let z = pauli_z();
        max_abs(&(self.0.adjoint() * z * self.0 - z))
    }

    pub fn is_minus_identity(&self, tol: f64) -> bool {
        max_abs(&(self.0 + CMatrix2::identity())) <= tol
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        max_abs(&(self.0 - CMatrix2::identity())) <= tol
    }
}

/// `e^{g₂Y} e^{i(θ/2)Z} e^{g₁Y}`.
pub fn rep2_matrix(spec: &CircuitSpec) -> Rep2x2 {
    let y = |g: f64| {
        let (ch, sh) = (g.cosh(), g.sinh());
        Matrix2::new(c(ch, 0.0), c(0.0, -sh), c(0.0, sh), c(ch, 0.0))
    };
    let half = 0.5 * spec.theta();
    let phase = Matrix2::new(
        Complex64::from_polar(1.0, half),
        c(0.0, 0.0),
        c(0.0, 0.0),
        Complex64::from_polar(1.0, -half),
    );
    Rep2x2(y(spec.g2()) * phase * y(spec.g1()))
}

/// `2 cos(θ/2) cosh(g₁ + g₂)`.
pub fn trace_closed_form(spec: &CircuitSpec) -> f64 {
    2.0 * (0.5 * spec.theta()).cos() * (spec.g1() + spec.g2()).cosh()
}
