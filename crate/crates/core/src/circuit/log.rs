use nalgebra::Matrix2;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::rep::{expm2, generators, max_abs, rep2_matrix, CMatrix2, Rep2x2};
use super::spec::CircuitSpec;
use crate::gaussian::ModelParams;

/// Coefficients of `H = s₁K₁ + s₂K₂ + s₃K₃`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HamiltonianCoeffs {
    pub s1: f64,
    pub s2: f64,
    pub s3: f64,
}

impl HamiltonianCoeffs {
    pub fn new(s1: f64, s2: f64, s3: f64) -> Self {
        Self { s1, s2, s3 }
    }

    /// `H` in the defining representation.
    pub fn matrix(&self) -> CMatrix2 {
        let [k1, k2, k3] = generators();
        k1 * Complex64::new(self.s1, 0.0) + k2 * Complex64::new(self.s2, 0.0) + k3 * Complex64::new(self.s3, 0.0)
    }

    /// Coefficients of the two-mode Hamiltonian model, up to a multiple of the identity:
    /// `(2λ cos ξ, −2λ sin ξ, 2θ)`.
    pub fn from_model(params: &ModelParams) -> Self {
        let (l, xi) = (params.lambda(), params.xi());
        Self::new(2.0 * l * xi.cos(), -2.0 * l * xi.sin(), 2.0 * params.theta())
    }

    /// `¼(s₁² + s₂² − s₃²)`: positive for hyperbolic, negative for elliptic generators.
    pub fn discriminant(&self) -> f64 {
        0.25 * (self.s1 * self.s1 + self.s2 * self.s2 - self.s3 * self.s3)
    }
}

/// `expi(H) := e^{−iH}` in the defining representation.
pub fn expi(coeffs: &HamiltonianCoeffs) -> Rep2x2 {
    Rep2x2::from_matrix_unchecked(expm2(&(coeffs.matrix() * Complex64::new(0.0, -1.0))))
}

/// Conjugacy type of an SU(1,1) element, read off its trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConjugacyClass {
    /// `|tr| < 2`.
    Elliptic,
    /// `|tr| = 2`.
    Parabolic,
    /// `|tr| > 2`.
    Hyperbolic,
}

impl ConjugacyClass {
    pub fn as_str(self) -> &'static str {
        match self {
            ConjugacyClass::Elliptic => "elliptic",
            ConjugacyClass::Parabolic => "parabolic",
            ConjugacyClass::Hyperbolic => "hyperbolic",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LogResult {
    pub exists: bool,
    pub coeffs: Option<HamiltonianCoeffs>,
    pub class: ConjugacyClass,
    pub trace: f64,
    /// `max |expi(H) − M|` when a Hamiltonian was produced.
    pub residual: Option<f64>,
    /// Set when the trace lies within `1e-9` of `±2` away from `±I`.
    pub warning: Option<String>,
}

/// Tolerance for recognising `±I` entrywise.
pub const IDENTITY_TOL: f64 = 1e-10;
/// Width of the near-parabolic band around `tr = ±2`.
pub const PARABOLIC_TOL: f64 = 1e-9;

/// Logarithm of the circuit matrix: a quadratic Hamiltonian with
/// `expi(H) = rep2_matrix(spec)` exists iff `tr > −2` or the matrix is `−I`.
pub fn hamiltonian_log(spec: &CircuitSpec) -> LogResult {
    log_of(&rep2_matrix(spec))
}

/// Principal logarithm of an SU(1,1) element in the defining representation.
pub fn log_of(m: &Rep2x2) -> LogResult {
    let mat = *m.matrix();
    let tau = m.trace().re;
    let class = if (tau.abs() - 2.0).abs() <= PARABOLIC_TOL {
        ConjugacyClass::Parabolic
    } else if tau.abs() < 2.0 {
        ConjugacyClass::Elliptic
    } else {
        ConjugacyClass::Hyperbolic
    };
    let near_parabolic = (tau - 2.0).abs() < PARABOLIC_TOL || (tau + 2.0).abs() < PARABOLIC_TOL;
    let warning = (near_parabolic && !m.is_identity(IDENTITY_TOL) && !m.is_minus_identity(IDENTITY_TOL)).then(|| {
        format!("ill-conditioned: trace {tau} is within {PARABOLIC_TOL:e} of ±2 for a matrix other than ±I")
    });

    if m.is_minus_identity(IDENTITY_TOL) {
        let coeffs = HamiltonianCoeffs::new(0.0, 0.0, 2.0 * std::f64::consts::PI);
        return finish(m, class, tau, Some(coeffs), warning);
    }
    if tau <= -2.0 {
        return LogResult {
            exists: false,
            coeffs: None,
            class,
            trace: tau,
            residual: None,
            warning,
        };
    }

    let half = tau / 2.0;
    let n = mat - CMatrix2::identity() * Complex64::new(half, 0.0);
    let scale = if half > 1.0 {
        let r = half.acosh();
        if r < 1e-8 {
            1.0 - r * r / 6.0
        } else {
            r / r.sinh()
        }
    } else {
        let w = half.clamp(-1.0, 1.0).acos();
        if w < 1e-8 {
            1.0 + w * w / 6.0
        } else {
            w / w.sin()
        }
    };
    let a = n * Complex64::new(scale, 0.0);
    finish(m, class, tau, Some(coeffs_of_generator(&a)), warning)
}

fn finish(
    m: &Rep2x2,
    class: ConjugacyClass,
    tau: f64,
    coeffs: Option<HamiltonianCoeffs>,
    warning: Option<String>,
) -> LogResult {
    let residual = coeffs.map(|c| max_abs(&(expi(&c).matrix() - m.matrix())));
    LogResult {
        exists: true,
        coeffs,
        class,
        trace: tau,
        residual,
        warning,
    }
}

/// Reads `s` off `A = −iH = −½(s₁X + s₂Y) − (i/2)s₃Z`.
fn coeffs_of_generator(a: &Matrix2<Complex64>) -> HamiltonianCoeffs {
    let s3 = -2.0 * a[(0, 0)].im;
    let s1 = -(a[(0, 1)] + a[(1, 0)]).re;
    let s2 = -(a[(1, 0)] - a[(0, 1)]).im;
    HamiltonianCoeffs::new(s1, s2, s3)
}

/// The inequality `cosh(g₁+g₂) ≤ 1/|cos(θ/2)|`, vacuous where `cos(θ/2) ≥ 0`.
pub fn trace_condition(spec: &CircuitSpec) -> bool {
    let c = (0.5 * spec.theta()).cos();
    if c >= 0.0 {
        return true;
    }
    (spec.g1() + spec.g2()).cosh() <= 1.0 / c.abs()
}
