use std::f64::consts::{FRAC_PI_2, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Width of the band `|θ² − λ²| < BOUNDARY_EPS` in which the closed forms are
/// replaced by their Taylor series in `x²`.
pub const BOUNDARY_EPS: f64 = 1e-8;

/// Parameters `(g, θ, φ)` of the Hamiltonian model.
///
/// `φ` is stored reduced to `[0, 2π)`. Every derived quantity is 2π-periodic
/// in `φ`: shifting `φ` by `2π` flips the sign of both `sin(φ/2)` and
/// `e^{-iφ/2}`, leaving the coupling `λ e^{iξ}` unchanged.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    g: f64,
    theta: f64,
    phi: f64,
}

/// Which closed form describes the model at a parameter point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DomainTag {
    /// `θ² > λ²`: trigonometric (oscillatory) dynamics.
    Domain1,
    /// `θ² < λ²`: hyperbolic dynamics.
    Domain2,
    /// `|θ² − λ²| ≤ BOUNDARY_EPS`.
    Boundary,
}

impl DomainTag {
    pub fn as_str(self) -> &'static str {
        match self {
            DomainTag::Domain1 => "domain1",
            DomainTag::Domain2 => "domain2",
            DomainTag::Boundary => "boundary",
        }
    }
}

impl std::fmt::Display for DomainTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl ModelParams {
    pub fn new(g: f64, theta: f64, phi: f64) -> Result<Self> {
        if !g.is_finite() || g < 0.0 {
            return Err(invalid(format!("nonlinearity g must be finite and >= 0, got {g}")));
        }
        if !theta.is_finite() {
            return Err(invalid(format!("dynamical phase theta must be finite, got {theta}")));
        }
        if !phi.is_finite() {
            return Err(invalid(format!("relative phase phi must be finite, got {phi}")));
        }
        let mut phi = phi.rem_euclid(TAU);
        // rem_euclid can round up to exactly 2π for tiny negative inputs.
        if phi >= TAU {
            phi = 0.0;
        }
        Ok(Self { g, theta, phi })
    }

    pub fn g(&self) -> f64 {
        self.g
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// Relative phase reduced to `[0, 2π)`.
    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn with_theta(&self, theta: f64) -> Result<Self> {
        Self::new(self.g, theta, self.phi)
    }

    pub fn with_phi(&self, phi: f64) -> Result<Self> {
        Self::new(self.g, self.theta, phi)
    }

    pub fn with_g(&self, g: f64) -> Result<Self> {
        Self::new(g, self.theta, self.phi)
    }

    /// Effective nonlinearity `λ = 2g sin(φ/2)`, non-negative on `[0, 2π)`.
    pub fn lambda(&self) -> f64 {
        2.0 * self.g * (0.5 * self.phi).sin()
    }

    /// Coupling phase `ξ = π/2 − φ/2`; the pair-creation term is `λ e^{iξ} a₁†a₂†`.
    pub fn xi(&self) -> f64 {
        FRAC_PI_2 - 0.5 * self.phi
    }

    /// Signed discriminant `θ² − λ²`.
    pub fn discriminant(&self) -> f64 {
        let lambda = self.lambda();
        (self.theta - lambda) * (self.theta + lambda)
    }

    /// `x = √|θ² − λ²|`.
    pub fn x(&self) -> f64 {
        self.discriminant().abs().sqrt()
    }

    pub fn domain(&self) -> DomainTag {
        classify_domain(self)
    }
}

pub fn classify_domain(params: &ModelParams) -> DomainTag {
    let s = params.discriminant();
    if s.abs() <= BOUNDARY_EPS {
        DomainTag::Boundary
    } else if s > 0.0 {
        DomainTag::Domain1
    } else {
        DomainTag::Domain2
    }
}
