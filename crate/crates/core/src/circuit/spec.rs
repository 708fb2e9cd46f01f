use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Parameters of the circuit `V(g₁,g₂,θ) = e^{g₂G} e^{iθn} e^{g₁G}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CircuitSpec {
    g1: f64,
    g2: f64,
    theta: f64,
}

impl CircuitSpec {
    pub fn new(g1: f64, g2: f64, theta: f64) -> Result<Self> {
        if !(g1.is_finite() && g2.is_finite() && theta.is_finite()) {
            return Err(invalid(format!("circuit parameters must be finite, got ({g1}, {g2}, {theta})")));
        }
        Ok(Self { g1, g2, theta })
    }

    pub fn g1(&self) -> f64 {
        self.g1
    }

    pub fn g2(&self) -> f64 {
        self.g2
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn with_theta(&self, theta: f64) -> Result<Self> {
        Self::new(self.g1, self.g2, theta)
    }
}
