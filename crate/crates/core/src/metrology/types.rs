use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::fock::ObservableTag;
use crate::gaussian::ModelParams;

macro_rules! named_enum {
    ($(#[$meta:meta])* $name:ident { $($variant:ident => $text:literal $(| $alias:literal)*),+ $(,)? }) => {
        $(#[$meta])*
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
        pub enum $name {
            $(#[serde(rename = $text)] $variant),+
        }

        impl $name {
            pub fn as_str(self) -> &'static str {
                match self {
                    $($name::$variant => $text),+
                }
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.as_str())
            }
        }

        impl FromStr for $name {
            type Err = Error;
            fn from_str(s: &str) -> Result<Self> {
                match s {
                    $($text $(| $alias)* => Ok($name::$variant),)+
                    other => Err(invalid(format!(
                        concat!("unknown ", stringify!($name), " '{}'"),
                        other
                    ))),
                }
            }
        }
    };
}

named_enum! {
    /// Parameter the derivative is taken against.
    Wrt { Phi => "phi", Theta => "theta" }
}

named_enum! {
    /// How a QFI value was obtained.
    QfiMethod {
        ClosedForm => "closed",
        GaussianFormula => "gaussian",
        FidelityFD => "fidelity",
    }
}

named_enum! {
    /// State representation used for numerical derivatives.
    Backend { Gaussian => "gaussian", Fock => "fock" }
}

named_enum! {
    /// Hamiltonian model `e^{-iH}|0,0⟩` or circuit `V(g, −g, θ)|0,0⟩`.
    Model { Hamiltonian => "hamiltonian", Circuit => "circuit" }
}

/// Smallest and largest admissible finite-difference steps.
pub const STEP_RANGE: (f64, f64) = (1e-6, 1e-2);
/// Default step for fidelity finite differences.
pub const DEFAULT_FIDELITY_STEP: f64 = 1e-4;
/// Default step for covariance (transform) finite differences.
pub const DEFAULT_COVARIANCE_STEP: f64 = 1e-5;

pub(crate) fn check_step(step: f64) -> Result<()> {
    if !(step >= STEP_RANGE.0 && step <= STEP_RANGE.1) {
        return Err(invalid(format!(
            "finite-difference step must lie in [{:e}, {:e}], got {step}",
            STEP_RANGE.0, STEP_RANGE.1
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QfiReport {
    pub value: f64,
    pub method: QfiMethod,
    pub wrt: Wrt,
    /// Finite-difference step; zero for closed forms.
    pub step: f64,
    pub params: ModelParams,
    pub model: Model,
    /// Backend of a numerical method; `None` for closed forms.
    pub backend: Option<Backend>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SnrReport {
    /// Derivative of `⟨O⟩` with respect to the parameter.
    pub signal: f64,
    /// Variance of the observable at the operating point.
    pub noise: f64,
    /// `signal² / noise`.
    pub snr: f64,
    pub observable: ObservableTag,
    pub wrt: Wrt,
    pub step: f64,
    pub params: ModelParams,
    pub model: Model,
    pub backend: Backend,
}
