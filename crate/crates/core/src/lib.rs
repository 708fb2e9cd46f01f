//! Simulation and estimation theory for the two-mode SU(1,1) interferometer.
//!
//! The crate carries two descriptions of the same device and checks them
//! against each other:
//!
//! * [`gaussian`]: exact phase-space calculus for the Hamiltonian model
//!   `H = θ(n₁+n₂) + 2g sin(φ/2)(i e^{-iφ/2} a₁†a₂† + h.c.)`, i.e. the
//!   symplectic matrix of `e^{-iH}`, the covariance of `e^{-iH}|0,0⟩`, its
//!   energy and its two-mode-squeezed-vacuum parameters.
//! * [`fock`]: a brute-force simulator on the pair sector `span{|n,n⟩}`
//!   that every closed form is validated against.
//! * [`metrology`]: quantum Fisher information and signal-to-noise ratios
//!   for the Hamiltonian model and the circuit model `V(g₁,g₂,θ)`.
//! * [`circuit`]: the 2×2 defining representation of the circuits, the
//!   existence test for a generating quadratic Hamiltonian, its logarithm
//!   and KAK factors.
//!
//! Phase-space conventions: `R = (q₁,p₁,q₂,p₂)`, `ħ = 1`, vacuum covariance
//! `I/2`, symplectic form `Δ = ⊕ [[0,1],[-1,0]]`.

pub mod circuit;
mod error;
pub mod fock;
pub mod gaussian;
pub mod metrology;

pub use error::{Error, Result};
pub use num_complex::Complex64;
