//! Circuit algebra in the 2×2 defining representation: existence of a
//! quadratic Hamiltonian, its logarithm, the Cartan (KAK) factorization and the
//! SU(2) Mach–Zehnder identity.

mod kak;
mod log;
mod rep;
mod spec;
mod su2;

pub use kak::{kak_decompose, kak_of, kak_residual, KakFactors};
pub use log::{
    expi, hamiltonian_log, log_of, trace_condition, ConjugacyClass, HamiltonianCoeffs, LogResult,
    IDENTITY_TOL, PARABOLIC_TOL,
};
pub use rep::{expm2, generators, pauli_x, pauli_y, pauli_z, rep2_matrix, trace_closed_form, CMatrix2, Rep2x2};
pub use spec::CircuitSpec;
pub use su2::verify_su2_mzi;
