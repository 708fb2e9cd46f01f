use std::f64::consts::PI;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{invalid, Result};
use crate::fock::{evolve_vacuum, TruncationPolicy};
use crate::gaussian::ModelParams;

/// `L = −i n̂₁|ψ⟩⟨ψ| + i|ψ⟩⟨ψ|n̂₁` on the pair sector for `ψ = e^{-iH}|0,0⟩`
/// at `θ = 0, φ = π`; entries `L_{mn} = −i(m − n) c_m c̄_n`.
pub fn sld_matrix(g: f64, trunc: &TruncationPolicy) -> Result<DMatrix<Complex64>> {
    let psi = evolve_vacuum(&ModelParams::new(g, 0.0, PI)?, trunc)?;
    let c = psi.amplitudes();
    let len = c.len();
    Ok(DMatrix::from_fn(len, len, |m, n| {
        Complex64::new(0.0, -(m as f64 - n as f64)) * c[m] * c[n].conj()
    }))
}

fn hermitian_eigenvalues(m: &DMatrix<Complex64>) -> Vec<f64> {
    SymmetricEigen::new(m.clone()).eigenvalues.iter().copied().collect()
}

/// Number of eigenvalues of a Hermitian matrix with modulus above `tol`.
pub fn numerical_rank(m: &DMatrix<Complex64>, tol: f64) -> usize {
    hermitian_eigenvalues(m).iter().filter(|l| l.abs() > tol).count()
}

/// Operator norm of `L − (−2g|1,1⟩⟨0,0| + h.c.)`, the part of the SLD beyond
/// its leading small-`g` form.
pub fn sld_smallg_residual(g: f64, trunc: &TruncationPolicy) -> Result<f64> {
    if !(g > 0.0 && g <= 0.2) {
        return Err(invalid(format!("the small-g expansion is probed on 0 < g <= 0.2, got {g}")));
    }
    let mut l = sld_matrix(g, trunc)?;
    l[(1, 0)] += Complex64::new(2.0 * g, 0.0);
    l[(0, 1)] += Complex64::new(2.0 * g, 0.0);
    Ok(hermitian_eigenvalues(&l).iter().fold(0.0, |a, b| a.max(b.abs())))
}
