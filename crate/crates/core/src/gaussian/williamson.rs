use nalgebra::{DMatrix, SymmetricEigen};

use super::covariance::CovarianceMatrix;
use crate::error::{invalid, Result};

/// Symplectic eigenvalues of a `2n×2n` covariance matrix, sorted descending.
///
/// These are the moduli of the eigenvalues of `iΔΣ`. They are read off as the
/// singular values of the antisymmetric matrix `Σ^{1/2} Δ Σ^{1/2}`, whose
/// squares appear in pairs in `MᵀM`.
pub fn symplectic_spectrum(cov: &DMatrix<f64>) -> Result<Vec<f64>> {
    let dim = cov.nrows();
    if dim == 0 || dim != cov.ncols() || !dim.is_multiple_of(2) {
        return Err(invalid(format!(
            "covariance must be square with even dimension, got {}x{}",
            cov.nrows(),
            cov.ncols()
        )));
    }
    if cov.iter().any(|v| !v.is_finite()) {
        return Err(invalid("covariance has non-finite entries"));
    }
    let scale = cov.amax().max(1.0);
    if (cov - cov.transpose()).amax() > 1e-10 * scale {
        return Err(invalid("covariance matrix is not symmetric"));
    }
    let eig = SymmetricEigen::new(cov.clone());
    if eig.eigenvalues.iter().any(|&l| l <= 0.0) {
        return Err(invalid("covariance matrix is not positive definite"));
    }
    let root_diag = DMatrix::from_diagonal(&eig.eigenvalues.map(f64::sqrt));
    let root = &eig.eigenvectors * root_diag * eig.eigenvectors.transpose();

    let n = dim / 2;
    let mut delta = DMatrix::zeros(dim, dim);
    for k in 0..n {
        delta[(2 * k, 2 * k + 1)] = 1.0;
        delta[(2 * k + 1, 2 * k)] = -1.0;
    }
    let m = &root * delta * &root;
    let gram = m.transpose() * &m;
    let mut sq: Vec<f64> = SymmetricEigen::new(0.5 * (&gram + gram.transpose()))
        .eigenvalues
        .iter()
        .copied()
        .collect();
    sq.sort_by(|a, b| b.total_cmp(a));
    Ok(sq
        .chunks(2)
        .map(|pair| (0.5 * (pair[0] + pair[1])).max(0.0).sqrt())
        .collect())
}

/// The two symplectic eigenvalues of a two-mode covariance, descending.
pub fn symplectic_eigenvalues(cov: &CovarianceMatrix) -> Result<(f64, f64)> {
    let nu = symplectic_spectrum(&cov.to_dmatrix())?;
    Ok((nu[0], nu[1]))
}
