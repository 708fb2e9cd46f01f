use num_complex::Complex64;

use super::rep::{expm2, pauli_x, pauli_y, pauli_z, CMatrix2};

/// Both sides of the Mach–Zehnder identity in the single-particle
/// representation, compared up to a global phase.
///
/// Left: `e^{−iH′}` with `H′ = (θ/2)(P₊ − P₋)`, where `P±` project onto the
/// hybridized modes `(1, e^{iφ})/√2` and `(−e^{−iφ}, 1)/√2`. Right: the
/// beam-splitter sandwich `e^{i(π/2)G} e^{−iθJ_z} e^{−i(π/2)G}` with
/// `G = sin φ J_x − cos φ J_y` and `J = ½·Pauli`.
/// Returns the largest entrywise deviation.
pub fn verify_su2_mzi(theta: f64, phi: f64) -> f64 {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let h1 = [Complex64::new(s, 0.0), Complex64::from_polar(s, phi)];
    let h2 = [-Complex64::from_polar(s, -phi), Complex64::new(s, 0.0)];
    let proj = |v: [Complex64; 2]| CMatrix2::from_fn(|i, j| v[i] * v[j].conj());
    let h = (proj(h1) - proj(h2)) * Complex64::new(0.5 * theta, 0.0);
    let lhs = expm2(&(h * Complex64::new(0.0, -1.0)));

    let half = Complex64::new(0.5, 0.0);
    let jx = pauli_x() * half;
    let jy = pauli_y() * half;
    let jz = pauli_z() * half;
    let g = jx * Complex64::new(phi.sin(), 0.0) - jy * Complex64::new(phi.cos(), 0.0);
    let quarter = Complex64::new(0.0, std::f64::consts::FRAC_PI_2);
    let rhs = expm2(&(g * quarter)) * expm2(&(jz * Complex64::new(0.0, -theta))) * expm2(&(g * -quarter));

    let ov = (rhs.adjoint() * lhs).trace();
    let phase = if ov.norm() > 0.0 { ov / ov.norm() } else { Complex64::new(1.0, 0.0) };
    (lhs - rhs * phase).iter().map(|z| z.norm()).fold(0.0, f64::max)
}
