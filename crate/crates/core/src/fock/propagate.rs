use num_complex::Complex64;

use super::state::{FockStateNN, TruncationPolicy};
use crate::circuit::CircuitSpec;
use crate::error::{Error, Result};
use crate::gaussian::ModelParams;

/// One unitary acting on the pair sector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Layer {
    /// `exp(ζ a₁†a₂† − ζ̄ a₁a₂)`.
    Squeeze(Complex64),
    /// `exp(iθ n)` on pair level `n`; equal to `e^{iθ a₂†a₂}` and to
    /// `e^{i(θ/2)(a₁†a₁ + a₂†a₂)}` on this sector.
    Phase(f64),
    /// `e^{-iH}` of the two-mode Hamiltonian model.
    Hamiltonian(ModelParams),
}

impl Layer {
    fn apply(&self, v: &mut [Complex64]) {
        let len = v.len();
        match *self {
            Layer::Phase(theta) => {
                for (n, c) in v.iter_mut().enumerate() {
                    *c *= Complex64::from_polar(1.0, theta * n as f64);
                }
            }
            Layer::Squeeze(zeta) => {
                // H = i(ζ a†a† − ζ̄ aa): ⟨n+1|H|n⟩ = iζ(n+1), no diagonal.
                let diag = vec![0.0; len];
                let off: Vec<f64> = (1..len).map(|k| zeta.norm() * k as f64).collect();
                let chi = zeta.arg() + std::f64::consts::FRAC_PI_2;
                propagate_tridiagonal(&diag, &off, chi, v);
            }
            Layer::Hamiltonian(p) => {
                // ⟨n|H|n⟩ = 2θn, ⟨n+1|H|n⟩ = λ e^{iξ} (n+1).
                let diag: Vec<f64> = (0..len).map(|n| 2.0 * p.theta() * n as f64).collect();
                let off: Vec<f64> = (1..len).map(|k| p.lambda() * k as f64).collect();
                propagate_tridiagonal(&diag, &off, p.xi(), v);
            }
        }
    }
}

/// `v ← e^{-iH} v` for the Hermitian tridiagonal `H` with real diagonal
/// `diag` and sub-diagonal `⟨n+1|H|n⟩ = off[n]·e^{iχ}`.
///
/// The constant phase is removed by the gauge `diag(e^{inχ})`, leaving a real
/// symmetric matrix whose exponential is summed as a Chebyshev series with
/// Bessel-function coefficients.
pub fn propagate_tridiagonal(diag: &[f64], off: &[f64], chi: f64, v: &mut [Complex64]) {
    let len = diag.len();
    assert_eq!(v.len(), len);
    assert_eq!(off.len() + 1, len);
    for (n, c) in v.iter_mut().enumerate() {
        *c *= Complex64::from_polar(1.0, -chi * n as f64);
    }
    chebyshev_expm(diag, off, v);
    for (n, c) in v.iter_mut().enumerate() {
        *c *= Complex64::from_polar(1.0, chi * n as f64);
    }
}

fn chebyshev_expm(diag: &[f64], off: &[f64], v: &mut [Complex64]) {
    let len = diag.len();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for n in 0..len {
        let mut rad = 0.0;
        if n > 0 {
            rad += off[n - 1].abs();
        }
        if n + 1 < len {
            rad += off[n].abs();
        }
        lo = lo.min(diag[n] - rad);
        hi = hi.max(diag[n] + rad);
    }
    let center = 0.5 * (hi + lo);
    let radius = 0.5 * (hi - lo);
    let global = Complex64::from_polar(1.0, -center);
    if radius < 1e-300 {
        v.iter_mut().for_each(|c| *c *= global);
        return;
    }

    let terms = (radius + 10.0 * radius.cbrt() + 30.0).ceil() as usize;
    let bessel = bessel_sequence(radius, terms);
    let scaled = |x: &[Complex64], out: &mut [Complex64]| {
        for n in 0..len {
            let mut y = x[n] * (diag[n] - center);
            if n > 0 {
                y += x[n - 1] * off[n - 1];
            }
            if n + 1 < len {
                y += x[n + 1] * off[n];
            }
            out[n] = y / radius;
        }
    };

    let mut t0: Vec<Complex64> = v.to_vec();
    let mut t1 = vec![Complex64::new(0.0, 0.0); len];
    scaled(&t0, &mut t1);
    let mut acc: Vec<Complex64> = t0.iter().map(|x| x * bessel[0]).collect();
    let minus_i = Complex64::new(0.0, -1.0);
    let mut phase = minus_i;
    for (a, x) in acc.iter_mut().zip(&t1) {
        *a += x * phase * (2.0 * bessel[1]);
    }
    let mut t2 = vec![Complex64::new(0.0, 0.0); len];
    for &jk in &bessel[2..] {
        scaled(&t1, &mut t2);
        phase *= minus_i;
        let coef = phase * (2.0 * jk);
        for n in 0..len {
            let next = 2.0 * t2[n] - t0[n];
            t2[n] = next;
            acc[n] += next * coef;
        }
        std::mem::swap(&mut t0, &mut t1);
        std::mem::swap(&mut t1, &mut t2);
    }
    for (c, a) in v.iter_mut().zip(acc) {
        *c = a * global;
    }
}

/// `J_0(x) … J_K(x)` by Miller's backward recurrence normalized with
/// `J_0 + 2Σ J_{2k} = 1`.
fn bessel_sequence(x: f64, k_max: usize) -> Vec<f64> {
    let start = k_max + 2 * (k_max as f64).sqrt() as usize + 40;
    let mut j = vec![0.0; start + 2];
    j[start] = 1e-300;
    for k in (1..=start).rev() {
        j[k - 1] = 2.0 * k as f64 / x * j[k] - j[k + 1];
        if j[k - 1].abs() > 1e250 {
            j[k - 1..].iter_mut().for_each(|v| *v *= 1e-250);
        }
    }
    let norm = j[0] + 2.0 * j.iter().skip(2).step_by(2).sum::<f64>();
    j.truncate(k_max + 1);
    j.iter_mut().for_each(|v| *v /= norm);
    j
}

/// Applies `layers` (first element acts first) to the vacuum truncated at `nmax`.
pub fn apply_layers(layers: &[Layer], nmax: usize) -> FockStateNN {
    let mut v = FockStateNN::vacuum(nmax).into_amplitudes();
    for layer in layers {
        layer.apply(&mut v);
    }
    FockStateNN::from_vec_unchecked(v)
}

/// Repeats `build` with doubled `Nmax` until the tail population is below
/// tolerance.
pub fn adaptive<F>(policy: &TruncationPolicy, start: usize, mut build: F) -> Result<FockStateNN>
where
    F: FnMut(usize) -> FockStateNN,
{
    policy.validate()?;
    let mut nmax = start.max(TruncationPolicy::MIN_NMAX);
    let mut state = build(nmax);
    for _ in 0..policy.max_doublings {
        if state.tail_mass() < policy.tail_tol {
            return Ok(state);
        }
        nmax *= 2;
        state = build(nmax);
    }
    let tail = state.tail_mass();
    if tail < policy.tail_tol {
        Ok(state)
    } else {
        Err(Error::TruncationFailure {
            nmax,
            tail,
            tolerance: policy.tail_tol,
        })
    }
}

/// `e^{-iH}|0,0⟩` for the Hamiltonian model.
pub fn evolve_vacuum(params: &ModelParams, trunc: &TruncationPolicy) -> Result<FockStateNN> {
    let start = trunc.starting_nmax(params.g(), params.phi());
    adaptive(trunc, start, |n| apply_layers(&[Layer::Hamiltonian(*params)], n))
}

/// `e^{-iH}|0,0⟩` at a fixed truncation, without the tail check.
pub fn evolve_vacuum_at(params: &ModelParams, nmax: usize) -> FockStateNN {
    apply_layers(&[Layer::Hamiltonian(*params)], nmax)
}

/// Two-mode squeezed vacuum `c_n = (e^{iu} tanh f)ⁿ / cosh f`.
pub fn tmsv_state(f: f64, u: f64, trunc: &TruncationPolicy) -> Result<FockStateNN> {
    if !(f.is_finite() && f >= 0.0 && u.is_finite()) {
        return Err(crate::error::invalid(format!("TMSV needs finite f >= 0, got f = {f}, u = {u}")));
    }
    let start = trunc.starting_nmax(0.5 * f, std::f64::consts::PI);
    adaptive(trunc, start, |n| tmsv_state_at(f, u, n))
}

/// The truncated TMSV amplitudes up to `nmax`, not renormalized.
pub fn tmsv_state_at(f: f64, u: f64, nmax: usize) -> FockStateNN {
    let t = Complex64::from_polar(f.tanh(), u);
    let mut c = Complex64::new(1.0 / f.cosh(), 0.0);
    let mut amps = Vec::with_capacity(nmax + 1);
    for _ in 0..=nmax {
        amps.push(c);
        c *= t;
    }
    FockStateNN::from_vec_unchecked(amps)
}

/// Layers of `V(g₁,g₂,θ) = e^{g₂G} e^{iθn} e^{g₁G}` in application order, with
/// `G = a₁†a₂† − a₁a₂`.
pub fn circuit_layers(spec: &CircuitSpec) -> [Layer; 3] {
    [
        Layer::Squeeze(Complex64::new(spec.g1(), 0.0)),
        Layer::Phase(spec.theta()),
        Layer::Squeeze(Complex64::new(spec.g2(), 0.0)),
    ]
}

/// `V(g₁,g₂,θ)|0,0⟩`.
pub fn circuit_state(spec: &CircuitSpec, trunc: &TruncationPolicy) -> Result<FockStateNN> {
    let strength = spec.g1().abs().max(spec.g2().abs());
    let start = trunc.starting_nmax(strength, std::f64::consts::PI);
    let layers = circuit_layers(spec);
    adaptive(trunc, start, |n| apply_layers(&layers, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::state::{overlap, phase_aligned_distance};
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn bessel_values() {
        let j = bessel_sequence(1.0, 5);
        assert!((j[0] - 0.765_197_686_557_966_6).abs() < 1e-15);
        assert!((j[1] - 0.440_050_585_744_933_5).abs() < 1e-15);
        let j = bessel_sequence(50.0, 120);
        assert!((j[0] - 0.055_812_327_669_251_85).abs() < 1e-14);
        assert!((j[50] - 0.121_409_021_897_614_56).abs() < 1e-14);
    }

    #[test]
    fn propagator_matches_dense_eigendecomposition() {
        use nalgebra::{DMatrix, SymmetricEigen};
        let len = 40;
        let diag: Vec<f64> = (0..len).map(|n| 0.3 * n as f64 - 1.0).collect();
        let off: Vec<f64> = (1..len).map(|k| 0.2 * (k as f64).sqrt()).collect();
        let mut h = DMatrix::<f64>::zeros(len, len);
        for n in 0..len {
            h[(n, n)] = diag[n];
            if n + 1 < len {
                h[(n + 1, n)] = off[n];
                h[(n, n + 1)] = off[n];
            }
        }
        let eig = SymmetricEigen::new(h);
        let v0: Vec<Complex64> = (0..len).map(|n| Complex64::new((n as f64).cos(), 0.1 * n as f64)).collect();
        let mut v = v0.clone();
        chebyshev_expm(&diag, &off, &mut v);
        for i in 0..len {
            let mut want = Complex64::new(0.0, 0.0);
            for k in 0..len {
                let mut proj = Complex64::new(0.0, 0.0);
                for j in 0..len {
                    proj += v0[j] * eig.eigenvectors[(j, k)];
                }
                want += proj * eig.eigenvectors[(i, k)] * Complex64::from_polar(1.0, -eig.eigenvalues[k]);
            }
            assert!((v[i] - want).norm() < 1e-12);
        }
    }

    #[test]
    fn free_field_leaves_vacuum_alone() {
        let p = ModelParams::new(0.0, 1.7, 2.0).unwrap();
        let s = evolve_vacuum(&p, &TruncationPolicy::default()).unwrap();
        assert!((s.amplitudes()[0].norm() - 1.0).abs() < 1e-14);
        assert!(s.amplitudes()[1..].iter().all(|c| c.norm() < 1e-14));
    }

    #[test]
    fn squeezer_point_gives_tmsv_amplitudes() {
        let g = 0.5;
        let p = ModelParams::new(g, 0.0, PI).unwrap();
        let s = evolve_vacuum(&p, &TruncationPolicy::default()).unwrap();
        assert!((s.amplitudes()[0].norm_sqr() - 0.419_974_341_614_026_1).abs() < 1e-12);
        // Truncation at tail 1e-12 perturbs the edge amplitudes at the 1e-8
        // level; the 1e-10 comparison needs a smaller tail.
        let tight = TruncationPolicy { tail_tol: 1e-20, ..TruncationPolicy::default() };
        let s = evolve_vacuum(&p, &tight).unwrap();
        assert!((s.amplitudes()[0].norm_sqr() - 0.419_974_341_614_026_1).abs() < 1e-12);
        let t = tmsv_state_at(2.0 * g, -FRAC_PI_2, s.nmax());
        let d = phase_aligned_distance(&s, &t);
        assert!(d < 1e-10, "{d} {}", s.nmax());
    }

    #[test]
    fn evolution_is_unitary() {
        for &(g, th, phi) in &[(0.3, 0.2, 1.0), (1.0, 0.5, PI), (0.7, 3.0, 2.5), (1.5, 0.0, PI)] {
            let s = evolve_vacuum(&ModelParams::new(g, th, phi).unwrap(), &TruncationPolicy::default()).unwrap();
            assert!((s.norm_sqr() - 1.0).abs() < 1e-10, "{g} {th} {phi}");
            assert!(s.tail_mass() < 1e-12);
        }
    }

    #[test]
    fn tmsv_overlap_with_vacuum() {
        let s = tmsv_state(1.0, 0.0, &TruncationPolicy::default()).unwrap();
        let vac = FockStateNN::vacuum(0);
        assert!((overlap(&vac, &s).re - 1.0 / 1f64.cosh()).abs() < 1e-15);
        let z = tmsv_state(0.0, 0.3, &TruncationPolicy::default()).unwrap();
        assert!((z.amplitudes()[0].re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn single_squeeze_circuit_is_tmsv() {
        let spec = CircuitSpec::new(1.0, 0.0, 0.0).unwrap();
        let s = circuit_state(&spec, &TruncationPolicy::default()).unwrap();
        let t = tmsv_state_at(1.0, 0.0, s.nmax());
        let max = s
            .amplitudes()
            .iter()
            .zip(t.amplitudes())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        assert!(max < 1e-10);
    }

    #[test]
    fn inverse_layers_return_to_vacuum() {
        for &theta in &[0.0, 0.7] {
            let spec = CircuitSpec::new(-0.8, 0.8, theta).unwrap();
            let s = circuit_state(&spec, &TruncationPolicy::default()).unwrap();
            if theta == 0.0 {
                assert!((s.amplitudes()[0].norm() - 1.0).abs() < 1e-12);
            }
            assert!((s.norm_sqr() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn truncation_failure_is_reported() {
        let policy = TruncationPolicy {
            initial_nmax: Some(8),
            tail_tol: 1e-12,
            max_doublings: 1,
        };
        let err = evolve_vacuum(&ModelParams::new(1.5, 0.0, PI).unwrap(), &policy).unwrap_err();
        match err {
            Error::TruncationFailure { nmax, tail, .. } => {
                assert_eq!(nmax, 16);
                assert!(tail > 1e-12);
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
