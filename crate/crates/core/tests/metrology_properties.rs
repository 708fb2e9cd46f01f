use std::f64::consts::PI;

use su11::fock::{observable_stats, tmsv_state_at, unsqueezed_snr, ObservableTag, TruncationPolicy};
use su11::gaussian::{state_moments, ModelParams};
use su11::metrology::{
    approximant_theta_snr, energy_exponent_fit, qfi_numeric, qfi_phi_closed, qfi_theta0_closed, snr_numeric,
    Backend, Model, QfiMethod, Wrt,
};

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

#[test]
fn cramer_rao_bound_holds() {
    let tr = TruncationPolicy::default();
    for &(g, theta, phi) in &[(0.3, 0.0, PI), (0.8, 0.5, 2.0), (1.0, 2.5, PI), (0.5, 0.0, 1e-3)] {
        let p = ModelParams::new(g, theta, phi).unwrap();
        for wrt in [Wrt::Phi, Wrt::Theta] {
            let q = qfi_numeric(&p, wrt, QfiMethod::GaussianFormula, Backend::Gaussian, 1e-5, &tr).unwrap().value;
            for obs in [ObservableTag::WeightedShiftO, ObservableTag::TotalPhotonN] {
                let s = snr_numeric(obs, &p, wrt, 1e-4, Model::Hamiltonian, Backend::Fock, &tr).unwrap();
                assert!(s.snr <= q + 1e-6, "{p:?} {wrt} {obs}: {} > {q}", s.snr);
            }
        }
    }
}

#[test]
fn methods_agree() {
    let tr = TruncationPolicy::default();
    for &(g, phi) in &[(0.25, PI / 3.0), (0.7, PI), (1.2, 2.0)] {
        let p = ModelParams::new(g, 0.0, phi).unwrap();
        let closed = qfi_phi_closed(g, phi).unwrap().value;
        let gauss = qfi_numeric(&p, Wrt::Phi, QfiMethod::GaussianFormula, Backend::Gaussian, 1e-5, &tr).unwrap().value;
        let fid_g = qfi_numeric(&p, Wrt::Phi, QfiMethod::FidelityFD, Backend::Gaussian, 1e-4, &tr).unwrap().value;
        let fid_f = qfi_numeric(&p, Wrt::Phi, QfiMethod::FidelityFD, Backend::Fock, 1e-4, &tr).unwrap().value;
        for v in [gauss, fid_g, fid_f] {
            assert!(rel(v, closed) < 1e-5, "g={g} φ={phi}: {v} vs {closed}");
        }
    }
    let p = ModelParams::new(0.9, 0.0, PI).unwrap();
    let c = qfi_numeric(&p, Wrt::Theta, QfiMethod::ClosedForm, Backend::Gaussian, 0.0, &tr).unwrap().value;
    let f = qfi_numeric(&p, Wrt::Theta, QfiMethod::FidelityFD, Backend::Fock, 1e-4, &tr).unwrap().value;
    assert!(rel(f, c) < 1e-5);
}

/// SNR of the weighted-shift observable for `φ` at `φ = π`, on the exact
/// `θ = 0` amplitudes `TMSV(2g sin(φ/2), −φ/2)`.
fn weighted_shift_snr_on_tmsv(g: f64, h: f64, nmax: usize) -> f64 {
    let at = |phi: f64| tmsv_state_at(2.0 * g * (0.5 * phi).sin(), -0.5 * phi, nmax);
    let o = ObservableTag::WeightedShiftO;
    let signal = (observable_stats(&at(PI + h), o).mean - observable_stats(&at(PI - h), o).mean) / (2.0 * h);
    signal * signal / observable_stats(&at(PI), o).variance
}

#[test]
fn weighted_shift_optimality_ratio() {
    let tr = TruncationPolicy::default();
    for &g in &[0.25, 0.5, 1.0, 1.5] {
        let p = ModelParams::new(g, 0.0, PI).unwrap();
        let s = snr_numeric(ObservableTag::WeightedShiftO, &p, Wrt::Phi, 1e-4, Model::Hamiltonian, Backend::Fock, &tr)
            .unwrap();
        let q = qfi_phi_closed(g, PI).unwrap().value;
        assert!((s.snr / q - (2.0 * g).tanh().powi(2)).abs() < 1e-6, "g = {g}");
    }
    // g = 2 needs ~2·10⁴ levels; the θ = 0 amplitudes are exact TMSV.
    for &g in &[1.75, 2.0] {
        let snr = weighted_shift_snr_on_tmsv(g, 1e-4, 40_000);
        let q = qfi_phi_closed(g, PI).unwrap().value;
        assert!((snr / q - (2.0 * g).tanh().powi(2)).abs() < 1e-6, "g = {g}");
    }
}

#[test]
fn relative_maxima_differ_at_fourth_order() {
    let mut worst: f64 = 0.0;
    for k in 1..=20 {
        let g = 0.01 * k as f64;
        let d = qfi_phi_closed(g, PI).unwrap().value - qfi_phi_closed(g, 0.0).unwrap().value;
        worst = worst.max(d.abs() / g.powi(4));
    }
    assert!(worst < 30.0, "{worst}");
}

#[test]
fn hamiltonian_theta_readout_falls_short() {
    let tr = TruncationPolicy::default();
    let ratios: Vec<f64> = [0.5, 1.0, 1.5, 2.0]
        .iter()
        .map(|&g| {
            let p = ModelParams::new(g, 1e-3, PI).unwrap();
            let s = snr_numeric(ObservableTag::TotalPhotonN, &p, Wrt::Theta, 1e-5, Model::Hamiltonian, Backend::Gaussian, &tr)
                .unwrap();
            s.snr / qfi_theta0_closed(g)
        })
        .collect();
    assert!(ratios.windows(2).all(|w| w[1] <= w[0]), "{ratios:?}");
    assert!(ratios[3] < 0.5, "{ratios:?}");
    // Fock cross-check where the truncation is affordable
    let p = ModelParams::new(1.0, 1e-3, PI).unwrap();
    let f = snr_numeric(ObservableTag::TotalPhotonN, &p, Wrt::Theta, 1e-5, Model::Hamiltonian, Backend::Fock, &tr)
        .unwrap();
    assert!(rel(f.snr / qfi_theta0_closed(1.0), ratios[1]) < 1e-4);
}

#[test]
fn unsqueezed_readout_stays_below_the_qfi() {
    let tr = TruncationPolicy::default();
    let ratios: Vec<f64> = [0.5, 1.0, 1.5]
        .iter()
        .map(|&g| unsqueezed_snr(g, 1e-2, &tr).unwrap() / qfi_theta0_closed(g))
        .collect();
    assert!(ratios.iter().all(|&r| r < 1.0), "{ratios:?}");
    assert!(ratios.windows(2).all(|w| w[1] <= w[0]), "{ratios:?}");
}

#[test]
fn approximant_readout_approaches_the_theta0_qfi() {
    let tr = TruncationPolicy::default();
    for &g in &[0.5, 1.0, 1.5] {
        let dev: Vec<f64> = [(1e-2, 1e-4), (1e-3, 1e-5), (1e-4, 1e-6)]
            .iter()
            .map(|&(theta, h)| (approximant_theta_snr(g, theta, h, &tr).unwrap() / qfi_theta0_closed(g) - 1.0).abs())
            .collect();
        assert!(dev.windows(2).all(|w| w[1] < w[0]), "g = {g}: {dev:?}");
        assert!(dev[2] < 1e-3, "g = {g}: {dev:?}");
    }
}

#[test]
fn domain1_ratio_is_not_monotone() {
    let tr = TruncationPolicy::default();
    for &g in &[1.0, 2.0, 3.0] {
        let thetas: Vec<f64> = (1..=600).map(|k| 2.0 * g + 6.0 * k as f64 / 600.0).collect();
        let ratio: Vec<f64> = thetas
            .iter()
            .map(|&t| {
                let p = ModelParams::new(g, t, PI).unwrap();
                qfi_numeric(&p, Wrt::Theta, QfiMethod::GaussianFormula, Backend::Gaussian, 1e-5, &tr).unwrap().value
                    / state_moments(&p).energy
            })
            .collect();
        let turns = ratio.windows(3).filter(|w| (w[1] - w[0]) * (w[2] - w[1]) < 0.0).count();
        assert!(turns >= 1, "g = {g}");
    }
}

#[test]
fn domain1_exponent_is_a_finite_diagnostic() {
    let tr = TruncationPolicy::default();
    let pts: Vec<(f64, f64)> = [0.5, 1.0, 1.5, 2.0]
        .iter()
        .map(|&g| {
            let p = ModelParams::new(g, 2.0 * g + 1.0, PI).unwrap();
            let q = qfi_numeric(&p, Wrt::Theta, QfiMethod::GaussianFormula, Backend::Gaussian, 1e-5, &tr).unwrap().value;
            (state_moments(&p).energy, q)
        })
        .collect();
    assert!(energy_exponent_fit(&pts).unwrap().is_finite());
}
