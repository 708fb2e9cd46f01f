use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;
use su11::circuit::{hamiltonian_log, kak_decompose, CircuitSpec, ConjugacyClass, HamiltonianCoeffs, KakFactors};
use su11::fock::{evolve_vacuum, quadrature_covariance, ObservableTag, TruncationPolicy};
use su11::gaussian::{energy_closed_form, state_moments, DomainTag, ModelParams};
use su11::metrology::{
    qfi_circuit, qfi_numeric, qfi_phi_closed, qfi_theta0_closed, snr_numeric, tmsv_reconstruction_distance,
    Backend, Model, QfiMethod, Wrt,
};

use crate::config::{phi_range, theta_range, Options, Range};
use crate::output::Table;
use crate::CliError;

/// Evaluates the first point on its own so that a bad method/backend pairing
/// fails before the parallel sweep starts, then the rest in grid order.
fn run_grid<J, R, F>(jobs: &[J], eval: F) -> Result<Vec<R>, CliError>
where
    J: Sync,
    R: Send,
    F: Fn(&J) -> Result<R, CliError> + Sync,
{
    let Some((first, rest)) = jobs.split_first() else {
        return Ok(Vec::new());
    };
    let mut rows = vec![eval(first)?];
    rows.extend(rest.par_iter().map(&eval).collect::<Result<Vec<_>, _>>()?);
    Ok(rows)
}

#[derive(Debug, Serialize)]
pub struct Fig2Row {
    pub g: f64,
    pub theta: f64,
    pub domain: DomainTag,
    pub qfi: f64,
    pub energy: f64,
    pub qfi_over_energy: f64,
    /// The Domain 1/2 boundary `θ = 2g`.
    pub boundary: bool,
    /// `sinh⁴2g / g²`, the `θ = 0` value.
    pub theta0_reference: f64,
}

const BOUNDARY_MATCH: f64 = 1e-12;

pub fn fig2(o: &Options) -> Result<Table<Fig2Row>, CliError> {
    let method = o.method.unwrap_or(QfiMethod::GaussianFormula);
    if method == QfiMethod::ClosedForm {
        return Err(CliError::Usage("fig2 needs a numerical method: gaussian or fidelity".into()));
    }
    let backend = o.backend();
    let step = o.step_for(method);
    let trunc = o.truncation();
    let mut jobs = Vec::new();
    for g in o.g_values()? {
        let range = theta_range(o, (0.0, 2.0 * g + 6.0), Some(601))?;
        let mut thetas = range.points();
        let edge = 2.0 * g;
        if edge >= range.min && edge <= range.max && !thetas.iter().any(|t| (t - edge).abs() <= BOUNDARY_MATCH) {
            let at = thetas.partition_point(|&t| t < edge);
            thetas.insert(at, edge);
        }
        jobs.extend(thetas.into_iter().map(|t| (g, t)));
    }
    let rows = run_grid(&jobs, |&(g, theta)| {
        let p = ModelParams::new(g, theta, PI)?;
        let qfi = qfi_numeric(&p, Wrt::Theta, method, backend, step, &trunc)?.value;
        let energy = state_moments(&p).energy;
        Ok(Fig2Row {
            g,
            theta,
            domain: p.domain(),
            qfi,
            energy,
            qfi_over_energy: qfi / energy,
            boundary: (theta - 2.0 * g).abs() <= BOUNDARY_MATCH,
            theta0_reference: if g == 0.0 { 0.0 } else { qfi_theta0_closed(g) },
        })
    })?;
    Ok(Table { schema: "fig2", rows })
}

#[derive(Debug, Serialize)]
pub struct SweepRow {
    pub model: Model,
    pub g: f64,
    pub theta: f64,
    pub phi: f64,
    pub domain: Option<DomainTag>,
    pub wrt: Wrt,
    pub method: QfiMethod,
    pub backend: Backend,
    pub step: f64,
    pub qfi: f64,
    pub observable: Option<ObservableTag>,
    pub signal: Option<f64>,
    pub noise: Option<f64>,
    pub snr: Option<f64>,
}

pub fn sweep(o: &Options) -> Result<Table<SweepRow>, CliError> {
    let gs = o.g_values()?;
    let thetas = theta_range(o, (0.0, 0.0), None)?;
    let phis = phi_range(o)?;
    let model = o.model.unwrap_or(Model::Hamiltonian);
    let wrt = o.wrt.unwrap_or(if phis.samples > 1 && thetas.samples == 1 { Wrt::Phi } else { Wrt::Theta });
    if model == Model::Circuit {
        if wrt != Wrt::Theta {
            return Err(CliError::Usage("the circuit model is swept against theta only".into()));
        }
        if phis.samples > 1 {
            return Err(CliError::Usage("the circuit model has no phi axis".into()));
        }
    }
    let method = o.method();
    let backend = o.backend();
    let step = o.step_for(method);
    let snr_step = o.step.unwrap_or(su11::metrology::DEFAULT_FIDELITY_STEP);
    let trunc = o.truncation();
    let phi_points = if model == Model::Circuit { vec![PI] } else { phis.points() };
    let mut jobs = Vec::new();
    for &g in &gs {
        for theta in thetas.points() {
            for &phi in &phi_points {
                jobs.push((g, theta, phi));
            }
        }
    }
    let rows = run_grid(&jobs, |&(g, theta, phi)| {
        let p = ModelParams::new(g, theta, phi)?;
        let qfi = match model {
            Model::Hamiltonian => qfi_numeric(&p, wrt, method, backend, step, &trunc)?,
            Model::Circuit => qfi_circuit(g, theta, method, step, &trunc)?,
        };
        let snr = o
            .observable
            .map(|obs| snr_numeric(obs, &p, wrt, snr_step, model, backend, &trunc))
            .transpose()?;
        Ok(SweepRow {
            model,
            g,
            theta,
            phi,
            domain: (model == Model::Hamiltonian).then(|| p.domain()),
            wrt,
            method,
            backend,
            step: qfi.step,
            qfi: qfi.value,
            observable: o.observable,
            signal: snr.map(|s| s.signal),
            noise: snr.map(|s| s.noise),
            snr: snr.map(|s| s.snr),
        })
    })?;
    Ok(Table { schema: "sweep", rows })
}

#[derive(Debug, Serialize)]
pub struct CircuitReport {
    pub g1: f64,
    pub g2: f64,
    pub theta: f64,
    pub exists: bool,
    pub class: ConjugacyClass,
    pub trace: f64,
    pub coeffs: Option<HamiltonianCoeffs>,
    pub kak: Option<KakFactors>,
    pub residual: Option<f64>,
    pub warning: Option<String>,
}

pub fn check_circuit(o: &Options) -> Result<CircuitReport, CliError> {
    let need = |v: Option<f64>, name: &str| v.ok_or_else(|| CliError::Usage(format!("check-circuit needs --{name}")));
    let spec = CircuitSpec::new(need(o.g1, "g1")?, need(o.g2, "g2")?, need(o.theta, "theta")?)?;
    let log = hamiltonian_log(&spec);
    Ok(CircuitReport {
        g1: spec.g1(),
        g2: spec.g2(),
        theta: spec.theta(),
        exists: log.exists,
        class: log.class,
        trace: log.trace,
        kak: log.coeffs.as_ref().map(kak_decompose),
        coeffs: log.coeffs,
        residual: log.residual,
        warning: log.warning,
    })
}

impl CircuitReport {
    pub fn text(&self) -> String {
        let mut s = format!(
            "circuit  g1 = {:?}, g2 = {:?}, theta = {:?}\ntrace    {:?} ({})\nexists   {}\n",
            self.g1,
            self.g2,
            self.theta,
            self.trace,
            self.class.as_str(),
            self.exists
        );
        if let Some(c) = &self.coeffs {
            s += &format!("coeffs   s1 = {:?}, s2 = {:?}, s3 = {:?}\n", c.s1, c.s2, c.s3);
        }
        if let Some(k) = &self.kak {
            s += &format!("kak      alpha = {:?}, p1 = {:?}, p2 = {:?}, beta = {:?}\n", k.alpha, k.p1, k.p2, k.beta);
        }
        if let Some(r) = self.residual {
            s += &format!("residual {r:e}\n");
        }
        s
    }
}

#[derive(Debug, Serialize)]
pub struct OracleRow {
    pub check: &'static str,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub points: usize,
    pub worst_g: f64,
    pub worst_theta: f64,
    pub worst_phi: f64,
    pub pass: bool,
}

struct Deviations {
    covariance: f64,
    energy: f64,
    tmsv: f64,
    qfi_phi: Option<f64>,
}

/// Gaussian closed forms against the Fock oracle on a `g × θ × φ` grid.
pub fn oracle_compare(o: &Options) -> Result<Table<OracleRow>, CliError> {
    let gs = match (&o.g_list, o.g) {
        (None, None) => vec![0.1, 0.5, 1.0, 1.5],
        _ => o.g_values()?,
    };
    let thetas = theta_range(o, (0.0, 3.5), Some(4))?;
    let phis = if o.phi_min.is_none() && o.phi_max.is_none() {
        Range::build("phi", 0.6, PI, Some(3))?
    } else {
        phi_range(o)?
    };
    let trunc = o.truncation();
    let tight = TruncationPolicy { tail_tol: 1e-20, ..trunc };
    let mut jobs = Vec::new();
    for &g in &gs {
        for theta in thetas.points() {
            for phi in phis.points() {
                jobs.push(ModelParams::new(g, theta, phi)?);
            }
        }
    }
    let devs = run_grid(&jobs, |p| {
        let gauss = state_moments(p);
        let fock = quadrature_covariance(&evolve_vacuum(p, &trunc)?);
        let scale = gauss.cov.matrix().amax();
        let qfi_phi = if p.theta() == 0.0 {
            let closed = qfi_phi_closed(p.g(), p.phi())?.value;
            let numeric = qfi_numeric(p, Wrt::Phi, QfiMethod::GaussianFormula, Backend::Gaussian, 1e-5, &trunc)?.value;
            Some((numeric - closed).abs() / closed.max(1e-300))
        } else {
            None
        };
        Ok(Deviations {
            covariance: (fock.matrix() - gauss.cov.matrix()).amax() / scale,
            energy: (gauss.energy - energy_closed_form(p)).abs() / gauss.energy,
            tmsv: tmsv_reconstruction_distance(p, &tight)?,
            qfi_phi,
        })
    })?;
    let summarize = |check, tolerance, pick: &dyn Fn(&Deviations) -> Option<f64>| {
        let mut worst = (0.0, None::<&ModelParams>);
        let mut points = 0;
        for (d, p) in devs.iter().zip(&jobs) {
            if let Some(v) = pick(d) {
                points += 1;
                if worst.1.is_none() || v > worst.0 {
                    worst = (v, Some(p));
                }
            }
        }
        let at = worst.1.copied();
        OracleRow {
            check,
            max_deviation: worst.0,
            tolerance,
            points,
            worst_g: at.map_or(f64::NAN, |p| p.g()),
            worst_theta: at.map_or(f64::NAN, |p| p.theta()),
            worst_phi: at.map_or(f64::NAN, |p| p.phi()),
            pass: worst.0 < tolerance,
        }
    };
    let rows = vec![
        summarize("fock_covariance", 1e-7, &|d| Some(d.covariance)),
        summarize("energy_closed_form", 1e-10, &|d| Some(d.energy)),
        summarize("tmsv_reconstruction", 1e-8, &|d| Some(d.tmsv)),
        summarize("qfi_phi_closed_form", 1e-8, &|d| d.qfi_phi),
    ];
    Ok(Table { schema: "oracle-compare", rows })
}
