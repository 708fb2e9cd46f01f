use nalgebra::{Matrix2, Matrix4};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::gaussian::CovarianceMatrix;

/// Number of top levels whose population defines the truncation tail.
pub const TAIL_LEVELS: usize = 5;

/// Two-mode state restricted to the pair sector `span{|n,n⟩}`, stored as
/// amplitudes `c_0 … c_Nmax`.
#[derive(Debug, Clone, PartialEq)]
pub struct FockStateNN {
    amps: Vec<Complex64>,
}

impl FockStateNN {
    pub fn new(amps: Vec<Complex64>) -> Result<Self> {
        if amps.is_empty() {
            return Err(invalid("a pair-sector state needs at least one amplitude"));
        }
        if amps.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(invalid("amplitudes must be finite"));
        }
        Ok(Self { amps })
    }

    pub(crate) fn from_vec_unchecked(amps: Vec<Complex64>) -> Self {
        Self { amps }
    }

    /// `|0,0⟩` embedded in a space truncated at `nmax`.
    pub fn vacuum(nmax: usize) -> Self {
        let mut amps = vec![Complex64::new(0.0, 0.0); nmax + 1];
        amps[0] = Complex64::new(1.0, 0.0);
        Self { amps }
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amps
    }

    /// Largest pair number kept.
    pub fn nmax(&self) -> usize {
        self.amps.len() - 1
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|c| c.norm_sqr()).sum()
    }

    /// Population of the top [`TAIL_LEVELS`] levels.
    pub fn tail_mass(&self) -> f64 {
        let start = self.amps.len().saturating_sub(TAIL_LEVELS);
        self.amps[start..].iter().map(|c| c.norm_sqr()).sum()
    }

    /// Pair-number distribution `|c_n|²`.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|c| c.norm_sqr()).collect()
    }

    /// The same state times `e^{iα}`.
    pub fn with_global_phase(&self, alpha: f64) -> Self {
        let z = Complex64::from_polar(1.0, alpha);
        Self {
            amps: self.amps.iter().map(|c| c * z).collect(),
        }
    }

    /// Mean pair number `Σ n|c_n|²`, i.e. the mean photon number of either mode.
    pub fn mean_pair_number(&self) -> f64 {
        self.amps
            .iter()
            .enumerate()
            .map(|(n, c)| n as f64 * c.norm_sqr())
            .sum()
    }

    /// `⟨a₁a₂⟩ = Σ c̄_n c_{n+1} (n+1)`.
    pub fn pair_coherence(&self) -> Complex64 {
        self.amps
            .windows(2)
            .enumerate()
            .map(|(n, w)| w[0].conj() * w[1] * (n + 1) as f64)
            .sum()
    }
}

/// Truncation of the pair basis and its adaptive enlargement.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TruncationPolicy {
    /// Starting `Nmax`; chosen from the squeezing strength when `None`.
    pub initial_nmax: Option<usize>,
    /// Bound on the population of the top [`TAIL_LEVELS`] levels.
    pub tail_tol: f64,
    /// How many times `Nmax` may be doubled before giving up.
    pub max_doublings: u32,
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        Self {
            initial_nmax: None,
            tail_tol: 1e-12,
            max_doublings: 6,
        }
    }
}

impl TruncationPolicy {
    pub const MIN_NMAX: usize = 8;

    pub fn with_initial_nmax(nmax: usize) -> Self {
        Self {
            initial_nmax: Some(nmax),
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(n) = self.initial_nmax {
            if n < Self::MIN_NMAX {
                return Err(invalid(format!("Nmax must be at least {}, got {n}", Self::MIN_NMAX)));
            }
        }
        if !(self.tail_tol.is_finite() && self.tail_tol > 0.0) {
            return Err(invalid(format!("tail tolerance must be positive, got {}", self.tail_tol)));
        }
        Ok(())
    }

    /// Starting `Nmax` for a squeezing strength `g` at relative phase `phi`:
    /// `max(32, ⌈8(1 + 2g·max(1, sin(φ/2))·e)⌉)` unless fixed explicitly.
    pub fn starting_nmax(&self, g: f64, phi: f64) -> usize {
        self.initial_nmax.unwrap_or_else(|| {
            let s = (0.5 * phi).sin().max(1.0);
            let n = (8.0 * (1.0 + 2.0 * g.abs() * s * std::f64::consts::E)).ceil() as usize;
            n.max(32)
        })
    }
}

/// Which pair-sector observable to read out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ObservableTag {
    /// `O = Σ n(|n+1,n+1⟩⟨n,n| + h.c.)`.
    #[serde(rename = "O")]
    WeightedShiftO,
    /// `N = n₁ + n₂`.
    #[serde(rename = "Ntot")]
    TotalPhotonN,
}

impl ObservableTag {
    pub fn as_str(self) -> &'static str {
        match self {
            ObservableTag::WeightedShiftO => "O",
            ObservableTag::TotalPhotonN => "Ntot",
        }
    }
}

impl std::fmt::Display for ObservableTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for ObservableTag {
    type Err = crate::Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "O" | "o" | "weighted-shift" => Ok(ObservableTag::WeightedShiftO),
            "Ntot" | "ntot" | "N" | "total-photon" => Ok(ObservableTag::TotalPhotonN),
            other => Err(invalid(format!("unknown observable '{other}' (expected O or Ntot)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ObservableStats {
    pub mean: f64,
    pub variance: f64,
}

/// First and second moments of the weighted-shift observable, with the second
/// moment split as `Σ n²(|c_{n+1}|² + |c_n|²) + 2Σ Re[n(n+1) c̄_n c_{n+2}]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeightedShiftMoments {
    pub mean: f64,
    pub intensity: f64,
    pub coherence: f64,
}

impl WeightedShiftMoments {
    pub fn second_moment(&self) -> f64 {
        self.intensity + self.coherence
    }
}

pub fn weighted_shift_moments(state: &FockStateNN) -> WeightedShiftMoments {
    let c = state.amplitudes();
    let len = c.len();
    let mut mean = 0.0;
    let mut intensity = 0.0;
    let mut coherence = 0.0;
    for n in 0..len {
        let nf = n as f64;
        let here = c[n].norm_sqr();
        let next = if n + 1 < len { c[n + 1].norm_sqr() } else { 0.0 };
        intensity += nf * nf * (here + next);
        if n + 1 < len {
            mean += 2.0 * nf * (c[n + 1].conj() * c[n]).re;
        }
        if n + 2 < len {
            coherence += 2.0 * nf * (nf + 1.0) * (c[n].conj() * c[n + 2]).re;
        }
    }
    WeightedShiftMoments {
        mean,
        intensity,
        coherence,
    }
}

pub fn observable_stats(state: &FockStateNN, obs: ObservableTag) -> ObservableStats {
    match obs {
        ObservableTag::WeightedShiftO => {
            let m = weighted_shift_moments(state);
            ObservableStats {
                mean: m.mean,
                variance: (m.second_moment() - m.mean * m.mean).max(0.0),
            }
        }
        ObservableTag::TotalPhotonN => {
            let p = state.probabilities();
            let mean: f64 = p.iter().enumerate().map(|(n, w)| 2.0 * n as f64 * w).sum();
            let variance = p
                .iter()
                .enumerate()
                .map(|(n, w)| {
                    let d = 2.0 * n as f64 - mean;
                    w * d * d
                })
                .sum();
            ObservableStats { mean, variance }
        }
    }
}

/// `⟨s₁|s₂⟩ = Σ c̄_n d_n`; the shorter state is zero-padded.
pub fn overlap(s1: &FockStateNN, s2: &FockStateNN) -> Complex64 {
    s1.amplitudes()
        .iter()
        .zip(s2.amplitudes())
        .map(|(a, b)| a.conj() * b)
        .sum()
}

/// `min_α ‖s₁ − e^{iα}s₂‖`, evaluated from the aligned difference vector so
/// that nearby states keep full relative precision.
pub fn phase_aligned_distance(s1: &FockStateNN, s2: &FockStateNN) -> f64 {
    let ov = overlap(s2, s1);
    let z = if ov.norm() > 0.0 {
        ov / ov.norm()
    } else {
        Complex64::new(1.0, 0.0)
    };
    let a = s1.amplitudes();
    let b = s2.amplitudes();
    let len = a.len().max(b.len());
    let zero = Complex64::new(0.0, 0.0);
    (0..len)
        .map(|n| {
            let x = a.get(n).copied().unwrap_or(zero);
            let y = b.get(n).copied().unwrap_or(zero);
            (x - z * y).norm_sqr()
        })
        .sum::<f64>()
        .sqrt()
}

/// `1 − |⟨s₁|s₂⟩|²` for normalized states, as `d² − d⁴/4` in the
/// phase-aligned distance `d`.
pub fn infidelity(s1: &FockStateNN, s2: &FockStateNN) -> f64 {
    let d2 = phase_aligned_distance(s1, s2).powi(2);
    d2 - 0.25 * d2 * d2
}

/// Quadrature covariance of a pair-sector state in the `(q₁,p₁,q₂,p₂)`
/// ordering: `A = (2N+1)I` and `B = 2(Re⟨a₁a₂⟩ Z + Im⟨a₁a₂⟩ X)`.
pub fn quadrature_covariance(state: &FockStateNN) -> CovarianceMatrix {
    let a = 2.0 * state.mean_pair_number() + 1.0;
    let alpha = state.pair_coherence();
    let (z, x) = (2.0 * alpha.re, 2.0 * alpha.im);
    let m = 0.5
        * Matrix4::new(
            a, 0.0, z, x, //
            0.0, a, x, -z, //
            z, x, a, 0.0, //
            x, -z, 0.0, a,
        );
    CovarianceMatrix::new(m).expect("built symmetric")
}

/// Covariance of either single-mode reduced state, `(N + ½) I`; the reduced
/// density matrix is diagonal with weights `|c_n|²`.
pub fn reduced_covariance(state: &FockStateNN) -> Matrix2<f64> {
    Matrix2::identity() * (state.mean_pair_number() + 0.5)
}
