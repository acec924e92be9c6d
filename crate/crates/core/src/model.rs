//! Network parameter model and the reductions that collapse it.
//!
//! A power-law Poisson network is described by a dimension `d`, a path-loss
//! exponent `α`, a density law `λ(x) = a‖x‖^b` and a fading distribution
//! with unit mean. Mapping the network through `ξ = ‖x‖^α / h` turns it
//! into a one-dimensional Poisson process on ℝ⁺ with intensity measure
//! `Λ([0, r]) = ā r^β`, where
//!
//! * `β = (d + b)/α ∈ (0, 1)` is the single shape parameter,
//! * `δ = d/α`,
//! * `ā = a δ c_d E[h^β]/β` with `c_d` the volume of the d-dimensional
//!   unit ball.
//!
//! In the interference-limited regime every decoding statistic depends on
//! the network only through `β`, so computations run on the normalized
//! (`ā = 1`) process. The K-tier cellular model reduces the same way: the
//! union of the per-tier processes is a single power-law process with total
//! weight `Z` and an equivalent access probability `η`.

use std::f64::consts::PI;
use std::fmt;

use rand::Rng;
use rand_chacha::ChaCha12Rng;
use rand_distr::Exp1;

use crate::rng::replicate_rng;
use crate::specfun;

/// Sample count for estimating fractional fading moments of custom fading.
const MOMENT_SAMPLES: u64 = 1_000_000;

/// Errors from parameter validation and reduction.
#[derive(Debug, Clone, PartialEq)]
pub enum ModelError {
    /// Dimension must be a positive integer.
    InvalidDimension(u32),
    /// Path-loss exponent must be positive and finite.
    InvalidAlpha(f64),
    /// Density scale `a` must be positive and finite.
    InvalidDensityScale(f64),
    /// Density exponent `b` must lie strictly inside (−d, α−d).
    DensityExponentOutOfRange { b: f64, lo: f64, hi: f64 },
    /// The fractional moment E[h^β] is needed but not available; call
    /// `with_estimated_moment` first or supply it in the fading spec.
    MomentUnavailable,
    /// A custom fading sampler failed the unit-mean check.
    FadingMeanNotUnit { mean: f64, std_error: f64 },
    /// Tier parameter out of range.
    InvalidTier(&'static str),
    /// HCN tier list is empty.
    EmptyTiers,
}

impl fmt::Display for ModelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::InvalidDimension(d) => write!(f, "dimension must be >= 1, got {d}"),
            Self::InvalidAlpha(a) => write!(f, "path-loss exponent must be > 0, got {a}"),
            Self::InvalidDensityScale(a) => write!(f, "density scale must be > 0, got {a}"),
            Self::DensityExponentOutOfRange { b, lo, hi } => {
                write!(f, "density exponent b={b} outside ({lo}, {hi})")
            }
            Self::MomentUnavailable => {
                write!(f, "fractional fading moment E[h^beta] not supplied or estimated")
            }
            Self::FadingMeanNotUnit { mean, std_error } => write!(
                f,
                "custom fading sampler has mean {mean} (std err {std_error}), expected 1"
            ),
            Self::InvalidTier(what) => write!(f, "invalid tier parameter: {what}"),
            Self::EmptyTiers => write!(f, "HCN needs at least one tier"),
        }
    }
}

impl std::error::Error for ModelError {}

/// Unit-mean fading distribution attached to every transmitter.
#[derive(Clone, Copy, Debug)]
pub enum FadingSpec {
    /// No fading: h ≡ 1.
    None,
    /// Unit-mean exponential (Rayleigh power) fading.
    Exponential,
    /// Caller-supplied unit-mean sampler, with the fractional moment
    /// E[h^β] either supplied or estimated by sampling.
    Custom {
        sample: fn(&mut ChaCha12Rng) -> f64,
        moment_beta: Option<f64>,
    },
}

/// Result of a sampled moment estimate.
#[derive(Clone, Copy, Debug)]
pub struct MomentEstimate {
    pub value: f64,
    pub std_error: f64,
}

impl FadingSpec {
    /// Draw one fading coefficient.
    pub fn sample(&self, rng: &mut ChaCha12Rng) -> f64 {
        match self {
            Self::None => 1.0,
            Self::Exponential => rng.sample(Exp1),
            Self::Custom { sample, .. } => sample(rng),
        }
    }

    /// E[h^β] when it is known in closed form or was supplied.
    pub fn fractional_moment(&self, beta: f64) -> Option<f64> {
        match self {
            Self::None => Some(1.0),
            // E[h^β] = Γ(1 + β) for unit-mean exponential h.
            Self::Exponential => Some(
                specfun::gamma(1.0 + beta).expect("1 + beta is in the gamma domain"),
            ),
            Self::Custom { moment_beta, .. } => *moment_beta,
        }
    }

    /// Estimate E[h^β] by the sample mean of h^β over 10⁶ draws. Also
    /// checks the unit-mean normalization of custom samplers (5σ gate).
    pub fn estimate_fractional_moment(
        &self,
        beta: f64,
        seed: u64,
    ) -> Result<MomentEstimate, ModelError> {
        let mut rng = replicate_rng(seed, u64::MAX);
        let mut sum = 0.0;
        let mut sum_sq = 0.0;
        let mut mean_sum = 0.0;
        let mut mean_sq = 0.0;
        for _ in 0..MOMENT_SAMPLES {
            let h = self.sample(&mut rng);
            let hb = h.powf(beta);
            sum += hb;
            sum_sq += hb * hb;
            mean_sum += h;
            mean_sq += h * h;
        }
        let n = MOMENT_SAMPLES as f64;
        let value = sum / n;
        let var = (sum_sq / n - value * value).max(0.0);
        let std_error = (var / n).sqrt();
        let mean = mean_sum / n;
        let mean_se = (((mean_sq / n - mean * mean).max(0.0)) / n).sqrt();
        if (mean - 1.0).abs() > 5.0 * mean_se.max(1e-9) {
            return Err(ModelError::FadingMeanNotUnit {
                mean,
                std_error: mean_se,
            });
        }
        Ok(MomentEstimate { value, std_error })
    }
}

/// Validated parameters of a power-law Poisson network.
#[derive(Clone, Copy, Debug)]
pub struct NetworkParams {
    d: u32,
    alpha: f64,
    a: f64,
    b: f64,
    fading: FadingSpec,
}

impl NetworkParams {
    pub fn new(d: u32, alpha: f64, a: f64, b: f64, fading: FadingSpec) -> Result<Self, ModelError> {
        if d == 0 {
            return Err(ModelError::InvalidDimension(d));
        }
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(ModelError::InvalidAlpha(alpha));
        }
        if !(a > 0.0) || !a.is_finite() {
            return Err(ModelError::InvalidDensityScale(a));
        }
        let lo = -(d as f64);
        let hi = alpha - d as f64;
        // Boundaries excluded: b = −d and b = α − d give β ∉ (0, 1).
        if !(b > lo && b < hi) || !b.is_finite() {
            return Err(ModelError::DensityExponentOutOfRange { b, lo, hi });
        }
        Ok(Self { d, alpha, a, b, fading })
    }

    /// Uniform d-dimensional network of density `a` without fading.
    pub fn uniform(d: u32, alpha: f64, a: f64) -> Result<Self, ModelError> {
        Self::new(d, alpha, a, 0.0, FadingSpec::None)
    }

    pub fn dimension(&self) -> u32 {
        self.d
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn density_scale(&self) -> f64 {
        self.a
    }

    pub fn density_exponent(&self) -> f64 {
        self.b
    }

    pub fn fading(&self) -> &FadingSpec {
        self.fading_ref()
    }

    fn fading_ref(&self) -> &FadingSpec {
        &self.fading
    }

    /// The shape parameter β = (d + b)/α ∈ (0, 1).
    pub fn beta(&self) -> f64 {
        (self.d as f64 + self.b) / self.alpha
    }

    /// δ = d/α.
    pub fn delta(&self) -> f64 {
        self.d as f64 / self.alpha
    }

    /// Volume of the d-dimensional unit ball, c_d = π^{d/2}/Γ(d/2 + 1).
    pub fn unit_ball_volume(&self) -> f64 {
        unit_ball_volume(self.d)
    }

    /// Non-fatal notes about the parameter point.
    pub fn warnings(&self) -> Vec<String> {
        let mut notes = Vec::new();
        if self.d > 3 {
            notes.push(format!(
                "dimension d={} is unusual; results are formally valid but untested beyond d=3",
                self.d
            ));
        }
        notes
    }

    /// The path-loss-process intensity scale ā = a δ c_d E[h^β]/β, so that
    /// Λ([0, r]) = ā r^β.
    ///
    /// Fails with `MomentUnavailable` for custom fading without a supplied
    /// moment; see [`NetworkParams::with_estimated_moment`].
    pub fn intensity_scale(&self) -> Result<f64, ModelError> {
        let beta = self.beta();
        let moment = self
            .fading
            .fractional_moment(beta)
            .ok_or(ModelError::MomentUnavailable)?;
        Ok(self.a * self.delta() * self.unit_ball_volume() * moment / beta)
    }

    /// Resolve a missing custom-fading moment by sampling, returning the
    /// updated parameters together with the estimate.
    pub fn with_estimated_moment(mut self, seed: u64) -> Result<(Self, MomentEstimate), ModelError> {
        let beta = self.beta();
        let estimate = self.fading.estimate_fractional_moment(beta, seed)?;
        if let FadingSpec::Custom { moment_beta, .. } = &mut self.fading {
            *moment_beta = Some(estimate.value);
        }
        Ok((self, estimate))
    }
}

/// Volume of the d-dimensional unit ball.
pub fn unit_ball_volume(d: u32) -> f64 {
    let half_d = d as f64 / 2.0;
    PI.powf(half_d) / specfun::gamma(half_d + 1.0).expect("d/2 + 1 > 0")
}

/// One tier of a heterogeneous cellular network.
#[derive(Clone, Copy, Debug)]
pub struct TierParams {
    pub density: f64,
    pub power: f64,
    pub access_prob: f64,
    pub fading: FadingSpec,
}

impl TierParams {
    pub fn validate(&self) -> Result<(), ModelError> {
        if !(self.density > 0.0) || !self.density.is_finite() {
            return Err(ModelError::InvalidTier("density must be > 0"));
        }
        if !(self.power > 0.0) || !self.power.is_finite() {
            return Err(ModelError::InvalidTier("power must be > 0"));
        }
        if !(0.0..=1.0).contains(&self.access_prob) {
            return Err(ModelError::InvalidTier("access probability must be in [0, 1]"));
        }
        Ok(())
    }
}

/// K-tier heterogeneous cellular network on the plane (d = 2, β = 2/α).
#[derive(Clone, Debug)]
pub struct HcnParams {
    tiers: Vec<TierParams>,
    alpha: f64,
}

/// The `(Z, η, β)` triple a K-tier network reduces to.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HcnReduction {
    /// Total power-law weight Z = Σ λ_i E[(h⁽ⁱ⁾)^β] (P⁽ⁱ⁾)^β.
    pub z: f64,
    /// Equivalent access probability η ∈ [0, 1].
    pub eta: f64,
    /// Shape parameter β = 2/α.
    pub beta: f64,
}

impl HcnParams {
    pub fn new(tiers: Vec<TierParams>, alpha: f64) -> Result<Self, ModelError> {
        if tiers.is_empty() {
            return Err(ModelError::EmptyTiers);
        }
        // d = 2 is fixed for the cellular model, so β = 2/α ∈ (0, 1)
        // requires α > 2.
        if !(alpha > 2.0) || !alpha.is_finite() {
            return Err(ModelError::InvalidAlpha(alpha));
        }
        for tier in &tiers {
            tier.validate()?;
        }
        Ok(Self { tiers, alpha })
    }

    pub fn tiers(&self) -> &[TierParams] {
        &self.tiers
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        2.0 / self.alpha
    }

    /// Collapse the K tiers into the equivalent single marked process.
    ///
    /// The union of the per-tier path-loss processes is a Poisson process
    /// with intensity measure Λ([0, r]) = Zπ r^β whose marks are iid
    /// Bernoulli(η); downstream decoding statistics depend only on β.
    pub fn reduce(&self) -> Result<HcnReduction, ModelError> {
        let beta = self.beta();
        let mut z = 0.0;
        let mut weighted_access = 0.0;
        for tier in &self.tiers {
            let moment = tier
                .fading
                .fractional_moment(beta)
                .ok_or(ModelError::MomentUnavailable)?;
            let weight = tier.density * moment * tier.power.powf(beta);
            z += weight;
            weighted_access += tier.access_prob * weight;
        }
        Ok(HcnReduction {
            z,
            eta: weighted_access / z,
            beta,
        })
    }
}
