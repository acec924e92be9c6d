//! Sampling of path-loss process realizations.
//!
//! The process being sampled lives on ℝ⁺ with intensity measure
//! `Λ([0, r]) = ā r^β`; its points `ξ₁ < ξ₂ < ⋯` are the path losses of
//! the transmitters ordered from strongest to weakest received power. By
//! inversion, `ξ_i = (T_i/ā)^{1/β}` where `T₁ < T₂ < ⋯` are the arrival
//! times of a unit-rate Poisson process on the half-line.
//!
//! The infinite process is truncated after `n_points` points. The residual
//! interference of the dropped tail is replaced by its conditional mean
//! `ā β/(1−β) ξ_n^{β−1}`, which removes the dominant truncation bias; the
//! tail's variance `ā β ξ_n^{β−2}/(2−β)` is negligible at the default
//! truncation depth.

use std::fmt;
use std::io::{self, Write};

use rand::Rng;
use rand_distr::Exp1;

use crate::model::{FadingSpec, ModelError, NetworkParams};
use crate::rng::replicate_rng;

/// How the interference of the points beyond the truncation is treated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum TailMode {
    /// Add the conditional mean of the truncated tail to every suffix sum.
    #[default]
    CompensateMean,
    /// Ignore the truncated tail.
    Drop,
}

/// Errors from sampler configuration and realization handling.
#[derive(Debug, Clone, PartialEq)]
pub enum PlpfError {
    InvalidConfig(&'static str),
    /// Points must be strictly increasing, positive and finite.
    InvalidPoints(&'static str),
    /// Suffix query beyond the truncation index.
    IndexOutOfRange { k: usize, n: usize },
    Model(ModelError),
}

impl fmt::Display for PlpfError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::InvalidConfig(what) => write!(f, "invalid sampler config: {what}"),
            Self::InvalidPoints(what) => write!(f, "invalid realization points: {what}"),
            Self::IndexOutOfRange { k, n } => {
                write!(f, "suffix index {k} exceeds point count {n}")
            }
            Self::Model(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for PlpfError {}

impl From<ModelError> for PlpfError {
    fn from(e: ModelError) -> Self {
        Self::Model(e)
    }
}

/// Configuration of the truncated path-loss-process sampler.
#[derive(Clone, Copy, Debug)]
pub struct SamplerConfig {
    pub beta: f64,
    pub n_points: usize,
    pub tail_mode: TailMode,
    pub master_seed: u64,
    /// Accessibility-mark probability η; marks are drawn iid Bernoulli(η)
    /// when present.
    pub mark_prob: Option<f64>,
    /// Intensity scale ā of the sampled process; 1 gives the standard
    /// (normalized) process, which carries all interference-limited
    /// statistics. Other values matter only when noise enters.
    pub intensity_scale: f64,
}

impl SamplerConfig {
    pub const DEFAULT_N_POINTS: usize = 1000;

    pub fn new(beta: f64, master_seed: u64) -> Result<Self, PlpfError> {
        let cfg = Self {
            beta,
            n_points: Self::DEFAULT_N_POINTS,
            tail_mode: TailMode::CompensateMean,
            master_seed,
            mark_prob: None,
            intensity_scale: 1.0,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_n_points(mut self, n_points: usize) -> Result<Self, PlpfError> {
        self.n_points = n_points;
        self.validate()?;
        Ok(self)
    }

    pub fn with_tail_mode(mut self, mode: TailMode) -> Self {
        self.tail_mode = mode;
        self
    }

    pub fn with_mark_prob(mut self, eta: f64) -> Result<Self, PlpfError> {
        self.mark_prob = Some(eta);
        self.validate()?;
        Ok(self)
    }

    pub fn with_intensity_scale(mut self, a_bar: f64) -> Result<Self, PlpfError> {
        self.intensity_scale = a_bar;
        self.validate()?;
        Ok(self)
    }

    fn validate(&self) -> Result<(), PlpfError> {
        if !(self.beta > 0.0 && self.beta < 1.0) {
            return Err(PlpfError::InvalidConfig("beta must be in (0, 1)"));
        }
        if self.n_points < 10 {
            return Err(PlpfError::InvalidConfig("n_points must be >= 10"));
        }
        if let Some(eta) = self.mark_prob {
            if !(0.0..=1.0).contains(&eta) {
                return Err(PlpfError::InvalidConfig("mark_prob must be in [0, 1]"));
            }
        }
        if !(self.intensity_scale > 0.0) || !self.intensity_scale.is_finite() {
            return Err(PlpfError::InvalidConfig("intensity_scale must be > 0"));
        }
        Ok(())
    }
}

/// One truncated realization: ordered path losses, optional accessibility
/// marks, and precomputed suffix interference sums.
#[derive(Clone, Debug)]
pub struct PlpfRealization {
    xi: Vec<f64>,
    marks: Option<Vec<bool>>,
    tail_mean: f64,
    /// suffix[k] = Σ_{j>k} ξ_j⁻¹ + tail_mean, for k = 0..=n.
    suffix: Vec<f64>,
}

impl PlpfRealization {
    /// Build a realization from explicit points (used by tests and by the
    /// network-space sampler). Points must be strictly increasing,
    /// positive and finite.
    pub fn from_points(
        xi: Vec<f64>,
        marks: Option<Vec<bool>>,
        tail_mean: f64,
    ) -> Result<Self, PlpfError> {
        if xi.is_empty() {
            return Err(PlpfError::InvalidPoints("empty realization"));
        }
        let mut prev = 0.0;
        for &x in &xi {
            if !x.is_finite() || x <= prev {
                return Err(PlpfError::InvalidPoints(
                    "points must be finite, positive and strictly increasing",
                ));
            }
            prev = x;
        }
        if let Some(m) = &marks {
            if m.len() != xi.len() {
                return Err(PlpfError::InvalidPoints("marks length must match points"));
            }
        }
        if !tail_mean.is_finite() || tail_mean < 0.0 {
            return Err(PlpfError::InvalidPoints("tail mean must be finite and >= 0"));
        }
        let suffix = build_suffix(&xi, tail_mean);
        Ok(Self { xi, marks, tail_mean, suffix })
    }

    pub fn len(&self) -> usize {
        self.xi.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xi.is_empty()
    }

    /// The k-th smallest path loss, 1-indexed as ξ_k.
    pub fn xi(&self, k: usize) -> f64 {
        self.xi[k - 1]
    }

    pub fn points(&self) -> &[f64] {
        &self.xi
    }

    pub fn marks(&self) -> Option<&[bool]> {
        self.marks.as_deref()
    }

    /// Accessibility of the k-th strongest point (1-indexed).
    pub fn mark(&self, k: usize) -> Option<bool> {
        self.marks.as_ref().map(|m| m[k - 1])
    }

    pub fn tail_mean(&self) -> f64 {
        self.tail_mean
    }

    /// Residual interference after the k strongest points,
    /// I_k = Σ_{j>k} ξ_j⁻¹ plus the tail compensation. O(1).
    pub fn suffix_interference(&self, k: usize) -> Result<f64, PlpfError> {
        self.suffix
            .get(k)
            .copied()
            .ok_or(PlpfError::IndexOutOfRange { k, n: self.xi.len() })
    }

    /// Like [`Self::suffix_interference`] without the bounds check; k must
    /// be ≤ n.
    #[inline]
    pub(crate) fn suffix_unchecked(&self, k: usize) -> f64 {
        self.suffix[k]
    }

    /// Number of points in [0, r].
    pub fn count_leq(&self, r: f64) -> usize {
        self.xi.partition_point(|&x| x <= r)
    }

    /// Map every point ξ to Cξ. Interference sums and the tail mean scale
    /// by 1/C, so an intensity measure ā r^β becomes ā C^{−β} r^β.
    pub fn scale(&self, c: f64) -> Result<Self, PlpfError> {
        if !(c > 0.0) || !c.is_finite() {
            return Err(PlpfError::InvalidConfig("scale factor must be > 0"));
        }
        Ok(Self {
            xi: self.xi.iter().map(|&x| x * c).collect(),
            marks: self.marks.clone(),
            tail_mean: self.tail_mean / c,
            suffix: self.suffix.iter().map(|&s| s / c).collect(),
        })
    }

    /// Debug dump with columns `index,xi,mark` (mark empty when unmarked).
    pub fn dump_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "index,xi,mark")?;
        for (i, &x) in self.xi.iter().enumerate() {
            match &self.marks {
                Some(m) => writeln!(w, "{},{:.12e},{}", i + 1, x, u8::from(m[i]))?,
                None => writeln!(w, "{},{:.12e},", i + 1, x)?,
            }
        }
        Ok(())
    }
}

fn build_suffix(xi: &[f64], tail_mean: f64) -> Vec<f64> {
    let n = xi.len();
    let mut suffix = vec![0.0; n + 1];
    suffix[n] = tail_mean;
    // Summing from the weakest point up keeps the small terms first.
    for k in (0..n).rev() {
        suffix[k] = suffix[k + 1] + 1.0 / xi[k];
    }
    suffix
}

/// Sample one realization of the path-loss process with intensity measure
/// `ā r^β` (the standard process for ā = 1). Deterministic in
/// `(cfg.master_seed, replicate_index)`.
pub fn sample_splpf(cfg: &SamplerConfig, replicate_index: u64) -> PlpfRealization {
    let mut rng = replicate_rng(cfg.master_seed, replicate_index);
    let inv_beta = 1.0 / cfg.beta;
    let inv_scale = 1.0 / cfg.intensity_scale;
    let mut xi = Vec::with_capacity(cfg.n_points);
    let mut t = 0.0_f64;
    for _ in 0..cfg.n_points {
        t += rng.sample::<f64, _>(Exp1);
        xi.push(power(t * inv_scale, inv_beta));
    }
    let marks = cfg
        .mark_prob
        .map(|eta| (0..cfg.n_points).map(|_| rng.random_bool(eta)).collect());
    let tail_mean = match cfg.tail_mode {
        TailMode::CompensateMean => tail_mean(cfg.intensity_scale, cfg.beta, xi[cfg.n_points - 1]),
        TailMode::Drop => 0.0,
    };
    let suffix = build_suffix(&xi, tail_mean);
    PlpfRealization { xi, marks, tail_mean, suffix }
}

/// Conditional mean of the interference from points beyond ρ in a process
/// with intensity measure ā r^β: ā β/(1−β) ρ^{β−1}.
pub fn tail_mean(a_bar: f64, beta: f64, rho: f64) -> f64 {
    a_bar * beta / (1.0 - beta) * rho.powf(beta - 1.0)
}

#[inline]
fn power(x: f64, exponent: f64) -> f64 {
    // β = 1/2 is by far the most common case; x² is much faster than powf.
    if exponent == 2.0 {
        x * x
    } else {
        x.powf(exponent)
    }
}

/// Spatial oversampling factor used when fading can reorder distant points
/// into the kept prefix; chosen so that the probability of missing a point
/// below the kept cutoff is negligible.
const FADING_OVERSAMPLE: usize = 6;

/// Sample the path-loss process of a power-law Poisson network by drawing
/// transmitter radii (inversion of the ball-count measure
/// `a d c_d R^{b+d}/(b+d)`), applying per-point fading, mapping through
/// `ξ = R^α/h` and keeping the `n_keep` smallest values.
///
/// This is the network-space route: it must produce realizations
/// statistically identical to [`sample_splpf`] after normalization, which
/// is exactly what the invariance test suite checks.
pub fn sample_from_network(
    params: &NetworkParams,
    n_keep: usize,
    tail_mode: TailMode,
    master_seed: u64,
    replicate_index: u64,
) -> Result<PlpfRealization, PlpfError> {
    if n_keep < 10 {
        return Err(PlpfError::InvalidConfig("n_keep must be >= 10"));
    }
    let a_bar = params.intensity_scale()?;
    let mut rng = replicate_rng(master_seed, replicate_index);
    let d = params.dimension() as f64;
    let exponent_sum = params.density_exponent() + d;
    let count_scale = params.density_scale() * d * params.unit_ball_volume() / exponent_sum;
    let oversample = match params.fading() {
        // Without fading the map R ↦ R^α is monotone, so the first n
        // spatial points are exactly the first n path-loss points.
        FadingSpec::None => 1,
        _ => FADING_OVERSAMPLE,
    };
    let n_total = n_keep * oversample;
    let mut xi = Vec::with_capacity(n_total);
    let mut t = 0.0_f64;
    for _ in 0..n_total {
        t += rng.sample::<f64, _>(Exp1);
        let radius = (t / count_scale).powf(1.0 / exponent_sum);
        let h = params.fading().sample(&mut rng);
        xi.push(radius.powf(params.alpha()) / h);
    }
    if oversample > 1 {
        xi.select_nth_unstable_by(n_keep - 1, f64::total_cmp);
        xi.truncate(n_keep);
        xi.sort_unstable_by(f64::total_cmp);
    }
    let beta = params.beta();
    let tail = match tail_mode {
        TailMode::CompensateMean => tail_mean(a_bar, beta, xi[n_keep - 1]),
        TailMode::Drop => 0.0,
    };
    PlpfRealization::from_points(xi, None, tail)
}
