//! Monte Carlo estimators for the decoding statistics of the path-loss
//! process: the successively-decodable count N, the tail probabilities
//! p_k = P(N ≥ k), the joint tail P(ξ_k⁻¹ > θ(I_k + W)), the mean `E[N]` and
//! aggregate throughput, the Laplace functional of ξ_k I_k, and cellular
//! coverage with finite or unbounded cancellation depth.
//!
//! Replicates fan out across workers in fixed-size chunks. Each replicate
//! owns an RNG stream derived from `(master_seed, replicate_index)` and
//! chunk results merge in index order through a fixed pairwise tree, so an
//! estimate is a pure function of the sampler configuration and replicate
//! count, independent of worker count and scheduling.

use std::fmt;
use std::num::NonZeroUsize;

use rayon::prelude::*;

use crate::bounds;
use crate::plpf::{sample_splpf, PlpfError, PlpfRealization, SamplerConfig};

/// Replicates per work chunk. Fixed so that float accumulation order does
/// not depend on the worker count.
const CHUNK: u64 = 4096;

/// Default maximum decode depth tracked by a query.
pub const DEFAULT_K_MAX: usize = 50;

#[derive(Debug, Clone, PartialEq)]
pub enum SimError {
    InvalidQuery(&'static str),
    /// The query needs marks but the sampler does not produce them.
    MissingMarks,
    /// The query's depth exceeds the realization length.
    DepthExceedsPoints { depth: usize, n_points: usize },
    Plpf(PlpfError),
}

impl fmt::Display for SimError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::InvalidQuery(what) => write!(f, "invalid query: {what}"),
            Self::MissingMarks => write!(f, "coverage query needs a sampler with mark_prob set"),
            Self::DepthExceedsPoints { depth, n_points } => {
                write!(f, "query depth {depth} exceeds n_points {n_points}")
            }
            Self::Plpf(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for SimError {}

impl From<PlpfError> for SimError {
    fn from(e: PlpfError) -> Self {
        Self::Plpf(e)
    }
}

/// SIR threshold, noise power and tracked decode depth.
#[derive(Clone, Copy, Debug)]
pub struct DecodeQuery {
    pub theta: f64,
    pub noise_w: f64,
    pub k_max: usize,
}

impl DecodeQuery {
    pub fn new(theta: f64, noise_w: f64, k_max: usize) -> Result<Self, SimError> {
        if !(theta > 0.0) || !theta.is_finite() {
            return Err(SimError::InvalidQuery("theta must be > 0"));
        }
        if !(noise_w >= 0.0) || !noise_w.is_finite() {
            return Err(SimError::InvalidQuery("noise power must be >= 0"));
        }
        if k_max == 0 {
            return Err(SimError::InvalidQuery("k_max must be >= 1"));
        }
        Ok(Self { theta, noise_w, k_max })
    }

    pub fn noiseless(theta: f64) -> Result<Self, SimError> {
        Self::new(theta, 0.0, DEFAULT_K_MAX)
    }
}

/// A Monte Carlo point estimate with its standard error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SicEstimate {
    pub value: f64,
    pub std_error: f64,
    pub replicates: u64,
}

impl SicEstimate {
    /// Estimate of a probability from a success count.
    fn binomial(successes: u64, replicates: u64) -> Self {
        let n = replicates as f64;
        let p = successes as f64 / n;
        Self {
            value: p,
            std_error: (p * (1.0 - p) / n).sqrt(),
            replicates,
        }
    }

    /// Estimate of a mean from Σx and Σx².
    fn from_moments(sum: f64, sum_sq: f64, replicates: u64) -> Self {
        let n = replicates as f64;
        let mean = sum / n;
        let var = ((sum_sq - n * mean * mean) / (n - 1.0)).max(0.0);
        Self {
            value: mean,
            std_error: (var / n).sqrt(),
            replicates,
        }
    }

    /// The estimate of c·X for deterministic c.
    pub fn scaled(&self, c: f64) -> Self {
        Self {
            value: self.value * c,
            std_error: self.std_error * c.abs(),
            replicates: self.replicates,
        }
    }
}

/// Coverage event parameters: SIR threshold, cancellation depth (`None`
/// means unbounded) and search cutoffs.
#[derive(Clone, Copy, Debug)]
pub struct CoverageQuery {
    pub theta: f64,
    /// A receiver with `n`-layer capability cancels at most `n − 1`
    /// interferers; `None` lifts the limit.
    pub sic_layers: Option<NonZeroUsize>,
    /// Accessible-point search cutoff; replicates whose strongest
    /// accessible point lies beyond it are counted inconclusive.
    pub k_max: usize,
    /// Cancellation-prefix scan cutoff for finite depths (the unbounded
    /// fast path stops at the strongest accessible point on its own).
    pub l_max: usize,
}

impl CoverageQuery {
    pub fn new(
        theta: f64,
        sic_layers: Option<NonZeroUsize>,
        k_max: usize,
        l_max: usize,
    ) -> Result<Self, SimError> {
        if !(theta > 0.0) || !theta.is_finite() {
            return Err(SimError::InvalidQuery("theta must be > 0"));
        }
        if k_max == 0 || l_max == 0 {
            return Err(SimError::InvalidQuery("search cutoffs must be >= 1"));
        }
        Ok(Self { theta, sic_layers, k_max, l_max })
    }

    pub fn infinite(theta: f64) -> Result<Self, SimError> {
        Self::new(theta, None, DEFAULT_K_MAX, DEFAULT_K_MAX)
    }

    pub fn layers(theta: f64, n: usize) -> Result<Self, SimError> {
        let n = NonZeroUsize::new(n).ok_or(SimError::InvalidQuery("layers must be >= 1"))?;
        Self::new(theta, Some(n), DEFAULT_K_MAX, DEFAULT_K_MAX)
    }
}

/// Outcome of the coverage event on one realization.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoverageOutcome {
    Covered,
    NotCovered,
    /// The strongest accessible point lies beyond the search cutoff, so
    /// the event cannot be decided on the truncated realization.
    Inconclusive,
}

/// Number of users decodable by successive cancellation: the largest N
/// with ξ_i⁻¹ > θ(I_i + W) for all i ≤ N. The condition set is a prefix
/// property, so the scan stops at the first failure.
pub fn decode_count(r: &PlpfRealization, q: &DecodeQuery) -> usize {
    let cap = q.k_max.min(r.len());
    let mut n = 0;
    while n < cap {
        let k = n + 1;
        let residual = r.suffix_unchecked(k) + q.noise_w;
        if 1.0 / r.xi(k) > q.theta * residual {
            n = k;
        } else {
            break;
        }
    }
    n
}

/// Decode depth that captures the tail of N up to a ~2% mass deficit.
///
/// p_k decays roughly like (1 + c(θ))^{−k}, so a depth of 4/c(θ) leaves
/// about e⁻⁴ of Σ_k p_k uncounted. For θ ≳ 1 this is far below the
/// default depth and the default wins.
pub fn depth_for_theta(beta: f64, theta: f64) -> usize {
    match bounds::c_of_s(theta, beta) {
        Ok(c) if c > 0.0 => (4.0 / c).ceil() as usize,
        _ => 0,
    }
}

fn effective_depth(q: &DecodeQuery, cfg: &SamplerConfig) -> usize {
    let auto = depth_for_theta(cfg.beta, q.theta).min(cfg.n_points / 2);
    q.k_max.max(auto).min(cfg.n_points)
}

fn check_replicates(replicates: u64) -> Result<(), SimError> {
    if replicates < 100 {
        return Err(SimError::InvalidQuery("need at least 100 replicates"));
    }
    Ok(())
}

/// Run `replicates` independent replicates, folding each chunk
/// sequentially and merging chunk accumulators in fixed pairwise order.
fn run_chunked<A, I, F, M>(replicates: u64, init: I, fold: F, merge: M) -> A
where
    A: Send,
    I: Fn() -> A + Sync,
    F: Fn(&mut A, u64) + Sync,
    M: Fn(A, A) -> A + Sync + Send,
{
    let n_chunks = replicates.div_ceil(CHUNK);
    let mut accs: Vec<A> = (0..n_chunks)
        .into_par_iter()
        .map(|chunk| {
            let lo = chunk * CHUNK;
            let hi = (lo + CHUNK).min(replicates);
            let mut acc = init();
            for rep in lo..hi {
                fold(&mut acc, rep);
            }
            acc
        })
        .collect();
    // Pairwise tree over chunk order; shape depends only on chunk count.
    while accs.len() > 1 {
        let mut next = Vec::with_capacity(accs.len().div_ceil(2));
        let mut it = accs.into_iter();
        while let Some(a) = it.next() {
            match it.next() {
                Some(b) => next.push(merge(a, b)),
                None => next.push(a),
            }
        }
        accs = next;
    }
    accs.into_iter().next().expect("at least one chunk")
}

fn merge_counts(mut a: Vec<u64>, b: Vec<u64>) -> Vec<u64> {
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
    a
}

/// Monte Carlo estimates of p_k = P(N ≥ k) for k = 1..=q.k_max, all from
/// the same replicate set, with binomial standard errors.
pub fn estimate_pk(
    cfg: &SamplerConfig,
    q: &DecodeQuery,
    replicates: u64,
) -> Result<Vec<SicEstimate>, SimError> {
    check_replicates(replicates)?;
    if q.k_max > cfg.n_points {
        return Err(SimError::DepthExceedsPoints {
            depth: q.k_max,
            n_points: cfg.n_points,
        });
    }
    let counts = run_chunked(
        replicates,
        || vec![0u64; q.k_max],
        |acc, rep| {
            let r = sample_splpf(cfg, rep);
            let n = decode_count(&r, q);
            for slot in acc.iter_mut().take(n) {
                *slot += 1;
            }
        },
        merge_counts,
    );
    Ok(counts
        .into_iter()
        .map(|c| SicEstimate::binomial(c, replicates))
        .collect())
}

/// Monte Carlo estimates of P(ξ_k⁻¹ > θ(I_k + W)) for k = 1..=k_upto.
pub fn estimate_joint_tail_upto(
    cfg: &SamplerConfig,
    theta: f64,
    k_upto: usize,
    noise_w: f64,
    replicates: u64,
) -> Result<Vec<SicEstimate>, SimError> {
    check_replicates(replicates)?;
    let q = DecodeQuery::new(theta, noise_w, k_upto)?;
    if k_upto > cfg.n_points {
        return Err(SimError::DepthExceedsPoints {
            depth: k_upto,
            n_points: cfg.n_points,
        });
    }
    let counts = run_chunked(
        replicates,
        || vec![0u64; k_upto],
        |acc, rep| {
            let r = sample_splpf(cfg, rep);
            for (i, slot) in acc.iter_mut().enumerate() {
                let k = i + 1;
                let residual = r.suffix_unchecked(k) + q.noise_w;
                if 1.0 / r.xi(k) > q.theta * residual {
                    *slot += 1;
                }
            }
        },
        merge_counts,
    );
    Ok(counts
        .into_iter()
        .map(|c| SicEstimate::binomial(c, replicates))
        .collect())
}

/// Monte Carlo estimate of the joint tail P(ξ_k⁻¹ > θ(I_k + W)).
pub fn estimate_joint_tail(
    cfg: &SamplerConfig,
    theta: f64,
    k: usize,
    noise_w: f64,
    replicates: u64,
) -> Result<SicEstimate, SimError> {
    if k == 0 {
        return Err(SimError::InvalidQuery("k must be >= 1"));
    }
    let mut all = estimate_joint_tail_upto(cfg, theta, k, noise_w, replicates)?;
    Ok(all.pop().expect("k >= 1"))
}

/// `E[N]` estimate plus the fraction of replicates whose decode scan hit the
/// tracked depth (a non-zero fraction biases the mean downward).
#[derive(Clone, Copy, Debug)]
pub struct EnEstimate {
    pub mean: SicEstimate,
    /// Decode depth actually tracked after auto-expansion.
    pub depth: usize,
    pub saturation_fraction: f64,
}

impl EnEstimate {
    /// Depth-truncation warning threshold: saturating more than 0.1% of
    /// replicates is reported by callers.
    pub fn saturation_warning(&self) -> bool {
        self.saturation_fraction > 1e-3
    }
}

/// Monte Carlo estimate of `E[N]`.
///
/// The tracked depth auto-expands beyond `q.k_max` when θ is small (see
/// [`depth_for_theta`]), capped at `n_points / 2` so that the suffix
/// interference at the deepest tracked index is still dominated by
/// simulated points rather than tail compensation.
pub fn estimate_en(
    cfg: &SamplerConfig,
    q: &DecodeQuery,
    replicates: u64,
) -> Result<EnEstimate, SimError> {
    check_replicates(replicates)?;
    let depth = effective_depth(q, cfg);
    let query = DecodeQuery { k_max: depth, ..*q };
    let (sum, sum_sq, saturated) = run_chunked(
        replicates,
        || (0u64, 0u64, 0u64),
        |acc, rep| {
            let r = sample_splpf(cfg, rep);
            let n = decode_count(&r, &query) as u64;
            acc.0 += n;
            acc.1 += n * n;
            acc.2 += u64::from(n == depth as u64);
        },
        |a, b| (a.0 + b.0, a.1 + b.1, a.2 + b.2),
    );
    Ok(EnEstimate {
        mean: SicEstimate::from_moments(sum as f64, sum_sq as f64, replicates),
        depth,
        saturation_fraction: saturated as f64 / replicates as f64,
    })
}

/// Monte Carlo estimate of the aggregate throughput `R = ln(1+θ)·E[N]` in
/// nats/s/Hz.
pub fn estimate_throughput(
    cfg: &SamplerConfig,
    q: &DecodeQuery,
    replicates: u64,
) -> Result<EnEstimate, SimError> {
    let en = estimate_en(cfg, q, replicates)?;
    Ok(EnEstimate {
        mean: en.mean.scaled(q.theta.ln_1p()),
        ..en
    })
}

/// Monte Carlo estimate of the Laplace functional E[e^{−s ξ_k I_k}].
pub fn estimate_laplace_xik_ik(
    cfg: &SamplerConfig,
    k: usize,
    s: f64,
    replicates: u64,
) -> Result<SicEstimate, SimError> {
    check_replicates(replicates)?;
    if !(s > 0.0) || !s.is_finite() {
        return Err(SimError::InvalidQuery("s must be > 0"));
    }
    if k == 0 || k > cfg.n_points {
        return Err(SimError::DepthExceedsPoints { depth: k, n_points: cfg.n_points });
    }
    let (sum, sum_sq) = run_chunked(
        replicates,
        || (0.0f64, 0.0f64),
        |acc, rep| {
            let r = sample_splpf(cfg, rep);
            let x = (-s * r.xi(k) * r.suffix_unchecked(k)).exp();
            acc.0 += x;
            acc.1 += x * x;
        },
        |a, b| (a.0 + b.0, a.1 + b.1),
    );
    Ok(SicEstimate::from_moments(sum, sum_sq, replicates))
}

/// Decide the coverage event on one marked realization.
///
/// Unified convention over both the unbounded and the n-layer event: with
/// m ranging over cancellation-prefix lengths 0..=(n−1), the receiver is
/// covered iff there are m and an accessible index k with ξ_i⁻¹ > θ I_i
/// for all i ≤ m and ξ_k⁻¹ > θ I_m^{!k}, where I_m^{!k} excludes point k.
/// n = 1 therefore reproduces plain (no-SIC) coverage.
///
/// For unbounded capability the event reduces to χ_M: the prefix
/// conditions up to M = min{i : t_i = 1} all hold.
pub fn hcn_covered(r: &PlpfRealization, q: &CoverageQuery) -> Result<CoverageOutcome, SimError> {
    let marks = r.marks().ok_or(SimError::MissingMarks)?;
    let k_cap = q.k_max.min(r.len());
    let first_accessible = match marks.iter().take(k_cap).position(|&t| t) {
        Some(i) => i + 1,
        None => return Ok(CoverageOutcome::Inconclusive),
    };
    let prefix_holds = |i: usize| 1.0 / r.xi(i) > q.theta * r.suffix_unchecked(i);
    match q.sic_layers {
        None => {
            // χ_M fast path.
            for i in 1..=first_accessible {
                if !prefix_holds(i) {
                    return Ok(CoverageOutcome::NotCovered);
                }
            }
            Ok(CoverageOutcome::Covered)
        }
        Some(n) => {
            // Longest decodable prefix usable for cancellation.
            let allow_cap = (n.get() - 1).min(q.l_max).min(r.len());
            let mut m_allow = 0;
            while m_allow < allow_cap && prefix_holds(m_allow + 1) {
                m_allow += 1;
            }
            if first_accessible <= m_allow {
                return Ok(CoverageOutcome::Covered);
            }
            // Best remaining candidate is the strongest accessible point:
            // ξ_k⁻¹ > θ(I_m − ξ_k⁻¹)  ⇔  (1+θ) ξ_k⁻¹ > θ I_m.
            let inv = 1.0 / r.xi(first_accessible);
            if (1.0 + q.theta) * inv > q.theta * r.suffix_unchecked(m_allow) {
                Ok(CoverageOutcome::Covered)
            } else {
                Ok(CoverageOutcome::NotCovered)
            }
        }
    }
}

/// Coverage probability estimate; inconclusive replicates count as not
/// covered and are reported separately.
#[derive(Clone, Copy, Debug)]
pub struct CoverageEstimate {
    pub probability: SicEstimate,
    pub inconclusive_fraction: f64,
}

impl CoverageEstimate {
    /// Inconclusive replicates above this fraction indicate the search
    /// cutoff is too small for the configured mark probability.
    pub fn inconclusive_warning(&self) -> bool {
        self.inconclusive_fraction > 1e-3
    }
}

/// Monte Carlo coverage probability for one query.
pub fn estimate_coverage(
    cfg: &SamplerConfig,
    q: &CoverageQuery,
    replicates: u64,
) -> Result<CoverageEstimate, SimError> {
    let mut all = estimate_coverage_multi(cfg, std::slice::from_ref(q), replicates)?;
    Ok(all.pop().expect("one query"))
}

/// Monte Carlo coverage probabilities for several queries evaluated on the
/// same realizations (common random numbers across e.g. SIC depths).
pub fn estimate_coverage_multi(
    cfg: &SamplerConfig,
    queries: &[CoverageQuery],
    replicates: u64,
) -> Result<Vec<CoverageEstimate>, SimError> {
    check_replicates(replicates)?;
    if cfg.mark_prob.is_none() {
        return Err(SimError::MissingMarks);
    }
    if queries.is_empty() {
        return Err(SimError::InvalidQuery("no coverage queries"));
    }
    for q in queries {
        if q.k_max > cfg.n_points || q.l_max > cfg.n_points {
            return Err(SimError::DepthExceedsPoints {
                depth: q.k_max.max(q.l_max),
                n_points: cfg.n_points,
            });
        }
    }
    let tallies = run_chunked(
        replicates,
        || vec![(0u64, 0u64); queries.len()],
        |acc, rep| {
            let r = sample_splpf(cfg, rep);
            for (slot, q) in acc.iter_mut().zip(queries) {
                match hcn_covered(&r, q).expect("marks checked above") {
                    CoverageOutcome::Covered => slot.0 += 1,
                    CoverageOutcome::NotCovered => {}
                    CoverageOutcome::Inconclusive => slot.1 += 1,
                }
            }
        },
        |mut a, b| {
            for (x, y) in a.iter_mut().zip(b) {
                x.0 += y.0;
                x.1 += y.1;
            }
            a
        },
    );
    Ok(tallies
        .into_iter()
        .map(|(covered, inconclusive)| CoverageEstimate {
            probability: SicEstimate::binomial(covered, replicates),
            inconclusive_fraction: inconclusive as f64 / replicates as f64,
        })
        .collect())
}
