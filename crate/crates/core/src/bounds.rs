//! Closed-form bounds, exact expressions and approximations for the
//! decoding statistics, evaluated from (β, θ, k, K, W, ā, η, n). Each name
//! mirrors one Monte Carlo quantity in [`crate::sim`], which is what the
//! cross-validation suites compare against.
//!
//! Conventions used throughout:
//!
//! * `Δ1(k)` lower-bounds and `Δ2(k)` upper-bounds the joint tail
//!   P(ξ_k⁻¹ > θ I_k); the ordering prefactors `(1+θ)^{−βk(k−1)/2}` and
//!   `θ̄^{−βk(k−1)/2}` (θ̄ = max{θ, 1}) turn them into bounds on p_k.
//! * For θ ≥ 1 the joint tail is exact:
//!   P(ξ_k⁻¹ > θ I_k) = 1/(θ^{kβ} Γ(1+kβ) Γ(1−β)^k), and the same
//!   expression is an upper bound for θ < 1.
//! * `c(s) = s^β γ(1−β, s) − 1 + e^{−s}` appears in the Laplace transform
//!   E[e^{−s ξ_k I_k}] = (1 + c(s))^{−k}.
//!
//! Regime guards do not panic: [`evaluate_bound`] reports out-of-regime
//! points as flagged NaN so that sweeps can cross validity edges.

use std::fmt;

use crate::specfun::{self, SpecFunError};

/// Residual target used when a summation depth K is chosen automatically.
const SERIES_TARGET: f64 = 1e-9;

/// Cap on automatically chosen summation depths.
const MAX_AUTO_K: usize = 400;

#[derive(Debug, Clone, PartialEq)]
pub enum BoundsError {
    Domain(&'static str),
    /// A formula's side constraint does not hold for the requested
    /// parameters; the message names the offending constraint.
    Constraint(String),
    SpecFun(SpecFunError),
}

impl fmt::Display for BoundsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Domain(what) => write!(f, "domain error: {what}"),
            Self::Constraint(what) => write!(f, "constraint violated: {what}"),
            Self::SpecFun(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for BoundsError {}

impl From<SpecFunError> for BoundsError {
    fn from(e: SpecFunError) -> Self {
        Self::SpecFun(e)
    }
}

/// A bound value together with its reporting flags.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Flagged {
    pub value: f64,
    /// The raw formula value fell outside [0, 1] and was clamped.
    pub clamped: bool,
    /// The parameter point satisfies the formula's validity regime (e.g.
    /// θ ≥ 1 for expressions that are exact only there).
    pub in_regime: bool,
}

impl Flagged {
    fn ok(value: f64) -> Self {
        Self { value, clamped: false, in_regime: true }
    }

    fn clamp01(value: f64) -> Self {
        let clamped = value.clamp(0.0, 1.0);
        Self {
            value: clamped,
            clamped: clamped != value,
            in_regime: true,
        }
    }

    fn with_regime(mut self, in_regime: bool) -> Self {
        self.in_regime = in_regime;
        self
    }
}

fn check_beta(beta: f64) -> Result<(), BoundsError> {
    if !(beta > 0.0 && beta < 1.0) {
        return Err(BoundsError::Domain("beta must be in (0, 1)"));
    }
    Ok(())
}

fn check_theta(theta: f64) -> Result<(), BoundsError> {
    if !(theta > 0.0) || !theta.is_finite() {
        return Err(BoundsError::Domain("theta must be > 0 and finite"));
    }
    Ok(())
}

fn check_k(k: usize) -> Result<(), BoundsError> {
    if k == 0 {
        return Err(BoundsError::Domain("k must be >= 1"));
    }
    Ok(())
}

fn check_eta(eta: f64) -> Result<(), BoundsError> {
    if !(eta > 0.0 && eta <= 1.0) {
        return Err(BoundsError::Domain("eta must be in (0, 1]"));
    }
    Ok(())
}

/// ln of the ordering prefactor base^{−βk(k−1)/2}.
fn log_ordering_factor(base: f64, beta: f64, k: usize) -> f64 {
    let k = k as f64;
    -(beta * k * (k - 1.0) / 2.0) * base.ln()
}

/// Δ1(k): lower bound on P(ξ_k⁻¹ > θ I_k) from the conditional mean
/// interference and the Markov inequality,
/// Δ1(k) = γ̄(k, u) − (θβ/(1−β)) k γ̄(k+1, u) with u = (1−β)/(θβ).
pub fn delta1(k: usize, beta: f64, theta: f64) -> Result<f64, BoundsError> {
    check_k(k)?;
    check_beta(beta)?;
    check_theta(theta)?;
    let u = (1.0 - beta) / (theta * beta);
    let kf = k as f64;
    let head = specfun::reg_lower_gamma(kf, u)?;
    let correction = theta * beta / (1.0 - beta) * kf * specfun::reg_lower_gamma(kf + 1.0, u)?;
    Ok((head - correction).clamp(0.0, 1.0))
}

/// c(s) = s^β γ(1−β, s) − 1 + e^{−s}, the exponent scale of the
/// conditional interference Laplace transform.
pub fn c_of_s(s: f64, beta: f64) -> Result<f64, BoundsError> {
    check_beta(beta)?;
    if !(s > 0.0) || !s.is_finite() {
        return Err(BoundsError::Domain("s must be > 0 and finite"));
    }
    Ok(s.powf(beta) * specfun::lower_inc_gamma(1.0 - beta, s)? + (-s).exp_m1())
}

/// Δ2(k): upper bound on P(ξ_k⁻¹ > θ I_k) via induced exponential fading,
/// Δ2(k) = γ̄(k, 1/c) + e (1+c)^{−k} Γ̄(k, 1 + 1/c) with c = c(θ).
pub fn delta2(k: usize, beta: f64, theta: f64) -> Result<f64, BoundsError> {
    check_k(k)?;
    let c = c_of_s(theta, beta)?;
    let kf = k as f64;
    let head = specfun::reg_lower_gamma(kf, 1.0 / c)?;
    let tail = std::f64::consts::E
        * (-kf * c.ln_1p()).exp()
        * specfun::reg_upper_gamma(kf, 1.0 + 1.0 / c)?;
    Ok((head + tail).clamp(0.0, 1.0))
}

/// The exact joint tail for θ ≥ 1 (`exact` set), an upper bound below.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Thm1Value {
    pub value: f64,
    pub exact: bool,
}

/// P(ξ_k⁻¹ > θ I_k) = 1/(θ^{kβ} Γ(1+kβ) Γ(1−β)^k) for θ ≥ 1; an upper
/// bound on the same probability for θ < 1.
pub fn thm1_exact(k: usize, beta: f64, theta: f64) -> Result<Thm1Value, BoundsError> {
    check_k(k)?;
    check_beta(beta)?;
    check_theta(theta)?;
    let kf = k as f64;
    let log_value = -kf * beta * theta.ln()
        - specfun::log_gamma(1.0 + kf * beta)?
        - kf * specfun::log_gamma(1.0 - beta)?;
    Ok(Thm1Value {
        value: log_value.exp(),
        exact: theta >= 1.0,
    })
}

/// High-rate lower bound: p_k ≥ (1+θ)^{−βk(k−1)/2} Δ1(k).
pub fn pk_hr_lb(k: usize, beta: f64, theta: f64) -> Result<f64, BoundsError> {
    let d1 = delta1(k, beta, theta)?;
    Ok(log_ordering_factor(1.0 + theta, beta, k).exp() * d1)
}

/// Low-rate lower bound, defined for k < 1/θ + 1: the Δ1 form evaluated
/// at θ̃ = θ/(1 − (k−1)θ).
pub fn pk_lr_lb(k: usize, beta: f64, theta: f64) -> Result<f64, BoundsError> {
    check_k(k)?;
    check_theta(theta)?;
    if k as f64 >= 1.0 / theta + 1.0 {
        return Err(BoundsError::Constraint(format!(
            "low-rate bound needs k < 1/theta + 1 = {}, got k = {k}",
            1.0 / theta + 1.0
        )));
    }
    let theta_tilde = theta / (1.0 - (k as f64 - 1.0) * theta);
    delta1(k, beta, theta_tilde)
}

/// Combined upper bound: p_k ≤ θ̄^{−βk(k−1)/2} Δ2(k), θ̄ = max{θ, 1}.
pub fn pk_combined_ub(k: usize, beta: f64, theta: f64) -> Result<f64, BoundsError> {
    let d2 = delta2(k, beta, theta)?;
    Ok(log_ordering_factor(theta.max(1.0), beta, k).exp() * d2)
}

/// SMUD lower bound (θ ≥ 1): (1+θ)^{−βk(k−1)/2} times the exact joint
/// tail.
pub fn pk_smud_lb(k: usize, beta: f64, theta: f64) -> Result<f64, BoundsError> {
    check_theta(theta)?;
    if theta < 1.0 {
        return Err(BoundsError::Constraint(format!(
            "SMUD lower bound needs theta >= 1, got {theta}"
        )));
    }
    let t = thm1_exact(k, beta, theta)?;
    Ok(log_ordering_factor(1.0 + theta, beta, k).exp() * t.value)
}

/// SMUD upper bound, valid for all θ > 0:
/// p_k ≤ θ̄^{−βk(k−1)/2}/(θ^{kβ} Γ(1+kβ) Γ(1−β)^k), clamped to 1 with a
/// flag (the raw value exceeds one for small θ).
pub fn pk_smud_ub(k: usize, beta: f64, theta: f64) -> Result<Flagged, BoundsError> {
    let t = thm1_exact(k, beta, theta)?;
    let raw = log_ordering_factor(theta.max(1.0), beta, k).exp() * t.value;
    Ok(Flagged::clamp01(raw))
}

/// ``E[N]`` lower bound with its truncation error bound.
#[derive(Clone, Copy, Debug)]
pub struct EnLowerBound {
    pub value: f64,
    /// Upper bound on the mass dropped by stopping the sum at K
    /// (complementary-error-function tail estimate).
    pub truncation_error_bound: f64,
    pub terms: usize,
}

/// The erfc bound on Σ_{k>K} (1+θ)^{−βk(k−1)/2} Δ1(k).
pub fn en_lb_error_bound(beta: f64, theta: f64, k_terms: usize) -> Result<f64, BoundsError> {
    check_k(k_terms)?;
    let d1 = delta1(k_terms, beta, theta)?;
    let log1p_theta = theta.ln_1p();
    let kf = k_terms as f64;
    Ok((1.0 + theta).powf(beta / 8.0) * d1 * std::f64::consts::PI.sqrt()
        / (2.0 * beta * log1p_theta).sqrt()
        * specfun::erfc((kf - 0.5) * (beta * log1p_theta / 2.0).sqrt()))
}

/// `E[N]` ≥ Σ_{k=1}^{K} (1+θ)^{−βk(k−1)/2} Δ1(k), valid for every K.
///
/// With `k_terms = None` the depth is chosen by inverting the truncation
/// error bound to a 1e-6 target, capped at 200 terms.
pub fn en_lb(beta: f64, theta: f64, k_terms: Option<usize>) -> Result<EnLowerBound, BoundsError> {
    check_beta(beta)?;
    check_theta(theta)?;
    let cap = match k_terms {
        Some(k) => {
            check_k(k)?;
            k
        }
        None => {
            let mut k = 1;
            while k < 200 && en_lb_error_bound(beta, theta, k)? > 1e-6 {
                k += 1;
            }
            k
        }
    };
    let mut sum = 0.0;
    for k in 1..=cap {
        sum += pk_hr_lb(k, beta, theta)?;
    }
    Ok(EnLowerBound {
        value: sum,
        truncation_error_bound: en_lb_error_bound(beta, theta, cap)?,
        terms: cap,
    })
}

/// Low-rate `E[N]` lower bound: Σ_{k=1}^{⌊1/θ⌋} p_k^LR. Defined for θ ≤ 1.
pub fn en_lr_lb(beta: f64, theta: f64) -> Result<f64, BoundsError> {
    check_beta(beta)?;
    check_theta(theta)?;
    let terms = (1.0 / theta).floor() as usize;
    if terms == 0 {
        return Err(BoundsError::Constraint(format!(
            "low-rate E[N] bound needs floor(1/theta) >= 1, got theta = {theta}"
        )));
    }
    let mut sum = 0.0;
    for k in 1..=terms {
        sum += pk_lr_lb(k, beta, theta)?;
    }
    Ok(sum)
}

/// `E[N]` upper bound from the combined bound plus explicit tail estimates,
/// valid for any K ≥ e/c(θ):
/// e^{1+K}/√(2π) (cK)^{1−K}/(cK−1) + (e/c)(1+c)^{1−K}
/// + Σ_{k=1}^{K−1} θ̄^{−βk(k−1)/2} Δ2(k).
///
/// With `k_terms = None` the admissible K minimizing the bound is used.
pub fn en_ub(beta: f64, theta: f64, k_terms: Option<usize>) -> Result<f64, BoundsError> {
    check_beta(beta)?;
    check_theta(theta)?;
    let c = c_of_s(theta, beta)?;
    let k_min = (std::f64::consts::E / c).ceil() as usize;
    let eval = |k_total: usize| -> Result<f64, BoundsError> {
        let kf = k_total as f64;
        let stirling_tail = ((1.0 + kf) + (1.0 - kf) * (c * kf).ln()).exp()
            / (2.0 * std::f64::consts::PI).sqrt()
            / (c * kf - 1.0);
        let geometric_tail = std::f64::consts::E / c * ((1.0 - kf) * c.ln_1p()).exp();
        let mut sum = stirling_tail + geometric_tail;
        for k in 1..k_total {
            sum += pk_combined_ub(k, beta, theta)?;
        }
        Ok(sum)
    };
    match k_terms {
        Some(k) => {
            if k < k_min {
                return Err(BoundsError::Constraint(format!(
                    "E[N] upper bound needs K >= e/c = {k_min}, got K = {k}"
                )));
            }
            eval(k)
        }
        None => {
            let mut best = f64::INFINITY;
            let mut k = k_min.max(2);
            let cap = (k_min + MAX_AUTO_K).min(1000);
            while k <= cap {
                best = best.min(eval(k)?);
                k += (k / 8).max(1);
            }
            Ok(best)
        }
    }
}

/// SMUD `E[N]` upper bound with C(k) = θ^{−β} θ̄^{−β(k−1)/2}:
/// Σ_{k=1}^{K−1} (C(k)/Γ(1−β))^k/Γ(1+kβ) plus the closed-form tail
/// (C(K)/Γ(1−β))^K Γ(1−β)/(Γ(1+Kβ)(Γ(1−β) − C(K))),
/// valid whenever C(K) < Γ(1−β).
pub fn en_smud_ub(beta: f64, theta: f64, k_terms: Option<usize>) -> Result<f64, BoundsError> {
    check_beta(beta)?;
    check_theta(theta)?;
    let log_gamma_1mb = specfun::log_gamma(1.0 - beta)?;
    // log C(k) = −β ln θ − (β(k−1)/2) ln θ̄.
    let log_ck = |k: usize| -beta * theta.ln() - beta * (k as f64 - 1.0) / 2.0 * theta.max(1.0).ln();
    let eval = |k_total: usize| -> Result<f64, BoundsError> {
        let log_ratio_k = log_ck(k_total) - log_gamma_1mb;
        if log_ratio_k >= 0.0 {
            return Err(BoundsError::Constraint(format!(
                "SMUD E[N] bound needs C(K) < Gamma(1-beta) at K = {k_total}"
            )));
        }
        let mut sum = 0.0;
        for k in 1..k_total {
            let kf = k as f64;
            sum += (kf * (log_ck(k) - log_gamma_1mb) - specfun::log_gamma(1.0 + kf * beta)?).exp();
        }
        let kf = k_total as f64;
        let tail = (kf * log_ratio_k - specfun::log_gamma(1.0 + kf * beta)?).exp()
            / (-log_ratio_k.exp_m1());
        Ok(sum + tail)
    };
    match k_terms {
        Some(k) => {
            check_k(k)?;
            eval(k)
        }
        None => {
            let mut best: Option<f64> = None;
            for k in 1..=200 {
                if let Ok(v) = eval(k) {
                    best = Some(best.map_or(v, |b: f64| b.min(v)));
                }
            }
            best.ok_or_else(|| {
                BoundsError::Constraint(format!(
                    "SMUD E[N] bound has no admissible K: theta^(-beta) = {} >= Gamma(1-beta) = {}",
                    theta.powf(-beta),
                    log_gamma_1mb.exp()
                ))
            })
        }
    }
}

/// Asymptotic aggregate-throughput bound: lim_{θ→0} R ≤ 1/β − 1.
pub fn r_asymptotic(beta: f64) -> Result<f64, BoundsError> {
    check_beta(beta)?;
    Ok(1.0 / beta - 1.0)
}

/// Laplace-transform throughput approximation R ≈ ln(1+θ)/c(θ).
pub fn r_lt_approx(theta: f64, beta: f64) -> Result<f64, BoundsError> {
    check_theta(theta)?;
    Ok(theta.ln_1p() / c_of_s(theta, beta)?)
}

/// The Laplace transform of ξ_k I_k: (1 + c(s))^{−k}.
pub fn laplace_xik_ik(k: usize, beta: f64, s: f64) -> Result<f64, BoundsError> {
    check_k(k)?;
    let c = c_of_s(s, beta)?;
    Ok((-(k as f64) * c.ln_1p()).exp())
}

/// Noisy joint-tail upper bound γ̄(k, ā/(θW)^β): the probability that at
/// least k process points fall below 1/(θW).
pub fn noisy_tail_ub(
    k: usize,
    theta: f64,
    noise_w: f64,
    a_bar: f64,
    beta: f64,
) -> Result<f64, BoundsError> {
    check_k(k)?;
    check_beta(beta)?;
    check_theta(theta)?;
    if !(noise_w > 0.0) {
        return Err(BoundsError::Domain("noise power must be > 0"));
    }
    if !(a_bar > 0.0) {
        return Err(BoundsError::Domain("intensity scale must be > 0"));
    }
    Ok(specfun::reg_lower_gamma(k as f64, a_bar / (theta * noise_w).powf(beta))?)
}

/// Noisy `E[N]` upper bound ā/(θW)^β.
pub fn noisy_en_ub(theta: f64, noise_w: f64, a_bar: f64, beta: f64) -> Result<f64, BoundsError> {
    check_beta(beta)?;
    check_theta(theta)?;
    if !(noise_w > 0.0) {
        return Err(BoundsError::Domain("noise power must be > 0"));
    }
    if !(a_bar > 0.0) {
        return Err(BoundsError::Domain("intensity scale must be > 0"));
    }
    Ok(a_bar / (theta * noise_w).powf(beta))
}

/// Noisy throughput upper bound: ln(1+θ) times the smaller of the noisy
/// and the interference-limited `E[N]` bounds.
pub fn noisy_r_ub(theta: f64, noise_w: f64, a_bar: f64, beta: f64) -> Result<f64, BoundsError> {
    let noisy = noisy_en_ub(theta, noise_w, a_bar, beta)?;
    let interference = en_smud_ub(beta, theta, None).unwrap_or(f64::INFINITY);
    Ok(theta.ln_1p() * noisy.min(interference))
}

/// Number of series terms after which the geometric residual
/// (1−η)^{K+1} drops below the summation target.
fn hcn_auto_k(eta: f64) -> usize {
    if eta >= 1.0 {
        return 1;
    }
    let k = (SERIES_TARGET.ln() / (1.0 - eta).ln()).ceil() as usize;
    k.clamp(1, MAX_AUTO_K)
}

/// Coverage probability without cancellation: P_c = η sinc β / θ^β,
/// exact for θ ≥ 1 (flagged approximate below).
pub fn hcn_pc_no_sic(theta: f64, beta: f64, eta: f64) -> Result<Flagged, BoundsError> {
    check_theta(theta)?;
    check_eta(eta)?;
    let p1 = eta * specfun::sinc(beta)? / theta.powf(beta);
    Ok(Flagged::clamp01(p1).with_regime(theta >= 1.0))
}

/// Coverage series lower bound Σ_{k≤K} (1−η)^{k−1} η (HR lower bound on
/// p_k); valid for all θ and every K.
pub fn hcn_pc_sic_lb(
    theta: f64,
    beta: f64,
    eta: f64,
    k_terms: Option<usize>,
) -> Result<Flagged, BoundsError> {
    check_eta(eta)?;
    let cap = k_terms.unwrap_or_else(|| hcn_auto_k(eta));
    check_k(cap)?;
    let mut sum = 0.0;
    for k in 1..=cap {
        sum += (1.0 - eta).powi(k as i32 - 1) * eta * pk_hr_lb(k, beta, theta)?;
    }
    Ok(Flagged::clamp01(sum))
}

/// Coverage series upper bound Σ_{k≤K} (1−η)^{k−1} η (combined upper
/// bound on p_k) + (1−η)^{K+1} for the residual.
pub fn hcn_pc_sic_ub(
    theta: f64,
    beta: f64,
    eta: f64,
    k_terms: Option<usize>,
) -> Result<Flagged, BoundsError> {
    check_eta(eta)?;
    let cap = k_terms.unwrap_or_else(|| hcn_auto_k(eta));
    check_k(cap)?;
    let mut sum = (1.0 - eta).powi(cap as i32 + 1);
    for k in 1..=cap {
        sum += (1.0 - eta).powi(k as i32 - 1) * eta * pk_combined_ub(k, beta, theta)?;
    }
    Ok(Flagged::clamp01(sum))
}

/// Coverage upper bound from the SMUD upper bound on p_k, with the
/// geometric tail summed in closed form. Requires
/// (1−η) C(K) < Γ(1−β) for the chosen K; valid for all θ > 0 otherwise.
pub fn hcn_pc_sic_smud_ub(
    theta: f64,
    beta: f64,
    eta: f64,
    k_terms: Option<usize>,
) -> Result<Flagged, BoundsError> {
    check_beta(beta)?;
    check_theta(theta)?;
    check_eta(eta)?;
    let log_gamma_1mb = specfun::log_gamma(1.0 - beta)?;
    let log_ck = |k: usize| -beta * theta.ln() - beta * (k as f64 - 1.0) / 2.0 * theta.max(1.0).ln();
    let eval = |k_total: usize| -> Result<f64, BoundsError> {
        // Terms η (1−η)^{k−1} (C(k)/Γ(1−β))^k / Γ(1+kβ); the K-th term
        // carries the geometric-tail factor 1/(1 − (1−η)C(K)/Γ(1−β)).
        let ratio_k = (1.0 - eta) * (log_ck(k_total) - log_gamma_1mb).exp();
        if ratio_k >= 1.0 {
            return Err(BoundsError::Constraint(format!(
                "SMUD coverage bound needs (1-eta) C(K) < Gamma(1-beta) at K = {k_total}"
            )));
        }
        let mut sum = 0.0;
        for k in 1..=k_total {
            let kf = k as f64;
            let log_term = kf * (log_ck(k) - log_gamma_1mb) - specfun::log_gamma(1.0 + kf * beta)?;
            let mut term = eta * (1.0 - eta).powi(k as i32 - 1) * log_term.exp();
            if k == k_total {
                term /= 1.0 - ratio_k;
            }
            sum += term;
        }
        Ok(sum)
    };
    match k_terms {
        Some(k) => {
            check_k(k)?;
            Ok(Flagged::clamp01(eval(k)?))
        }
        None => {
            let mut best: Option<f64> = None;
            for k in 1..=hcn_auto_k(eta).max(40) {
                if let Ok(v) = eval(k) {
                    best = Some(best.map_or(v, |b: f64| b.min(v)));
                }
            }
            let v = best.ok_or_else(|| {
                BoundsError::Constraint(
                    "SMUD coverage bound has no admissible K at this theta".to_string(),
                )
            })?;
            Ok(Flagged::clamp01(v))
        }
    }
}

/// Coverage lower bound from the SMUD lower bound on p_k (θ ≥ 1):
/// Σ_{k≤K} η (1−η)^{k−1} (1+θ)^{−βk(k−1)/2} (θ^β Γ(1−β))^{−k}/Γ(1+kβ).
pub fn hcn_pc_sic_smud_lb(
    theta: f64,
    beta: f64,
    eta: f64,
    k_terms: Option<usize>,
) -> Result<Flagged, BoundsError> {
    check_eta(eta)?;
    check_theta(theta)?;
    if theta < 1.0 {
        return Err(BoundsError::Constraint(format!(
            "SMUD coverage lower bound needs theta >= 1, got {theta}"
        )));
    }
    let cap = k_terms.unwrap_or_else(|| hcn_auto_k(eta));
    check_k(cap)?;
    let mut sum = 0.0;
    for k in 1..=cap {
        sum += (1.0 - eta).powi(k as i32 - 1) * eta * pk_smud_lb(k, beta, theta)?;
    }
    Ok(Flagged::clamp01(sum))
}

/// Truncation error bound for [`hcn_pc_sic_smud_lb`] stopped at K
/// (before the η/(1−η) regularization): C₂^{K+1}/(Γ(1+(K+1)β)(1−C₂))
/// with C₂ = (1−η)/((1+θ)^{βK/2} θ^β Γ(1−β)).
pub fn hcn_pc_sic_smud_lb_error(
    theta: f64,
    beta: f64,
    eta: f64,
    k_terms: usize,
) -> Result<f64, BoundsError> {
    check_beta(beta)?;
    check_theta(theta)?;
    check_eta(eta)?;
    check_k(k_terms)?;
    let kf = k_terms as f64;
    let c2 = (1.0 - eta)
        / ((1.0 + theta).powf(beta * kf / 2.0)
            * theta.powf(beta)
            * specfun::gamma(1.0 - beta)?);
    if c2 >= 1.0 {
        return Err(BoundsError::Constraint(
            "error bound needs C2 < 1; increase K".to_string(),
        ));
    }
    Ok(c2.powf(kf + 1.0) / specfun::gamma(1.0 + (kf + 1.0) * beta)? / (1.0 - c2))
}

/// Laplace-transform coverage approximation P_c^SIC ≈ η/(η + c(θ)).
pub fn hcn_pc_sic_lta(theta: f64, beta: f64, eta: f64) -> Result<Flagged, BoundsError> {
    check_eta(eta)?;
    let c = c_of_s(theta, beta)?;
    Ok(Flagged::clamp01(eta / (eta + c)))
}

/// n-layer coverage bound
/// Σ_{k=1}^n η (1−η)^{k−1} θ^{−βk(k+1)/2} (Γ(1−β))^{−k}/Γ(1+kβ);
/// an upper bound on P_{c,n} for θ ≥ 1 (tight at n = 1), an
/// approximation below.
pub fn hcn_pcn_ub(theta: f64, beta: f64, eta: f64, n: usize) -> Result<Flagged, BoundsError> {
    check_beta(beta)?;
    check_theta(theta)?;
    check_eta(eta)?;
    check_k(n)?;
    let log_gamma_1mb = specfun::log_gamma(1.0 - beta)?;
    let mut sum = 0.0;
    for k in 1..=n {
        let kf = k as f64;
        let log_term = -beta * kf * (kf + 1.0) / 2.0 * theta.ln()
            - kf * log_gamma_1mb
            - specfun::log_gamma(1.0 + kf * beta)?;
        sum += (1.0 - eta).powi(k as i32 - 1) * eta * log_term.exp();
    }
    Ok(Flagged::clamp01(sum).with_regime(theta >= 1.0))
}

/// Closed-form unbounded-depth coverage bound for β = 1/2:
/// η/(1−η) (e^{z²}(1 + erf z) − 1) with z = (1−η)/√(πθ).
pub fn hcn_pc_sic_erf_closed(theta: f64, eta: f64) -> Result<Flagged, BoundsError> {
    check_theta(theta)?;
    check_eta(eta)?;
    let z = (1.0 - eta) / (std::f64::consts::PI * theta).sqrt();
    let value = if eta == 1.0 {
        // limit η → 1: 2/(π√θ), which is p₁ at β = 1/2.
        2.0 / (std::f64::consts::PI * theta.sqrt())
    } else {
        eta / (1.0 - eta) * ((z * z).exp() * (1.0 + specfun::erf(z)) - 1.0)
    };
    Ok(Flagged::clamp01(value).with_regime(theta >= 1.0))
}

/// n-layer coverage bound at θ = 1:
/// Σ_{k=1}^n η (1−η)^{k−1} (Γ(1−β))^{−k}/Γ(1+kβ).
pub fn hcn_pcn_theta1(beta: f64, eta: f64, n: usize) -> Result<Flagged, BoundsError> {
    check_beta(beta)?;
    check_eta(eta)?;
    check_k(n)?;
    let log_gamma_1mb = specfun::log_gamma(1.0 - beta)?;
    let mut sum = 0.0;
    for k in 1..=n {
        let kf = k as f64;
        let log_term = -kf * log_gamma_1mb - specfun::log_gamma(1.0 + kf * beta)?;
        sum += (1.0 - eta).powi(k as i32 - 1) * eta * log_term.exp();
    }
    Ok(Flagged::clamp01(sum))
}

/// Mittag-Leffler closed form of the unbounded-depth coverage bound at
/// θ = 1: η/(1−η) (E_{β,1}((1−η)/Γ(1−β)) − 1).
pub fn hcn_pc_ml_closed(beta: f64, eta: f64) -> Result<Flagged, BoundsError> {
    check_beta(beta)?;
    check_eta(eta)?;
    let gamma_1mb = specfun::gamma(1.0 - beta)?;
    let value = if eta == 1.0 {
        // limit η → 1: sinc β, i.e. p₁ at θ = 1.
        specfun::sinc(beta)?
    } else {
        let z = (1.0 - eta) / gamma_1mb;
        eta / (1.0 - eta) * (specfun::mittag_leffler(beta, 1.0, z)? - 1.0)
    };
    Ok(Flagged::clamp01(value))
}

/// Average (single-reception) throughput T = ln(1+θ) P_c.
pub fn hcn_avg_throughput(pc: f64, theta: f64) -> Result<f64, BoundsError> {
    check_theta(theta)?;
    if !(0.0..=1.0).contains(&pc) {
        return Err(BoundsError::Domain("coverage probability must be in [0, 1]"));
    }
    Ok(theta.ln_1p() * pc)
}

/// Parameter point handed to [`evaluate_bound`].
#[derive(Clone, Copy, Debug, Default)]
pub struct BoundContext {
    pub beta: f64,
    pub theta: f64,
    pub k: Option<usize>,
    pub n: Option<usize>,
    pub eta: Option<f64>,
    pub noise_w: Option<f64>,
    pub a_bar: Option<f64>,
}

impl BoundContext {
    fn k(&self) -> Result<usize, BoundsError> {
        self.k.ok_or(BoundsError::Domain("bound needs k"))
    }

    fn n(&self) -> Result<usize, BoundsError> {
        self.n.ok_or(BoundsError::Domain("bound needs n"))
    }

    fn eta(&self) -> Result<f64, BoundsError> {
        self.eta.ok_or(BoundsError::Domain("bound needs eta"))
    }

    fn noise(&self) -> Result<f64, BoundsError> {
        match self.noise_w {
            Some(w) if w > 0.0 => Ok(w),
            _ => Err(BoundsError::Domain("bound needs noise_w > 0")),
        }
    }

    fn a_bar(&self) -> Result<f64, BoundsError> {
        self.a_bar.ok_or(BoundsError::Domain("bound needs a_bar"))
    }
}

/// Stable names of every bound this module can evaluate by name.
pub const BOUND_NAMES: &[&str] = &[
    "delta1",
    "delta2",
    "thm1_exact",
    "hr_lb",
    "lr_lb",
    "combined_ub",
    "smud_lb",
    "smud_ub",
    "en_lb",
    "en_lb_err",
    "en_lr_lb",
    "en_ub",
    "en_smud_ub",
    "laplace_xik_ik",
    "r_asymptotic",
    "r_lt_approx",
    "r_en_lb",
    "r_en_lr_lb",
    "r_en_ub",
    "r_en_smud_ub",
    "noisy_tail_ub",
    "noisy_en_ub",
    "noisy_r_ub",
    "hcn_pc_no_sic",
    "hcn_pc_sic_lb",
    "hcn_pc_sic_ub",
    "hcn_pc_sic_smud_ub",
    "hcn_pc_sic_smud_lb",
    "hcn_pc_sic_lta",
    "hcn_pcn_ub",
    "hcn_pc_sic_erf_closed",
    "hcn_pcn_theta1",
    "hcn_pc_ml_closed",
    "hcn_t_no_sic",
    "hcn_t_sic_lb",
    "hcn_t_sic_ub",
    "hcn_t_sic_smud_ub",
    "hcn_t_sic_lta",
];

/// Evaluate a bound by its stable name at a parameter point.
///
/// Whole-sweep input errors (unknown name, β outside (0,1), missing
/// context fields) surface as `Err`. Per-point regime misses (e.g. the
/// SMUD lower bound below θ = 1, or a constraint on K that fails at this
/// θ) return a flagged NaN so sweeps can cross validity edges.
pub fn evaluate_bound(name: &str, ctx: &BoundContext) -> Result<Flagged, BoundsError> {
    let beta = ctx.beta;
    let theta = ctx.theta;
    let out_of_regime = Flagged {
        value: f64::NAN,
        clamped: false,
        in_regime: false,
    };
    let regime = |r: Result<f64, BoundsError>| -> Result<Flagged, BoundsError> {
        match r {
            Ok(v) => Ok(Flagged::ok(v)),
            Err(BoundsError::Constraint(_)) => Ok(out_of_regime),
            Err(e) => Err(e),
        }
    };
    let regime_flagged = |r: Result<Flagged, BoundsError>| -> Result<Flagged, BoundsError> {
        match r {
            Ok(v) => Ok(v),
            Err(BoundsError::Constraint(_)) => Ok(out_of_regime),
            Err(e) => Err(e),
        }
    };
    match name {
        "delta1" => Ok(Flagged::ok(delta1(ctx.k()?, beta, theta)?)),
        "delta2" => Ok(Flagged::ok(delta2(ctx.k()?, beta, theta)?)),
        "thm1_exact" => {
            let t = thm1_exact(ctx.k()?, beta, theta)?;
            Ok(Flagged::clamp01(t.value).with_regime(t.exact))
        }
        "hr_lb" => Ok(Flagged::clamp01(pk_hr_lb(ctx.k()?, beta, theta)?)),
        "lr_lb" => regime(pk_lr_lb(ctx.k()?, beta, theta)),
        "combined_ub" => Ok(Flagged::clamp01(pk_combined_ub(ctx.k()?, beta, theta)?)),
        "smud_lb" => regime(pk_smud_lb(ctx.k()?, beta, theta)),
        "smud_ub" => pk_smud_ub(ctx.k()?, beta, theta),
        "en_lb" => Ok(Flagged::ok(en_lb(beta, theta, ctx.k)?.value)),
        "en_lb_err" => Ok(Flagged::ok(en_lb(beta, theta, ctx.k)?.truncation_error_bound)),
        "en_lr_lb" => regime(en_lr_lb(beta, theta)),
        "en_ub" => regime(en_ub(beta, theta, ctx.k)),
        "en_smud_ub" => regime(en_smud_ub(beta, theta, ctx.k)),
        "laplace_xik_ik" => Ok(Flagged::ok(laplace_xik_ik(ctx.k()?, beta, theta)?)),
        "r_asymptotic" => Ok(Flagged::ok(r_asymptotic(beta)?)),
        "r_lt_approx" => Ok(Flagged::ok(r_lt_approx(theta, beta)?)),
        "r_en_lb" => Ok(Flagged::ok(theta.ln_1p() * en_lb(beta, theta, ctx.k)?.value)),
        "r_en_lr_lb" => regime(en_lr_lb(beta, theta).map(|v| theta.ln_1p() * v)),
        "r_en_ub" => regime(en_ub(beta, theta, ctx.k).map(|v| theta.ln_1p() * v)),
        "r_en_smud_ub" => regime(en_smud_ub(beta, theta, ctx.k).map(|v| theta.ln_1p() * v)),
        "noisy_tail_ub" => Ok(Flagged::ok(noisy_tail_ub(
            ctx.k()?,
            theta,
            ctx.noise()?,
            ctx.a_bar()?,
            beta,
        )?)),
        "noisy_en_ub" => Ok(Flagged::ok(noisy_en_ub(theta, ctx.noise()?, ctx.a_bar()?, beta)?)),
        "noisy_r_ub" => Ok(Flagged::ok(noisy_r_ub(theta, ctx.noise()?, ctx.a_bar()?, beta)?)),
        "hcn_pc_no_sic" => hcn_pc_no_sic(theta, beta, ctx.eta()?),
        "hcn_pc_sic_lb" => hcn_pc_sic_lb(theta, beta, ctx.eta()?, None),
        "hcn_pc_sic_ub" => hcn_pc_sic_ub(theta, beta, ctx.eta()?, None),
        "hcn_pc_sic_smud_ub" => regime_flagged(hcn_pc_sic_smud_ub(theta, beta, ctx.eta()?, None)),
        "hcn_pc_sic_smud_lb" => regime_flagged(hcn_pc_sic_smud_lb(theta, beta, ctx.eta()?, None)),
        "hcn_pc_sic_lta" => hcn_pc_sic_lta(theta, beta, ctx.eta()?),
        "hcn_pcn_ub" => hcn_pcn_ub(theta, beta, ctx.eta()?, ctx.n()?),
        "hcn_pc_sic_erf_closed" => {
            let v = hcn_pc_sic_erf_closed(theta, ctx.eta()?)?;
            Ok(v.with_regime(v.in_regime && (beta - 0.5).abs() < 1e-12))
        }
        "hcn_pcn_theta1" => {
            let v = hcn_pcn_theta1(beta, ctx.eta()?, ctx.n()?)?;
            Ok(v.with_regime((theta - 1.0).abs() < 1e-12))
        }
        "hcn_pc_ml_closed" => {
            let v = hcn_pc_ml_closed(beta, ctx.eta()?)?;
            Ok(v.with_regime((theta - 1.0).abs() < 1e-12))
        }
        "hcn_t_no_sic" => scaled_by_rate(hcn_pc_no_sic(theta, beta, ctx.eta()?)?, theta),
        "hcn_t_sic_lb" => scaled_by_rate(hcn_pc_sic_lb(theta, beta, ctx.eta()?, None)?, theta),
        "hcn_t_sic_ub" => scaled_by_rate(hcn_pc_sic_ub(theta, beta, ctx.eta()?, None)?, theta),
        "hcn_t_sic_smud_ub" => {
            let f = regime_flagged(hcn_pc_sic_smud_ub(theta, beta, ctx.eta()?, None))?;
            scaled_by_rate(f, theta)
        }
        "hcn_t_sic_lta" => scaled_by_rate(hcn_pc_sic_lta(theta, beta, ctx.eta()?)?, theta),
        _ => Err(BoundsError::Domain("unknown bound name")),
    }
}

fn scaled_by_rate(f: Flagged, theta: f64) -> Result<Flagged, BoundsError> {
    Ok(Flagged {
        value: theta.ln_1p() * f.value,
        ..f
    })
}

/// A named catalog of bound values at one parameter point.
#[derive(Clone, Debug, Default)]
pub struct BoundReport {
    pub entries: Vec<(String, Flagged)>,
}

impl BoundReport {
    /// Evaluate `names` at the context, in order.
    pub fn evaluate(names: &[&str], ctx: &BoundContext) -> Result<Self, BoundsError> {
        let mut entries = Vec::with_capacity(names.len());
        for &name in names {
            entries.push((name.to_string(), evaluate_bound(name, ctx)?));
        }
        Ok(Self { entries })
    }

    pub fn get(&self, name: &str) -> Option<Flagged> {
        self.entries
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, f)| *f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1e-12)
    }

    #[test]
    fn delta1_closed_form_at_k1_beta_half_theta_one() {
        // u = 1: Δ1 = γ̄(1,1) − 1·γ̄(2,1) = (1 − e⁻¹) − (1 − 2e⁻¹) = e⁻¹.
        let d = delta1(1, 0.5, 1.0).unwrap();
        assert!(close(d, (-1.0f64).exp(), 1e-12), "{d}");
    }

    #[test]
    fn delta1_tends_to_one_as_theta_vanishes() {
        for &beta in &[1.0 / 3.0, 0.5, 2.0 / 3.0] {
            for k in [1, 3, 10] {
                let d = delta1(k, beta, 1e-8).unwrap();
                assert!((d - 1.0).abs() < 1e-4, "beta={beta} k={k}: {d}");
            }
        }
    }

    #[test]
    fn delta1_monotone_decreasing_in_k() {
        for &theta in &[0.1, 1.0, 10.0] {
            for &beta in &[1.0 / 3.0, 0.5, 2.0 / 3.0] {
                let mut prev = f64::INFINITY;
                for k in 1..=12 {
                    let d = delta1(k, beta, theta).unwrap();
                    assert!(d <= prev + 1e-14, "theta={theta} beta={beta} k={k}");
                    prev = d;
                }
            }
        }
    }

    #[test]
    fn c_of_s_small_s_limit() {
        // lim_{s→0} s/c(s) = (1−β)/β.
        for &beta in &[1.0 / 3.0, 0.5, 2.0 / 3.0] {
            let s = 1e-6;
            let ratio = s / c_of_s(s, beta).unwrap();
            assert!(
                (ratio - (1.0 - beta) / beta).abs() < 1e-3,
                "beta={beta}: {ratio}"
            );
        }
    }

    #[test]
    fn c_of_s_frozen_value() {
        // c(1) = √π erf(1) − 1 + e⁻¹ at β = 1/2.
        assert!(close(c_of_s(1.0, 0.5).unwrap(), 0.861527706796296372, 1e-12));
    }

    #[test]
    fn thm1_matches_sinc_form_at_k1() {
        for &beta in &[0.2, 1.0 / 3.0, 0.5, 2.0 / 3.0, 0.9] {
            for &theta in &[1.0, 2.0, 7.5] {
                let t = thm1_exact(1, beta, theta).unwrap();
                let sinc_form = specfun::sinc(beta).unwrap() / theta.powf(beta);
                assert!(close(t.value, sinc_form, 1e-12), "beta={beta} theta={theta}");
                assert!(t.exact);
            }
        }
        assert!(!thm1_exact(1, 0.5, 0.5).unwrap().exact);
    }

    #[test]
    fn thm1_beta_half_reduction() {
        // β = 1/2: 1/((πθ)^{k/2} Γ(k/2+1)).
        for k in 1..=5 {
            for &theta in &[1.0, 2.0, 5.0] {
                let t = thm1_exact(k, 0.5, theta).unwrap();
                let reduced = 1.0
                    / ((std::f64::consts::PI * theta).powf(k as f64 / 2.0)
                        * specfun::gamma(k as f64 / 2.0 + 1.0).unwrap());
                assert!(close(t.value, reduced, 1e-12), "k={k} theta={theta}");
            }
        }
        // Frozen: k=3, θ=2 gives 1/((2π)^{3/2} Γ(5/2)).
        assert!(close(
            thm1_exact(3, 0.5, 2.0).unwrap().value,
            0.047763264020896355,
            1e-12
        ));
        // Cor. 3 at θ = 1: 2/π.
        assert!(close(
            thm1_exact(1, 0.5, 1.0).unwrap().value,
            2.0 / std::f64::consts::PI,
            1e-13
        ));
    }

    #[test]
    fn pk_bound_examples() {
        // k = 1: empty ordering product.
        assert_eq!(
            pk_hr_lb(1, 0.5, 1.3).unwrap(),
            delta1(1, 0.5, 1.3).unwrap()
        );
        assert_eq!(
            pk_combined_ub(1, 0.5, 1.3).unwrap(),
            delta2(1, 0.5, 1.3).unwrap()
        );
        // β = 1/2, θ = 1, k = 2: prefactor 2^{−1/2}.
        assert!(close(
            pk_hr_lb(2, 0.5, 1.0).unwrap(),
            delta1(2, 0.5, 1.0).unwrap() / 2.0f64.sqrt(),
            1e-14
        ));
    }

    #[test]
    fn smud_bounds_at_k2_theta1() {
        // lb = 2^{−1/2}/π, ub = 1/π.
        let lb = pk_smud_lb(2, 0.5, 1.0).unwrap();
        let ub = pk_smud_ub(2, 0.5, 1.0).unwrap();
        assert!(close(lb, 0.225079079039276503, 1e-12), "{lb}");
        assert!(close(ub.value, 1.0 / std::f64::consts::PI, 1e-12));
        assert!(!ub.clamped);
        assert!(pk_smud_lb(2, 0.5, 0.99).is_err());
    }

    #[test]
    fn smud_ub_collapses_to_sinc_at_k1() {
        for &theta in &[1.0, 3.0] {
            let ub = pk_smud_ub(1, 0.5, theta).unwrap();
            let lb = pk_smud_lb(1, 0.5, theta).unwrap();
            let p1 = specfun::sinc(0.5).unwrap() / theta.sqrt();
            assert!(close(ub.value, p1, 1e-13));
            assert!(close(lb, p1, 1e-13));
        }
    }

    #[test]
    fn smud_ub_clamps_at_small_theta() {
        // At θ = 10^{−0.5} (−5 dB) the raw k = 1 bound exceeds one.
        let ub = pk_smud_ub(1, 0.5, 10f64.powf(-0.5)).unwrap();
        assert_eq!(ub.value, 1.0);
        assert!(ub.clamped);
    }

    #[test]
    fn lr_lb_domain() {
        assert!(pk_lr_lb(1, 0.5, 0.3).is_ok());
        assert!(pk_lr_lb(4, 0.5, 0.3).is_ok()); // 4 < 1/0.3 + 1 ≈ 4.33
        assert!(pk_lr_lb(5, 0.5, 0.3).is_err());
        assert!(pk_lr_lb(2, 0.5, 1.5).is_err());
    }

    #[test]
    fn ordering_chain_on_grid() {
        let thetas: Vec<f64> = (0..17).map(|i| 10f64.powf(-2.0 + 0.25 * i as f64)).collect();
        for &beta in &[1.0 / 3.0, 0.5, 2.0 / 3.0] {
            for &theta in &thetas {
                for k in 1..=5 {
                    let hr = pk_hr_lb(k, beta, theta).unwrap();
                    let cub = pk_combined_ub(k, beta, theta).unwrap();
                    assert!(hr <= cub + 1e-12, "hr>cub beta={beta} theta={theta} k={k}");
                    if theta >= 1.0 {
                        let slb = pk_smud_lb(k, beta, theta).unwrap();
                        let sub = pk_smud_ub(k, beta, theta).unwrap().value;
                        assert!(slb <= sub + 1e-12, "beta={beta} theta={theta} k={k}");
                        assert!(hr <= sub + 1e-12, "beta={beta} theta={theta} k={k}");
                    }
                }
            }
        }
    }

    #[test]
    fn en_bounds_behave() {
        // θ → ∞ kills E[N]. The bound cannot drop below p₁ = sinc β/√θ
        // (2/π · 10⁻² at θ = 10⁴), so the thresholds follow that scale.
        assert!(en_smud_ub(0.5, 1e4, None).unwrap() < 1e-2);
        assert!(en_smud_ub(0.5, 1e6, None).unwrap() < 1e-3);
        // en_lb is non-decreasing in K.
        let mut prev = 0.0;
        for k in 1..=30 {
            let v = en_lb(0.5, 1.0, Some(k)).unwrap().value;
            assert!(v >= prev - 1e-15);
            prev = v;
        }
        // Explicit-K constraint errors.
        assert!(en_ub(0.5, 1.0, Some(1)).is_err());
        let auto = en_ub(0.5, 1.0, None).unwrap();
        let lb = en_lb(0.5, 1.0, None).unwrap().value;
        assert!(lb <= auto, "lb = {lb}, ub = {auto}");
        let smud = en_smud_ub(0.5, 1.0, None).unwrap();
        assert!(lb <= smud);
    }

    #[test]
    fn en_lb_error_bound_inverts() {
        // Smallest K with the erfc bound below 1e-6 stays modest.
        let res = en_lb(0.5, 1.0, None).unwrap();
        assert!(res.truncation_error_bound < 1e-6);
        assert!(res.terms <= 30, "terms = {}", res.terms);
    }

    #[test]
    fn en_lr_lb_small_theta_exceeds_plain_lb() {
        // The low-rate bound is the better estimate as θ → 0.
        let theta = 0.01;
        let lr = en_lr_lb(0.5, theta).unwrap();
        let plain = en_lb(0.5, theta, None).unwrap().value;
        assert!(lr > plain, "lr = {lr} <= plain = {plain}");
        assert!(en_lr_lb(0.5, 1.5).is_err());
    }

    #[test]
    fn en_smud_ub_regime() {
        // θ < Γ(1−β)^{−1/β} leaves no admissible K when θ < 1.
        assert!(en_smud_ub(0.5, 0.1, None).is_err());
        assert!(en_smud_ub(0.5, 0.5, None).is_ok());
    }

    #[test]
    fn rate_quantities() {
        assert_eq!(r_asymptotic(0.5).unwrap(), 1.0);
        assert!(close(r_asymptotic(1.0 / 3.0).unwrap(), 2.0, 1e-15));
        assert!(close(r_lt_approx(1.0, 0.5).unwrap(), 0.804555877996662341, 1e-12));
        // Laplace transform: (1 + c(1))^{−1} and its square at k = 2.
        let l1 = laplace_xik_ik(1, 0.5, 1.0).unwrap();
        assert!(close(l1, 0.537193186192757646, 1e-12));
        assert!(close(laplace_xik_ik(2, 0.5, 1.0).unwrap(), l1 * l1, 1e-12));
    }

    #[test]
    fn noisy_bounds() {
        // W → ∞ sends everything to zero.
        assert!(noisy_en_ub(1.0, 1e9, std::f64::consts::PI, 0.5).unwrap() < 1e-4);
        assert!(noisy_tail_ub(1, 1.0, 1e9, std::f64::consts::PI, 0.5).unwrap() < 1e-4);
        // Σ_k γ̄(k, x) = x.
        let x = std::f64::consts::PI / (2.0f64).powf(0.5);
        let mut sum = 0.0;
        for k in 1..200 {
            sum += noisy_tail_ub(k, 2.0, 1.0, std::f64::consts::PI, 0.5).unwrap();
        }
        assert!(close(sum, x, 1e-10), "sum = {sum}, x = {x}");
        assert!(noisy_en_ub(1.0, 0.0, 1.0, 0.5).is_err());
        // The throughput bound exists for all θ even where the
        // interference-limited piece has no admissible K.
        assert!(noisy_r_ub(0.01, 1.0, std::f64::consts::PI, 0.5).unwrap().is_finite());
    }

    #[test]
    fn hcn_known_values() {
        let pc = hcn_pc_no_sic(1.0, 0.5, 0.6).unwrap();
        assert!(close(pc.value, 0.6 * 2.0 / std::f64::consts::PI, 1e-13));
        assert!(pc.in_regime);
        assert!(!hcn_pc_no_sic(0.5, 0.5, 0.6).unwrap().in_regime);

        let lta = hcn_pc_sic_lta(1.0, 0.5, 0.6).unwrap();
        assert!(close(lta.value, 0.6 / (0.6 + 0.861527706796296372), 1e-12));
    }

    #[test]
    fn hcn_lta_limits() {
        assert!(hcn_pc_sic_lta(1e-6, 0.5, 0.6).unwrap().value > 0.999);
        assert!(hcn_pc_sic_lta(1e6, 0.5, 0.6).unwrap().value < 1e-3);
    }

    #[test]
    fn hcn_pcn_ub_tight_at_n1() {
        for &eta in &[0.3, 0.6, 0.9] {
            for &theta in &[1.0, 10f64.powf(0.2)] {
                let n1 = hcn_pcn_ub(theta, 0.5, eta, 1).unwrap();
                let no_sic = hcn_pc_no_sic(theta, 0.5, eta).unwrap();
                assert!(close(n1.value, no_sic.value, 1e-12), "eta={eta} theta={theta}");
            }
        }
    }

    #[test]
    fn hcn_ml_equals_erf_closed_form_at_theta1() {
        for &eta in &[0.1, 0.3, 0.6, 0.9, 0.99] {
            let ml = hcn_pc_ml_closed(0.5, eta).unwrap().value;
            let erf_form = hcn_pc_sic_erf_closed(1.0, eta).unwrap().value;
            assert!((ml - erf_form).abs() < 1e-10, "eta={eta}: {ml} vs {erf_form}");
        }
    }

    #[test]
    fn hcn_second_order_approximation_beta_half() {
        // n = 2 at θ = 1, β = 1/2 collapses to (3−η)η/π.
        for &eta in &[0.2, 0.5, 0.8] {
            let two = hcn_pcn_theta1(0.5, eta, 2).unwrap().value;
            let closed = (3.0 - eta) * eta / std::f64::consts::PI;
            assert!((two - closed).abs() < 1e-12, "eta={eta}");
        }
    }

    #[test]
    fn hcn_series_bracket_and_residual() {
        for &theta in &[0.5, 1.0, 4.0] {
            for &eta in &[0.3, 0.6, 0.9] {
                let lb = hcn_pc_sic_lb(theta, 0.5, eta, None).unwrap().value;
                let ub = hcn_pc_sic_ub(theta, 0.5, eta, None).unwrap().value;
                assert!(lb <= ub + 1e-12, "theta={theta} eta={eta}");
                if theta >= 1.0 {
                    let slb = hcn_pc_sic_smud_lb(theta, 0.5, eta, None).unwrap().value;
                    let sub = hcn_pc_sic_smud_ub(theta, 0.5, eta, None).unwrap().value;
                    assert!(slb <= sub + 1e-12);
                    let err = hcn_pc_sic_smud_lb_error(theta, 0.5, eta, 12).unwrap();
                    assert!(err < 1e-6, "truncation error {err}");
                }
            }
        }
    }

    #[test]
    fn hcn_eta_one_limits() {
        // At η = 1 every series collapses to p₁.
        let p1 = specfun::sinc(0.5).unwrap();
        assert!(close(hcn_pc_ml_closed(0.5, 1.0).unwrap().value, p1, 1e-12));
        assert!(close(hcn_pc_sic_erf_closed(1.0, 1.0).unwrap().value, p1, 1e-12));
        assert!(close(hcn_pcn_theta1(0.5, 1.0, 5).unwrap().value, p1, 1e-12));
        assert!(close(hcn_pc_sic_smud_ub(1.0, 0.5, 1.0, None).unwrap().value, p1, 1e-12));
    }

    #[test]
    fn avg_throughput() {
        assert!(close(
            hcn_avg_throughput(0.5, 1.0).unwrap(),
            0.5 * std::f64::consts::LN_2,
            1e-15
        ));
        assert!(hcn_avg_throughput(1.5, 1.0).is_err());
    }

    #[test]
    fn dispatcher_covers_catalog() {
        let ctx = BoundContext {
            beta: 0.5,
            theta: 1.0,
            k: Some(2),
            n: Some(2),
            eta: Some(0.6),
            noise_w: Some(1.0),
            a_bar: Some(std::f64::consts::PI),
        };
        for &name in BOUND_NAMES {
            let f = evaluate_bound(name, &ctx).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert!(
                f.value.is_finite() || !f.in_regime,
                "{name} produced {f:?}"
            );
        }
        assert!(evaluate_bound("nonsense", &ctx).is_err());
    }

    #[test]
    fn dispatcher_flags_out_of_regime_points() {
        let ctx = BoundContext {
            beta: 0.5,
            theta: 0.2,
            k: Some(2),
            eta: Some(0.6),
            ..Default::default()
        };
        // SMUD lower bound requires θ ≥ 1: flagged NaN, not an error.
        let f = evaluate_bound("smud_lb", &ctx).unwrap();
        assert!(!f.in_regime);
        assert!(f.value.is_nan());
        // lr_lb at k=2, θ=0.2 is fine.
        assert!(evaluate_bound("lr_lb", &ctx).unwrap().in_regime);
        // Missing eta is a hard error.
        let bad = BoundContext { beta: 0.5, theta: 1.0, ..Default::default() };
        assert!(evaluate_bound("hcn_pc_sic_lta", &bad).is_err());
    }

    #[test]
    fn report_evaluates_in_order() {
        let ctx = BoundContext {
            beta: 0.5,
            theta: 2.0,
            k: Some(1),
            ..Default::default()
        };
        let report = BoundReport::evaluate(&["thm1_exact", "hr_lb"], &ctx).unwrap();
        assert_eq!(report.entries.len(), 2);
        assert!(report.get("thm1_exact").unwrap().in_regime);
        assert!(report.get("missing").is_none());
    }
}
