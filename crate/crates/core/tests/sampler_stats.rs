//! Distributional checks on the sampler: the k-th point's law, Poisson
//! counts, the conditional mean of the suffix interference, and the
//! invariance properties that let every interference-limited statistic be
//! computed on the normalized process.

mod common;

use common::{
    chi_square, chi_square_critical_1pct, ks_critical_1pct, ks_statistic, two_proportion_z,
    Z_1PCT_TWO_SIDED,
};
use sicnet::model::{FadingSpec, NetworkParams};
use sicnet::plpf::{sample_from_network, sample_splpf, SamplerConfig, TailMode};
use sicnet::sim::{decode_count, DecodeQuery};
use sicnet::specfun;

/// Empirical cdf of ξ_k tested against γ̄(k, x^β) by Kolmogorov-Smirnov at
/// the 1% level.
#[test]
fn kth_point_law_ks() {
    let reps = 10_000u64;
    for &beta in &[1.0 / 3.0, 0.5, 2.0 / 3.0] {
        for k in [1usize, 2, 5] {
            let cfg = SamplerConfig::new(beta, 0xA11CE)
                .unwrap()
                .with_n_points(16)
                .unwrap();
            let mut samples: Vec<f64> = (0..reps).map(|i| sample_splpf(&cfg, i).xi(k)).collect();
            samples.sort_unstable_by(f64::total_cmp);
            let d = ks_statistic(&samples, |x| {
                specfun::reg_lower_gamma(k as f64, x.powf(beta)).unwrap()
            });
            let crit = ks_critical_1pct(reps as usize);
            assert!(d < crit, "beta={beta} k={k}: D={d:.5} crit={crit:.5}");
        }
    }
}

/// Counts in [0, r] are Poisson(r^β): chi-square goodness of fit at 1%.
#[test]
fn count_in_interval_is_poisson() {
    let reps = 10_000usize;
    let beta = 0.5;
    let r: f64 = 4.0; // λ = r^β = 2
    let lambda = r.powf(beta);
    let cfg = SamplerConfig::new(beta, 0xC0FFEE)
        .unwrap()
        .with_n_points(64)
        .unwrap();
    // Bins 0..=7 and a tail bin.
    let max_bin = 7usize;
    let mut observed = vec![0.0; max_bin + 2];
    for i in 0..reps {
        let count = sample_splpf(&cfg, i as u64).count_leq(r).min(max_bin + 1);
        observed[count] += 1.0;
    }
    let mut expected = Vec::with_capacity(max_bin + 2);
    let mut pmf = (-lambda).exp();
    let mut cumulative = 0.0;
    for n in 0..=max_bin {
        if n > 0 {
            pmf *= lambda / n as f64;
        }
        expected.push(pmf * reps as f64);
        cumulative += pmf;
    }
    expected.push((1.0 - cumulative) * reps as f64);
    let stat = chi_square(&observed, &expected);
    let crit = chi_square_critical_1pct(max_bin + 1);
    assert!(stat < crit, "chi2 = {stat:.2}, crit = {crit:.2}");
}

/// E[I_k | ξ_k = ρ] = β/(1−β) ρ^{β−1} for the standard process, so
/// I_k ξ_k^{1−β} has mean β/(1−β); checked with tail compensation on.
#[test]
fn conditional_mean_interference_regression() {
    let reps = 20_000u64;
    for &beta in &[1.0 / 3.0, 0.5, 2.0 / 3.0] {
        let cfg = SamplerConfig::new(beta, 0xBEEF).unwrap();
        for k in [1usize, 10] {
            let mut sum = 0.0;
            let mut sum_sq = 0.0;
            for i in 0..reps {
                let r = sample_splpf(&cfg, i);
                let v = r.suffix_interference(k).unwrap() * r.xi(k).powf(1.0 - beta);
                sum += v;
                sum_sq += v * v;
            }
            let n = reps as f64;
            let mean = sum / n;
            let se = (((sum_sq / n - mean * mean) / n).max(0.0)).sqrt();
            let target = beta / (1.0 - beta);
            assert!(
                (mean - target).abs() < 4.0 * se + 1e-3 * target,
                "beta={beta} k={k}: mean {mean} vs {target} (se {se})"
            );
        }
    }
}

/// Dropping the tail biases I_k low; compensation removes the bias.
#[test]
fn tail_compensation_removes_truncation_bias() {
    let beta = 2.0 / 3.0;
    let reps = 4000u64;
    let compensated = SamplerConfig::new(beta, 5).unwrap().with_n_points(100).unwrap();
    let dropped = compensated.with_tail_mode(TailMode::Drop);
    let target = beta / (1.0 - beta);
    let mean_of = |cfg: &SamplerConfig| {
        let mut sum = 0.0;
        for i in 0..reps {
            let r = sample_splpf(cfg, i);
            sum += r.suffix_interference(1).unwrap() * r.xi(1).powf(1.0 - beta);
        }
        sum / reps as f64
    };
    let with = mean_of(&compensated);
    let without = mean_of(&dropped);
    // At n = 100 and β = 2/3 the dropped tail is ~9% of the mean.
    assert!((with - target).abs() < 0.05 * target, "compensated {with} vs {target}");
    assert!(target - without > 0.05 * target, "drop mode should undershoot, got {without}");
}

/// Decoding outcomes are invariant under scaling of the whole realization
/// when there is no noise (per-realization, not just in distribution).
#[test]
fn decode_scale_invariance_per_realization() {
    let cfg = SamplerConfig::new(0.5, 7).unwrap().with_n_points(300).unwrap();
    let q = DecodeQuery::new(0.7, 0.0, 40).unwrap();
    for rep in 0..500 {
        let r = sample_splpf(&cfg, rep);
        for c in [1e-3, 0.1, 10.0, 1e4] {
            assert_eq!(
                decode_count(&r, &q),
                decode_count(&r.scale(c).unwrap(), &q),
                "rep {rep}, scale {c}"
            );
        }
    }
}

/// With noise, growing the intensity scale can only help: p_k^W is
/// non-decreasing in ā (checked pathwise via the scale map).
#[test]
fn noisy_decoding_scale_monotonicity() {
    let cfg = SamplerConfig::new(0.5, 23).unwrap().with_n_points(400).unwrap();
    let q = DecodeQuery::new(1.0, 0.5, 30).unwrap();
    for rep in 0..500 {
        let r = sample_splpf(&cfg, rep);
        // ā ↦ 4ā corresponds to ξ ↦ C ξ with C = 4^{−1/β} < 1, which
        // shrinks every path loss and so can only increase N.
        let denser = r.scale(4.0f64.powf(-1.0 / 0.5)).unwrap();
        assert!(decode_count(&denser, &q) >= decode_count(&r, &q), "rep {rep}");
    }
}

/// Fading invariance: p₁ estimated from the network-space pipeline with
/// exponential fading is statistically indistinguishable (1% two-sample
/// test) from the normalized-process estimate.
#[test]
fn fading_invariance_two_sample() {
    let reps = 20_000u64;
    let theta = 1.0;
    let q = DecodeQuery::new(theta, 0.0, 1).unwrap();

    let cfg = SamplerConfig::new(0.5, 0xFAD).unwrap().with_n_points(500).unwrap();
    let mut hits_std = 0u64;
    for i in 0..reps {
        hits_std += u64::from(decode_count(&sample_splpf(&cfg, i), &q) >= 1);
    }

    let params = NetworkParams::new(2, 4.0, 1.0, 0.0, FadingSpec::Exponential).unwrap();
    let mut hits_net = 0u64;
    for i in 0..reps {
        let r = sample_from_network(&params, 500, TailMode::CompensateMean, 0xFAD2, i).unwrap();
        hits_net += u64::from(decode_count(&r, &q) >= 1);
    }

    let n = reps as f64;
    let p_std = hits_std as f64 / n;
    let p_net = hits_net as f64 / n;
    let se = |p: f64| (p * (1.0 - p) / n).sqrt();
    let z = two_proportion_z(p_std, se(p_std), p_net, se(p_net));
    assert!(
        z < Z_1PCT_TWO_SIDED,
        "pipelines disagree: std {p_std:.4}, network {p_net:.4}, z = {z:.2}"
    );
    // Both sit near the exact value 2/π at θ = 1.
    let exact = 2.0 / std::f64::consts::PI;
    assert!((p_std - exact).abs() < 4.0 * se(p_std) + 5e-3);
    assert!((p_net - exact).abs() < 4.0 * se(p_net) + 5e-3);
}
