//! Shared helpers for the integration suites: an adaptive-quadrature
//! oracle that is independent of the library's series/continued-fraction
//! implementations, and small statistical test utilities.

#![allow(dead_code)]

/// Adaptive Simpson quadrature with error control by interval halving.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, m: f64, b: f64) -> f64 {
        (b - a) / 6.0 * (f(a) + 4.0 * f(m) + f(b))
    }
    fn recurse<F: Fn(f64) -> f64>(
        f: &F,
        a: f64,
        m: f64,
        b: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let left = simpson(f, a, lm, m);
        let right = simpson(f, m, rm, b);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        recurse(f, a, lm, m, left, tol / 2.0, depth - 1)
            + recurse(f, m, rm, b, right, tol / 2.0, depth - 1)
    }
    if a == b {
        return 0.0;
    }
    let m = 0.5 * (a + b);
    recurse(f, a, m, b, simpson(f, a, m, b), tol, 48)
}

/// Quadrature oracle for the lower incomplete gamma function
/// γ(s, x) = ∫₀ˣ t^{s−1} e^{−t} dt.
///
/// For s < 1 the integrand is singular at 0; the head [0, ε] is summed by
/// the alternating series ∫₀^ε t^{s−1}e^{−t} dt = Σ_j (−1)^j ε^{s+j}/(j!(s+j)),
/// the remainder integrated numerically. This is a different route from
/// the library's series/continued-fraction split.
pub fn lower_inc_gamma_oracle(s: f64, x: f64) -> f64 {
    assert!(s > 0.0 && x >= 0.0);
    if x == 0.0 {
        return 0.0;
    }
    let integrand = |t: f64| t.powf(s - 1.0) * (-t).exp();
    if s >= 1.0 {
        // Two passes: the first sets the scale so the tolerance is
        // relative even for very small integrals.
        let rough = adaptive_simpson(&integrand, 0.0, x, 1e-13);
        return adaptive_simpson(&integrand, 0.0, x, (rough.abs() * 1e-13).max(1e-306));
    }
    let eps = 1e-3_f64.min(x / 2.0);
    let mut head = 0.0;
    let mut factorial = 1.0;
    for j in 0..40 {
        let jf = j as f64;
        if j > 0 {
            factorial *= jf;
        }
        let term = if j % 2 == 0 { 1.0 } else { -1.0 } * eps.powf(s + jf) / (factorial * (s + jf));
        head += term;
        if term.abs() < 1e-17 * head.abs() {
            break;
        }
    }
    head + adaptive_simpson(&integrand, eps, x, 1e-13)
}

/// Quadrature oracle for erf(x) = 2/√π ∫₀ˣ e^{−t²} dt.
pub fn erf_oracle(x: f64) -> f64 {
    let value = adaptive_simpson(&|t: f64| (-t * t).exp(), 0.0, x.abs(), 1e-13);
    2.0 / std::f64::consts::PI.sqrt() * value * x.signum()
}

/// One-sample Kolmogorov-Smirnov statistic against a cdf.
pub fn ks_statistic<F: Fn(f64) -> f64>(sorted_samples: &[f64], cdf: F) -> f64 {
    let n = sorted_samples.len() as f64;
    let mut d = 0.0_f64;
    for (i, &x) in sorted_samples.iter().enumerate() {
        let f = cdf(x);
        let hi = (i as f64 + 1.0) / n - f;
        let lo = f - i as f64 / n;
        d = d.max(hi).max(lo);
    }
    d
}

/// Asymptotic KS critical value at significance level 1%.
pub fn ks_critical_1pct(n: usize) -> f64 {
    // c(0.01) = sqrt(-ln(0.005)/2)
    1.627_624_f64 / (n as f64).sqrt()
}

/// Pearson chi-square statistic for observed counts against expected.
pub fn chi_square(observed: &[f64], expected: &[f64]) -> f64 {
    observed
        .iter()
        .zip(expected)
        .map(|(o, e)| (o - e) * (o - e) / e)
        .sum()
}

/// Upper-tail chi-square critical values at 1% for small degrees of
/// freedom (Q(df/2, x/2) = 0.01), frozen from standard tables.
pub fn chi_square_critical_1pct(df: usize) -> f64 {
    const TABLE: [f64; 16] = [
        6.635, 9.210, 11.345, 13.277, 15.086, 16.812, 18.475, 20.090, 21.666, 23.209, 24.725,
        26.217, 27.688, 29.141, 30.578, 32.000,
    ];
    TABLE[df - 1]
}

/// Two-proportion z statistic from two independent binomial estimates.
pub fn two_proportion_z(p1: f64, se1: f64, p2: f64, se2: f64) -> f64 {
    (p1 - p2).abs() / (se1 * se1 + se2 * se2).sqrt()
}

/// z threshold for a two-sided test at 1%.
pub const Z_1PCT_TWO_SIDED: f64 = 2.575_829;
/// z threshold for a one-sided test at 1%.
pub const Z_1PCT_ONE_SIDED: f64 = 2.326_348;
