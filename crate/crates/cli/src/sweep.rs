//! Sweep execution: evaluate every requested quantity at every grid
//! point and emit one CSV row per point.
//!
//! Output format: comma-separated, header row, UTF-8, LF line endings,
//! values at 12 significant digits. Monte Carlo columns come with a
//! `<label>_se` standard-error column; bound columns with a
//! `<label>_flag` column (1 = in regime, 0 = out of regime, 2 = clamped).
//! Out-of-regime bound values print as empty cells.
//!
//! Reruns with the same spec, seed and worker count are byte-identical;
//! estimates are in fact worker-count independent because replicate
//! streams are indexed, not shared.

use std::fmt;
use std::fs;
use std::path::Path;

use sicnet::bounds::{self, BoundContext, BoundsError};
use sicnet::plpf::{PlpfError, SamplerConfig};
use sicnet::rng::derive_seed;
use sicnet::sim::{self, CoverageQuery, DecodeQuery, SicEstimate, SimError};

use crate::config::{ConfigError, PointParams, QuantityKind, QuantitySpec, SweepSpec};

/// Cap on automatic realization growth for very small θ.
const MAX_AUTO_N_POINTS: usize = 1 << 17;

#[derive(Debug)]
pub enum SweepError {
    Config(ConfigError),
    Sim(SimError),
    Bounds(BoundsError),
    Plpf(PlpfError),
    Io(std::io::Error),
}

impl fmt::Display for SweepError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Config(e) => write!(f, "{e}"),
            Self::Sim(e) => write!(f, "simulation error: {e}"),
            Self::Bounds(e) => write!(f, "bounds error: {e}"),
            Self::Plpf(e) => write!(f, "sampler error: {e}"),
            Self::Io(e) => write!(f, "io error: {e}"),
        }
    }
}

impl std::error::Error for SweepError {}

impl From<ConfigError> for SweepError {
    fn from(e: ConfigError) -> Self {
        Self::Config(e)
    }
}
impl From<SimError> for SweepError {
    fn from(e: SimError) -> Self {
        Self::Sim(e)
    }
}
impl From<BoundsError> for SweepError {
    fn from(e: BoundsError) -> Self {
        Self::Bounds(e)
    }
}
impl From<PlpfError> for SweepError {
    fn from(e: PlpfError) -> Self {
        Self::Plpf(e)
    }
}
impl From<std::io::Error> for SweepError {
    fn from(e: std::io::Error) -> Self {
        Self::Io(e)
    }
}

/// The rendered CSV plus any non-fatal notes gathered along the way.
#[derive(Debug, Clone)]
pub struct SweepOutput {
    pub csv: String,
    pub warnings: Vec<String>,
}

impl SweepOutput {
    /// Write the CSV; nothing is written on earlier failure, so there is
    /// never a partial file to clean up.
    pub fn write_to(&self, path: &Path) -> Result<(), SweepError> {
        fs::write(path, self.csv.as_bytes())?;
        Ok(())
    }
}

/// 12 significant digits, scientific; empty cell for NaN.
pub fn fmt_sig12(x: f64) -> String {
    if x.is_nan() {
        String::new()
    } else if x.is_infinite() {
        if x > 0.0 { "inf".to_string() } else { "-inf".to_string() }
    } else {
        format!("{x:.11e}")
    }
}

/// Run a validated sweep over its own grid.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepOutput, SweepError> {
    spec.validate()?;
    run_values(spec, &spec.sweep.values())
}

/// Run the spec's quantities at explicit axis values (the CLI's
/// single-point mode uses a one-element slice).
pub fn run_values(spec: &SweepSpec, values: &[f64]) -> Result<SweepOutput, SweepError> {
    let mut header = vec![spec.sweep.var.column_name().to_string()];
    for q in &spec.quantities {
        let label = q.column_label();
        if q.is_mc() {
            header.push(label.clone());
            header.push(format!("{label}_se"));
        } else {
            header.push(label.clone());
            header.push(format!("{label}_flag"));
        }
    }

    let mut csv = String::new();
    csv.push_str(&header.join(","));
    csv.push('\n');
    let mut warnings = Vec::new();

    for (point_idx, &value) in values.iter().enumerate() {
        let params: Vec<PointParams> = spec
            .quantities
            .iter()
            .map(|q| spec.resolve(value, q))
            .collect::<Result<_, _>>()?;
        let mut cells: Vec<Option<(String, String)>> = vec![None; spec.quantities.len()];

        // Quantities that differ only in k (or SIC depth) at the same
        // parameter point share one replicate batch.
        let groups = plan_groups(spec, &params);
        for group in &groups {
            let seed = derive_seed(
                spec.master_seed,
                ((point_idx as u64) << 20) | (group.members[0] as u64 & 0xFFFFF),
            );
            evaluate_group(spec, group, &params, seed, &mut cells, &mut warnings)?;
        }

        for (q_idx, q) in spec.quantities.iter().enumerate() {
            if q.is_mc() {
                continue;
            }
            let p = &params[q_idx];
            let name = q.name.as_deref().expect("validated bound name");
            let ctx = BoundContext {
                beta: p.beta,
                theta: p.theta,
                k: q.k,
                n: p.n,
                eta: p.eta,
                noise_w: (p.w > 0.0).then_some(p.w),
                a_bar: Some(p.a_bar),
            };
            let flagged = bounds::evaluate_bound(name, &ctx)?;
            let flag = if !flagged.in_regime {
                0
            } else if flagged.clamped {
                2
            } else {
                1
            };
            cells[q_idx] = Some((fmt_sig12(flagged.value), flag.to_string()));
        }

        let mut row = vec![fmt_sig12(value)];
        for cell in cells {
            let (a, b) = cell.expect("every quantity evaluated");
            row.push(a);
            row.push(b);
        }
        csv.push_str(&row.join(","));
        csv.push('\n');
    }

    warnings.dedup();
    Ok(SweepOutput { csv, warnings })
}

/// How Monte Carlo quantities batch together at one sweep point.
#[derive(Clone, Copy, PartialEq, Eq)]
enum McClass {
    Pk,
    JointTail,
    Coverage,
    Single,
}

struct McGroup {
    class: McClass,
    members: Vec<usize>,
}

fn mc_class(kind: QuantityKind) -> Option<McClass> {
    match kind {
        QuantityKind::McPk => Some(McClass::Pk),
        QuantityKind::McJointTail => Some(McClass::JointTail),
        QuantityKind::McCoverage | QuantityKind::McAvgThroughput => Some(McClass::Coverage),
        QuantityKind::McEn | QuantityKind::McThroughput | QuantityKind::McLaplace => {
            Some(McClass::Single)
        }
        QuantityKind::Bound => None,
    }
}

fn shared_key(class: McClass, p: &PointParams) -> (u8, u64, u64, u64, u64, u64) {
    (
        match class {
            McClass::Pk => 0,
            McClass::JointTail => 1,
            McClass::Coverage => 2,
            McClass::Single => 3,
        },
        p.beta.to_bits(),
        p.theta.to_bits(),
        p.w.to_bits(),
        p.eta.unwrap_or(-1.0).to_bits(),
        p.a_bar.to_bits(),
    )
}

fn plan_groups(spec: &SweepSpec, params: &[PointParams]) -> Vec<McGroup> {
    let mut groups: Vec<(Option<(u8, u64, u64, u64, u64, u64)>, McGroup)> = Vec::new();
    for (idx, q) in spec.quantities.iter().enumerate() {
        let Some(class) = mc_class(q.quantity) else {
            continue;
        };
        // Single-output estimators always get their own batch.
        let key = (class != McClass::Single).then(|| shared_key(class, &params[idx]));
        let slot = key.and_then(|k| {
            groups
                .iter_mut()
                .find(|(gk, g)| *gk == Some(k) && g.class == class)
        });
        match slot {
            Some((_, group)) => group.members.push(idx),
            None => groups.push((key, McGroup { class, members: vec![idx] })),
        }
    }
    groups.into_iter().map(|(_, g)| g).collect()
}

fn evaluate_group(
    spec: &SweepSpec,
    group: &McGroup,
    params: &[PointParams],
    seed: u64,
    cells: &mut [Option<(String, String)>],
    warnings: &mut Vec<String>,
) -> Result<(), SweepError> {
    let first = group.members[0];
    let p = &params[first];
    match group.class {
        McClass::Pk | McClass::JointTail => {
            let k_max = group
                .members
                .iter()
                .map(|&i| spec.quantities[i].k.expect("validated"))
                .max()
                .expect("nonempty group");
            let cfg = sampler(p, seed, spec.n_points)?;
            let all = if group.class == McClass::Pk {
                let query = DecodeQuery::new(p.theta, p.w, k_max)?;
                sim::estimate_pk(&cfg, &query, spec.replicates)?
            } else {
                sim::estimate_joint_tail_upto(&cfg, p.theta, k_max, p.w, spec.replicates)?
            };
            for &i in &group.members {
                let est = all[spec.quantities[i].k.expect("validated") - 1];
                cells[i] = Some((fmt_sig12(est.value), fmt_sig12(est.std_error)));
            }
        }
        McClass::Coverage => {
            let eta = p.eta.expect("validated");
            let cutoff = coverage_cutoff(sim::DEFAULT_K_MAX, eta, spec.n_points);
            let cfg = sampler(p, seed, spec.n_points)?.with_mark_prob(eta)?;
            let queries: Vec<CoverageQuery> = group
                .members
                .iter()
                .map(|&i| {
                    let layers = params[i]
                        .n
                        .map(|n| std::num::NonZeroUsize::new(n).expect("validated layer count"));
                    CoverageQuery::new(p.theta, layers, cutoff, cutoff)
                })
                .collect::<Result<_, _>>()?;
            let estimates = sim::estimate_coverage_multi(&cfg, &queries, spec.replicates)?;
            for (&i, cov) in group.members.iter().zip(estimates) {
                let q = &spec.quantities[i];
                if cov.inconclusive_warning() {
                    warnings.push(format!(
                        "{}: {:.2}% of replicates had no accessible point within the \
                         search cutoff and were counted as non-covered",
                        q.column_label(),
                        100.0 * cov.inconclusive_fraction
                    ));
                }
                let scale = if q.quantity == QuantityKind::McAvgThroughput {
                    p.theta.ln_1p()
                } else {
                    1.0
                };
                cells[i] = Some((
                    fmt_sig12(cov.probability.value * scale),
                    fmt_sig12(cov.probability.std_error * scale),
                ));
            }
        }
        McClass::Single => {
            let q = &spec.quantities[first];
            let (est, scale) = evaluate_mc(spec, q, p, seed, warnings)?;
            cells[first] = Some((fmt_sig12(est.value * scale), fmt_sig12(est.std_error * scale)));
        }
    }
    Ok(())
}

/// Realization length for mean-count estimators, grown at small θ so the
/// auto-expanded decode depth keeps headroom.
fn planned_n_points(base: usize, beta: f64, theta: f64) -> usize {
    let depth = sim::depth_for_theta(beta, theta);
    base.max((2 * depth).min(MAX_AUTO_N_POINTS))
}

/// Search cutoff for the strongest accessible point: deep enough that the
/// inconclusive fraction (1−η)^cutoff stays below ~1e-4.
fn coverage_cutoff(base: usize, eta: f64, n_points: usize) -> usize {
    let needed = if eta >= 1.0 {
        1
    } else {
        (1e-4f64.ln() / (1.0 - eta).ln()).ceil() as usize
    };
    base.max(needed).min(n_points)
}

/// Estimators with a single output per run (the batched classes are
/// handled in [`evaluate_group`]).
fn evaluate_mc(
    spec: &SweepSpec,
    q: &QuantitySpec,
    p: &PointParams,
    seed: u64,
    warnings: &mut Vec<String>,
) -> Result<(SicEstimate, f64), SweepError> {
    match q.quantity {
        QuantityKind::McEn | QuantityKind::McThroughput => {
            let n_points = planned_n_points(spec.n_points, p.beta, p.theta);
            let cfg = sampler(p, seed, n_points)?;
            let query = DecodeQuery::new(p.theta, p.w, sim::DEFAULT_K_MAX)?;
            let en = sim::estimate_en(&cfg, &query, spec.replicates)?;
            if en.saturation_warning() {
                warnings.push(format!(
                    "{}: decode depth {} saturated in {:.2}% of replicates; \
                     E[N] is biased low (raise n_points)",
                    q.column_label(),
                    en.depth,
                    100.0 * en.saturation_fraction
                ));
            }
            let scale = if q.quantity == QuantityKind::McThroughput {
                p.theta.ln_1p()
            } else {
                1.0
            };
            Ok((en.mean, scale))
        }
        QuantityKind::McLaplace => {
            let k = q.k.expect("validated");
            let cfg = sampler(p, seed, spec.n_points)?;
            let est = sim::estimate_laplace_xik_ik(&cfg, k, p.theta, spec.replicates)?;
            Ok((est, 1.0))
        }
        _ => unreachable!("batched or bound quantities handled by caller"),
    }
}

fn sampler(
    p: &PointParams,
    seed: u64,
    n_points: usize,
) -> Result<SamplerConfig, SweepError> {
    let mut cfg = SamplerConfig::new(p.beta, seed)?.with_n_points(n_points)?;
    if p.a_bar != 1.0 {
        cfg = cfg.with_intensity_scale(p.a_bar)?;
    }
    Ok(cfg)
}
