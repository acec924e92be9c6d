//! `sicnet`: Monte Carlo estimates and closed-form bounds for successive
//! interference cancellation in power-law Poisson networks, emitted as
//! CSV sweeps.

use std::io::Write;
use std::path::PathBuf;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use sicnet_cli::config::{
    FadingKind, FixedParams, NetworkConfig, QuantityKind, QuantitySpec, Spacing, SweepAxis,
    SweepSpec, SweepVar,
};
use sicnet_cli::presets::{figure_preset, PRESET_NAMES};
use sicnet_cli::sweep::{run_sweep, run_values, SweepOutput};

#[derive(Parser)]
#[command(
    name = "sicnet",
    about = "SIC performance in power-law Poisson networks: Monte Carlo + closed-form bounds",
    version
)]
struct Cli {
    /// Run a full sweep spec from a JSON file (instead of a subcommand).
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Master seed for all Monte Carlo streams.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Replicates per Monte Carlo estimate.
    #[arg(long, global = true)]
    replicates: Option<u64>,

    /// Worker threads (default: all cores). Estimates do not depend on it.
    #[arg(long, global = true)]
    workers: Option<usize>,

    /// Output CSV path (default: stdout).
    #[arg(long, global = true, value_name = "CSV")]
    out: Option<PathBuf>,

    /// Realization truncation length.
    #[arg(long, global = true, value_name = "N")]
    n_points: Option<usize>,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// Probability of successively decoding at least k users, with bounds.
    Pk {
        #[command(flatten)]
        axis: AxisArgs,
        /// Largest k to report (columns for k = 1..=k_max).
        #[arg(long, default_value_t = 3)]
        k_max: usize,
    },
    /// Mean number of successively decodable users, with bounds.
    En {
        #[command(flatten)]
        axis: AxisArgs,
    },
    /// Aggregate throughput `ln(1+θ)·E[N]`, with bounds and approximations.
    Throughput {
        #[command(flatten)]
        axis: AxisArgs,
    },
    /// Laplace functional E[exp(−s ξ_k I_k)] vs its closed form (s = θ axis).
    Laplace {
        #[command(flatten)]
        axis: AxisArgs,
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
    /// Heterogeneous-cellular coverage probability with SIC.
    Hcn {
        #[command(flatten)]
        axis: AxisArgs,
        /// Equivalent access probability.
        #[arg(long)]
        eta: f64,
        /// Comma-separated SIC depths; "inf" for unbounded.
        #[arg(long, default_value = "inf,1")]
        layers: String,
    },
    /// Run a named figure preset.
    Figure {
        /// Preset name (fig2, fig3, ..., fig15).
        name: String,
    },
}

#[derive(Args)]
struct AxisArgs {
    /// Shape parameter β ∈ (0, 1) of the path-loss process.
    #[arg(long, conflicts_with_all = ["dim", "alpha"])]
    beta: Option<f64>,

    /// Network dimension (with --alpha; density a‖x‖^b).
    #[arg(long, requires = "alpha")]
    dim: Option<u32>,

    /// Path-loss exponent α.
    #[arg(long)]
    alpha: Option<f64>,

    /// Density scale a.
    #[arg(long, default_value_t = 1.0)]
    density_a: f64,

    /// Density exponent b.
    #[arg(long, default_value_t = 0.0)]
    density_b: f64,

    /// Fading distribution.
    #[arg(long, value_enum, default_value_t = FadingArg::None)]
    fading: FadingArg,

    /// Sweep grid `var:start:stop:count[:log]`; vars: theta_db, theta,
    /// beta, eta, alpha, b, w, n.
    #[arg(long, value_name = "SPEC")]
    sweep: Option<String>,

    /// Single-point run at this linear θ.
    #[arg(long, conflicts_with_all = ["theta_db", "sweep"])]
    theta: Option<f64>,

    /// Single-point run at this θ in dB.
    #[arg(long, conflicts_with = "sweep")]
    theta_db: Option<f64>,

    /// Noise power W (0 = interference-limited).
    #[arg(long, default_value_t = 0.0)]
    w: f64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FadingArg {
    None,
    Exponential,
}

impl From<FadingArg> for FadingKind {
    fn from(f: FadingArg) -> Self {
        match f {
            FadingArg::None => FadingKind::None,
            FadingArg::Exponential => FadingKind::Exponential,
        }
    }
}

fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e:#}");
        std::process::exit(1);
    }
}

fn run() -> Result<()> {
    let cli = Cli::parse();
    let runner = || -> Result<()> {
        let (spec, point) = build_spec(&cli)?;
        let output = match point {
            Some(value) => {
                spec.validate().map_err(|e| anyhow!("{e}"))?;
                run_values(&spec, &[value])
            }
            None => run_sweep(&spec),
        }
        .map_err(|e| anyhow!("{e}"))?;
        emit(&cli, &spec, output)
    };
    match cli.workers {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .context("building worker pool")?;
            pool.install(runner)
        }
        None => runner(),
    }
}

/// Build the sweep spec from either --config or the subcommand, plus an
/// optional single-point axis value.
fn build_spec(cli: &Cli) -> Result<(SweepSpec, Option<f64>)> {
    let mut point = None;
    let mut spec = if let Some(path) = &cli.config {
        if cli.command.is_some() {
            bail!("--config replaces the subcommand; give one or the other");
        }
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading {}", path.display()))?;
        SweepSpec::from_json(&text).map_err(|e| anyhow!("{e}"))?
    } else {
        match &cli.command {
            None => bail!("give a subcommand or --config <file>; see --help"),
            Some(Command::Figure { name }) => figure_preset(name).ok_or_else(|| {
                anyhow!("unknown preset {name:?}; known: {}", PRESET_NAMES.join(", "))
            })?,
            Some(Command::Pk { axis, k_max }) => {
                if *k_max == 0 {
                    bail!("--k-max must be >= 1");
                }
                let mut qs = Vec::new();
                for k in 1..=*k_max {
                    qs.push(QuantitySpec::new(QuantityKind::McPk).with_k(k));
                    qs.push(QuantitySpec::bound("hr_lb").with_k(k));
                    qs.push(QuantitySpec::bound("lr_lb").with_k(k));
                    qs.push(QuantitySpec::bound("combined_ub").with_k(k));
                    qs.push(QuantitySpec::bound("smud_lb").with_k(k));
                    qs.push(QuantitySpec::bound("smud_ub").with_k(k));
                    qs.push(QuantitySpec::bound("thm1_exact").with_k(k));
                }
                from_axis(axis, qs, &mut point)?
            }
            Some(Command::En { axis }) => from_axis(
                axis,
                vec![
                    QuantitySpec::new(QuantityKind::McEn),
                    QuantitySpec::bound("en_lb"),
                    QuantitySpec::bound("en_lr_lb"),
                    QuantitySpec::bound("en_ub"),
                    QuantitySpec::bound("en_smud_ub"),
                ],
                &mut point,
            )?,
            Some(Command::Throughput { axis }) => {
                let mut qs = vec![
                    QuantitySpec::new(QuantityKind::McThroughput),
                    QuantitySpec::bound("r_lt_approx"),
                    QuantitySpec::bound("r_asymptotic"),
                ];
                if axis.w > 0.0 {
                    qs.push(QuantitySpec::bound("noisy_r_ub"));
                }
                from_axis(axis, qs, &mut point)?
            }
            Some(Command::Laplace { axis, k }) => from_axis(
                axis,
                vec![
                    QuantitySpec::new(QuantityKind::McLaplace).with_k(*k),
                    QuantitySpec::bound("laplace_xik_ik").with_k(*k),
                ],
                &mut point,
            )?,
            Some(Command::Hcn { axis, eta, layers }) => {
                let mut qs = Vec::new();
                for layer in layers.split(',') {
                    let layer = layer.trim();
                    if layer.eq_ignore_ascii_case("inf") {
                        qs.push(QuantitySpec::new(QuantityKind::McCoverage));
                    } else {
                        let n: usize = layer
                            .parse()
                            .map_err(|_| anyhow!("bad --layers entry {layer:?}"))?;
                        qs.push(QuantitySpec::new(QuantityKind::McCoverage).with_n(n));
                    }
                }
                qs.push(QuantitySpec::bound("hcn_pc_sic_lb"));
                qs.push(QuantitySpec::bound("hcn_pc_sic_ub"));
                qs.push(QuantitySpec::bound("hcn_pc_sic_smud_ub"));
                qs.push(QuantitySpec::bound("hcn_pc_sic_lta"));
                qs.push(QuantitySpec::bound("hcn_pc_no_sic"));
                let mut spec = from_axis(axis, qs, &mut point)?;
                spec.fixed.eta = Some(*eta);
                spec
            }
        }
    };

    if let Some(seed) = cli.seed {
        spec.master_seed = seed;
    }
    if let Some(replicates) = cli.replicates {
        spec.replicates = replicates;
    }
    if let Some(n_points) = cli.n_points {
        spec.n_points = n_points;
    }
    if let Some(out) = &cli.out {
        spec.output = Some(out.clone());
    }
    Ok((spec, point))
}

/// Default θ grid for subcommand sweeps.
const DEFAULT_AXIS: SweepAxis = SweepAxis {
    var: SweepVar::ThetaDb,
    start: -10.0,
    stop: 20.0,
    count: 31,
    spacing: Spacing::Linear,
};

fn from_axis(
    axis: &AxisArgs,
    quantities: Vec<QuantitySpec>,
    point: &mut Option<f64>,
) -> Result<SweepSpec> {
    let mut fixed = FixedParams::default();
    if let Some(alpha) = axis.alpha {
        fixed.network = Some(NetworkConfig {
            d: axis.dim.unwrap_or(2),
            alpha,
            a: axis.density_a,
            b: axis.density_b,
            fading: axis.fading.into(),
        });
    } else if let Some(beta) = axis.beta {
        fixed.beta = Some(beta);
    } else {
        bail!("give --beta or --alpha (with optional --dim/--density-a/--density-b/--fading)");
    }
    fixed.w = axis.w;

    let sweep = if let Some(spec) = &axis.sweep {
        parse_sweep(spec)?
    } else if let Some(theta) = axis.theta.or(axis.theta_db.map(|db| 10f64.powf(db / 10.0))) {
        if !(theta > 0.0) {
            bail!("theta must be positive");
        }
        *point = Some(theta);
        // Synthetic two-point axis; only the single resolved value runs.
        SweepAxis {
            var: SweepVar::Theta,
            start: theta * 0.5,
            stop: theta * 2.0,
            count: 2,
            spacing: Spacing::Linear,
        }
    } else {
        DEFAULT_AXIS
    };

    Ok(SweepSpec {
        sweep,
        fixed,
        quantities,
        replicates: 10_000,
        n_points: 1000,
        master_seed: 0,
        output: None,
    })
}

/// Parse `var:start:stop:count[:log]`.
fn parse_sweep(text: &str) -> Result<SweepAxis> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 4 && parts.len() != 5 {
        bail!("--sweep wants var:start:stop:count[:log], got {text:?}");
    }
    let var = match parts[0] {
        "theta_db" => SweepVar::ThetaDb,
        "theta" => SweepVar::Theta,
        "beta" => SweepVar::Beta,
        "eta" => SweepVar::Eta,
        "alpha" => SweepVar::Alpha,
        "b" => SweepVar::B,
        "w" => SweepVar::W,
        "n" => SweepVar::N,
        other => bail!("unknown sweep variable {other:?}"),
    };
    let start: f64 = parts[1].parse().context("sweep start")?;
    let stop: f64 = parts[2].parse().context("sweep stop")?;
    let count: usize = parts[3].parse().context("sweep count")?;
    let spacing = match parts.get(4) {
        None => Spacing::Linear,
        Some(&"log") => Spacing::Log,
        Some(&"linear") => Spacing::Linear,
        Some(other) => bail!("unknown spacing {other:?}"),
    };
    Ok(SweepAxis { var, start, stop, count, spacing })
}

fn emit(cli: &Cli, spec: &SweepSpec, output: SweepOutput) -> Result<()> {
    for warning in &output.warnings {
        eprintln!("warning: {warning}");
    }
    let path = cli.out.clone().or_else(|| spec.output.clone());
    match path {
        Some(path) => {
            output
                .write_to(&path)
                .map_err(|e| anyhow!("writing {}: {e}", path.display()))?;
            eprintln!("wrote {}", path.display());
        }
        None => {
            std::io::stdout().write_all(output.csv.as_bytes())?;
        }
    }
    Ok(())
}
