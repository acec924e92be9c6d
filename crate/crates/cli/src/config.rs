//! Sweep specification: the JSON schema the CLI ingests, its validation,
//! and the resolution of per-point parameters.
//!
//! A sweep varies one parameter over a range and evaluates a list of
//! quantities at every point. Each quantity is either a Monte Carlo
//! estimate (emitted with its standard error) or a named closed-form
//! bound (emitted with a regime/clamp flag column). Quantities may
//! override β, θ, W, η locally, which is how multi-curve figures are
//! expressed in a single sweep.

use std::fmt;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use sicnet::bounds::BOUND_NAMES;
use sicnet::model::{FadingSpec, ModelError, NetworkParams};

#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid sweep spec: {}", self.0)
    }
}

impl std::error::Error for ConfigError {}

impl From<ModelError> for ConfigError {
    fn from(e: ModelError) -> Self {
        Self(e.to_string())
    }
}

fn err(msg: impl Into<String>) -> ConfigError {
    ConfigError(msg.into())
}

/// The parameter being swept.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepVar {
    ThetaDb,
    Theta,
    Beta,
    Eta,
    Alpha,
    B,
    W,
    N,
}

impl SweepVar {
    pub fn column_name(self) -> &'static str {
        match self {
            Self::ThetaDb => "theta_db",
            Self::Theta => "theta",
            Self::Beta => "beta",
            Self::Eta => "eta",
            Self::Alpha => "alpha",
            Self::B => "b",
            Self::W => "w",
            Self::N => "n",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Spacing {
    #[default]
    Linear,
    Log,
}

/// Swept variable and its grid.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepAxis {
    pub var: SweepVar,
    pub start: f64,
    pub stop: f64,
    pub count: usize,
    #[serde(default)]
    pub spacing: Spacing,
}

impl SweepAxis {
    pub fn values(&self) -> Vec<f64> {
        let n = self.count;
        (0..n)
            .map(|i| {
                let t = i as f64 / (n - 1) as f64;
                match self.spacing {
                    Spacing::Linear => self.start + t * (self.stop - self.start),
                    Spacing::Log => {
                        (self.start.ln() + t * (self.stop.ln() - self.start.ln())).exp()
                    }
                }
            })
            .collect()
    }
}

/// θ with an explicit unit.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ThetaSpec {
    pub value: f64,
    pub unit: ThetaUnit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ThetaUnit {
    Db,
    Linear,
}

impl ThetaSpec {
    pub fn db(value: f64) -> Self {
        Self { value, unit: ThetaUnit::Db }
    }

    pub fn linear(value: f64) -> Self {
        Self { value, unit: ThetaUnit::Linear }
    }

    pub fn to_linear(self) -> f64 {
        match self.unit {
            ThetaUnit::Db => 10f64.powf(self.value / 10.0),
            ThetaUnit::Linear => self.value,
        }
    }
}

/// Fading kinds expressible in a config file.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum FadingKind {
    #[default]
    None,
    Exponential,
}

impl From<FadingKind> for FadingSpec {
    fn from(kind: FadingKind) -> Self {
        match kind {
            FadingKind::None => FadingSpec::None,
            FadingKind::Exponential => FadingSpec::Exponential,
        }
    }
}

/// Power-law network parameters as they appear in a config file.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetworkConfig {
    pub d: u32,
    pub alpha: f64,
    #[serde(default = "one")]
    pub a: f64,
    #[serde(default)]
    pub b: f64,
    #[serde(default)]
    pub fading: FadingKind,
}

fn one() -> f64 {
    1.0
}

impl NetworkConfig {
    pub fn build(&self) -> Result<NetworkParams, ConfigError> {
        Ok(NetworkParams::new(
            self.d,
            self.alpha,
            self.a,
            self.b,
            self.fading.into(),
        )?)
    }

    fn build_with(&self, alpha: Option<f64>, b: Option<f64>) -> Result<NetworkParams, ConfigError> {
        Ok(NetworkParams::new(
            self.d,
            alpha.unwrap_or(self.alpha),
            self.a,
            b.unwrap_or(self.b),
            self.fading.into(),
        )?)
    }
}

/// Parameters held fixed across the sweep (the axis and per-quantity
/// overrides take precedence).
#[derive(Clone, Copy, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixedParams {
    #[serde(default)]
    pub beta: Option<f64>,
    #[serde(default)]
    pub network: Option<NetworkConfig>,
    #[serde(default)]
    pub theta: Option<ThetaSpec>,
    #[serde(default)]
    pub w: f64,
    #[serde(default)]
    pub eta: Option<f64>,
}

/// What gets computed at each sweep point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuantityKind {
    /// P(N ≥ k) by simulation.
    McPk,
    /// P(ξ_k⁻¹ > θ(I_k + W)) by simulation.
    McJointTail,
    /// `E[N]` by simulation.
    McEn,
    /// `ln(1+θ) E[N]` by simulation.
    McThroughput,
    /// E[e^{−s ξ_k I_k}] by simulation, with s taken from the θ axis.
    McLaplace,
    /// Cellular coverage probability by simulation (`n` layers; absent
    /// means unbounded cancellation depth).
    McCoverage,
    /// ln(1+θ) times simulated coverage.
    McAvgThroughput,
    /// A named closed-form quantity from the bounds catalog.
    Bound,
}

/// One output column (or value/std-error pair).
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuantitySpec {
    pub quantity: QuantityKind,
    /// Bound name for `quantity = "bound"`.
    #[serde(default)]
    pub name: Option<String>,
    #[serde(default)]
    pub k: Option<usize>,
    /// Layer count for coverage quantities and series order for n-indexed
    /// bounds.
    #[serde(default)]
    pub n: Option<usize>,
    /// Column label; derived from the kind and indices when omitted.
    #[serde(default)]
    pub label: Option<String>,
    #[serde(default)]
    pub beta: Option<f64>,
    #[serde(default)]
    pub theta: Option<ThetaSpec>,
    #[serde(default)]
    pub w: Option<f64>,
    #[serde(default)]
    pub eta: Option<f64>,
}

impl QuantitySpec {
    pub fn new(quantity: QuantityKind) -> Self {
        Self {
            quantity,
            name: None,
            k: None,
            n: None,
            label: None,
            beta: None,
            theta: None,
            w: None,
            eta: None,
        }
    }

    pub fn bound(name: &str) -> Self {
        Self {
            name: Some(name.to_string()),
            ..Self::new(QuantityKind::Bound)
        }
    }

    pub fn with_k(mut self, k: usize) -> Self {
        self.k = Some(k);
        self
    }

    pub fn with_n(mut self, n: usize) -> Self {
        self.n = Some(n);
        self
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn with_beta(mut self, beta: f64) -> Self {
        self.beta = Some(beta);
        self
    }

    pub fn with_theta(mut self, theta: ThetaSpec) -> Self {
        self.theta = Some(theta);
        self
    }

    pub fn with_w(mut self, w: f64) -> Self {
        self.w = Some(w);
        self
    }

    pub fn with_eta(mut self, eta: f64) -> Self {
        self.eta = Some(eta);
        self
    }

    pub fn is_mc(&self) -> bool {
        self.quantity != QuantityKind::Bound
    }

    /// The CSV column label.
    pub fn column_label(&self) -> String {
        if let Some(label) = &self.label {
            return label.clone();
        }
        let mut base = match self.quantity {
            QuantityKind::McPk => format!("mc_p{}", self.k.unwrap_or(0)),
            QuantityKind::McJointTail => format!("mc_tail{}", self.k.unwrap_or(0)),
            QuantityKind::McEn => "mc_en".to_string(),
            QuantityKind::McThroughput => "mc_r".to_string(),
            QuantityKind::McLaplace => format!("mc_laplace{}", self.k.unwrap_or(0)),
            QuantityKind::McCoverage => match self.n {
                Some(n) => format!("mc_pc{n}"),
                None => "mc_pc_inf".to_string(),
            },
            QuantityKind::McAvgThroughput => match self.n {
                Some(n) => format!("mc_t{n}"),
                None => "mc_t_inf".to_string(),
            },
            QuantityKind::Bound => {
                let mut s = self.name.clone().unwrap_or_default();
                if let Some(k) = self.k {
                    s.push_str(&format!("_k{k}"));
                }
                if let Some(n) = self.n {
                    s.push_str(&format!("_n{n}"));
                }
                s
            }
        };
        if self.quantity != QuantityKind::Bound {
            if let Some(t) = self.theta {
                base.push_str(&format!("_th{}", compact(t.to_linear())));
            }
            if let Some(b) = self.beta {
                base.push_str(&format!("_b{}", compact(b)));
            }
            if let Some(w) = self.w {
                base.push_str(&format!("_w{}", compact(w)));
            }
            if let Some(e) = self.eta {
                base.push_str(&format!("_eta{}", compact(e)));
            }
        }
        base
    }
}

fn compact(x: f64) -> String {
    format!("{x:.3}").trim_end_matches('0').trim_end_matches('.').replace('.', "p")
}

fn default_replicates() -> u64 {
    10_000
}

fn default_n_points() -> usize {
    1000
}

/// A full sweep specification; the JSON config file mirrors this struct.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub sweep: SweepAxis,
    #[serde(default)]
    pub fixed: FixedParams,
    pub quantities: Vec<QuantitySpec>,
    #[serde(default = "default_replicates")]
    pub replicates: u64,
    #[serde(default = "default_n_points")]
    pub n_points: usize,
    #[serde(default)]
    pub master_seed: u64,
    #[serde(default)]
    pub output: Option<PathBuf>,
}

/// Fully resolved parameters for one quantity at one sweep point.
#[derive(Clone, Copy, Debug)]
pub struct PointParams {
    pub beta: f64,
    pub theta: f64,
    pub w: f64,
    pub eta: Option<f64>,
    pub n: Option<usize>,
    /// Intensity scale ā of the simulated process (1 without a network).
    pub a_bar: f64,
}

impl SweepSpec {
    /// Parse and validate a JSON spec.
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        let spec: Self = serde_json::from_str(text).map_err(|e| err(e.to_string()))?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serializes")
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let axis = &self.sweep;
        if axis.count < 2 {
            return Err(err("sweep count must be >= 2"));
        }
        if !axis.start.is_finite() || !axis.stop.is_finite() || axis.start >= axis.stop {
            return Err(err("sweep range must be finite with start < stop"));
        }
        if axis.spacing == Spacing::Log && axis.start <= 0.0 {
            return Err(err("log spacing needs start > 0"));
        }
        match axis.var {
            SweepVar::Beta => {
                if axis.start <= 0.0 || axis.stop >= 1.0 {
                    return Err(err("beta sweep must stay inside (0, 1)"));
                }
            }
            SweepVar::Theta => {
                if axis.start <= 0.0 {
                    return Err(err("theta sweep must be positive"));
                }
            }
            SweepVar::Eta => {
                if axis.start <= 0.0 || axis.stop > 1.0 {
                    return Err(err("eta sweep must stay inside (0, 1]"));
                }
            }
            SweepVar::W => {
                if axis.start < 0.0 {
                    return Err(err("noise sweep must be nonnegative"));
                }
            }
            SweepVar::Alpha => {
                if self.fixed.network.is_none() && axis.start <= 2.0 {
                    // Without a network the cellular convention β = 2/α
                    // applies, which needs α > 2.
                    return Err(err("alpha sweep needs alpha > 2 (beta = 2/alpha)"));
                }
            }
            SweepVar::B => {
                if self.fixed.network.is_none() {
                    return Err(err("sweeping b requires fixed.network"));
                }
            }
            SweepVar::N => {
                if axis.start < 1.0 {
                    return Err(err("layer sweep must start at n >= 1"));
                }
            }
            SweepVar::ThetaDb => {}
        }
        if self.fixed.beta.is_some() && self.fixed.network.is_some() {
            return Err(err("give either fixed.beta or fixed.network, not both"));
        }
        if let Some(beta) = self.fixed.beta {
            if !(beta > 0.0 && beta < 1.0) {
                return Err(err("fixed.beta must be in (0, 1)"));
            }
        }
        if let Some(net) = &self.fixed.network {
            if axis.var != SweepVar::Alpha && axis.var != SweepVar::B {
                net.build()?;
            }
        }
        if matches!(axis.var, SweepVar::Theta | SweepVar::ThetaDb) && self.fixed.theta.is_some() {
            return Err(err("fixed.theta conflicts with a theta sweep"));
        }
        if let Some(t) = self.fixed.theta {
            if !(t.to_linear() > 0.0) || !t.to_linear().is_finite() {
                return Err(err("fixed.theta must be positive"));
            }
        }
        if !(self.fixed.w >= 0.0) || !self.fixed.w.is_finite() {
            return Err(err("fixed.w must be >= 0"));
        }
        if let Some(eta) = self.fixed.eta {
            if !(eta > 0.0 && eta <= 1.0) {
                return Err(err("fixed.eta must be in (0, 1]"));
            }
        }
        if self.quantities.is_empty() {
            return Err(err("no quantities requested"));
        }
        if self.replicates < 100 {
            return Err(err("replicates must be >= 100"));
        }
        if self.n_points < 10 {
            return Err(err("n_points must be >= 10"));
        }
        let mut labels = std::collections::HashSet::new();
        for (idx, q) in self.quantities.iter().enumerate() {
            self.validate_quantity(idx, q)?;
            let label = q.column_label();
            if label.is_empty() || label.contains(',') || label.contains('\n') {
                return Err(err(format!("quantity {idx}: bad column label {label:?}")));
            }
            if !labels.insert(label.clone()) {
                return Err(err(format!("duplicate column label {label:?}")));
            }
        }
        // Resolution must succeed at every grid point.
        for value in self.sweep.values() {
            for q in &self.quantities {
                self.resolve(value, q)?;
            }
        }
        Ok(())
    }

    fn validate_quantity(&self, idx: usize, q: &QuantitySpec) -> Result<(), ConfigError> {
        let fail = |msg: String| Err(err(format!("quantity {idx}: {msg}")));
        match q.quantity {
            QuantityKind::McPk | QuantityKind::McJointTail | QuantityKind::McLaplace => {
                match q.k {
                    Some(k) if k >= 1 && k <= self.n_points => {}
                    _ => return fail("needs k in 1..=n_points".to_string()),
                }
            }
            QuantityKind::Bound => {
                let name = match &q.name {
                    Some(n) => n.as_str(),
                    None => return fail("bound quantity needs a name".to_string()),
                };
                if !BOUND_NAMES.contains(&name) {
                    return fail(format!(
                        "unknown bound {name:?}; known names: {}",
                        BOUND_NAMES.join(", ")
                    ));
                }
            }
            QuantityKind::McEn
            | QuantityKind::McThroughput
            | QuantityKind::McCoverage
            | QuantityKind::McAvgThroughput => {}
        }
        if let Some(beta) = q.beta {
            if !(beta > 0.0 && beta < 1.0) {
                return fail("beta override must be in (0, 1)".to_string());
            }
            if self.fixed.network.is_some() {
                return fail("beta override conflicts with fixed.network".to_string());
            }
        }
        if let Some(t) = q.theta {
            if !(t.to_linear() > 0.0) || !t.to_linear().is_finite() {
                return fail("theta override must be positive".to_string());
            }
        }
        if let Some(w) = q.w {
            if !(w >= 0.0) || !w.is_finite() {
                return fail("w override must be >= 0".to_string());
            }
        }
        if let Some(eta) = q.eta {
            if !(eta > 0.0 && eta <= 1.0) {
                return fail("eta override must be in (0, 1]".to_string());
            }
        }
        Ok(())
    }

    /// Resolve the parameters a quantity sees at a given axis value.
    pub fn resolve(&self, axis_value: f64, q: &QuantitySpec) -> Result<PointParams, ConfigError> {
        let axis = self.sweep.var;
        let network = match axis {
            SweepVar::Alpha => match &self.fixed.network {
                Some(net) => Some(net.build_with(Some(axis_value), None)?),
                None => None,
            },
            SweepVar::B => {
                let net = self.fixed.network.as_ref().expect("validated");
                Some(net.build_with(None, Some(axis_value))?)
            }
            _ => self.fixed.network.as_ref().map(|n| n.build()).transpose()?,
        };

        let beta = if let Some(b) = q.beta {
            b
        } else if let Some(net) = &network {
            net.beta()
        } else {
            match axis {
                SweepVar::Beta => axis_value,
                // Cellular convention when only η-style parameters exist.
                SweepVar::Alpha => 2.0 / axis_value,
                _ => self
                    .fixed
                    .beta
                    .ok_or_else(|| err("no beta: give fixed.beta or fixed.network".to_string()))?,
            }
        };
        if !(beta > 0.0 && beta < 1.0) {
            return Err(err(format!("resolved beta {beta} outside (0, 1)")));
        }

        let theta = if let Some(t) = q.theta {
            t.to_linear()
        } else {
            match axis {
                SweepVar::Theta => axis_value,
                SweepVar::ThetaDb => 10f64.powf(axis_value / 10.0),
                _ => self
                    .fixed
                    .theta
                    .ok_or_else(|| err("no theta: set fixed.theta or sweep theta".to_string()))?
                    .to_linear(),
            }
        };
        if !(theta > 0.0) || !theta.is_finite() {
            return Err(err(format!("resolved theta {theta} must be positive")));
        }

        let w = q.w.unwrap_or(match axis {
            SweepVar::W => axis_value,
            _ => self.fixed.w,
        });

        let eta = q.eta.or(match axis {
            SweepVar::Eta => Some(axis_value),
            _ => self.fixed.eta,
        });

        let n = q.n.or(match axis {
            SweepVar::N => Some(axis_value.round() as usize),
            _ => None,
        });

        let needs_eta = matches!(
            q.quantity,
            QuantityKind::McCoverage | QuantityKind::McAvgThroughput
        ) || matches!(&q.name, Some(name) if name.starts_with("hcn_"));
        if needs_eta && eta.is_none() {
            return Err(err(format!(
                "{} needs eta (fixed.eta, an eta sweep, or an override)",
                q.column_label()
            )));
        }

        let a_bar = match &network {
            Some(net) => net.intensity_scale()?,
            None => 1.0,
        };

        Ok(PointParams { beta, theta, w, eta, n, a_bar })
    }
}
