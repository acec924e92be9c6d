//! Performance of successive interference cancellation in power-law
//! Poisson networks, computed two ways and cross-validated:
//!
//! * exact Monte Carlo simulation of the threshold decoding model on the
//!   path-loss process ([`plpf`], [`sim`]), and
//! * the full catalog of closed-form bounds and approximations
//!   ([`bounds`]), backed by self-contained special-function numerics
//!   ([`specfun`]).
//!
//! [`model`] holds the network parameterization and the reductions that
//! collapse a d-dimensional fading network, or a K-tier cellular layout,
//! onto the one-dimensional standard process that both pipelines consume.

pub mod bounds;
pub mod model;
pub mod plpf;
pub mod rng;
pub mod sim;
pub mod specfun;

pub use bounds::{BoundContext, BoundReport, BoundsError, Flagged};
pub use model::{FadingSpec, HcnParams, HcnReduction, ModelError, NetworkParams, TierParams};
pub use plpf::{PlpfError, PlpfRealization, SamplerConfig, TailMode};
pub use sim::{
    CoverageEstimate, CoverageOutcome, CoverageQuery, DecodeQuery, EnEstimate, SicEstimate,
    SimError,
};
