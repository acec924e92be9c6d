//! Sweep configuration, execution and figure presets behind the `sicnet`
//! command-line tool.

pub mod config;
pub mod presets;
pub mod sweep;

pub use config::{ConfigError, QuantityKind, QuantitySpec, SweepSpec, SweepVar, ThetaSpec};
pub use presets::{figure_preset, PRESET_NAMES};
pub use sweep::{run_sweep, run_values, SweepError, SweepOutput};
