//! Config ingestion, parameter sweeps, and CSV/SVG emission.

pub mod config;
pub mod output;
pub mod sweep;

pub use config::{load_config, ConfigError, LoadedConfig, RawConfig};
pub use output::{
    emit_csv, emit_force_csv, emit_svg, force_csv_string, records_csv_string, write_svg,
};
pub use sweep::{run_single, run_sweep, RunRecord, SingleShot, SweepError, SweepSpec};
