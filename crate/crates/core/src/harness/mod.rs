//! Experiment orchestration: configs, the end-to-end link, sweeps and
//! output files.

pub mod config;
pub mod csv;
pub mod demos;
pub mod link;
pub mod plots;
pub mod sweep;
pub mod waveform_io;

pub use config::{LinkConfig, ModulatorKind};
pub use demos::{demo, load_config};
pub use link::{analyse_capture, reference_for, run_single, simulate_link, LinkRun, ResultRow};
pub use sweep::{run_sweep, Axis, SweepSpec};
