//! Waveform-level simulation of high-baud-rate on-off-keyed intensity
//! modulation / direct detection links over dispersion-uncompensated
//! single-mode fiber, with the offline receiver stack used to evaluate them:
//! clock recovery, resampling to the symbol grid, a symbol-spaced LMS
//! decision-feedback equalizer and pattern-synchronized error counting.
//!
//! The crate is organised along the signal path:
//!
//! * [`signal`]: waveform containers and spectral primitives
//! * [`tx`]: PRBS pattern, 2:1 selector multiplexing, NRZ synthesis, driver
//! * [`optics`]: laser, MZM and EAM models, fiber, EDFA, VOA
//! * [`rx`]: photodiode and sampling oscilloscope
//! * [`dsp`]: clock recovery, symbol resampling, DFE, error counting
//! * [`metrics`]: eye histograms, Q factor, sideband asymmetry, FEC verdicts
//! * [`harness`]: configs, the end-to-end link, sweeps, CSV/SVG/PGM output,
//!   waveform files

// `!(x > 0.0)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod dsp;
pub mod error;
pub mod harness;
pub mod metrics;
pub mod optics;
pub mod rng;
pub mod rx;
pub mod signal;
pub mod tx;

pub use error::{Error, Result};
