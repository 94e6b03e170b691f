//! Offline receiver: clock recovery, resampling to one sample per symbol,
//! symbol-spaced LMS decision-feedback equalization and PRBS-synchronized
//! error counting.

mod ber;
mod clock;
mod dfe;
mod receiver;
mod symbols;

pub use ber::{
    binomial_interval, count_errors, find_alignment, find_soft_alignment, Alignment, BerRecord,
    Polarity,
};
pub use clock::{clock_recover, TimingEstimate};
pub use dfe::{dfe_equalize, DfeConfig, DfeOutput};
pub use receiver::{process_capture, DspOutcome};
pub use symbols::{resample_to_symbols, SymbolSamples, GUARD_SYMBOLS};
