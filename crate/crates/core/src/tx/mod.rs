//! Electrical transmitter: PRBS pattern source, 2:1 selector (ETDM)
//! multiplexing, NRZ synthesis with selector impairments, and the modulator
//! driver amplifier.

mod driver;
mod etdm;
mod nrz;
mod prbs;

pub use driver::{driver_amplify, DriverSpec};
pub use etdm::{etdm_cascade, etdm_demux, etdm_mux};
pub use nrz::{nrz_synthesize, SelectorSpec};
pub use prbs::{prbs15, BitSequence, Generator, PRBS15_PERIOD};
