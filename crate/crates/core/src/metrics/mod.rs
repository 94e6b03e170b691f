//! Signal-quality measurements: Q factor, eye histograms, optical sideband
//! asymmetry and hard-decision FEC verdicts.

mod eye;
mod fec;
mod q;
mod sideband;

pub use eye::{eye_histogram, EyeHistogram};
pub use fec::{fec_verdict, FecVerdict, HD_FEC_THRESHOLD};
pub use q::q_factor;
pub use sideband::sideband_asymmetry;
