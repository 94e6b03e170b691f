//! Direct detection and capture: square-law photodiode with shot and thermal
//! noise, and a real-time sampling oscilloscope.

mod dso;
mod photodiode;

pub use dso::{dso_capture, quantize, DsoSpec, FullScale};
pub use photodiode::{photodetect, photodetect_with_streams, PhotodiodeSpec, ELEMENTARY_CHARGE};
