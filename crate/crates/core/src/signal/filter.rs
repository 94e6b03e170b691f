use num_complex::Complex64;

use super::{apply_frequency_response, Sampled};
use crate::error::{Error, Result};

/// Power response `|H(f)|^2 = exp(-ln2 (f/f3dB)^2)` of the Gaussian low-pass.
pub fn gaussian_power_response(f: f64, f3db: f64) -> f64 {
    (-std::f64::consts::LN_2 * (f / f3db).powi(2)).exp()
}

/// Zero-phase Gaussian low-pass, `H(f) = exp(-(ln2/2) (f/f3dB)^2)`.
///
/// Unity gain at DC and exactly -3.0103 dB at `f3db`. Used as the behavioral
/// model of every band-limited element in the link.
pub fn gaussian_lowpass<S: Sampled>(w: &S, f3db: f64) -> Result<S> {
    let nyquist = w.sample_rate() / 2.0;
    if !(f3db > 0.0 && f3db < nyquist) {
        return Err(Error::config(format!(
            "gaussian_lowpass: f3dB {f3db:e} Hz outside (0, {nyquist:e})"
        )));
    }
    Ok(apply_frequency_response(w, |f, _| {
        Complex64::new(gaussian_power_response(f, f3db).sqrt(), 0.0)
    }))
}
