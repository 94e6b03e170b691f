use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::signal::{dbm_to_watts, ComplexEnvelope};

#[derive(Clone, Debug, PartialEq)]
pub struct LaserSpec {
    pub power_dbm: f64,
    pub wavelength: f64,
}

impl Default for LaserSpec {
    fn default() -> Self {
        Self {
            power_dbm: 13.0,
            wavelength: 1550e-9,
        }
    }
}

impl LaserSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.power_dbm <= 20.0) {
            return Err(Error::config(format!(
                "laser power {} dBm > 20",
                self.power_dbm
            )));
        }
        if !(1.52e-6..=1.57e-6).contains(&self.wavelength) {
            return Err(Error::config(format!(
                "laser wavelength {:e} m outside C-band",
                self.wavelength
            )));
        }
        Ok(())
    }
}

/// Constant, zero-phase field of amplitude `sqrt(P)`.
pub fn cw_laser(spec: &LaserSpec, n_samples: usize, sample_rate: f64) -> Result<ComplexEnvelope> {
    spec.validate()?;
    let a = dbm_to_watts(spec.power_dbm).sqrt();
    ComplexEnvelope::new(
        vec![Complex64::new(a, 0.0); n_samples],
        sample_rate,
        spec.wavelength,
    )
}
