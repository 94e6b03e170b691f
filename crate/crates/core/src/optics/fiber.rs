use num_complex::Complex64;

use super::SPEED_OF_LIGHT;
use crate::error::{Error, Result};
use crate::signal::{apply_frequency_response, db_to_amplitude, ComplexEnvelope};

/// Standard single-mode fiber span.
#[derive(Clone, Debug, PartialEq)]
pub struct FiberSpec {
    /// m
    pub length: f64,
    /// s/m^2 (17 ps/(nm km) = 17e-6 s/m^2)
    pub dispersion: f64,
    /// dB/km
    pub attenuation: f64,
    /// Reference wavelength for `dispersion`, m.
    pub wavelength: f64,
}

impl Default for FiberSpec {
    fn default() -> Self {
        Self {
            length: 0.0,
            dispersion: 17e-6,
            attenuation: 0.2,
            wavelength: 1550e-9,
        }
    }
}

impl FiberSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.length >= 0.0) || !(self.attenuation >= 0.0) || !self.dispersion.is_finite() {
            return Err(Error::config(
                "fiber: need length >= 0, attenuation >= 0, finite dispersion",
            ));
        }
        Ok(())
    }
}

/// Group-velocity dispersion `beta2 = -D lambda^2 / (2 pi c)` in s^2/m.
pub fn beta2(dispersion: f64, wavelength: f64) -> f64 {
    -dispersion * wavelength * wavelength / (2.0 * std::f64::consts::PI * SPEED_OF_LIGHT)
}

/// Linear propagation: all-pass `H(f) = exp(j pi D lambda^2 L f^2 / c)` followed
/// by scalar attenuation. `f` is the offset from the carrier and the envelope
/// convention is `E(t) = sum_f E(f) exp(+j 2 pi f t)`.
pub fn fiber_propagate(field: &ComplexEnvelope, spec: &FiberSpec) -> Result<ComplexEnvelope> {
    spec.validate()?;
    if spec.length == 0.0 {
        return Ok(field.clone());
    }
    let k = std::f64::consts::PI * spec.dispersion * spec.wavelength.powi(2) * spec.length
        / SPEED_OF_LIGHT;
    let dispersed = apply_frequency_response(field, |f, _| Complex64::from_polar(1.0, k * f * f));
    let loss = db_to_amplitude(-spec.attenuation * spec.length / 1e3);
    Ok(if loss == 1.0 {
        dispersed
    } else {
        dispersed.scale(loss)
    })
}
