use super::{PLANCK, SPEED_OF_LIGHT};
use crate::error::{Error, Result};
use crate::rng::RngStream;
use crate::signal::{add_awgn, ComplexEnvelope};

#[derive(Clone, Debug, PartialEq)]
pub struct EdfaSpec {
    pub gain_db: f64,
    pub noise_figure_db: f64,
}

impl Default for EdfaSpec {
    fn default() -> Self {
        Self {
            gain_db: 15.0,
            noise_figure_db: 5.0,
        }
    }
}

impl EdfaSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.gain_db >= 0.0) || !self.noise_figure_db.is_finite() {
            return Err(Error::config(
                "edfa: gain must be >= 0 dB and noise figure finite",
            ));
        }
        Ok(())
    }

    /// Non-fatal remarks about physically questionable settings.
    pub fn warnings(&self) -> Vec<String> {
        let mut w = Vec::new();
        if self.noise_figure_db < 3.0 {
            w.push(format!(
                "edfa noise figure {} dB is below the 3 dB quantum limit",
                self.noise_figure_db
            ));
        }
        w
    }

    pub fn spontaneous_emission_factor(&self) -> f64 {
        10f64.powf(self.noise_figure_db / 10.0) / 2.0
    }
}

/// Single-polarization ASE density `n_sp h nu (G - 1)` in W/Hz.
pub fn ase_psd(spec: &EdfaSpec, wavelength: f64) -> f64 {
    let g = 10f64.powf(spec.gain_db / 10.0);
    let nu = SPEED_OF_LIGHT / wavelength;
    spec.spontaneous_emission_factor() * PLANCK * nu * (g - 1.0)
}

/// Power gain `G` plus white circular ASE across the simulation bandwidth.
pub fn edfa_amplify(
    field: &ComplexEnvelope,
    spec: &EdfaSpec,
    stream: &mut RngStream,
) -> Result<ComplexEnvelope> {
    spec.validate()?;
    let g = 10f64.powf(spec.gain_db / 10.0);
    let amplified = field.scale(g.sqrt());
    let sigma = (ase_psd(spec, field.wavelength()) * field.sample_rate()).sqrt();
    Ok(add_awgn(&amplified, sigma, stream))
}
