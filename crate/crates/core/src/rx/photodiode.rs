use crate::error::{Error, Result};
use crate::rng::RngStream;
use crate::signal::{add_awgn, gaussian_lowpass, ComplexEnvelope, RealWaveform, Unit};

pub const ELEMENTARY_CHARGE: f64 = 1.602_176_634e-19;

#[derive(Clone, Debug, PartialEq)]
pub struct PhotodiodeSpec {
    /// A/W
    pub responsivity: f64,
    pub bandwidth_f3db: f64,
    /// One-sided input-referred thermal current density, A/sqrt(Hz).
    pub thermal_current_density: f64,
    pub shot_noise_enabled: bool,
}

impl Default for PhotodiodeSpec {
    fn default() -> Self {
        Self {
            responsivity: 0.6,
            bandwidth_f3db: 100e9,
            thermal_current_density: 20e-12,
            shot_noise_enabled: true,
        }
    }
}

impl PhotodiodeSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.responsivity > 0.0 && self.responsivity <= 1.5) {
            return Err(Error::config(format!(
                "photodiode responsivity {} A/W outside (0, 1.5]",
                self.responsivity
            )));
        }
        if !(self.bandwidth_f3db > 0.0) || !(self.thermal_current_density >= 0.0) {
            return Err(Error::config(
                "photodiode: need bandwidth > 0 and thermal density >= 0",
            ));
        }
        Ok(())
    }
}

/// Square-law detection `i = R |E|^2` with white shot and thermal noise over
/// the simulation bandwidth, then the photodiode's Gaussian response.
///
/// Shot noise uses the mean photocurrent: variance `2 q R P (fs/2)` per sample.
/// Thermal noise: `density^2 (fs/2)` per sample.
pub fn photodetect(
    field: &ComplexEnvelope,
    spec: &PhotodiodeSpec,
    stream: &mut RngStream,
) -> Result<RealWaveform> {
    photodetect_with_streams(field, spec, stream, None)
}

/// As [`photodetect`] but with thermal noise drawn from its own stream.
pub fn photodetect_with_streams(
    field: &ComplexEnvelope,
    spec: &PhotodiodeSpec,
    shot_stream: &mut RngStream,
    thermal_stream: Option<&mut RngStream>,
) -> Result<RealWaveform> {
    spec.validate()?;
    let fs = field.sample_rate();
    let current: Vec<f64> = field
        .samples()
        .iter()
        .map(|e| spec.responsivity * e.norm_sqr())
        .collect();
    let mut i = RealWaveform::new(current, fs, Unit::Ampere)?;
    if spec.shot_noise_enabled {
        let mean = i.mean();
        let sigma = (2.0 * ELEMENTARY_CHARGE * mean * fs / 2.0).sqrt();
        i = add_awgn(&i, sigma, shot_stream);
    }
    let sigma_th = spec.thermal_current_density * (fs / 2.0).sqrt();
    match thermal_stream {
        Some(s) => i = add_awgn(&i, sigma_th, s),
        None => i = add_awgn(&i, sigma_th, shot_stream),
    }
    gaussian_lowpass(&i, spec.bandwidth_f3db)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signal::{fft, gaussian_power_response};
    use num_complex::Complex64;

    fn quiet() -> PhotodiodeSpec {
        PhotodiodeSpec {
            responsivity: 0.5,
            bandwidth_f3db: 100e9,
            thermal_current_density: 0.0,
            shot_noise_enabled: false,
        }
    }

    #[test]
    fn cw_gives_r_times_p() {
        let f = ComplexEnvelope::new(vec![Complex64::new(1e-3f64.sqrt(), 0.0); 64], 1e12, 1550e-9)
            .unwrap();
        let i = photodetect(&f, &quiet(), &mut RngStream::new(0, "shot")).unwrap();
        for v in i.samples() {
            assert!((v - 0.5e-3).abs() < 1e-15);
        }
        assert_eq!(i.unit(), Unit::Ampere);
    }

    #[test]
    fn phase_insensitive() {
        let s: Vec<Complex64> = (0..256)
            .map(|k| {
                Complex64::new(
                    0.03 + 0.01 * (k as f64 * 0.3).sin(),
                    0.002 * k as f64 % 0.01,
                )
            })
            .collect();
        let f = ComplexEnvelope::new(s, 1e12, 1550e-9).unwrap();
        let rot = Complex64::from_polar(1.0, 1.234);
        let g = f.with_samples(f.samples().iter().map(|v| v * rot).collect());
        let a = photodetect(&f, &quiet(), &mut RngStream::new(0, "s")).unwrap();
        let b = photodetect(&g, &quiet(), &mut RngStream::new(0, "s")).unwrap();
        for (x, y) in a.samples().iter().zip(b.samples()) {
            assert!((x - y).abs() < 1e-15);
        }
    }

    #[test]
    fn shot_noise_variance_in_100ghz() {
        let fs = 1.12e12;
        let n = 1 << 18;
        let f = ComplexEnvelope::new(vec![Complex64::new(1e-3f64.sqrt(), 0.0); n], fs, 1550e-9)
            .unwrap();
        let spec = PhotodiodeSpec {
            responsivity: 0.5,
            bandwidth_f3db: 500e9,
            thermal_current_density: 0.0,
            shot_noise_enabled: true,
        };
        let i = photodetect(&f, &spec, &mut RngStream::new(17, "shot")).unwrap();
        let mut x: Vec<Complex64> = i
            .samples()
            .iter()
            .map(|&v| Complex64::new(v - 0.5e-3, 0.0))
            .collect();
        fft::forward(&mut x);
        let band = 100e9;
        let var: f64 = x
            .iter()
            .enumerate()
            .filter(|(k, _)| {
                let f = fft::bin_frequency(*k, n, fs).abs();
                f > 0.0 && f <= band
            })
            .map(|(_, v)| v.norm_sqr())
            .sum::<f64>()
            / (n as f64 * n as f64);
        let nominal = 2.0 * ELEMENTARY_CHARGE * 0.5e-3 * band;
        assert!(
            (var - nominal).abs() / nominal < 0.05,
            "{var:e} vs {nominal:e}"
        );
        // exact in-band value including the 500 GHz response
        let df = fs / n as f64;
        let exact: f64 = (1..=(band / df) as usize)
            .map(|k| gaussian_power_response(k as f64 * df, 500e9))
            .sum::<f64>()
            * df
            * 2.0
            * ELEMENTARY_CHARGE
            * 0.5e-3;
        assert!((var - exact).abs() / exact < 0.02);
    }

    #[test]
    fn responsivity_range_enforced() {
        let mut s = quiet();
        s.responsivity = 1.6;
        assert!(s.validate().is_err());
        s.responsivity = 0.0;
        assert!(s.validate().is_err());
    }
}
