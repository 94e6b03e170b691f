//! Uniform-grid waveform containers and the numeric primitives shared by every
//! stage: Gaussian band limiting, band-limited resampling, fractional delay,
//! averaged periodograms and noise injection.
//!
//! All spectral operations are circular (whole-record FFT). Records are built
//! from an integer number of pattern periods, so wrap-around is physical.

pub mod fft;
mod filter;
mod noise;
mod resample;
mod spectrum;

pub use filter::{gaussian_lowpass, gaussian_power_response};
pub use noise::add_awgn;
pub use resample::{fractional_delay, resample};
pub use spectrum::{psd, Spectrum};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Physical unit carried by a [`RealWaveform`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Unit {
    Volt,
    Ampere,
    Dimensionless,
}

impl Unit {
    pub fn tag(self) -> u8 {
        match self {
            Unit::Volt => 0,
            Unit::Ampere => 1,
            Unit::Dimensionless => 2,
        }
    }

    pub fn from_tag(tag: u8) -> Option<Self> {
        match tag {
            0 => Some(Unit::Volt),
            1 => Some(Unit::Ampere),
            2 => Some(Unit::Dimensionless),
            _ => None,
        }
    }
}

/// Real-valued electrical signal on a uniform grid.
#[derive(Clone, Debug, PartialEq)]
pub struct RealWaveform {
    samples: Vec<f64>,
    sample_rate: f64,
    unit: Unit,
}

impl RealWaveform {
    pub fn new(samples: Vec<f64>, sample_rate: f64, unit: Unit) -> Result<Self> {
        check_rate(sample_rate)?;
        if samples.is_empty() {
            return Err(Error::config("waveform has no samples"));
        }
        if let Some(i) = samples.iter().position(|v| !v.is_finite()) {
            return Err(Error::config(format!("non-finite sample at index {i}")));
        }
        Ok(Self {
            samples,
            sample_rate,
            unit,
        })
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<f64> {
        self.samples
    }

    pub fn sample_rate(&self) -> f64 {
        self.sample_rate
    }

    pub fn unit(&self) -> Unit {
        self.unit
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn duration(&self) -> f64 {
        self.samples.len() as f64 / self.sample_rate
    }

    pub fn mean(&self) -> f64 {
        self.samples.iter().sum::<f64>() / self.samples.len() as f64
    }

    pub fn mean_square(&self) -> f64 {
        self.samples.iter().map(|v| v * v).sum::<f64>() / self.samples.len() as f64
    }

    /// Peak-to-peak excursion.
    pub fn peak_to_peak(&self) -> f64 {
        let (lo, hi) = self
            .samples
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
                (lo.min(v), hi.max(v))
            });
        hi - lo
    }

    /// Same grid and unit, new samples. Samples are not re-validated.
    pub fn with_samples(&self, samples: Vec<f64>) -> Self {
        Self {
            samples,
            sample_rate: self.sample_rate,
            unit: self.unit,
        }
    }

    pub fn with_unit(mut self, unit: Unit) -> Self {
        self.unit = unit;
        self
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        self.with_samples(self.samples.iter().map(|&v| f(v)).collect())
    }

    pub fn scale(&self, k: f64) -> Self {
        self.map(|v| k * v)
    }
}

/// Complex optical field envelope in sqrt(W); `|s|^2` is instantaneous power.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexEnvelope {
    samples: Vec<Complex64>,
    sample_rate: f64,
    wavelength: f64,
}

impl ComplexEnvelope {
    pub fn new(samples: Vec<Complex64>, sample_rate: f64, wavelength: f64) -> Result<Self> {
        check_rate(sample_rate)?;
        if samples.is_empty() {
            return Err(Error::config("field has no samples"));
        }
        if !(wavelength.is_finite() && wavelength > 0.0) {
            return Err(Error::config(format!("invalid wavelength {wavelength}")));
        }
        if let Some(i) = samples
            .iter()
            .position(|v| !(v.re.is_finite() && v.im.is_finite()))
        {
            return Err(Error::config(format!("non-finite sample at index {i}")));
        }
        Ok(Self {
            samples,
            sample_rate,
            wavelength,
        })
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<Complex64> {
        self.samples
    }

    pub fn sample_rate(&self) -> f64 {
        self.sample_rate
    }

    pub fn wavelength(&self) -> f64 {
        self.wavelength
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn duration(&self) -> f64 {
        self.samples.len() as f64 / self.sample_rate
    }

    /// Average optical power in watts.
    pub fn mean_power(&self) -> f64 {
        self.samples.iter().map(|v| v.norm_sqr()).sum::<f64>() / self.samples.len() as f64
    }

    pub fn mean_power_dbm(&self) -> f64 {
        watts_to_dbm(self.mean_power())
    }

    pub fn with_samples(&self, samples: Vec<Complex64>) -> Self {
        Self {
            samples,
            sample_rate: self.sample_rate,
            wavelength: self.wavelength,
        }
    }

    pub fn scale(&self, k: f64) -> Self {
        self.with_samples(self.samples.iter().map(|&v| v * k).collect())
    }

    pub fn conj(&self) -> Self {
        self.with_samples(self.samples.iter().map(|v| v.conj()).collect())
    }
}

/// Common view of both waveform kinds for the spectral primitives.
///
/// Real waveforms are lifted to complex samples, processed, and projected
/// back onto the real axis. Operations that keep Hermitian symmetry therefore
/// return exactly what a real-only implementation would.
pub trait Sampled: Sized + Clone {
    fn sample_rate(&self) -> f64;
    fn len(&self) -> usize;
    fn to_complex(&self) -> Vec<Complex64>;
    /// Rebuild from complex samples on a (possibly new) grid.
    fn from_complex(&self, samples: Vec<Complex64>, sample_rate: f64) -> Self;
    fn is_real() -> bool;
}

impl Sampled for RealWaveform {
    fn sample_rate(&self) -> f64 {
        self.sample_rate
    }
    fn len(&self) -> usize {
        self.samples.len()
    }
    fn to_complex(&self) -> Vec<Complex64> {
        self.samples
            .iter()
            .map(|&v| Complex64::new(v, 0.0))
            .collect()
    }
    fn from_complex(&self, samples: Vec<Complex64>, sample_rate: f64) -> Self {
        Self {
            samples: samples.into_iter().map(|v| v.re).collect(),
            sample_rate,
            unit: self.unit,
        }
    }
    fn is_real() -> bool {
        true
    }
}

impl Sampled for ComplexEnvelope {
    fn sample_rate(&self) -> f64 {
        self.sample_rate
    }
    fn len(&self) -> usize {
        self.samples.len()
    }
    fn to_complex(&self) -> Vec<Complex64> {
        self.samples.clone()
    }
    fn from_complex(&self, samples: Vec<Complex64>, sample_rate: f64) -> Self {
        Self {
            samples,
            sample_rate,
            wavelength: self.wavelength,
        }
    }
    fn is_real() -> bool {
        false
    }
}

fn check_rate(sample_rate: f64) -> Result<()> {
    if sample_rate.is_finite() && sample_rate > 0.0 {
        Ok(())
    } else {
        Err(Error::config(format!("invalid sample rate {sample_rate}")))
    }
}

pub fn dbm_to_watts(dbm: f64) -> f64 {
    10f64.powf((dbm - 30.0) / 10.0)
}

pub fn watts_to_dbm(w: f64) -> f64 {
    10.0 * w.log10() + 30.0
}

pub fn db_to_amplitude(db: f64) -> f64 {
    10f64.powf(db / 20.0)
}

/// Apply `h(f)` to the spectrum of `w` (circular).
pub(crate) fn apply_frequency_response<S: Sampled>(w: &S, h: impl Fn(f64, bool) -> Complex64) -> S {
    let n = w.len();
    let fs = w.sample_rate();
    let mut buf = w.to_complex();
    fft::forward(&mut buf);
    for (k, v) in buf.iter_mut().enumerate() {
        *v *= h(fft::bin_frequency(k, n, fs), fft::is_nyquist(k, n));
    }
    fft::inverse(&mut buf);
    w.from_complex(buf, fs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_waveforms() {
        assert!(RealWaveform::new(vec![], 1.0, Unit::Volt).is_err());
        assert!(RealWaveform::new(vec![1.0], 0.0, Unit::Volt).is_err());
        assert!(RealWaveform::new(vec![f64::NAN], 1.0, Unit::Volt).is_err());
        assert!(ComplexEnvelope::new(vec![Complex64::new(1.0, 0.0)], 1.0, -1.0).is_err());
    }

    #[test]
    fn power_units() {
        assert!((dbm_to_watts(0.0) - 1e-3).abs() < 1e-18);
        assert!((watts_to_dbm(1e-3)).abs() < 1e-12);
        assert!((db_to_amplitude(20.0) - 10.0).abs() < 1e-12);
    }
}
