use crate::error::{Error, Result};
use crate::signal::{gaussian_lowpass, resample, RealWaveform};

/// Quantizer full-scale setting.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum FullScale {
    /// Centered on the record mean, spanning +/- 4 RMS of the AC part.
    Auto,
    /// Centered on 0, spanning +/- the given value.
    Fixed(f64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct DsoSpec {
    pub sample_rate: f64,
    pub bandwidth_f3db: f64,
    /// `None` disables quantization.
    pub quantizer_bits: Option<u32>,
    pub full_scale: FullScale,
    /// Symbols to keep; `None` keeps the whole input record.
    pub record_symbols: Option<usize>,
}

impl Default for DsoSpec {
    fn default() -> Self {
        Self {
            sample_rate: 240e9,
            bandwidth_f3db: 100e9,
            quantizer_bits: Some(8),
            full_scale: FullScale::Auto,
            record_symbols: None,
        }
    }
}

impl DsoSpec {
    pub fn validate(&self, baud: f64) -> Result<()> {
        if !(self.sample_rate > baud) {
            return Err(Error::config(format!(
                "dso rate {:e} must exceed the symbol rate {baud:e}",
                self.sample_rate
            )));
        }
        if !(self.bandwidth_f3db > 0.0) {
            return Err(Error::config("dso bandwidth must be > 0"));
        }
        if let Some(b) = self.quantizer_bits {
            if !(1..=24).contains(&b) {
                return Err(Error::config(format!("quantizer bits {b} outside 1..=24")));
            }
        }
        if let FullScale::Fixed(f) = self.full_scale {
            if !(f > 0.0) {
                return Err(Error::config("fixed full scale must be > 0"));
            }
        }
        Ok(())
    }
}

/// Scope front end: Gaussian band limit at the input rate, band-limited
/// resampling to the scope rate, optional truncation, mid-rise quantization.
pub fn dso_capture(w: &RealWaveform, spec: &DsoSpec, baud: f64) -> Result<RealWaveform> {
    spec.validate(baud)?;
    if w.sample_rate() < spec.sample_rate {
        return Err(Error::config(format!(
            "input rate {:e} below scope rate {:e}",
            w.sample_rate(),
            spec.sample_rate
        )));
    }
    let band_limited = if spec.bandwidth_f3db < w.sample_rate() / 2.0 {
        gaussian_lowpass(w, spec.bandwidth_f3db)?
    } else {
        w.clone()
    };
    let mut captured = resample(&band_limited, spec.sample_rate);
    if let Some(n_sym) = spec.record_symbols {
        let needed = (n_sym as f64 * spec.sample_rate / baud).round() as usize;
        if needed > captured.len() {
            return Err(Error::config(format!(
                "record of {} samples too short for {n_sym} symbols ({needed} samples)",
                captured.len()
            )));
        }
        let kept = captured.samples()[..needed].to_vec();
        captured = captured.with_samples(kept);
    }
    match spec.quantizer_bits {
        Some(bits) => Ok(quantize(&captured, bits, spec.full_scale)),
        None => Ok(captured),
    }
}

/// Uniform mid-rise quantizer with `2^bits` levels, saturating at full scale.
pub fn quantize(w: &RealWaveform, bits: u32, full_scale: FullScale) -> RealWaveform {
    let (center, fs) = match full_scale {
        FullScale::Fixed(f) => (0.0, f),
        FullScale::Auto => {
            let m = w.mean();
            let rms =
                (w.samples().iter().map(|v| (v - m).powi(2)).sum::<f64>() / w.len() as f64).sqrt();
            (m, 4.0 * rms)
        }
    };
    if fs <= 0.0 {
        return w.clone();
    }
    let levels = (1u64 << bits) as f64;
    let step = 2.0 * fs / levels;
    let top = levels / 2.0 - 1.0;
    w.map(|v| {
        let k = ((v - center) / step).floor().clamp(-levels / 2.0, top);
        center + (k + 0.5) * step
    })
}
