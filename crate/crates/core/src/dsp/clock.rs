use std::f64::consts::PI;

use num_complex::Complex64;

use super::symbols::resample_to_symbols;
use crate::error::{Error, Result};
use crate::signal::{resample, RealWaveform};

/// Recovered symbol-clock phase.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TimingEstimate {
    /// Delay of the symbol boundaries relative to `t = k / baud`, in UI,
    /// wrapped to [-0.5, 0.5).
    pub phase_offset: f64,
    /// Clock tone magnitude over the RMS of the neighboring DFT bins, dB.
    pub confidence_db: f64,
}

const NEIGHBORS: i64 = 8;
const MIN_SYMBOLS: f64 = 4096.0;

/// Square-law timing recovery over the whole record.
///
/// The mean-removed waveform is upsampled by two (so its square does not
/// alias), squared, and projected onto a single DFT bin at the symbol rate.
/// Squared NRZ dips at every transition, so the tone phase is `pi` when the
/// boundaries sit on `k / baud`; the offset from that is the clock phase.
///
/// Dispersion and tight filtering can invert that tone (the square peaks at
/// transitions instead), which leaves a half-UI ambiguity. Both candidates are
/// sampled and the one whose symbol values are more two-valued (lower
/// kurtosis) wins.
pub fn clock_recover(w: &RealWaveform, baud: f64) -> Result<TimingEstimate> {
    let fs = w.sample_rate();
    if !(fs > baud) {
        return Err(Error::config(format!(
            "clock_recover: sample rate {fs:e} <= baud {baud:e}"
        )));
    }
    if w.duration() * baud < MIN_SYMBOLS {
        return Err(Error::config(format!(
            "clock_recover: record spans {:.0} symbols, need >= 4096",
            w.duration() * baud
        )));
    }
    let mean = w.mean();
    let centered = w.map(|v| v - mean);
    let up = resample(&centered, 2.0 * fs);
    let rate = up.sample_rate();
    let squared: Vec<f64> = up.samples().iter().map(|v| v * v).collect();

    let tone = project(&squared, baud / rate);
    let df = 1.0 / up.duration();
    let noise: Vec<f64> = (-NEIGHBORS..=NEIGHBORS)
        .filter(|&k| k != 0)
        .map(|k| project(&squared, (baud + k as f64 * df) / rate).norm_sqr())
        .collect();
    let noise_rms = (noise.iter().sum::<f64>() / noise.len() as f64).sqrt();
    let confidence_db = if tone.norm() == 0.0 {
        f64::NEG_INFINITY
    } else if noise_rms == 0.0 {
        300.0
    } else {
        (20.0 * (tone.norm() / noise_rms).log10()).min(300.0)
    };
    if !(confidence_db >= 6.0) {
        return Err(Error::Timing { confidence_db });
    }
    let phase = wrap_half((PI - tone.arg()) / (2.0 * PI));
    let flipped = wrap_half(phase + 0.5);
    let phase_offset =
        if kurtosis_at(&centered, baud, flipped) < kurtosis_at(&centered, baud, phase) {
            flipped
        } else {
            phase
        };
    Ok(TimingEstimate {
        phase_offset,
        confidence_db,
    })
}

/// `E[x^4] / E[x^2]^2` of the symbol samples taken at `phase`: 1 for a clean
/// two-level signal, 3 for Gaussian.
fn kurtosis_at(centered: &RealWaveform, baud: f64, phase: f64) -> f64 {
    let est = TimingEstimate {
        phase_offset: phase,
        confidence_db: 0.0,
    };
    let v = resample_to_symbols(centered, baud, &est).values;
    let n = v.len() as f64;
    let m = v.iter().sum::<f64>() / n;
    let (m2, m4) = v.iter().fold((0.0, 0.0), |(a, b), x| {
        let d = (x - m) * (x - m);
        (a + d, b + d * d)
    });
    if m2 == 0.0 {
        return f64::INFINITY;
    }
    (m4 / n) / (m2 / n).powi(2)
}

/// `sum x[n] exp(-j 2 pi nu n)` for normalized frequency `nu`.
fn project(x: &[f64], nu: f64) -> Complex64 {
    x.iter()
        .enumerate()
        .map(|(n, &v)| {
            let ph = -2.0 * PI * (nu * n as f64).fract();
            Complex64::from_polar(v, ph)
        })
        .sum()
}

pub(crate) fn wrap_half(x: f64) -> f64 {
    let w = x - x.floor();
    if w >= 0.5 {
        w - 1.0
    } else {
        w
    }
}
