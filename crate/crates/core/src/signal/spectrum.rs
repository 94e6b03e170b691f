use super::{fft, Sampled};
use crate::error::{Error, Result};

/// Two-sided power spectrum on resolution bins centered symmetrically about 0 Hz.
///
/// `bin_power` holds the power (W for fields, unit^2 for electrical signals)
/// falling in each bin, so `sum(bin_power)` equals the time-domain mean power.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    pub frequencies: Vec<f64>,
    pub bin_power: Vec<f64>,
    pub bin_width: Vec<f64>,
    pub resolution_bw: f64,
}

impl Spectrum {
    /// Power spectral density in unit^2/Hz (W/Hz for fields).
    pub fn density(&self) -> Vec<f64> {
        self.bin_power
            .iter()
            .zip(&self.bin_width)
            .map(|(p, w)| p / w)
            .collect()
    }

    /// Density in dBm/Hz; only meaningful for optical fields.
    pub fn density_dbm_per_hz(&self) -> Vec<f64> {
        self.density()
            .into_iter()
            .map(|d| 10.0 * d.max(1e-300).log10() + 30.0)
            .collect()
    }

    pub fn total_power(&self) -> f64 {
        self.bin_power.iter().sum()
    }

    /// Index of the bin containing 0 Hz.
    pub fn carrier_index(&self) -> usize {
        self.frequencies
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
            .map(|(i, _)| i)
            .unwrap_or(0)
    }
}

/// Averaged periodogram of the whole record.
///
/// The full-record periodogram is averaged over groups of `K` adjacent DFT bins
/// (`K` odd, `K * fs / N ~= resolution_bw`), with the central group centered on
/// 0 Hz. Groups at the band edges may be narrower. Because each DFT bin lands in
/// exactly one group, integrated power equals time-domain power to rounding.
pub fn psd<S: Sampled>(w: &S, resolution_bw: f64) -> Result<Spectrum> {
    let n = w.len();
    let fs = w.sample_rate();
    let df = fs / n as f64;
    if !(resolution_bw >= df * (1.0 - 1e-12)) {
        return Err(Error::config(format!(
            "psd: resolution {resolution_bw:e} Hz finer than record allows ({df:e} Hz)"
        )));
    }
    let mut k = (resolution_bw / df).round().max(1.0) as usize;
    if k.is_multiple_of(2) {
        k += 1;
    }
    let mut x = w.to_complex();
    fft::forward(&mut x);
    let norm = 1.0 / (n as f64 * n as f64);

    // signed bin indices from -floor((n-1)/2) .. floor(n/2)
    let lo = -(((n - 1) / 2) as i64);
    let hi = (n / 2) as i64;
    let half = (k / 2) as i64;
    let k_i = k as i64;
    let first_group = (lo + half).div_euclid(k_i) - 1;
    let last_group = (hi + half).div_euclid(k_i) + 1;

    let mut frequencies = Vec::new();
    let mut bin_power = Vec::new();
    let mut bin_width = Vec::new();
    for g in first_group..=last_group {
        let start = (g * k_i - half).max(lo);
        let end = (g * k_i + half).min(hi);
        if start > end {
            continue;
        }
        let p: f64 = (start..=end)
            .map(|s| x[s.rem_euclid(n as i64) as usize].norm_sqr() * norm)
            .sum();
        frequencies.push(g as f64 * k as f64 * df);
        bin_power.push(p);
        bin_width.push((end - start + 1) as f64 * df);
    }
    Ok(Spectrum {
        frequencies,
        bin_power,
        bin_width,
        resolution_bw: k as f64 * df,
    })
}
