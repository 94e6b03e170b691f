use crate::error::{Error, Result};
use crate::signal::{fft, ComplexEnvelope};

/// `10 log10(P_upper / P_lower)` over (0, band] and [-band, 0); the carrier
/// bin and the Nyquist bin are excluded.
pub fn sideband_asymmetry(field: &ComplexEnvelope, band: f64) -> Result<f64> {
    let fs = field.sample_rate();
    if !(band > 0.0 && band <= fs / 2.0) {
        return Err(Error::config(format!(
            "sideband band {band:e} outside (0, fs/2]"
        )));
    }
    let n = field.len();
    let mut spec = field.samples().to_vec();
    fft::forward(&mut spec);
    let (mut upper, mut lower) = (0.0, 0.0);
    for (k, x) in spec.iter().enumerate().skip(1) {
        if fft::is_nyquist(k, n) {
            continue;
        }
        let f = fft::bin_frequency(k, n, fs);
        if f > 0.0 && f <= band {
            upper += x.norm_sqr();
        } else if f < 0.0 && f >= -band {
            lower += x.norm_sqr();
        }
    }
    if upper == 0.0 || lower == 0.0 {
        return Err(Error::UndefinedMetric(
            "sideband_asymmetry: empty sideband".into(),
        ));
    }
    Ok(10.0 * (upper / lower).log10())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use std::f64::consts::PI;

    fn field(f: impl Fn(f64) -> Complex64) -> ComplexEnvelope {
        let fs = 1e12;
        let s = (0..4096).map(|i| f(i as f64 / fs)).collect();
        ComplexEnvelope::new(s, fs, 1550e-9).unwrap()
    }

    #[test]
    fn real_envelope_symmetric() {
        let e = field(|t| {
            Complex64::new(
                1.0 + 0.3 * (2.0 * PI * 37e9 * t).sin() + 0.1 * (2.0 * PI * 91e9 * t).cos(),
                0.0,
            )
        });
        assert!(sideband_asymmetry(&e, 200e9).unwrap().abs() < 1e-9);
    }

    #[test]
    fn conjugate_negates() {
        let e = field(|t| {
            Complex64::new(1.0, 0.0)
                + 0.3 * Complex64::from_polar(1.0, 2.0 * PI * 50e9 * t)
                + 0.1 * Complex64::from_polar(1.0, -2.0 * PI * 80e9 * t)
        });
        let a = sideband_asymmetry(&e, 200e9).unwrap();
        let b = sideband_asymmetry(&e.conj(), 200e9).unwrap();
        assert!(a > 5.0);
        assert!((a + b).abs() < 1e-12);
    }

    #[test]
    fn band_limit() {
        let e = field(|_| Complex64::new(1.0, 0.0));
        assert!(sideband_asymmetry(&e, 600e9).is_err());
    }
}
