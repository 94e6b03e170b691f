use num_complex::Complex64;

use super::Sampled;
use crate::rng::RngStream;

/// Add white Gaussian noise of standard deviation `sigma` per sample.
///
/// Complex signals receive circularly symmetric noise with `E|n|^2 = sigma^2`.
/// `sigma == 0` returns the input untouched and consumes no randomness.
pub fn add_awgn<S: Sampled>(w: &S, sigma: f64, stream: &mut RngStream) -> S {
    assert!(sigma >= 0.0, "add_awgn: negative sigma");
    if sigma == 0.0 {
        return w.clone();
    }
    let mut x = w.to_complex();
    if S::is_real() {
        for v in x.iter_mut() {
            v.re += sigma * stream.standard_normal();
        }
    } else {
        let s = sigma / std::f64::consts::SQRT_2;
        for v in x.iter_mut() {
            let re = stream.standard_normal();
            let im = stream.standard_normal();
            *v += Complex64::new(s * re, s * im);
        }
    }
    w.from_complex(x, w.sample_rate())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signal::{ComplexEnvelope, RealWaveform, Unit};

    #[test]
    fn zero_sigma_is_identity() {
        let w = RealWaveform::new(vec![1.0, 2.0, 3.0], 1.0, Unit::Volt).unwrap();
        let mut s = RngStream::new(1, "t");
        assert_eq!(add_awgn(&w, 0.0, &mut s), w);
    }

    #[test]
    fn unit_variance_real() {
        let w = RealWaveform::new(vec![0.0; 1_000_000], 1.0, Unit::Volt).unwrap();
        let mut s = RngStream::new(2024, "thermal");
        let y = add_awgn(&w, 1.0, &mut s);
        let mean = y.mean();
        let var = y.samples().iter().map(|v| (v - mean).powi(2)).sum::<f64>() / y.len() as f64;
        assert!((0.995..=1.005).contains(&var), "var {var}");
    }

    #[test]
    fn complex_noise_is_circular() {
        let w =
            ComplexEnvelope::new(vec![Complex64::new(0.0, 0.0); 200_000], 1.0, 1.55e-6).unwrap();
        let mut s = RngStream::new(5, "ase");
        let y = add_awgn(&w, 2.0, &mut s);
        let n = y.len() as f64;
        let p = y.mean_power();
        let re2 = y.samples().iter().map(|v| v.re * v.re).sum::<f64>() / n;
        let cross = y.samples().iter().map(|v| v.re * v.im).sum::<f64>() / n;
        assert!((p - 4.0).abs() < 0.05);
        assert!((re2 - 2.0).abs() < 0.05);
        assert!(cross.abs() < 0.05);
    }

    #[test]
    fn same_seed_same_noise() {
        let w = RealWaveform::new(vec![0.0; 1000], 1.0, Unit::Volt).unwrap();
        let a = add_awgn(&w, 1.0, &mut RngStream::new(9, "x"));
        let b = add_awgn(&w, 1.0, &mut RngStream::new(9, "x"));
        assert_eq!(a, b);
    }
}
