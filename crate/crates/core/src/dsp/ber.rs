use num_complex::Complex64;
use statrs::distribution::{Beta, ContinuousCDF};

use crate::error::{Error, Result};
use crate::signal::fft;
use crate::tx::BitSequence;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Polarity {
    Normal,
    Inverted,
}

impl Polarity {
    pub fn as_str(self) -> &'static str {
        match self {
            Polarity::Normal => "normal",
            Polarity::Inverted => "inverted",
        }
    }
}

/// `decided[i] = reference[(i + offset) mod N]`, complemented if inverted.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Alignment {
    pub offset: usize,
    pub polarity: Polarity,
    /// Normalized +-1 correlation at the best shift, in [0, 1].
    pub correlation: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BerRecord {
    pub errors: u64,
    pub bits: u64,
    pub ber: f64,
    pub alignment_offset: usize,
    pub polarity: Polarity,
    /// Exact binomial 95% interval; upper bound is 3/bits when errors = 0.
    pub ci_low: f64,
    pub ci_high: f64,
}

impl BerRecord {
    pub fn from_counts(errors: u64, bits: u64, alignment: Alignment) -> Self {
        let (ci_low, ci_high) = binomial_interval(errors, bits);
        BerRecord {
            errors,
            bits,
            ber: errors as f64 / bits as f64,
            alignment_offset: alignment.offset,
            polarity: alignment.polarity,
            ci_low,
            ci_high,
        }
    }

    /// Fewer than 10 errors: the estimate is an error floor at best.
    pub fn unreliable(&self) -> bool {
        self.errors < 10
    }

    pub fn reportable(&self) -> bool {
        self.bits >= 100_000
    }
}

/// Clopper-Pearson 95% interval for `k` errors in `n` trials.
pub fn binomial_interval(k: u64, n: u64) -> (f64, f64) {
    if n == 0 {
        return (0.0, 1.0);
    }
    let (kf, nf) = (k as f64, n as f64);
    if k == 0 {
        return (0.0, (3.0 / nf).min(1.0));
    }
    let lo = Beta::new(kf, nf - kf + 1.0)
        .map(|b| b.inverse_cdf(0.025))
        .unwrap_or(0.0);
    let hi = if k == n {
        1.0
    } else {
        Beta::new(kf + 1.0, nf - kf)
            .map(|b| b.inverse_cdf(0.975))
            .unwrap_or(1.0)
    };
    (lo, hi)
}

/// Best circular alignment of `decided` against one period of `reference`,
/// over every shift and both polarities.
pub fn find_alignment(decided: &[u8], reference: &[u8]) -> Result<Alignment> {
    let x: Vec<f64> = decided
        .iter()
        .map(|&b| if b != 0 { 1.0 } else { -1.0 })
        .collect();
    let (offset, best, _) = correlate(&x, reference)?;
    let correlation = (best / decided.len() as f64).abs().min(1.0);
    if correlation < 0.2 {
        return Err(Error::SyncFailure { correlation });
    }
    Ok(Alignment {
        offset,
        polarity: if best < 0.0 {
            Polarity::Inverted
        } else {
            Polarity::Normal
        },
        correlation,
    })
}

/// Alignment from soft samples: the shift whose linear correlation with the
/// reference stands out from all others. Works on signals too distorted to
/// slice. Fails unless the peak exceeds 8 times the RMS of the other shifts.
pub fn find_soft_alignment(x: &[f64], reference: &[u8]) -> Result<Alignment> {
    let (offset, best, off_rms) = correlate(x, reference)?;
    let energy = x.iter().map(|v| v * v).sum::<f64>().sqrt() * (x.len() as f64).sqrt();
    let correlation = if energy > 0.0 {
        (best / energy).abs()
    } else {
        0.0
    };
    if !(best.abs() > 8.0 * off_rms) {
        return Err(Error::SyncFailure { correlation });
    }
    Ok(Alignment {
        offset,
        polarity: if best < 0.0 {
            Polarity::Inverted
        } else {
            Polarity::Normal
        },
        correlation,
    })
}

/// Circular correlation `c[o] = sum_i x[i] s[(i + o) mod N]`, with `s` the
/// reference mapped to +-1. Returns the peak shift, its value and the RMS
/// of all other shifts.
fn correlate(x: &[f64], reference: &[u8]) -> Result<(usize, f64, f64)> {
    let n = reference.len();
    if n == 0 || x.is_empty() {
        return Err(Error::config("alignment needs non-empty sequences"));
    }
    let mut folded = vec![Complex64::new(0.0, 0.0); n];
    for (i, &v) in x.iter().enumerate() {
        folded[i % n].re += v;
    }
    let mut r: Vec<Complex64> = reference
        .iter()
        .map(|&b| Complex64::new(if b != 0 { 1.0 } else { -1.0 }, 0.0))
        .collect();
    fft::forward(&mut folded);
    fft::forward(&mut r);
    let mut corr: Vec<Complex64> = folded.iter().zip(&r).map(|(a, b)| a.conj() * b).collect();
    fft::inverse(&mut corr);
    let (offset, best) = corr
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.re.abs().total_cmp(&b.1.re.abs()))
        .map(|(i, c)| (i, c.re))
        .unwrap();
    let others = corr
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != offset)
        .map(|(_, c)| c.re * c.re);
    let off_rms = if n > 1 {
        (others.sum::<f64>() / (n - 1) as f64).sqrt()
    } else {
        0.0
    };
    Ok((offset, best, off_rms))
}

/// Align `decided` to the cyclic `reference` and count bit errors.
pub fn count_errors(decided: &BitSequence, reference: &BitSequence) -> Result<BerRecord> {
    let al = find_alignment(decided.bits(), reference.bits())?;
    Ok(count_aligned(decided.bits(), reference.bits(), al))
}

pub(crate) fn count_aligned(decided: &[u8], reference: &[u8], al: Alignment) -> BerRecord {
    let n = reference.len();
    let flip = (al.polarity == Polarity::Inverted) as u8;
    let errors = decided
        .iter()
        .enumerate()
        .filter(|(i, &b)| b != reference[(i + al.offset) % n] ^ flip)
        .count() as u64;
    BerRecord::from_counts(errors, decided.len() as u64, al)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tx::prbs15;

    fn reference() -> BitSequence {
        prbs15(0x7fff).unwrap()
    }

    fn shifted(r: &BitSequence, shift: usize, len: usize) -> Vec<u8> {
        let b = r.bits();
        (0..len).map(|i| b[(i + shift) % b.len()]).collect()
    }

    #[test]
    fn shifted_reference_has_no_errors() {
        let r = reference();
        let d = BitSequence::new(shifted(&r, 1234, 100_000)).unwrap();
        let rec = count_errors(&d, &r).unwrap();
        assert_eq!(rec.errors, 0);
        assert_eq!(rec.alignment_offset, 1234);
        assert_eq!(rec.polarity, Polarity::Normal);
        assert_eq!(rec.ci_high, 3.0 / 100_000.0);
    }

    #[test]
    fn inverted_reference() {
        let r = reference();
        let d = r.inverted();
        let rec = count_errors(&d, &r).unwrap();
        assert_eq!(rec.errors, 0);
        assert_eq!(rec.alignment_offset, 0);
        assert_eq!(rec.polarity, Polarity::Inverted);
    }

    #[test]
    fn planted_errors_counted() {
        let r = reference();
        let mut bits = shifted(&r, 777, 327_670);
        let positions: Vec<usize> = (0..50).map(|k| 13 + k * 6_551).collect();
        for &p in &positions {
            bits[p] ^= 1;
        }
        let d = BitSequence::new(bits).unwrap();
        let rec = count_errors(&d, &r).unwrap();
        assert_eq!(rec.errors, 50);
        assert_eq!(rec.bits, 327_670);
        assert_eq!(rec.ber, 50.0 / 327_670.0);
        assert!(rec.ci_low < rec.ber && rec.ber < rec.ci_high);
        assert!(!rec.unreliable());
    }

    #[test]
    fn self_count_is_zero_for_every_shift_sample() {
        let r = reference();
        for shift in [0, 1, 16383, 32766] {
            let d = BitSequence::new(shifted(&r, shift, 32767)).unwrap();
            let rec = count_errors(&d, &r).unwrap();
            assert_eq!((rec.errors, rec.alignment_offset), (0, shift));
        }
    }

    #[test]
    fn random_bits_fail_sync() {
        let mut s = crate::rng::RngStream::new(4, "x");
        let bits: Vec<u8> = (0..50_000).map(|_| (s.uniform() < 0.5) as u8).collect();
        let d = BitSequence::new(bits).unwrap();
        assert!(matches!(
            count_errors(&d, &reference()),
            Err(Error::SyncFailure { .. })
        ));
    }

    #[test]
    fn soft_alignment_through_heavy_isi() {
        let r = reference();
        let bits = shifted(&r, 4321, 65_534);
        let s: Vec<f64> = bits
            .iter()
            .map(|&b| if b != 0 { 1.0 } else { -1.0 })
            .collect();
        // main tap at lag 2, strong pre and post cursors, inverted
        let h = [0.6, -0.7, -1.0, 0.8, 0.5];
        let x: Vec<f64> = (0..s.len())
            .map(|i| {
                h.iter()
                    .enumerate()
                    .map(|(k, hk)| hk * s[(i + s.len() + 2 - k) % s.len()])
                    .sum()
            })
            .collect();
        let sliced: Vec<u8> = x.iter().map(|&v| (v > 0.0) as u8).collect();
        let hard = find_alignment(&sliced, r.bits());
        let soft = find_soft_alignment(&x, r.bits()).unwrap();
        assert_eq!((soft.offset, soft.polarity), (4321, Polarity::Inverted));
        assert!(hard.map(|a| a.offset != 4321).unwrap_or(true) || soft.correlation > 0.4);
    }

    #[test]
    fn soft_alignment_rejects_noise() {
        let mut s = crate::rng::RngStream::new(8, "n");
        let x: Vec<f64> = (0..100_000).map(|_| s.standard_normal()).collect();
        assert!(matches!(
            find_soft_alignment(&x, reference().bits()),
            Err(Error::SyncFailure { .. })
        ));
    }

    #[test]
    fn clopper_pearson_known_values() {
        // 5 of 100: reference interval (0.01643, 0.11284).
        let (lo, hi) = binomial_interval(5, 100);
        assert!((lo - 0.016431).abs() < 1e-5, "{lo}");
        assert!((hi - 0.112836).abs() < 1e-5, "{hi}");
        assert_eq!(binomial_interval(10, 10).1, 1.0);
    }
}
