use crate::dsp::TimingEstimate;
use crate::error::{Error, Result};
use crate::signal::RealWaveform;

/// Two-UI eye diagram as a 2D histogram. `counts[a * time_bins + t]`; amplitude
/// bin 0 is the lowest.
#[derive(Clone, Debug, PartialEq)]
pub struct EyeHistogram {
    pub time_bins: usize,
    pub amp_bins: usize,
    pub counts: Vec<u64>,
    /// `amp_bins + 1` ascending edges.
    pub amp_edges: Vec<f64>,
    pub samples: u64,
}

const MIN_BINS: usize = 64;

/// Fold `w` modulo two symbol periods, with `t = 0` on a recovered symbol
/// boundary, so the eye centers fall at 0.5 and 1.5 UI.
pub fn eye_histogram(
    w: &RealWaveform,
    baud: f64,
    phase: &TimingEstimate,
    time_bins: usize,
    amp_bins: usize,
) -> Result<EyeHistogram> {
    if time_bins < MIN_BINS || amp_bins < MIN_BINS {
        return Err(Error::config(format!(
            "eye needs at least {MIN_BINS}x{MIN_BINS} bins"
        )));
    }
    if w.duration() * baud < 1000.0 {
        return Err(Error::config("eye needs at least 1000 symbols"));
    }
    let s = w.samples();
    let lo = s.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = s.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let pad = if hi > lo {
        0.02 * (hi - lo)
    } else {
        1e-12_f64.max(lo.abs() * 1e-6)
    };
    let (lo, hi) = (lo - pad, hi + pad);
    let amp_edges: Vec<f64> = (0..=amp_bins)
        .map(|i| lo + (hi - lo) * i as f64 / amp_bins as f64)
        .collect();
    let mut counts = vec![0u64; time_bins * amp_bins];
    let fs = w.sample_rate();
    for (i, &v) in s.iter().enumerate() {
        let ui = (i as f64 * baud / fs - phase.phase_offset).rem_euclid(2.0);
        let t = ((ui / 2.0 * time_bins as f64) as usize).min(time_bins - 1);
        let a = (((v - lo) / (hi - lo) * amp_bins as f64) as usize).min(amp_bins - 1);
        counts[a * time_bins + t] += 1;
    }
    Ok(EyeHistogram {
        time_bins,
        amp_bins,
        counts,
        amp_edges,
        samples: s.len() as u64,
    })
}

impl EyeHistogram {
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn max_count(&self) -> u64 {
        self.counts.iter().copied().max().unwrap_or(0)
    }

    pub fn count(&self, amp: usize, time: usize) -> u64 {
        self.counts[amp * self.time_bins + time]
    }

    /// Time bin holding the first eye center (0.5 UI).
    pub fn center_time_bin(&self) -> usize {
        self.time_bins / 4
    }

    /// Amplitude histogram of one time column.
    pub fn column(&self, time: usize) -> Vec<u64> {
        (0..self.amp_bins).map(|a| self.count(a, time)).collect()
    }

    /// Merge groups of `factor` amplitude bins.
    pub fn rebin_amplitude(&self, factor: usize) -> Result<EyeHistogram> {
        if factor == 0 || !self.amp_bins.is_multiple_of(factor) {
            return Err(Error::config(format!(
                "cannot rebin {} amplitude bins by {factor}",
                self.amp_bins
            )));
        }
        let amp_bins = self.amp_bins / factor;
        let mut counts = vec![0u64; amp_bins * self.time_bins];
        for a in 0..self.amp_bins {
            for t in 0..self.time_bins {
                counts[(a / factor) * self.time_bins + t] += self.count(a, t);
            }
        }
        Ok(EyeHistogram {
            time_bins: self.time_bins,
            amp_bins,
            counts,
            amp_edges: self.amp_edges.iter().step_by(factor).copied().collect(),
            samples: self.samples,
        })
    }

    /// Fraction of the center-column samples that fall in the middle 20 % of
    /// the span between the two rail means (rails split at the column mean).
    /// Near 0 for an open eye.
    pub fn center_overlap(&self) -> f64 {
        let col = self.column(self.center_time_bin());
        let mid: Vec<f64> = (0..self.amp_bins)
            .map(|a| 0.5 * (self.amp_edges[a] + self.amp_edges[a + 1]))
            .collect();
        let total: u64 = col.iter().sum();
        if total == 0 {
            return 0.0;
        }
        let mean = col
            .iter()
            .zip(&mid)
            .map(|(c, m)| *c as f64 * m)
            .sum::<f64>()
            / total as f64;
        let rail = |upper: bool| {
            let (n, s) = col
                .iter()
                .zip(&mid)
                .filter(|(_, m)| (**m > mean) == upper)
                .fold((0u64, 0.0), |(n, s), (c, m)| (n + c, s + *c as f64 * m));
            if n == 0 {
                mean
            } else {
                s / n as f64
            }
        };
        let (r0, r1) = (rail(false), rail(true));
        let centre = 0.5 * (r0 + r1);
        let half = 0.1 * (r1 - r0);
        let inside: u64 = col
            .iter()
            .zip(&mid)
            .filter(|(_, m)| (**m - centre).abs() <= half)
            .map(|(c, _)| *c)
            .sum();
        inside as f64 / total as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::RngStream;
    use crate::signal::Unit;
    use crate::tx::{nrz_synthesize, prbs15, SelectorSpec};
    use std::f64::consts::PI;

    fn zero_phase() -> TimingEstimate {
        TimingEstimate {
            phase_offset: 0.0,
            confidence_db: 40.0,
        }
    }

    fn clean_eye() -> EyeHistogram {
        let spec = SelectorSpec {
            jitter_rms: 0.0,
            ..SelectorSpec::default()
        };
        let bits = prbs15(1).unwrap().cycled(2000);
        let w = nrz_synthesize(&bits, 140e9, 64, &spec, &mut RngStream::new(0, "j")).unwrap();
        eye_histogram(&w, 140e9, &zero_phase(), 64, 64).unwrap()
    }

    #[test]
    fn clean_eye_is_open() {
        let eye = clean_eye();
        assert_eq!(eye.total(), eye.samples);
        let col = eye.column(eye.center_time_bin());
        let lo_rail = col.iter().position(|&c| c > 0).unwrap();
        let hi_rail = col.iter().rposition(|&c| c > 0).unwrap();
        assert!(lo_rail < 6 && hi_rail > 57, "{lo_rail} {hi_rail}");
        let mid = eye.amp_bins * 2 / 5..eye.amp_bins * 3 / 5;
        assert!(col[mid].iter().all(|&c| c == 0));
        assert_eq!(eye.center_overlap(), 0.0);
    }

    #[test]
    fn rebin_conserves_counts() {
        let eye = clean_eye();
        for f in [2, 4, 8, 16] {
            let r = eye.rebin_amplitude(f).unwrap();
            assert_eq!(r.total(), eye.total());
            assert_eq!(r.amp_edges.len(), r.amp_bins + 1);
        }
        assert!(eye.rebin_amplitude(3).is_err());
    }

    #[test]
    fn sinusoid_at_half_baud_is_single_trace() {
        let fs = 140e9 * 64.0;
        let s = (0..64 * 1200)
            .map(|i| (2.0 * PI * 70e9 * i as f64 / fs).cos())
            .collect();
        let w = RealWaveform::new(s, fs, Unit::Volt).unwrap();
        // one sample phase per column: every period must land on the same trace
        let eye = eye_histogram(&w, 140e9, &zero_phase(), 128, 64).unwrap();
        for t in 0..128 {
            let col = eye.column(t);
            let runs = (0..col.len())
                .filter(|&a| col[a] > 0 && (a == 0 || col[a - 1] == 0))
                .count();
            let occupied = col.iter().filter(|&&c| c > 0).count();
            assert!(runs == 1 && occupied <= 2, "column {t}");
        }
    }

    #[test]
    fn too_few_bins_or_symbols() {
        let w = RealWaveform::new(vec![0.0; 7000], 1.12e12, Unit::Volt).unwrap();
        assert!(eye_histogram(&w, 140e9, &zero_phase(), 32, 64).is_err());
        assert!(eye_histogram(&w, 140e9, &zero_phase(), 64, 64).is_err());
    }
}
