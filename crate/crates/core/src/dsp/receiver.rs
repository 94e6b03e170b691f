use super::ber::{count_errors, find_soft_alignment, BerRecord, Polarity};
use super::clock::{clock_recover, wrap_half, TimingEstimate};
use super::dfe::{dfe_equalize, DfeConfig};
use super::symbols::resample_to_symbols;
use crate::error::Result;
use crate::metrics::q_factor;
use crate::signal::RealWaveform;
use crate::tx::BitSequence;

/// Result of one equalizer configuration on a capture.
#[derive(Clone, Debug)]
pub struct DspOutcome {
    pub dfe: DfeConfig,
    pub ber: BerRecord,
    /// Q of the soft equalizer output, `None` if undefined.
    pub q: Option<f64>,
    pub ff_taps: Vec<f64>,
    pub fb_taps: Vec<f64>,
    pub mse: f64,
}

/// Full offline chain on a captured waveform: clock recovery, symbol
/// sampling, normalization to zero mean and unit RMS, a soft correlation sync
/// against `reference` (which fixes the training targets and polarity), then
/// one equalizer run and error count per configuration.
///
/// The clock estimate and its half-UI alternative are both sampled and synced;
/// the one with fewer raw slicer errors over the longest training span wins.
/// Timing and sync failures abort the capture; equalizer failures are
/// returned per configuration.
pub fn process_capture(
    w: &RealWaveform,
    baud: f64,
    reference: &BitSequence,
    configs: &[DfeConfig],
) -> Result<(TimingEstimate, Vec<Result<DspOutcome>>)> {
    let timing = clock_recover(w, baud)?;
    let flipped = TimingEstimate {
        phase_offset: wrap_half(timing.phase_offset + 0.5),
        ..timing
    };
    let span = configs.iter().map(|c| c.train_symbols).max().unwrap_or(0);
    // the half-UI ambiguity is settled on the training symbols
    let (
        timing,
        Prepared {
            x,
            aligned,
            polarity,
        },
    ) = match (
        prepare(w, baud, &timing, reference),
        prepare(w, baud, &flipped, reference),
    ) {
        (Ok(a), Ok(b)) => {
            if b.training_errors(span) < a.training_errors(span) {
                (flipped, b)
            } else {
                (timing, a)
            }
        }
        (Ok(a), Err(_)) => (timing, a),
        (Err(_), Ok(b)) => (flipped, b),
        (Err(e), Err(_)) => return Err(e),
    };

    let outcomes = configs
        .iter()
        .map(|cfg| {
            let out = dfe_equalize(&x, &aligned, cfg)?;
            let decided = BitSequence::new(out.decisions.clone())?;
            let mut ber = count_errors(&decided, reference)?;
            if polarity == Polarity::Inverted {
                ber.polarity = match ber.polarity {
                    Polarity::Normal => Polarity::Inverted,
                    Polarity::Inverted => Polarity::Normal,
                };
            }
            let q = q_factor(&out.soft, &aligned[out.first..out.first + out.soft.len()]).ok();
            Ok(DspOutcome {
                dfe: cfg.clone(),
                ber,
                q,
                ff_taps: out.ff_taps,
                fb_taps: out.fb_taps,
                mse: out.mse,
            })
        })
        .collect();
    Ok((timing, outcomes))
}
struct Prepared {
    x: Vec<f64>,
    aligned: Vec<u8>,
    polarity: Polarity,
}

impl Prepared {
    fn training_errors(&self, span: usize) -> usize {
        let n = span.min(self.x.len());
        (0..n)
            .filter(|&i| ((self.x[i] > 0.0) as u8) != self.aligned[i])
            .count()
    }
}

/// Symbol samples at `timing`, normalized, synced and polarity-corrected,
/// with the reference bits aligned to them.
fn prepare(
    w: &RealWaveform,
    baud: f64,
    timing: &TimingEstimate,
    reference: &BitSequence,
) -> Result<Prepared> {
    let sym = resample_to_symbols(w, baud, timing);
    let n = sym.values.len() as f64;
    let mean = sym.values.iter().sum::<f64>() / n;
    let rms = (sym.values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n).sqrt();
    let scale = if rms > 0.0 { 1.0 / rms } else { 1.0 };
    let mut x: Vec<f64> = sym.values.iter().map(|v| (v - mean) * scale).collect();

    let coarse = find_soft_alignment(&x, reference.bits())?;
    if coarse.polarity == Polarity::Inverted {
        x.iter_mut().for_each(|v| *v = -*v);
    }
    let r = reference.bits();
    let aligned = (0..x.len())
        .map(|i| r[(i + coarse.offset) % r.len()])
        .collect();
    Ok(Prepared {
        x,
        aligned,
        polarity: coarse.polarity,
    })
}
