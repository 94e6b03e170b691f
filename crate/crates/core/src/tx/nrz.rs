use super::prbs::BitSequence;
use crate::error::{Error, Result};
use crate::rng::RngStream;
use crate::signal::{gaussian_lowpass, RealWaveform, Unit};

/// 2:1 selector output stage.
#[derive(Clone, Debug, PartialEq)]
pub struct SelectorSpec {
    /// Differential peak-to-peak output amplitude, V.
    pub output_amplitude: f64,
    /// RMS timing jitter of each symbol boundary, s.
    pub jitter_rms: f64,
    /// Packaging-limited 3 dB bandwidth, Hz.
    pub bandwidth_f3db: f64,
}

impl Default for SelectorSpec {
    fn default() -> Self {
        Self {
            output_amplitude: 0.73,
            jitter_rms: 300e-15,
            bandwidth_f3db: 60e9,
        }
    }
}

impl SelectorSpec {
    pub fn validate(&self) -> Result<()> {
        if !(0.25..=0.73).contains(&self.output_amplitude) {
            return Err(Error::config(format!(
                "selector amplitude {} V outside [0.25, 0.73]",
                self.output_amplitude
            )));
        }
        if !(self.jitter_rms >= 0.0) {
            return Err(Error::config("selector jitter must be >= 0"));
        }
        if !(self.bandwidth_f3db > 0.0) {
            return Err(Error::config("selector bandwidth must be > 0"));
        }
        Ok(())
    }
}

/// Positive rail of the selector's differential NRZ output.
///
/// Rail levels are `+A/4` for a one and `-A/4` for a zero (A = differential
/// peak-to-peak), so a balanced pattern is centered on 0 V and the negative
/// rail is the exact negation. Each symbol boundary is displaced by an
/// independent Gaussian offset of std `jitter_rms`; edges are placed with
/// sub-sample precision by box-integrating the ideal NRZ over each sample
/// period. The result is then band-limited by the selector's Gaussian response.
pub fn nrz_synthesize(
    bits: &BitSequence,
    baud: f64,
    sps: usize,
    spec: &SelectorSpec,
    stream: &mut RngStream,
) -> Result<RealWaveform> {
    spec.validate()?;
    if sps < 4 {
        return Err(Error::config(format!("nrz_synthesize: sps {sps} < 4")));
    }
    if spec.jitter_rms > 0.25 / baud {
        return Err(Error::config(format!(
            "jitter {:e} s exceeds model validity 0.25 UI",
            spec.jitter_rms
        )));
    }
    let fs = baud * sps as f64;
    let level = |b: u8| {
        if b == 1 {
            spec.output_amplitude / 4.0
        } else {
            -spec.output_amplitude / 4.0
        }
    };
    let b = bits.bits();
    let n_sym = b.len();
    let n = n_sym * sps;
    let mut x = vec![0.0; n];

    // ideal grid: sample k*sps sits exactly on boundary k and gets the midpoint
    for (k, &bit) in b.iter().enumerate() {
        let prev = b[(k + n_sym - 1) % n_sym];
        x[k * sps] = 0.5 * (level(prev) + level(bit));
        for s in 1..sps {
            x[k * sps + s] = level(bit);
        }
    }

    if spec.jitter_rms > 0.0 {
        let sigma = spec.jitter_rms * fs; // in samples
        for k in 0..n_sym {
            // one draw per boundary keeps the stream aligned with the pattern
            let delta = sigma * stream.standard_normal();
            let prev = b[(k + n_sym - 1) % n_sym];
            if prev == b[k] {
                continue;
            }
            let step = level(b[k]) - level(prev);
            let edge = (k * sps) as f64;
            let reach = delta.abs().ceil() as i64 + 1;
            for off in -reach..=reach {
                let t = edge + off as f64;
                let idx = ((k * sps) as i64 + off).rem_euclid(n as i64) as usize;
                x[idx] += step * (box_step(t, edge + delta) - box_step(t, edge));
            }
        }
    }

    let ideal = RealWaveform::new(x, fs, Unit::Volt)?;
    gaussian_lowpass(&ideal, spec.bandwidth_f3db)
}

/// Average over `[t - 1/2, t + 1/2]` of a unit step located at `edge` (sample units).
fn box_step(t: f64, edge: f64) -> f64 {
    (t + 0.5 - edge).clamp(0.0, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tx::prbs15;

    fn wide(spec_amp: f64, baud: f64) -> SelectorSpec {
        SelectorSpec {
            output_amplitude: spec_amp,
            jitter_rms: 0.0,
            bandwidth_f3db: 10.0 * baud,
        }
    }

    #[test]
    fn clean_synthesis_round_trip() {
        let baud = 140e9;
        let sps = 32;
        let bits = prbs15(5).unwrap();
        let w = nrz_synthesize(
            &bits,
            baud,
            sps,
            &wide(0.5, baud),
            &mut RngStream::new(0, "j"),
        )
        .unwrap();
        let decided: Vec<u8> = (0..bits.len())
            .map(|k| (w.samples()[k * sps + sps / 2] > 0.0) as u8)
            .collect();
        assert_eq!(decided, bits.bits());
    }

    #[test]
    fn all_ones_is_constant_quarter_amplitude() {
        let bits = BitSequence::new(vec![1; 64]).unwrap();
        let w =
            nrz_synthesize(&bits, 1e9, 32, &wide(0.6, 1e9), &mut RngStream::new(0, "j")).unwrap();
        for v in w.samples() {
            assert!((v - 0.15).abs() < 1e-12);
        }
    }

    #[test]
    fn negated_bits_negate_waveform() {
        let bits = prbs15(9).unwrap().cycled(4096);
        let spec = SelectorSpec {
            jitter_rms: 0.0,
            ..SelectorSpec::default()
        };
        let a = nrz_synthesize(&bits, 140e9, 8, &spec, &mut RngStream::new(0, "j")).unwrap();
        let b = nrz_synthesize(
            &bits.inverted(),
            140e9,
            8,
            &spec,
            &mut RngStream::new(0, "j"),
        )
        .unwrap();
        for (x, y) in a.samples().iter().zip(b.samples()) {
            assert!((x + y).abs() < 1e-12);
        }
    }

    #[test]
    fn jitter_limits_and_sps() {
        let bits = BitSequence::new(vec![0, 1, 0, 1]).unwrap();
        let mut s = RngStream::new(0, "j");
        let mut spec = SelectorSpec::default();
        assert!(nrz_synthesize(&bits, 140e9, 3, &spec, &mut s).is_err());
        spec.jitter_rms = 0.26 / 140e9;
        assert!(nrz_synthesize(&bits, 140e9, 8, &spec, &mut s).is_err());
        spec.jitter_rms = 0.0;
        spec.output_amplitude = 0.8;
        assert!(nrz_synthesize(&bits, 140e9, 8, &spec, &mut s).is_err());
    }

    #[test]
    fn spectral_null_at_symbol_rate() {
        let baud = 140e9;
        let n_sym = 4096;
        let bits = prbs15(3).unwrap().cycled(n_sym);
        let w = nrz_synthesize(
            &bits,
            baud,
            32,
            &wide(0.5, baud),
            &mut RngStream::new(0, "j"),
        )
        .unwrap();
        let mut x: Vec<num_complex::Complex64> = w
            .samples()
            .iter()
            .map(|&v| num_complex::Complex64::new(v, 0.0))
            .collect();
        crate::signal::fft::forward(&mut x);
        let band: f64 =
            x[1..n_sym / 2].iter().map(|v| v.norm_sqr()).sum::<f64>() / (n_sym / 2 - 1) as f64;
        for k in [n_sym, 2 * n_sym] {
            assert!(
                x[k].norm_sqr() / band < 1e-20,
                "bin {k}: {:e}",
                x[k].norm_sqr() / band
            );
        }
    }

    #[test]
    fn zero_crossings_scatter_by_jitter_rms() {
        let baud = 140e9;
        let sps = 64;
        let fs = baud * sps as f64;
        let n_sym = 8192;
        let bits = BitSequence::new((0..n_sym).map(|i| (i % 2) as u8).collect()).unwrap();
        let spec = SelectorSpec {
            output_amplitude: 0.5,
            jitter_rms: 300e-15,
            bandwidth_f3db: 3e12,
        };
        let w = nrz_synthesize(&bits, baud, sps, &spec, &mut RngStream::new(21, "j")).unwrap();
        let x = w.samples();
        let offsets: Vec<f64> = (1..n_sym - 1)
            .map(|k| {
                let c = k * sps;
                let i = (c - sps / 2..c + sps / 2)
                    .find(|&i| (x[i] < 0.0) != (x[i + 1] < 0.0))
                    .unwrap();
                let t = i as f64 + x[i] / (x[i] - x[i + 1]);
                (t - c as f64) / fs
            })
            .collect();
        let n = offsets.len() as f64;
        let mean = offsets.iter().sum::<f64>() / n;
        let std = (offsets.iter().map(|o| (o - mean).powi(2)).sum::<f64>() / n).sqrt();
        assert!(mean.abs() < 10e-15, "mean {mean:e}");
        assert!((std / 300e-15 - 1.0).abs() < 0.05, "std {std:e}");
    }
}
