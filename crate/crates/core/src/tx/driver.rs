use crate::error::{Error, Result};
use crate::signal::{db_to_amplitude, gaussian_lowpass, RealWaveform};

/// Modulator driver amplifier.
#[derive(Clone, Debug, PartialEq)]
pub struct DriverSpec {
    pub gain_db: f64,
    pub bandwidth_f3db: f64,
    /// Soft-limiter asymptote, V.
    pub saturation_level: f64,
}

impl Default for DriverSpec {
    fn default() -> Self {
        Self {
            gain_db: 16.0,
            bandwidth_f3db: 110e9,
            saturation_level: 3.0,
        }
    }
}

impl DriverSpec {
    pub fn validate(&self) -> Result<()> {
        if !self.gain_db.is_finite()
            || !(self.bandwidth_f3db > 0.0)
            || !(self.saturation_level > 0.0)
        {
            return Err(Error::config(
                "driver: gain must be finite, bandwidth and saturation > 0",
            ));
        }
        Ok(())
    }
}

/// Linear gain, Gaussian band limit, then `Vsat * tanh(v / Vsat)`.
pub fn driver_amplify(w: &RealWaveform, spec: &DriverSpec) -> Result<RealWaveform> {
    spec.validate()?;
    let g = db_to_amplitude(spec.gain_db);
    let filtered = gaussian_lowpass(&w.scale(g), spec.bandwidth_f3db)?;
    let vs = spec.saturation_level;
    Ok(filtered.map(|v| vs * (v / vs).tanh()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::RngStream;
    use crate::signal::Unit;
    use crate::tx::{nrz_synthesize, prbs15, SelectorSpec};

    #[test]
    fn limiter_formula_on_constant() {
        let spec = DriverSpec {
            gain_db: 0.0,
            bandwidth_f3db: 0.4e12,
            saturation_level: 1.5,
        };
        for v in [-3.0, 0.2, 1.0, 4.0] {
            let w = RealWaveform::new(vec![v; 64], 1e12, Unit::Volt).unwrap();
            let y = driver_amplify(&w, &spec).unwrap();
            let expect = 1.5 * (v / 1.5f64).tanh();
            for s in y.samples() {
                assert!((s - expect).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn small_signal_is_linear() {
        let bits = prbs15(3).unwrap().cycled(4096);
        let sel = SelectorSpec {
            output_amplitude: 0.25,
            jitter_rms: 0.0,
            bandwidth_f3db: 60e9,
        };
        let w = nrz_synthesize(&bits, 140e9, 8, &sel, &mut RngStream::new(0, "j")).unwrap();
        let w = w.scale(0.01);
        let spec = DriverSpec {
            saturation_level: 5.0,
            ..DriverSpec::default()
        };
        let y = driver_amplify(&w, &spec).unwrap();
        let lin = gaussian_lowpass(&w, spec.bandwidth_f3db)
            .unwrap()
            .scale(db_to_amplitude(16.0));
        let ratio = y.peak_to_peak() / lin.peak_to_peak();
        assert!((ratio - 1.0).abs() < 0.01, "ratio {ratio}");
    }

    #[test]
    fn sixteen_db_on_selector_rail() {
        // 0.73 V differential -> 0.365 Vpp rail; 16 dB is x6.31
        let bits = prbs15(3).unwrap().cycled(8192);
        let sel = SelectorSpec {
            output_amplitude: 0.72,
            jitter_rms: 0.0,
            bandwidth_f3db: 400e9,
        };
        let w = nrz_synthesize(&bits, 140e9, 8, &sel, &mut RngStream::new(0, "j")).unwrap();
        assert!((w.peak_to_peak() - 0.36).abs() < 0.005);
        let spec = DriverSpec {
            saturation_level: 1e3,
            ..DriverSpec::default()
        };
        let y = driver_amplify(&w, &spec).unwrap();
        let expect = 0.36 * 10f64.powf(16.0 / 20.0);
        assert!((expect - 2.27).abs() < 0.01);
        assert!(
            (y.peak_to_peak() - 2.2).abs() / 2.2 < 0.05,
            "swing {}",
            y.peak_to_peak()
        );
    }
}
