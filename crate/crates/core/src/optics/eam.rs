use num_complex::Complex64;

use super::mzm::check_grid;
use crate::error::{Error, Result};
use crate::signal::{db_to_amplitude, dbm_to_watts, ComplexEnvelope, RealWaveform};

/// Electro-absorption modulator (the EAM section of a DFB-TWEAM).
///
/// Absorption is linear in dB below the transparency voltage and clamped to
/// [-30, 0] dB. Chirp follows a Henry-style factor: the field phase is
/// `(alpha/2) ln T`.
#[derive(Clone, Debug, PartialEq)]
pub struct EamSpec {
    /// dB of extra absorption per volt of reverse bias.
    pub extinction_slope: f64,
    pub transparency_bias: f64,
    pub alpha_chirp: f64,
    pub bias_voltage: f64,
    pub insertion_loss_db: f64,
    /// When set, the output is rescaled to this mean power.
    pub modulated_output_dbm: Option<f64>,
}

impl Default for EamSpec {
    fn default() -> Self {
        Self {
            extinction_slope: 6.0,
            transparency_bias: 0.0,
            alpha_chirp: 0.0,
            bias_voltage: -1.85,
            insertion_loss_db: 0.0,
            modulated_output_dbm: Some(-1.0),
        }
    }
}

impl EamSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.extinction_slope > 0.0) {
            return Err(Error::config("eam: extinction slope must be > 0"));
        }
        if !self.alpha_chirp.is_finite()
            || !self.bias_voltage.is_finite()
            || !self.transparency_bias.is_finite()
        {
            return Err(Error::config("eam: parameters must be finite"));
        }
        Ok(())
    }

    /// Power transmission in dB at instantaneous voltage `v`.
    pub fn transmission_db(&self, v: f64) -> f64 {
        (-self.extinction_slope * (self.transparency_bias - v)).clamp(-30.0, 0.0)
    }
}

pub fn eam_modulate(
    field: &ComplexEnvelope,
    drive: &RealWaveform,
    spec: &EamSpec,
) -> Result<ComplexEnvelope> {
    spec.validate()?;
    check_grid(field, drive)?;
    let half_alpha = spec.alpha_chirp / 2.0;
    let mut out: Vec<Complex64> = field
        .samples()
        .iter()
        .zip(drive.samples())
        .map(|(&e, &v)| {
            let t_db = spec.transmission_db(spec.bias_voltage + v);
            let t = 10f64.powf(t_db / 10.0);
            e * Complex64::from_polar(t.sqrt(), half_alpha * t.ln())
        })
        .collect();
    let gain = match spec.modulated_output_dbm {
        Some(target) => {
            let p = out.iter().map(|s| s.norm_sqr()).sum::<f64>() / out.len() as f64;
            if p <= 0.0 {
                return Err(Error::config("eam: no optical power to calibrate"));
            }
            (dbm_to_watts(target) / p).sqrt()
        }
        None => db_to_amplitude(-spec.insertion_loss_db),
    };
    for s in out.iter_mut() {
        *s *= gain;
    }
    Ok(field.with_samples(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::optics::{cw_laser, LaserSpec};
    use crate::signal::Unit;

    fn drive(n: usize) -> RealWaveform {
        RealWaveform::new(
            (0..n)
                .map(|i| ((i * 7919) % 13) as f64 * 0.1 - 0.6)
                .collect(),
            1e12,
            Unit::Volt,
        )
        .unwrap()
    }

    #[test]
    fn at_transparency_pure_scaling() {
        let f = cw_laser(&LaserSpec::default(), 16, 1e12).unwrap();
        let v = RealWaveform::new(vec![0.0; 16], 1e12, Unit::Volt).unwrap();
        let spec = EamSpec {
            bias_voltage: 0.0,
            alpha_chirp: 3.0,
            modulated_output_dbm: None,
            ..EamSpec::default()
        };
        assert_eq!(spec.transmission_db(0.0), 0.0);
        let y = eam_modulate(&f, &v, &spec).unwrap();
        for (a, b) in y.samples().iter().zip(f.samples()) {
            assert!((a - b).norm() < 1e-15);
        }
    }

    #[test]
    fn chirp_free_keeps_real_field() {
        let f = cw_laser(&LaserSpec::default(), 512, 1e12).unwrap();
        let y = eam_modulate(&f, &drive(512), &EamSpec::default()).unwrap();
        for s in y.samples() {
            assert_eq!(s.im, 0.0);
            assert!(s.re > 0.0);
        }
    }

    #[test]
    fn calibrated_output_power() {
        let f = cw_laser(&LaserSpec::default(), 512, 1e12).unwrap();
        let y = eam_modulate(&f, &drive(512), &EamSpec::default()).unwrap();
        assert!((y.mean_power_dbm() + 1.0).abs() < 1e-9);
    }

    #[test]
    fn opposite_alpha_is_conjugate() {
        let f = cw_laser(&LaserSpec::default(), 512, 1e12).unwrap();
        let plus = EamSpec {
            alpha_chirp: 1.0,
            ..EamSpec::default()
        };
        let minus = EamSpec {
            alpha_chirp: -1.0,
            ..EamSpec::default()
        };
        let a = eam_modulate(&f, &drive(512), &plus).unwrap();
        let b = eam_modulate(&f, &drive(512), &minus).unwrap();
        for (x, y) in a.samples().iter().zip(b.samples()) {
            assert!((x - y.conj()).norm() < 1e-15);
        }
    }

    #[test]
    fn absorption_clamped() {
        let spec = EamSpec::default();
        assert_eq!(spec.transmission_db(-100.0), -30.0);
        assert_eq!(spec.transmission_db(5.0), 0.0);
        assert!((spec.transmission_db(-1.0) + 6.0).abs() < 1e-12);
    }

    #[test]
    fn positive_alpha_blue_shifts_rising_edge() {
        let n = 64;
        let ramp = RealWaveform::new(
            (0..n).map(|i| -1.0 + i as f64 / n as f64).collect(),
            1e12,
            Unit::Volt,
        )
        .unwrap();
        let f = cw_laser(&LaserSpec::default(), n, 1e12).unwrap();
        for (alpha, sign) in [(2.0, 1.0), (-2.0, -1.0)] {
            let spec = EamSpec {
                alpha_chirp: alpha,
                bias_voltage: 0.0,
                modulated_output_dbm: None,
                ..EamSpec::default()
            };
            let y = eam_modulate(&f, &ramp, &spec).unwrap();
            for w in y.samples().windows(2) {
                let dphi = (w[1] * w[0].conj()).arg();
                assert!(sign * dphi > 0.0, "alpha {alpha}: {dphi}");
            }
        }
    }
}
