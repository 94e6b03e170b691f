use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::signal::{db_to_amplitude, ComplexEnvelope, RealWaveform};

/// Dual-drive Mach-Zehnder modulator.
///
/// Arm 1 is driven by `v(t)`, arm 2 by `-arm_ratio * v(t)`. `arm_ratio = 1`
/// is balanced push-pull (chirp-free); any imbalance leaves a residual phase
/// modulation that tracks the intensity.
#[derive(Clone, Debug, PartialEq)]
pub struct MzmSpec {
    pub v_pi: f64,
    pub bias_phase: f64,
    pub arm_ratio: f64,
    pub insertion_loss_db: f64,
}

impl Default for MzmSpec {
    fn default() -> Self {
        Self {
            v_pi: 1.1,
            bias_phase: std::f64::consts::FRAC_PI_2,
            arm_ratio: 1.0,
            insertion_loss_db: 5.0,
        }
    }
}

impl MzmSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.v_pi > 0.0) || !(self.arm_ratio >= 0.0) || !(self.insertion_loss_db >= 0.0) {
            return Err(Error::config(
                "mzm: need v_pi > 0, arm_ratio >= 0, insertion loss >= 0",
            ));
        }
        if !self.bias_phase.is_finite() {
            return Err(Error::config("mzm: bias phase must be finite"));
        }
        Ok(())
    }
}

/// `E_out = L (E_in / 2) [exp(j pi v / Vpi) + exp(-j pi r v / Vpi + j bias)]`.
pub fn mzm_modulate(
    field: &ComplexEnvelope,
    drive: &RealWaveform,
    spec: &MzmSpec,
) -> Result<ComplexEnvelope> {
    mzm_modulate_dual(field, drive, drive, spec)
}

/// As [`mzm_modulate`] with separate arm waveforms: arm 1 sees `v1`, arm 2
/// sees `-r v2`. Used when the two RF paths differ (e.g. a skew).
pub fn mzm_modulate_dual(
    field: &ComplexEnvelope,
    v1: &RealWaveform,
    v2: &RealWaveform,
    spec: &MzmSpec,
) -> Result<ComplexEnvelope> {
    spec.validate()?;
    check_grid(field, v1)?;
    check_grid(field, v2)?;
    let loss = db_to_amplitude(-spec.insertion_loss_db);
    let k = std::f64::consts::PI / spec.v_pi;
    let bias = Complex64::from_polar(1.0, spec.bias_phase);
    let out = field
        .samples()
        .iter()
        .zip(v1.samples().iter().zip(v2.samples()))
        .map(|(&e, (&a, &b))| {
            let arm1 = Complex64::from_polar(1.0, k * a);
            let arm2 = Complex64::from_polar(1.0, -k * spec.arm_ratio * b) * bias;
            e * 0.5 * loss * (arm1 + arm2)
        })
        .collect();
    Ok(field.with_samples(out))
}

pub(crate) fn check_grid(field: &ComplexEnvelope, drive: &RealWaveform) -> Result<()> {
    if field.sample_rate() != drive.sample_rate() {
        return Err(Error::config(format!(
            "drive sample rate {:e} != field sample rate {:e}",
            drive.sample_rate(),
            field.sample_rate()
        )));
    }
    if field.len() != drive.len() {
        return Err(Error::config("drive and field lengths differ"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::optics::{cw_laser, LaserSpec};
    use crate::signal::Unit;
    use std::f64::consts::PI;

    fn field(n: usize, fs: f64) -> ComplexEnvelope {
        cw_laser(&LaserSpec::default(), n, fs).unwrap()
    }

    #[test]
    fn zero_drive_in_phase_is_transparent() {
        let f = field(32, 1e12);
        let v = RealWaveform::new(vec![0.0; 32], 1e12, Unit::Volt).unwrap();
        let spec = MzmSpec {
            bias_phase: 0.0,
            insertion_loss_db: 0.0,
            ..MzmSpec::default()
        };
        let y = mzm_modulate(&f, &v, &spec).unwrap();
        for (a, b) in y.samples().iter().zip(f.samples()) {
            assert!((a - b).norm() < 1e-15);
        }
    }

    #[test]
    fn null_bias_extinguishes() {
        let f = field(32, 1e12);
        let v = RealWaveform::new(vec![0.0; 32], 1e12, Unit::Volt).unwrap();
        let spec = MzmSpec {
            bias_phase: PI,
            ..MzmSpec::default()
        };
        let y = mzm_modulate(&f, &v, &spec).unwrap();
        assert!(y.mean_power() < 1e-30);
    }

    #[test]
    fn rate_mismatch_rejected() {
        let f = field(32, 1e12);
        let v = RealWaveform::new(vec![0.0; 32], 2e12, Unit::Volt).unwrap();
        assert!(mzm_modulate(&f, &v, &MzmSpec::default()).is_err());
    }

    #[test]
    fn passive_device() {
        let f = field(256, 1e12);
        let v = RealWaveform::new(
            (0..256).map(|i| (i as f64 * 0.37).sin() * 2.0).collect(),
            1e12,
            Unit::Volt,
        )
        .unwrap();
        for r in [0.0, 0.5, 1.0, 1.7] {
            let spec = MzmSpec {
                arm_ratio: r,
                ..MzmSpec::default()
            };
            let y = mzm_modulate(&f, &v, &spec).unwrap();
            let cap = f.samples()[0].norm_sqr() * db_to_amplitude(-spec.insertion_loss_db).powi(2);
            for s in y.samples() {
                assert!(s.norm_sqr() <= cap * (1.0 + 1e-12));
            }
        }
    }

    fn bessel_j(n: i32, x: f64) -> f64 {
        let m = n.unsigned_abs() as i32;
        let mut sum = 0.0;
        let mut fact_k = 1.0;
        for k in 0..40 {
            if k > 0 {
                fact_k *= k as f64;
            }
            let fact_nk: f64 = (1..=(m + k)).map(|i| i as f64).product();
            sum += (-1f64).powi(k) * (x / 2.0).powi(2 * k + m) / (fact_k * fact_nk);
        }
        if n < 0 && m % 2 == 1 {
            -sum
        } else {
            sum
        }
    }

    #[test]
    fn sinusoidal_drive_gives_bessel_sidebands() {
        // single driven arm: E/sqrt(P) = (exp(j b sin wt) + 1) / 2, lines at n fm of J_n(b)/2
        let fs = 1e12;
        let n = 1000;
        let per = 100;
        let v_pi = 1.1;
        let amp = 0.6;
        let v = RealWaveform::new(
            (0..n)
                .map(|i| amp * (2.0 * PI * i as f64 / per as f64).sin())
                .collect(),
            fs,
            Unit::Volt,
        )
        .unwrap();
        let spec = MzmSpec {
            v_pi,
            bias_phase: 0.0,
            arm_ratio: 0.0,
            insertion_loss_db: 0.0,
        };
        let f = field(n, fs);
        let root_p = f.samples()[0].norm();
        let y = mzm_modulate(&f, &v, &spec).unwrap();
        let mut x: Vec<Complex64> = y.samples().iter().map(|s| s / root_p).collect();
        crate::signal::fft::forward(&mut x);
        let beta = PI * amp / v_pi;
        let line =
            |m: i32| x[(m * (n / per) as i32).rem_euclid(n as i32) as usize].norm() / n as f64;
        for m in 1..=3 {
            let expect = bessel_j(m, beta).abs() / 2.0;
            assert!(
                (line(m) - expect).abs() < 1e-9,
                "n={m}: {} vs {expect}",
                line(m)
            );
            assert!((line(-m) - expect).abs() < 1e-9);
        }
        assert!((line(0) - (bessel_j(0, beta) + 1.0).abs() / 2.0).abs() < 1e-9);
    }

    #[test]
    fn memoryless_drive_is_symmetric_but_skewed_arms_are_not() {
        use crate::metrics::sideband_asymmetry;
        use crate::rng::RngStream;
        use crate::signal::fractional_delay;
        use crate::tx::{nrz_synthesize, prbs15, SelectorSpec};

        let baud = 140e9;
        let bits = prbs15(1).unwrap().cycled(8192);
        let v = nrz_synthesize(
            &bits,
            baud,
            8,
            &SelectorSpec::default(),
            &mut RngStream::new(0, "j"),
        )
        .unwrap();
        let f = field(v.len(), v.sample_rate());
        for r in [0.0, 0.5, 1.0] {
            let spec = MzmSpec {
                arm_ratio: r,
                ..MzmSpec::default()
            };
            let y = mzm_modulate(&f, &v, &spec).unwrap();
            let a = sideband_asymmetry(&y, baud).unwrap();
            assert!(a.abs() < 0.2, "r {r}: {a}");
        }
        let skewed = fractional_delay(&v, 3e-12);
        let y = mzm_modulate_dual(&f, &v, &skewed, &MzmSpec::default()).unwrap();
        assert!(sideband_asymmetry(&y, baud).unwrap().abs() > 3.0);
    }
}
