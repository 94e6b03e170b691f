use num_complex::Complex64;

use super::{apply_frequency_response, fft, Sampled};

/// Band-limited resampling by spectral zero-padding or truncation.
///
/// The output length is `round(len * new_rate / old_rate)`; when that ratio
/// is not integral the grid is labelled `new_rate` and the record duration
/// changes by less than one output sample. Even-length Nyquist bins are split
/// (upsampling) or folded (downsampling) so real inputs stay real.
pub fn resample<S: Sampled>(w: &S, new_rate: f64) -> S {
    let old_rate = w.sample_rate();
    if new_rate == old_rate {
        return w.clone();
    }
    let nx = w.len();
    let num = ((nx as f64) * new_rate / old_rate).round().max(1.0) as usize;
    if num == nx {
        return w.from_complex(w.to_complex(), new_rate);
    }

    let mut x = w.to_complex();
    fft::forward(&mut x);

    let mut y = vec![Complex64::new(0.0, 0.0); num];
    let n = num.min(nx);
    let nyq = n / 2 + 1;
    y[..nyq].copy_from_slice(&x[..nyq]);
    if n > 2 {
        let tail = n - nyq;
        y[num - tail..].copy_from_slice(&x[nx - tail..]);
    }
    if n.is_multiple_of(2) {
        let half = n / 2;
        if num < nx {
            // fold the -N/2 component onto +N/2
            y[half] += x[nx - half];
        } else {
            // split +N/2 evenly between +N/2 and -N/2
            y[half] *= 0.5;
            y[num - half] = y[half];
        }
    }
    fft::inverse(&mut y);
    let gain = num as f64 / nx as f64;
    for v in y.iter_mut() {
        *v *= gain;
    }
    w.from_complex(y, new_rate)
}

/// Circular delay by `tau` seconds via the phase ramp `exp(-j 2 pi f tau)`.
///
/// Integer-sample delays reduce to circular shifts. The Nyquist bin of an
/// even-length record uses the real part of the ramp so real inputs stay real.
pub fn fractional_delay<S: Sampled>(w: &S, tau: f64) -> S {
    if tau == 0.0 {
        return w.clone();
    }
    apply_frequency_response(w, |f, nyquist| {
        let phase = -2.0 * std::f64::consts::PI * f * tau;
        if nyquist {
            Complex64::new(phase.cos(), 0.0)
        } else {
            Complex64::from_polar(1.0, phase)
        }
    })
}
