use std::cell::RefCell;

use num_complex::Complex64;
use rustfft::FftPlanner;

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

/// In-place forward DFT, `X[k] = sum x[n] exp(-j 2 pi k n / N)`.
pub fn forward(buf: &mut [Complex64]) {
    if buf.len() < 2 {
        return;
    }
    let fft = PLANNER.with(|p| p.borrow_mut().plan_fft_forward(buf.len()));
    fft.process(buf);
}

/// In-place inverse DFT including the `1/N` factor.
pub fn inverse(buf: &mut [Complex64]) {
    let n = buf.len();
    if n < 2 {
        return;
    }
    let fft = PLANNER.with(|p| p.borrow_mut().plan_fft_inverse(n));
    fft.process(buf);
    let scale = 1.0 / n as f64;
    for v in buf.iter_mut() {
        *v *= scale;
    }
}

/// Signed frequency of DFT bin `k` for an `n`-point transform at `sample_rate`.
/// The Nyquist bin of an even-length transform maps to `+fs/2`.
pub fn bin_frequency(k: usize, n: usize, sample_rate: f64) -> f64 {
    let k = k as i64;
    let n_i = n as i64;
    let signed = if k <= n_i / 2 { k } else { k - n_i };
    signed as f64 * sample_rate / n as f64
}

/// True if bin `k` is the Nyquist bin of an even-length transform.
pub fn is_nyquist(k: usize, n: usize) -> bool {
    n.is_multiple_of(2) && k == n / 2
}
