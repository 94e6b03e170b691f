use super::clock::TimingEstimate;
use crate::signal::{fractional_delay, resample, RealWaveform};

/// Symbols discarded at each record edge.
pub const GUARD_SYMBOLS: usize = 256;

/// One real sample per symbol taken at the eye center.
#[derive(Clone, Debug, PartialEq)]
pub struct SymbolSamples {
    pub values: Vec<f64>,
    /// Index (in the full record) of `values[0]`.
    pub first_symbol: usize,
}

/// Shift the record so symbol centers land on `k / baud`, interpolate onto an
/// integer-oversampled grid (`m = ceil(fs / baud)` samples per symbol, never
/// lower than the input rate, so nothing is low-pass filtered), and keep
/// every `m`-th sample. `GUARD_SYMBOLS` are dropped at both ends.
pub fn resample_to_symbols(
    w: &RealWaveform,
    baud: f64,
    estimate: &TimingEstimate,
) -> SymbolSamples {
    let fs = w.sample_rate();
    let m = ((fs / baud) - 1e-9).ceil().max(1.0) as usize;
    let aligned = fractional_delay(w, -(estimate.phase_offset + 0.5) / baud);
    let grid = resample(&aligned, m as f64 * baud);
    let n_sym = (w.duration() * baud + 1e-6).floor() as usize;
    let s = grid.samples();
    let end = n_sym.saturating_sub(GUARD_SYMBOLS);
    let values = (GUARD_SYMBOLS..end)
        .map(|k| s[(k * m).min(s.len() - 1)])
        .collect();
    SymbolSamples {
        values,
        first_symbol: GUARD_SYMBOLS,
    }
}
