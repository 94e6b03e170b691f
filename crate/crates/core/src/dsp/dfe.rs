use crate::error::{Error, Result};

/// Symbol-spaced LMS decision-feedback equalizer settings.
#[derive(Clone, Debug, PartialEq)]
pub struct DfeConfig {
    pub n_ff: usize,
    pub n_fb: usize,
    pub step_mu: f64,
    pub train_symbols: usize,
    pub passes: usize,
    /// Feed-forward index aligned with the decided symbol; `None` centers it
    /// (`n_ff / 2`), which lets the filter see precursor ISI.
    pub cursor: Option<usize>,
    /// Keep the initial unit cursor tap and never adapt (plain slicer).
    pub frozen: bool,
}

impl DfeConfig {
    pub fn new(n_ff: usize, n_fb: usize) -> Self {
        DfeConfig {
            n_ff,
            n_fb,
            step_mu: 1e-3,
            train_symbols: 8192,
            passes: 3,
            cursor: None,
            frozen: false,
        }
    }

    /// One frozen feed-forward tap, no feedback: threshold detection only.
    pub fn unequalized() -> Self {
        DfeConfig {
            frozen: true,
            ..DfeConfig::new(1, 0)
        }
    }

    /// `none`, `6x6`, `12x6` or `12,6`.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        if t.eq_ignore_ascii_case("none") {
            return Ok(Self::unequalized());
        }
        let mut parts = t.split(['x', ',']);
        let parse = |p: Option<&str>| -> Result<usize> {
            p.and_then(|s| s.trim().parse().ok())
                .ok_or_else(|| Error::config(format!("bad DFE spec '{text}', expected e.g. 12x6")))
        };
        let n_ff = parse(parts.next())?;
        let n_fb = parse(parts.next())?;
        if parts.next().is_some() {
            return Err(Error::config(format!("bad DFE spec '{text}'")));
        }
        let cfg = Self::new(n_ff, n_fb);
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn label(&self) -> String {
        if self.frozen {
            "none".to_string()
        } else {
            format!("{}x{}", self.n_ff, self.n_fb)
        }
    }

    pub fn cursor_delay(&self) -> usize {
        self.cursor.unwrap_or(self.n_ff / 2)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_ff < 1 {
            return Err(Error::config("DFE needs at least one feed-forward tap"));
        }
        if !(self.step_mu > 0.0 && self.step_mu < 1.0) {
            return Err(Error::config(format!(
                "DFE step {} outside (0, 1)",
                self.step_mu
            )));
        }
        if self.train_symbols < 10 * (self.n_ff + self.n_fb) {
            return Err(Error::config(format!(
                "DFE training length {} below 10 x {} taps",
                self.train_symbols,
                self.n_ff + self.n_fb
            )));
        }
        if self.cursor_delay() >= self.n_ff {
            return Err(Error::config("DFE cursor must index a feed-forward tap"));
        }
        Ok(())
    }
}

/// Equalizer result. `decisions[i]` and `soft[i]` belong to input symbol
/// `first + i`; warm-up decisions are already dropped.
#[derive(Clone, Debug)]
pub struct DfeOutput {
    pub decisions: Vec<u8>,
    pub soft: Vec<f64>,
    pub first: usize,
    pub ff_taps: Vec<f64>,
    pub fb_taps: Vec<f64>,
    pub threshold: f64,
    /// Mean squared error per window, training sweeps then measurement sweep.
    pub mse_trace: Vec<f64>,
    /// Mean squared decision error over the measurement sweep.
    pub mse: f64,
}

pub(crate) const MSE_WINDOW: usize = 512;

/// Train on `reference` (bits aligned with `x`, needed for the training span)
/// and then run decision-directed over the whole record.
///
/// `y[n] = sum_k w_k x[n + D - k] - sum_m b_m d[n - m]`, with `D` the cursor
/// delay. Targets are the reference bits mapped to +-1.
pub fn dfe_equalize(x: &[f64], reference: &[u8], cfg: &DfeConfig) -> Result<DfeOutput> {
    cfg.validate()?;
    let d = cfg.cursor_delay();
    let n_lo = cfg.n_ff - 1 - d;
    let n_hi = x.len().saturating_sub(d);
    let train_end = (n_lo + cfg.train_symbols).min(n_hi);
    if n_hi <= n_lo + cfg.n_ff + cfg.n_fb || reference.len() < train_end {
        return Err(Error::config(format!(
            "DFE input too short: {} symbols, {} reference bits",
            x.len(),
            reference.len()
        )));
    }
    let target = |n: usize| if reference[n] != 0 { 1.0 } else { -1.0 };
    let threshold = (n_lo..train_end).map(target).sum::<f64>() / (train_end - n_lo) as f64;

    let mut w = vec![0.0; cfg.n_ff];
    w[d] = 1.0;
    let mut b = vec![0.0; cfg.n_fb];
    let mut trace = Vec::new();
    let mut window = Window::default();

    let ff = |w: &[f64], n: usize| -> f64 {
        w.iter().enumerate().map(|(k, wk)| wk * x[n + d - k]).sum()
    };

    if !cfg.frozen {
        for _ in 0..cfg.passes {
            for n in n_lo..train_end {
                let past = |m: usize| {
                    if n > m && n - m - 1 < reference.len() {
                        target(n - m - 1)
                    } else {
                        0.0
                    }
                };
                let y = ff(&w, n)
                    - b.iter()
                        .enumerate()
                        .map(|(m, bm)| bm * past(m))
                        .sum::<f64>();
                let e = target(n) - y;
                let mu_e = cfg.step_mu * e;
                for (k, wk) in w.iter_mut().enumerate() {
                    *wk += mu_e * x[n + d - k];
                }
                for (m, bm) in b.iter_mut().enumerate() {
                    *bm -= mu_e * past(m);
                }
                window.push(e * e, &mut trace);
            }
            window.flush(&mut trace);
            check_divergence(&trace)?;
        }
    }

    let mut decided = vec![0.0; n_hi];
    let mut soft = Vec::with_capacity(n_hi - n_lo);
    let mut decisions = Vec::with_capacity(n_hi - n_lo);
    let mut sq_sum = 0.0;
    for n in n_lo..n_hi {
        let y = ff(&w, n)
            - b.iter()
                .enumerate()
                .map(|(m, bm)| {
                    if n > n_lo + m {
                        bm * decided[n - m - 1]
                    } else {
                        0.0
                    }
                })
                .sum::<f64>();
        let dn = if y > threshold { 1.0 } else { -1.0 };
        decided[n] = dn;
        let e = dn - y;
        if !cfg.frozen {
            let mu_e = cfg.step_mu * e;
            for (k, wk) in w.iter_mut().enumerate() {
                *wk += mu_e * x[n + d - k];
            }
            for (m, bm) in b.iter_mut().enumerate() {
                if n > n_lo + m {
                    *bm -= mu_e * decided[n - m - 1];
                }
            }
        }
        sq_sum += e * e;
        window.push(e * e, &mut trace);
        soft.push(y);
        decisions.push((dn > 0.0) as u8);
    }
    window.flush(&mut trace);
    check_divergence(&trace)?;

    let skip = (cfg.n_ff + cfg.n_fb).min(decisions.len());
    Ok(DfeOutput {
        decisions: decisions.split_off(skip),
        soft: soft.split_off(skip),
        first: n_lo + skip,
        ff_taps: w,
        fb_taps: b,
        threshold,
        mse_trace: trace,
        mse: sq_sum / (n_hi - n_lo) as f64,
    })
}

/// MSE of fixed taps with the feedback fed by the reference (no adaptation).
#[cfg(test)]
pub(crate) fn reference_mse(
    x: &[f64],
    reference: &[u8],
    ff: &[f64],
    fb: &[f64],
    cursor: usize,
) -> f64 {
    let n_lo = ff.len() - 1 - cursor;
    let n_hi = x.len() - cursor;
    let t = |n: usize| if reference[n] != 0 { 1.0 } else { -1.0 };
    let start = n_lo + fb.len();
    let mut acc = 0.0;
    for n in start..n_hi {
        let y: f64 = ff
            .iter()
            .enumerate()
            .map(|(k, w)| w * x[n + cursor - k])
            .sum::<f64>()
            - fb.iter()
                .enumerate()
                .map(|(m, b)| b * t(n - m - 1))
                .sum::<f64>();
        acc += (t(n) - y).powi(2);
    }
    acc / (n_hi - start) as f64
}

#[derive(Default)]
struct Window {
    sum: f64,
    count: usize,
}

impl Window {
    fn push(&mut self, v: f64, trace: &mut Vec<f64>) {
        self.sum += v;
        self.count += 1;
        if self.count == MSE_WINDOW {
            self.flush(trace);
        }
    }

    fn flush(&mut self, trace: &mut Vec<f64>) {
        if self.count > 0 {
            trace.push(self.sum / self.count as f64);
        }
        self.sum = 0.0;
        self.count = 0;
    }
}

/// Non-finite MSE, or three consecutive increases ending above both twice
/// the best window so far and the unit target power (worse than a zero
/// output), which separates a runaway from a noisy decision-directed trace.
fn check_divergence(trace: &[f64]) -> Result<()> {
    let mut min = f64::INFINITY;
    let mut rising = 0;
    for (i, &m) in trace.iter().enumerate() {
        if !m.is_finite() {
            return Err(Error::Divergence { window: i, mse: m });
        }
        if i > 0 && m > trace[i - 1] {
            rising += 1;
        } else {
            rising = 0;
        }
        min = min.min(m);
        if rising >= 3 && m > 2.0 * min && m > 1.0 {
            return Err(Error::Divergence { window: i, mse: m });
        }
    }
    Ok(())
}
