use crate::error::{Error, Result};

const SIGMA_FLOOR: f64 = 1e-12;

/// `Q = (mu1 - mu0) / (sigma1 + sigma0)` with classes labeled by `reference`.
pub fn q_factor(symbols: &[f64], reference: &[u8]) -> Result<f64> {
    if symbols.len() != reference.len() {
        return Err(Error::UndefinedMetric(format!(
            "q_factor: {} symbols vs {} labels",
            symbols.len(),
            reference.len()
        )));
    }
    let mut stats = [(0usize, 0.0f64, 0.0f64); 2];
    for (&v, &b) in symbols.iter().zip(reference) {
        let s = &mut stats[(b != 0) as usize];
        s.0 += 1;
        s.1 += v;
    }
    if stats.iter().any(|s| s.0 == 0) {
        return Err(Error::UndefinedMetric(
            "q_factor: only one class present".into(),
        ));
    }
    let means = [
        stats[0].1 / stats[0].0 as f64,
        stats[1].1 / stats[1].0 as f64,
    ];
    for (&v, &b) in symbols.iter().zip(reference) {
        let c = (b != 0) as usize;
        stats[c].2 += (v - means[c]).powi(2);
    }
    let sd = |c: usize| (stats[c].2 / stats[c].0 as f64).sqrt().max(SIGMA_FLOOR);
    Ok((means[1] - means[0]) / (sd(1) + sd(0)))
}
