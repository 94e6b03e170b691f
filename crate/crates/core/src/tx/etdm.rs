use super::prbs::{BitSequence, Generator, PRBS15_PERIOD};
use crate::error::{Error, Result};

/// 2:1 selector: strict interleave `a0, b0, a1, b1, ...`.
pub fn etdm_mux(a: &BitSequence, b: &BitSequence) -> Result<BitSequence> {
    if a.len() != b.len() {
        return Err(Error::config(format!(
            "etdm_mux: input lengths differ ({} vs {})",
            a.len(),
            b.len()
        )));
    }
    let bits = a
        .bits()
        .iter()
        .zip(b.bits())
        .flat_map(|(&x, &y)| [x, y])
        .collect();
    BitSequence::new(bits)
}

/// Inverse of [`etdm_mux`] for even-length sequences.
pub fn etdm_demux(s: &BitSequence) -> Result<(BitSequence, BitSequence)> {
    if !s.len().is_multiple_of(2) {
        return Err(Error::config("etdm_demux: odd length"));
    }
    let a = s.bits().iter().step_by(2).copied().collect();
    let b = s.bits().iter().skip(1).step_by(2).copied().collect();
    Ok((BitSequence::new(a)?, BitSequence::new(b)?))
}

/// Two-stage selector cascade from a single quarter-rate pattern.
///
/// SEL1 interleaves `pattern` with a copy delayed by `sel1_delay` bits; SEL2
/// interleaves that stream with a copy of itself delayed by `sel2_delay`. For
/// a PRBS15 input, delays congruent to 16383 modulo 32767 reproduce a cyclic
/// shift of the same PRBS15 at the full rate, which is then tagged as such.
pub fn etdm_cascade(
    pattern: &BitSequence,
    sel1_delay: usize,
    sel2_delay: usize,
) -> Result<BitSequence> {
    let half = etdm_mux(pattern, &pattern.delayed(sel1_delay))?;
    let full = etdm_mux(&half, &half.delayed(sel2_delay))?;
    if pattern.generator() == Generator::Prbs15
        && full.len() % PRBS15_PERIOD == 0
        && full.minimal_period() == PRBS15_PERIOD
        && is_prbs15_cycle(&full)
    {
        Ok(full.retag(Generator::Prbs15))
    } else {
        Ok(full)
    }
}

fn is_prbs15_cycle(s: &BitSequence) -> bool {
    let b = s.bits();
    let n = PRBS15_PERIOD;
    (0..n).all(|i| b[i] == b[(i + n - 1) % n] ^ b[(i + n - 15) % n])
}
