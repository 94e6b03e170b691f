use crate::error::{Error, Result};

pub const PRBS15_PERIOD: usize = (1 << 15) - 1;

/// Where a bit sequence came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    Prbs15,
    Explicit,
}

/// Ordered binary symbols, stored one bit per byte (`0` or `1`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitSequence {
    bits: Vec<u8>,
    generator: Generator,
}

impl BitSequence {
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::config("empty bit sequence"));
        }
        if bits.iter().any(|&b| b > 1) {
            return Err(Error::config("bit values must be 0 or 1"));
        }
        Ok(Self {
            bits,
            generator: Generator::Explicit,
        })
    }

    pub fn from_bools(bits: impl IntoIterator<Item = bool>) -> Result<Self> {
        Self::new(bits.into_iter().map(u8::from).collect())
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn generator(&self) -> Generator {
        self.generator
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn ones(&self) -> usize {
        self.bits.iter().map(|&b| b as usize).sum()
    }

    /// Circular delay: `out[i] = self[i - d]`.
    pub fn delayed(&self, d: usize) -> Self {
        let n = self.bits.len();
        let d = d % n;
        let mut bits = Vec::with_capacity(n);
        bits.extend_from_slice(&self.bits[n - d..]);
        bits.extend_from_slice(&self.bits[..n - d]);
        Self {
            bits,
            generator: self.generator,
        }
    }

    pub fn inverted(&self) -> Self {
        Self {
            bits: self.bits.iter().map(|b| b ^ 1).collect(),
            generator: Generator::Explicit,
        }
    }

    /// Cyclic extension (or truncation) to `len` bits.
    pub fn cycled(&self, len: usize) -> Self {
        Self {
            bits: self.bits.iter().copied().cycle().take(len).collect(),
            generator: self.generator,
        }
    }

    /// Smallest `p` dividing `len` with `self[i] == self[i + p]` cyclically.
    pub fn minimal_period(&self) -> usize {
        let n = self.bits.len();
        (1..=n)
            .filter(|p| n.is_multiple_of(*p))
            .find(|&p| (p..n).all(|i| self.bits[i] == self.bits[i - p]))
            .unwrap_or(n)
    }

    /// Leading `p` bits, keeping the generator tag.
    pub fn head(&self, p: usize) -> Self {
        Self {
            bits: self.bits[..p].to_vec(),
            generator: self.generator,
        }
    }

    pub(crate) fn retag(mut self, generator: Generator) -> Self {
        self.generator = generator;
        self
    }
}

/// One period of the maximal-length sequence of `x^15 + x^14 + 1`.
///
/// The register holds the last 15 output bits; each new bit is
/// `s[n] = s[n-1] XOR s[n-15]`. `register_seed` supplies the initial 15 bits.
pub fn prbs15(register_seed: u16) -> Result<BitSequence> {
    let mut state = register_seed & 0x7fff;
    if state == 0 {
        return Err(Error::config("prbs15 register seed must be nonzero"));
    }
    let mut bits = Vec::with_capacity(PRBS15_PERIOD);
    for _ in 0..PRBS15_PERIOD {
        let bit = (state ^ (state >> 14)) & 1;
        state = ((state << 1) | bit) & 0x7fff;
        bits.push(bit as u8);
    }
    Ok(BitSequence {
        bits,
        generator: Generator::Prbs15,
    })
}
