//! Binary waveform container.
//!
//! ```text
//! offset  size  field
//!      0     7  magic "LWSIM1\0"
//!      7     1  sample type: 0 = real64, 1 = complex128
//!      8     1  unit tag: 0 = volt, 1 = ampere, 2 = dimensionless
//!      9     8  sample rate, f64 little-endian
//!     17     8  wavelength in m, f64 (0 for electrical waveforms)
//!     25     8  sample count, u64
//!     33     -  samples, f64 little-endian (re, im interleaved for complex)
//! ```

use std::path::Path;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::signal::{ComplexEnvelope, RealWaveform, Unit};

pub const MAGIC: &[u8; 7] = b"LWSIM1\0";
pub const HEADER_LEN: usize = 33;

#[derive(Clone, Debug, PartialEq)]
pub enum Waveform {
    Real(RealWaveform),
    Complex(ComplexEnvelope),
}

pub fn encode(w: &Waveform) -> Vec<u8> {
    let (kind, unit, rate, wavelength, count) = match w {
        Waveform::Real(r) => (0u8, r.unit().tag(), r.sample_rate(), 0.0, r.len()),
        Waveform::Complex(c) => (
            1u8,
            Unit::Dimensionless.tag(),
            c.sample_rate(),
            c.wavelength(),
            c.len(),
        ),
    };
    let per = if kind == 0 { 8 } else { 16 };
    let mut out = Vec::with_capacity(HEADER_LEN + per * count);
    out.extend_from_slice(MAGIC);
    out.push(kind);
    out.push(unit);
    out.extend_from_slice(&rate.to_le_bytes());
    out.extend_from_slice(&f64::to_le_bytes(wavelength));
    out.extend_from_slice(&(count as u64).to_le_bytes());
    match w {
        Waveform::Real(r) => r
            .samples()
            .iter()
            .for_each(|v| out.extend_from_slice(&v.to_le_bytes())),
        Waveform::Complex(c) => c.samples().iter().for_each(|v| {
            out.extend_from_slice(&v.re.to_le_bytes());
            out.extend_from_slice(&v.im.to_le_bytes());
        }),
    }
    out
}

fn format_err(offset: usize, message: impl Into<String>) -> Error {
    Error::Format {
        offset: offset as u64,
        message: message.into(),
    }
}

fn f64_at(b: &[u8], at: usize) -> f64 {
    f64::from_le_bytes(b[at..at + 8].try_into().unwrap())
}

pub fn decode(bytes: &[u8]) -> Result<Waveform> {
    if bytes.len() < HEADER_LEN {
        let magic_ok = bytes.len() >= MAGIC.len() && &bytes[..MAGIC.len()] == MAGIC;
        if !magic_ok && !MAGIC.starts_with(bytes) {
            return Err(format_err(0, "bad magic, expected \"LWSIM1\\0\""));
        }
        return Err(format_err(
            bytes.len(),
            format!(
                "truncated header: expected {HEADER_LEN} bytes, found {}",
                bytes.len()
            ),
        ));
    }
    if &bytes[..7] != MAGIC {
        return Err(format_err(0, "bad magic, expected \"LWSIM1\\0\""));
    }
    let kind = bytes[7];
    if kind > 1 {
        return Err(format_err(7, format!("unknown sample type {kind}")));
    }
    let unit = Unit::from_tag(bytes[8])
        .ok_or_else(|| format_err(8, format!("unknown unit tag {}", bytes[8])))?;
    let rate = f64_at(bytes, 9);
    let wavelength = f64_at(bytes, 17);
    let count = u64::from_le_bytes(bytes[25..33].try_into().unwrap());
    let per: u64 = if kind == 0 { 8 } else { 16 };
    let expected = count
        .checked_mul(per)
        .ok_or_else(|| format_err(25, format!("sample count {count} overflows")))?;
    let actual = (bytes.len() - HEADER_LEN) as u64;
    if actual != expected {
        let what = if actual < expected {
            "truncated payload"
        } else {
            "trailing bytes after payload"
        };
        return Err(format_err(
            HEADER_LEN + actual.min(expected) as usize,
            format!("{what}: expected {expected} payload bytes, found {actual}"),
        ));
    }
    let payload = &bytes[HEADER_LEN..];
    let wrap = |e: Error| format_err(9, e.to_string());
    if kind == 0 {
        let s = payload
            .chunks_exact(8)
            .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
            .collect();
        Ok(Waveform::Real(
            RealWaveform::new(s, rate, unit).map_err(wrap)?,
        ))
    } else {
        let s = payload
            .chunks_exact(16)
            .map(|c| Complex64::new(f64_at(c, 0), f64_at(c, 8)))
            .collect();
        Ok(Waveform::Complex(
            ComplexEnvelope::new(s, rate, wavelength).map_err(wrap)?,
        ))
    }
}

pub fn save(path: &Path, w: &Waveform) -> Result<()> {
    std::fs::write(path, encode(w))?;
    Ok(())
}

pub fn load(path: &Path) -> Result<Waveform> {
    decode(&std::fs::read(path)?)
}

/// Load a file that must hold a real (electrical) waveform.
pub fn load_real(path: &Path) -> Result<RealWaveform> {
    match load(path)? {
        Waveform::Real(r) => Ok(r),
        Waveform::Complex(_) => Err(format_err(
            7,
            "expected a real64 waveform, found complex128",
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real() -> Waveform {
        let s = vec![0.0, -1.5, f64::MIN_POSITIVE, 1e300, -0.0, std::f64::consts::PI];
        Waveform::Real(RealWaveform::new(s, 240e9, Unit::Ampere).unwrap())
    }

    fn complex() -> Waveform {
        let s = vec![Complex64::new(0.1, -0.2), Complex64::new(1e-9, 7.0)];
        Waveform::Complex(ComplexEnvelope::new(s, 1.12e12, 1550e-9).unwrap())
    }

    fn bits_eq(a: &Waveform, b: &Waveform) -> bool {
        encode(a) == encode(b)
    }

    #[test]
    fn round_trip_bit_exact() {
        for w in [real(), complex()] {
            let back = decode(&encode(&w)).unwrap();
            assert!(bits_eq(&w, &back));
            assert_eq!(back, w);
        }
        if let Waveform::Real(r) = decode(&encode(&real())).unwrap() {
            assert_eq!(r.samples()[4].to_bits(), (-0.0f64).to_bits());
        }
    }

    #[test]
    fn round_trip_via_file() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("w.lws");
        save(&p, &complex()).unwrap();
        assert_eq!(load(&p).unwrap(), complex());
        assert!(load_real(&p).is_err());
    }

    #[test]
    fn truncated_payload_names_sizes() {
        let b = encode(&real());
        let e = decode(&b[..b.len() - 3]).unwrap_err();
        match e {
            Error::Format { offset, message } => {
                assert_eq!(offset, (b.len() - 3) as u64);
                assert!(
                    message.contains("expected 48 payload bytes, found 45"),
                    "{message}"
                );
            }
            other => panic!("{other}"),
        }
    }

    #[test]
    fn bad_magic_and_header() {
        let mut b = encode(&real());
        b[0] = b'X';
        assert!(matches!(decode(&b), Err(Error::Format { offset: 0, .. })));
        let b = encode(&real());
        assert!(matches!(
            decode(&b[..20]),
            Err(Error::Format { offset: 20, .. })
        ));
        let mut b = encode(&real());
        b[7] = 9;
        assert!(matches!(decode(&b), Err(Error::Format { offset: 7, .. })));
        let mut b = encode(&real());
        b.push(0);
        assert!(decode(&b).is_err());
    }
}
