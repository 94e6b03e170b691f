use crate::error::{Error, Result};
use crate::signal::{db_to_amplitude, ComplexEnvelope};

pub fn voa(field: &ComplexEnvelope, attenuation_db: f64) -> Result<ComplexEnvelope> {
    if !(attenuation_db >= 0.0) {
        return Err(Error::config(format!(
            "voa attenuation {attenuation_db} dB < 0"
        )));
    }
    if attenuation_db == 0.0 {
        return Ok(field.clone());
    }
    Ok(field.scale(db_to_amplitude(-attenuation_db)))
}

/// Attenuation that brings the mean power of `field` to `target_dbm`.
pub fn attenuation_for_rop(field: &ComplexEnvelope, target_dbm: f64) -> Result<f64> {
    let available = field.mean_power_dbm();
    let att = available - target_dbm;
    if att < 0.0 {
        return Err(Error::config(format!(
            "target ROP {target_dbm} dBm exceeds available {available:.2} dBm"
        )));
    }
    Ok(att)
}
