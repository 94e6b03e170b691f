//! Link configuration files.
//!
//! A config is a flat list of `key = value` lines in TOML syntax, using
//! dotted keys for sections (`fiber.length_m = 5500`). Every key has a
//! default, so an empty file is the default MZM link; unknown keys are
//! rejected. See `docs/config.md` for the full key list.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::dsp::DfeConfig;
use crate::error::{Error, Result};
use crate::optics::{EamSpec, EdfaSpec, FiberSpec, LaserSpec, MzmSpec};
use crate::rx::{DsoSpec, FullScale, PhotodiodeSpec};
use crate::tx::{DriverSpec, SelectorSpec};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LinkConfig {
    pub baud: f64,
    pub samples_per_symbol: usize,
    /// Record length; a multiple of 4 (the selector cascade is 4:1).
    pub symbols: usize,
    pub master_seed: u64,
    /// Received power at the photodiode (or preamplifier) input, set by the
    /// VOA. Absent: no VOA.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rop_dbm: Option<f64>,
    pub pattern: PatternSection,
    pub selector: SelectorSection,
    pub driver: DriverSection,
    pub laser: LaserSection,
    pub modulator: ModulatorSection,
    pub mzm: MzmSection,
    pub eam: EamSection,
    pub fiber: FiberSection,
    pub edfa: EdfaSection,
    pub photodiode: PhotodiodeSection,
    pub dso: DsoSection,
    pub dfe: DfeSection,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PatternSection {
    pub register_seed: u16,
    pub sel1_delay: usize,
    pub sel2_delay: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SelectorSection {
    pub amplitude_vpp: f64,
    pub jitter_rms_s: f64,
    pub bandwidth_hz: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DriverSection {
    pub enabled: bool,
    pub gain_db: f64,
    pub bandwidth_hz: f64,
    pub saturation_v: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LaserSection {
    pub power_dbm: f64,
    pub wavelength_m: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModulatorKind {
    Mzm,
    DfbTweam,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ModulatorSection {
    pub kind: ModulatorKind,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MzmSection {
    pub v_pi: f64,
    pub bias_phase_rad: f64,
    pub arm_ratio: f64,
    pub insertion_loss_db: f64,
    /// Extra delay of the arm-2 drive, s. Non-zero skew makes the two arm
    /// signals differ, which a single-drive memoryless model cannot do.
    pub arm_skew_s: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EamSection {
    pub extinction_db_per_v: f64,
    pub transparency_v: f64,
    pub alpha_chirp: f64,
    pub bias_v: f64,
    pub insertion_loss_db: f64,
    /// Mean modulated output power; absent leaves the output uncalibrated.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output_dbm: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FiberSection {
    pub length_m: f64,
    pub dispersion_ps_nm_km: f64,
    pub attenuation_db_km: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EdfaSection {
    pub enabled: bool,
    pub gain_db: f64,
    pub noise_figure_db: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PhotodiodeSection {
    pub responsivity: f64,
    pub bandwidth_hz: f64,
    pub thermal_a_per_rthz: f64,
    pub shot_noise: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DsoSection {
    pub sample_rate: f64,
    pub bandwidth_hz: f64,
    /// 0 disables quantization.
    pub quantizer_bits: u32,
    /// Half range around 0; 0 selects auto ranging (mean +/- 4 RMS).
    pub full_scale: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DfeSection {
    /// Comma-separated list of `none` or `<ff>x<fb>`.
    pub configs: String,
    pub step_mu: f64,
    pub train_symbols: usize,
    pub passes: usize,
    /// Feed-forward index of the decided symbol; absent centers it.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cursor: Option<usize>,
}

impl Default for LinkConfig {
    fn default() -> Self {
        LinkConfig {
            baud: 140e9,
            samples_per_symbol: 8,
            symbols: 131_068,
            master_seed: 1,
            rop_dbm: None,
            pattern: PatternSection::default(),
            selector: SelectorSection::default(),
            driver: DriverSection::default(),
            laser: LaserSection::default(),
            modulator: ModulatorSection::default(),
            mzm: MzmSection::default(),
            eam: EamSection::default(),
            fiber: FiberSection::default(),
            edfa: EdfaSection::default(),
            photodiode: PhotodiodeSection::default(),
            dso: DsoSection::default(),
            dfe: DfeSection::default(),
        }
    }
}

impl Default for PatternSection {
    fn default() -> Self {
        PatternSection {
            register_seed: 0x7fff,
            sel1_delay: 16_383,
            sel2_delay: 16_383,
        }
    }
}

impl Default for SelectorSection {
    fn default() -> Self {
        let s = SelectorSpec::default();
        SelectorSection {
            amplitude_vpp: s.output_amplitude,
            jitter_rms_s: s.jitter_rms,
            bandwidth_hz: s.bandwidth_f3db,
        }
    }
}

impl Default for DriverSection {
    fn default() -> Self {
        let d = DriverSpec::default();
        DriverSection {
            enabled: false,
            gain_db: d.gain_db,
            bandwidth_hz: d.bandwidth_f3db,
            saturation_v: d.saturation_level,
        }
    }
}

impl Default for LaserSection {
    fn default() -> Self {
        let l = LaserSpec::default();
        LaserSection {
            power_dbm: l.power_dbm,
            wavelength_m: l.wavelength,
        }
    }
}

impl Default for ModulatorSection {
    fn default() -> Self {
        ModulatorSection {
            kind: ModulatorKind::Mzm,
        }
    }
}

impl Default for MzmSection {
    fn default() -> Self {
        let m = MzmSpec::default();
        MzmSection {
            v_pi: m.v_pi,
            bias_phase_rad: m.bias_phase,
            arm_ratio: m.arm_ratio,
            insertion_loss_db: m.insertion_loss_db,
            arm_skew_s: 0.0,
        }
    }
}

impl Default for EamSection {
    fn default() -> Self {
        let e = EamSpec::default();
        EamSection {
            extinction_db_per_v: e.extinction_slope,
            transparency_v: e.transparency_bias,
            alpha_chirp: e.alpha_chirp,
            bias_v: e.bias_voltage,
            insertion_loss_db: e.insertion_loss_db,
            output_dbm: e.modulated_output_dbm,
        }
    }
}

impl Default for FiberSection {
    fn default() -> Self {
        FiberSection {
            length_m: 0.0,
            dispersion_ps_nm_km: 17.0,
            attenuation_db_km: 0.2,
        }
    }
}

impl Default for EdfaSection {
    fn default() -> Self {
        let e = EdfaSpec::default();
        EdfaSection {
            enabled: false,
            gain_db: e.gain_db,
            noise_figure_db: e.noise_figure_db,
        }
    }
}

impl Default for PhotodiodeSection {
    fn default() -> Self {
        let p = PhotodiodeSpec::default();
        PhotodiodeSection {
            responsivity: p.responsivity,
            bandwidth_hz: p.bandwidth_f3db,
            thermal_a_per_rthz: p.thermal_current_density,
            shot_noise: p.shot_noise_enabled,
        }
    }
}

impl Default for DsoSection {
    fn default() -> Self {
        DsoSection {
            sample_rate: 240e9,
            bandwidth_hz: 100e9,
            quantizer_bits: 8,
            full_scale: 0.0,
        }
    }
}

impl Default for DfeSection {
    fn default() -> Self {
        let d = DfeConfig::new(6, 6);
        DfeSection {
            configs: "none, 6x6, 12x6".to_string(),
            step_mu: d.step_mu,
            train_symbols: d.train_symbols,
            passes: d.passes,
            cursor: None,
        }
    }
}

impl LinkConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let table: toml::Table = text.parse().map_err(|e: toml::de::Error| {
            Error::config(format!("config parse: {}", e.message()))
        })?;
        Self::from_table(table)
    }

    pub fn from_file(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::config(format!("cannot read config {}: {e}", path.display())))?;
        Self::from_toml_str(&text)
    }

    pub fn from_table(table: toml::Table) -> Result<Self> {
        let cfg: LinkConfig = table
            .try_into()
            .map_err(|e: toml::de::Error| Error::config(format!("config: {}", e.message())))?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Canonical form: every key, defaults included, in a fixed order.
    pub fn canonical(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn to_table(&self) -> toml::Table {
        toml::Table::try_from(self).expect("config serializes")
    }

    /// First 16 hex digits of the SHA-256 of the canonical form, seed excluded.
    pub fn hash(&self) -> String {
        let mut c = self.clone();
        c.master_seed = 0;
        let digest = Sha256::digest(c.canonical().as_bytes());
        digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.baud > 0.0) {
            return Err(Error::config("baud must be > 0"));
        }
        if self.symbols == 0 || !self.symbols.is_multiple_of(4) {
            return Err(Error::config(format!(
                "symbols {} must be a positive multiple of 4",
                self.symbols
            )));
        }
        self.selector_spec().validate()?;
        if self.driver.enabled {
            self.driver_spec().validate()?;
        }
        self.laser_spec().validate()?;
        match self.modulator.kind {
            ModulatorKind::Mzm => self.mzm_spec().validate()?,
            ModulatorKind::DfbTweam => self.eam_spec().validate()?,
        }
        self.fiber_spec().validate()?;
        if self.edfa.enabled {
            self.edfa_spec().validate()?;
        }
        self.photodiode_spec().validate()?;
        self.dso_spec().validate(self.baud)?;
        for d in self.dfe_configs()? {
            d.validate()?;
        }
        Ok(())
    }

    pub fn selector_spec(&self) -> SelectorSpec {
        SelectorSpec {
            output_amplitude: self.selector.amplitude_vpp,
            jitter_rms: self.selector.jitter_rms_s,
            bandwidth_f3db: self.selector.bandwidth_hz,
        }
    }

    pub fn driver_spec(&self) -> DriverSpec {
        DriverSpec {
            gain_db: self.driver.gain_db,
            bandwidth_f3db: self.driver.bandwidth_hz,
            saturation_level: self.driver.saturation_v,
        }
    }

    pub fn laser_spec(&self) -> LaserSpec {
        LaserSpec {
            power_dbm: self.laser.power_dbm,
            wavelength: self.laser.wavelength_m,
        }
    }

    pub fn mzm_spec(&self) -> MzmSpec {
        MzmSpec {
            v_pi: self.mzm.v_pi,
            bias_phase: self.mzm.bias_phase_rad,
            arm_ratio: self.mzm.arm_ratio,
            insertion_loss_db: self.mzm.insertion_loss_db,
        }
    }

    pub fn eam_spec(&self) -> EamSpec {
        EamSpec {
            extinction_slope: self.eam.extinction_db_per_v,
            transparency_bias: self.eam.transparency_v,
            alpha_chirp: self.eam.alpha_chirp,
            bias_voltage: self.eam.bias_v,
            insertion_loss_db: self.eam.insertion_loss_db,
            modulated_output_dbm: self.eam.output_dbm,
        }
    }

    pub fn fiber_spec(&self) -> FiberSpec {
        FiberSpec {
            length: self.fiber.length_m,
            dispersion: crate::optics::ps_per_nm_km(self.fiber.dispersion_ps_nm_km),
            attenuation: self.fiber.attenuation_db_km,
            wavelength: self.laser.wavelength_m,
        }
    }

    pub fn edfa_spec(&self) -> EdfaSpec {
        EdfaSpec {
            gain_db: self.edfa.gain_db,
            noise_figure_db: self.edfa.noise_figure_db,
        }
    }

    pub fn photodiode_spec(&self) -> PhotodiodeSpec {
        PhotodiodeSpec {
            responsivity: self.photodiode.responsivity,
            bandwidth_f3db: self.photodiode.bandwidth_hz,
            thermal_current_density: self.photodiode.thermal_a_per_rthz,
            shot_noise_enabled: self.photodiode.shot_noise,
        }
    }

    pub fn dso_spec(&self) -> DsoSpec {
        DsoSpec {
            sample_rate: self.dso.sample_rate,
            bandwidth_f3db: self.dso.bandwidth_hz,
            quantizer_bits: (self.dso.quantizer_bits > 0).then_some(self.dso.quantizer_bits),
            full_scale: if self.dso.full_scale > 0.0 {
                FullScale::Fixed(self.dso.full_scale)
            } else {
                FullScale::Auto
            },
            record_symbols: None,
        }
    }

    pub fn dfe_configs(&self) -> Result<Vec<DfeConfig>> {
        let list: Vec<DfeConfig> = self
            .dfe
            .configs
            .split(',')
            .filter(|s| !s.trim().is_empty())
            .map(|s| {
                let mut d = DfeConfig::parse(s)?;
                if !d.frozen {
                    d.step_mu = self.dfe.step_mu;
                    d.train_symbols = self.dfe.train_symbols;
                    d.passes = self.dfe.passes;
                    d.cursor = self.dfe.cursor;
                }
                Ok(d)
            })
            .collect::<Result<_>>()?;
        if list.is_empty() {
            return Err(Error::config("dfe.configs lists no equalizer"));
        }
        Ok(list)
    }
}

/// Set a dotted key in a parsed config table, keeping the default's
/// integer or float type.
pub fn set_dotted(table: &mut toml::Table, key: &str, value: f64) -> Result<()> {
    let mut parts: Vec<&str> = key.split('.').collect();
    let leaf = parts
        .pop()
        .filter(|s| !s.is_empty())
        .ok_or_else(|| Error::config(format!("bad key '{key}'")))?;
    let defaults = LinkConfig::default().to_table();
    let mut default_node: Option<&toml::Value> = None;
    let mut node = table;
    let mut dnode = Some(&defaults);
    for p in parts {
        dnode = dnode.and_then(|t| t.get(p)).and_then(|v| v.as_table());
        node = node
            .entry(p.to_string())
            .or_insert_with(|| toml::Value::Table(toml::Table::new()))
            .as_table_mut()
            .ok_or_else(|| Error::config(format!("'{p}' in '{key}' is not a section")))?;
    }
    if let Some(t) = dnode {
        default_node = t.get(leaf);
    }
    // Keys without a default (optional ones) take an integer when the value
    // is integral; serde widens integers to floats where needed.
    let integral = match default_node {
        Some(toml::Value::Integer(_)) => true,
        Some(_) => false,
        None => value.fract() == 0.0 && value.abs() < 9e15,
    };
    let v = if integral {
        if value.fract() != 0.0 {
            return Err(Error::config(format!(
                "'{key}' needs an integer, got {value}"
            )));
        }
        toml::Value::Integer(value as i64)
    } else {
        toml::Value::Float(value)
    };
    node.insert(leaf.to_string(), v);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_file_is_default() {
        let c = LinkConfig::from_toml_str("").unwrap();
        assert_eq!(c, LinkConfig::default());
        assert_eq!(c.dfe_configs().unwrap().len(), 3);
    }

    #[test]
    fn dotted_keys_parse() {
        let c = LinkConfig::from_toml_str(
            "fiber.length_m = 5500\nmodulator.kind = \"dfb_tweam\"\nrop_dbm = -3.5\n",
        )
        .unwrap();
        assert_eq!(c.fiber.length_m, 5500.0);
        assert_eq!(c.modulator.kind, ModulatorKind::DfbTweam);
        assert_eq!(c.rop_dbm, Some(-3.5));
    }

    #[test]
    fn unknown_key_rejected() {
        let e = LinkConfig::from_toml_str("fiber.lenght_m = 5").unwrap_err();
        assert!(e.is_config(), "{e}");
    }

    #[test]
    fn invalid_value_rejected() {
        assert!(LinkConfig::from_toml_str("laser.power_dbm = 25")
            .unwrap_err()
            .is_config());
        assert!(LinkConfig::from_toml_str("symbols = 131067")
            .unwrap_err()
            .is_config());
        assert!(LinkConfig::from_toml_str("dfe.configs = \"6y6\"")
            .unwrap_err()
            .is_config());
    }

    #[test]
    fn canonical_round_trip_and_hash() {
        let c = LinkConfig::from_toml_str("fiber.length_m = 960\nmaster_seed = 9").unwrap();
        let back = LinkConfig::from_toml_str(&c.canonical()).unwrap();
        assert_eq!(back, c);
        let mut other = c.clone();
        other.master_seed = 10;
        assert_eq!(other.hash(), c.hash());
        other.fiber.length_m = 961.0;
        assert_ne!(other.hash(), c.hash());
        assert_eq!(c.hash().len(), 16);
    }

    #[test]
    fn set_dotted_keeps_integer_types() {
        let mut t = toml::Table::new();
        set_dotted(&mut t, "fiber.length_m", 500.0).unwrap();
        set_dotted(&mut t, "symbols", 262_136.0).unwrap();
        set_dotted(&mut t, "rop_dbm", -4.0).unwrap();
        set_dotted(&mut t, "dfe.cursor", 3.0).unwrap();
        let c = LinkConfig::from_table(t.clone()).unwrap();
        assert_eq!(c.rop_dbm, Some(-4.0));
        assert_eq!(c.dfe.cursor, Some(3));
        assert_eq!(c.fiber.length_m, 500.0);
        assert_eq!(c.symbols, 262_136);
        assert!(set_dotted(&mut t, "symbols", 1.5).is_err());
    }
}
