//! One pass through the link: TX -> optics -> RX -> DSP.

use super::config::{LinkConfig, ModulatorKind};
use crate::dsp::{process_capture, BerRecord, DfeConfig, TimingEstimate};
use crate::error::{Error, Result};
use crate::metrics::{fec_verdict, FecVerdict};
use crate::optics::{
    attenuation_for_rop, cw_laser, eam_modulate, edfa_amplify, fiber_propagate, mzm_modulate,
    mzm_modulate_dual, voa,
};
use crate::rng::{names, RngStream};
use crate::rx::{dso_capture, photodetect_with_streams};
use crate::signal::{fractional_delay, ComplexEnvelope, RealWaveform};
use crate::tx::{driver_amplify, etdm_cascade, nrz_synthesize, prbs15, BitSequence, Generator};

/// Register seed of the canonical PRBS15 reference used for error counting.
pub const REFERENCE_SEED: u16 = 0x7fff;

/// Every intermediate signal of one simulated record.
#[derive(Clone, Debug)]
pub struct LinkRun {
    pub bits: BitSequence,
    pub reference: BitSequence,
    pub drive: RealWaveform,
    pub tx_field: ComplexEnvelope,
    /// Field at the photodiode, after the optional preamplifier.
    pub rx_field: ComplexEnvelope,
    /// Power entering the receiver (photodiode or preamplifier), dBm.
    pub rop_dbm: f64,
    pub photocurrent: RealWaveform,
    pub capture: RealWaveform,
    pub warnings: Vec<String>,
}

/// Cyclic reference for counting errors on `bits`: the canonical PRBS15 when
/// `bits` is one of its shifts, otherwise one period of `bits`.
pub fn reference_for(bits: &BitSequence) -> Result<BitSequence> {
    if bits.generator() == Generator::Prbs15 {
        prbs15(REFERENCE_SEED)
    } else {
        Ok(bits.head(bits.minimal_period()))
    }
}

/// Transmitted full-rate symbols for `cfg`.
pub fn transmitted_bits(cfg: &LinkConfig) -> Result<BitSequence> {
    let quarter = prbs15(cfg.pattern.register_seed)?.cycled(cfg.symbols / 4);
    etdm_cascade(&quarter, cfg.pattern.sel1_delay, cfg.pattern.sel2_delay)
}

pub fn simulate_link(cfg: &LinkConfig) -> Result<LinkRun> {
    cfg.validate().map_err(|e| e.at("config"))?;
    let seed = cfg.master_seed;
    let mut warnings = Vec::new();

    let bits = transmitted_bits(cfg).map_err(|e| e.at("pattern"))?;
    let reference = reference_for(&bits)?;
    let rail = nrz_synthesize(
        &bits,
        cfg.baud,
        cfg.samples_per_symbol,
        &cfg.selector_spec(),
        &mut RngStream::new(seed, names::JITTER),
    )
    .map_err(|e| e.at("selector"))?;
    let drive = if cfg.driver.enabled {
        driver_amplify(&rail, &cfg.driver_spec()).map_err(|e| e.at("driver"))?
    } else {
        rail
    };

    let fs = drive.sample_rate();
    let carrier = cw_laser(&cfg.laser_spec(), drive.len(), fs).map_err(|e| e.at("laser"))?;
    let tx_field = match cfg.modulator.kind {
        ModulatorKind::Mzm if cfg.mzm.arm_skew_s != 0.0 => {
            let arm2 = fractional_delay(&drive, cfg.mzm.arm_skew_s);
            mzm_modulate_dual(&carrier, &drive, &arm2, &cfg.mzm_spec())
        }
        ModulatorKind::Mzm => mzm_modulate(&carrier, &drive, &cfg.mzm_spec()),
        ModulatorKind::DfbTweam => eam_modulate(&carrier, &drive, &cfg.eam_spec()),
    }
    .map_err(|e| e.at("modulator"))?;

    let mut field = fiber_propagate(&tx_field, &cfg.fiber_spec()).map_err(|e| e.at("fiber"))?;
    if let Some(target) = cfg.rop_dbm {
        let att = attenuation_for_rop(&field, target).map_err(|e| e.at("voa"))?;
        field = voa(&field, att).map_err(|e| e.at("voa"))?;
    }
    let rop_dbm = field.mean_power_dbm();
    if cfg.edfa.enabled {
        let spec = cfg.edfa_spec();
        warnings.extend(spec.warnings());
        field = edfa_amplify(&field, &spec, &mut RngStream::new(seed, names::ASE))
            .map_err(|e| e.at("edfa"))?;
    }
    let photocurrent = photodetect_with_streams(
        &field,
        &cfg.photodiode_spec(),
        &mut RngStream::new(seed, names::SHOT),
        Some(&mut RngStream::new(seed, names::THERMAL)),
    )
    .map_err(|e| e.at("photodiode"))?;
    let capture = dso_capture(&photocurrent, &cfg.dso_spec(), cfg.baud).map_err(|e| e.at("dso"))?;

    Ok(LinkRun {
        bits,
        reference,
        drive,
        tx_field,
        rx_field: field,
        rop_dbm,
        photocurrent,
        capture,
        warnings,
    })
}

/// Outcome of one equalizer configuration at one operating point.
#[derive(Clone, Debug, PartialEq)]
pub struct ResultRow {
    pub config_hash: String,
    pub seed: u64,
    /// Sweep coordinates of the point, in axis order.
    pub axes: Vec<(String, f64)>,
    pub dfe: String,
    pub rop_dbm: Option<f64>,
    pub timing: Option<TimingEstimate>,
    pub ber: Option<BerRecord>,
    pub verdict: Option<FecVerdict>,
    pub q: Option<f64>,
    /// `None` on success, otherwise the stage-tagged failure.
    pub failure: Option<String>,
    pub sync_failure: bool,
}

impl ResultRow {
    pub fn failed(cfg: &LinkConfig, dfe: &DfeConfig, err: &Error) -> Self {
        ResultRow {
            config_hash: cfg.hash(),
            seed: cfg.master_seed,
            axes: Vec::new(),
            dfe: dfe.label(),
            rop_dbm: None,
            timing: None,
            ber: None,
            verdict: None,
            q: None,
            failure: Some(err.to_string()),
            sync_failure: matches!(err.root(), Error::SyncFailure { .. }),
        }
    }

    /// BER for plotting and averaging; 0.5 for a sync failure.
    pub fn ber_value(&self) -> Option<f64> {
        match (&self.ber, self.sync_failure) {
            (Some(b), _) => Some(b.ber),
            (None, true) => Some(0.5),
            _ => None,
        }
    }
}

/// Run the receiver DSP on a capture, one row per configured equalizer.
/// Failures before equalization are errors; a failing equalizer only flags
/// its own row.
pub fn analyse_capture(
    cfg: &LinkConfig,
    capture: &RealWaveform,
    reference: &BitSequence,
    rop_dbm: Option<f64>,
) -> Result<Vec<ResultRow>> {
    let dfes = cfg.dfe_configs().map_err(|e| e.at("config"))?;
    let (timing, outcomes) = process_capture(capture, cfg.baud, reference, &dfes).map_err(|e| {
        let stage = match e {
            Error::Timing { .. } => "clock-recovery",
            Error::SyncFailure { .. } => "sync",
            _ => "receiver",
        };
        e.at(stage)
    })?;
    let hash = cfg.hash();
    Ok(dfes
        .iter()
        .zip(outcomes)
        .map(|(d, o)| match o {
            Ok(o) => ResultRow {
                config_hash: hash.clone(),
                seed: cfg.master_seed,
                axes: Vec::new(),
                dfe: d.label(),
                rop_dbm,
                timing: Some(timing),
                verdict: Some(fec_verdict(o.ber.ber)),
                ber: Some(o.ber),
                q: o.q,
                failure: None,
                sync_failure: false,
            },
            Err(e) => {
                let mut row = ResultRow::failed(cfg, d, &e.at("equalizer"));
                row.rop_dbm = rop_dbm;
                row.timing = Some(timing);
                row
            }
        })
        .collect())
}

/// Simulate once and evaluate every equalizer in `cfg.dfe.configs`.
pub fn run_single(cfg: &LinkConfig) -> Result<Vec<ResultRow>> {
    let run = simulate_link(cfg)?;
    analyse_capture(cfg, &run.capture, &run.reference, Some(run.rop_dbm))
}
