//! `lwsim` command-line front end.
//!
//! Exit status: 0 on success, 1 for configuration errors (bad arguments,
//! bad config files, malformed waveform files), 2 for runtime failures.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use lwsim::dsp::{clock_recover, DfeConfig};
use lwsim::harness::waveform_io::{self, Waveform};
use lwsim::harness::{
    analyse_capture, csv, load_config, plots, reference_for, run_sweep, simulate_link, Axis,
    LinkConfig, ResultRow, SweepSpec,
};
use lwsim::metrics::{eye_histogram, sideband_asymmetry};
use lwsim::signal::{psd, resample};
use lwsim::tx::prbs15;

#[derive(Parser)]
#[command(
    name = "lwsim",
    version,
    about = "140 GBd IM/DD short-reach link simulator"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Simulate one operating point and count errors for each equalizer.
    Simulate {
        #[arg(long)]
        /// Config file, or `demo:<name>` for a shipped demo.
        config: String,
        #[arg(long)]
        out: PathBuf,
        /// Override the config's master seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Also write ber.svg.
        #[arg(long)]
        svg: bool,
        /// Also write the scope capture to capture.lws.
        #[arg(long)]
        capture: bool,
    },
    /// Cross-product sweep over up to three axes.
    Sweep {
        #[arg(long)]
        /// Config file, or `demo:<name>` for a shipped demo.
        config: String,
        /// `key=start:step:stop` or `key=v1,v2,...`; `replicate=1:1:5` repeats with fresh seeds.
        #[arg(long = "axis", required = true)]
        axes: Vec<String>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        svg: bool,
        /// Run points one at a time (output is identical either way).
        #[arg(long)]
        serial: bool,
        /// Maximum number of points.
        #[arg(long, default_value_t = lwsim::harness::sweep::DEFAULT_POINT_CAP)]
        cap: usize,
    },
    /// Eye diagram of the received photocurrent before equalization.
    Eye {
        #[arg(long)]
        /// Config file, or `demo:<name>` for a shipped demo.
        config: String,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 128)]
        time_bins: usize,
        #[arg(long, default_value_t = 128)]
        amp_bins: usize,
    },
    /// Optical spectrum at the modulator output.
    Spectrum {
        #[arg(long)]
        /// Config file, or `demo:<name>` for a shipped demo.
        config: String,
        #[arg(long)]
        out: PathBuf,
        /// Resolution bandwidth, Hz.
        #[arg(long, default_value_t = 1e9)]
        rbw: f64,
    },
    /// Run the receiver DSP on a stored capture against the PRBS15 reference.
    WaveformProcess {
        #[arg(long)]
        input: PathBuf,
        /// Equalizer taps as `nff,nfb`, or `none`.
        #[arg(long)]
        dfe: String,
        #[arg(long)]
        out: PathBuf,
        /// Config supplying baud rate and equalizer settings.
        #[arg(long)]
        config: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_config() { 1 } else { 2 })
        }
    }
}

fn out_dir(p: &Path) -> lwsim::Result<()> {
    fs::create_dir_all(p)?;
    Ok(())
}

fn write(dir: &Path, name: &str, data: impl AsRef<[u8]>) -> lwsim::Result<()> {
    fs::write(dir.join(name), data)?;
    Ok(())
}

fn print_rows(rows: &[ResultRow]) {
    for r in rows {
        match (&r.ber, &r.failure) {
            (Some(b), _) => println!(
                "{:>5}  ber {:.3e}  ({} / {})  {}",
                r.dfe,
                b.ber,
                b.errors,
                b.bits,
                r.verdict.map(|v| v.label()).unwrap_or("fail")
            ),
            (None, f) => println!("{:>5}  failed: {}", r.dfe, f.as_deref().unwrap_or("")),
        }
    }
}

fn run(cmd: Command) -> lwsim::Result<()> {
    match cmd {
        Command::Simulate {
            config,
            out,
            seed,
            svg,
            capture,
        } => {
            let mut cfg = load_config(&config)?;
            if let Some(s) = seed {
                cfg.master_seed = s;
            }
            out_dir(&out)?;
            let run = simulate_link(&cfg)?;
            for w in &run.warnings {
                eprintln!("warning: {w}");
            }
            if capture {
                waveform_io::save(
                    &out.join("capture.lws"),
                    &Waveform::Real(run.capture.clone()),
                )?;
            }
            let rows = analyse_capture(&cfg, &run.capture, &run.reference, Some(run.rop_dbm))?;
            write(&out, "config.toml", cfg.canonical())?;
            write(&out, "results.csv", csv::to_csv(&rows))?;
            if svg {
                write(&out, "ber.svg", plots::ber_svg(&rows))?;
            }
            print_rows(&rows);
        }
        Command::Sweep {
            config,
            axes,
            out,
            svg,
            serial,
            cap,
        } => {
            let cfg = load_config(&config)?;
            let axes = axes
                .iter()
                .map(|a| Axis::parse(a))
                .collect::<lwsim::Result<Vec<_>>>()?;
            let spec = SweepSpec {
                axes,
                cap,
                parallel: !serial,
            };
            out_dir(&out)?;
            let rows = run_sweep(&cfg, &spec)?;
            write(&out, "config.toml", cfg.canonical())?;
            write(&out, "results.csv", csv::to_csv(&rows))?;
            if svg {
                write(&out, "ber.svg", plots::ber_svg(&rows))?;
            }
            let failed = rows.iter().filter(|r| r.failure.is_some()).count();
            println!("{} rows, {} failed", rows.len(), failed);
        }
        Command::Eye {
            config,
            out,
            time_bins,
            amp_bins,
        } => {
            let cfg = load_config(&config)?;
            out_dir(&out)?;
            let run = simulate_link(&cfg)?;
            let dense = resample(&run.photocurrent, cfg.baud * 32.0);
            let timing = clock_recover(&dense, cfg.baud).map_err(|e| e.at("clock-recovery"))?;
            let eye = eye_histogram(&dense, cfg.baud, &timing, time_bins, amp_bins)?;
            write(&out, "eye.pgm", plots::eye_pgm(&eye))?;
            write(&out, "eye.csv", plots::eye_csv(&eye))?;
            println!(
                "eye {}x{}, center overlap {:.3}",
                time_bins,
                amp_bins,
                eye.center_overlap()
            );
        }
        Command::Spectrum { config, out, rbw } => {
            let cfg = load_config(&config)?;
            out_dir(&out)?;
            let run = simulate_link(&cfg)?;
            let s = psd(&run.tx_field, rbw)?;
            write(&out, "spectrum.csv", plots::spectrum_csv(&s))?;
            write(&out, "spectrum.svg", plots::spectrum_svg(&s))?;
            match sideband_asymmetry(&run.tx_field, cfg.baud) {
                Ok(a) => println!(
                    "sideband asymmetry over +-{:.0} GHz: {a:.3} dB",
                    cfg.baud / 1e9
                ),
                Err(e) => println!("sideband asymmetry: {e}"),
            }
        }
        Command::WaveformProcess {
            input,
            dfe,
            out,
            config,
        } => {
            let mut cfg = match config {
                Some(p) => load_config(&p)?,
                None => LinkConfig::default(),
            };
            let d = DfeConfig::parse(&dfe)?;
            cfg.dfe.configs = d.label();
            let capture = waveform_io::load_real(&input)?;
            out_dir(&out)?;
            let reference = reference_for(&prbs15(lwsim::harness::link::REFERENCE_SEED)?)?;
            let rows = analyse_capture(&cfg, &capture, &reference, None)?;
            write(&out, "results.csv", csv::to_csv(&rows))?;
            print_rows(&rows);
        }
    }
    Ok(())
}
