//! SVG line charts and PGM eye rasters. CSV is the canonical record; these
//! are for looking at.

use std::fmt::Write;

use super::csv::fmt17;
use super::link::ResultRow;
use crate::metrics::{EyeHistogram, HD_FEC_THRESHOLD};
use crate::signal::Spectrum;

const W: f64 = 640.0;
const H: f64 = 420.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 150.0;
const TOP: f64 = 20.0;
const BOTTOM: f64 = 50.0;
const COLORS: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#555555",
];

struct Frame {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Frame {
    fn px(&self, x: f64) -> f64 {
        let span = if self.x1 > self.x0 {
            self.x1 - self.x0
        } else {
            1.0
        };
        LEFT + (x - self.x0) / span * (W - LEFT - RIGHT)
    }

    fn py(&self, y: f64) -> f64 {
        TOP + (self.y1 - y) / (self.y1 - self.y0) * (H - TOP - BOTTOM)
    }
}

fn open_svg(out: &mut String, f: &Frame, x_label: &str, y_label: &str) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" font-family="sans-serif" font-size="11">"#
    );
    let _ = writeln!(
        out,
        r#"<rect x="{LEFT}" y="{TOP}" width="{}" height="{}" fill="none" stroke="black"/>"#,
        W - LEFT - RIGHT,
        H - TOP - BOTTOM
    );
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" text-anchor="middle">{x_label}</text>"#,
        LEFT + (W - LEFT - RIGHT) / 2.0,
        H - 12.0
    );
    let _ = writeln!(
        out,
        r#"<text x="16" y="{}" text-anchor="middle" transform="rotate(-90 16 {})">{y_label}</text>"#,
        TOP + (H - TOP - BOTTOM) / 2.0,
        TOP + (H - TOP - BOTTOM) / 2.0
    );
    for i in 0..=4 {
        let x = f.x0 + (f.x1 - f.x0) * i as f64 / 4.0;
        let _ = writeln!(
            out,
            r#"<text x="{:.1}" y="{}" text-anchor="middle">{}</text>"#,
            f.px(x),
            H - BOTTOM + 16.0,
            short(x)
        );
    }
}

fn short(x: f64) -> String {
    if x == 0.0 || (1e-2..1e4).contains(&x.abs()) {
        format!("{}", (x * 100.0).round() / 100.0)
    } else {
        format!("{x:.1e}")
    }
}

/// BER against the first sweep axis (or ROP for a single point), one series
/// per equalizer and remaining-axis combination, log y axis, dashed
/// HD-FEC threshold line.
pub fn ber_svg(rows: &[ResultRow]) -> String {
    let x_name = rows
        .first()
        .and_then(|r| r.axes.first().map(|a| a.0.clone()))
        .unwrap_or_else(|| "rop_dbm".to_string());
    let x_of = |r: &ResultRow| r.axes.first().map(|a| a.1).or(r.rop_dbm).unwrap_or(0.0);
    let mut series: Vec<(String, Vec<(f64, f64)>)> = Vec::new();
    for r in rows {
        let Some(ber) = r.ber_value() else { continue };
        let mut key = r.dfe.clone();
        for (n, v) in r.axes.iter().skip(1) {
            let _ = write!(key, " {n}={}", short(*v));
        }
        let y = if ber > 0.0 {
            ber
        } else {
            r.ber.as_ref().map(|b| b.ci_high).unwrap_or(1e-7)
        };
        match series.iter_mut().find(|s| s.0 == key) {
            Some(s) => s.1.push((x_of(r), y)),
            None => series.push((key, vec![(x_of(r), y)])),
        }
    }
    let xs: Vec<f64> = series
        .iter()
        .flat_map(|s| s.1.iter().map(|p| p.0))
        .collect();
    let (mut x0, mut x1) = (
        xs.iter().copied().fold(f64::INFINITY, f64::min),
        xs.iter().copied().fold(f64::NEG_INFINITY, f64::max),
    );
    if !x0.is_finite() {
        (x0, x1) = (0.0, 1.0);
    }
    if x1 == x0 {
        (x0, x1) = (x0 - 1.0, x1 + 1.0);
    }
    let ymin = series
        .iter()
        .flat_map(|s| s.1.iter().map(|p| p.1))
        .fold(1e-4f64, f64::min)
        .max(1e-12);
    let frame = Frame {
        x0,
        x1,
        y0: ymin.log10().floor(),
        y1: 0.0,
    };
    let mut out = String::new();
    open_svg(&mut out, &frame, &x_name, "BER");
    let mut d = frame.y0 as i32;
    while d <= 0 {
        let y = frame.py(d as f64);
        let _ = writeln!(
            out,
            r##"<line x1="{LEFT}" y1="{y:.1}" x2="{}" y2="{y:.1}" stroke="#ddd"/>"##,
            W - RIGHT
        );
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{:.1}" text-anchor="end">1e{d}</text>"#,
            LEFT - 4.0,
            y + 4.0
        );
        d += 1;
    }
    let ty = frame.py(HD_FEC_THRESHOLD.log10());
    let _ = writeln!(
        out,
        r##"<line class="threshold" x1="{LEFT}" y1="{ty:.1}" x2="{}" y2="{ty:.1}" stroke="#000" stroke-dasharray="6,4"/>"##,
        W - RIGHT
    );
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{:.1}">HD-FEC 5e-3</text>"#,
        W - RIGHT + 4.0,
        ty + 4.0
    );
    for (i, (name, pts)) in series.iter_mut().enumerate() {
        pts.sort_by(|a, b| a.0.total_cmp(&b.0));
        let c = COLORS[i % COLORS.len()];
        let path: Vec<String> = pts
            .iter()
            .map(|(x, y)| format!("{:.1},{:.1}", frame.px(*x), frame.py(y.log10())))
            .collect();
        if pts.len() > 1 {
            let _ = writeln!(
                out,
                r#"<polyline points="{}" fill="none" stroke="{c}"/>"#,
                path.join(" ")
            );
        }
        for (x, y) in pts.iter() {
            let _ = writeln!(
                out,
                r#"<circle class="marker" cx="{:.1}" cy="{:.1}" r="3" fill="{c}"/>"#,
                frame.px(*x),
                frame.py(y.log10())
            );
        }
        let ly = TOP + 14.0 * (i as f64 + 1.0);
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{ly:.1}" fill="{c}">{name}</text>"#,
            W - RIGHT + 4.0
        );
    }
    out.push_str("</svg>\n");
    out
}

/// Power spectral density in dBm/Hz against frequency offset in GHz.
pub fn spectrum_svg(s: &Spectrum) -> String {
    let db = s.density_dbm_per_hz();
    let f: Vec<f64> = s.frequencies.iter().map(|f| f / 1e9).collect();
    let finite = || db.iter().copied().filter(|v| v.is_finite());
    let top = (finite().fold(f64::NEG_INFINITY, f64::max) / 10.0).ceil() * 10.0;
    let frame = Frame {
        x0: f.first().copied().unwrap_or(-1.0),
        x1: f.last().copied().unwrap_or(1.0),
        y0: top - 80.0,
        y1: top,
    };
    let mut out = String::new();
    open_svg(&mut out, &frame, "frequency offset (GHz)", "PSD (dBm/Hz)");
    for i in 0..=4 {
        let v = frame.y0 + 20.0 * i as f64;
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{:.1}" text-anchor="end">{v}</text>"#,
            LEFT - 4.0,
            frame.py(v) + 4.0
        );
    }
    let pts: Vec<String> = f
        .iter()
        .zip(&db)
        .map(|(x, y)| format!("{:.1},{:.1}", frame.px(*x), frame.py(y.max(frame.y0))))
        .collect();
    let _ = writeln!(
        out,
        r#"<polyline points="{}" fill="none" stroke="{}"/>"#,
        pts.join(" "),
        COLORS[0]
    );
    out.push_str("</svg>\n");
    out
}

pub fn spectrum_csv(s: &Spectrum) -> String {
    let mut out = String::from("frequency_hz,bin_power_w,density_w_per_hz,density_dbm_per_hz\n");
    for (i, d) in s.density().iter().enumerate() {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            fmt17(s.frequencies[i]),
            fmt17(s.bin_power[i]),
            fmt17(*d),
            fmt17(10.0 * (d * 1e3).log10())
        );
    }
    out
}

/// ASCII PGM (P2), highest amplitude on the top row. The maximum gray value
/// is the largest bin count (capped at the format limit of 65535, in which
/// case counts are scaled).
pub fn eye_pgm(eye: &EyeHistogram) -> Vec<u8> {
    let max = eye.max_count().max(1);
    let maxval = max.min(65_535);
    let mut out = format!("P2\n{} {}\n{}\n", eye.time_bins, eye.amp_bins, maxval);
    for a in (0..eye.amp_bins).rev() {
        let line: Vec<String> = (0..eye.time_bins)
            .map(|t| {
                let c = eye.count(a, t);
                if max <= 65_535 {
                    c
                } else {
                    (c as f64 * 65_535.0 / max as f64).round() as u64
                }
                .to_string()
            })
            .collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out.into_bytes()
}

pub fn eye_csv(eye: &EyeHistogram) -> String {
    let mut out = String::from("time_ui,amplitude_low,amplitude_high,count\n");
    for a in 0..eye.amp_bins {
        for t in 0..eye.time_bins {
            let ui = 2.0 * (t as f64 + 0.5) / eye.time_bins as f64;
            let _ = writeln!(
                out,
                "{},{},{},{}",
                fmt17(ui),
                fmt17(eye.amp_edges[a]),
                fmt17(eye.amp_edges[a + 1]),
                eye.count(a, t)
            );
        }
    }
    out
}
