//! Result tables.
//!
//! Schema `lwsim-results/1`: one row per (operating point, equalizer). Floats
//! carry 17 significant digits so every value round-trips exactly.

use super::link::ResultRow;

pub const SCHEMA: &str = "lwsim-results/1";

/// 17 significant digits in scientific notation.
pub fn fmt17(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        format!("{x:.16e}")
    }
}

fn quote(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Reliability flag: `ok`, `unreliable` (< 10 errors), `sync-failure` or `failed`.
pub fn flag(row: &ResultRow) -> &'static str {
    match (&row.ber, row.sync_failure) {
        (Some(b), _) if b.unreliable() => "unreliable",
        (Some(_), _) => "ok",
        (None, true) => "sync-failure",
        (None, false) => "failed",
    }
}

pub fn header(axis_names: &[String]) -> String {
    let mut cols = vec!["schema".to_string(), "config_hash".into(), "seed".into()];
    cols.extend(axis_names.iter().map(|a| quote(a)));
    cols.extend(
        [
            "dfe",
            "flag",
            "errors",
            "bits",
            "ber",
            "ci_low",
            "ci_high",
            "verdict",
            "margin_db",
            "q",
            "rop_dbm",
            "timing_phase_ui",
            "timing_confidence_db",
            "polarity",
            "alignment_offset",
            "message",
        ]
        .map(String::from),
    );
    cols.join(",")
}

pub fn row_line(row: &ResultRow) -> String {
    let opt = |x: Option<f64>| x.map(fmt17).unwrap_or_default();
    let mut f = vec![
        SCHEMA.to_string(),
        row.config_hash.clone(),
        row.seed.to_string(),
    ];
    f.extend(row.axes.iter().map(|(_, v)| fmt17(*v)));
    f.push(row.dfe.clone());
    f.push(flag(row).into());
    match &row.ber {
        Some(b) => {
            f.push(b.errors.to_string());
            f.push(b.bits.to_string());
            f.push(fmt17(b.ber));
            f.push(fmt17(b.ci_low));
            f.push(fmt17(b.ci_high));
        }
        None => {
            f.extend([String::new(), String::new()]);
            f.push(opt(row.ber_value()));
            f.extend([String::new(), String::new()]);
        }
    }
    match &row.verdict {
        Some(v) => {
            f.push(v.label().into());
            f.push(fmt17(v.margin_db));
        }
        None => f.extend(["fail".to_string(), String::new()]),
    }
    f.push(opt(row.q));
    f.push(opt(row.rop_dbm));
    f.push(opt(row.timing.map(|t| t.phase_offset)));
    f.push(opt(row.timing.map(|t| t.confidence_db)));
    f.push(
        row.ber
            .as_ref()
            .map(|b| b.polarity.as_str().to_string())
            .unwrap_or_default(),
    );
    f.push(
        row.ber
            .as_ref()
            .map(|b| b.alignment_offset.to_string())
            .unwrap_or_default(),
    );
    f.push(quote(row.failure.as_deref().unwrap_or("")));
    f.join(",")
}

/// Whole table; axis columns come from the first row.
pub fn to_csv(rows: &[ResultRow]) -> String {
    let axes: Vec<String> = rows
        .first()
        .map(|r| r.axes.iter().map(|(n, _)| n.clone()).collect())
        .unwrap_or_default();
    let mut out = header(&axes);
    out.push('\n');
    for r in rows {
        out.push_str(&row_line(r));
        out.push('\n');
    }
    out
}
