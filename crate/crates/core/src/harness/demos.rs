//! Demo configurations shipped with the crate, also reachable from the CLI
//! as `--config demo:<name>`.

use super::LinkConfig;
use crate::error::{Error, Result};

/// `(name, toml text)` for every shipped demo.
pub const DEMOS: &[(&str, &str)] = &[
    ("mzm_5500m", include_str!("../../configs/mzm_5500m.toml")),
    ("mzm_edfa", include_str!("../../configs/mzm_edfa.toml")),
    ("tweam_edfa", include_str!("../../configs/tweam_edfa.toml")),
    ("tweam_b2b", include_str!("../../configs/tweam_b2b.toml")),
    ("clean_140g", include_str!("../../configs/clean_140g.toml")),
    ("mono_rop", include_str!("../../configs/mono_rop.toml")),
    (
        "mono_length",
        include_str!("../../configs/mono_length.toml"),
    ),
];

pub fn demo_text(name: &str) -> Option<&'static str> {
    DEMOS.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

pub fn demo(name: &str) -> Result<LinkConfig> {
    let text = demo_text(name).ok_or_else(|| {
        let names: Vec<&str> = DEMOS.iter().map(|(n, _)| *n).collect();
        Error::config(format!("unknown demo '{name}' (have {})", names.join(", ")))
    })?;
    LinkConfig::from_toml_str(text)
}

/// A `demo:<name>` reference or a path on disk.
pub fn load_config(spec: &str) -> Result<LinkConfig> {
    match spec.strip_prefix("demo:") {
        Some(name) => demo(name),
        None => LinkConfig::from_file(std::path::Path::new(spec)),
    }
}
