//! Cross-product parameter sweeps with per-point seeds.

use rayon::prelude::*;
use sha2::{Digest, Sha256};

use super::config::{set_dotted, LinkConfig};
use super::link::{run_single, ResultRow};
use crate::error::{Error, Result};

/// Axis name that varies only the noise seed (replicates of one point).
pub const REPLICATE_AXIS: &str = "replicate";
pub const DEFAULT_POINT_CAP: usize = 500;

#[derive(Clone, Debug, PartialEq)]
pub struct Axis {
    /// Dotted config key, or `replicate`.
    pub name: String,
    pub values: Vec<f64>,
}

impl Axis {
    /// `name=start:step:stop` (inclusive) or `name=v1,v2,...`.
    pub fn parse(text: &str) -> Result<Axis> {
        let (name, rest) = text
            .split_once('=')
            .ok_or_else(|| Error::config(format!("axis '{text}' needs name=values")))?;
        let name = name.trim();
        if name.is_empty() {
            return Err(Error::config(format!("axis '{text}' has no name")));
        }
        let num = |s: &str| -> Result<f64> {
            s.trim()
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| Error::config(format!("axis '{name}': bad number '{s}'")))
        };
        let values = if rest.contains(':') {
            let parts: Vec<&str> = rest.split(':').collect();
            if parts.len() != 3 {
                return Err(Error::config(format!(
                    "axis '{name}': range must be start:step:stop"
                )));
            }
            let (start, step, stop) = (num(parts[0])?, num(parts[1])?, num(parts[2])?);
            range(start, step, stop).ok_or_else(|| {
                Error::config(format!("axis '{name}': empty or endless range {rest}"))
            })?
        } else {
            rest.split(',').map(num).collect::<Result<Vec<f64>>>()?
        };
        if values.is_empty() {
            return Err(Error::config(format!("axis '{name}' has no values")));
        }
        Ok(Axis {
            name: name.to_string(),
            values,
        })
    }
}

fn range(start: f64, step: f64, stop: f64) -> Option<Vec<f64>> {
    if step == 0.0 || (stop - start) * step < 0.0 {
        return None;
    }
    let n = ((stop - start) / step + 1e-9).floor() as usize + 1;
    if n > 1_000_000 {
        return None;
    }
    Some((0..n).map(|i| start + i as f64 * step).collect())
}

#[derive(Clone, Debug)]
pub struct SweepSpec {
    pub axes: Vec<Axis>,
    pub cap: usize,
    pub parallel: bool,
}

impl SweepSpec {
    pub fn new(axes: Vec<Axis>) -> Self {
        SweepSpec {
            axes,
            cap: DEFAULT_POINT_CAP,
            parallel: true,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.axes.is_empty() || self.axes.len() > 3 {
            return Err(Error::config(format!(
                "sweep needs 1 to 3 axes, got {}",
                self.axes.len()
            )));
        }
        for (i, a) in self.axes.iter().enumerate() {
            if self.axes[..i].iter().any(|b| b.name == a.name) {
                return Err(Error::config(format!("axis '{}' given twice", a.name)));
            }
        }
        let total = self.axes.iter().map(|a| a.values.len()).product::<usize>();
        if total > self.cap {
            return Err(Error::config(format!(
                "sweep has {total} points, cap is {}",
                self.cap
            )));
        }
        Ok(())
    }

    /// Cross product, each axis in ascending order, first axis slowest.
    pub fn points(&self) -> Vec<Vec<(String, f64)>> {
        let mut points: Vec<Vec<(String, f64)>> = vec![Vec::new()];
        for a in &self.axes {
            let mut vals = a.values.clone();
            vals.sort_by(f64::total_cmp);
            vals.dedup();
            points = points
                .into_iter()
                .flat_map(|p| {
                    vals.iter().map(move |&v| {
                        let mut q = p.clone();
                        q.push((a.name.clone(), v));
                        q
                    })
                })
                .collect();
        }
        points
    }
}

/// Seed for one sweep point: depends only on the master seed and the
/// point's own coordinates.
pub fn point_seed(master_seed: u64, coords: &[(String, f64)]) -> u64 {
    let mut h = Sha256::new();
    h.update(master_seed.to_le_bytes());
    for (name, v) in coords {
        h.update(format!("{name}={:.16e};", v).as_bytes());
    }
    let d = h.finalize();
    u64::from_le_bytes(d[..8].try_into().unwrap())
}

/// Base config with the point's coordinates applied and its seed derived.
pub fn point_config(base: &LinkConfig, coords: &[(String, f64)]) -> Result<LinkConfig> {
    let mut table = base.to_table();
    for (name, v) in coords {
        if name != REPLICATE_AXIS {
            set_dotted(&mut table, name, *v)?;
        }
    }
    let mut cfg = LinkConfig::from_table(table)?;
    cfg.master_seed = point_seed(base.master_seed, coords);
    Ok(cfg)
}

fn run_point(base: &LinkConfig, coords: &[(String, f64)]) -> Result<Vec<ResultRow>> {
    let cfg = point_config(base, coords)?;
    let mut rows = match run_single(&cfg) {
        Ok(rows) => rows,
        Err(e) => cfg
            .dfe_configs()?
            .iter()
            .map(|d| ResultRow::failed(&cfg, d, &e))
            .collect(),
    };
    for r in rows.iter_mut() {
        r.axes = coords.to_vec();
    }
    Ok(rows)
}

/// Run every point of `spec`. Point failures become flagged rows; only an
/// invalid sweep (bad axis, cap exceeded, invalid point config) is an error.
pub fn run_sweep(base: &LinkConfig, spec: &SweepSpec) -> Result<Vec<ResultRow>> {
    spec.validate()?;
    let points = spec.points();
    for p in &points {
        point_config(base, p)?;
    }
    let per_point: Vec<Result<Vec<ResultRow>>> = if spec.parallel {
        points.par_iter().map(|p| run_point(base, p)).collect()
    } else {
        points.iter().map(|p| run_point(base, p)).collect()
    };
    let mut rows = Vec::new();
    for r in per_point {
        rows.extend(r?);
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axis_parsing() {
        let a = Axis::parse("rop_dbm=-14:1:0").unwrap();
        assert_eq!(a.values.len(), 15);
        assert_eq!(a.values[0], -14.0);
        assert_eq!(*a.values.last().unwrap(), 0.0);
        let b = Axis::parse("fiber.length_m=0:500:6000").unwrap();
        assert_eq!(b.values.len(), 13);
        let c = Axis::parse("mzm.arm_ratio=1,0.5,0.8").unwrap();
        assert_eq!(c.values, vec![1.0, 0.5, 0.8]);
        for bad in ["rop_dbm", "=1:1:2", "x=1:0:2", "x=2:1:1", "x=a", "x=1:2"] {
            assert!(Axis::parse(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn points_sorted_cross_product() {
        let s = SweepSpec::new(vec![
            Axis::parse("a=2,1").unwrap(),
            Axis::parse("b=0:1:2").unwrap(),
        ]);
        let p = s.points();
        assert_eq!(p.len(), 6);
        assert_eq!(p[0], vec![("a".to_string(), 1.0), ("b".to_string(), 0.0)]);
        assert_eq!(p[5], vec![("a".to_string(), 2.0), ("b".to_string(), 2.0)]);
    }

    #[test]
    fn cap_and_axis_count() {
        let big = SweepSpec::new(vec![
            Axis::parse("a=0:1:30").unwrap(),
            Axis::parse("b=0:1:30").unwrap(),
        ]);
        assert!(big.validate().is_err());
        let four = SweepSpec::new(
            (0..4)
                .map(|i| Axis::parse(&format!("a{i}=1")).unwrap())
                .collect(),
        );
        assert!(four.validate().is_err());
    }

    #[test]
    fn seeds_isolated_per_point() {
        let p1 = vec![("rop_dbm".to_string(), -4.0)];
        let p2 = vec![("rop_dbm".to_string(), -3.0)];
        assert_ne!(point_seed(1, &p1), point_seed(1, &p2));
        assert_eq!(point_seed(1, &p1), point_seed(1, &p1.clone()));
        assert_ne!(point_seed(1, &p1), point_seed(2, &p1));
    }

    #[test]
    fn point_config_applies_axes() {
        let base = LinkConfig::default();
        let c = point_config(
            &base,
            &[
                ("fiber.length_m".into(), 960.0),
                (REPLICATE_AXIS.into(), 3.0),
            ],
        )
        .unwrap();
        assert_eq!(c.fiber.length_m, 960.0);
        assert!(point_config(&base, &[("fiber.nope".into(), 1.0)])
            .unwrap_err()
            .is_config());
    }
}
