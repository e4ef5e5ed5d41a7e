//! Run configuration: defaults, overridden by a flat key=value config file,
//! overridden in turn by command-line flags.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use catenoid_core::profiles::{Family, FamilySpec};
use catenoid_core::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format '{other}' (expected csv|json)")),
        }
    }
}

/// Key=value options accumulated from defaults, file and flags; the merged
/// view also produces the canonical string that is hashed into outputs.
#[derive(Debug, Clone, Default)]
pub struct RunConfig {
    values: BTreeMap<String, String>,
}

pub const KNOWN_KEYS: &[&str] = &[
    "a",
    "a_max",
    "a_min",
    "a_step",
    "alpha",
    "domain",
    "eigenvector",
    "family",
    "filter",
    "format",
    "grid",
    "interval",
    "mesh",
    "n",
    "out",
    "points",
    "s_max",
    "theta_samples",
    "tol",
    "tol_scale",
];

impl RunConfig {
    pub fn from_file(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        let mut values = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((k, v)) = line.split_once('=') else {
                return Err(format!(
                    "config line {} is not key=value: '{raw}'",
                    lineno + 1
                ));
            };
            let key = k.trim().to_string();
            if !KNOWN_KEYS.contains(&key.as_str()) {
                return Err(format!("unknown config key '{key}'"));
            }
            values.insert(key, v.trim().to_string());
        }
        Ok(RunConfig { values })
    }

    /// CLI flags beat config-file values.
    pub fn set_cli<T: ToString>(&mut self, key: &str, value: Option<T>) {
        if let Some(v) = value {
            self.values.insert(key.to_string(), v.to_string());
        }
    }

    pub fn set_cli_flag(&mut self, key: &str, on: bool) {
        if on {
            self.values.insert(key.to_string(), "true".to_string());
        }
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(|s| s.as_str())
    }

    pub fn parse<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>, String>
    where
        T::Err: std::fmt::Display,
    {
        match self.get(key) {
            None => Ok(None),
            Some(raw) => raw
                .parse::<T>()
                .map(Some)
                .map_err(|e| format!("invalid value for {key}: '{raw}' ({e})")),
        }
    }

    pub fn flag(&self, key: &str) -> bool {
        matches!(self.get(key), Some("true") | Some("1") | Some("yes"))
    }

    /// Canonical serialized form (sorted key=value lines).
    pub fn canonical(&self) -> String {
        let mut s = String::new();
        for (k, v) in &self.values {
            let _ = writeln!(s, "{k}={v}");
        }
        s
    }

    /// FNV-1a 64 hash of the canonical form, as fixed-width hex.
    pub fn hash(&self) -> String {
        let mut h: u64 = 0xcbf29ce484222325;
        for b in self.canonical().as_bytes() {
            h ^= *b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
        format!("{h:016x}")
    }

    /// Resolve the family spec from `family`/`n`/`a` keys.
    pub fn family_spec(&self) -> Result<FamilySpec, String> {
        let name = self
            .get("family")
            .ok_or("missing --family (euclid|h2xr|hnxr|h3min|h3cousin)")?;
        let a: f64 = self
            .parse("a")?
            .ok_or("missing --a (neck parameter, > 0)")?;
        let n: Option<u32> = self.parse("n")?;
        let family = match name.to_lowercase().as_str() {
            "euclid" => Family::Euclid {
                n: n.ok_or("--n is required for family euclid")?,
            },
            "h2xr" => Family::H2xR,
            "hnxr" => Family::HnxR {
                n: n.ok_or("--n is required for family hnxr")?,
            },
            "h3min" => Family::H3Minimal,
            "h3cousin" => Family::H3Cousin,
            other => return Err(format!("unknown family '{other}'")),
        };
        FamilySpec::new(family, a).map_err(|e| e.to_string())
    }

    /// Tolerance bundle: `tol` (single knob) overrides the defaults.
    pub fn tolerances(&self) -> Result<Tolerances, String> {
        match self.parse::<f64>("tol")? {
            None => Ok(Tolerances::default()),
            Some(t) if t > 0.0 => Ok(Tolerances {
                quad_abs: t,
                quad_rel: t * 100.0,
                root: t,
                ode: t,
            }),
            Some(t) => Err(format!("--tol must be positive (got {t})")),
        }
    }

    /// Parse an `LO:HI` interval (tokens may be `inf`/`-inf`).
    pub fn interval(&self, key: &str) -> Result<Option<(f64, f64)>, String> {
        let Some(raw) = self.get(key) else {
            return Ok(None);
        };
        let Some((lo, hi)) = raw.split_once(':') else {
            return Err(format!("{key} must be LO:HI (got '{raw}')"));
        };
        let parse_tok = |tok: &str| -> Result<f64, String> {
            match tok.trim() {
                "inf" | "+inf" => Ok(f64::INFINITY),
                "-inf" => Ok(f64::NEG_INFINITY),
                t => t
                    .parse::<f64>()
                    .map_err(|e| format!("bad bound '{t}': {e}")),
            }
        };
        Ok(Some((parse_tok(lo)?, parse_tok(hi)?)))
    }

    pub fn out_path(&self) -> Option<PathBuf> {
        self.get("out").map(PathBuf::from)
    }

    pub fn format(&self, default: Format) -> Result<Format, String> {
        match self.get("format") {
            None => Ok(default),
            Some(raw) => raw.parse(),
        }
    }
}
