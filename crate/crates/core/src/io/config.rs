//! Flat, fully serializable run configuration.
//!
//! A config file is a flat JSON object whose keys are [`RunConfig`] fields.
//! Missing keys take the per-command defaults from [`RunConfig::defaults`].

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::boundary::{self, ScanSettings};
use crate::dynamics::{Params, Scheme};
use crate::error::{Error, Result};
use crate::stationary::SearchBox;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Simulate,
    Classify,
    Stationary,
    PotentialGrid,
    Sweep,
    Boundary,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Simulate => "simulate",
            Command::Classify => "classify",
            Command::Stationary => "stationary",
            Command::PotentialGrid => "potential-grid",
            Command::Sweep => "sweep",
            Command::Boundary => "boundary",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub command: Command,

    pub m1: f64,
    pub m2: f64,
    pub k1: f64,
    pub k2: f64,
    pub kp1: f64,
    pub kp2: f64,
    pub step: f64,
    pub horizon: f64,
    pub escape_radius: f64,
    pub scheme: Scheme,

    /// Output stride for `simulate`; 0 picks [`Params::default_stride`].
    pub stride: usize,
    pub u0: f64,
    pub w0: f64,

    pub u_min: f64,
    pub u_max: f64,
    pub w_min: f64,
    pub w_max: f64,
    pub n_u: usize,
    pub n_w: usize,

    /// Newton seed lattice size for `stationary`.
    pub grid_n: usize,

    pub w0_min: f64,
    pub w0_max: f64,
    pub n_lines: usize,
    pub tol: f64,
    pub scan_step: f64,
    pub level: f64,
    pub band: f64,

    pub out: PathBuf,
    pub format: Format,
    pub plot: bool,
}

impl RunConfig {
    /// Defaults for `command`: the figure windows used throughout the crate.
    pub fn defaults(command: Command) -> Self {
        let p = Params::symmetric();
        let (lo, hi, n) = match command {
            Command::Simulate | Command::Classify => (-1.5, 1.5, 0),
            Command::Stationary => (-2.0, 2.0, 0),
            Command::PotentialGrid => (-1.5, 1.5, 301),
            Command::Sweep => (0.0, 1.2, 61),
            Command::Boundary => (0.0, 1.3, 131),
        };
        Self {
            command,
            m1: p.m1,
            m2: p.m2,
            k1: p.k1,
            k2: p.k2,
            kp1: p.kp1,
            kp2: p.kp2,
            step: p.step,
            horizon: p.horizon,
            escape_radius: p.escape_radius,
            scheme: p.scheme,
            stride: 0,
            u0: 0.8,
            w0: 0.9,
            u_min: lo,
            u_max: hi,
            w_min: lo,
            w_max: hi,
            n_u: n,
            n_w: n,
            grid_n: 32,
            w0_min: 0.7,
            w0_max: 1.1,
            n_lines: 20,
            tol: boundary::DEFAULT_TOL,
            scan_step: boundary::DEFAULT_SCAN_STEP,
            level: boundary::DEFAULT_LEVEL,
            band: boundary::DEFAULT_BAND,
            out: PathBuf::from("out"),
            format: Format::Csv,
            plot: false,
        }
    }

    pub fn params(&self) -> Params {
        Params {
            m1: self.m1,
            m2: self.m2,
            k1: self.k1,
            k2: self.k2,
            kp1: self.kp1,
            kp2: self.kp2,
            step: self.step,
            horizon: self.horizon,
            escape_radius: self.escape_radius,
            scheme: self.scheme,
        }
    }

    pub fn set_params(&mut self, p: &Params) {
        self.m1 = p.m1;
        self.m2 = p.m2;
        self.k1 = p.k1;
        self.k2 = p.k2;
        self.kp1 = p.kp1;
        self.kp2 = p.kp2;
        self.step = p.step;
        self.horizon = p.horizon;
        self.escape_radius = p.escape_radius;
        self.scheme = p.scheme;
    }

    pub fn u_range(&self) -> (f64, f64) {
        (self.u_min, self.u_max)
    }

    pub fn w_range(&self) -> (f64, f64) {
        (self.w_min, self.w_max)
    }

    pub fn search_box(&self) -> SearchBox {
        SearchBox {
            u: self.u_range(),
            w: self.w_range(),
        }
    }

    pub fn scan_settings(&self) -> ScanSettings {
        ScanSettings {
            tol: self.tol,
            step: self.scan_step,
        }
    }

    pub fn effective_stride(&self) -> usize {
        if self.stride == 0 {
            self.params().default_stride()
        } else {
            self.stride
        }
    }

    /// Reject configs that cannot run before any compute starts.
    pub fn validate(&self) -> Result<()> {
        self.params().validate()?;
        let bad = |msg: String| Err(Error::Config(msg));
        if !(self.u_min < self.u_max) && self.n_u != 1 {
            return bad(format!(
                "u_min ({}) must be < u_max ({})",
                self.u_min, self.u_max
            ));
        }
        if !(self.w_min < self.w_max) && self.n_w != 1 {
            return bad(format!(
                "w_min ({}) must be < w_max ({})",
                self.w_min, self.w_max
            ));
        }
        match self.command {
            Command::PotentialGrid if self.n_u < 2 || self.n_w < 2 => {
                bad("potential grid needs n_u, n_w >= 2".into())
            }
            Command::Sweep if self.n_u == 0 || self.n_w == 0 => {
                bad("sweep needs n_u, n_w >= 1".into())
            }
            Command::Stationary if self.grid_n < 16 => bad("grid_n must be >= 16".into()),
            Command::Boundary if self.n_lines == 0 => bad("n_lines must be >= 1".into()),
            Command::Boundary if !(self.tol > 0.0 && self.scan_step > 0.0) => {
                bad("tol and scan_step must be > 0".into())
            }
            _ => Ok(()),
        }
    }

    /// Apply the keys of a flat JSON object on top of `self`.
    pub fn overlay(&self, keys: &Map<String, Value>) -> Result<Self> {
        let Value::Object(mut base) =
            serde_json::to_value(self).expect("RunConfig always serializes")
        else {
            unreachable!("RunConfig serializes to an object")
        };
        for (k, v) in keys {
            base.insert(k.clone(), v.clone());
        }
        serde_json::from_value(Value::Object(base)).map_err(|e| Error::Config(e.to_string()))
    }

    /// Load a config file; `command` overrides the file's own `command` key
    /// and selects the defaults for missing keys.
    pub fn from_file(path: &Path, command: Option<Command>) -> Result<Self> {
        let keys = read_object(path)?;
        let file_command = match keys.get("command") {
            Some(v) => Some(
                serde_json::from_value::<Command>(v.clone())
                    .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?,
            ),
            None => None,
        };
        let command = command
            .or(file_command)
            .ok_or_else(|| Error::Config(format!("{}: no command given", path.display())))?;
        let mut cfg = Self::defaults(command).overlay(&keys)?;
        cfg.command = command;
        Ok(cfg)
    }

    /// Apply a flat parameter file (any subset of [`Params`] fields).
    pub fn apply_params_file(&self, path: &Path) -> Result<Self> {
        let keys = read_object(path)?;
        // Validate the key set against Params before merging.
        let merged: Params = {
            let mut base = match serde_json::to_value(self.params()) {
                Ok(Value::Object(m)) => m,
                _ => unreachable!("Params serializes to an object"),
            };
            base.extend(keys.clone());
            serde_json::from_value(Value::Object(base))
                .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?
        };
        let mut cfg = self.clone();
        cfg.set_params(&merged);
        Ok(cfg)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("RunConfig always serializes")
    }
}

fn read_object(path: &Path) -> Result<Map<String, Value>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    match serde_json::from_str::<Value>(&text) {
        Ok(Value::Object(m)) => Ok(m),
        Ok(_) => Err(Error::Config(format!(
            "{}: expected a JSON object",
            path.display()
        ))),
        Err(source) => Err(Error::Json {
            path: path.to_path_buf(),
            source,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let cfg = RunConfig::defaults(Command::Boundary);
        let back: RunConfig = serde_json::from_str(&cfg.to_json()).unwrap();
        assert_eq!(cfg, back);
    }

    #[test]
    fn overlay_and_unknown_keys() {
        let cfg = RunConfig::defaults(Command::Sweep);
        let mut keys = Map::new();
        keys.insert("n_u".into(), Value::from(5));
        let patched = cfg.overlay(&keys).unwrap();
        assert_eq!(patched.n_u, 5);
        assert_eq!(patched.n_w, cfg.n_w);
        keys.insert("bogus".into(), Value::from(1));
        assert!(matches!(cfg.overlay(&keys), Err(Error::Config(_))));
    }

    #[test]
    fn params_file_partial() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("p.json");
        fs::write(&path, r#"{"k1": 2.0, "step": 0.001}"#).unwrap();
        let cfg = RunConfig::defaults(Command::Simulate)
            .apply_params_file(&path)
            .unwrap();
        assert_eq!(cfg.k1, 2.0);
        assert_eq!(cfg.step, 0.001);
        assert_eq!(cfg.m1, 1.0);

        fs::write(&path, r#"{"u0": 2.0}"#).unwrap();
        assert!(RunConfig::defaults(Command::Simulate)
            .apply_params_file(&path)
            .is_err());
    }

    #[test]
    fn validate_rejects_before_compute() {
        let mut cfg = RunConfig::defaults(Command::PotentialGrid);
        cfg.n_u = 1;
        assert_eq!(cfg.validate().unwrap_err().exit_code(), 2);
        let mut cfg = RunConfig::defaults(Command::Simulate);
        cfg.step = -1.0;
        assert_eq!(cfg.validate().unwrap_err().exit_code(), 2);
    }
}
