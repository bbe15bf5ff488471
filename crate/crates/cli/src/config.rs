//! Flat key=value run configuration with command-line overrides.

use meandim::params::{ConstructionParams, Mode};
use meandim::synthesis::ExpSign;
use meandim::{Error, Result};
use serde::Serialize;
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub a: f64,
    pub b: f64,
    pub s: f64,
    pub mode: Mode,
    /// Explicit lattice parameters; when absent they are derived.
    pub p: Option<u32>,
    pub q: Option<u32>,
    pub eps0: Option<f64>,
    pub c: Option<f64>,
    pub search_bound: u32,
    pub k_max: u32,
    pub seed: u64,
    /// Synthesis window half-width in coefficient nodes.
    pub window_radius: i64,
    pub spectrum_radius: f64,
    pub spectrum_step: f64,
    pub tol_band: f64,
    pub tol_roundtrip: f64,
    pub trials: u32,
    pub exp_sign: ExpSign,
    pub out: PathBuf,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            a: 0.0,
            b: 3.0,
            s: 1.0,
            mode: Mode::Strict,
            p: None,
            q: None,
            eps0: None,
            c: None,
            search_bound: 64,
            k_max: 2,
            seed: 0,
            window_radius: 200,
            spectrum_radius: 128.0,
            spectrum_step: 1.0 / 16.0,
            tol_band: 0.99,
            tol_roundtrip: 1e-3,
            trials: 200,
            exp_sign: ExpSign::Positive,
            out: PathBuf::from("out"),
        }
    }
}

impl RunConfig {
    pub fn from_file(path: &Path) -> Result<RunConfig> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
        Self::from_str_flat(&text)
    }

    pub fn from_str_flat(text: &str) -> Result<RunConfig> {
        let mut cfg = RunConfig::default();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::InvalidArgument(format!("line {}: expected key=value", lineno + 1))
            })?;
            cfg.set(key.trim(), value.trim())?;
        }
        Ok(cfg)
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let bad = |k: &str, v: &str| Error::InvalidArgument(format!("bad value `{v}` for `{k}`"));
        match key {
            "a" => self.a = value.parse().map_err(|_| bad(key, value))?,
            "b" => self.b = value.parse().map_err(|_| bad(key, value))?,
            "s" => self.s = value.parse().map_err(|_| bad(key, value))?,
            "mode" => self.mode = Mode::parse(value)?,
            "p" => self.p = Some(value.parse().map_err(|_| bad(key, value))?),
            "q" => self.q = Some(value.parse().map_err(|_| bad(key, value))?),
            "eps0" => self.eps0 = Some(value.parse().map_err(|_| bad(key, value))?),
            "c" => self.c = Some(value.parse().map_err(|_| bad(key, value))?),
            "search_bound" => self.search_bound = value.parse().map_err(|_| bad(key, value))?,
            "kmax" => self.k_max = value.parse().map_err(|_| bad(key, value))?,
            "seed" => self.seed = value.parse().map_err(|_| bad(key, value))?,
            "window_radius" => self.window_radius = value.parse().map_err(|_| bad(key, value))?,
            "spectrum_radius" => {
                self.spectrum_radius = value.parse().map_err(|_| bad(key, value))?
            }
            "spectrum_step" => self.spectrum_step = value.parse().map_err(|_| bad(key, value))?,
            "tol_band" => self.tol_band = value.parse().map_err(|_| bad(key, value))?,
            "tol_roundtrip" => self.tol_roundtrip = value.parse().map_err(|_| bad(key, value))?,
            "trials" => self.trials = value.parse().map_err(|_| bad(key, value))?,
            "exp_sign" => self.exp_sign = ExpSign::parse(value)?,
            "out" => self.out = PathBuf::from(value),
            other => return Err(Error::InvalidArgument(format!("unknown key `{other}`"))),
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        if self.k_max < 1 {
            return Err(Error::InvalidArgument("kmax must be >= 1".into()));
        }
        for (name, v) in [
            ("tol_band", self.tol_band),
            ("tol_roundtrip", self.tol_roundtrip),
            ("spectrum_radius", self.spectrum_radius),
            ("spectrum_step", self.spectrum_step),
        ] {
            // negated form also rejects NaN
            #[allow(clippy::neg_cmp_op_on_partial_ord)]
            if !(v > 0.0) {
                return Err(Error::InvalidArgument(format!("{name} must be > 0")));
            }
        }
        if self.window_radius < 1 {
            return Err(Error::InvalidArgument("window_radius must be >= 1".into()));
        }
        Ok(())
    }

    /// Explicit params when all four are present, otherwise derived.
    pub fn resolve_params(&self) -> Result<ConstructionParams> {
        match (self.p, self.q, self.eps0, self.c) {
            (Some(p), Some(q), Some(eps0), Some(c)) => Ok(ConstructionParams {
                a: self.a,
                b: self.b,
                s: self.s,
                p,
                q,
                eps0,
                c,
                mode: self.mode,
            }),
            (None, None, None, None) => {
                meandim::params::derive_params(self.a, self.b, self.s, self.mode, self.search_bound)
            }
            _ => Err(Error::InvalidArgument(
                "p, q, eps0, c must be given together or not at all".into(),
            )),
        }
    }
}
