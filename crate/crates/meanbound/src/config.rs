//! Suite configuration: defaults, flat `key = value` files and validation.

use meanbound_core::matrix::LOEWNER_REL_TOL;
use meanbound_core::scalar::{MAX_DEPTH, TAU_REL};
use meanbound_core::{Family, OperatorFamily};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::number::{parse_range, parse_real, parse_uint_list};

/// Scalar checks that are not a single bound family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AuxCheck {
    /// Classical scalar mean ordering: Young and the Heinz sandwich.
    MeanSandwich,
    /// Refinement index coherence and nonnegativity of `S_n`.
    RefinementIndices,
    /// Dyadic log limit and `x - 1 - ln x >= 0`.
    LogLimit,
}

impl AuxCheck {
    pub const ALL: [AuxCheck; 3] = [AuxCheck::MeanSandwich, AuxCheck::RefinementIndices, AuxCheck::LogLimit];

    pub fn name(&self) -> &'static str {
        match self {
            AuxCheck::MeanSandwich => "mean-sandwich",
            AuxCheck::RefinementIndices => "refinement-indices",
            AuxCheck::LogLimit => "log-limit",
        }
    }
}

/// Families selected by a configuration's `families` list.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Selection {
    pub scalar: Vec<Family>,
    pub aux: Vec<AuxCheck>,
    pub operator: Vec<OperatorFamily>,
    pub comparison: bool,
}

impl Selection {
    /// Resolves names. Accepts `all`, `scalar`, `operator`, `comparison`, any
    /// scalar or operator family name, or an auxiliary check name.
    pub fn resolve(names: &[String]) -> Result<Self> {
        let mut s = Selection::default();
        for raw in names {
            let name = raw.trim().replace('_', "-");
            match name.as_str() {
                "all" => {
                    s.scalar.extend(Family::ALL);
                    s.aux.extend(AuxCheck::ALL);
                    s.operator.extend(OperatorFamily::ALL);
                    s.comparison = true;
                }
                "scalar" => {
                    s.scalar.extend(Family::ALL);
                    s.aux.extend(AuxCheck::ALL);
                }
                "operator" => s.operator.extend(OperatorFamily::ALL),
                "comparison" => s.comparison = true,
                other => {
                    if let Some(f) = Family::parse(other) {
                        s.scalar.push(f);
                    } else if let Some(f) = OperatorFamily::parse(other) {
                        s.operator.push(f);
                    } else if let Some(c) = AuxCheck::ALL.iter().find(|c| c.name() == other) {
                        s.aux.push(*c);
                    } else {
                        return Err(Error::Config(format!("unknown family {raw:?}")));
                    }
                }
            }
        }
        s.scalar.sort();
        s.scalar.dedup();
        s.aux.sort();
        s.aux.dedup();
        s.operator.sort();
        s.operator.dedup();
        Ok(s)
    }

    pub fn is_empty(&self) -> bool {
        self.scalar.is_empty() && self.aux.is_empty() && self.operator.is_empty() && !self.comparison
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Trials per family.
    pub trials: usize,
    /// Range for `a` and `b` (sampled log-uniformly).
    pub scalar_range: (f64, f64),
    pub v_range: (f64, f64),
    pub dims: Vec<usize>,
    pub cond_max: f64,
    pub depths: Vec<u32>,
    pub families: Vec<String>,
    /// Minimum distance of sampled `v` from hypothesis-window endpoints.
    pub margin: f64,
    /// Grid resolution per axis for the comparison claims.
    pub grid: usize,
    pub tau_rel: f64,
    pub loewner_rel: f64,
    /// Keep every trial in `results`, not only the worst per family.
    pub record_all: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            trials: 1000,
            scalar_range: (1e-3, 1e3),
            v_range: (-6.0, 6.0),
            dims: vec![1, 2, 4, 8],
            cond_max: 1e4,
            depths: (1..=6).collect(),
            families: vec!["all".to_string()],
            margin: 1e-6,
            grid: 50,
            tau_rel: TAU_REL,
            loewner_rel: LOEWNER_REL_TOL,
            record_all: false,
        }
    }
}

fn parse_bool(s: &str) -> Result<bool> {
    match s.trim() {
        "true" | "1" | "yes" => Ok(true),
        "false" | "0" | "no" => Ok(false),
        other => Err(Error::Config(format!("expected a boolean, got {other:?}"))),
    }
}

impl SuiteConfig {
    /// Sets one key. Keys are those of the struct; `-` and `_` are
    /// interchangeable.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let cfg_err = |e: Error| Error::Config(format!("{key}: {e}"));
        let value = value.trim();
        match key.trim().replace('-', "_").as_str() {
            "seed" => {
                self.seed = value
                    .parse()
                    .map_err(|_| Error::Config(format!("seed: not a u64: {value:?}")))?
            }
            "trials" => {
                self.trials = value
                    .parse()
                    .map_err(|_| Error::Config(format!("trials: not an integer: {value:?}")))?
            }
            "scalar_range" => self.scalar_range = parse_range(value).map_err(cfg_err)?,
            "v_range" => self.v_range = parse_range(value).map_err(cfg_err)?,
            "dims" => {
                self.dims = parse_uint_list(value)
                    .map_err(cfg_err)?
                    .into_iter()
                    .map(|d| d as usize)
                    .collect()
            }
            "cond_max" => self.cond_max = parse_real(value).map_err(cfg_err)?,
            "depths" => self.depths = parse_uint_list(value).map_err(cfg_err)?,
            "families" => {
                self.families = value
                    .split(',')
                    .map(|s| s.trim().to_string())
                    .filter(|s| !s.is_empty())
                    .collect()
            }
            "margin" => self.margin = parse_real(value).map_err(cfg_err)?,
            "grid" => {
                self.grid = value
                    .parse()
                    .map_err(|_| Error::Config(format!("grid: not an integer: {value:?}")))?
            }
            "tau_rel" => self.tau_rel = parse_real(value).map_err(cfg_err)?,
            "loewner_rel" => self.loewner_rel = parse_real(value).map_err(cfg_err)?,
            "record_all" => self.record_all = parse_bool(value)?,
            other => return Err(Error::Config(format!("unknown key {other:?}"))),
        }
        Ok(())
    }

    /// Applies a flat `key = value` file. `#` starts a comment.
    pub fn apply_kv(&mut self, text: &str) -> Result<()> {
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| Error::Parse {
                context: "config: ".to_string(),
                line: i + 1,
                msg: format!("expected key = value, got {line:?}"),
            })?;
            self.set(k, v)?;
        }
        Ok(())
    }

    pub fn from_kv(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        cfg.apply_kv(text)?;
        Ok(cfg)
    }

    /// Checks every invariant and resolves the family list.
    pub fn validate(&self) -> Result<Selection> {
        let bad = |m: String| Err(Error::Config(m));
        if self.trials == 0 {
            return bad("trials must be at least 1".into());
        }
        let (lo, hi) = self.scalar_range;
        if !(lo > 0.0 && lo < hi && hi.is_finite()) {
            return bad(format!("scalar_range must satisfy 0 < lo < hi, got ({lo}, {hi})"));
        }
        let (lo, hi) = self.v_range;
        if !(lo < hi && lo.is_finite() && hi.is_finite()) {
            return bad(format!("v_range must satisfy lo < hi, got ({lo}, {hi})"));
        }
        if self.dims.is_empty() || self.dims.contains(&0) {
            return bad("dims must be a nonempty list of positive integers".into());
        }
        if !(self.cond_max >= 1.0 && self.cond_max.is_finite()) {
            return bad(format!("cond_max must be >= 1, got {}", self.cond_max));
        }
        if self.depths.is_empty() || self.depths.iter().any(|&n| n == 0 || n > MAX_DEPTH) {
            return bad(format!("depths must be a nonempty list within 1..={MAX_DEPTH}"));
        }
        if !(self.margin >= 0.0 && self.margin.is_finite()) {
            return bad(format!("margin must be >= 0, got {}", self.margin));
        }
        if self.grid < 2 {
            return bad("grid must be at least 2".into());
        }
        if !(self.tau_rel >= 0.0 && self.loewner_rel >= 0.0) {
            return bad("tolerances must be nonnegative".into());
        }
        let sel = Selection::resolve(&self.families)?;
        if sel.is_empty() {
            return bad("no families selected".into());
        }
        Ok(sel)
    }
}
