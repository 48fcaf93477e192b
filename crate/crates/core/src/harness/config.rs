//! Run parameters and their `key = value` file format.

use std::fmt::Write as _;
use std::path::PathBuf;

use super::DatumSpec;
use crate::error::{invalid_config, Error, Result};
use crate::fv::{Grid1D, Scheme, SolverConfig};

/// Smoothing length, given directly or as `2^-j`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum EpsilonSpec {
    Value(f64),
    Dyadic(u32),
}

impl EpsilonSpec {
    pub fn value(&self) -> f64 {
        match *self {
            EpsilonSpec::Value(e) => e,
            EpsilonSpec::Dyadic(j) => 0.5f64.powi(j as i32),
        }
    }
}

pub const DEFAULT_DYADIC_J: u32 = 4;
pub const DEFAULT_DOMAIN: (f64, f64) = (-1.5, 1.0);
pub const DEFAULT_T_FINAL: f64 = 0.2;
pub const DEFAULT_CFL: f64 = 0.9;
/// Cells per smoothing length when `dx` is not given.
pub const DEFAULT_CELLS_PER_EPSILON: f64 = 16.0;

/// Parameters shared by every subcommand. Unset options fall back to the
/// defaults documented on each accessor.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub epsilon: Option<EpsilonSpec>,
    pub dx: Option<f64>,
    pub domain: (f64, f64),
    pub t_final: Option<f64>,
    pub tau: Vec<f64>,
    pub datum: DatumSpec,
    pub scheme: Scheme,
    pub cfl: f64,
    pub out: PathBuf,
    /// Solve the local equation instead of the nonlocal one.
    pub local: bool,
    /// Characteristic starting points.
    pub starts: Vec<f64>,
    /// Dyadic indices of a sweep.
    pub j_list: Vec<u32>,
    /// Block width of the mechanism datum.
    pub h: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            epsilon: None,
            dx: None,
            domain: DEFAULT_DOMAIN,
            t_final: None,
            tau: Vec::new(),
            datum: DatumSpec::default(),
            scheme: Scheme::Upwind,
            cfl: DEFAULT_CFL,
            out: PathBuf::from("out"),
            local: false,
            starts: Vec::new(),
            j_list: (2..=6).collect(),
            h: 0.1,
        }
    }
}

fn parse_list<T: std::str::FromStr>(key: &str, v: &str) -> Result<Vec<T>> {
    v.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| invalid_config!("bad entry {s:?} for {key}")))
        .collect()
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

impl RunConfig {
    /// `epsilon`, default `2^-4`.
    pub fn epsilon_value(&self) -> f64 {
        self.epsilon
            .unwrap_or(EpsilonSpec::Dyadic(DEFAULT_DYADIC_J))
            .value()
    }

    /// `dx`, default `epsilon / 16`.
    pub fn dx_value(&self) -> f64 {
        self.dx
            .unwrap_or_else(|| self.epsilon_value() / DEFAULT_CELLS_PER_EPSILON)
    }

    /// `t_final`, default the largest `tau`, or `0.2` without any.
    pub fn t_final_value(&self) -> f64 {
        self.t_final.unwrap_or_else(|| {
            self.tau
                .iter()
                .copied()
                .fold(None, |m: Option<f64>, t| Some(m.map_or(t, |m| m.max(t))))
                .unwrap_or(DEFAULT_T_FINAL)
        })
    }

    /// Sets one option from its file key and textual value.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let v = value.trim();
        let num = |v: &str| -> Result<f64> {
            v.parse::<f64>()
                .map_err(|_| invalid_config!("bad number {v:?} for {key}"))
        };
        match key {
            "epsilon" => self.epsilon = Some(EpsilonSpec::Value(num(v)?)),
            "dyadic_j" => {
                let j = v
                    .parse()
                    .map_err(|_| invalid_config!("bad dyadic index {v:?}"))?;
                self.epsilon = Some(EpsilonSpec::Dyadic(j));
            }
            "dx" => self.dx = Some(num(v)?),
            "domain" => {
                let (a, b) = v
                    .split_once(',')
                    .ok_or_else(|| invalid_config!("domain needs `a,b`, got {v:?}"))?;
                self.domain = (num(a.trim())?, num(b.trim())?);
            }
            "t_final" => self.t_final = Some(num(v)?),
            "tau" => self.tau = parse_list(key, v)?,
            "datum" => self.datum = v.parse()?,
            "scheme" => {
                self.scheme = v
                    .parse()
                    .map_err(|_| invalid_config!("unknown scheme {v:?}"))?
            }
            "cfl" => self.cfl = num(v)?,
            "out" => self.out = PathBuf::from(v),
            "local" => {
                self.local = v
                    .parse()
                    .map_err(|_| invalid_config!("local must be true or false, got {v:?}"))?
            }
            "starts" => self.starts = parse_list(key, v)?,
            "j_list" => self.j_list = parse_list(key, v)?,
            "h" => self.h = num(v)?,
            other => return Err(invalid_config!("unknown key {other:?}")),
        }
        Ok(())
    }

    /// Applies a `key = value` file on top of `self`. Blank lines and `#`
    /// comments are ignored.
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| Error::Parse {
                line: lineno + 1,
                message: format!("expected `key = value`, got {line:?}"),
            })?;
            self.set(k.trim(), v).map_err(|e| Error::Parse {
                line: lineno + 1,
                message: e.to_string(),
            })?;
        }
        Ok(())
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        cfg.apply_text(text)?;
        Ok(cfg)
    }

    /// Every option in `key = value` form; [`from_text`](Self::from_text)
    /// reads it back to an equal config.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        match self.epsilon {
            Some(EpsilonSpec::Value(e)) => {
                let _ = writeln!(out, "epsilon = {e}");
            }
            Some(EpsilonSpec::Dyadic(j)) => {
                let _ = writeln!(out, "dyadic_j = {j}");
            }
            None => {}
        }
        if let Some(dx) = self.dx {
            let _ = writeln!(out, "dx = {dx}");
        }
        let _ = writeln!(out, "domain = {},{}", self.domain.0, self.domain.1);
        if let Some(t) = self.t_final {
            let _ = writeln!(out, "t_final = {t}");
        }
        let _ = writeln!(out, "tau = {}", join(&self.tau));
        let _ = writeln!(out, "datum = {}", self.datum);
        let _ = writeln!(out, "scheme = {}", self.scheme);
        let _ = writeln!(out, "cfl = {}", self.cfl);
        let _ = writeln!(out, "out = {}", self.out.display());
        let _ = writeln!(out, "local = {}", self.local);
        let _ = writeln!(out, "starts = {}", join(&self.starts));
        let _ = writeln!(out, "j_list = {}", join(&self.j_list));
        let _ = writeln!(out, "h = {}", self.h);
        out
    }

    pub fn grid(&self) -> Result<Grid1D> {
        let (a, b) = self.domain;
        Grid1D::with_spacing(a, b, self.dx_value()).map_err(Error::into_config)
    }

    /// The solver configuration, with ghost values taken from the tails of
    /// the datum. `epsilon` is not checked against `dx` for local runs.
    pub fn solver_config(&self) -> Result<SolverConfig> {
        let grid = self.grid()?;
        let datum = self.datum.build(grid.dx())?;
        let t_final = self.t_final_value();
        // the local solver has no kernel; any admissible width will do
        let eps = if self.local { grid.dx() } else { self.epsilon_value() };
        let mut cfg = SolverConfig::new(grid, eps, datum, t_final)
            .map_err(Error::into_config)?;
        cfg.left_ghost_value = cfg.datum.left_extension();
        cfg.right_ghost_value = cfg.datum.right_extension();
        cfg.output_times = self.tau.clone();
        cfg.scheme = self.scheme;
        cfg.cfl = self.cfl;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Checks every numeric constraint, reading a datum file if one is named.
    pub fn validate(&self) -> Result<()> {
        if !(self.h > 0.0) {
            return Err(invalid_config!("h must be positive, got {}", self.h));
        }
        if let Some(EpsilonSpec::Value(e)) = self.epsilon {
            if !(e > 0.0) || !e.is_finite() {
                return Err(invalid_config!("epsilon must be positive, got {e}"));
            }
        }
        self.solver_config().map(|_| ())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        let c = RunConfig::default();
        assert_eq!(c.epsilon_value(), 0.0625);
        assert_eq!(c.dx_value(), 0.0625 / 16.0);
        assert_eq!(c.t_final_value(), 0.2);
        let s = c.solver_config().unwrap();
        assert_eq!((s.left_ghost_value, s.right_ghost_value), (0.0, 1.0));
        assert_eq!(s.cells_per_epsilon().unwrap(), 16);
    }

    #[test]
    fn text_round_trip() {
        let mut c = RunConfig::default();
        c.set("dyadic_j", "3").unwrap();
        c.set("tau", "0.1, 0.2").unwrap();
        c.set("datum", "riemann:0,1").unwrap();
        c.set("scheme", "lax-friedrichs").unwrap();
        c.set("starts", "-0.1,-0.05").unwrap();
        assert_eq!(c.t_final_value(), 0.2);
        let back = RunConfig::from_text(&c.to_text()).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn later_keys_override() {
        let c = RunConfig::from_text("dyadic_j = 2\nepsilon = 0.3 # comment\n").unwrap();
        assert_eq!(c.epsilon, Some(EpsilonSpec::Value(0.3)));
    }

    #[test]
    fn errors_are_configuration_errors() {
        assert!(RunConfig::from_text("nonsense").unwrap_err().is_configuration());
        assert!(RunConfig::from_text("colour = blue").unwrap_err().is_configuration());
        assert!(matches!(
            RunConfig::from_text("cfl = fast"),
            Err(Error::Parse { line: 1, .. })
        ));
        let c = RunConfig::from_text("epsilon = 0.1\ndx = 0.03").unwrap();
        assert!(c.validate().unwrap_err().is_configuration());
        let c = RunConfig::from_text("cfl = 1.5").unwrap();
        assert!(c.validate().is_err());
        let c = RunConfig::from_text("tau = 0.3\nt_final = 0.2").unwrap();
        assert!(c.validate().is_err());
    }
}
