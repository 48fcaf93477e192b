use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::error::{invalid_config, Error, Result};
use crate::model::{build_bar_u, build_u0, default_truncation, PiecewiseConstant1D};

/// Initial datum selector, written `blowup[:K]`, `bar-u:h`, `step`,
/// `riemann:ul,ur` or `file:path`.
#[derive(Clone, Debug, PartialEq)]
pub enum DatumSpec {
    /// Blow-up datum truncated after block `K`; `None` picks
    /// [`default_truncation`] for the grid.
    Blowup(Option<u32>),
    BarU(f64),
    /// Unit step at `0`.
    Step,
    Riemann(f64, f64),
    /// A file in the [`PiecewiseConstant1D::to_text`] format.
    File(PathBuf),
}

impl Default for DatumSpec {
    fn default() -> Self {
        DatumSpec::Blowup(None)
    }
}

impl DatumSpec {
    pub fn build(&self, dx: f64) -> Result<PiecewiseConstant1D> {
        match self {
            DatumSpec::Blowup(k) => Ok(build_u0(k.unwrap_or_else(|| default_truncation(dx)))),
            DatumSpec::BarU(h) => build_bar_u(*h),
            DatumSpec::Step => Ok(PiecewiseConstant1D::step(0.0, 0.0, 1.0)),
            DatumSpec::Riemann(l, r) => {
                if !l.is_finite() || !r.is_finite() {
                    return Err(invalid_config!("Riemann states must be finite"));
                }
                Ok(PiecewiseConstant1D::step(0.0, *l, *r))
            }
            DatumSpec::File(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
                PiecewiseConstant1D::from_text(&text)
            }
        }
    }
}

impl fmt::Display for DatumSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DatumSpec::Blowup(None) => write!(f, "blowup"),
            DatumSpec::Blowup(Some(k)) => write!(f, "blowup:{k}"),
            DatumSpec::BarU(h) => write!(f, "bar-u:{h}"),
            DatumSpec::Step => write!(f, "step"),
            DatumSpec::Riemann(l, r) => write!(f, "riemann:{l},{r}"),
            DatumSpec::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}

impl FromStr for DatumSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (head, arg) = match s.split_once(':') {
            Some((h, a)) => (h, Some(a.trim())),
            None => (s, None),
        };
        let num = |v: &str| -> Result<f64> {
            v.trim()
                .parse()
                .map_err(|_| invalid_config!("bad number {v:?} in datum {s:?}"))
        };
        match (head, arg) {
            ("blowup", None) => Ok(DatumSpec::Blowup(None)),
            ("blowup", Some(k)) => k
                .parse()
                .map(|k| DatumSpec::Blowup(Some(k)))
                .map_err(|_| invalid_config!("bad truncation {k:?} in datum {s:?}")),
            ("bar-u" | "bar_u", Some(h)) => {
                let h = num(h)?;
                if !(h > 0.0) {
                    return Err(invalid_config!("bar-u width must be positive, got {h}"));
                }
                Ok(DatumSpec::BarU(h))
            }
            ("step", None) => Ok(DatumSpec::Step),
            ("riemann", Some(states)) => {
                let (l, r) = states
                    .split_once(',')
                    .ok_or_else(|| invalid_config!("riemann needs `ul,ur`, got {states:?}"))?;
                Ok(DatumSpec::Riemann(num(l)?, num(r)?))
            }
            ("file", Some(p)) if !p.is_empty() => Ok(DatumSpec::File(PathBuf::from(p))),
            _ => Err(invalid_config!("unknown datum {s:?}")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        for s in ["blowup", "blowup:7", "bar-u:0.1", "step", "riemann:0,1", "riemann:1,0.25", "file:a/b.txt"] {
            let d: DatumSpec = s.parse().unwrap();
            assert_eq!(d.to_string(), s);
        }
        assert_eq!("bar_u:0.5".parse::<DatumSpec>().unwrap(), DatumSpec::BarU(0.5));
    }

    #[test]
    fn rejects_unknown() {
        for s in ["", "blowup:x", "bar-u", "bar-u:-1", "riemann:1", "riemann:a,b", "file:", "zigzag"] {
            let e = s.parse::<DatumSpec>().unwrap_err();
            assert!(e.is_configuration(), "{s}");
        }
    }

    #[test]
    fn builds() {
        assert_eq!(DatumSpec::Blowup(Some(3)).build(0.01).unwrap(), build_u0(3));
        assert_eq!(DatumSpec::Blowup(None).build(1.0 / 256.0).unwrap(), build_u0(6));
        let r = DatumSpec::Riemann(1.0, 0.0).build(0.1).unwrap();
        assert_eq!((r.eval(-1.0), r.eval(0.0)), (1.0, 0.0));
        assert!(matches!(
            DatumSpec::File("/nonexistent/datum.txt".into()).build(0.1),
            Err(Error::Io { .. })
        ));
    }
}
