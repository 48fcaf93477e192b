//! Named verification suites on fixed configurations.

use crate::analysis::{
    check_confinement, check_max_principle, check_monotonicity, check_non_crossing, check_plateau,
    series_partial_sum, term_threshold_check, threshold_predicate, tv_lower_bound_count,
    tv_lower_bound_dyadic, tv_lower_bound_series, Location, VerifyReport, DEFAULT_TAIL_TOL,
};
use crate::characteristics::trace_characteristics;
use crate::error::{invalid_config, Result};
use crate::fv::{solve_nonlocal, Grid1D, Scheme, SolutionRecord, SolverConfig};
use crate::model::{build_u0, default_truncation, PiecewiseConstant1D};

pub const SUITES: [&str; 5] = ["max-principle", "monotonicity", "plateau", "characteristics", "bounds"];

/// Mesh tolerance of the plateau check.
pub const PLATEAU_TOL: f64 = 5e-3;
/// Tolerance of the non-crossing check.
pub const NON_CROSSING_TOL: f64 = 1e-8;
/// Tolerance of the fixed point `X(t, 0) = 0`.
pub const ORIGIN_TOL: f64 = 1e-6;

fn blowup_run(j: u32, dx: f64, t_final: f64, scheme: Scheme) -> Result<SolutionRecord> {
    let grid = Grid1D::with_spacing(-1.5, 1.0, dx)?;
    let mut cfg = SolverConfig::new(grid, 0.5f64.powi(j as i32), build_u0(default_truncation(dx)), t_final)?;
    cfg.scheme = scheme;
    let eps = cfg.epsilon();
    cfg.field_window = Some((-eps - 2.0 * dx, 2.0 * dx));
    solve_nonlocal(&cfg)
}

fn step_run(scheme: Scheme) -> Result<SolutionRecord> {
    let grid = Grid1D::with_spacing(-1.5, 1.0, 1.0 / 256.0)?;
    let mut cfg = SolverConfig::new(grid, 0.0625, PiecewiseConstant1D::step(0.0, 0.0, 1.0), 0.5)?;
    cfg.scheme = scheme;
    cfg.field_stride = usize::MAX;
    solve_nonlocal(&cfg)
}

fn renamed(mut r: VerifyReport, name: String) -> VerifyReport {
    r.name = name;
    r
}

/// Blow-up datum, `eps = 2^-4`, `dx = 4^-4`, up to `t = 0.5`, both schemes.
pub fn suite_max_principle() -> Result<Vec<VerifyReport>> {
    [Scheme::Upwind, Scheme::LaxFriedrichs]
        .into_iter()
        .map(|s| {
            let rec = blowup_run(4, 0.25f64.powi(4), 0.5, s)?;
            Ok(renamed(check_max_principle(&rec, 0.0, 1.0), format!("max-principle ({s})")))
        })
        .collect()
}

/// Unit step, both schemes, up to `t = 0.5`.
pub fn suite_monotonicity() -> Result<Vec<VerifyReport>> {
    [Scheme::Upwind, Scheme::LaxFriedrichs]
        .into_iter()
        .map(|s| {
            let rec = step_run(s)?;
            Ok(renamed(check_monotonicity(&rec)?, format!("monotonicity ({s})")))
        })
        .collect()
}

/// Blow-up datum, `eps = 2^-4`, `dx = 4^-5`, up to `t = 0.5`.
pub fn suite_plateau() -> Result<Vec<VerifyReport>> {
    let rec = blowup_run(4, 0.25f64.powi(5), 0.5, Scheme::Upwind)?;
    Ok(vec![check_plateau(&rec, PLATEAU_TOL)])
}

/// Twenty characteristics from `[-eps, 0]` on the blow-up datum: origin
/// fixed, confinement to `[y, 0]`, no crossing.
pub fn suite_characteristics() -> Result<Vec<VerifyReport>> {
    let rec = blowup_run(4, 0.25f64.powi(5), 0.5, Scheme::Upwind)?;
    let eps = rec.config.epsilon();
    let starts: Vec<f64> = (0..20).map(|i| -eps * i as f64 / 19.0).collect();
    let paths = trace_characteristics(&rec, &starts, rec.config.t_final)?;
    let origin = &paths[0];
    let (idx, worst) = origin
        .positions
        .iter()
        .enumerate()
        .fold((0, 0.0f64), |acc, (i, x)| if x.abs() > acc.1 { (i, x.abs()) } else { acc });
    Ok(vec![
        VerifyReport::new(
            "origin",
            worst,
            Some(Location {
                index: 0,
                time: origin.times[idx],
            }),
            ORIGIN_TOL,
        ),
        check_confinement(&paths, 0.0, 1e-12),
        check_non_crossing(&paths, NON_CROSSING_TOL),
    ])
}

/// Sample grid for the bound checks.
pub fn bound_grid() -> Vec<(f64, u32)> {
    let taus = [0.0, 0.01, 0.05, 0.1, 0.2, 0.35, 0.5, 0.75, 1.0, 2.0];
    taus.iter()
        .flat_map(|&t| (0..5u32).map(move |j| (t, j)))
        .collect()
}

/// Chain `series >= count >= dyadic` on [`bound_grid`] and agreement of
/// the threshold test with its closed form on a deterministic grid of
/// `10^4` triples.
pub fn suite_bounds() -> Result<Vec<VerifyReport>> {
    let mut worst = 0.0f64;
    let mut at = None;
    for (i, &(tau, j)) in bound_grid().iter().enumerate() {
        let eps = 0.5f64.powi(j as i32);
        let s = tv_lower_bound_series(tau, eps, DEFAULT_TAIL_TOL)?;
        let c = tv_lower_bound_count(tau, eps)? as f64;
        let d = tv_lower_bound_dyadic(tau, j)? as f64;
        let v = (c - s).max(d - c);
        if v > worst {
            worst = v;
            at = Some(Location { index: i, time: tau });
        }
    }
    let chain = VerifyReport::new("bound chain", worst, at, 0.0);

    let mut mismatches = 0usize;
    for i in 0..10_000u32 {
        let k = i % 40;
        let tau = ((i / 40) % 25) as f64 * 0.08;
        let eps = 0.5f64.powf(((i / 1000) as f64) * 0.7);
        if term_threshold_check(k, tau, eps) != threshold_predicate(k, tau, eps) {
            mismatches += 1;
        }
    }
    let threshold = VerifyReport::new("threshold equivalence", mismatches as f64, None, 0.0);

    // the partial sums never exceed the full series
    let partial = series_partial_sum(0.2, 0.0625, 2..6);
    let full = tv_lower_bound_series(0.2, 0.0625, DEFAULT_TAIL_TOL)?;
    let order = VerifyReport::new("partial sum order", (partial - full).max(0.0), None, 0.0);
    Ok(vec![chain, threshold, order])
}

/// Expands `all` and rejects unknown names with an invalid-configuration error.
pub fn resolve_suites(names: &[String]) -> Result<Vec<&'static str>> {
    let mut out: Vec<&'static str> = Vec::new();
    let requested: Vec<&str> = if names.is_empty() {
        vec!["all"]
    } else {
        names.iter().map(String::as_str).collect()
    };
    for name in requested {
        let found: Vec<&'static str> = if name == "all" {
            SUITES.to_vec()
        } else {
            vec![*SUITES
                .iter()
                .find(|s| **s == name)
                .ok_or_else(|| invalid_config!("unknown suite {name:?}"))?]
        };
        for s in found {
            if !out.contains(&s) {
                out.push(s);
            }
        }
    }
    Ok(out)
}

/// Runs the named suites (`all` for every suite) and returns one report per
/// check.
pub fn run_verify(names: &[String]) -> Result<Vec<VerifyReport>> {
    let suites = resolve_suites(names)?;
    let mut reports = Vec::new();
    for s in suites {
        reports.extend(match s {
            "max-principle" => suite_max_principle()?,
            "monotonicity" => suite_monotonicity()?,
            "plateau" => suite_plateau()?,
            "characteristics" => suite_characteristics()?,
            "bounds" => suite_bounds()?,
            _ => unreachable!("resolve_suites returns known names"),
        });
    }
    Ok(reports)
}
