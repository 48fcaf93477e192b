//! Property tests for the solver, the characteristics and the bounds.

mod common;

use common::{enumerate_count, enumerate_dyadic};
use nltv::analysis::{
    check_max_principle, check_monotonicity, check_non_crossing, term_threshold_check,
    threshold_predicate, total_variation, tv_lower_bound_count, tv_lower_bound_dyadic,
    tv_lower_bound_series, DEFAULT_TAIL_TOL,
};
use nltv::characteristics::{logistic_value, trace_characteristics};
use nltv::fv::{solve_nonlocal, Grid1D, Scheme, SolutionRecord, SolverConfig};
use nltv::harness::{DatumSpec, EpsilonSpec, RunConfig};
use nltv::model::PiecewiseConstant1D;
use proptest::prelude::*;

const DX: f64 = 1.0 / 64.0;

/// Piecewise-constant data on `[-1, 1]` with breakpoints on cell edges
/// of `DX`, plus the two tails.
fn datum_on_edges(lo: f64, hi: f64) -> impl Strategy<Value = PiecewiseConstant1D> {
    (prop::collection::vec((1usize..24, lo..=hi), 1..6), lo..=hi, lo..=hi).prop_map(
        |(pieces, left, right)| {
            let mut x = -1.0 + 8.0 * DX;
            let mut breakpoints = vec![x];
            let mut values = Vec::new();
            for (len, v) in pieces {
                x += len as f64 * DX;
                breakpoints.push(x);
                values.push(v);
            }
            PiecewiseConstant1D::new(breakpoints, values, left, right).unwrap()
        },
    )
}

fn monotone_datum() -> impl Strategy<Value = PiecewiseConstant1D> {
    // at most 75 cells from x = -0.5, so the last breakpoint stays inside the grid
    prop::collection::vec((1usize..16, 0.0..=1.0f64), 1..6).prop_map(|pieces| {
        let mut levels: Vec<f64> = pieces.iter().map(|p| p.1).collect();
        levels.sort_by(f64::total_cmp);
        let mut x = -0.5;
        let mut breakpoints = vec![x];
        for (len, _) in &pieces {
            x += *len as f64 * DX;
            breakpoints.push(x);
        }
        let left = levels[0] * 0.5;
        let right = 0.5 * (1.0 + levels[levels.len() - 1]);
        PiecewiseConstant1D::new(breakpoints, levels, left, right).unwrap()
    })
}

fn scheme() -> impl Strategy<Value = Scheme> {
    prop_oneof![Just(Scheme::Upwind), Just(Scheme::LaxFriedrichs)]
}

fn solve(datum: PiecewiseConstant1D, eps: f64, t: f64, scheme: Scheme) -> SolutionRecord {
    let grid = Grid1D::with_spacing(-1.0, 1.0, DX).unwrap();
    let mut cfg = SolverConfig::new(grid, eps, datum, t).unwrap();
    cfg.left_ghost_value = cfg.datum.left_extension();
    cfg.right_ghost_value = cfg.datum.right_extension();
    cfg.output_times = vec![0.25 * t, 0.5 * t, 0.75 * t];
    cfg.scheme = scheme;
    solve_nonlocal(&cfg).unwrap()
}

fn eps_choice() -> impl Strategy<Value = f64> {
    prop_oneof![Just(DX), Just(4.0 * DX), Just(0.25), Just(0.5)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn solutions_stay_within_datum_bounds(
        datum in datum_on_edges(0.1, 0.8),
        eps in eps_choice(),
        s in scheme(),
    ) {
        let (a, b) = (datum.min_value(), datum.max_value());
        let rec = solve(datum, eps, 0.3, s);
        let r = check_max_principle(&rec, a, b);
        prop_assert!(r.passed, "{}", r);
    }

    #[test]
    fn monotone_data_stay_monotone(datum in monotone_datum(), eps in eps_choice(), s in scheme()) {
        let rec = solve(datum, eps, 0.3, s);
        let r = check_monotonicity(&rec).unwrap();
        prop_assert!(r.passed, "{}", r);
    }

    #[test]
    fn monotone_data_do_not_gain_variation(datum in monotone_datum(), eps in eps_choice(), s in scheme()) {
        let (left, right) = (datum.left_extension(), datum.right_extension());
        let rec = solve(datum, eps, 0.3, s);
        // variation on the whole line, tails included
        let line_tv = |u: &[f64]| {
            total_variation(u) + (u[0] - left).abs() + (right - u[u.len() - 1]).abs()
        };
        let tv0 = line_tv(&rec.initial().values);
        for snap in &rec.snapshots {
            prop_assert!(line_tv(&snap.values) <= tv0 + 1e-12);
        }
    }

    #[test]
    fn mass_is_conserved_away_from_the_boundary(datum in datum_on_edges(0.0, 1.0), eps in eps_choice(), s in scheme()) {
        // zero tails: nothing enters or leaves before the data reach x = 1
        let inner = PiecewiseConstant1D::new(
            datum.breakpoints().iter().map(|x| 0.5 * x - 0.1).collect(),
            datum.values().to_vec(),
            0.0,
            0.0,
        ).unwrap();
        let rec = solve(inner, eps, 0.2, s);
        let m0 = rec.initial().mass();
        for snap in &rec.snapshots {
            prop_assert!((snap.mass() - m0).abs() <= 1e-12);
        }
    }

    #[test]
    fn characteristics_do_not_cross(
        datum in datum_on_edges(0.0, 1.0),
        mut starts in prop::collection::vec(-0.8..0.8f64, 2..8),
    ) {
        starts.sort_by(f64::total_cmp);
        let grid = Grid1D::with_spacing(-1.0, 1.0, DX).unwrap();
        let mut cfg = SolverConfig::new(grid, 0.25, datum, 0.15).unwrap();
        cfg.left_ghost_value = cfg.datum.left_extension();
        cfg.right_ghost_value = cfg.datum.right_extension();
        let rec = solve_nonlocal(&cfg).unwrap();
        let paths = trace_characteristics(&rec, &starts, 0.15).unwrap();
        let r = check_non_crossing(&paths, 1e-8);
        prop_assert!(r.passed, "{}", r);
    }

    #[test]
    fn logistic_is_nondecreasing_and_bounded(u0 in 0.0..=1.0f64, t in 0.0..5.0f64, dt in 0.0..1.0f64, eps in 0.01..2.0f64) {
        let a = logistic_value(u0, t, eps).unwrap();
        let b = logistic_value(u0, t + dt, eps).unwrap();
        prop_assert!((0.0..=1.0).contains(&a) && (0.0..=1.0).contains(&b));
        prop_assert!(b >= a - 1e-15);
        prop_assert!(a >= u0 - 1e-15);
    }

    #[test]
    fn bound_chain(tau in 0.0..3.0f64, j in 0u32..7) {
        let eps = 0.5f64.powi(j as i32);
        let s = tv_lower_bound_series(tau, eps, DEFAULT_TAIL_TOL).unwrap();
        let c = tv_lower_bound_count(tau, eps).unwrap();
        let d = tv_lower_bound_dyadic(tau, j).unwrap();
        prop_assert!(s >= c as f64 && c >= d, "{} {} {}", s, c, d);
    }

    #[test]
    fn counts_match_enumeration(tau in 0.0..3.0f64, j in 0u32..8) {
        let eps = 0.5f64.powi(j as i32);
        prop_assert_eq!(tv_lower_bound_dyadic(tau, j).unwrap(), enumerate_dyadic(tau, j));
        prop_assert_eq!(tv_lower_bound_count(tau, eps).unwrap(), enumerate_count(tau, eps));
    }

    #[test]
    fn threshold_forms_agree(k in 0u32..80, tau in 0.0..4.0f64, log_eps in -10.0..0.0f64) {
        let eps = 2f64.powf(log_eps);
        prop_assert_eq!(term_threshold_check(k, tau, eps), threshold_predicate(k, tau, eps));
    }

    #[test]
    fn grid_variation_matches_exact_on_edges(datum in datum_on_edges(0.0, 1.0)) {
        let grid = Grid1D::with_spacing(-1.0, 1.0, DX).unwrap();
        let cells = grid.project(&datum);
        // the grid sees the tails only inside [-1, 1]
        let tails = (datum.left_extension() - cells[0]).abs()
            + (datum.right_extension() - cells[cells.len() - 1]).abs();
        prop_assert!((total_variation(&cells[..]) + tails - total_variation(&datum)).abs() <= 1e-12);
        let mass: f64 = cells.iter().sum::<f64>() * DX;
        prop_assert!((mass - datum.integral(-1.0, 1.0)).abs() <= 1e-12);
    }

    #[test]
    fn run_config_text_round_trip(
        j in prop::option::of(0u32..10),
        dx in prop::option::of(1e-4..0.1f64),
        taus in prop::collection::vec(0.0..1.0f64, 0..4),
        cfl in 0.1..1.0f64,
        h in 0.01..1.0f64,
        datum in prop_oneof![
            Just(DatumSpec::Step),
            Just(DatumSpec::Blowup(None)),
            (0u32..20).prop_map(|k| DatumSpec::Blowup(Some(k))),
            (0.01..1.0f64).prop_map(DatumSpec::BarU),
            (0.0..1.0f64, 0.0..1.0f64).prop_map(|(a, b)| DatumSpec::Riemann(a, b)),
        ],
        local in any::<bool>(),
    ) {
        let cfg = RunConfig {
            epsilon: j.map(EpsilonSpec::Dyadic),
            dx,
            tau: taus,
            cfl,
            h,
            datum,
            local,
            ..RunConfig::default()
        };
        prop_assert_eq!(RunConfig::from_text(&cfg.to_text()).unwrap(), cfg);
    }
}
