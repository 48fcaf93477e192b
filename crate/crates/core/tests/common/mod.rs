//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

use std::f64::consts::LN_2;
use std::io::Write;

/// Classical RK4 for `u' = u (1 - u) / eps` with `steps` equal steps.
pub fn rk4_logistic(u0: f64, t: f64, eps: f64, steps: usize) -> f64 {
    let f = |u: f64| u * (1.0 - u) / eps;
    let h = t / steps as f64;
    let mut u = u0;
    for _ in 0..steps {
        let k1 = f(u);
        let k2 = f(u + 0.5 * h * k1);
        let k3 = f(u + 0.5 * h * k2);
        let k4 = f(u + h * k3);
        u += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    u
}

/// Counts integers `k >= 0` with `2k >= j` and `k ln 2 <= 2^j tau`.
pub fn enumerate_dyadic(tau: f64, j: u32) -> u64 {
    let budget = tau * 2f64.powi(j as i32);
    (0u32..100_000)
        .take_while(|&k| k as f64 * LN_2 <= budget)
        .filter(|&k| 2 * k >= j)
        .count() as u64
}

/// Counts integers `k` with `4^-k <= eps` and `2^k <= 1 + e^{tau/eps}`.
pub fn enumerate_count(tau: f64, eps: f64) -> u64 {
    let cap = 1.0 + (tau / eps).exp();
    (0i32..1000)
        .take_while(|&k| 2f64.powi(k) <= cap)
        .filter(|&k| 4f64.powi(-k) <= eps)
        .count() as u64
}

/// Entropy solution of the Riemann problem for `f(u) = u (1 - u)` at
/// `x / t = xi`.
pub fn riemann_exact(ul: f64, ur: f64, xi: f64) -> f64 {
    if ul <= ur {
        // concave flux: increasing data give a shock
        let s = 1.0 - ul - ur;
        if xi < s {
            ul
        } else {
            ur
        }
    } else {
        // f'(u) = 1 - 2u runs from 1 - 2 ul up to 1 - 2 ur
        if xi <= 1.0 - 2.0 * ul {
            ul
        } else if xi >= 1.0 - 2.0 * ur {
            ur
        } else {
            0.5 * (1.0 - xi)
        }
    }
}

/// Position at time `t` of the characteristic from `y` in `[-eps, 0]`,
/// given the datum mass `m` on `[y, 0]`. The window `[X, X + eps]`
/// holds `m` to the left of 0 and `X + eps` of the jam, so
/// `X' = -(X + m) / eps`.
pub fn characteristic_exact(y: f64, m: f64, t: f64, eps: f64) -> f64 {
    -m + (y + m) * (-t / eps).exp()
}

/// Prints one result line past the test harness capture.
pub fn report_line(line: &str) {
    let out = std::io::stdout();
    let mut out = out.lock();
    let _ = writeln!(out, "{line}");
    let _ = out.flush();
}
