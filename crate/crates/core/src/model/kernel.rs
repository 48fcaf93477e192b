//! Anisotropic convolution kernels `eta` and their rescalings `eta_eps`.

use super::PiecewiseConstant1D;
use crate::error::{invalid_arg, Result};

const NORMALIZATION_TOL: f64 = 1e-12;

/// A nonnegative, unit-mass, piecewise-constant kernel supported in
/// `]-inf, 0]`, together with the rescaling length `epsilon`.
///
/// The rescaled kernel is `eta_eps(x) = eta(x / eps) / eps`, so the nonlocal
/// density `(u * eta_eps)(x)` only looks at `u` on `[x, x - eps * a]` where
/// `[a, 0]` contains the base support.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelSpec {
    profile: PiecewiseConstant1D,
    epsilon: f64,
}

impl KernelSpec {
    pub fn new(profile: PiecewiseConstant1D, epsilon: f64) -> Result<Self> {
        if !(epsilon > 0.0) || !epsilon.is_finite() {
            return Err(invalid_arg!("epsilon must be positive, got {epsilon}"));
        }
        if profile.left_extension() != 0.0 || profile.right_extension() != 0.0 {
            return Err(invalid_arg!("kernel profile must vanish on both tails"));
        }
        let bps = profile.breakpoints();
        if bps.len() < 2 {
            return Err(invalid_arg!("kernel profile needs a bounded support"));
        }
        if *bps.last().unwrap() > 0.0 {
            return Err(invalid_arg!(
                "kernel support must lie in ]-inf, 0], got right end {}",
                bps.last().unwrap()
            ));
        }
        if profile.values().iter().any(|&v| v < 0.0) {
            return Err(invalid_arg!("kernel profile must be nonnegative"));
        }
        let mass = profile.integral(bps[0], *bps.last().unwrap());
        if (mass - 1.0).abs() > NORMALIZATION_TOL {
            return Err(invalid_arg!("kernel profile must have unit integral, got {mass}"));
        }
        Ok(Self { profile, epsilon })
    }

    /// `1_[-1, 0]` rescaled by `epsilon`: the downstream average over `[x, x + eps]`.
    pub fn indicator(epsilon: f64) -> Result<Self> {
        Self::new(
            PiecewiseConstant1D::indicator(-1.0, 0.0, 1.0).expect("valid indicator"),
            epsilon,
        )
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn profile(&self) -> &PiecewiseConstant1D {
        &self.profile
    }

    pub fn with_epsilon(&self, epsilon: f64) -> Result<Self> {
        Self::new(self.profile.clone(), epsilon)
    }

    /// Base support `[a, b]`, `a < b <= 0`.
    pub fn base_support(&self) -> (f64, f64) {
        let b = self.profile.breakpoints();
        (b[0], b[b.len() - 1])
    }

    pub fn is_uniform_indicator(&self) -> bool {
        self.profile.breakpoints() == [-1.0, 0.0] && self.profile.values() == [1.0]
    }

    /// `eta_eps(x)`.
    pub fn eval_rescaled(&self, x: f64) -> f64 {
        self.profile.eval(x / self.epsilon) / self.epsilon
    }

    /// `int_a^b eta_eps`.
    pub fn rescaled_integral(&self, a: f64, b: f64) -> f64 {
        self.profile.integral(a / self.epsilon, b / self.epsilon)
    }

    /// Weights `gamma_m = int_{-(m+1) dx}^{-m dx} eta_eps`, `m = 0, 1, ...`.
    ///
    /// For cell averages `u_i`, the convolution at the left edge of cell `i`
    /// is exactly `sum_m gamma_m u_{i+m}`.
    pub fn cell_weights(&self, dx: f64) -> Vec<f64> {
        let (a, _) = self.base_support();
        let reach = -a * self.epsilon;
        let count = ((reach / dx) - 1e-9).ceil().max(1.0) as usize;
        (0..count)
            .map(|m| self.rescaled_integral(-((m + 1) as f64) * dx, -(m as f64) * dx))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn indicator_normalized_for_any_epsilon() {
        for eps in [1.0, 0.5, 0.1, 1e-3, 2f64.powi(-20)] {
            let k = KernelSpec::indicator(eps).unwrap();
            let m = k.rescaled_integral(-10.0 * eps, 10.0 * eps);
            assert!((m - 1.0).abs() < 1e-12, "eps {eps}: {m}");
            assert_eq!(k.eval_rescaled(-0.5 * eps), 1.0 / eps);
            assert_eq!(k.eval_rescaled(0.5 * eps), 0.0);
        }
    }

    #[test]
    fn rejects_invalid_kernels() {
        assert!(KernelSpec::indicator(0.0).is_err());
        assert!(KernelSpec::indicator(-1.0).is_err());
        // positive-axis support
        let p = PiecewiseConstant1D::indicator(-0.5, 0.5, 1.0).unwrap();
        assert!(KernelSpec::new(p, 1.0).is_err());
        // wrong mass
        let p = PiecewiseConstant1D::indicator(-1.0, 0.0, 2.0).unwrap();
        assert!(KernelSpec::new(p, 1.0).is_err());
        // negative values
        let p = PiecewiseConstant1D::new(vec![-2.0, -1.0, 0.0], vec![2.0, -1.0], 0.0, 0.0).unwrap();
        assert!(KernelSpec::new(p, 1.0).is_err());
    }

    #[test]
    fn weights_of_indicator() {
        let k = KernelSpec::indicator(0.25).unwrap();
        let w = k.cell_weights(1.0 / 16.0);
        assert_eq!(w.len(), 4);
        for g in w {
            assert!((g - 0.25).abs() < 1e-15);
        }
    }

    #[test]
    fn weights_of_two_step_kernel() {
        // 1.5 on [-0.5, 0), 0.5 on [-1, -0.5)
        let p = PiecewiseConstant1D::new(vec![-1.0, -0.5, 0.0], vec![0.5, 1.5], 0.0, 0.0).unwrap();
        let k = KernelSpec::new(p, 1.0).unwrap();
        assert!(!k.is_uniform_indicator());
        let w = k.cell_weights(0.25);
        assert_eq!(w, vec![0.375, 0.375, 0.125, 0.125]);
    }
}
