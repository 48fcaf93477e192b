//! Closed-form value of the solution along plateau characteristics.

use crate::error::{invalid_arg, Result};

/// `u0 / ((1 - u0) e^{-t/eps} + u0)`, the solution of `u' = u (1 - u) / eps`
/// with `u(0) = u0`. Returns `0` when `u0 = 0`.
///
/// ```
/// use nltv::characteristics::logistic_value;
/// let eps = 0.25;
/// let v = logistic_value(0.5, eps * 2f64.ln(), eps).unwrap();
/// assert!((v - 2.0 / 3.0).abs() < 1e-15);
/// ```
pub fn logistic_value(u0y: f64, t: f64, epsilon: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&u0y) {
        return Err(invalid_arg!("logistic datum must lie in [0, 1], got {u0y}"));
    }
    if !(t >= 0.0) {
        return Err(invalid_arg!("time must be nonnegative, got {t}"));
    }
    if !(epsilon > 0.0) {
        return Err(invalid_arg!("epsilon must be positive, got {epsilon}"));
    }
    if u0y == 0.0 {
        return Ok(0.0);
    }
    Ok(u0y / ((1.0 - u0y) * (-t / epsilon).exp() + u0y))
}

/// Material derivative `u (u_ahead - u) / eps` of the solution along a
/// characteristic, `u_ahead` being the value a distance `eps` downstream.
pub fn material_rhs(u_here: f64, u_ahead: f64, epsilon: f64) -> f64 {
    u_here * (u_ahead - u_here) / epsilon
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_points() {
        for t in [0.0, 0.3, 10.0, 1e6] {
            assert_eq!(logistic_value(1.0, t, 0.1).unwrap(), 1.0);
            assert_eq!(logistic_value(0.0, t, 0.1).unwrap(), 0.0);
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(logistic_value(1.5, 0.0, 1.0).is_err());
        assert!(logistic_value(-0.1, 0.0, 1.0).is_err());
        assert!(logistic_value(0.5, -1.0, 1.0).is_err());
        assert!(logistic_value(0.5, 1.0, 0.0).is_err());
    }

    #[test]
    fn material_rhs_cases() {
        assert_eq!(material_rhs(0.3, 0.3, 0.1), 0.0);
        assert_eq!(material_rhs(0.0, 1.0, 0.1), 0.0);
        let eps = 0.4;
        assert_eq!(material_rhs(0.5, 1.0, eps), 1.0 / (4.0 * eps));
    }
}
