use crate::fv::GridFunction;
use crate::model::PiecewiseConstant1D;

/// Total variation of a one-dimensional profile.
pub trait TotalVariation {
    fn total_variation(&self) -> f64;
}

/// `sum |u_{i+1} - u_i|` over adjacent cells.
impl TotalVariation for [f64] {
    fn total_variation(&self) -> f64 {
        self.windows(2).map(|w| (w[1] - w[0]).abs()).sum()
    }
}

impl TotalVariation for GridFunction {
    fn total_variation(&self) -> f64 {
        self.values.total_variation()
    }
}

/// Exact sum of jump magnitudes, tails included.
impl TotalVariation for PiecewiseConstant1D {
    fn total_variation(&self) -> f64 {
        PiecewiseConstant1D::total_variation(self)
    }
}

/// Total variation of a grid function, a piecewise-constant function or a
/// slice of cell values.
///
/// ```
/// use nltv::analysis::total_variation;
/// use nltv::model::build_u0;
/// let tv = total_variation(&build_u0(3));
/// assert!((tv - (1.0 + 2.0 * (1.0 + 0.5 + 0.25 + 0.125))).abs() < 1e-15);
/// ```
pub fn total_variation<T: TotalVariation + ?Sized>(u: &T) -> f64 {
    u.total_variation()
}
