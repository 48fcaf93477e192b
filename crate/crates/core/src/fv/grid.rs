use crate::error::{invalid_arg, Result};
use crate::model::PiecewiseConstant1D;

/// Uniform grid; cell `i` covers `[x_min + i dx, x_min + (i + 1) dx)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid1D {
    x_min: f64,
    x_max: f64,
    n_cells: usize,
}

impl Grid1D {
    pub fn new(x_min: f64, x_max: f64, n_cells: usize) -> Result<Self> {
        if !(x_min < x_max) || !x_min.is_finite() || !x_max.is_finite() {
            return Err(invalid_arg!("grid needs x_min < x_max, got [{x_min}, {x_max}]"));
        }
        if n_cells == 0 {
            return Err(invalid_arg!("grid needs at least one cell"));
        }
        Ok(Self { x_min, x_max, n_cells })
    }

    /// Grid of spacing `dx`; `(x_max - x_min) / dx` must be an integer.
    pub fn with_spacing(x_min: f64, x_max: f64, dx: f64) -> Result<Self> {
        if !(dx > 0.0) {
            return Err(invalid_arg!("dx must be positive, got {dx}"));
        }
        let n = (x_max - x_min) / dx;
        let rounded = n.round();
        if rounded < 1.0 || (n - rounded).abs() > 1e-9 * rounded.max(1.0) {
            return Err(invalid_arg!(
                "domain length {} is not an integer multiple of dx = {dx}",
                x_max - x_min
            ));
        }
        Self::new(x_min, x_max, rounded as usize)
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn n_cells(&self) -> usize {
        self.n_cells
    }

    #[inline]
    pub fn dx(&self) -> f64 {
        (self.x_max - self.x_min) / self.n_cells as f64
    }

    /// Position of interface `j` (left edge of cell `j`), `j = 0..=n_cells`.
    #[inline]
    pub fn interface(&self, j: usize) -> f64 {
        if j == self.n_cells {
            self.x_max
        } else {
            self.x_min + j as f64 * self.dx()
        }
    }

    #[inline]
    pub fn center(&self, i: usize) -> f64 {
        self.x_min + (i as f64 + 0.5) * self.dx()
    }

    /// Cell containing `x` under the left-closed convention.
    pub fn cell_containing(&self, x: f64) -> Option<usize> {
        if !(x >= self.x_min) || x >= self.x_max {
            return None;
        }
        let i = ((x - self.x_min) / self.dx()).floor() as usize;
        // guard against rounding at cell edges
        let i = i.min(self.n_cells - 1);
        if x < self.interface(i) {
            Some(i.saturating_sub(1))
        } else if i + 1 < self.n_cells && x >= self.interface(i + 1) {
            Some(i + 1)
        } else {
            Some(i)
        }
    }

    /// Exact cell averages of `f`.
    pub fn project(&self, f: &PiecewiseConstant1D) -> Vec<f64> {
        (0..self.n_cells)
            .map(|i| {
                f.cell_average(self.interface(i), self.interface(i + 1))
                    .expect("cells have positive width")
            })
            .collect()
    }
}

/// Cell averages of `u(t, .)` on a grid.
#[derive(Clone, Debug, PartialEq)]
pub struct GridFunction {
    pub grid: Grid1D,
    pub values: Vec<f64>,
    pub time: f64,
}

impl GridFunction {
    pub fn new(grid: Grid1D, values: Vec<f64>, time: f64) -> Result<Self> {
        if values.len() != grid.n_cells() {
            return Err(invalid_arg!(
                "{} values for a grid of {} cells",
                values.len(),
                grid.n_cells()
            ));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(invalid_arg!("non-finite value in cell {i}"));
        }
        if !(time >= 0.0) {
            return Err(invalid_arg!("time must be nonnegative, got {time}"));
        }
        Ok(Self { grid, values, time })
    }

    pub fn from_datum(grid: Grid1D, datum: &PiecewiseConstant1D) -> Self {
        Self {
            values: grid.project(datum),
            grid,
            time: 0.0,
        }
    }

    /// Value of the cell containing `x`.
    pub fn sample(&self, x: f64) -> Option<f64> {
        self.grid.cell_containing(x).map(|i| self.values[i])
    }

    /// `sum_i u_i dx`.
    pub fn mass(&self) -> f64 {
        self.values.iter().sum::<f64>() * self.grid.dx()
    }

    /// CSV with header `x,u` and one row per cell center.
    pub fn to_csv(&self) -> String {
        use std::fmt::Write as _;
        let mut out = String::with_capacity(24 * self.values.len() + 4);
        out.push_str("x,u\n");
        for (i, v) in self.values.iter().enumerate() {
            let _ = writeln!(out, "{},{}", self.grid.center(i), v);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spacing_and_lookup() {
        let g = Grid1D::with_spacing(-1.5, 1.0, 1.0 / 64.0).unwrap();
        assert_eq!(g.n_cells(), 160);
        assert_eq!(g.interface(96), 0.0);
        assert_eq!(g.cell_containing(0.0), Some(96));
        assert_eq!(g.cell_containing(-1e-12), Some(95));
        assert_eq!(g.cell_containing(-1.5), Some(0));
        assert_eq!(g.cell_containing(1.0), None);
        assert_eq!(g.cell_containing(-2.0), None);
        assert!(Grid1D::with_spacing(0.0, 1.0, 0.3).is_err());
        assert!(Grid1D::new(1.0, 0.0, 3).is_err());
        assert!(Grid1D::new(0.0, 1.0, 0).is_err());
    }

    #[test]
    fn project_step() {
        let g = Grid1D::new(-1.0, 1.0, 4).unwrap();
        let f = PiecewiseConstant1D::step(0.25, 0.0, 1.0);
        assert_eq!(g.project(&f), vec![0.0, 0.0, 0.5, 1.0]);
    }

    #[test]
    fn grid_function_validation_and_csv() {
        let g = Grid1D::new(0.0, 1.0, 2).unwrap();
        assert!(GridFunction::new(g, vec![1.0], 0.0).is_err());
        assert!(GridFunction::new(g, vec![1.0, f64::NAN], 0.0).is_err());
        let u = GridFunction::new(g, vec![0.0, 1.0], 0.5).unwrap();
        assert_eq!(u.to_csv(), "x,u\n0.25,0\n0.75,1\n");
        assert_eq!(u.mass(), 0.5);
        assert_eq!(u.sample(0.5), Some(1.0));
    }
}
