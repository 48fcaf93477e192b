/// Affine speed law `V(u) = offset - slope * u`; the default is `1 - u`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VelocityLaw {
    pub offset: f64,
    pub slope: f64,
}

impl Default for VelocityLaw {
    fn default() -> Self {
        Self {
            offset: 1.0,
            slope: 1.0,
        }
    }
}

impl VelocityLaw {
    pub fn affine(offset: f64, slope: f64) -> Self {
        Self { offset, slope }
    }

    #[inline]
    pub fn eval(&self, u: f64) -> f64 {
        self.offset - self.slope * u
    }

    pub fn lipschitz(&self) -> f64 {
        self.slope.abs()
    }
}

/// `V(u)`.
pub fn velocity(law: &VelocityLaw, u: f64) -> f64 {
    law.eval(u)
}
