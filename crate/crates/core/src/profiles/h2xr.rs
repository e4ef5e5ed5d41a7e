//! Catenoids in `H^2 x R`, arclength parametrization of the generating
//! catenary: radius `R(a,s)` with `cosh R = cosh a cosh s` and odd height
//! `Lambda(a,s)`, unit speed `R_s^2 + Lambda_s^2 = 1` (the profile plane
//! `geodesic x R` is flat).

use crate::error::Result;
use crate::profiles::table::CumulativeIntegral;

/// Arclength range precomputed at build time; beyond it the height falls
/// back to direct quadrature.
pub const TABLE_RANGE: f64 = 64.0;

#[derive(Debug, Clone)]
pub struct H2xRProfile {
    pub a: f64,
    height_table: CumulativeIntegral,
}

/// Height integrand `Lambda_s(a, t) = sinh a (cosh^2 a cosh^2 t - 1)^{-1/2}`.
pub fn height_integrand(a: f64) -> impl Fn(f64) -> f64 {
    let (sa, ca) = (a.sinh(), a.cosh());
    move |t: f64| {
        let cc = ca * t.cosh();
        sa / (cc * cc - 1.0).sqrt()
    }
}

impl H2xRProfile {
    pub fn build(a: f64) -> Result<Self> {
        let g = height_integrand(a);
        let height_table = CumulativeIntegral::build(&g, 0.25, TABLE_RANGE)?;
        Ok(H2xRProfile { a, height_table })
    }

    pub fn radius(&self, s: f64) -> f64 {
        (self.a.cosh() * s.cosh()).acosh()
    }

    /// `R_s`, the vertical Jacobi field.
    pub fn d_radius(&self, s: f64) -> f64 {
        let ca = self.a.cosh();
        let cc = ca * s.cosh();
        ca * s.sinh() / (cc * cc - 1.0).sqrt()
    }

    pub fn height(&self, s: f64) -> f64 {
        let g = height_integrand(self.a);
        self.height_table.eval(&g, s.abs()).copysign(s)
    }

    pub fn d_height(&self, s: f64) -> f64 {
        height_integrand(self.a)(s)
    }

    /// First integral `sinh(R) Lambda_s`, constant `sinh a`.
    pub fn flux_constant(&self) -> f64 {
        self.a.sinh()
    }
}
