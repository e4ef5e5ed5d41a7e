//! Rotation surfaces in hyperbolic 3-space (half-space model), generated by
//! curves in Fermi coordinates `(u, v)` about a vertical geodesic, where the
//! hyperbolic-plane metric is `du^2 + cosh^2(u) dv^2`.
//!
//! Two families live here, both in arclength parametrization `s`:
//!
//! * minimal catenoids: radius `y0(a,s)` with `cosh(2 y0) = cosh(2a) cosh(2s)`
//!   and odd height `Lambda0(a,s) = sqrt(2) ∫_0^s J0(a,t) dt`;
//! * embedded catenoid cousins (constant mean curvature 1, neck `a > 0`):
//!   radius `y1(a,s)` with `cosh(2 y1) = 2 e^{-2a} s^2 + cosh(2a)` and odd
//!   height `Lambda1(a,s) = ∫_0^s A(a,t) dt`.
//!
//! Unit speed in both cases: `y_s^2 + cosh^2(y) Lambda_s^2 = 1`.

use crate::error::Result;
use crate::numerics::quadrature::{integrate, Integrand};
use crate::profiles::table::CumulativeIntegral;

pub const TABLE_RANGE: f64 = 64.0;
pub const SQRT2: f64 = std::f64::consts::SQRT_2;

/// `J0(a,t) = sinh(2a) / ((cosh 2a cosh 2t + 1) sqrt(cosh 2a cosh 2t - 1))`.
pub fn j0_integrand(a: f64) -> impl Fn(f64) -> f64 {
    let (s2a, c2a) = ((2.0 * a).sinh(), (2.0 * a).cosh());
    move |t: f64| {
        let w = c2a * (2.0 * t).cosh();
        s2a / ((w + 1.0) * (w - 1.0).sqrt())
    }
}

/// Cousin height integrand
/// `A(a,t) = e^a (2 t^2 + e^{2a} sinh 2a) / (2 (t^2 + Gc) sqrt(t^2 + Gs))`
/// with `Gc = e^{2a} cosh^2 a`, `Gs = e^{2a} sinh^2 a`.
pub fn cousin_height_integrand(a: f64) -> impl Fn(f64) -> f64 {
    let ea = a.exp();
    let gc = (2.0 * a).exp() * a.cosh() * a.cosh();
    let gs = (2.0 * a).exp() * a.sinh() * a.sinh();
    let s2a = (2.0 * a).sinh();
    move |t: f64| {
        let t2 = t * t;
        ea * (2.0 * t2 + (2.0 * a).exp() * s2a) / (2.0 * (t2 + gc) * (t2 + gs).sqrt())
    }
}

#[derive(Debug, Clone)]
pub struct H3MinimalProfile {
    pub a: f64,
    height_table: CumulativeIntegral,
}

impl H3MinimalProfile {
    pub fn build(a: f64) -> Result<Self> {
        let g = j0_integrand(a);
        let height_table = CumulativeIntegral::build(&g, 0.25, TABLE_RANGE)?;
        Ok(H3MinimalProfile { a, height_table })
    }

    pub fn radius(&self, s: f64) -> f64 {
        0.5 * ((2.0 * self.a).cosh() * (2.0 * s).cosh()).acosh()
    }

    /// `y0_s = cosh(2a) sinh(2s) / sqrt(cosh^2(2a) cosh^2(2s) - 1)`.
    pub fn d_radius(&self, s: f64) -> f64 {
        let c2a = (2.0 * self.a).cosh();
        let w = c2a * (2.0 * s).cosh();
        c2a * (2.0 * s).sinh() / (w * w - 1.0).sqrt()
    }

    pub fn height(&self, s: f64) -> f64 {
        let g = j0_integrand(self.a);
        (SQRT2 * self.height_table.eval(&g, s.abs())).copysign(s)
    }

    pub fn d_height(&self, s: f64) -> f64 {
        SQRT2 * j0_integrand(self.a)(s)
    }

    /// First integral `sinh(y) cosh^2(y) Lambda_s`, constant `sinh(2a)/2`.
    pub fn flux_constant(&self) -> f64 {
        0.5 * (2.0 * self.a).sinh()
    }
}

/// Graph-parameter height `lambda0(a, t)` of the half-catenary (`t >= a`),
/// used for the intersection geometry of two catenaries.
pub fn lambda0_graph(a: f64, t: f64) -> Result<f64> {
    let s2a = (2.0 * a).sinh();
    let s2a2 = s2a * s2a;
    let g = move |tau: f64| {
        let s2t = (2.0 * tau).sinh();
        s2a / (tau.cosh() * (s2t * s2t - s2a2).sqrt())
    };
    // sinh^2(2 tau) - sinh^2(2a) = gap * Q(gap) with Q stable at gap = 0.
    let w = move |gap: f64| {
        let q = 2.0
            * (2.0 * a + gap).cosh()
            * crate::numerics::stable::sinhc(gap)
            * ((2.0 * a + 2.0 * gap).sinh() + s2a);
        s2a / ((a + gap).cosh() * q.sqrt())
    };
    let integrand = Integrand::new(g).with_inv_sqrt_singularity_stable(a, w);
    Ok(integrate(&integrand, a, t, 1e-13, 1e-12)?.value)
}

/// Limit `V0(a) = lambda0(a, ∞) = sqrt(2) ∫_0^∞ J0(a,t) dt` (the v-height).
pub fn v_height(a: f64) -> Result<f64> {
    let g = j0_integrand(a);
    let integrand = Integrand::new(g);
    Ok(SQRT2 * integrate(&integrand, 0.0, f64::INFINITY, 1e-13, 1e-12)?.value)
}

#[derive(Debug, Clone)]
pub struct H3CousinProfile {
    pub a: f64,
    height_table: CumulativeIntegral,
}

impl H3CousinProfile {
    pub fn build(a: f64) -> Result<Self> {
        let g = cousin_height_integrand(a);
        let height_table = CumulativeIntegral::build(&g, 0.25, TABLE_RANGE)?;
        Ok(H3CousinProfile { a, height_table })
    }

    pub fn radius(&self, s: f64) -> f64 {
        0.5 * (2.0 * (-2.0 * self.a).exp() * s * s + (2.0 * self.a).cosh()).acosh()
    }

    /// `y1_s = s / sqrt((s^2 + Gs)(s^2 + Gc))`.
    pub fn d_radius(&self, s: f64) -> f64 {
        let gc = (2.0 * self.a).exp() * self.a.cosh() * self.a.cosh();
        let gs = (2.0 * self.a).exp() * self.a.sinh() * self.a.sinh();
        s / ((s * s + gs) * (s * s + gc)).sqrt()
    }

    pub fn height(&self, s: f64) -> f64 {
        let g = cousin_height_integrand(self.a);
        self.height_table.eval(&g, s.abs()).copysign(s)
    }

    pub fn d_height(&self, s: f64) -> f64 {
        cousin_height_integrand(self.a)(s)
    }

    /// The cousin first integral is `sinh(y) cosh^2(y) Lambda_s
    /// = cosh(2t)/2 - d` at `t = y1(s)`, with `d = e^{-2a}/2`.
    pub fn flux_offset(&self) -> f64 {
        0.5 * (-2.0 * self.a).exp()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_neck_values() {
        let p = H3MinimalProfile::build(0.7).unwrap();
        assert!((p.radius(0.0) - 0.7).abs() < 1e-13);
        assert_eq!(p.height(0.0), 0.0);
        assert_eq!(p.d_radius(0.0), 0.0);
    }

    #[test]
    fn minimal_unit_speed() {
        let p = H3MinimalProfile::build(0.4).unwrap();
        for &s in &[0.05, 0.5, 2.0, 7.0] {
            let y = p.radius(s);
            let defect = p.d_radius(s).powi(2) + y.cosh().powi(2) * p.d_height(s).powi(2) - 1.0;
            assert!(defect.abs() < 1e-11, "defect {defect} at {s}");
        }
    }

    #[test]
    fn minimal_cosh_identity() {
        let p = H3MinimalProfile::build(1.1).unwrap();
        for &s in &[0.0, 0.3, 1.0, 4.0] {
            let lhs = (2.0 * p.radius(s)).cosh();
            let rhs = (2.2f64).cosh() * (2.0 * s).cosh();
            assert!((lhs - rhs).abs() < 1e-9 * rhs, "at {s}");
        }
    }

    #[test]
    fn graph_height_agrees_with_arclength_height() {
        // Lambda0(a,s) = lambda0(a, y0(a,s)) for s >= 0.
        let a = 0.6;
        let p = H3MinimalProfile::build(a).unwrap();
        for &s in &[0.2, 1.0, 3.0] {
            let via_graph = lambda0_graph(a, p.radius(s)).unwrap();
            let via_arc = p.height(s);
            assert!(
                (via_graph - via_arc).abs() < 1e-10,
                "at s={s}: {via_graph} vs {via_arc}"
            );
        }
    }

    #[test]
    fn v_height_is_graph_height_limit() {
        let a = 0.8;
        let v = v_height(a).unwrap();
        let nearly = lambda0_graph(a, 30.0).unwrap();
        assert!((v - nearly).abs() < 1e-9, "V0 {v} vs lambda0(30) {nearly}");
    }

    #[test]
    fn cousin_neck_and_identity() {
        let a = 0.5;
        let p = H3CousinProfile::build(a).unwrap();
        assert!((p.radius(0.0) - a).abs() < 1e-13);
        for &s in &[0.0, 0.7, 2.5, 9.0] {
            let lhs = (2.0 * p.radius(s)).cosh();
            let rhs = 2.0 * (-2.0 * a).exp() * s * s + (2.0 * a).cosh();
            assert!((lhs - rhs).abs() < 1e-10 * rhs.max(1.0), "at {s}");
        }
    }

    #[test]
    fn cousin_unit_speed() {
        let p = H3CousinProfile::build(0.9).unwrap();
        for &s in &[0.1, 1.0, 5.0, 20.0] {
            let y = p.radius(s);
            let defect = p.d_radius(s).powi(2) + y.cosh().powi(2) * p.d_height(s).powi(2) - 1.0;
            assert!(defect.abs() < 1e-11, "defect {defect} at {s}");
        }
    }
}
