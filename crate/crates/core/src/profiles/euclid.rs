//! Minimal rotation hypersurfaces in Euclidean space: the catenary-like
//! generating curves `t -> (a c_n(t/a), t)`.
//!
//! The unit-neck curve `c_n` solves `f f'' = (n-1)(1 + f'^2)` with
//! `f(0) = 1`, `f'(0) = 0` and carries the first integral
//! `f^{n-1} (1 + f'^2)^{-1/2} = 1`. For `n = 2` this is `cosh`; for
//! `n >= 3` the curve is reconstructed by inverting
//! `d_n(x) = ∫_1^x (u^{2n-2} - 1)^{-1/2} du`, whose total mass
//! `T_n = d_n(∞)` is finite, so the profile lives on `(-a T_n, a T_n)`.

use crate::error::Result;
use crate::numerics::quadrature::{integrate, Integrand};
use crate::numerics::stable::pow_gap_quotient;
use crate::profiles::table::SingularInverseTable;

/// Integrand of `d_n` for unit neck.
fn dn_integrand(n: u32) -> impl Fn(f64) -> f64 {
    let p = (2 * n - 2) as i32;
    move |u: f64| 1.0 / (u.powi(p) - 1.0).sqrt()
}

/// Weight-removed form of the `d_n` integrand at the `u = 1` endpoint:
/// `w(gap) = sqrt(gap / ((1+gap)^{2n-2} - 1))`, stable down to gap = 0.
fn dn_weight_removed(n: u32) -> impl Fn(f64) -> f64 {
    let p = (2 * n - 2) as f64;
    move |gap: f64| 1.0 / pow_gap_quotient(p, gap).sqrt()
}

/// Half-length `T_n` of the unit-neck parameter domain.
pub fn t_n(n: u32) -> Result<f64> {
    if n == 2 {
        return Ok(f64::INFINITY);
    }
    let g = dn_integrand(n);
    let w = dn_weight_removed(n);
    let integrand = Integrand::new(g).with_inv_sqrt_singularity_stable(1.0, w);
    Ok(integrate(&integrand, 1.0, f64::INFINITY, 1e-13, 1e-12)?.value)
}

#[derive(Debug, Clone)]
pub struct EuclidProfile {
    pub n: u32,
    pub a: f64,
    /// `T_n` for unit neck (infinite for n = 2).
    pub t_unit: f64,
    table: Option<SingularInverseTable>,
}

impl EuclidProfile {
    pub fn build(n: u32, a: f64) -> Result<Self> {
        let t_unit = t_n(n)?;
        let table = if n == 2 {
            None
        } else {
            let g = dn_integrand(n);
            let w = dn_weight_removed(n);
            Some(SingularInverseTable::build(
                &g,
                &w,
                1.0,
                1e-3,
                1.2,
                Some(t_unit),
                1e-13 * t_unit.max(1.0),
                1e15,
            )?)
        };
        Ok(EuclidProfile {
            n,
            a,
            t_unit,
            table,
        })
    }

    /// Parameter half-domain `a T_n`.
    pub fn half_domain(&self) -> f64 {
        self.a * self.t_unit
    }

    /// Unit-neck curve value `c_n(tau)` for `tau >= 0`.
    pub fn c_unit(&self, tau: f64) -> f64 {
        if self.n == 2 {
            return tau.cosh();
        }
        let table = self.table.as_ref().expect("table built for n >= 3");
        let g = dn_integrand(self.n);
        let w = dn_weight_removed(self.n);
        if tau < table.tau_covered() {
            table.invert(&g, &w, tau)
        } else {
            // Asymptotic inversion: T - tau ~ x^{2-n}/(n-2) for large x.
            let m = (self.n - 2) as f64;
            let gap = (self.t_unit - tau).max(f64::MIN_POSITIVE);
            (m * gap).powf(-1.0 / m)
        }
    }

    /// Unit-neck derivative `c_n'(tau) = (c^{2n-2} - 1)^{1/2}` for `tau >= 0`.
    pub fn c_unit_deriv(&self, tau: f64) -> f64 {
        if self.n == 2 {
            return tau.sinh();
        }
        let c = self.c_unit(tau);
        (c.powi((2 * self.n - 2) as i32) - 1.0).max(0.0).sqrt()
    }

    pub fn radius(&self, t: f64) -> f64 {
        self.a * self.c_unit((t / self.a).abs())
    }

    pub fn d_radius(&self, t: f64) -> f64 {
        let tau = t / self.a;
        self.c_unit_deriv(tau.abs()).copysign(tau)
    }

    /// First integral `f^{n-1} (1 + f_t^2)^{-1/2}`, constant `a^{n-1}`.
    pub fn flux_constant(&self) -> f64 {
        self.a.powi(self.n as i32 - 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n2_is_cosh() {
        let p = EuclidProfile::build(2, 1.0).unwrap();
        assert_eq!(p.half_domain(), f64::INFINITY);
        for &t in &[0.0, 0.5, 2.0, 5.0] {
            assert!((p.radius(t) - t.cosh()).abs() < 1e-14);
            assert!((p.d_radius(t) - t.sinh()).abs() < 1e-14);
        }
    }

    #[test]
    fn scaled_n2_profile() {
        let p = EuclidProfile::build(2, 2.0).unwrap();
        let t = 1.3;
        assert!((p.radius(t) - 2.0 * (t / 2.0).cosh()).abs() < 1e-13);
    }

    #[test]
    fn n3_satisfies_first_integral() {
        let p = EuclidProfile::build(3, 1.0).unwrap();
        let t3 = p.t_unit;
        assert!(t3.is_finite());
        for &frac in &[0.1, 0.5, 0.9, 0.99] {
            let t = frac * t3;
            let c = p.radius(t);
            let ct = p.d_radius(t);
            let flux = c.powi(2) / (1.0 + ct * ct).sqrt();
            assert!(
                (flux - 1.0).abs() < 1e-9,
                "first integral at t = {t}: {flux}"
            );
        }
    }

    #[test]
    fn dn_roundtrip_for_n3() {
        // d_n(c_n(tau)) = tau, checked through the public evaluators.
        let p = EuclidProfile::build(3, 1.0).unwrap();
        let g = dn_integrand(3);
        let w = dn_weight_removed(3);
        let integrand = Integrand::new(&g).with_inv_sqrt_singularity_stable(1.0, &w);
        for &frac in &[0.2, 0.6, 0.95] {
            let tau = frac * p.t_unit;
            let x = p.c_unit(tau);
            let back = integrate(&integrand, 1.0, x, 1e-13, 1e-12).unwrap().value;
            assert!((back - tau).abs() < 1e-10, "roundtrip {back} vs {tau}");
        }
    }
}
