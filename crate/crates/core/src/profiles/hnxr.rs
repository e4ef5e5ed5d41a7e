//! Minimal catenoids in `H^n x R`, graph parametrization: radius `f(a,t)`
//! (hyperbolic distance to the axis) over the height `t`, with the first
//! integral `sinh^{n-1}(f) (1 + f_t^2)^{-1/2} = sinh^{n-1}(a)`.
//!
//! The height domain `(-T(a), T(a))` is finite for every `n >= 2`; `f` is
//! reconstructed by inverting the inverse function
//! `lambda(a, rho) = sinh^{n-1}(a) ∫_a^rho (sinh^{2n-2} u - sinh^{2n-2} a)^{-1/2} du`.

use crate::error::Result;
use crate::numerics::quadrature::{integrate, Integrand};
use crate::numerics::stable::sinh_pow_gap_quotient;
use crate::profiles::table::SingularInverseTable;

/// Integrand of `lambda(a, ·)`.
pub fn lambda_integrand(n: u32, a: f64) -> impl Fn(f64) -> f64 {
    let p = (2 * n - 2) as i32;
    let sa = a.sinh().powi(n as i32 - 1);
    let sap = a.sinh().powi(p);
    move |u: f64| sa / (u.sinh().powi(p) - sap).sqrt()
}

/// Weight-removed form of the `lambda` integrand at `u = a`.
pub fn lambda_weight_removed(n: u32, a: f64) -> impl Fn(f64) -> f64 {
    let p = (2 * n - 2) as f64;
    let sa = a.sinh().powi(n as i32 - 1);
    move |gap: f64| sa / sinh_pow_gap_quotient(p, a, gap).sqrt()
}

#[derive(Debug, Clone)]
pub struct HnxRProfile {
    pub n: u32,
    pub a: f64,
    /// Finite half-height `T(a)`.
    pub t_half: f64,
    table: SingularInverseTable,
}

impl HnxRProfile {
    pub fn build(n: u32, a: f64) -> Result<Self> {
        let g = lambda_integrand(n, a);
        let w = lambda_weight_removed(n, a);
        let integrand = Integrand::new(&g).with_inv_sqrt_singularity_stable(a, &w);
        let t_half = integrate(&integrand, a, f64::INFINITY, 1e-13, 1e-12)?.value;
        let table = SingularInverseTable::build(
            &g,
            &w,
            a,
            1e-3 * a.min(1.0),
            1.2,
            Some(t_half),
            1e-13 * t_half.max(1.0),
            700.0,
        )?;
        Ok(HnxRProfile {
            n,
            a,
            t_half,
            table,
        })
    }

    /// Radius `f(a, t)` for any `|t| < T(a)`.
    pub fn radius(&self, t: f64) -> f64 {
        let tau = t.abs();
        let g = lambda_integrand(self.n, self.a);
        let w = lambda_weight_removed(self.n, self.a);
        if tau < self.table.tau_covered() {
            self.table.invert(&g, &w, tau)
        } else {
            // Tail: T - tau ~ sinh^{n-1}(a) 2^{n-1} e^{-(n-1)x} / (n-1).
            let m = (self.n - 1) as f64;
            let gap = (self.t_half - tau).max(f64::MIN_POSITIVE);
            let k = self.a.sinh().powi(self.n as i32 - 1) * 2f64.powi(self.n as i32 - 1) / m;
            (k / gap).ln() / m
        }
    }

    /// Slope `f_t(a, t) = sgn(t) ((sinh f / sinh a)^{2n-2} - 1)^{1/2}`.
    pub fn d_radius(&self, t: f64) -> f64 {
        let f = self.radius(t);
        let r = (f.sinh() / self.a.sinh()).powi((2 * self.n - 2) as i32);
        ((r - 1.0).max(0.0)).sqrt().copysign(t)
    }

    /// Forward map `lambda(a, rho)` (height at radius `rho >= a`).
    pub fn height_at_radius(&self, rho: f64) -> f64 {
        let g = lambda_integrand(self.n, self.a);
        let w = lambda_weight_removed(self.n, self.a);
        self.table.tau(&g, &w, rho)
    }

    /// First integral `sinh^{n-1}(f) (1+f_t^2)^{-1/2}`, constant.
    pub fn flux_constant(&self) -> f64 {
        self.a.sinh().powi(self.n as i32 - 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finite_height_and_neck() {
        let p = HnxRProfile::build(2, 0.5).unwrap();
        assert!(p.t_half.is_finite() && p.t_half > 0.0);
        assert!((p.radius(0.0) - 0.5).abs() < 1e-12);
        assert_eq!(p.d_radius(0.0), 0.0);
    }

    #[test]
    fn first_integral_constancy() {
        for (n, a) in [(2u32, 0.5f64), (3, 0.5), (3, 1.0)] {
            let p = HnxRProfile::build(n, a).unwrap();
            let c0 = p.flux_constant();
            for &frac in &[0.2, 0.7, 0.95] {
                let t = frac * p.t_half;
                let f = p.radius(t);
                let ft = p.d_radius(t);
                let c = f.sinh().powi(n as i32 - 1) / (1.0 + ft * ft).sqrt();
                assert!((c - c0).abs() < 1e-9 * c0, "n={n} a={a} t={t}: {c} vs {c0}");
            }
        }
    }

    #[test]
    fn radius_monotone_and_above_neck() {
        let p = HnxRProfile::build(3, 0.8).unwrap();
        let mut prev = p.radius(0.0);
        for i in 1..=20 {
            let t = 0.95 * p.t_half * i as f64 / 20.0;
            let f = p.radius(t);
            assert!(f >= prev - 1e-13, "not monotone at {t}");
            assert!(f >= 0.8 - 1e-12);
            prev = f;
        }
    }

    #[test]
    fn height_radius_roundtrip() {
        let p = HnxRProfile::build(2, 1.0).unwrap();
        for &frac in &[0.1, 0.5, 0.9] {
            let t = frac * p.t_half;
            let rho = p.radius(t);
            let back = p.height_at_radius(rho);
            assert!((back - t).abs() < 1e-10, "roundtrip {back} vs {t}");
        }
    }
}
