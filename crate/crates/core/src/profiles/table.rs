//! Quadrature-backed evaluation tables shared by the profile families.
//!
//! Two shapes recur across every family:
//!
//! * a cumulative integral `s -> ∫_0^s g(t) dt` of a smooth closed-form
//!   integrand (the height functions), and
//! * a monotone map `x -> ∫_{x0}^x g(u) du` with an inverse-square-root
//!   singularity at `x0` that must be evaluated *and inverted* (the
//!   radius-as-independent-variable representations).
//!
//! Both are precomputed at build time on a panel grid, so built profiles are
//! immutable and freely shareable across threads; per-call work is one small
//! Gauss–Kronrod panel plus, for inversions, a few Newton steps against the
//! closed-form derivative.

use crate::error::Result;
use crate::numerics::quadrature::{integrate, Integrand};

/// Per-panel absolute tolerance used while building tables.
const PANEL_ABS: f64 = 1e-14;
const PANEL_REL: f64 = 1e-13;

/// Cumulative integral of a smooth integrand from 0, tabulated on `[0, s_max]`.
#[derive(Debug, Clone)]
pub struct CumulativeIntegral {
    step: f64,
    /// prefail[j] = ∫_0^{j*step} g.
    prefix: Vec<f64>,
}

impl CumulativeIntegral {
    /// Tabulate `∫_0^s g` with panel width `step` up to `s_max`.
    pub fn build<G: Fn(f64) -> f64>(g: &G, step: f64, s_max: f64) -> Result<Self> {
        let panels = (s_max / step).ceil() as usize;
        let mut prefix = Vec::with_capacity(panels + 1);
        prefix.push(0.0);
        let mut acc = 0.0;
        let integrand = Integrand::new(g);
        for j in 0..panels {
            let a = j as f64 * step;
            let b = a + step;
            let q = integrate(&integrand, a, b, PANEL_ABS, PANEL_REL)?;
            acc += q.value;
            prefix.push(acc);
        }
        Ok(CumulativeIntegral { step, prefix })
    }

    pub fn covered(&self) -> f64 {
        (self.prefix.len() - 1) as f64 * self.step
    }

    /// Evaluate `∫_0^s g` for `s >= 0`. Points beyond the table are handled
    /// by direct quadrature from the last covered node.
    pub fn eval<G: Fn(f64) -> f64>(&self, g: &G, s: f64) -> f64 {
        debug_assert!(s >= 0.0);
        let integrand = Integrand::new(g);
        let covered = self.covered();
        if s >= covered {
            let tail = if s > covered {
                integrate(&integrand, covered, s, PANEL_ABS, PANEL_REL)
                    .map(|q| q.value)
                    .unwrap_or(f64::NAN)
            } else {
                0.0
            };
            return self.prefix[self.prefix.len() - 1] + tail;
        }
        let j = (s / self.step).floor() as usize;
        let a = j as f64 * self.step;
        if s == a {
            return self.prefix[j];
        }
        let q = integrate(&integrand, a, s, PANEL_ABS, PANEL_REL)
            .map(|q| q.value)
            .unwrap_or(f64::NAN);
        self.prefix[j] + q
    }
}

/// Monotone map `tau(x) = ∫_{x0}^x g(u) du` with `g ~ (u - x0)^{-1/2}` at the
/// left endpoint, tabulated on a geometrically growing grid and invertible.
///
/// Every entry point takes the integrand twice: the raw form `g(x)` and the
/// cancellation-free weight-removed form `w(gap) = g(x0 + gap) sqrt(gap)`.
#[derive(Debug, Clone)]
pub struct SingularInverseTable {
    pub x0: f64,
    /// Grid abscissae, strictly increasing, starting at `x0`.
    xs: Vec<f64>,
    /// tau values at `xs` (taus[0] = 0).
    taus: Vec<f64>,
    /// Total integral to infinity (the half-domain length), when finite.
    pub tau_infinity: Option<f64>,
}

impl SingularInverseTable {
    /// Build the table. `g` is the closed-form integrand; `first_dx` sets the
    /// initial panel width and `growth` the geometric panel growth; the table
    /// stops once `tau` is within `tail_cut` of `tau_infinity` (when finite)
    /// or once `x` exceeds `x_cap`.
    #[allow(clippy::too_many_arguments)]
    pub fn build<G: Fn(f64) -> f64, W: Fn(f64) -> f64>(
        g: &G,
        w: &W,
        x0: f64,
        first_dx: f64,
        growth: f64,
        tau_infinity: Option<f64>,
        tail_cut: f64,
        x_cap: f64,
    ) -> Result<Self> {
        let mut xs = vec![x0];
        let mut taus = vec![0.0];
        let mut dx = first_dx;
        let mut x = x0;
        let mut tau = 0.0;
        let integrand = Integrand::new(g).with_inv_sqrt_singularity_stable(x0, w);
        loop {
            let x_next = x + dx;
            let q = integrate(&integrand, x, x_next, PANEL_ABS, PANEL_REL)?;
            tau += q.value;
            xs.push(x_next);
            taus.push(tau);
            x = x_next;
            dx *= growth;
            if let Some(t_inf) = tau_infinity {
                if t_inf - tau < tail_cut {
                    break;
                }
            }
            if x > x_cap {
                break;
            }
        }
        Ok(SingularInverseTable {
            x0,
            xs,
            taus,
            tau_infinity,
        })
    }

    pub fn tau_covered(&self) -> f64 {
        self.taus[self.taus.len() - 1]
    }

    pub fn x_covered(&self) -> f64 {
        self.xs[self.xs.len() - 1]
    }

    /// Forward evaluation `tau(x)` for `x >= x0`.
    pub fn tau<G: Fn(f64) -> f64, W: Fn(f64) -> f64>(&self, g: &G, w: &W, x: f64) -> f64 {
        debug_assert!(x >= self.x0);
        let integrand = Integrand::new(g).with_inv_sqrt_singularity_stable(self.x0, w);
        let j = match self.xs.binary_search_by(|p| p.total_cmp(&x)) {
            Ok(j) => return self.taus[j],
            Err(j) => j.clamp(1, self.xs.len() - 1) - 1,
        };
        let (a, base) = (self.xs[j.min(self.xs.len() - 1)], self.taus[j]);
        if x > self.x_covered() {
            let last = self.xs.len() - 1;
            return self.taus[last]
                + integrate(&integrand, self.xs[last], x, PANEL_ABS, PANEL_REL)
                    .map(|q| q.value)
                    .unwrap_or(f64::NAN);
        }
        base + integrate(&integrand, a, x, PANEL_ABS, PANEL_REL)
            .map(|q| q.value)
            .unwrap_or(f64::NAN)
    }

    /// Invert: find `x` with `tau(x) = target` for `target >= 0`.
    ///
    /// Uses the bracketing panel from the table and Newton iterations against
    /// the closed-form derivative `g`. Inside the first (singular) panel the
    /// iteration runs in the regularizing variable `u = sqrt(x - x0)`.
    pub fn invert<G: Fn(f64) -> f64, W: Fn(f64) -> f64>(&self, g: &G, w: &W, target: f64) -> f64 {
        debug_assert!(target >= 0.0);
        if target == 0.0 {
            return self.x0;
        }
        let n = self.taus.len();
        if target >= self.taus[n - 1] {
            // Beyond table coverage; callers supply an asymptotic fallback.
            return f64::NAN;
        }
        let j = self.taus.partition_point(|t| *t <= target) - 1;
        let (xa, xb) = (self.xs[j], self.xs[j + 1]);
        let (ta, tb) = (self.taus[j], self.taus[j + 1]);
        let integrand = Integrand::new(g).with_inv_sqrt_singularity_stable(self.x0, w);

        if j == 0 {
            // Singular panel: iterate in u = sqrt(x - x0).
            let mut u = (xb - xa).sqrt() * (target - ta) / (tb - ta);
            let u_hi = (xb - xa).sqrt();
            for _ in 0..60 {
                let x = self.x0 + u * u;
                let f = self.tau(g, w, x) - target;
                let dtau_du = 2.0 * w(u * u);
                if !(dtau_du > 0.0) {
                    break;
                }
                let step = f / dtau_du;
                let u_next = (u - step).clamp(1e-18, u_hi);
                if (u_next - u).abs() <= 1e-16 * u.max(1e-12) {
                    u = u_next;
                    break;
                }
                u = u_next;
            }
            return self.x0 + u * u;
        }

        // Regular panel: Newton with bisection clamping.
        let mut lo = xa;
        let mut hi = xb;
        let mut x = xa + (xb - xa) * (target - ta) / (tb - ta);
        for _ in 0..60 {
            let f = ta
                + integrate(&integrand, xa, x, PANEL_ABS, PANEL_REL)
                    .map(|q| q.value)
                    .unwrap_or(f64::NAN)
                - target;
            if f > 0.0 {
                hi = x;
            } else {
                lo = x;
            }
            let d = g(x);
            let mut x_next = x - f / d;
            if !(x_next > lo && x_next < hi) {
                x_next = 0.5 * (lo + hi);
            }
            if (x_next - x).abs() <= 1e-15 * x.abs().max(1e-12) {
                return x_next;
            }
            x = x_next;
        }
        x
    }
}
