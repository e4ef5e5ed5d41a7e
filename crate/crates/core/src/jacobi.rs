//! Closed-form vertical and variation Jacobi fields for every family, the
//! combined field used for conjugate points, tail integrals, and the
//! conservation checks (weighted Wronskian, finite-difference variation).
//!
//! Sign conventions follow the closed forms family by family: the variation
//! field has `e(0) = +1` for the planar Euclidean catenoid and for the
//! product/hyperbolic families written with a leading positive term, and
//! `e(0) = -1` for higher-dimensional Euclidean catenoids, `H^n x R` and the
//! cousins. `normalized_e` rescales to `e(0) = -1` for cross-family code.
//! Zeros and stability verdicts do not depend on the convention.

use crate::error::{Error, Result};
use crate::numerics::diff;
use crate::numerics::quadrature::{integrate, Integrand};
use crate::numerics::stable::pow_gap_quotient;
use crate::profiles::{
    ambient_inner, build_profile, embed, table::CumulativeIntegral, table::SingularInverseTable,
    unit_normal, Family, FamilySpec, Profile,
};

/// Endpoint behaviour of a field at the domain end `T^-`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EndpointLimit {
    Finite(f64),
    PlusInfinity,
    MinusInfinity,
}

impl EndpointLimit {
    /// Sign of the field near the endpoint (+1, -1, or 0 for a vanishing
    /// finite limit).
    pub fn sign(&self) -> f64 {
        match self {
            EndpointLimit::Finite(v) => {
                if *v > 0.0 {
                    1.0
                } else if *v < 0.0 {
                    -1.0
                } else {
                    0.0
                }
            }
            EndpointLimit::PlusInfinity => 1.0,
            EndpointLimit::MinusInfinity => -1.0,
        }
    }
}

/// Family-specific cached data beyond the profile itself.
#[derive(Debug, Clone)]
enum FieldData {
    Euclid,
    H2xR {
        /// Cumulative `∫_0^s B(a,t) dt`.
        ib: CumulativeIntegral,
    },
    HnxR {
        /// Forward table of `Φ(x) = ∫_1^x (u^{2n-2}-1)^{-1/2} (sinh^2 a u^2 + 1)^{-3/2} du`.
        phi: SingularInverseTable,
    },
    H3Minimal {
        /// Cumulative `∫_0^s I_0(a,t) dt`.
        ii: CumulativeIntegral,
    },
    H3Cousin {
        /// Cumulatives of the `A_a = B - C` split.
        ib: CumulativeIntegral,
        ic: CumulativeIntegral,
    },
}

/// Evaluators for the vertical field `v` and variation field `e` of one
/// catenoid, with parity and endpoint metadata. Immutable and thread-safe.
#[derive(Debug, Clone)]
pub struct JacobiPair {
    profile: Profile,
    data: FieldData,
    /// `e(0)` in the stored convention (+1 or -1).
    pub e_at_neck: f64,
    /// `e_stored = variation_sign * g(dX/da, N)`.
    pub variation_sign: f64,
    pub v_limit: EndpointLimit,
    pub e_limit: EndpointLimit,
}

const TABLE_RANGE: f64 = 64.0;

/// H2xR: `B(a,t) = cosh a sinh^2 t (cosh^2 a cosh^2 t - 1)^{-3/2}`.
fn h2xr_b(a: f64) -> impl Fn(f64) -> f64 {
    let ca = a.cosh();
    move |t: f64| {
        let d2 = ca * ca * t.cosh() * t.cosh() - 1.0;
        ca * t.sinh() * t.sinh() / (d2 * d2.sqrt())
    }
}

/// HnxR inner integrand `(u^{2n-2}-1)^{-1/2} (sinh^2 a u^2 + 1)^{-3/2}`.
fn hnxr_phi(n: u32, a: f64) -> impl Fn(f64) -> f64 {
    let p = (2 * n - 2) as i32;
    let sa2 = a.sinh() * a.sinh();
    move |u: f64| {
        let smooth = (sa2 * u * u + 1.0).powf(-1.5);
        smooth / (u.powi(p) - 1.0).sqrt()
    }
}

fn hnxr_phi_weight_removed(n: u32, a: f64) -> impl Fn(f64) -> f64 {
    let p = (2 * n - 2) as f64;
    let sa2 = a.sinh() * a.sinh();
    move |gap: f64| {
        let u = 1.0 + gap;
        let smooth = (sa2 * u * u + 1.0).powf(-1.5);
        smooth / pow_gap_quotient(p, gap).sqrt()
    }
}

/// H3 minimal: `I_0(a,t) = n(A, T)/d(A, T)` with `A = cosh 2a`, `T = cosh 2t`,
/// `n(A,T) = A(3-A^2)T^2 + (A^2-1)T - 2A`, `d(A,T) = (AT+1)^2 (AT-1)^{3/2}`.
pub fn i0_integrand(a: f64) -> impl Fn(f64) -> f64 {
    let big_a = (2.0 * a).cosh();
    move |t: f64| {
        let big_t = (2.0 * t).cosh();
        let num = big_a * (3.0 - big_a * big_a) * big_t * big_t + (big_a * big_a - 1.0) * big_t
            - 2.0 * big_a;
        let at = big_a * big_t;
        num / ((at + 1.0) * (at + 1.0) * (at - 1.0).powf(1.5))
    }
}

/// Cousin integrand `B(a,t)` of the increasing part of `A_a = B - C`.
fn cousin_b(a: f64) -> impl Fn(f64) -> f64 {
    let ea = a.exp();
    let e3a = (3.0 * a).exp();
    let coef = e3a * (3.0 * (2.0 * a).sinh() + 2.0 * (2.0 * a).cosh());
    let gc = (2.0 * a).exp() * a.cosh() * a.cosh();
    let gs = (2.0 * a).exp() * a.sinh() * a.sinh();
    move |t: f64| {
        let t2 = t * t;
        (2.0 * ea * t2 + coef) / (2.0 * (t2 + gc) * (t2 + gs).sqrt())
    }
}

/// Cousin integrand `C(a,t)` (the decreasing part).
fn cousin_c(a: f64) -> impl Fn(f64) -> f64 {
    let ea = a.exp();
    let e3a = (3.0 * a).exp();
    let s2a = (2.0 * a).sinh();
    let b2 = 2.0 * e3a * a.cosh();
    let b3 = 2.0 * e3a * a.sinh();
    let gc = (2.0 * a).exp() * a.cosh() * a.cosh();
    let gs = (2.0 * a).exp() * a.sinh() * a.sinh();
    move |t: f64| {
        let t2 = t * t;
        let a1 = 2.0 * ea * t2 + e3a * s2a;
        let a2 = t2 + gc;
        let a3 = t2 + gs;
        a1 * b2 / (2.0 * a2 * a2 * a3.sqrt()) + a1 * b3 / (4.0 * a2 * a3 * a3.sqrt())
    }
}

/// Cousin even block `G(s) = cosh(y1) Lambda_{1,s} y_{1,a}`
/// `= (sinh^2 2a - 4 e^{-4a} s^4) / (4 (e^{-2a}s^2 + cosh^2 a)(e^{-2a}s^2 + sinh^2 a))`.
fn cousin_g(a: f64, s: f64) -> f64 {
    let em2a = (-2.0 * a).exp();
    let s2 = s * s;
    let num = (2.0 * a).sinh().powi(2) - 4.0 * em2a * em2a * s2 * s2;
    let den = 4.0 * (em2a * s2 + a.cosh().powi(2)) * (em2a * s2 + a.sinh().powi(2));
    num / den
}

fn cousin_g_deriv(a: f64, s: f64) -> f64 {
    let em2a = (-2.0 * a).exp();
    let s2 = s * s;
    let n = (2.0 * a).sinh().powi(2) - 4.0 * em2a * em2a * s2 * s2;
    let dn = -16.0 * em2a * em2a * s2 * s;
    let m = 4.0 * (em2a * s2 + a.cosh().powi(2)) * (em2a * s2 + a.sinh().powi(2));
    let dm = 8.0 * em2a * s * (2.0 * em2a * s2 + (2.0 * a).cosh());
    (dn * m - n * dm) / (m * m)
}

/// Build the Jacobi pair for `spec`.
pub fn jacobi_pair(spec: FamilySpec) -> Result<JacobiPair> {
    let profile = build_profile(spec)?;
    let a = spec.a;
    let (data, e_at_neck, variation_sign, v_limit, e_limit) = match spec.family {
        Family::Euclid { n } => {
            let t_unit = if n == 2 {
                f64::INFINITY
            } else {
                profile.half_domain() / a
            };
            // n = 2 keeps the planar convention e = 1 - t tanh t (so e -> -inf);
            // n >= 3 store e = -c^{2-n} + t v with e -> T_n.
            let (e0, vs, elim) = if n == 2 {
                (1.0, -1.0, EndpointLimit::MinusInfinity)
            } else {
                (-1.0, 1.0, EndpointLimit::Finite(t_unit))
            };
            (FieldData::Euclid, e0, vs, EndpointLimit::Finite(1.0), elim)
        }
        Family::H2xR => {
            let b = h2xr_b(a);
            let ib = CumulativeIntegral::build(&b, 0.25, TABLE_RANGE)?;
            let e_tail = integrate(&Integrand::new(&b), 0.0, f64::INFINITY, 1e-13, 1e-12)?.value;
            (
                FieldData::H2xR { ib },
                1.0,
                -1.0,
                EndpointLimit::Finite(1.0),
                EndpointLimit::Finite(-e_tail),
            )
        }
        Family::HnxR { n } => {
            let phi = hnxr_phi(n, a);
            let wr = hnxr_phi_weight_removed(n, a);
            let table = SingularInverseTable::build(&phi, &wr, 1.0, 1e-3, 1.25, None, 0.0, 1e9)?;
            let integrand = Integrand::new(&phi).with_inv_sqrt_singularity_stable(1.0, &wr);
            let e_tail = a.cosh() * integrate(&integrand, 1.0, f64::INFINITY, 1e-13, 1e-12)?.value;
            (
                FieldData::HnxR { phi: table },
                -1.0,
                1.0,
                EndpointLimit::Finite(1.0),
                EndpointLimit::Finite(e_tail),
            )
        }
        Family::H3Minimal => {
            let i0 = i0_integrand(a);
            let ii = CumulativeIntegral::build(&i0, 0.25, TABLE_RANGE)?;
            let e0_tail = integrate(&Integrand::new(&i0), 0.0, f64::INFINITY, 1e-13, 1e-12)?.value;
            let e_limit = if e0_tail > 0.0 {
                EndpointLimit::MinusInfinity
            } else if e0_tail < 0.0 {
                EndpointLimit::PlusInfinity
            } else {
                EndpointLimit::Finite(0.0)
            };
            (
                FieldData::H3Minimal { ii },
                1.0,
                -1.0,
                EndpointLimit::PlusInfinity,
                e_limit,
            )
        }
        Family::H3Cousin => {
            let b = cousin_b(a);
            let c = cousin_c(a);
            let ib = CumulativeIntegral::build(&b, 0.25, TABLE_RANGE)?;
            let ic = CumulativeIntegral::build(&c, 0.25, TABLE_RANGE)?;
            (
                FieldData::H3Cousin { ib, ic },
                -1.0,
                1.0,
                EndpointLimit::Finite((-a).exp()),
                EndpointLimit::PlusInfinity,
            )
        }
    };
    Ok(JacobiPair {
        profile,
        data,
        e_at_neck,
        variation_sign,
        v_limit,
        e_limit,
    })
}

impl JacobiPair {
    pub fn spec(&self) -> &FamilySpec {
        self.profile.spec()
    }

    pub fn profile(&self) -> &Profile {
        &self.profile
    }

    pub fn half_domain(&self) -> f64 {
        self.profile.half_domain()
    }

    /// Vertical Jacobi field (odd; vanishes only at the neck).
    pub fn v(&self, s: f64) -> f64 {
        let a = self.spec().a;
        match &self.data {
            FieldData::Euclid | FieldData::HnxR { .. } => {
                let ft = self.profile.d_radius(s);
                ft / (1.0 + ft * ft).sqrt()
            }
            FieldData::H2xR { .. } => self.profile.d_radius(s),
            FieldData::H3Minimal { .. } => {
                let c2a = (2.0 * a).cosh();
                c2a * (2.0 * s).sinh() / (c2a * (2.0 * s).cosh() - 1.0).sqrt()
            }
            FieldData::H3Cousin { .. } => {
                let gs = (2.0 * a).exp() * a.sinh() * a.sinh();
                (-a).exp() * s / (s * s + gs).sqrt()
            }
        }
    }

    /// Analytic derivative of `v`.
    pub fn dv(&self, s: f64) -> f64 {
        let a = self.spec().a;
        match &self.data {
            FieldData::Euclid => {
                let n = match self.spec().family {
                    Family::Euclid { n } => n,
                    _ => unreachable!(),
                };
                let c = self.profile.radius(s) / a;
                ((n - 1) as f64) / (a * c.powi(n as i32))
            }
            FieldData::H2xR { .. } => {
                let ca = a.cosh();
                let d2 = ca * ca * s.cosh() * s.cosh() - 1.0;
                a.sinh().powi(2) * ca * s.cosh() / (d2 * d2.sqrt())
            }
            FieldData::HnxR { .. } => {
                let n = match self.spec().family {
                    Family::HnxR { n } => n,
                    _ => unreachable!(),
                };
                let f = self.profile.radius(s);
                ((n - 1) as f64) * (f.cosh() / f.sinh()) * (a.sinh() / f.sinh()).powi(n as i32 - 1)
            }
            FieldData::H3Minimal { .. } => {
                let big_a = (2.0 * a).cosh();
                let c2s = (2.0 * s).cosh();
                let d = (big_a * c2s - 1.0).sqrt();
                big_a * (big_a * c2s * c2s - 2.0 * c2s + big_a) / (d * d * d)
            }
            FieldData::H3Cousin { .. } => {
                let gs = (2.0 * a).exp() * a.sinh() * a.sinh();
                let r = (s * s + gs).sqrt();
                (-a).exp() * gs / (r * r * r)
            }
        }
    }

    /// Variation Jacobi field (even), in the stored sign convention.
    pub fn e(&self, s: f64) -> f64 {
        let a = self.spec().a;
        let x = s.abs();
        match &self.data {
            FieldData::Euclid => {
                let n = match self.spec().family {
                    Family::Euclid { n } => n,
                    _ => unreachable!(),
                };
                let tau = x / a;
                if n == 2 {
                    1.0 - tau * tau.tanh()
                } else {
                    let c = self.profile.radius(x) / a;
                    -c.powi(2 - n as i32) + tau * self.v(x)
                }
            }
            FieldData::H2xR { ib } => {
                let ca = a.cosh();
                let d2 = ca * ca * x.cosh() * x.cosh() - 1.0;
                let f = a.sinh().powi(2) * x.cosh() / d2;
                let b = h2xr_b(a);
                f - self.v(x) * ib.eval(&b, x)
            }
            FieldData::HnxR { phi } => {
                let n = match self.spec().family {
                    Family::HnxR { n } => n,
                    _ => unreachable!(),
                };
                let f = self.profile.radius(x);
                let e0 = (a.cosh() / f.cosh()) * (a.sinh() / f.sinh()).powi(n as i32 - 2);
                let g = hnxr_phi(n, a);
                let w = hnxr_phi_weight_removed(n, a);
                let e1 = a.cosh() * phi.tau(&g, &w, f.sinh() / a.sinh());
                -e0 + self.v(x) * e1
            }
            FieldData::H3Minimal { ii } => {
                let big_a = (2.0 * a).cosh();
                let s2a = (2.0 * a).sinh();
                let c2s = (2.0 * x).cosh();
                let f0 = s2a * s2a * c2s / (big_a * big_a * c2s * c2s - 1.0);
                let i0 = i0_integrand(a);
                f0 - self.v(x) * ii.eval(&i0, x)
            }
            FieldData::H3Cousin { ib, ic } => {
                let b = cousin_b(a);
                let c = cousin_c(a);
                let f1 = cousin_g(a, x) + self.v(x) * ic.eval(&c, x);
                -f1 + self.v(x) * ib.eval(&b, x)
            }
        }
    }

    /// Analytic derivative of `e` (odd).
    pub fn de(&self, s: f64) -> f64 {
        let a = self.spec().a;
        let x = s.abs();
        let d = match &self.data {
            FieldData::Euclid => {
                let n = match self.spec().family {
                    Family::Euclid { n } => n,
                    _ => unreachable!(),
                };
                let tau = x / a;
                if n == 2 {
                    -(tau.tanh() + tau / tau.cosh().powi(2)) / a
                } else {
                    let c = self.profile.radius(x) / a;
                    ((n - 1) as f64) * (self.v(x) + tau / c.powi(n as i32)) / a
                }
            }
            FieldData::H2xR { ib } => {
                let ca = a.cosh();
                let sa2 = a.sinh().powi(2);
                let d2 = ca * ca * x.cosh() * x.cosh() - 1.0;
                let fp = -sa2 * x.sinh() * (ca * ca * x.cosh() * x.cosh() + 1.0) / (d2 * d2);
                let b = h2xr_b(a);
                fp - self.dv(x) * ib.eval(&b, x) - self.v(x) * b(x)
            }
            FieldData::HnxR { phi } => {
                let n = match self.spec().family {
                    Family::HnxR { n } => n,
                    _ => unreachable!(),
                };
                let f = self.profile.radius(x);
                let ft = self.profile.d_radius(x);
                let e0 = (a.cosh() / f.cosh()) * (a.sinh() / f.sinh()).powi(n as i32 - 2);
                let de0 = -e0 * ft * (f.tanh() + ((n - 2) as f64) * f.cosh() / f.sinh());
                let g = hnxr_phi(n, a);
                let w = hnxr_phi_weight_removed(n, a);
                let e1 = a.cosh() * phi.tau(&g, &w, f.sinh() / a.sinh());
                let de1 = a.cosh() / (a.sinh() * f.cosh().powi(2));
                -de0 + self.dv(x) * e1 + self.v(x) * de1
            }
            FieldData::H3Minimal { ii } => {
                let big_a = (2.0 * a).cosh();
                let s2a = (2.0 * a).sinh();
                let c2s = (2.0 * x).cosh();
                let den = big_a * big_a * c2s * c2s - 1.0;
                let f0p = -2.0 * s2a * s2a * (2.0 * x).sinh() * (big_a * big_a * c2s * c2s + 1.0)
                    / (den * den);
                let i0 = i0_integrand(a);
                f0p - self.dv(x) * ii.eval(&i0, x) - self.v(x) * i0(x)
            }
            FieldData::H3Cousin { ib, ic } => {
                let b = cousin_b(a);
                let c = cousin_c(a);
                let f1p = cousin_g_deriv(a, x) + self.dv(x) * ic.eval(&c, x) + self.v(x) * c(x);
                -f1p + self.dv(x) * ib.eval(&b, x) + self.v(x) * b(x)
            }
        };
        if s < 0.0 {
            -d
        } else {
            d
        }
    }

    /// Second derivatives by 6th-order differencing of the analytic first
    /// derivatives.
    pub fn d2v(&self, s: f64) -> f64 {
        let h = fd_step(self, s);
        diff::derivative1(|x| self.dv(x), s, h)
    }

    pub fn d2e(&self, s: f64) -> f64 {
        let h = fd_step(self, s);
        diff::derivative1(|x| self.de(x), s, h)
    }

    /// `e` rescaled so that `e(0) = -1`, independent of the family convention.
    pub fn normalized_e(&self, s: f64) -> f64 {
        -self.e_at_neck * self.e(s)
    }

    pub fn d_normalized_e(&self, s: f64) -> f64 {
        -self.e_at_neck * self.de(s)
    }

    /// Self-adjointing weight of the radial Jacobi operator in the native
    /// parameter: `omega = sqrt(det g)/g_ss`.
    pub fn weight(&self, s: f64) -> f64 {
        match self.spec().family {
            Family::Euclid { n } => self.spec().a.powi(n as i32 - 1),
            Family::HnxR { n } => self.spec().a.sinh().powi(n as i32 - 1),
            Family::H2xR | Family::H3Minimal | Family::H3Cousin => self.profile.radius(s).sinh(),
        }
    }

    /// Analytic derivative of the weight.
    pub fn d_weight(&self, s: f64) -> f64 {
        match self.spec().family {
            Family::Euclid { .. } | Family::HnxR { .. } => 0.0,
            Family::H2xR | Family::H3Minimal | Family::H3Cousin => {
                self.profile.radius(s).cosh() * self.profile.d_radius(s)
            }
        }
    }

    /// Tail constant pairing with `v` in the threshold field
    /// `y = normalized_e + K v`: the conjugate point `beta(alpha)` exists iff
    /// `y(alpha) > 0`. `None` when the combined field always crosses zero
    /// (planar Euclidean catenoid and the cousins).
    pub fn threshold_tail(&self) -> Result<Option<f64>> {
        match self.spec().family {
            Family::Euclid { n } => {
                if n == 2 {
                    Ok(None)
                } else {
                    Ok(Some(self.profile.half_domain() / self.spec().a))
                }
            }
            Family::H3Cousin => Ok(None),
            Family::H2xR | Family::HnxR { .. } | Family::H3Minimal => {
                Ok(Some(tail_integral(*self.spec())?.value))
            }
        }
    }
}

fn fd_step(pair: &JacobiPair, s: f64) -> f64 {
    let base = diff::scaled_step(s, 1e-3);
    let t = pair.half_domain();
    if t.is_finite() {
        // Keep the stencil inside the domain.
        base.min((t - s.abs()).max(1e-9) / 8.0)
    } else {
        base
    }
}

/// The combined Jacobi field `w(alpha, s) = v(alpha) e(s) + e(alpha) v(s)`,
/// vanishing at `s = -alpha` exactly (by parity of the evaluators).
pub struct CombinedField<'a> {
    pair: &'a JacobiPair,
    pub alpha: f64,
    pub v_alpha: f64,
    pub e_alpha: f64,
}

/// Build the combined field for a left endpoint `-alpha`, `0 < alpha < T`.
pub fn combined_field(pair: &JacobiPair, alpha: f64) -> Result<CombinedField<'_>> {
    if !(alpha > 0.0 && alpha < pair.half_domain()) {
        return Err(Error::OutOfDomain {
            value: alpha,
            half_width: pair.half_domain(),
        });
    }
    Ok(CombinedField {
        pair,
        alpha,
        v_alpha: pair.v(alpha),
        e_alpha: pair.e(alpha),
    })
}

impl CombinedField<'_> {
    pub fn eval(&self, s: f64) -> f64 {
        self.v_alpha * self.pair.e(s) + self.e_alpha * self.pair.v(s)
    }
}

/// Convergent tail integral `E(a)` of the family (`∫_0^∞ B` for `H^2 x R`,
/// the `e_1` limit for `H^n x R`, `∫_0^∞ I_0` for minimal catenoids in
/// hyperbolic 3-space).
#[derive(Debug, Clone, Copy)]
pub struct TailIntegral {
    pub spec: FamilySpec,
    pub value: f64,
    pub convergent: bool,
}

pub fn tail_integral(spec: FamilySpec) -> Result<TailIntegral> {
    let a = spec.a;
    let value = match spec.family {
        Family::H2xR => {
            let b = h2xr_b(a);
            integrate(&Integrand::new(b), 0.0, f64::INFINITY, 1e-13, 1e-12)?.value
        }
        Family::HnxR { n } => {
            let phi = hnxr_phi(n, a);
            let wr = hnxr_phi_weight_removed(n, a);
            let integrand = Integrand::new(phi).with_inv_sqrt_singularity_stable(1.0, wr);
            a.cosh() * integrate(&integrand, 1.0, f64::INFINITY, 1e-13, 1e-12)?.value
        }
        Family::H3Minimal => {
            let i0 = i0_integrand(a);
            integrate(&Integrand::new(i0), 0.0, f64::INFINITY, 1e-13, 1e-12)?.value
        }
        Family::Euclid { .. } => {
            return Err(Error::UnsupportedFamily {
                family: spec.family.label(),
                reason: "the Euclidean tail role is played by T_n".into(),
            })
        }
        Family::H3Cousin => {
            return Err(Error::UnsupportedFamily {
                family: spec.family.label(),
                reason: "the cousin tail v_1 ∫ B diverges".into(),
            })
        }
    };
    Ok(TailIntegral {
        spec,
        value,
        convergent: true,
    })
}

/// Max relative deviation of the weighted Wronskian
/// `W(s) = omega(s) (v e' - e v')` from its value at the first grid point.
pub fn wronskian_deviation(pair: &JacobiPair, grid: &[f64]) -> f64 {
    let w_at = |s: f64| pair.weight(s) * (pair.v(s) * pair.de(s) - pair.e(s) * pair.dv(s));
    let w_ref = w_at(grid[0]);
    grid.iter()
        .map(|&s| ((w_at(s) - w_ref) / w_ref).abs())
        .fold(0.0, f64::max)
}

/// Weighted Wronskian value itself (constant along the profile).
pub fn wronskian_value(pair: &JacobiPair, s: f64) -> f64 {
    pair.weight(s) * (pair.v(s) * pair.de(s) - pair.e(s) * pair.dv(s))
}

/// Compare the closed-form `e` against the finite-difference normal
/// component of the family variation: builds the `a ± da` profiles, forms
/// the ambient difference quotient at fixed `(s, theta)`, projects on the
/// unit normal, applies the recorded sign, and returns the max deviation
/// over the grid relative to the grid sup of `|e|`.
pub fn variation_fd_check(pair: &JacobiPair, grid: &[f64], da: f64) -> Result<f64> {
    let spec = *pair.spec();
    let plus = build_profile(FamilySpec::new(spec.family, spec.a + da)?)?;
    let minus = build_profile(FamilySpec::new(spec.family, spec.a - da)?)?;
    let theta = 0.0;
    let sup_e = grid
        .iter()
        .map(|&s| pair.e(s).abs())
        .fold(0.0f64, f64::max)
        .max(1e-300);
    let mut worst = 0.0f64;
    for &s in grid {
        let xp = embed(&plus, s, theta)?;
        let xm = embed(&minus, s, theta)?;
        let x = embed(pair.profile(), s, theta)?;
        let n = unit_normal(pair.profile(), s, theta)?;
        let dxda: Vec<f64> = xp
            .iter()
            .zip(&xm)
            .map(|(p, m)| (p - m) / (2.0 * da))
            .collect();
        let u_fd = pair.variation_sign * ambient_inner(spec.family, &x, &dxda, &n);
        worst = worst.max((u_fd - pair.e(s)).abs() / sup_e);
    }
    Ok(worst)
}
