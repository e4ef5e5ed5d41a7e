//! Stability analysis: zeros of the variation field, half-vertical
//! thresholds, conjugate points, index classification, Lindelöf verdicts,
//! the Euclidean envelope cone and tangent construction, hyperbolic
//! catenary intersection geometry, and the published one-sided stability
//! certificates (curvature bound, total-curvature functional).

use serde::Serialize;

use crate::error::{Error, Result};
use crate::jacobi::{combined_field, jacobi_pair, tail_integral, JacobiPair};
use crate::numerics::find_root;
use crate::numerics::quadrature::{integrate, Integrand};
use crate::profiles::{lambda0_graph, v_height, Family, FamilySpec};

/// Root-finder tolerance for zeros of Jacobi fields.
const ROOT_TOL: f64 = 1e-12;

/// Threshold of the curvature certificate: `sup |A|^2 <= 9/4` suffices for
/// stability when the ambient curvature term is 2 and `-Delta >= 1/4`.
pub const CURVATURE_BOUND: f64 = 2.25;

/// `cosh^2(2 a_1) = (11 + 8 sqrt(2))/7` marks where the tail integrand is
/// sign-definite; beyond it the catenoid is stable by inspection.
pub fn analytic_stability_neck() -> f64 {
    let c2 = (11.0 + 8.0 * std::f64::consts::SQRT_2) / 7.0;
    0.5 * c2.sqrt().acosh()
}

/// Stability verdict and the maximal-domain descriptors of one catenoid.
#[derive(Debug, Clone, Serialize)]
pub struct StabilityReport {
    #[serde(flatten)]
    pub spec: FamilySpec,
    /// Morse index of the whole catenoid (0 or 1).
    pub index: u32,
    /// Convergent tail integral `E(a)` where the family defines one.
    #[serde(rename = "E")]
    pub e_value: Option<f64>,
    /// Positive zero of the variation field (half-width of the symmetric
    /// maximal weakly stable domain).
    pub z: Option<f64>,
    /// Half-vertical threshold: the domain `(-ell, T)` is maximal weakly
    /// stable among rotation-invariant domains.
    pub ell: Option<f64>,
    /// Whether the half-catenoid itself is such a maximal domain.
    pub lindelof: bool,
    /// Primary classification provenance.
    pub notes: String,
    /// One-sided certificates consistent with the primary verdict.
    pub certificates: Vec<String>,
}

/// A rotationally symmetric parameter domain `(lower, upper)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DomainSpec {
    pub lower: f64,
    pub upper: f64,
}

impl DomainSpec {
    pub fn new(lower: f64, upper: f64) -> Result<Self> {
        if !(lower < upper) {
            return Err(Error::InvalidInput(format!(
                "domain must satisfy lower < upper (got [{lower}, {upper}])"
            )));
        }
        Ok(DomainSpec { lower, upper })
    }
}

/// Search cap for zero hunting on unbounded domains.
const SEARCH_CAP: f64 = 60.0;

/// Locate the first sign change of `f` on `(0, hi_cap)` scanning expanding
/// dyadic points, then polish with the bracketed solver.
fn dyadic_zero<F: Fn(f64) -> f64>(f: &F, hi_cap: f64) -> Result<Option<f64>> {
    let mut prev_x: Option<(f64, f64)> = None;
    for j in -40..=7 {
        let x = 2f64.powi(j);
        if x >= hi_cap {
            break;
        }
        let fx = f(x);
        if let Some((px, pf)) = prev_x {
            if pf == 0.0 {
                return Ok(Some(px));
            }
            if pf * fx < 0.0 {
                return Ok(Some(find_root(f, px, x, ROOT_TOL)?));
            }
        }
        prev_x = Some((x, fx));
    }
    // Final stretch toward the cap.
    if let Some((px, pf)) = prev_x {
        let x = hi_cap;
        let fx = f(x);
        if pf * fx < 0.0 || fx == 0.0 {
            return Ok(Some(find_root(f, px, x, ROOT_TOL)?));
        }
    }
    Ok(None)
}

fn search_cap(pair: &JacobiPair) -> f64 {
    let t = pair.half_domain();
    if t.is_finite() {
        t * (1.0 - 1e-6)
    } else {
        // Zeros scale with the neck for the scaling-invariant family.
        SEARCH_CAP * pair.spec().a.max(1.0)
    }
}

/// Unique zero of the variation field in `(0, T)`, when it exists.
///
/// For minimal catenoids in hyperbolic 3-space the zero exists exactly when
/// the tail integral is positive; for every other family it always exists.
/// Absence is only declared with a sign-definite certificate: the sampled
/// field keeps the neck sign and the endpoint-limit sign agrees.
pub fn variation_zero(pair: &JacobiPair) -> Result<Option<f64>> {
    if matches!(pair.spec().family, Family::H3Minimal) {
        let e0 = tail_integral(*pair.spec())?.value;
        if e0 <= 0.0 {
            debug_assert!(pair.e_limit.sign() * pair.e_at_neck >= 0.0);
            return Ok(None);
        }
    }
    let f = |s: f64| pair.e(s);
    let found = dyadic_zero(&f, search_cap(pair))?;
    if found.is_none() {
        // Certificate: no sign change sampled and the limit agrees in sign.
        let limit_sign = pair.e_limit.sign();
        if limit_sign * pair.e_at_neck > 0.0 {
            return Ok(None);
        }
        return Err(Error::InvalidInput(format!(
            "variation zero of {} not bracketed within the search range",
            pair.spec().label()
        )));
    }
    Ok(found)
}

/// Unique positive zero `ell` of the threshold field
/// `y = normalized_e + K v` in `(0, z)`: the half-vertical domain extends to
/// a maximal weakly stable `(-ell, T)`. Absent for the families satisfying
/// Lindelöf's property (planar Euclidean catenoid, cousins) and for stable
/// hyperbolic catenoids.
pub fn half_vertical_threshold(pair: &JacobiPair) -> Result<Option<f64>> {
    let Some(k) = pair.threshold_tail()? else {
        return Ok(None);
    };
    let Some(z) = variation_zero(pair)? else {
        return Ok(None);
    };
    let y = |s: f64| pair.normalized_e(s) + k * pair.v(s);
    // y(0) = -1 and y(z) = K v(z) > 0: bracketed on (0, z).
    let ell = find_root(y, 1e-12, z, ROOT_TOL)?;
    Ok(Some(ell))
}

/// Conjugate point: the unique zero `beta(alpha)` in `(0, T)` of the
/// combined field `w(alpha, .) = v(alpha) e + e(alpha) v`, when the
/// existence criterion holds (`y(alpha) > 0` for families with a finite
/// tail; always for the planar catenoid and the cousins).
pub fn conjugate_point(pair: &JacobiPair, alpha: f64) -> Result<Option<f64>> {
    let w = combined_field(pair, alpha)?;
    if let Some(k) = pair.threshold_tail()? {
        let y_alpha = pair.normalized_e(alpha) + k * pair.v(alpha);
        if y_alpha <= 0.0 {
            return Ok(None);
        }
    }
    let f = |s: f64| w.eval(s);
    match dyadic_zero(&f, search_cap(pair))? {
        Some(beta) => Ok(Some(beta)),
        None => Err(Error::InvalidInput(format!(
            "conjugate point for alpha = {alpha} on {} not bracketed",
            pair.spec().label()
        ))),
    }
}

/// Tangent-construction residual for Euclidean catenaries:
/// `alpha + beta - r(alpha)/r'(alpha) - r(beta)/r'(beta)`, which vanishes
/// exactly when the two tangents meet on the rotation axis.
pub fn tangent_residual(pair: &JacobiPair, alpha: f64, beta: f64) -> Result<f64> {
    if !matches!(pair.spec().family, Family::Euclid { .. }) {
        return Err(Error::UnsupportedFamily {
            family: pair.spec().family.label(),
            reason: "the tangent construction is a Euclidean statement".into(),
        });
    }
    let p = pair.profile();
    Ok(alpha + beta - p.radius(alpha) / p.d_radius(alpha) - p.radius(beta) / p.d_radius(beta))
}

/// The Euclidean family's envelope cone.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct EnvelopeCone {
    pub n: u32,
    /// Unit-neck zero of the variation field.
    pub z_unit: f64,
    /// Cone slope: height over radius at the touch point, `z / c(z)`.
    pub slope: f64,
}

/// Envelope of the Euclidean catenoid family: a cone through the origin
/// touching each catenary at the parameter `±a z`, where `z` is the
/// unit-neck zero of the variation field.
pub fn envelope_cone(n: u32) -> Result<EnvelopeCone> {
    let pair = jacobi_pair(FamilySpec::euclid(n, 1.0)?)?;
    let z = variation_zero(&pair)?.expect("Euclidean variation field always has a zero");
    Ok(EnvelopeCone {
        n,
        z_unit: z,
        slope: z / pair.profile().radius(z),
    })
}

/// Rotational principal curvature of the hyperbolic minimal catenoid at
/// arclength `s`: `k_n = cosh^2(y0) Lambda_s / sinh(y0)`.
fn h3_kn(a: f64, s: f64) -> f64 {
    let big_a = (2.0 * a).cosh();
    (2.0 * a).sinh() / (big_a * (2.0 * s).cosh() - 1.0)
}

/// Principal curvatures `(k_p, k_n)` of the hyperbolic minimal catenoid in
/// arclength form: `k_n` as above, and the profile curvature
/// `k_p = phi_s + sinh(y) Lambda_s` computed from the closed-form first and
/// second derivatives of `(y0, Lambda0)`.
pub fn h3_principal_curvatures(a: f64, s: f64) -> (f64, f64) {
    let big_a = (2.0 * a).cosh();
    let s2a = (2.0 * a).sinh();
    let c2s = (2.0 * s).cosh();
    let s2s = (2.0 * s).sinh();
    let d2 = big_a * big_a * c2s * c2s - 1.0; // sinh^2(2 y0)
    let d = d2.sqrt();
    let y = 0.5 * (big_a * c2s).acosh();
    let ys = big_a * s2s / d;
    let yss = 2.0 * big_a * c2s / d - 2.0 * big_a * big_a * s2s * s2s * (big_a * c2s) / (d * d2);

    // Lambda_s = sqrt(2) J0, J0 = s2a / (P sqrt(P - 2)) with P = A cosh 2s + 1.
    let p = big_a * c2s + 1.0;
    let q = big_a * c2s - 1.0;
    let j0 = s2a / (p * q.sqrt());
    let dj0 = -2.0 * s2a * big_a * s2s / (p * p * q.sqrt()) - s2a * big_a * s2s / (p * q.powf(1.5));
    let ls = std::f64::consts::SQRT_2 * j0;
    let lss = std::f64::consts::SQRT_2 * dj0;

    // phi_s from the unit-speed angle: sin(phi) = cosh(y) Lambda_s,
    // cos(phi) = y_s.
    let sin_phi = y.cosh() * ls;
    let cos_phi = ys;
    let dsin = y.sinh() * ys * ls + y.cosh() * lss;
    let dcos = yss;
    let phi_s = cos_phi * dsin - sin_phi * dcos;

    let kp = phi_s + y.sinh() * ls;
    (kp, h3_kn(a, s))
}

/// Squared norm of the second fundamental form `|A|^2 = k_p^2 + k_n^2` of
/// the hyperbolic minimal catenoid.
pub fn second_fundamental_norm(a: f64, s: f64) -> f64 {
    let (kp, kn) = h3_principal_curvatures(a, s);
    kp * kp + kn * kn
}

/// Scan `sup_s |A|^2` over a grid and compare against the curvature bound.
pub fn curvature_sup(a: f64) -> f64 {
    let mut sup = 0.0f64;
    for i in 0..=400 {
        let s = 8.0 * i as f64 / 400.0;
        sup = sup.max(second_fundamental_norm(a, s));
    }
    sup
}

/// Total-curvature functional `∫ |A|^2 (|A|^2 - 6) dμ` over the whole
/// minimal catenoid (`dμ = sinh(y0) ds dθ`; the angular factor 2π is
/// included). A positive value certifies instability of a complete minimal
/// surface with finite total curvature.
pub fn cd_functional(a: f64) -> Result<f64> {
    let f = move |s: f64| {
        let a2 = second_fundamental_norm(a, s);
        let y = 0.5 * ((2.0 * a).cosh() * (2.0 * s).cosh()).acosh();
        a2 * (a2 - 6.0) * y.sinh()
    };
    let q = integrate(&Integrand::new(f), 0.0, f64::INFINITY, 1e-11, 1e-9)?;
    Ok(4.0 * std::f64::consts::PI * q.value)
}

/// Classify the catenoid: index, tail value, maximal-domain descriptors and
/// the Lindelöf verdict, with one-sided certificates where published
/// criteria apply.
pub fn classify(spec: FamilySpec) -> Result<StabilityReport> {
    let pair = jacobi_pair(spec)?;
    let mut certificates = Vec::new();
    let (index, e_value, notes): (u32, Option<f64>, String) = match spec.family {
        Family::Euclid { .. } => (
            1,
            None,
            "vertical field positive on each half; variation field changes sign".into(),
        ),
        Family::H2xR | Family::HnxR { .. } => {
            let e = tail_integral(spec)?.value;
            (
                1,
                Some(e),
                "variation field changes sign; tail finite".into(),
            )
        }
        Family::H3Minimal => {
            let e0 = tail_integral(spec)?.value;
            let idx = if e0 > 0.0 { 1 } else { 0 };
            let a1 = analytic_stability_neck();
            if spec.a >= a1 {
                certificates.push(format!(
                    "tail integrand sign-definite for a >= {a1:.4}: stable"
                ));
            }
            if spec.a >= 3.0f64.acosh() {
                certificates.push(format!(
                    "curvature bound sup|A|^2 = {:.4} <= 9/4: stable",
                    curvature_sup(spec.a)
                ));
            }
            let cd = cd_functional(spec.a)?;
            if cd > 0.0 {
                certificates.push(format!(
                    "total-curvature functional {cd:.4} > 0: index >= 1"
                ));
            }
            (
                idx,
                Some(e0),
                format!("sign of tail integral E0 = {e0:.6e}"),
            )
        }
        Family::H3Cousin => (
            1,
            None,
            "variation field changes sign; combined field always crosses".into(),
        ),
    };

    let z = variation_zero(&pair)?;
    let ell = half_vertical_threshold(&pair)?;
    let lindelof = matches!(spec.family, Family::Euclid { n: 2 } | Family::H3Cousin);

    Ok(StabilityReport {
        spec,
        index,
        e_value,
        z,
        ell,
        lindelof,
        notes,
        certificates,
    })
}

/// Intersection geometry of two hyperbolic minimal catenaries.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Intersections {
    /// 0 or 2 (symmetric pair).
    pub count: u32,
    /// Fermi coordinates `(u, ±v)` of the symmetric intersection points.
    pub point: Option<(f64, f64)>,
}

/// Two catenaries `a1 < a2` intersect at exactly two symmetric points iff
/// the v-height increased, `V0(a2) > V0(a1)`; otherwise they are disjoint
/// (the foliating regime).
pub fn intersect_catenaries(a1: f64, a2: f64) -> Result<Intersections> {
    if a1 == a2 {
        return Err(Error::IdenticalCurves { a: a1 });
    }
    if !(0.0 < a1 && a1 < a2) {
        return Err(Error::InvalidInput(format!(
            "need 0 < a1 < a2 (got {a1}, {a2})"
        )));
    }
    let v1 = v_height(a1)?;
    let v2 = v_height(a2)?;
    if v2 <= v1 {
        return Ok(Intersections {
            count: 0,
            point: None,
        });
    }
    // Height difference grows from -lambda0(a1, a2) < 0 to V0(a2) - V0(a1) > 0.
    let g = |t: f64| -> f64 {
        let l2 = lambda0_graph(a2, t).unwrap_or(f64::NAN);
        let l1 = lambda0_graph(a1, t).unwrap_or(f64::NAN);
        l2 - l1
    };
    let mut lo = a2 + 1e-9 * a2.max(1.0);
    let mut hi = a2 + 1.0;
    while g(hi) < 0.0 && hi < 1e3 {
        lo = hi;
        hi *= 2.0;
    }
    let t_star = find_root(g, lo, hi, ROOT_TOL)?;
    let v_star = lambda0_graph(a1, t_star)?;
    Ok(Intersections {
        count: 2,
        point: Some((t_star, v_star)),
    })
}

/// Deviation between the centered difference of the v-height and
/// `sqrt(2) E0(a)` (the derivative identity behind the foliation
/// dichotomy).
pub fn vheight_consistency(a: f64, delta: f64) -> Result<f64> {
    let vp = v_height(a + delta)?;
    let vm = v_height(a - delta)?;
    let e0 = tail_integral(FamilySpec::h3_minimal(a)?)?.value;
    Ok(((vp - vm) / (2.0 * delta) - std::f64::consts::SQRT_2 * e0).abs())
}

/// Zero of the tail integral `E0` (the stability threshold neck value).
pub fn e0_sign_change(lo: f64, hi: f64) -> Result<f64> {
    let f = |a: f64| {
        tail_integral(FamilySpec::h3_minimal(a).expect("valid neck"))
            .map(|t| t.value)
            .unwrap_or(f64::NAN)
    };
    find_root(f, lo, hi, 1e-10)
}
