//! Generating curves (profiles) for all catenoid families, built from
//! closed-form quadrature with the ODE route kept as an independent
//! cross-check, plus embeddings into the ambient models.
//!
//! Quadrature is the authoritative representation: near the domain endpoint
//! the graph parametrizations degenerate (`f_t -> ∞`) while the inverse
//! function stays regular, so radii for the graph families are always
//! obtained by inverting the tabulated inverse map.

mod euclid;
mod h2xr;
mod h3;
mod hnxr;
pub mod table;

pub use euclid::{t_n, EuclidProfile};
pub use h2xr::H2xRProfile;
pub use h3::{lambda0_graph, v_height, H3CousinProfile, H3MinimalProfile};
pub use hnxr::HnxRProfile;

use serde::Serialize;

use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::numerics::ode::{solve_ivp, IvpTrajectory};
use crate::numerics::quadrature::{integrate, Integrand};

/// Ambient-space family. `n` is the dimension of the rotation hypersurface
/// where it varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    Euclid { n: u32 },
    H2xR,
    HnxR { n: u32 },
    H3Minimal,
    H3Cousin,
}

impl Family {
    pub fn label(&self) -> String {
        match self {
            Family::Euclid { n } => format!("euclid(n={n})"),
            Family::H2xR => "h2xr".to_string(),
            Family::HnxR { n } => format!("hnxr(n={n})"),
            Family::H3Minimal => "h3min".to_string(),
            Family::H3Cousin => "h3cousin".to_string(),
        }
    }
}

/// Which ambient family plus the neck parameter; selects all closed forms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FamilySpec {
    #[serde(flatten)]
    pub family: Family,
    /// Neck parameter: minimal distance of the profile to the rotation axis.
    pub a: f64,
}

impl FamilySpec {
    pub fn new(family: Family, a: f64) -> Result<Self> {
        if !(a > 0.0) || !a.is_finite() {
            return Err(Error::InvalidInput(format!(
                "neck parameter must be positive and finite (got {a})"
            )));
        }
        match family {
            Family::Euclid { n } | Family::HnxR { n } if n < 2 => {
                return Err(Error::InvalidInput(format!(
                    "dimension must satisfy n >= 2 (got {n})"
                )));
            }
            _ => {}
        }
        Ok(FamilySpec { family, a })
    }

    pub fn euclid(n: u32, a: f64) -> Result<Self> {
        Self::new(Family::Euclid { n }, a)
    }
    pub fn h2xr(a: f64) -> Result<Self> {
        Self::new(Family::H2xR, a)
    }
    pub fn hnxr(n: u32, a: f64) -> Result<Self> {
        Self::new(Family::HnxR { n }, a)
    }
    pub fn h3_minimal(a: f64) -> Result<Self> {
        Self::new(Family::H3Minimal, a)
    }
    pub fn h3_cousin(a: f64) -> Result<Self> {
        Self::new(Family::H3Cousin, a)
    }

    pub fn label(&self) -> String {
        format!("{}, a={}", self.family.label(), self.a)
    }

    /// Mean curvature of the family (0 for minimal, 1 for cousins).
    pub fn mean_curvature(&self) -> f64 {
        match self.family {
            Family::H3Cousin => 1.0,
            _ => 0.0,
        }
    }
}

/// Whether the native parameter is the graph height or profile arclength.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ParamKind {
    Graph,
    ArcLength,
}

#[derive(Debug, Clone)]
enum ProfileKind {
    Euclid(EuclidProfile),
    H2xR(H2xRProfile),
    HnxR(HnxRProfile),
    H3Minimal(H3MinimalProfile),
    H3Cousin(H3CousinProfile),
}

/// A built generating curve: immutable, cheap to evaluate, thread-safe.
#[derive(Debug, Clone)]
pub struct Profile {
    spec: FamilySpec,
    half_domain: f64,
    param_kind: ParamKind,
    kind: ProfileKind,
}

/// Construct the profile for `spec`, precomputing its evaluation tables.
pub fn build_profile(spec: FamilySpec) -> Result<Profile> {
    let (kind, half_domain, param_kind) = match spec.family {
        Family::Euclid { n } => {
            let p = EuclidProfile::build(n, spec.a)?;
            let t = p.half_domain();
            (ProfileKind::Euclid(p), t, ParamKind::Graph)
        }
        Family::H2xR => {
            let p = H2xRProfile::build(spec.a)?;
            (ProfileKind::H2xR(p), f64::INFINITY, ParamKind::ArcLength)
        }
        Family::HnxR { n } => {
            let p = HnxRProfile::build(n, spec.a)?;
            let t = p.t_half;
            (ProfileKind::HnxR(p), t, ParamKind::Graph)
        }
        Family::H3Minimal => {
            let p = H3MinimalProfile::build(spec.a)?;
            (
                ProfileKind::H3Minimal(p),
                f64::INFINITY,
                ParamKind::ArcLength,
            )
        }
        Family::H3Cousin => {
            let p = H3CousinProfile::build(spec.a)?;
            (
                ProfileKind::H3Cousin(p),
                f64::INFINITY,
                ParamKind::ArcLength,
            )
        }
    };
    Ok(Profile {
        spec,
        half_domain,
        param_kind,
        kind,
    })
}

impl Profile {
    pub fn spec(&self) -> &FamilySpec {
        &self.spec
    }

    /// Half-length `T` of the parameter domain `(-T, T)`.
    pub fn half_domain(&self) -> f64 {
        self.half_domain
    }

    pub fn param_kind(&self) -> ParamKind {
        self.param_kind
    }

    /// Neck value `radius(0)`.
    pub fn neck(&self) -> f64 {
        self.radius(0.0)
    }

    /// Distance to the rotation axis (even in the parameter).
    pub fn radius(&self, s: f64) -> f64 {
        match &self.kind {
            ProfileKind::Euclid(p) => p.radius(s),
            ProfileKind::H2xR(p) => p.radius(s),
            ProfileKind::HnxR(p) => p.radius(s),
            ProfileKind::H3Minimal(p) => p.radius(s),
            ProfileKind::H3Cousin(p) => p.radius(s),
        }
    }

    /// Axis coordinate (odd in the parameter, centered at the neck).
    pub fn height(&self, s: f64) -> f64 {
        match &self.kind {
            ProfileKind::Euclid(_) | ProfileKind::HnxR(_) => s,
            ProfileKind::H2xR(p) => p.height(s),
            ProfileKind::H3Minimal(p) => p.height(s),
            ProfileKind::H3Cousin(p) => p.height(s),
        }
    }

    pub fn d_radius(&self, s: f64) -> f64 {
        match &self.kind {
            ProfileKind::Euclid(p) => p.d_radius(s),
            ProfileKind::H2xR(p) => p.d_radius(s),
            ProfileKind::HnxR(p) => p.d_radius(s),
            ProfileKind::H3Minimal(p) => p.d_radius(s),
            ProfileKind::H3Cousin(p) => p.d_radius(s),
        }
    }

    pub fn d_height(&self, s: f64) -> f64 {
        match &self.kind {
            ProfileKind::Euclid(_) | ProfileKind::HnxR(_) => 1.0,
            ProfileKind::H2xR(p) => p.d_height(s),
            ProfileKind::H3Minimal(p) => p.d_height(s),
            ProfileKind::H3Cousin(p) => p.d_height(s),
        }
    }

    /// Unit-speed defect for arclength families (None in graph parameter):
    /// `y_s^2 + (metric factor) Lambda_s^2 - 1`.
    pub fn arclength_defect(&self, s: f64) -> Option<f64> {
        match &self.kind {
            ProfileKind::Euclid(_) | ProfileKind::HnxR(_) => None,
            ProfileKind::H2xR(p) => Some(p.d_radius(s).powi(2) + p.d_height(s).powi(2) - 1.0),
            ProfileKind::H3Minimal(_) | ProfileKind::H3Cousin(_) => {
                let y = self.radius(s);
                Some(self.d_radius(s).powi(2) + y.cosh().powi(2) * self.d_height(s).powi(2) - 1.0)
            }
        }
    }

    /// Ambient dimension of embedded points.
    pub fn ambient_dim(&self) -> usize {
        match self.spec.family {
            Family::Euclid { n } | Family::HnxR { n } => n as usize + 1,
            Family::H2xR | Family::H3Minimal | Family::H3Cousin => 3,
        }
    }
}

/// Rescale a Euclidean profile by `k > 0` (the family's homothety
/// `f_a(t) = a f(t/a)`): the result solves the same ODE with neck `k a`.
pub fn scale_profile(p: &Profile, k: f64) -> Result<Profile> {
    if !(k > 0.0) {
        return Err(Error::InvalidInput(format!(
            "scale factor must be positive (got {k})"
        )));
    }
    match p.spec.family {
        Family::Euclid { n } => build_profile(FamilySpec::euclid(n, k * p.spec.a)?),
        _ => Err(Error::UnsupportedFamily {
            family: p.spec.family.label(),
            reason: "scaling is a Euclidean homothety only".into(),
        }),
    }
}

/// Embed a profile point into ambient-model coordinates.
///
/// Euclidean families land in Cartesian `R^{n+1}`; `H^2 x R` and `H^n x R`
/// use the ball model times the line (axis coordinate last); both hyperbolic
/// 3-space families use the half-space model with `x3 > 0` last.
pub fn embed(p: &Profile, s: f64, theta: f64) -> Result<Vec<f64>> {
    if !(s.abs() < p.half_domain) {
        return Err(Error::OutOfDomain {
            value: s,
            half_width: p.half_domain,
        });
    }
    let (ct, st) = (theta.cos(), theta.sin());
    Ok(match p.spec.family {
        Family::Euclid { n } => {
            let f = p.radius(s);
            let mut x = vec![0.0; n as usize + 1];
            x[0] = f * ct;
            x[1] = f * st;
            x[n as usize] = s;
            x
        }
        Family::H2xR => {
            let r = (p.radius(s) / 2.0).tanh();
            vec![r * ct, r * st, p.height(s)]
        }
        Family::HnxR { n } => {
            let r = (p.radius(s) / 2.0).tanh();
            let mut x = vec![0.0; n as usize + 1];
            x[0] = r * ct;
            x[1] = r * st;
            x[n as usize] = s;
            x
        }
        Family::H3Minimal | Family::H3Cousin => {
            let y = p.radius(s);
            let el = p.height(s).exp();
            vec![el * y.tanh() * ct, el * y.tanh() * st, el / y.cosh()]
        }
    })
}

/// Unit normal along the immersion at `(s, theta)`, in ambient coordinates,
/// oriented so the vertical Jacobi field `g(K, N)` is positive for `s > 0`.
pub fn unit_normal(p: &Profile, s: f64, theta: f64) -> Result<Vec<f64>> {
    if !(s.abs() < p.half_domain) {
        return Err(Error::OutOfDomain {
            value: s,
            half_width: p.half_domain,
        });
    }
    let (ct, st) = (theta.cos(), theta.sin());
    Ok(match p.spec.family {
        Family::Euclid { n } => {
            let ft = p.d_radius(s);
            let k = 1.0 / (1.0 + ft * ft).sqrt();
            let mut v = vec![0.0; n as usize + 1];
            v[0] = -k * ct;
            v[1] = -k * st;
            v[n as usize] = k * ft;
            v
        }
        Family::H2xR => {
            let r = p.radius(s);
            let ls = p.d_height(s);
            let ball = -ls / (2.0 * (r / 2.0).cosh().powi(2));
            vec![ball * ct, ball * st, p.d_radius(s)]
        }
        Family::HnxR { n } => {
            let f = p.radius(s);
            let ft = p.d_radius(s);
            let k = 1.0 / (1.0 + ft * ft).sqrt();
            let ball = -k / (2.0 * (f / 2.0).cosh().powi(2));
            let mut v = vec![0.0; n as usize + 1];
            v[0] = ball * ct;
            v[1] = ball * st;
            v[n as usize] = k * ft;
            v
        }
        Family::H3Minimal | Family::H3Cousin => {
            let y = p.radius(s);
            let el = p.height(s).exp();
            let ys = p.d_radius(s);
            let ls = p.d_height(s);
            let n1 = ls - ys * y.tanh();
            let n2 = ls * y.sinh() + ys / y.cosh();
            let f = el / y.cosh();
            vec![-f * n1 * ct, -f * n1 * st, f * n2]
        }
    })
}

/// Ambient Riemannian inner product of tangent vectors `u`, `w` at `point`.
pub fn ambient_inner(family: Family, point: &[f64], u: &[f64], w: &[f64]) -> f64 {
    match family {
        Family::Euclid { .. } => u.iter().zip(w).map(|(a, b)| a * b).sum(),
        Family::H2xR | Family::HnxR { .. } => {
            let dim = point.len();
            let r2: f64 = point[..dim - 1].iter().map(|x| x * x).sum();
            let conf = 4.0 / (1.0 - r2).powi(2);
            let ball: f64 = u[..dim - 1]
                .iter()
                .zip(&w[..dim - 1])
                .map(|(a, b)| a * b)
                .sum();
            conf * ball + u[dim - 1] * w[dim - 1]
        }
        Family::H3Minimal | Family::H3Cousin => {
            let x3 = point[point.len() - 1];
            u.iter().zip(w).map(|(a, b)| a * b).sum::<f64>() / (x3 * x3)
        }
    }
}

/// Vertical and x-heights of the profile, where defined.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Heights {
    /// Limit of the height function at the domain end.
    pub v: f64,
    /// `exp(v)` in the half-space model (hyperbolic 3-space only).
    pub x: Option<f64>,
}

/// Vertical height `V` (and, in hyperbolic 3-space, the x-height `X = e^V`).
///
/// Defined for `H^2 x R`, `H^n x R` and minimal catenoids in hyperbolic
/// 3-space; the Euclidean `n = 2` catenoid and the cousins have infinite
/// vertical extent.
pub fn heights(spec: FamilySpec) -> Result<Heights> {
    match spec.family {
        Family::H2xR => {
            let g = h2xr::height_integrand(spec.a);
            let v = integrate(&Integrand::new(g), 0.0, f64::INFINITY, 1e-13, 1e-12)?.value;
            Ok(Heights { v, x: None })
        }
        Family::HnxR { n } => {
            let g = hnxr::lambda_integrand(n, spec.a);
            let w = hnxr::lambda_weight_removed(n, spec.a);
            let integrand = Integrand::new(g).with_inv_sqrt_singularity_stable(spec.a, w);
            let v = integrate(&integrand, spec.a, f64::INFINITY, 1e-13, 1e-12)?.value;
            Ok(Heights { v, x: None })
        }
        Family::H3Minimal => {
            let v = v_height(spec.a)?;
            Ok(Heights {
                v,
                x: Some(v.exp()),
            })
        }
        Family::Euclid { .. } | Family::H3Cousin => Err(Error::UnsupportedFamily {
            family: spec.family.label(),
            reason: "vertical height is infinite".into(),
        }),
    }
}

/// Independent ODE route to the profile, used for cross-checks and flux
/// tests. Graph families integrate the second-order radius equation with
/// state `[f, f_t]`; arclength families integrate the unit-speed system
/// `[radius, height, phi]` where `phi` is the tangent angle.
pub fn ode_trajectory(spec: FamilySpec, param_max: f64, tol: Tolerances) -> Result<IvpTrajectory> {
    let a = spec.a;
    match spec.family {
        Family::Euclid { n } => {
            let m = (n - 1) as f64;
            solve_ivp(
                move |_t, y: &[f64], dy: &mut [f64]| {
                    dy[0] = y[1];
                    dy[1] = m * (1.0 + y[1] * y[1]) / y[0];
                },
                0.0,
                &[a, 0.0],
                param_max,
                tol.ode,
            )
        }
        Family::HnxR { n } => {
            let m = (n - 1) as f64;
            solve_ivp(
                move |_t, y: &[f64], dy: &mut [f64]| {
                    dy[0] = y[1];
                    dy[1] = m * (y[0].cosh() / y[0].sinh()) * (1.0 + y[1] * y[1]);
                },
                0.0,
                &[a, 0.0],
                param_max,
                tol.ode,
            )
        }
        Family::H2xR => solve_ivp(
            move |_s, y: &[f64], dy: &mut [f64]| {
                let (r, phi) = (y[0], y[2]);
                dy[0] = phi.cos();
                dy[1] = phi.sin();
                dy[2] = -(r.cosh() / r.sinh()) * phi.sin();
            },
            0.0,
            &[a, 0.0, std::f64::consts::FRAC_PI_2],
            param_max,
            tol.ode,
        ),
        Family::H3Minimal => solve_ivp(
            move |_s, y: &[f64], dy: &mut [f64]| {
                let (r, phi) = (y[0], y[2]);
                dy[0] = phi.cos();
                dy[1] = phi.sin() / r.cosh();
                dy[2] = -2.0 * ((2.0 * r).cosh() / (2.0 * r).sinh()) * phi.sin();
            },
            0.0,
            &[a, 0.0, std::f64::consts::FRAC_PI_2],
            param_max,
            tol.ode,
        ),
        Family::H3Cousin => solve_ivp(
            move |_s, y: &[f64], dy: &mut [f64]| {
                let (r, phi) = (y[0], y[2]);
                dy[0] = phi.cos();
                dy[1] = phi.sin() / r.cosh();
                dy[2] = 2.0 - 2.0 * ((2.0 * r).cosh() / (2.0 * r).sinh()) * phi.sin();
            },
            0.0,
            &[a, 0.0, std::f64::consts::FRAC_PI_2],
            param_max,
            tol.ode,
        ),
    }
}

/// Max deviation between the ODE-integrated radius and the quadrature or
/// closed-form radius over `grid` (grid points taken by absolute value;
/// both constructions share the symmetric initial condition).
pub fn profile_cross_check(spec: FamilySpec, grid: &[f64], tol: Tolerances) -> Result<f64> {
    let profile = build_profile(spec)?;
    let s_max = grid.iter().fold(0.0f64, |m, s| m.max(s.abs()));
    if !(s_max < profile.half_domain()) {
        return Err(Error::OutOfDomain {
            value: s_max,
            half_width: profile.half_domain(),
        });
    }
    if s_max == 0.0 {
        return Ok(0.0);
    }
    let traj = ode_trajectory(spec, s_max, tol)?;
    let mut max_dev = 0.0f64;
    for &s in grid {
        let s = s.abs();
        let ode_radius = match traj.sample(s) {
            Some(state) => state[0],
            None => {
                return Err(Error::OutOfDomain {
                    value: s,
                    half_width: traj.last().0.abs(),
                })
            }
        };
        max_dev = max_dev.max((ode_radius - profile.radius(s)).abs());
    }
    Ok(max_dev)
}
