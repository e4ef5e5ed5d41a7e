//! Conservation checks from the flux formula: constancy of the first
//! integral along ODE-integrated profiles, and boundary flux balance for the
//! axial Killing field on parameter domains.
//!
//! For a Killing field K and a domain D on an immersion with mean curvature
//! vector H, `n ∫_D g(K, H) dμ = -∮_{∂D} g(K, ν) dμ` with ν the inward
//! conormal. On a rotation hypersurface each boundary component is a sphere,
//! so the boundary term reduces to the axial flux density times the sphere
//! volume, and the flux density itself is the profile ODE's first integral.

use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::numerics::quadrature::{integrate, Integrand};
use crate::profiles::{build_profile, ode_trajectory, Family, FamilySpec, Profile};
use crate::stability::DomainSpec;

/// First-integral samples along a profile and their spread.
#[derive(Debug, Clone)]
pub struct FluxTrace {
    /// `(parameter, first-integral value)` samples.
    pub samples: Vec<(f64, f64)>,
    /// Mean of the samples.
    pub constant_estimate: f64,
    /// Max relative deviation of the samples from the mean.
    pub max_relative_deviation: f64,
}

/// Volume of the unit sphere `S^{n-1}`: `2 π^{n/2} / Γ(n/2)`.
pub fn sphere_volume(n: u32) -> f64 {
    let half = n as f64 / 2.0;
    2.0 * std::f64::consts::PI.powf(half) / gamma_half_integer(n)
}

/// Γ(n/2) for integer n >= 1.
fn gamma_half_integer(n: u32) -> f64 {
    if n.is_multiple_of(2) {
        // Γ(k) = (k-1)!
        let k = n / 2;
        (1..k).map(|i| i as f64).product()
    } else {
        // Γ(k + 1/2) = (2k)! sqrt(π) / (4^k k!)
        let k = (n - 1) / 2;
        let mut v = std::f64::consts::PI.sqrt();
        for i in 1..=k {
            v *= (i as f64) - 0.5;
        }
        v
    }
}

/// First integral from the ODE state, per family. Graph families carry
/// `[f, f_t]`; arclength families `[radius, height, phi]`.
fn first_integral_from_state(family: Family, state: &[f64]) -> f64 {
    match family {
        Family::Euclid { n } => {
            let (f, ft) = (state[0], state[1]);
            f.powi(n as i32 - 1) / (1.0 + ft * ft).sqrt()
        }
        Family::HnxR { n } => {
            let (f, ft) = (state[0], state[1]);
            f.sinh().powi(n as i32 - 1) / (1.0 + ft * ft).sqrt()
        }
        Family::H2xR => {
            let (r, phi) = (state[0], state[2]);
            r.sinh() * phi.sin()
        }
        Family::H3Minimal => {
            let (y, phi) = (state[0], state[2]);
            y.sinh() * y.cosh() * phi.sin()
        }
        Family::H3Cousin => {
            // The conserved combination is cosh(2y)/2 - flux.
            let (y, phi) = (state[0], state[2]);
            0.5 * (2.0 * y).cosh() - y.sinh() * y.cosh() * phi.sin()
        }
    }
}

/// Expected analytic value of the first integral.
pub fn expected_flux_constant(spec: FamilySpec) -> f64 {
    let a = spec.a;
    match spec.family {
        Family::Euclid { n } => a.powi(n as i32 - 1),
        Family::HnxR { n } => a.sinh().powi(n as i32 - 1),
        Family::H2xR => a.sinh(),
        Family::H3Minimal => 0.5 * (2.0 * a).sinh(),
        Family::H3Cousin => 0.5 * (-2.0 * a).exp(),
    }
}

/// Evaluate the family's first integral along the ODE-integrated profile
/// (independent of the closed-form construction) over `grid`.
pub fn flux_constancy(spec: FamilySpec, grid: &[f64], tol: Tolerances) -> Result<FluxTrace> {
    let s_max = grid.iter().fold(0.0f64, |m, s| m.max(s.abs()));
    let traj = ode_trajectory(spec, s_max.max(1e-6), tol)?;
    let mut samples = Vec::with_capacity(grid.len());
    for &s in grid {
        let state = traj.sample(s.abs()).ok_or(Error::OutOfDomain {
            value: s,
            half_width: traj.last().0.abs(),
        })?;
        samples.push((s, first_integral_from_state(spec.family, &state)));
    }
    let mean = samples.iter().map(|(_, v)| v).sum::<f64>() / samples.len() as f64;
    let max_relative_deviation = samples
        .iter()
        .map(|(_, v)| ((v - mean) / mean).abs())
        .fold(0.0, f64::max);
    Ok(FluxTrace {
        samples,
        constant_estimate: mean,
        max_relative_deviation,
    })
}

/// Axial flux density `g(K, τ)` times the boundary-sphere volume, from the
/// closed-form profile evaluators.
fn boundary_term(profile: &Profile, s: f64) -> f64 {
    let spec = *profile.spec();
    match spec.family {
        Family::Euclid { n } => {
            let ft = profile.d_radius(s);
            let density = 1.0 / (1.0 + ft * ft).sqrt();
            density * profile.radius(s).powi(n as i32 - 1) * sphere_volume(n)
        }
        Family::HnxR { n } => {
            let ft = profile.d_radius(s);
            let density = 1.0 / (1.0 + ft * ft).sqrt();
            density * profile.radius(s).sinh().powi(n as i32 - 1) * sphere_volume(n)
        }
        Family::H2xR => {
            let density = profile.d_height(s);
            density * profile.radius(s).sinh() * 2.0 * std::f64::consts::PI
        }
        Family::H3Minimal | Family::H3Cousin => {
            let y = profile.radius(s);
            let density = y.cosh().powi(2) * profile.d_height(s);
            density * y.sinh() * 2.0 * std::f64::consts::PI
        }
    }
}

/// Boundary flux balance over `domain = (s1, s2)`: the inward-conormal
/// boundary integral of the axial Killing field. Vanishes for the minimal
/// families; for the cousins (mean curvature 1) it must cancel against
/// `2 ∫_D g(K, N) dμ`, and the returned residual is the defect of
/// `∮ + 2 ∫ = 0`.
pub fn boundary_flux_balance(spec: FamilySpec, domain: DomainSpec) -> Result<f64> {
    let profile = build_profile(spec)?;
    let t = profile.half_domain();
    if !(domain.lower > -t && domain.upper < t) {
        return Err(Error::OutOfDomain {
            value: domain.lower.abs().max(domain.upper.abs()),
            half_width: t,
        });
    }
    let circulating = boundary_term(&profile, domain.lower) - boundary_term(&profile, domain.upper);
    match spec.family {
        Family::H3Cousin => {
            // 2 ∫_D g(K, N) dμ with g(K, N) = cosh(y) y_s and
            // dμ = sinh(y) ds dθ.
            let f = |s: f64| {
                let y = profile.radius(s);
                y.cosh() * profile.d_radius(s) * y.sinh()
            };
            let q = integrate(&Integrand::new(f), domain.lower, domain.upper, 1e-12, 1e-10)?;
            let bulk = 2.0 * 2.0 * std::f64::consts::PI * q.value;
            Ok(circulating + bulk)
        }
        _ => Ok(circulating),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sphere_volumes_known_values() {
        assert!((sphere_volume(2) - 2.0 * std::f64::consts::PI).abs() < 1e-14);
        assert!((sphere_volume(3) - 4.0 * std::f64::consts::PI).abs() < 1e-13);
        assert!((sphere_volume(4) - 2.0 * std::f64::consts::PI.powi(2)).abs() < 1e-13);
    }

    #[test]
    fn constancy_matches_analytic_constants() {
        let cases = [
            (FamilySpec::euclid(2, 1.0).unwrap(), 4.0),
            (FamilySpec::euclid(3, 1.0).unwrap(), f64::NAN),
            (FamilySpec::hnxr(3, 0.5).unwrap(), f64::NAN),
            (FamilySpec::h2xr(0.8).unwrap(), 4.0),
            (FamilySpec::h3_minimal(0.6).unwrap(), 4.0),
            (FamilySpec::h3_cousin(0.5).unwrap(), 4.0),
        ];
        for (spec, hi) in cases {
            let profile = build_profile(spec).unwrap();
            let hi = if hi.is_nan() {
                0.9 * profile.half_domain()
            } else {
                hi
            };
            let grid: Vec<f64> = (0..=16).map(|i| hi * i as f64 / 16.0).collect();
            let trace = flux_constancy(spec, &grid, Tolerances::default()).unwrap();
            let expect = expected_flux_constant(spec);
            assert!(
                trace.max_relative_deviation <= 1e-8,
                "{}: deviation {}",
                spec.label(),
                trace.max_relative_deviation
            );
            assert!(
                (trace.constant_estimate - expect).abs() <= 1e-8 * expect.abs(),
                "{}: constant {} vs {}",
                spec.label(),
                trace.constant_estimate,
                expect
            );
        }
    }

    #[test]
    fn hnxr_constant_is_sinh_power() {
        let spec = FamilySpec::hnxr(3, 0.5).unwrap();
        let expect = 0.5f64.sinh().powi(2);
        assert!((expected_flux_constant(spec) - expect).abs() < 1e-15);
    }

    #[test]
    fn symmetric_euclid_balance_vanishes() {
        let spec = FamilySpec::euclid(2, 1.0).unwrap();
        let r = boundary_flux_balance(spec, DomainSpec::new(-1.0, 1.0).unwrap()).unwrap();
        assert!(r.abs() < 1e-10, "residual {r}");
    }

    #[test]
    fn asymmetric_minimal_balances_vanish() {
        let cases = [
            (FamilySpec::euclid(3, 1.0).unwrap(), -0.2, 0.7),
            (FamilySpec::hnxr(2, 0.6).unwrap(), -0.5, 0.9),
            (FamilySpec::h3_minimal(0.5).unwrap(), -0.4, 2.0),
            (FamilySpec::h2xr(0.8).unwrap(), -1.3, 0.6),
        ];
        for (spec, lo_frac, hi_frac) in cases {
            let profile = build_profile(spec).unwrap();
            let t = profile.half_domain();
            let (lo, hi) = if t.is_finite() {
                (lo_frac * t, hi_frac * t)
            } else {
                (lo_frac, hi_frac)
            };
            let r = boundary_flux_balance(spec, DomainSpec::new(lo, hi).unwrap()).unwrap();
            assert!(r.abs() <= 1e-8, "{}: residual {r}", spec.label());
        }
    }

    #[test]
    fn cousin_balance_matches_mean_curvature_source() {
        let spec = FamilySpec::h3_cousin(0.5).unwrap();
        let r = boundary_flux_balance(spec, DomainSpec::new(-1.0, 1.0).unwrap()).unwrap();
        assert!(r.abs() <= 1e-6, "residual {r}");
        let r2 = boundary_flux_balance(spec, DomainSpec::new(-0.7, 2.3).unwrap()).unwrap();
        assert!(r2.abs() <= 1e-6, "asymmetric residual {r2}");
    }
}
