//! Adaptive explicit ODE integration: Dormand–Prince 5(4) embedded pair.
//!
//! Solutions of profile Cauchy problems can blow up in finite time (the
//! radius and its slope both diverge at the domain endpoint). Once any state
//! component exceeds the overflow guard the integrator stops recording nodes
//! and keeps stepping toward the singularity until floating point gives out,
//! so the reported `blowup_time` is sharp to integration accuracy.

use crate::config::BLOWUP_GUARD;
use crate::error::{Error, Result};

/// Dense-output coefficients of one accepted step (per state component:
/// `[c1..c5]` in Hairer's continuous-extension form).
#[derive(Debug, Clone)]
struct DenseSegment {
    t0: f64,
    h: f64,
    cont: Vec<[f64; 5]>,
}

impl DenseSegment {
    fn eval(&self, t: f64, out: &mut [f64]) {
        let theta = ((t - self.t0) / self.h).clamp(0.0, 1.0);
        let theta1 = 1.0 - theta;
        for (d, c) in self.cont.iter().enumerate() {
            out[d] = c[0] + theta * (c[1] + theta1 * (c[2] + theta * (c[3] + theta1 * c[4])));
        }
    }
}

/// A maximal solution trajectory: accepted nodes plus an optional blow-up time.
#[derive(Debug, Clone)]
pub struct IvpTrajectory {
    /// Accepted integration nodes `(t, state)`, strictly increasing in `t`.
    pub nodes: Vec<(f64, Vec<f64>)>,
    /// Present when the state escaped the overflow guard; upper-bounds all
    /// node times.
    pub blowup_time: Option<f64>,
    dense: Vec<DenseSegment>,
}

impl IvpTrajectory {
    /// Final recorded state.
    pub fn last(&self) -> (&f64, &[f64]) {
        let (t, y) = self.nodes.last().expect("trajectory has at least one node");
        (t, y)
    }

    /// State at time `t`, evaluated from the stored 4th-order dense output.
    pub fn sample(&self, t: f64) -> Option<Vec<f64>> {
        let nodes = &self.nodes;
        if t < nodes.first()?.0 || t > nodes.last()?.0 {
            return None;
        }
        if t == nodes[0].0 {
            return Some(nodes[0].1.clone());
        }
        let idx = self
            .dense
            .partition_point(|seg| seg.t0 + seg.h < t)
            .min(self.dense.len().saturating_sub(1));
        let seg = self.dense.get(idx)?;
        let mut out = vec![0.0; seg.cont.len()];
        seg.eval(t, &mut out);
        Some(out)
    }
}

// Dormand–Prince RK5(4)7M coefficients.
const A: [[f64; 6]; 6] = [
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
const C: [f64; 6] = [0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0];
/// 5th-order weights (same as the last A row; FSAL).
const B5: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];
/// Embedded 4th-order weights.
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];
/// Dense-output weights (Hairer's continuous extension of DOPRI5).
const D: [f64; 7] = [
    -12715105075.0 / 11282082432.0,
    0.0,
    87487479700.0 / 32700410799.0,
    -10690763975.0 / 1880347072.0,
    701980252875.0 / 199316789632.0,
    -1453857185.0 / 822651844.0,
    69997945.0 / 29380423.0,
];

/// Solve the initial value problem `y' = rhs(t, y)` from `t0` to `t_max`.
///
/// `tol` controls the per-step local error (mixed absolute/relative).
/// Integration halts early with `blowup_time` set when the state or the
/// right-hand side exceeds the overflow guard.
pub fn solve_ivp<F>(rhs: F, t0: f64, y0: &[f64], t_max: f64, tol: f64) -> Result<IvpTrajectory>
where
    F: Fn(f64, &[f64], &mut [f64]),
{
    if !(t_max > t0) {
        return Err(Error::InvalidInput(format!(
            "solve_ivp requires t_max > t0 (got [{t0}, {t_max}])"
        )));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidInput("ode tolerance must be positive".into()));
    }
    let dim = y0.len();
    let mut y = y0.to_vec();
    let mut t = t0;
    let mut k = vec![vec![0.0f64; dim]; 7];
    rhs(t, &y, &mut k[0]);
    if !k[0].iter().all(|v| v.is_finite()) {
        return Err(Error::InvalidInput(
            "rhs not finite at the initial condition".into(),
        ));
    }

    let mut h = initial_step(t0, t_max, &y, &k[0]);
    let mut nodes = vec![(t, y.clone())];
    let mut dense: Vec<DenseSegment> = Vec::new();
    let mut beyond_guard = false;
    let mut last_finite_t = t;

    let mut y5 = vec![0.0f64; dim];
    let mut y4 = vec![0.0f64; dim];
    let mut stage = vec![0.0f64; dim];

    const MAX_STEPS: usize = 2_000_000;
    for _ in 0..MAX_STEPS {
        if t >= t_max {
            break;
        }
        if h > t_max - t {
            h = t_max - t;
        }
        let h_min = 16.0 * f64::EPSILON * t.abs().max(1.0);
        if h < h_min {
            if beyond_guard {
                break;
            }
            return Err(Error::StepUnderflow { t, step: h });
        }

        // Stages 2..7 (k[0] holds the FSAL derivative from the previous step).
        let mut step_failed_nonfinite = false;
        for i in 0..6 {
            for (d, s) in stage.iter_mut().enumerate() {
                let mut acc = 0.0;
                for (j, kj) in k.iter().enumerate().take(i + 1) {
                    acc += A[i][j] * kj[d];
                }
                *s = y[d] + h * acc;
            }
            let (head, tail) = k.split_at_mut(i + 1);
            let _ = head;
            rhs(t + C[i] * h, &stage, &mut tail[0]);
            if !tail[0].iter().all(|v| v.is_finite()) {
                step_failed_nonfinite = true;
                break;
            }
        }
        if step_failed_nonfinite {
            if beyond_guard {
                break;
            }
            h *= 0.25;
            continue;
        }

        let mut err_norm = 0.0f64;
        for d in 0..dim {
            let mut acc5 = 0.0;
            let mut acc4 = 0.0;
            for j in 0..7 {
                acc5 += B5[j] * k[j][d];
                acc4 += B4[j] * k[j][d];
            }
            y5[d] = y[d] + h * acc5;
            y4[d] = y[d] + h * acc4;
            let scale = tol * (1.0 + y[d].abs().max(y5[d].abs()));
            let e = (y5[d] - y4[d]) / scale;
            err_norm += e * e;
        }
        err_norm = (err_norm / dim as f64).sqrt();

        if !err_norm.is_finite() || !y5.iter().all(|v| v.is_finite()) {
            if beyond_guard {
                break;
            }
            h *= 0.25;
            continue;
        }

        if err_norm <= 1.0 {
            // Accept. Build dense-output coefficients before advancing.
            let mut cont = Vec::with_capacity(dim);
            for d in 0..dim {
                let ydiff = y5[d] - y[d];
                let bspl = h * k[0][d] - ydiff;
                let mut dk = 0.0;
                for j in 0..7 {
                    dk += D[j] * k[j][d];
                }
                cont.push([y[d], ydiff, bspl, ydiff - h * k[6][d] - bspl, h * dk]);
            }
            let seg = DenseSegment { t0: t, h, cont };
            t += h;
            y.copy_from_slice(&y5);
            k.swap(0, 6); // FSAL: k7 becomes k1 of the next step
            last_finite_t = t;
            let over = y.iter().any(|v| v.abs() > BLOWUP_GUARD)
                || k[0].iter().any(|v| v.abs() > BLOWUP_GUARD);
            if over {
                beyond_guard = true;
            }
            if !beyond_guard {
                nodes.push((t, y.clone()));
                dense.push(seg);
            }
        }

        // Standard step-size controller with safety factor and clamps.
        let factor = if err_norm > 0.0 {
            (0.9 * err_norm.powf(-0.2)).clamp(0.2, 5.0)
        } else {
            5.0
        };
        h *= factor;
    }

    let blowup_time = if beyond_guard {
        Some(last_finite_t)
    } else {
        None
    };
    Ok(IvpTrajectory {
        nodes,
        blowup_time,
        dense,
    })
}

/// Conservative initial step from the scale of y and y'.
fn initial_step(t0: f64, t_max: f64, y: &[f64], dy: &[f64]) -> f64 {
    let ynorm = y.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(1e-4);
    let dnorm = dy.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let span = t_max - t0;
    let h = if dnorm > 0.0 {
        0.01 * ynorm / dnorm
    } else {
        0.01 * span
    };
    h.min(0.1 * span).max(1e-10 * span)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_growth_reaches_e() {
        let traj = solve_ivp(|_t, y, dy| dy[0] = y[0], 0.0, &[1.0], 1.0, 1e-12).unwrap();
        let (t, y) = traj.last();
        assert!((t - 1.0).abs() < 1e-14);
        assert!(
            (y[0] - std::f64::consts::E).abs() < 1e-10,
            "y(1) = {}",
            y[0]
        );
        assert!(traj.blowup_time.is_none());
    }

    #[test]
    fn nodes_strictly_increasing() {
        let traj = solve_ivp(|t, _y, dy| dy[0] = t.cos(), 0.0, &[0.0], 10.0, 1e-10).unwrap();
        for w in traj.nodes.windows(2) {
            assert!(w[1].0 > w[0].0);
        }
    }

    #[test]
    fn catenary_profile_ode_matches_cosh() {
        // f f'' = (1 + f'^2) with f(0)=1, f'(0)=0 has the solution cosh t.
        let rhs = |_t: f64, y: &[f64], dy: &mut [f64]| {
            dy[0] = y[1];
            dy[1] = (1.0 + y[1] * y[1]) / y[0];
        };
        let traj = solve_ivp(rhs, 0.0, &[1.0, 0.0], 5.0, 1e-12).unwrap();
        for &t in &[0.5, 1.0, 2.5, 5.0] {
            let y = traj.sample(t).unwrap();
            assert!(
                (y[0] - t.cosh()).abs() < 1e-8,
                "f({t}) = {} vs cosh = {}",
                y[0],
                t.cosh()
            );
        }
    }

    #[test]
    fn blowup_time_detected_for_quadratic_growth() {
        // y' = y^2, y(0) = 1 blows up at t = 1.
        let traj = solve_ivp(|_t, y, dy| dy[0] = y[0] * y[0], 0.0, &[1.0], 2.0, 1e-10).unwrap();
        let tb = traj.blowup_time.expect("blow-up expected");
        assert!((tb - 1.0).abs() < 1e-8, "blow-up at {tb}");
        for (t, _) in &traj.nodes {
            assert!(*t <= tb);
        }
    }

    #[test]
    fn halved_tolerance_does_not_worsen_error() {
        let rhs = |t: f64, _y: &[f64], dy: &mut [f64]| dy[0] = (2.0 * t).sin();
        let exact = |t: f64| 0.5 * (1.0 - (2.0 * t).cos());
        let mut prev = f64::INFINITY;
        for tol in [1e-6, 1e-8, 1e-10] {
            let traj = solve_ivp(rhs, 0.0, &[0.0], 3.0, tol).unwrap();
            let (_, y) = traj.last();
            let err = (y[0] - exact(3.0)).abs();
            assert!(
                err <= prev.max(1e-13) * 1.5,
                "tol {tol} err {err} prev {prev}"
            );
            prev = err;
        }
    }
}
