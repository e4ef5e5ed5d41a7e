//! Default numerical tolerances, overridable by callers and the CLI.

/// Tolerance bundle threaded through profile construction and analysis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Absolute quadrature tolerance.
    pub quad_abs: f64,
    /// Relative quadrature tolerance.
    pub quad_rel: f64,
    /// Root-finder bracket tolerance.
    pub root: f64,
    /// ODE local error tolerance per step.
    pub ode: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            quad_abs: 1e-12,
            quad_rel: 1e-10,
            root: 1e-12,
            ode: 1e-12,
        }
    }
}

impl Tolerances {
    /// Scale every tolerance by `k` (used by the verification harness).
    pub fn scaled(self, k: f64) -> Self {
        Tolerances {
            quad_abs: self.quad_abs * k,
            quad_rel: self.quad_rel * k,
            root: self.root * k,
            ode: self.ode * k,
        }
    }
}

/// Overflow guard for the ODE integrator: integration switches to blow-up
/// tracking when any state component exceeds this magnitude.
pub const BLOWUP_GUARD: f64 = 1e12;
