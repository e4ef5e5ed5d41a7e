//! Shared numerical kernels: adaptive quadrature tolerant of inverse-
//! square-root endpoint singularities and infinite upper limits, adaptive
//! explicit ODE integration, and bracketed scalar root finding.
//!
//! All operations are pure functions of their inputs and deterministic for
//! fixed inputs and tolerances; they are safe to call from many threads.

pub mod diff;
pub mod ode;
pub mod quadrature;
pub mod roots;
pub mod stable;

pub use ode::{solve_ivp, IvpTrajectory};
pub use quadrature::{integrate, Integrand, Quadrature, SingularEndpoint};
pub use roots::{find_root, scan_for_bracket};
