//! Profile curves, Jacobi fields and stable-domain analysis for minimal
//! catenoids and catenoid cousins in five ambient-space families: Euclidean
//! `R^{n+1}`, the products `H^2 x R` and `H^n x R`, and hyperbolic 3-space
//! (minimal catenoids and constant-mean-curvature-1 cousins).
//!
//! The crate reconstructs generating curves both from closed-form quadrature
//! and from ODE integration, evaluates the vertical and variation Jacobi
//! fields, locates maximal weakly stable domains, classifies Morse index, and
//! cross-validates every verdict against an independent Sturm–Liouville
//! spectral oracle and conservation-law (flux) checks.

pub mod config;
pub mod error;
pub mod flux;
pub mod jacobi;
pub mod numerics;
pub mod profiles;
pub mod spectral;
pub mod stability;
pub mod verify;

pub use config::Tolerances;
pub use error::{Error, Result};
