//! Determinantal correlation functions, density profiles, gap
//! probabilities and the relaxation diagnostics built on the kernels.

pub mod determinant;
pub mod relaxation;
pub mod tracy_widom;

use thiserror::Error;

use crate::kernels::KernelError;

pub use determinant::{correlation_function, density_profile, Correlation, CorrelationQuery, MAX_POINTS};
pub use relaxation::{initial_recovery, relaxation_residual, Probe, RelaxationBox};
pub use tracy_widom::{fredholm, painleve_curve, tracy_widom, GapMethod, GapQuery};

#[derive(Debug, Error)]
pub enum CorrelationError {
    #[error("invalid query: {0}")]
    InvalidQuery(String),
    #[error("equal-time correlation {value:e} is negative beyond tolerance")]
    NegativeDensity { value: f64 },
    #[error("Painlevé II solution blew up near x = {x}; use the Fredholm method")]
    OdeBlowUp { x: f64 },
    #[error("ODE integration failed: {0}")]
    Ode(String),
    #[error(transparent)]
    Kernel(#[from] KernelError),
}
