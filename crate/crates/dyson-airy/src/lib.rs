//! Dyson Brownian motion started from the zeros of the Airy function.
//!
//! Layers, bottom up: Airy functions and zeros ([`airy`]), point
//! configurations ([`config`]), canonical products ([`products`]),
//! space-time kernels ([`kernels`]), correlation functions and gap
//! probabilities ([`correlations`]), Monte Carlo ([`sim`]) and the property
//! suite ([`verify`]).
//!
//! The first three layers are generic over [`scalar::Real`]; the aliases
//! below fix them at `f64`, which is what the kernels use.

// NaN-rejecting guards are written as `!(x > 0.0)` on purpose; oracle
// literals keep the digits they were computed with.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod airy;
pub mod config;
pub mod correlations;
pub mod kernels;
pub mod products;
pub mod quadrature;
pub mod scalar;
pub mod sim;
pub mod special;
pub mod verify;

pub use scalar::Real;

/// Double-precision complex value.
pub type Complex64 = scalar::ComplexValue<f64>;
pub type Configuration = config::PointConfiguration<f64>;
pub type ZeroTable = airy::AiryZeroTable<f64>;
pub type Constants = airy::AiryConstants<f64>;
pub type Zeta = airy::ZetaSum<f64>;
pub type Pair = airy::AiryPair<f64>;

pub use airy::AiryError;
pub use config::{ConfigError, Generator, Limit, Thresholds};
pub use correlations::CorrelationError;
pub use kernels::{CompiledKernel, KernelError, KernelKind, KernelSpec};
pub use products::{Genus, ProductError};
pub use sim::{SimError, SimMethod, SimPlan};
