pub mod bessel;
pub mod disk_basis;
pub mod error;
pub mod exec;
pub mod experiments;
pub mod function;
pub mod norms;
pub mod quadrature;
pub mod report;
pub mod transform;
pub mod weighted_ops;

pub use error::{Error, Result};
pub use exec::Execution;
