#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod engine;
pub mod error;
mod extrapolate;
pub mod function;
mod gamma;
pub mod hilhorst;
pub mod hyp2f1;
pub mod inversion;
pub mod qcore;
pub mod quadrature;

pub use engine::{l1_norm, qft_point, qft_surface, QftSurface, QftValue, TransformOptions};
pub use error::{QftError, Result};
pub use extrapolate::Extrapolation;
pub use function::FunctionSpec;
pub use qcore::DeformationIndex;

pub const TOOL_VERSION: &str = concat!("qfourier ", env!("CARGO_PKG_VERSION"));
