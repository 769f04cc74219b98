//! Modular ±1 matrices ("M-matrices") of three types, their row inner
//! products and determinants, the block designs and association schemes
//! they induce, and the graphs read off their binary form.
//!
//! The usual pipeline:
//!
//! ```
//! use mmatrix::matrixgen::{build_base, apply_signs, GeneratorRule, SignConvention};
//! use mmatrix::designs::{classify_design, to_incidence, DesignKind};
//!
//! let table = build_base(GeneratorRule::Type3CyclicSum, 5).unwrap();
//! let signs = apply_signs(&table, SignConvention::OddPlus);
//! let design = classify_design(&to_incidence(&signs));
//! assert_eq!(design.kind, DesignKind::SpbibMClass);
//! assert_eq!(design.lambdas, vec![1, 2]);
//! ```

pub mod claims;
pub mod cli;
pub mod designs;
pub mod error;
pub mod graphs;
pub mod matrixgen;
pub mod orthogonality;

pub use error::{Error, Result};
