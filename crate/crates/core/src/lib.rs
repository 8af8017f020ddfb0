//! Exact arithmetic for quasi-symmetric functions, with the peak subalgebra
//! `Π` and the span `Ξ` of shifted quasi-symmetric functions.
//!
//! - [`composition`]: compositions, descent sets, refinement and the
//!   combinatorial maps indexing everything else.
//! - [`qsym`]: linear combinations in the `M`, `F` and `θ` bases, and the
//!   finite polynomial realization.
//! - [`hopf`]: product, coproduct, counit, the coproduct of `θ_α` and the
//!   retraction `Θ`.
//! - [`theta`]: constructions of `θ_α`, reduction to a basis of `Ξ`, ranks.
//! - [`verify`]: exhaustive cross-check suites.
//! - [`cli`]: the `qsym` command line.


pub mod cli;
pub mod composition;
pub mod error;
pub mod hopf;
pub mod linalg;
pub mod qsym;
pub mod theta;
pub mod verify;


pub use composition::{Composition, Filter, SubsetRep};
pub use error::{Error, Result};
pub use hopf::TensorElement;
pub use qsym::{Basis, QSymElement, Rational, SparsePolynomial};
pub use theta::{RankReport, ThetaElement};
