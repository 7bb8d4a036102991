//! Exact arithmetic for the periplectic Lie superalgebra p(n) over F_p.
//!
//! The crate builds p(n) from its 2n x 2n matrix realization, multiplies in
//! the restricted enveloping superalgebra u(g) and its quotient by the
//! nilpotent ideal generated by long wedges of the degree +1 part, realizes
//! Kac and baby Verma modules as explicit matrices, computes the invariant
//! central subalgebra together with its Harish-Chandra image, and ships the
//! verification suites the CLI exposes.

pub mod center;
pub mod field;
pub mod linalg;
pub mod parse;
pub mod pbw;
pub mod report;
pub mod reps;
pub mod structure;
pub mod suites;
pub mod weights;

pub use field::{Fp, Scalar};
pub use linalg::{Matrix, Subspace};
pub use pbw::{AlgebraElement, Engine, HPolynomial, Mode, PBWMonomial};
pub use structure::{BasisVector, StructureTable};
pub use weights::{Weight, WeylElement};
