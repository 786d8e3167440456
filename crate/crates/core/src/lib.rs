//! Exact operator engine for the Cuntz algebra O₂ on permutative
//! representations.
//!
//! The crate realizes the recursive fermion system `a_n` and boson system
//! `b_n` inside O₂, evaluates them exactly on the reference subspace of an
//! eventually-periodic permutative representation, and checks the identities
//! relating them, including the fermionization `b_n = t₂* F_n`.

pub mod engine;
pub mod error;
pub mod expr;
pub mod normal_form;
pub mod oracle;
pub mod parse;
pub mod rep;
pub mod scalar;
pub mod state;
pub mod suites;

pub use engine::{apply, s_star_support};
pub use error::{ExprError, ParseError, RepError, ScalarError, StateError};
pub use expr::{HalfInt, Named, NamedKind, OperatorExpr};
pub use normal_form::{poly_normal_form, PolyNormalForm};
pub use rep::{BasisLabel, Letter, RepSpec, Word};
pub use scalar::{sqrt_int, RadicalScalar, Rational};
pub use state::StateVector;
pub use suites::{CheckReport, SuiteName, SuiteParams};
