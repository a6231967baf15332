//! Finite biracks, involutive set-theoretic Yang–Baxter solutions, their
//! graded φ-isotopes, and the quadratic algebras they present.
//!
//! The isotope of an `N^p`-graded involutive birack with lri, taken along
//! a twist system of commuting graded automorphisms with `L_{φ_s(x)} = L_x`,
//! presents the Zhang twist of the original Yang–Baxter algebra. The
//! [`algebra::verify_twist_isomorphism`] check certifies this at the level
//! of defining relations; [`census`] enumerates every small case.

pub mod algebra;
pub mod birack;
pub mod census;
pub mod error;
pub mod isotope;
pub mod linalg;
pub mod solution;
pub mod structures;

pub use algebra::{
    hilbert_function, hilbert_function_with, polynomial_hilbert, quadratic_relations, span_equal,
    star_product, twist_relations, verify_twist_isomorphism, HilbertOptions, HilbertTable,
    QuadraticRelationSet, TensorVector, TwistCertificate, Word,
};
pub use birack::{verify_tables, Birack, BirackIdentity, BirackViolation};
pub use census::{canonical_label, enumerate_solutions, enumerate_twist_systems};
pub use error::{Error, Hypothesis, Result, TwistFailure};
pub use isotope::{
    canonical_distributive_twist, isotope_birack, isotope_quasigroup, validate_twist_system,
    TwistLevel, TwistSystem, TwistVerdict,
};
pub use linalg::RankMode;
pub use solution::{BraidConditions, Solution};
pub use structures::{CayleyTable, Elem, Grading, LeftQuasigroup, Perm, RightQuasigroup};
