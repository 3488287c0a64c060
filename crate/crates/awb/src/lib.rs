//! Exact computations with finite-dimensional algebras with bracket.
//!
//! An algebra with bracket is an associative algebra carrying an extra
//! bilinear bracket subject to `[ab, c] = [a, c]b + a[b, c]`; the bracket is
//! not assumed antisymmetric or Jacobi. Everything in this crate works with
//! structure constants over the rationals or a prime field, and every rank
//! or dimension decision is exact: there is no floating point anywhere.
//!
//! What the crate computes and verifies:
//!
//! - structure-constant validation, ideals, centers, quotients, the
//!   canonical constructions ([`algebra`]);
//! - actions of one algebra on another, semidirect products and split
//!   extensions, compatibility of mutual actions ([`action`]);
//! - crossed modules and cat1 structures with both directions of their
//!   equivalence, producing certified isomorphism witnesses ([`xmod`]);
//! - the non-abelian tensor product of compatibly acting algebras, its
//!   collapse morphisms, induced actions and exactness properties
//!   ([`tensor`]);
//! - trivial-coefficient homology from an explicit chain complex, with the
//!   degree-zero identification and a comparison against the associative
//!   theory ([`homology`]);
//! - universal central extensions of perfect algebras, with the kernel
//!   cross-validated against degree-one homology along disjoint code paths,
//!   and the four-term exact sequence of an ideal ([`extension`]).
//!
//! Identities are enforced, not assumed: validators check every defining
//! equation on basis tuples and report witnesses, quotient operations prove
//! their own well-definedness during construction, and the theorem-level
//! constructions re-verify their conclusions.
//!
//! The `examples/` directory walks through each capability; the `awb`
//! binary exposes the same operations over JSON files.

pub mod action;
pub mod algebra;
pub mod equations;
pub mod error;
pub mod extension;
pub mod field;
pub mod fixtures;
pub mod homology;
pub mod io;
pub mod linalg;
pub mod tensor;
pub mod xmod;

pub use action::{AwbAction, MutualActions};
pub use algebra::{AwbMorphism, FiniteAwb, Tensor3, ValidationReport, Witness};
pub use error::AwbError;
pub use field::{FieldSpec, Scalar};
pub use linalg::{Matrix, QuotientSpace, Subspace};
pub use tensor::TensorProduct;
pub use xmod::{Cat1Awb, CrossedModule};
