#![allow(clippy::needless_range_loop, clippy::wrong_self_convention)]
//! Finite semigroups with a distinguished set of idempotents: reduced
//! E-Fountain analysis, ample identities, the associated category, the
//! change of basis between the semigroup algebra and the category algebra,
//! and the Catalan monoid.
//!
//! Products follow `fg = f∘g`: in a transformation product the right factor
//! acts first.

pub mod algebra;
pub mod catalan;
pub mod category;
pub mod corpus;
pub mod error;
pub mod fountain;
pub mod io;
pub mod orders;
pub mod relation;
pub mod report;
pub mod ring;
pub mod semigroup;
pub mod verdict;

pub use algebra::{AlgebraElement, Basis, ChangeOfBasis, IncidenceAlgebraElement, IsomorphismReport, Poset};
pub use catalan::{generate_catalan, CatalanMonoid, Subset};
pub use category::{build_category, FiniteCategory};
pub use corpus::{CorpusEntry, Property};
pub use error::{Error, Result, Side};
pub use fountain::{analyze_reduced_e_fountain, analyze_with_all_idempotents, EFountainStructure};
pub use orders::{EmbeddingOrder, EmbeddingSource};
pub use relation::BinaryRelation;
pub use report::{Report, ReportLine, Status};
pub use ring::{Integers, IntegersMod, Rationals, Ring, RingSpec};
pub use semigroup::{FiniteSemigroup, GreenSide, Transformation};
pub use verdict::Verdict;
