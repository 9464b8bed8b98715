//! Noncommutative Groebner bases over free K-categories (path algebras of
//! quivers), via Buchberger completion, together with a tagged-polynomial
//! extension that computes right congruences of the presented category —
//! equivalently, left Kan extensions of K-category actions along a functor.
//!
//! The crate is organised bottom-up:
//!
//! * [`quiver`] — directed multigraphs, composable paths, admissible orders
//! * [`scalar`] — exact rational coefficients
//! * [`poly`] — K-linear combinations of parallel paths
//! * [`rewrite`] — the reduction relation, normal forms, congruence tests
//! * [`completion`] — matches, S-polynomials, Buchberger completion
//! * [`tagged`] — tagged terms `A|p` and tag-homogeneous polynomials
//! * [`kan`] — Kan presentations, mixed completion, induced right actions
//! * [`nf`] — enumeration of irreducible terms, hom-set tables, finiteness
//! * [`textio`] — the presentation file format and canonical text syntax

pub mod completion;
pub mod kan;
pub mod nf;
pub mod order;
pub mod poly;
pub mod quiver;
pub mod rewrite;
pub mod scalar;
pub mod tagged;
pub mod textio;

pub use completion::{
    buchberger, find_matches, is_groebner, s_polynomial, CompletionOutcome, CompletionReport,
    IncompleteReason, Limits, Match, MatchKind,
};
pub use kan::{
    build_system, complete_mixed, is_groebner_mixed, kan_extension, KanError,
    KanExtensionResult, KanPresentation, MixedReport, MixedSystem,
};
pub use nf::{enumerate_paths, finiteness, hom_table, irreducible_paths, irreducible_tagged, EnumError, Finiteness, HomSetEntry, HomSetTable};
pub use order::{OrderError, OrderKind, PathOrder};
pub use poly::{AlgebraError, PathPolynomial};
pub use quiver::{Arrow, ArrowId, ObjectId, Path, Quiver, QuiverError};
pub use rewrite::{Rule, RewriteError, RewriteSystem, SystemStatus};
pub use scalar::Scalar;
pub use tagged::{TagId, TaggedPolynomial, TaggedRule, TaggedTerm};
