//! Verification oracles and generators used by the test suites.
//!
//! The span oracle decides congruence by brute-force linear algebra over
//! bounded-degree products of the *original* relations — independently of
//! the reduction and completion machinery it is used to check. The right
//! quotient oracle computes right-congruence classes of a finite-basis
//! quotient by plain row reduction, independently of the tagged engine.

pub mod fixtures;
pub mod gen;
pub mod rightideal;
pub mod rng;
pub mod span;
pub mod tagged_span;

pub use gen::{random_presentation, RandomPresentation};
pub use rightideal::RightQuotient;
pub use rng::XorShift;
pub use span::BlockSpan;
pub use tagged_span::TaggedBlockSpan;
