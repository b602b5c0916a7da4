//! Exact symbolic machinery for products of odometers.
//!
//! The crate is organized around a single-vertex higher-rank graph monoid
//! presented by commutation tables between letters of different colors.
//! Everything downstream is exact: big-integer word codes, congruence-class
//! ideal calculus, integer certificates for multiplicative independence,
//! and a decidable operator calculus on the integer basis of `ℓ²(Z)`.
//!
//! Module map:
//!
//! * [`kgraph`] — monoid specs, normal forms, degree-indexed integer coding;
//! * [`selfsim`] — the odometer action of `Z`, Zappa–Szép products, axiom checks;
//! * [`ideals`] — constructible right ideals, minimal common extensions,
//!   the right-LCM dichotomy, exhaustive-set tests;
//! * [`independence`] — multiplicative independence with integer certificates;
//! * [`oper`] — exact operator semantics on `ℓ²(Z)` and relation suites;
//! * [`topo`] — the circle-fibered path space over exact rational angles;
//! * [`psystem`] — the monomial calculus of the associated product system;
//! * [`suite`] — the end-to-end verification suite driven by the CLI and the
//!   acceptance tests;
//! * [`oracle`] — independent brute-force reference routes the suite checks
//!   the fast implementations against.

pub mod arith;
pub mod ideals;
pub mod independence;
pub mod kgraph;
pub mod oper;
pub mod oracle;
pub mod psystem;
pub mod report;
pub mod selfsim;
pub mod suite;
pub mod topo;

pub use ideals::ConstructibleIdeal;
pub use independence::{Dependence, DependenceCertificate, SimplicityVerdict};
pub use kgraph::{Degree, KGraphSpec, Letter, Word};
pub use oper::{CanonicalOp, ExactScalar, Generator, L2Model, Model, OpTerm};
pub use report::{CheckItem, CheckReport};
pub use selfsim::{ActionResult, LetterAction, ZsElement};
pub use topo::{Angle, PathPoint};
