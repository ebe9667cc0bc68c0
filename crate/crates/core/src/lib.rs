//! Exact-arithmetic combinatorics of parabolic Bruhat orders and projected
//! Richardson strata.
//!
//! The crate is organized around the pipeline
//!
//! * [`coxeter`]: finite crystallographic Coxeter systems with an exact
//!   root-system action, Bruhat order, covers, and reflections;
//! * [`parabolic`]: quotients `W/W_P`, coset representatives, Demazure
//!   products, and unique lifts;
//! * [`pbruhat`]: the P-Bruhat order, interval equivalence, and the
//!   stratification poset `Q(W, W_P)` with its closure order;
//! * [`reforder`]: Dyer reflection orders with prescribed `W_P` placement and
//!   increasing chains in Bruhat intervals;
//! * [`simpcomplex`]: projected order complexes, facet lifting, lexicographic
//!   shellings, ridge/thinness classification, and ball certificates;
//! * [`polyalg`]: exact multivariate polynomials over `Q` and `F_p`,
//!   monomial orders, Buchberger bases, elimination, slice/cone, and Hilbert
//!   functions;
//! * [`typea`]: type-A flag and Grassmannian geometry, projected Richardson
//!   ideals, Groebner degeneration checks, and finite-field point oracles.
//!
//! Everything is exact: integers for root systems, `BigRational` or a prime
//! field for polynomial coefficients. All public values are immutable after
//! construction and safe to share across threads.

pub mod coxeter;
pub mod error;
pub mod parabolic;
pub mod pbruhat;
// pub mod polyalg;
// pub mod reforder;
// pub mod report;
// pub mod simpcomplex;
pub mod typea;

pub use coxeter::{CoxeterSystem, Element, SystemSpec};
pub use error::Error;
pub use parabolic::ParabolicQuotient;
