//! Exact verification toolkit for the Erdős–Ko–Rado property of subgraph
//! families of a perfect matching.
//!
//! Fix a perfect matching on `2n` vertices and consider the family of
//! vertex subsets spanning exactly `p` of its edges and `s` isolated
//! vertices. For `n >= 2p+s` the largest intersecting subfamily is
//! exactly a star; below that threshold the whole family intersects
//! pairwise. This crate checks both statements instance by instance with
//! an exact branch-and-bound solver, and independently re-derives the
//! star bound through the cycle-method machinery: quasi-intervals on a
//! double cycle, proper mappings, and a raw double count of
//! member/mapping incidences.
//!
//! * [`family`] — the matching, its subset families, stars, and the
//!   intersecting predicate.
//! * [`cycle`] — the double cycle, proper mappings, quasi-intervals, and
//!   every counting identity.
//! * [`search`] — exact maximum-clique search over intersection graphs
//!   plus the exhaustive oracle it is validated against.

pub mod cycle;
pub mod family;
pub mod search;

mod bits;
mod error;

pub use error::Error;
