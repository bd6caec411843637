//! Exact semi-algebraic Ramsey toolkit.
//!
//! * [`exactmath`]: rationals, multivariate polynomials, Sturm root counting.
//! * [`relation`]: k-ary semi-algebraic relations on ordered point sets.
//! * [`constructions`]: lower-bound instances (base case, algebraic
//!   stepping-up, one-dimensional 4-ary construction, Frankl–Wilson graph).
//! * [`solvers`]: homogeneous-subset search and certification, the greedy
//!   Erdős–Rado extraction, monotone subsequences, transitive Ramsey numbers,
//!   Spencer's deletion method, freeness predicates.
//! * [`geometry`]: orientation and one-sided hyperplane relations.
//! * [`io`]: JSON file formats.

pub mod combinatorics;
pub mod constructions;
pub mod error;
pub mod exactmath;
pub mod geometry;
pub mod io;
pub mod relation;
pub mod rng;
pub mod solvers;

pub use error::{Error, Result};
pub use exactmath::{MultivariatePolynomial, Rational};
pub use relation::{eval_membership, Formula, OrderedPointSet, SemiAlgebraicRelation};
