//! Exact scalar and polynomial arithmetic.

pub mod poly;
pub mod rational;
pub mod sturm;

pub use poly::{Monomial, MultivariatePolynomial};
pub use rational::Rational;
pub use sturm::{count_real_roots, sturm_sequence, SturmSequence};

/// Exact evaluation of `p` at `point`.
pub fn poly_eval(p: &MultivariatePolynomial, point: &[Rational]) -> crate::Result<Rational> {
    p.eval(point)
}

/// Substitutes `fixed` values and re-indexes the remaining variables.
pub fn poly_restrict(
    p: &MultivariatePolynomial,
    fixed: &std::collections::BTreeMap<usize, Rational>,
) -> crate::Result<MultivariatePolynomial> {
    p.restrict(fixed)
}
