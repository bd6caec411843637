//! Semi-algebraic k-ary relations on ordered point sets.
//!
//! A relation of arity `k` on points of `R^d` is a list of polynomials in
//! `k * d` variables plus a Boolean formula over sign conditions on them.
//! Variables are blocked slot-major: slot 0 owns variables `0..d`, slot 1
//! owns `d..2d`, and so on, following the order of the tuple.

mod formula;

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Pow, Zero};

pub use formula::{Atom, Comparison, Formula};

use crate::error::{arg, Result};
use crate::exactmath::{MultivariatePolynomial, Rational};

/// Ordered sequence of exact points of a common dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedPointSet {
    dim: usize,
    points: Vec<Vec<Rational>>,
}

impl OrderedPointSet {
    pub fn new(dim: usize, points: Vec<Vec<Rational>>) -> Result<Self> {
        if let Some((i, p)) = points.iter().enumerate().find(|(_, p)| p.len() != dim) {
            return arg(format!(
                "point {i} has {} coordinates, expected {dim}",
                p.len()
            ));
        }
        Ok(Self { dim, points })
    }

    /// One-dimensional point set from scalars.
    pub fn from_scalars(values: impl IntoIterator<Item = Rational>) -> Self {
        Self {
            dim: 1,
            points: values.into_iter().map(|v| vec![v]).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Zero-based access.
    pub fn point(&self, i: usize) -> &[Rational] {
        &self.points[i]
    }

    pub fn points(&self) -> &[Vec<Rational>] {
        &self.points
    }

    pub fn into_points(self) -> Vec<Vec<Rational>> {
        self.points
    }

    /// The sub-sequence at the given (zero-based) indices, in the given order.
    pub fn select(&self, indices: &[usize]) -> Self {
        Self {
            dim: self.dim,
            points: indices.iter().map(|&i| self.points[i].clone()).collect(),
        }
    }
}

/// A k-ary semi-algebraic relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemiAlgebraicRelation {
    arity: usize,
    point_dim: usize,
    polys: Vec<MultivariatePolynomial>,
    formula: Formula,
}

impl SemiAlgebraicRelation {
    pub fn new(
        arity: usize,
        point_dim: usize,
        polys: Vec<MultivariatePolynomial>,
        formula: Formula,
    ) -> Result<Self> {
        if arity == 0 {
            return arg("relation arity must be positive");
        }
        let nv = arity * point_dim;
        if let Some((i, p)) = polys.iter().enumerate().find(|(_, p)| p.num_vars() != nv) {
            return arg(format!(
                "polynomial {i} has {} variables, expected {nv}",
                p.num_vars()
            ));
        }
        if let Some(m) = formula.max_poly_index() {
            if m >= polys.len() {
                return arg(format!(
                    "formula references polynomial {m} of {}",
                    polys.len()
                ));
            }
        }
        Ok(Self {
            arity,
            point_dim,
            polys,
            formula,
        })
    }

    /// The relation that holds for no tuple.
    pub fn empty(arity: usize, point_dim: usize) -> Self {
        Self {
            arity,
            point_dim,
            polys: Vec::new(),
            formula: Formula::never(),
        }
    }

    /// The relation that holds for every tuple.
    pub fn complete(arity: usize, point_dim: usize) -> Self {
        Self {
            arity,
            point_dim,
            polys: Vec::new(),
            formula: Formula::always(),
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn point_dim(&self) -> usize {
        self.point_dim
    }

    pub fn num_vars(&self) -> usize {
        self.arity * self.point_dim
    }

    pub fn polys(&self) -> &[MultivariatePolynomial] {
        &self.polys
    }

    pub fn formula(&self) -> &Formula {
        &self.formula
    }

    pub fn max_degree(&self) -> u32 {
        self.polys.iter().map(|p| p.degree()).max().unwrap_or(0)
    }

    /// Description complexity `max(k*d, #polys, max degree)`. Formula size is
    /// tracked separately by [`Formula::size`].
    pub fn complexity(&self) -> usize {
        self.num_vars()
            .max(self.polys.len())
            .max(self.max_degree() as usize)
    }

    /// Distinct atoms of the formula in first-occurrence order.
    pub fn atoms(&self) -> Vec<Atom> {
        let mut all = Vec::new();
        self.formula.atoms(&mut all);
        let mut seen = HashSet::new();
        all.retain(|a| seen.insert(*a));
        all
    }

    /// Membership of a concatenated `k*d` coordinate vector.
    pub fn evaluate(&self, coords: &[Rational]) -> Result<bool> {
        if coords.len() != self.num_vars() {
            return arg(format!(
                "expected {} coordinates, got {}",
                self.num_vars(),
                coords.len()
            ));
        }
        Ok(self.evaluate_unchecked(coords))
    }

    pub(crate) fn evaluate_unchecked(&self, coords: &[Rational]) -> bool {
        let mut signs: Vec<Option<i8>> = vec![None; self.polys.len()];
        self.formula.eval(&mut |a: &Atom| {
            let s = *signs[a.poly].get_or_insert_with(|| self.polys[a.poly].sign_unchecked(coords));
            a.cmp.holds(s)
        })
    }

    /// Membership of a tuple given as one point per slot.
    pub fn holds(&self, slots: &[&[Rational]]) -> Result<bool> {
        if slots.len() != self.arity {
            return arg(format!(
                "expected {} points, got {}",
                self.arity,
                slots.len()
            ));
        }
        if slots.iter().any(|p| p.len() != self.point_dim) {
            return arg("point dimension does not match relation");
        }
        let coords: Vec<Rational> = slots.iter().flat_map(|p| p.iter().cloned()).collect();
        Ok(self.evaluate_unchecked(&coords))
    }

    /// Fixes the points of some slots; the result has arity `k - fixed.len()`
    /// over the remaining slots in their original order.
    pub fn restrict_slots(&self, fixed: &BTreeMap<usize, &[Rational]>) -> Result<Self> {
        let d = self.point_dim;
        let mut vars = BTreeMap::new();
        for (&slot, p) in fixed {
            if slot >= self.arity || p.len() != d {
                return arg(format!("cannot fix slot {slot}"));
            }
            for (j, x) in p.iter().enumerate() {
                vars.insert(slot * d + j, x.clone());
            }
        }
        let arity = self.arity - fixed.len();
        if arity == 0 {
            return arg("cannot fix every slot");
        }
        let polys = self
            .polys
            .iter()
            .map(|p| p.restrict(&vars))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            arity,
            point_dim: d,
            polys,
            formula: self.formula.clone(),
        })
    }

    /// The (k-1)-ary relation `x -> E(x, last)`.
    pub fn restrict_last_slot(&self, last: &[Rational]) -> Result<Self> {
        self.restrict_slots(&BTreeMap::from([(self.arity - 1, last)]))
    }

    /// Truth value of every distinct atom at a concatenated coordinate vector.
    pub fn atom_truths(&self, coords: &[Rational]) -> Result<Vec<bool>> {
        if coords.len() != self.num_vars() {
            return arg("coordinate count does not match relation");
        }
        let signs: Vec<i8> = self
            .polys
            .iter()
            .map(|p| p.sign_unchecked(coords))
            .collect();
        Ok(self
            .atoms()
            .iter()
            .map(|a| a.cmp.holds(signs[a.poly]))
            .collect())
    }
}

/// Membership of the tuple of `P` at strictly increasing zero-based `indices`.
pub fn eval_membership(
    relation: &SemiAlgebraicRelation,
    points: &OrderedPointSet,
    indices: &[usize],
) -> Result<bool> {
    if points.dim() != relation.point_dim() {
        return arg(format!(
            "point set dimension {} vs relation dimension {}",
            points.dim(),
            relation.point_dim()
        ));
    }
    if indices.len() != relation.arity() {
        return arg(format!(
            "expected {} indices, got {}",
            relation.arity(),
            indices.len()
        ));
    }
    if indices.windows(2).any(|w| w[0] >= w[1]) {
        return arg("indices must be strictly increasing");
    }
    if indices.last().is_some_and(|&i| i >= points.len()) {
        return arg("index out of range");
    }
    let slots: Vec<&[Rational]> = indices.iter().map(|&i| points.point(i)).collect();
    relation.holds(&slots)
}

/// Sign of each polynomial of `family` at `point`, entries in `{-1, 0, 1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignVector(pub Vec<i8>);

pub fn sign_vector(family: &[MultivariatePolynomial], point: &[Rational]) -> Result<SignVector> {
    family
        .iter()
        .map(|p| p.sign_at(point))
        .collect::<Result<Vec<_>>>()
        .map(SignVector)
}

/// `ceil(50 D r / d)^d`, the Milnor–Thom count of sign patterns of `r`
/// polynomials of degree at most `D` in `d` variables (valid for `r >= d >= 2`).
pub fn milnor_thom_bound(max_degree: u64, family_size: u64, num_vars: u64) -> Result<BigUint> {
    if num_vars < 2 || family_size < num_vars {
        return arg(format!(
            "need r >= d >= 2, got r = {family_size}, d = {num_vars}"
        ));
    }
    if max_degree < 1 {
        return arg("degree bound must be at least 1");
    }
    let num = BigUint::from(50u32) * max_degree * family_size;
    let (q, r) = num.div_rem(&BigUint::from(num_vars));
    let base = if r.is_zero() { q } else { q + BigUint::one() };
    Ok(Pow::pow(base, num_vars as u32))
}

/// Number of distinct sign vectors realized by `points`.
pub fn count_distinct_sign_vectors(
    family: &[MultivariatePolynomial],
    points: &[Vec<Rational>],
) -> Result<usize> {
    let mut seen = HashSet::new();
    for p in points {
        seen.insert(sign_vector(family, p)?);
    }
    Ok(seen.len())
}
