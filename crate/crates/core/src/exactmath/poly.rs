//! Sparse multivariate polynomials with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::Rational;
use crate::error::{arg, Result};

/// Exponent vector, one entry per variable.
pub type Monomial = Vec<u32>;

/// A polynomial in `num_vars` variables `x_0 .. x_{num_vars-1}`.
///
/// Terms are kept in a `BTreeMap` keyed by exponent vector; zero coefficients
/// are never stored, so the zero polynomial has no terms.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultivariatePolynomial {
    num_vars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl MultivariatePolynomial {
    pub fn zero(num_vars: usize) -> Self {
        Self {
            num_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(num_vars: usize, c: Rational) -> Self {
        let mut p = Self::zero(num_vars);
        p.add_term(vec![0; num_vars], c);
        p
    }

    pub fn one(num_vars: usize) -> Self {
        Self::constant(num_vars, Rational::one())
    }

    /// The variable `x_index`.
    pub fn var(num_vars: usize, index: usize) -> Self {
        assert!(
            index < num_vars,
            "variable {index} out of range for {num_vars} variables"
        );
        let mut e = vec![0; num_vars];
        e[index] = 1;
        let mut p = Self::zero(num_vars);
        p.add_term(e, Rational::one());
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, summing
    /// repeated monomials and dropping zeros.
    pub fn from_terms(
        num_vars: usize,
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> Result<Self> {
        let mut p = Self::zero(num_vars);
        for (e, c) in terms {
            if e.len() != num_vars {
                return arg(format!(
                    "exponent vector of length {} for {num_vars} variables",
                    e.len()
                ));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    /// Dense univariate constructor, `coeffs[i]` multiplying `x^i`.
    pub fn univariate(coeffs: &[Rational]) -> Self {
        let mut p = Self::zero(1);
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(vec![i as u32], c.clone());
        }
        p
    }

    fn add_term(&mut self, e: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Constant value if the polynomial has no non-constant terms.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Maximum total degree; the zero polynomial has degree 0.
    pub fn degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|e| e[var]).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.num_vars);
        }
        Self {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut result = Self::one(self.num_vars);
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Exact value at `point`.
    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.num_vars {
            return arg(format!(
                "point has {} coordinates, polynomial has {} variables",
                point.len(),
                self.num_vars
            ));
        }
        Ok(self.eval_unchecked(point))
    }

    pub(crate) fn eval_unchecked(&self, point: &[Rational]) -> Rational {
        // Power tables per variable avoid recomputing x^e for every term.
        let mut powers: Vec<Vec<Rational>> = Vec::with_capacity(self.num_vars);
        for (v, x) in point.iter().enumerate() {
            let d = self.degree_in(v) as usize;
            let mut row = Vec::with_capacity(d + 1);
            row.push(Rational::one());
            for i in 1..=d {
                let next = &row[i - 1] * x;
                row.push(next);
            }
            powers.push(row);
        }
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (v, &k) in e.iter().enumerate() {
                if k > 0 {
                    t *= &powers[v][k as usize];
                }
            }
            acc += t;
        }
        acc
    }

    /// Sign of the value at `point`, in `{-1, 0, 1}`.
    pub fn sign_at(&self, point: &[Rational]) -> Result<i8> {
        if point.len() != self.num_vars {
            return arg(format!(
                "point has {} coordinates, polynomial has {} variables",
                point.len(),
                self.num_vars
            ));
        }
        Ok(self.sign_unchecked(point))
    }

    /// Clears every denominator and sums in integers: with `x_v = n_v / d_v`
    /// and `m_v` the degree in `x_v`, `L * prod d_v^m_v * p(x)` is an integer
    /// with the sign of `p(x)`.
    pub(crate) fn sign_unchecked(&self, point: &[Rational]) -> i8 {
        let mut l = BigInt::one();
        for c in self.terms.values() {
            l = l.lcm(c.denom());
        }
        let tables: Vec<(Vec<BigInt>, Vec<BigInt>)> = point
            .iter()
            .enumerate()
            .map(|(v, x)| {
                let m = self.degree_in(v) as usize;
                let mut num = vec![BigInt::one()];
                let mut den = vec![BigInt::one()];
                for i in 1..=m {
                    num.push(&num[i - 1] * x.numer());
                    den.push(&den[i - 1] * x.denom());
                }
                (num, den)
            })
            .collect();
        let mut acc = BigInt::zero();
        for (e, c) in &self.terms {
            let mut t = c.numer() * (&l / c.denom());
            for (v, &k) in e.iter().enumerate() {
                let (num, den) = &tables[v];
                let m = num.len() - 1;
                if k > 0 {
                    t *= &num[k as usize];
                }
                if (k as usize) < m {
                    t *= &den[m - k as usize];
                }
            }
            acc += t;
        }
        if acc.is_positive() {
            1
        } else if acc.is_negative() {
            -1
        } else {
            0
        }
    }

    /// Substitutes fixed values for some variables. The remaining variables
    /// keep their relative order and are re-indexed from 0.
    pub fn restrict(&self, fixed: &BTreeMap<usize, Rational>) -> Result<Self> {
        if let Some((&v, _)) = fixed.iter().find(|(&v, _)| v >= self.num_vars) {
            return arg(format!(
                "variable index {v} out of range for {} variables",
                self.num_vars
            ));
        }
        let free: Vec<usize> = (0..self.num_vars)
            .filter(|v| !fixed.contains_key(v))
            .collect();
        let mut out = Self::zero(free.len());
        let mut cache: BTreeMap<(usize, u32), Rational> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut coeff = c.clone();
            for (&v, value) in fixed {
                let k = e[v];
                if k > 0 {
                    let p = cache
                        .entry((v, k))
                        .or_insert_with(|| pow_rational(value, k));
                    coeff *= &*p;
                }
            }
            out.add_term(free.iter().map(|&v| e[v]).collect(), coeff);
        }
        Ok(out)
    }

    /// Re-embeds into `new_num_vars` variables, sending variable `i` to `map[i]`.
    pub fn remap(&self, new_num_vars: usize, map: &[usize]) -> Result<Self> {
        if map.len() != self.num_vars || map.iter().any(|&m| m >= new_num_vars) {
            return arg("invalid variable map");
        }
        let mut out = Self::zero(new_num_vars);
        for (e, c) in &self.terms {
            let mut ne = vec![0; new_num_vars];
            for (v, &k) in e.iter().enumerate() {
                ne[map[v]] += k;
            }
            out.add_term(ne, c.clone());
        }
        Ok(out)
    }

    /// Replaces each variable `x_i` by `images[i]`; all images share one variable count.
    pub fn compose(&self, images: &[MultivariatePolynomial]) -> Result<Self> {
        if images.len() != self.num_vars {
            return arg("compose needs one image per variable");
        }
        let target = images.first().map(|p| p.num_vars).unwrap_or(0);
        if images.iter().any(|p| p.num_vars != target) {
            return arg("compose images disagree on variable count");
        }
        let mut cache: BTreeMap<(usize, u32), MultivariatePolynomial> = BTreeMap::new();
        let mut out = Self::zero(target);
        for (e, c) in &self.terms {
            let mut t = Self::constant(target, c.clone());
            for (v, &k) in e.iter().enumerate() {
                if k > 0 {
                    let p = cache.entry((v, k)).or_insert_with(|| images[v].pow(k));
                    t = &t * &*p;
                }
            }
            out = &out + &t;
        }
        Ok(out)
    }

    pub fn derivative(&self, var: usize) -> Self {
        let mut out = Self::zero(self.num_vars);
        for (e, c) in &self.terms {
            if e[var] > 0 {
                let mut ne = e.clone();
                ne[var] -= 1;
                out.add_term(ne, c * Rational::from_integer(e[var].into()));
            }
        }
        out
    }

    /// Dense coefficients of a univariate polynomial (`None` if `num_vars != 1`).
    /// The zero polynomial yields an empty vector.
    pub fn univariate_coeffs(&self) -> Option<Vec<Rational>> {
        if self.num_vars != 1 {
            return None;
        }
        if self.is_zero() {
            return Some(Vec::new());
        }
        let mut out = vec![Rational::zero(); self.degree() as usize + 1];
        for (e, c) in &self.terms {
            out[e[0] as usize] = c.clone();
        }
        Some(out)
    }
}

pub(crate) fn pow_rational(x: &Rational, k: u32) -> Rational {
    num_traits::pow(x.clone(), k as usize)
}

impl fmt::Debug for MultivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for MultivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            for (v, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => write!(f, "*x{v}")?,
                    _ => write!(f, "*x{v}^{k}")?,
                }
            }
        }
        Ok(())
    }
}

fn check_same(a: &MultivariatePolynomial, b: &MultivariatePolynomial) {
    assert_eq!(
        a.num_vars, b.num_vars,
        "polynomials over different variable counts"
    );
}

impl Add for &MultivariatePolynomial {
    type Output = MultivariatePolynomial;
    fn add(self, rhs: Self) -> MultivariatePolynomial {
        check_same(self, rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultivariatePolynomial {
    type Output = MultivariatePolynomial;
    fn sub(self, rhs: Self) -> MultivariatePolynomial {
        check_same(self, rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &MultivariatePolynomial {
    type Output = MultivariatePolynomial;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: Self) -> MultivariatePolynomial {
        check_same(self, rhs);
        let mut out = MultivariatePolynomial::zero(self.num_vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Monomial = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl Neg for &MultivariatePolynomial {
    type Output = MultivariatePolynomial;
    fn neg(self) -> MultivariatePolynomial {
        self.scale(&-Rational::one())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for MultivariatePolynomial {
            type Output = MultivariatePolynomial;
            fn $m(self, rhs: Self) -> MultivariatePolynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for MultivariatePolynomial {
    type Output = MultivariatePolynomial;
    fn neg(self) -> MultivariatePolynomial {
        -&self
    }
}
