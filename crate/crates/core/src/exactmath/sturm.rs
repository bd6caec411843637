//! Sturm sequences and distinct real-root counting on open intervals.

use num_traits::Zero;

use super::poly::MultivariatePolynomial;
use super::rational::{sign, Rational};
use crate::error::{arg, Error, Result};

/// `g, g', -rem(g, g'), ...`, stopping before the first zero remainder.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SturmSequence {
    polys: Vec<MultivariatePolynomial>,
    // Dense copies used for evaluation, lowest degree first.
    dense: Vec<Vec<Rational>>,
}

fn trim(mut c: Vec<Rational>) -> Vec<Rational> {
    while c.last().is_some_and(|x| x.is_zero()) {
        c.pop();
    }
    c
}

/// Remainder of exact division `a / b` (dense, lowest degree first). `b` must be nonzero.
fn rem(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    let lead = &b[db];
    while !r.is_empty() && r.len() > db {
        let dr = r.len() - 1;
        let q = &r[dr] / lead;
        let shift = dr - db;
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] -= &q * bc;
        }
        r = trim(r);
    }
    r
}

fn eval_dense(c: &[Rational], x: &Rational) -> Rational {
    c.iter().rev().fold(Rational::zero(), |acc, a| acc * x + a)
}

impl SturmSequence {
    pub fn new(g: &MultivariatePolynomial) -> Result<Self> {
        let coeffs = g.univariate_coeffs().ok_or_else(|| {
            Error::Argument("Sturm sequence needs a univariate polynomial".into())
        })?;
        if coeffs.is_empty() {
            return arg("Sturm sequence of the zero polynomial");
        }
        let deriv: Vec<Rational> = trim(
            coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(i.into()))
                .collect(),
        );
        let mut dense = vec![coeffs];
        if !deriv.is_empty() {
            dense.push(deriv);
            loop {
                let n = dense.len();
                let r = rem(&dense[n - 2], &dense[n - 1]);
                if r.is_empty() {
                    break;
                }
                dense.push(r.into_iter().map(|c| -c).collect());
            }
        }
        let polys = dense
            .iter()
            .map(|c| MultivariatePolynomial::univariate(c))
            .collect();
        Ok(Self { polys, dense })
    }

    pub fn polys(&self) -> &[MultivariatePolynomial] {
        &self.polys
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    /// Signs of every member at `x`.
    pub fn signs_at(&self, x: &Rational) -> Vec<i8> {
        self.dense.iter().map(|c| sign(&eval_dense(c, x))).collect()
    }

    /// Number of sign changes at `x`, zeros skipped.
    pub fn sign_changes_at(&self, x: &Rational) -> usize {
        let mut last = 0i8;
        let mut changes = 0;
        for s in self.signs_at(x) {
            if s == 0 {
                continue;
            }
            if last != 0 && s != last {
                changes += 1;
            }
            last = s;
        }
        changes
    }
}

pub fn sturm_sequence(g: &MultivariatePolynomial) -> Result<SturmSequence> {
    SturmSequence::new(g)
}

/// Distinct real roots of `g` in the open interval `(a, b)`.
///
/// Endpoints that are roots are reported as a precondition error; callers
/// move them inward themselves.
pub fn count_real_roots(g: &MultivariatePolynomial, a: &Rational, b: &Rational) -> Result<usize> {
    if a >= b {
        return arg(format!("empty interval ({a}, {b})"));
    }
    let seq = SturmSequence::new(g)?;
    if eval_dense(&seq.dense[0], a).is_zero() {
        return Err(Error::Precondition(format!("g({a}) = 0")));
    }
    if eval_dense(&seq.dense[0], b).is_zero() {
        return Err(Error::Precondition(format!("g({b}) = 0")));
    }
    let sa = seq.sign_changes_at(a);
    let sb = seq.sign_changes_at(b);
    Ok(sa - sb)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rational::int;

    fn uni(c: &[i64]) -> MultivariatePolynomial {
        MultivariatePolynomial::univariate(&c.iter().map(|&v| int(v)).collect::<Vec<_>>())
    }

    #[test]
    fn sequence_examples() {
        assert_eq!(
            sturm_sequence(&uni(&[-1, 0, 1])).unwrap().polys(),
            &[uni(&[-1, 0, 1]), uni(&[0, 2]), uni(&[1])]
        );
        assert_eq!(
            sturm_sequence(&uni(&[1, -2, 1])).unwrap().polys(),
            &[uni(&[1, -2, 1]), uni(&[-2, 2])]
        );
        assert_eq!(
            sturm_sequence(&uni(&[0, 1])).unwrap().polys(),
            &[uni(&[0, 1]), uni(&[1])]
        );
        assert_eq!(sturm_sequence(&uni(&[5])).unwrap().len(), 1);
        assert!(sturm_sequence(&uni(&[])).is_err());
        assert!(sturm_sequence(&MultivariatePolynomial::var(2, 0)).is_err());
    }

    #[test]
    fn root_count_examples() {
        assert_eq!(
            count_real_roots(&uni(&[-1, 0, 1]), &int(-2), &int(2)).unwrap(),
            2
        );
        assert_eq!(
            count_real_roots(&uni(&[1, 0, 1]), &int(-10), &int(10)).unwrap(),
            0
        );
        assert_eq!(
            count_real_roots(&uni(&[1, -2, 1]), &int(0), &int(2)).unwrap(),
            1
        );
        let s = sturm_sequence(&uni(&[1, -2, 1])).unwrap();
        assert_eq!(s.sign_changes_at(&int(0)), 1);
        assert_eq!(s.sign_changes_at(&int(2)), 0);
    }

    #[test]
    fn root_count_errors() {
        assert!(matches!(
            count_real_roots(&uni(&[-1, 0, 1]), &int(1), &int(2)),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            count_real_roots(&uni(&[-1, 0, 1]), &int(2), &int(2)),
            Err(Error::Argument(_))
        ));
    }
}
