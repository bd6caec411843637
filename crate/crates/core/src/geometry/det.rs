//! Fraction-free determinants.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exactmath::Rational;

/// Bareiss elimination on an integer matrix; exact, no fractions.
pub fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Clears denominators row by row (positive multipliers) and returns the
/// integer matrix together with the positive factor by which the determinant
/// was scaled.
pub(crate) fn integerize_rows(rows: &[Vec<Rational>]) -> (Vec<Vec<BigInt>>, BigInt) {
    let mut scale = BigInt::one();
    let m = rows
        .iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            scale *= &l;
            row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect();
    (m, scale)
}

/// Exact determinant of a rational matrix.
pub fn rational_determinant(rows: &[Vec<Rational>]) -> Rational {
    let (m, scale) = integerize_rows(rows);
    Rational::new(bareiss_determinant(m), scale)
}

/// Sign of the determinant of a rational matrix.
pub fn determinant_sign(rows: &[Vec<Rational>]) -> i8 {
    let (m, _) = integerize_rows(rows);
    let d = bareiss_determinant(m);
    if d.is_zero() {
        0
    } else if d.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rational::{int, ratio};

    fn leibniz(m: &[Vec<Rational>]) -> Rational {
        // Independent oracle: permutation expansion.
        let n = m.len();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut total = Rational::zero();
        fn heap(k: usize, perm: &mut Vec<usize>, m: &[Vec<Rational>], total: &mut Rational) {
            if k == 1 {
                let inv = (0..perm.len())
                    .flat_map(|i| (i + 1..perm.len()).map(move |j| (i, j)))
                    .filter(|&(i, j)| perm[i] > perm[j])
                    .count();
                let mut t: Rational = (0..perm.len()).map(|i| m[i][perm[i]].clone()).product();
                if inv % 2 == 1 {
                    t = -t;
                }
                *total += t;
                return;
            }
            for i in 0..k {
                heap(k - 1, perm, m, total);
                if k.is_multiple_of(2) {
                    perm.swap(i, k - 1);
                } else {
                    perm.swap(0, k - 1);
                }
            }
        }
        heap(n, &mut perm, m, &mut total);
        total
    }

    #[test]
    fn matches_permutation_expansion() {
        let m = vec![
            vec![int(2), ratio(1, 3), int(0), int(5)],
            vec![int(0), int(0), ratio(-7, 2), int(1)],
            vec![int(4), int(1), int(1), int(1)],
            vec![ratio(1, 5), int(3), int(2), int(-1)],
        ];
        assert_eq!(rational_determinant(&m), leibniz(&m));
        let singular = vec![vec![int(1), int(2)], vec![int(2), int(4)]];
        assert_eq!(determinant_sign(&singular), 0);
        assert_eq!(
            rational_determinant(&[vec![int(0), int(1)], vec![int(1), int(0)]]),
            int(-1)
        );
    }
}
