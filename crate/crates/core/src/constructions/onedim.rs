//! The 4-ary construction on the line: `2^(2^n)` integers whose base-`b`
//! digits encode subsets of `{0, ..., 2^n - 1}`, with the stepping-up
//! conditions expressed through consecutive differences.

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};

use super::{ConstructionInstance, Provenance, ResourceCaps};
use crate::error::{Error, Result};
use crate::exactmath::rational::ratio;
use crate::exactmath::{MultivariatePolynomial, Rational};
use crate::relation::{Formula, OrderedPointSet, SemiAlgebraicRelation};

/// `x1 < x2 < x3 < x4` and one of
/// * `C1`: `x2 - x1 > x3 - x2` and `x4 - x3 > x3 - x2`,
/// * `C2`: `x2 - x1 < x3 - x2 < x4 - x3` and `(x2 - x1)(x4 - x3) >= (x3 - x2)^2`,
/// * `C3`: `x2 - x1 > x3 - x2 > x4 - x3` and `(x2 - x1)(x4 - x3) >= (x3 - x2)^2`.
pub fn one_dim_k4_relation() -> SemiAlgebraicRelation {
    let x = |i| MultivariatePolynomial::var(4, i);
    let d1 = &x(1) - &x(0);
    let d2 = &x(2) - &x(1);
    let d3 = &x(3) - &x(2);
    let polys = vec![
        d1.clone(),
        d2.clone(),
        d3.clone(),
        &d1 - &d2,
        &d3 - &d2,
        &(&d1 * &d3) - &d2.pow(2),
    ];
    let c1 = Formula::and(vec![Formula::gt(3), Formula::gt(4)]);
    let c2 = Formula::and(vec![
        Formula::not(Formula::ge(3)),
        Formula::gt(4),
        Formula::ge(5),
    ]);
    let c3 = Formula::and(vec![
        Formula::gt(3),
        Formula::not(Formula::ge(4)),
        Formula::ge(5),
    ]);
    SemiAlgebraicRelation::new(
        4,
        1,
        polys,
        Formula::and(vec![
            Formula::gt(0),
            Formula::gt(1),
            Formula::gt(2),
            Formula::or(vec![c1, c2, c3]),
        ]),
    )
    .expect("one-dimensional relation is well formed")
}

fn digits_value(mask: u64, digits: u32, b: &BigInt) -> BigInt {
    let mut v = BigInt::one();
    let mut pw = BigInt::one();
    for i in 0..digits {
        if mask >> i & 1 == 1 {
            v += &pw;
        }
        pw *= b;
    }
    v
}

/// Checks `b^(10 i - 1) < (p - q)^10 < b^(10 i + 1)` for every pair `p > q`
/// of digit-`{0,1}` numbers with `digits` digits, where `i` is the top digit
/// at which they differ. The differences with top digit `i` range over
/// `b^i ± (b^(i-1) + ... + 1)`, and both extremes are realized by actual
/// pairs, so checking the extremes is exact. On failure returns the witness
/// pair as zero-based point indices.
pub fn verify_delta_closeness(digits: u32, b: u64) -> Result<Option<(u64, u64)>> {
    if digits == 0 || digits > 63 {
        return Err(Error::Argument("digit count out of range".into()));
    }
    let bb = BigInt::from(b);
    for i in 0..digits {
        let low_mask = (1u64 << i) - 1;
        let top = 1u64 << i;
        // (larger, smaller) index pairs giving the smallest and largest difference
        for (p, q) in [(top, low_mask), (top | low_mask, 0)] {
            let diff = digits_value(p, digits, &bb) - digits_value(q, digits, &bb);
            let d10 = Pow::pow(&diff, 10u32);
            let lo = Pow::pow(&bb, 10 * i);
            let hi = Pow::pow(&bb, 10 * i + 1);
            if !(&d10 * &bb > lo && d10 < hi) {
                return Ok(Some((p, q)));
            }
        }
    }
    Ok(None)
}

/// Points `1 + sum_i p(i) b^i` over all `{0,1}` digit strings of length `2^n`,
/// in increasing order, with [`one_dim_k4_relation`].
pub fn one_dim_k4_construction(
    n: u32,
    base_b: u64,
    caps: &ResourceCaps,
) -> Result<ConstructionInstance> {
    if n == 0 {
        return Err(Error::Argument("n must be at least 1".into()));
    }
    if base_b < 10 {
        return Err(Error::Argument("base must be at least 10".into()));
    }
    if n > 5 {
        return Err(Error::Resource(format!("2^(2^{n}) points")));
    }
    let digits = 1u32 << n;
    let count = caps.check_points(1u128 << digits)?;
    let bits = digits as u64 * (64 - base_b.leading_zeros()) as u64;
    if bits > caps.max_bits {
        return Err(Error::Resource(format!(
            "coordinates need about {bits} bits"
        )));
    }
    if let Some((p, q)) = verify_delta_closeness(digits, base_b)? {
        return Err(Error::Precondition(format!(
            "base {base_b} too small: points {} and {} violate the digit-closeness bound",
            p + 1,
            q + 1
        )));
    }
    let bb = BigInt::from(base_b);
    let points = OrderedPointSet::from_scalars(
        (0..count as u64).map(|mask| Rational::from_integer(digits_value(mask, digits, &bb))),
    );
    debug_assert!(points.points().windows(2).all(|w| w[0][0] < w[1][0]));
    debug_assert!(!points.points().is_empty() && !points.point(0)[0].is_zero());
    ConstructionInstance::new(
        points,
        one_dim_k4_relation(),
        Some(ratio(1, 10)),
        Provenance::OneDimK4 { n, base_b },
    )
}
