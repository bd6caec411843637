//! Algebraic stepping-up: from an ε-increasing, ε-deep k-ary instance on `N`
//! points of `R^d` to a (k+1)-ary instance on `2^N` points of `R^{2d}`.
//!
//! Points of `R^{2d}` are laid out as `(x_1, y_1, ..., x_d, y_d)`; the slope
//! of two such points is the vector of the `d` planar slopes
//! `(y'_i - y_i) / (x'_i - x_i)`.

use num_traits::{One, Signed, Zero};

use super::delta::delta_zero_based;
use super::{verify_eps_increasing, ConstructionInstance, Provenance, ResourceCaps};
use crate::combinatorics::for_each_combination;
use crate::error::{Error, Result};
use crate::exactmath::rational::{largest_dyadic_below, max_abs, ratio};
use crate::exactmath::{MultivariatePolynomial, Rational};
use crate::relation::{Formula, OrderedPointSet, SemiAlgebraicRelation};

// Dyadic radii are searched down to 2^-MAX_DYADIC.
const MAX_DYADIC: u32 = 200;

/// Componentwise slope of two points of `R^{2d}`.
pub fn slope(q1: &[Rational], q2: &[Rational]) -> Result<Vec<Rational>> {
    if q1.len() != q2.len() || !q1.len().is_multiple_of(2) {
        return Err(Error::Argument(
            "slope needs two points of the same even dimension".into(),
        ));
    }
    (0..q1.len() / 2)
        .map(|i| {
            let dx = &q2[2 * i] - &q1[2 * i];
            if dx.is_zero() {
                return Err(Error::Degenerate(format!(
                    "equal x-coordinates in pair {i}"
                )));
            }
            Ok((&q2[2 * i + 1] - &q1[2 * i + 1]) / dx)
        })
        .collect()
}

/// Output of [`step_up_points`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepUpPoints {
    pub points: OrderedPointSet,
    /// Ball radius used at recursion levels `2..=N`, in level order.
    pub radii: Vec<Rational>,
    /// Radius for which the output is increasing and the stepped relation deep.
    pub epsilon: Rational,
}

fn lift(p: &[Rational]) -> Vec<Rational> {
    p.iter()
        .flat_map(|a| [Rational::one(), a.clone()])
        .collect()
}

/// True iff every slope between the max-norm balls of radius `r` around the
/// origin and around `(1, a_1, ..., 1, a_d)` lies within `half_eps` of `a`.
fn cross_slopes_contained(a: &[Rational], r: &Rational, half_eps: &Rational) -> bool {
    let two_r = r * Rational::from_integer(2.into());
    if two_r >= Rational::one() {
        return false;
    }
    // (a + u) / (1 + w) is monotone in u and w on the box, so corners suffice.
    a.iter().all(|ai| {
        [&two_r, &-&two_r].iter().all(|u| {
            [&two_r, &-&two_r].iter().all(|w| {
                let s = (ai + *u) / (Rational::one() + *w);
                (s - ai).abs() <= *half_eps
            })
        })
    })
}

/// Builds the `2^N` points of the stepped-up instance.
pub fn step_up_points(base: &ConstructionInstance, caps: &ResourceCaps) -> Result<StepUpPoints> {
    let eps = base
        .epsilon
        .clone()
        .ok_or_else(|| Error::Precondition("base instance carries no epsilon".into()))?;
    let pts = &base.points;
    let n = pts.len();
    if n == 0 {
        return Err(Error::Argument("empty base point set".into()));
    }
    if n >= 64 {
        return Err(Error::Resource(format!("2^{n} points")));
    }
    caps.check_points(1u128 << n)?;
    if !verify_eps_increasing(pts, &eps) {
        return Err(Error::Precondition(
            "base point set is not epsilon-increasing".into(),
        ));
    }
    let half_eps = &eps * ratio(1, 2);
    if pts.point(0).iter().any(|a| *a <= half_eps) {
        return Err(Error::Precondition(
            "base coordinates must exceed epsilon/2 so slopes stay positive".into(),
        ));
    }

    let mut current: Vec<Vec<Rational>> =
        vec![vec![Rational::zero(); 2 * pts.dim()], lift(pts.point(0))];
    let mut radii = Vec::new();
    for level in 1..n {
        let a = pts.point(level);
        let r = largest_dyadic_below(MAX_DYADIC, |r| cross_slopes_contained(a, r, &half_eps))
            .ok_or_else(|| Error::Resource("no admissible ball radius".into()))?;
        // previous copy has nonnegative coordinates and a nonzero extent
        let extent = max_abs(current.iter().flatten());
        let scale = &r / extent;
        let center = lift(a);
        let mut next = Vec::with_capacity(current.len() * 2);
        for q in &current {
            next.push(q.iter().map(|c| c * &scale).collect::<Vec<_>>());
        }
        for q in &current {
            next.push(
                q.iter()
                    .zip(&center)
                    .map(|(c, o)| c * &scale + o)
                    .collect::<Vec<_>>(),
            );
        }
        let bits: u64 = next
            .iter()
            .flatten()
            .map(|c| c.numer().bits() + c.denom().bits())
            .max()
            .unwrap_or(0);
        if bits > caps.max_bits {
            return Err(Error::Resource(format!(
                "coordinate bit length {bits} exceeds {}",
                caps.max_bits
            )));
        }
        radii.push(r);
        current = next;
    }

    let out = OrderedPointSet::new(2 * pts.dim(), current)?;
    let epsilon = output_epsilon(&out, pts, &eps)?;
    Ok(StepUpPoints {
        points: out,
        radii,
        epsilon,
    })
}

/// Largest dyadic ε₁ such that the output is ε₁-increasing and moving points by
/// ε₁ moves every slope by at most ε/2.
fn output_epsilon(
    out: &OrderedPointSet,
    base: &OrderedPointSet,
    eps: &Rational,
) -> Result<Rational> {
    let gap = out
        .points()
        .windows(2)
        .flat_map(|w| w[0].iter().zip(&w[1]).map(|(a, b)| b - a))
        .min()
        .unwrap_or_else(Rational::one);
    if !gap.is_positive() {
        return Err(Error::Precondition(
            "stepped-up points are not increasing".into(),
        ));
    }
    let max_slope = max_abs(base.points().iter().flatten()) + eps * ratio(1, 2);
    let half_eps = eps * ratio(1, 2);
    let two = Rational::from_integer(2.into());
    largest_dyadic_below(MAX_DYADIC, |e1| {
        let shift = &two * e1;
        shift < gap && &shift * (Rational::one() + &max_slope) / (&gap - &shift) <= half_eps
    })
    .ok_or_else(|| Error::Resource("no admissible output epsilon".into()))
}

/// Verifies that every slope `sigma(q_i, q_j)`, `i < j`, lies in the max-norm
/// ball of radius ε/2 around base point `delta(i, j)`. Returns the first
/// offending pair (zero-based) if any.
pub fn check_slope_observation(
    base: &ConstructionInstance,
    stepped: &OrderedPointSet,
) -> Result<Option<(usize, usize)>> {
    let eps = base
        .epsilon
        .clone()
        .ok_or_else(|| Error::Precondition("base instance carries no epsilon".into()))?;
    let half = eps * ratio(1, 2);
    for i in 0..stepped.len() {
        for j in i + 1..stepped.len() {
            let s = slope(stepped.point(i), stepped.point(j))?;
            let r = delta_zero_based(i, j) as usize;
            let p = base.points.point(r - 1);
            if s.iter().zip(p).any(|(a, b)| (a - b).abs() > half) {
                return Ok(Some((i, j)));
            }
        }
    }
    Ok(None)
}

struct SlopeVars {
    dim: usize,
    slot_dim: usize,
    num_vars: usize,
}

impl SlopeVars {
    fn var(&self, slot: usize, coord: usize) -> MultivariatePolynomial {
        MultivariatePolynomial::var(self.num_vars, slot * self.slot_dim + coord)
    }
    /// Numerator and denominator of coordinate `m` of `sigma(x_s, x_{s+1})`.
    fn slope(&self, s: usize, m: usize) -> (MultivariatePolynomial, MultivariatePolynomial) {
        let num = &self.var(s + 1, 2 * m + 1) - &self.var(s, 2 * m + 1);
        let den = &self.var(s + 1, 2 * m) - &self.var(s, 2 * m);
        (num, den)
    }
}

/// Substitutes slopes `order[j]` into slot `j` of a base polynomial, clearing
/// each denominator with an even power so the sign is preserved wherever all
/// denominators are nonzero.
fn substitute_slopes(
    f: &MultivariatePolynomial,
    order: &[usize],
    sv: &SlopeVars,
) -> MultivariatePolynomial {
    let nv = f.num_vars();
    let fracs: Vec<(MultivariatePolynomial, MultivariatePolynomial)> = (0..nv)
        .map(|v| sv.slope(order[v / sv.dim], v % sv.dim))
        .collect();
    let even: Vec<u32> = (0..nv).map(|v| f.degree_in(v).div_ceil(2) * 2).collect();
    let mut out = MultivariatePolynomial::zero(sv.num_vars);
    for (e, c) in f.terms() {
        let mut t = MultivariatePolynomial::constant(sv.num_vars, c.clone());
        for v in 0..nv {
            let (num, den) = &fracs[v];
            if e[v] > 0 {
                t = &t * &num.pow(e[v]);
            }
            if even[v] > e[v] {
                t = &t * &den.pow(even[v] - e[v]);
            }
        }
        out = &out + &t;
    }
    out
}

/// The stepped-up relation: consecutive slots coordinatewise increasing and
/// one of
/// * `C1`: `sigma_1 > sigma_2 < sigma_3` (coordinatewise),
/// * `C2`: slopes increasing and `(sigma_1, ..., sigma_k)` in the base relation,
/// * `C3`: slopes decreasing and `(sigma_k, ..., sigma_1)` in the base relation.
pub fn step_up_relation(base: &SemiAlgebraicRelation) -> Result<SemiAlgebraicRelation> {
    let k = base.arity();
    let d = base.point_dim();
    if k < 2 {
        return Err(Error::Argument(
            "stepping up needs a base arity of at least 2".into(),
        ));
    }
    let slot_dim = 2 * d;
    let arity = k + 1;
    let sv = SlopeVars {
        dim: d,
        slot_dim,
        num_vars: arity * slot_dim,
    };

    let mut polys = Vec::new();
    let mut increasing = Vec::new();
    for s in 0..k {
        for c in 0..slot_dim {
            increasing.push(Formula::gt(polys.len()));
            polys.push(&sv.var(s + 1, c) - &sv.var(s, c));
        }
    }
    // cmp[s][m] > 0  iff  sigma_s,m > sigma_{s+1},m
    let mut cmp = vec![vec![0usize; d]; k - 1];
    for (s, row) in cmp.iter_mut().enumerate() {
        for (m, slot) in row.iter_mut().enumerate() {
            let (n1, d1) = sv.slope(s, m);
            let (n2, d2) = sv.slope(s + 1, m);
            let g = &(&(&n1 * &d1) * &d2.pow(2)) - &(&(&n2 * &d2) * &d1.pow(2));
            *slot = polys.len();
            polys.push(g);
        }
    }
    let greater = |s: usize| Formula::and(cmp[s].iter().map(|&i| Formula::gt(i)).collect());
    let less = |s: usize| {
        Formula::and(
            cmp[s]
                .iter()
                .map(|&i| Formula::not(Formula::ge(i)))
                .collect(),
        )
    };

    let mut branches = Vec::new();
    if k >= 3 {
        branches.push(Formula::and(vec![greater(0), less(1)]));
    }
    let forward: Vec<usize> = (0..k).collect();
    let backward: Vec<usize> = (0..k).rev().collect();
    for (order, monotone) in [
        (&forward, (0..k - 1).map(less).collect::<Vec<_>>()),
        (&backward, (0..k - 1).map(greater).collect()),
    ] {
        let offset = polys.len();
        for f in base.polys() {
            polys.push(substitute_slopes(f, order, &sv));
        }
        let mut parts = monotone;
        parts.push(base.formula().shift_polys(offset));
        branches.push(Formula::and(parts));
    }
    let mut top = increasing;
    top.push(Formula::or(branches));
    SemiAlgebraicRelation::new(arity, slot_dim, polys, Formula::and(top))
}

/// Membership by the combinatorial stepping-up rule on zero-based indices of
/// the stepped-up point set: monotone delta sequences defer to the base
/// instance, `delta_2` a local minimum is in, everything else is out.
pub fn step_up_membership_rule(base: &ConstructionInstance, tuple: &[usize]) -> Result<bool> {
    let k = base.relation.arity();
    if tuple.len() != k + 1 || tuple.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Argument(format!(
            "need a strictly increasing {}-tuple",
            k + 1
        )));
    }
    let deltas: Vec<usize> = tuple
        .windows(2)
        .map(|w| delta_zero_based(w[0], w[1]) as usize)
        .collect();
    let base_member = |ds: Vec<usize>| -> Result<bool> {
        let idx: Vec<usize> = ds.iter().map(|&r| r - 1).collect();
        crate::relation::eval_membership(&base.relation, &base.points, &idx)
    };
    if deltas.windows(2).all(|w| w[0] < w[1]) {
        return base_member(deltas);
    }
    if deltas.windows(2).all(|w| w[0] > w[1]) {
        return base_member(deltas.into_iter().rev().collect());
    }
    Ok(deltas.len() >= 3 && deltas[0] > deltas[1] && deltas[1] < deltas[2])
}

/// Stepped-up points and relation packaged as an instance whose provenance
/// embeds the base.
pub fn step_up(base: &ConstructionInstance, caps: &ResourceCaps) -> Result<ConstructionInstance> {
    let pts = step_up_points(base, caps)?;
    let relation = step_up_relation(&base.relation)?;
    ConstructionInstance::new(
        pts.points,
        relation,
        Some(pts.epsilon),
        Provenance::StepUp {
            base: Box::new(base.clone()),
            radii: pts.radii,
        },
    )
}

/// Calls `f` with each mismatch between polynomial and combinatorial
/// membership on all increasing (k+1)-tuples.
pub fn for_each_rule_mismatch(
    stepped: &ConstructionInstance,
    base: &ConstructionInstance,
    mut f: impl FnMut(&[usize]),
) -> Result<usize> {
    let arity = stepped.relation.arity();
    let mut checked = 0;
    let mut err = None;
    for_each_combination(stepped.points.len(), arity, |t| {
        checked += 1;
        let poly = crate::relation::eval_membership(&stepped.relation, &stepped.points, t);
        let rule = step_up_membership_rule(base, t);
        match (poly, rule) {
            (Ok(a), Ok(b)) => {
                if a != b {
                    f(t);
                }
                true
            }
            (Err(e), _) | (_, Err(e)) => {
                err = Some(e);
                false
            }
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(checked),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{base_construction, base_relation};
    use crate::exactmath::rational::int;

    fn one_dim(values: &[i64], eps: Rational) -> ConstructionInstance {
        ConstructionInstance::new(
            OrderedPointSet::from_scalars(values.iter().map(|&v| int(v))),
            base_relation(),
            Some(eps),
            Provenance::Custom {
                note: "test".into(),
            },
        )
        .unwrap()
    }

    #[test]
    fn slope_examples() {
        assert_eq!(
            slope(&[int(0), int(0)], &[int(1), int(5)]).unwrap(),
            vec![int(5)]
        );
        let z = vec![int(0); 4];
        assert_eq!(
            slope(&z, &[int(1), int(2), int(1), int(3)]).unwrap(),
            vec![int(2), int(3)]
        );
        assert_eq!(
            slope(&[int(0), int(1)], &[int(2), int(1)]).unwrap(),
            vec![int(0)]
        );
        assert!(matches!(
            slope(&[int(1), int(0)], &[int(1), int(5)]),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn single_point_base() {
        let out = step_up_points(&one_dim(&[3], ratio(1, 10)), &ResourceCaps::default()).unwrap();
        assert_eq!(
            out.points.points(),
            &[vec![int(0), int(0)], vec![int(1), int(3)]]
        );
    }

    #[test]
    fn two_point_base_slopes() {
        let out =
            step_up_points(&one_dim(&[1, 2], ratio(1, 10)), &ResourceCaps::default()).unwrap();
        let p = &out.points;
        assert_eq!(p.len(), 4);
        let tol = ratio(1, 20);
        for i in 0..4 {
            for j in i + 1..4 {
                let s = slope(p.point(i), p.point(j)).unwrap()[0].clone();
                let target = if i < 2 && j >= 2 { int(2) } else { int(1) };
                assert!((s - target).abs() <= tol, "pair {i} {j}");
            }
        }
    }

    #[test]
    fn slope_observation_three_levels() {
        let base = base_construction(2, &ResourceCaps::default()).unwrap();
        let small = ConstructionInstance::new(
            base.points.select(&[0, 1, 2]),
            base.relation.clone(),
            base.epsilon.clone(),
            Provenance::Custom {
                note: "3 points".into(),
            },
        )
        .unwrap();
        let out = step_up_points(&small, &ResourceCaps::default()).unwrap();
        assert_eq!(out.points.len(), 8);
        assert_eq!(check_slope_observation(&small, &out.points).unwrap(), None);
        assert!(verify_eps_increasing(&out.points, &out.epsilon));
    }

    #[test]
    fn rejects_non_increasing_base() {
        let bad = one_dim(&[1, 1], ratio(1, 10));
        assert!(matches!(
            step_up_points(&bad, &ResourceCaps::default()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn two_point_relation_matches_rule() {
        // base(1) = {1, 2}: its step-up has 4 points and one 4-tuple
        let base = base_construction(1, &ResourceCaps::default()).unwrap();
        let up = step_up(&base, &ResourceCaps::default()).unwrap();
        let mut mismatches = 0;
        let checked = for_each_rule_mismatch(&up, &base, |_| mismatches += 1).unwrap();
        assert_eq!(checked, 1);
        assert_eq!(mismatches, 0);
    }

    #[test]
    fn rule_local_extrema() {
        // 8 base points give 256 stepped points; choose tuples by their deltas.
        let base = base_construction(3, &ResourceCaps::default()).unwrap();
        // indices 0,4,5,6: deltas 3,1,2 -> local minimum -> member
        assert!(step_up_membership_rule(&base, &[0, 4, 5, 6]).unwrap());
        // indices 0,1,2,6: deltas 1,2,3 -> monotone, defer to base on points 1,2,3
        assert!(step_up_membership_rule(&base, &[0, 1, 2, 6]).unwrap());
        // indices 0,1,4,5: deltas 1,3,1 -> local maximum -> non-member
        assert!(!step_up_membership_rule(&base, &[0, 1, 4, 5]).unwrap());
    }
}
