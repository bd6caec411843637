use std::collections::{BTreeMap, BTreeSet};

use super::MembershipTable;
use crate::combinatorics::for_each_combination;
use crate::constructions::ResourceCaps;
use crate::error::{arg, Result};
use crate::exactmath::{count_real_roots, MultivariatePolynomial, Rational};
use crate::relation::{OrderedPointSet, SemiAlgebraicRelation};

/// Outcome of a freeness predicate; witnesses are zero-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Freeness {
    Free,
    Witness(Vec<usize>),
}

impl Freeness {
    pub fn is_free(&self) -> bool {
        matches!(self, Freeness::Free)
    }
}

fn ternary_table(
    points: &OrderedPointSet,
    relation: &SemiAlgebraicRelation,
) -> Result<MembershipTable> {
    if relation.arity() != 3 {
        return arg("freeness predicates need a ternary relation");
    }
    MembershipTable::build(
        points,
        relation,
        MembershipTable::default_limit(&ResourceCaps::default()),
    )
}

/// No `s` points have all their triples in the relation.
pub fn is_ks3_free(
    points: &OrderedPointSet,
    relation: &SemiAlgebraicRelation,
    s: usize,
) -> Result<Freeness> {
    let table = ternary_table(points, relation)?;
    if s < 3 {
        return arg("s must be at least 3");
    }
    fn grow(table: &MembershipTable, chosen: &mut Vec<usize>, s: usize) -> bool {
        if chosen.len() == s {
            return true;
        }
        let start = chosen.last().map_or(0, |&v| v + 1);
        for c in start..table.len() {
            if table.len() - c < s - chosen.len() {
                break;
            }
            let ok =
                (0..chosen.len()).all(|j| (0..j).all(|i| table.get(&[chosen[i], chosen[j], c])));
            if ok {
                chosen.push(c);
                if grow(table, chosen, s) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    let mut chosen = Vec::new();
    Ok(if grow(&table, &mut chosen, s) {
        Freeness::Witness(chosen)
    } else {
        Freeness::Free
    })
}

/// Every four points induce at most two member triples.
pub fn is_k4e_free(points: &OrderedPointSet, relation: &SemiAlgebraicRelation) -> Result<Freeness> {
    let table = ternary_table(points, relation)?;
    let mut witness = None;
    for_each_combination(points.len(), 4, |q| {
        let count = [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]
            .iter()
            .filter(|t| table.get(&[q[t[0]], q[t[1]], q[t[2]]]))
            .count();
        if count > 2 {
            witness = Some(q.to_vec());
        }
        witness.is_none()
    });
    Ok(witness.map_or(Freeness::Free, Freeness::Witness))
}

/// Index triples (sorted, zero-based) where a univariate restriction built
/// from two of the points vanishes at the third.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BadTriples {
    pub triples: Vec<[usize; 3]>,
    /// Restrictions that vanished identically and were skipped.
    pub zero_restrictions: usize,
}

/// The univariate polynomials obtained by fixing two slots of every
/// polynomial of a ternary relation on the line, keyed by the free slot.
fn restrictions(
    relation: &SemiAlgebraicRelation,
    a: &Rational,
    b: &Rational,
    zero: &mut usize,
) -> Result<Vec<MultivariatePolynomial>> {
    let mut out = Vec::new();
    for free in 0..3 {
        let mut fixed = BTreeMap::new();
        let mut vals = [a, b].into_iter();
        for slot in 0..3 {
            if slot != free {
                fixed.insert(slot, vals.next().expect("two fixed values").clone());
            }
        }
        for p in relation.polys() {
            let r = p.restrict(&fixed)?;
            if r.is_zero() {
                *zero += 1;
            } else if r.as_constant().is_none() {
                out.push(r);
            }
        }
    }
    Ok(out)
}

pub fn find_bad_triples(
    points: &OrderedPointSet,
    relation: &SemiAlgebraicRelation,
) -> Result<BadTriples> {
    if points.dim() != 1 || relation.point_dim() != 1 {
        return arg("bad triples are defined for points on the line");
    }
    if relation.arity() != 3 {
        return arg("bad triples need a ternary relation");
    }
    let n = points.len();
    let mut bad = BTreeSet::new();
    let mut zero = 0;
    for i in 0..n {
        for j in i + 1..n {
            let family = restrictions(
                relation,
                &points.point(i)[0],
                &points.point(j)[0],
                &mut zero,
            )?;
            for m in (0..n).filter(|&m| m != i && m != j) {
                let x = &points.point(m)[0];
                if family.iter().any(|f| {
                    f.eval_unchecked(std::slice::from_ref(x)) == Rational::from_integer(0.into())
                }) {
                    let mut t = [i, j, m];
                    t.sort_unstable();
                    bad.insert(t);
                }
            }
        }
    }
    Ok(BadTriples {
        triples: bad.into_iter().collect(),
        zero_restrictions: zero,
    })
}

/// Number of real roots of a nonzero univariate `f` in the open interval
/// `(lo, hi)`, for bounding how many points a restriction can make bad.
pub fn roots_within_domain(
    f: &MultivariatePolynomial,
    lo: &Rational,
    hi: &Rational,
) -> Result<usize> {
    count_real_roots(f, lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{base_construction, base_relation};
    use crate::exactmath::rational::{int, ratio};
    use crate::relation::Formula;

    fn line(v: &[i64]) -> OrderedPointSet {
        OrderedPointSet::from_scalars(v.iter().map(|&x| int(x)))
    }

    #[test]
    fn ks3_examples() {
        let caps = ResourceCaps::default();
        let base = base_construction(2, &caps).unwrap();
        assert!(
            is_ks3_free(&line(&[1, 2, 3, 4]), &SemiAlgebraicRelation::empty(3, 1), 3)
                .unwrap()
                .is_free()
        );
        assert_eq!(
            is_ks3_free(&base.points, &base.relation, 3).unwrap(),
            Freeness::Witness(vec![0, 1, 2])
        );
        assert!(is_ks3_free(&base.points, &base.relation, 4)
            .unwrap()
            .is_free());
    }

    #[test]
    fn k4e_examples() {
        let base = base_construction(2, &ResourceCaps::default()).unwrap();
        assert!(
            is_k4e_free(&line(&[1, 2, 3, 4]), &SemiAlgebraicRelation::empty(3, 1))
                .unwrap()
                .is_free()
        );
        assert!(!is_k4e_free(
            &line(&[1, 2, 3, 4, 5]),
            &SemiAlgebraicRelation::complete(3, 1)
        )
        .unwrap()
        .is_free());
        assert_eq!(
            is_k4e_free(&base.points, &base.relation).unwrap(),
            Freeness::Witness(vec![0, 1, 2, 3])
        );
    }

    #[test]
    fn bad_triple_examples() {
        let pts = line(&[1, 2, 3]);
        let b = find_bad_triples(&pts, &base_relation()).unwrap();
        // every restriction vanishes at a fixed point or off the set, e.g. f(1, x, 3) at 9/4
        assert!(b.triples.is_empty());
        assert_eq!(b.zero_restrictions, 0);
        let f = base_relation().polys()[2]
            .restrict(&BTreeMap::from([(0, int(1)), (2, int(3))]))
            .unwrap();
        assert_eq!(roots_within_domain(&f, &int(2), &int(3)).unwrap(), 1);
        assert_eq!(f.eval(&[ratio(9, 4)]).unwrap(), int(0));

        let x2 = MultivariatePolynomial::var(3, 1) - MultivariatePolynomial::constant(3, int(2));
        let rel = SemiAlgebraicRelation::new(3, 1, vec![x2], Formula::ge(0)).unwrap();
        assert_eq!(
            find_bad_triples(&pts, &rel).unwrap().triples,
            vec![[0, 1, 2]]
        );

        let c = SemiAlgebraicRelation::new(
            3,
            1,
            vec![MultivariatePolynomial::constant(3, int(5))],
            Formula::gt(0),
        )
        .unwrap();
        assert!(find_bad_triples(&line(&[1, 4, 9, 16]), &c)
            .unwrap()
            .triples
            .is_empty());
    }
}
