use std::collections::HashMap;

use rayon::prelude::*;

use super::homogeneous::max_homogeneous_in_table;
use super::{certify, HomogeneousResult, MembershipTable, Polarity, SearchStats};
use crate::combinatorics::{binomial, for_each_combination};
use crate::constructions::ResourceCaps;
use crate::error::{arg, Error, Result};
use crate::exactmath::Rational;
use crate::relation::{milnor_thom_bound, OrderedPointSet, SemiAlgebraicRelation};

struct Level {
    /// Chosen points `q_1..q_{M+1}` as zero-based indices into the point set.
    q: Vec<usize>,
    classes: Vec<usize>,
}

fn coords_of(points: &OrderedPointSet, idx: impl IntoIterator<Item = usize>) -> Vec<Rational> {
    idx.into_iter()
        .flat_map(|i| points.point(i).iter().cloned())
        .collect()
}

/// One level of the recursion: choose `q_1, q_2, ...` while keeping the
/// largest class of points that agree on every atom over the new tuples.
fn cascade(
    points: &OrderedPointSet,
    relation: &SemiAlgebraicRelation,
    pool: &[usize],
) -> Result<Level> {
    let k = relation.arity();
    let mut q: Vec<usize> = pool[..k - 2].to_vec();
    let mut s: Vec<usize> = pool[k - 2..].to_vec();
    let mut classes = Vec::new();
    let t = relation.polys().len() as u64;
    let deg = relation.max_degree().max(1) as u64;
    let dim = relation.point_dim() as u64;
    while let Some((&next, rest)) = s.split_first() {
        q.push(next);
        let r = q.len() - 1;
        let subsets: Vec<Vec<usize>> = {
            let mut v = Vec::new();
            for_each_combination(r, k - 2, |c| {
                v.push(c.iter().map(|&i| q[i]).collect());
                true
            });
            v
        };
        let prefixes: Vec<Vec<Rational>> = subsets
            .iter()
            .map(|t| coords_of(points, t.iter().copied().chain([next])))
            .collect();
        let keys: Vec<Vec<bool>> = rest
            .par_iter()
            .map(|&p| {
                let mut key = Vec::new();
                for prefix in &prefixes {
                    let mut coords = prefix.clone();
                    coords.extend_from_slice(points.point(p));
                    key.extend(
                        relation
                            .atom_truths(&coords)
                            .expect("coordinate count matches"),
                    );
                }
                key
            })
            .collect();
        let mut order: Vec<&Vec<bool>> = Vec::new();
        let mut groups: HashMap<&Vec<bool>, Vec<usize>> = HashMap::new();
        for (key, &p) in keys.iter().zip(rest) {
            groups
                .entry(key)
                .or_insert_with(|| {
                    order.push(key);
                    Vec::new()
                })
                .push(p);
        }
        classes.push(order.len());
        let family = t * binomial(r as u64, k as u64 - 2);
        if dim >= 2 && family >= dim {
            let bound = milnor_thom_bound(deg, family, dim)?;
            if num_bigint::BigUint::from(order.len()) > bound {
                return Err(Error::Precondition(format!(
                    "{} classes exceed the Milnor-Thom bound {bound}",
                    order.len()
                )));
            }
        }
        // largest class; ties go to the class seen first, i.e. with the smallest index
        let mut best: Vec<usize> = Vec::new();
        for key in order {
            let g = &groups[key];
            if g.len() > best.len() {
                best = g.clone();
            }
        }
        check_class_invariant(points, relation, &q, &best)?;
        s = best;
    }
    Ok(Level { q, classes })
}

/// Every kept point sees the same membership on every tuple that ends in the
/// newest chosen point.
fn check_class_invariant(
    points: &OrderedPointSet,
    relation: &SemiAlgebraicRelation,
    q: &[usize],
    class: &[usize],
) -> Result<()> {
    let k = relation.arity();
    let (&newest, older) = q.split_last().expect("q is nonempty");
    let mut result = Ok(());
    for_each_combination(older.len(), k - 2, |c| {
        let prefix = coords_of(points, c.iter().map(|&i| older[i]).chain([newest]));
        let mut first = None;
        for &p in class {
            let mut coords = prefix.clone();
            coords.extend_from_slice(points.point(p));
            let m = relation.evaluate_unchecked(&coords);
            if *first.get_or_insert(m) != m {
                result = Err(Error::Precondition(format!(
                    "class containing point {p} is not homogeneous"
                )));
                return false;
            }
        }
        true
    });
    result
}

fn recurse(
    points: &OrderedPointSet,
    relation: &SemiAlgebraicRelation,
    pool: &[usize],
    stats: &mut SearchStats,
    budget: Option<u64>,
) -> Result<(Vec<usize>, Polarity)> {
    let k = relation.arity();
    if pool.len() < k {
        return Ok((pool.to_vec(), Polarity::In));
    }
    if k <= 2 {
        let sub = points.select(pool);
        let table = MembershipTable::build(
            &sub,
            relation,
            MembershipTable::default_limit(&ResourceCaps::default()),
        )?;
        let r = max_homogeneous_in_table(&sub, relation, &table, budget)?;
        stats.nodes += r.stats.nodes;
        return Ok((r.subset.iter().map(|&i| pool[i]).collect(), r.polarity));
    }
    let level = cascade(points, relation, pool)?;
    stats.classes_per_level.push(level.classes);
    stats.depths.push(level.q.len());
    let (&last, front) = level
        .q
        .split_last()
        .expect("cascade chooses at least one point");
    let induced = relation.restrict_last_slot(points.point(last))?;
    let (mut subset, polarity) = recurse(points, &induced, front, stats, budget)?;
    subset.push(last);
    Ok((subset, polarity))
}

/// Greedy extraction following the recursive proof of the Erdős–Rado type
/// bound: peel off points while refining by sign classes, pass to the
/// relation induced by the last chosen point, and finish exactly at arity 2.
pub fn erdos_rado_greedy(
    points: &OrderedPointSet,
    relation: &SemiAlgebraicRelation,
    budget: Option<u64>,
) -> Result<HomogeneousResult> {
    let k = relation.arity();
    if k < 3 {
        return arg("the greedy needs arity at least 3");
    }
    if points.dim() != relation.point_dim() {
        return arg("point dimension does not match relation");
    }
    if points.len() < k {
        return Err(Error::Precondition(format!("need at least {k} points")));
    }
    let pool: Vec<usize> = (0..points.len()).collect();
    let mut stats = SearchStats::default();
    let (subset, mut polarity) = recurse(points, relation, &pool, &mut stats, budget)?;
    if subset.len() < k {
        polarity = Polarity::In;
    }
    let certified = certify(points, relation, &subset, polarity)?;
    if !certified {
        return Err(Error::Precondition(
            "greedy output failed certification".into(),
        ));
    }
    Ok(HomogeneousResult {
        subset,
        polarity,
        certified,
        maximum: false,
        stats,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{base_construction, step_up};
    use crate::exactmath::rational::int;

    #[test]
    fn base_three() {
        let inst = base_construction(3, &ResourceCaps::default()).unwrap();
        let r = erdos_rado_greedy(&inst.points, &inst.relation, None).unwrap();
        assert!(r.subset.len() >= 3);
        assert!(r.certified);
    }

    #[test]
    fn never_true_relation() {
        let pts = OrderedPointSet::from_scalars((0..9).map(int));
        let r = erdos_rado_greedy(&pts, &SemiAlgebraicRelation::empty(3, 1), None).unwrap();
        assert_eq!(r.subset, (0..9).collect::<Vec<_>>());
        assert_eq!(r.polarity, Polarity::Out);
        assert!(r.stats.classes_per_level.iter().flatten().all(|&c| c <= 1));
    }

    #[test]
    fn base_four_and_step_up() {
        let caps = ResourceCaps::default();
        let inst = base_construction(4, &caps).unwrap();
        let r = erdos_rado_greedy(&inst.points, &inst.relation, None).unwrap();
        assert!(r.certified && r.subset.len() >= 2);
        let up = step_up(&base_construction(2, &caps).unwrap(), &caps).unwrap();
        let r = erdos_rado_greedy(&up.points, &up.relation, None).unwrap();
        assert!(r.certified && r.subset.len() >= 3);
    }
}
