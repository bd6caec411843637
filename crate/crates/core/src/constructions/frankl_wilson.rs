//! The Frankl–Wilson graph as a binary semi-algebraic relation.

use super::{ConstructionInstance, Provenance, ResourceCaps};
use crate::combinatorics::{binomial, for_each_combination};
use crate::error::{Error, Result};
use crate::exactmath::rational::int;
use crate::exactmath::MultivariatePolynomial;
use crate::relation::{Formula, OrderedPointSet, SemiAlgebraicRelation};

// The formula enumerates subsets of the r coordinates.
const MAX_R: usize = 12;

/// Vertices are the `r`-subsets of `{1..m}` with `r = p^2 - 1`, encoded as
/// increasing coordinate vectors; two vertices are adjacent when their
/// intersection size is `-1 mod p`.
#[derive(Debug, Clone)]
pub struct FranklWilsonGraph {
    pub m: usize,
    pub p: usize,
    pub r: usize,
    pub subsets: Vec<Vec<usize>>,
    pub vertices: OrderedPointSet,
    pub relation: SemiAlgebraicRelation,
}

impl FranklWilsonGraph {
    /// Adjacency from the set definition (zero-based vertex indices).
    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        let common = self.subsets[a]
            .iter()
            .filter(|x| self.subsets[b].contains(x))
            .count();
        (common + 1) % self.p == 0
    }
}

fn is_prime(p: usize) -> bool {
    p >= 2
        && (2..)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

/// Counting formula: the number of `i` with `x_i` equal to some `y_j` is
/// `-1 mod p`. Atom `(i, j)` is polynomial `i * r + j`, i.e. `x_i - y_j = 0`.
fn counting_formula(r: usize, p: usize) -> Formula {
    let member = |i: usize| Formula::or((0..r).map(|j| Formula::eq(i * r + j)).collect());
    let mut branches = Vec::new();
    for mask in 0u32..(1 << r) {
        if !(mask.count_ones() as usize + 1).is_multiple_of(p) {
            continue;
        }
        branches.push(Formula::and(
            (0..r)
                .map(|i| {
                    if mask >> i & 1 == 1 {
                        member(i)
                    } else {
                        Formula::not(member(i))
                    }
                })
                .collect(),
        ));
    }
    Formula::or(branches)
}

pub fn frankl_wilson_graph(m: usize, p: usize, caps: &ResourceCaps) -> Result<FranklWilsonGraph> {
    if !is_prime(p) {
        return Err(Error::Argument(format!("{p} is not prime")));
    }
    let r = p * p - 1;
    if r > m {
        return Err(Error::Argument(format!("r = {r} exceeds m = {m}")));
    }
    if r > MAX_R {
        return Err(Error::Resource(format!(
            "r = {r} makes the counting formula too large"
        )));
    }
    caps.check_points(binomial(m as u64, r as u64) as u128)?;
    let mut subsets = Vec::new();
    for_each_combination(m, r, |c| {
        subsets.push(c.iter().map(|&x| x + 1).collect::<Vec<_>>());
        true
    });
    let vertices = OrderedPointSet::new(
        r,
        subsets
            .iter()
            .map(|s| s.iter().map(|&x| int(x as i64)).collect())
            .collect(),
    )?;
    let nv = 2 * r;
    let mut polys = Vec::with_capacity(r * r);
    for i in 0..r {
        for j in 0..r {
            polys.push(
                &MultivariatePolynomial::var(nv, i) - &MultivariatePolynomial::var(nv, r + j),
            );
        }
    }
    let relation = SemiAlgebraicRelation::new(2, r, polys, counting_formula(r, p))?;
    Ok(FranklWilsonGraph {
        m,
        p,
        r,
        subsets,
        vertices,
        relation,
    })
}

pub fn frankl_wilson_instance(
    m: usize,
    p: usize,
    caps: &ResourceCaps,
) -> Result<ConstructionInstance> {
    let g = frankl_wilson_graph(m, p, caps)?;
    ConstructionInstance::new(
        g.vertices,
        g.relation,
        None,
        Provenance::FranklWilson { m, p },
    )
}
