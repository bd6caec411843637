use rayon::prelude::*;

use crate::combinatorics::{binomial, for_each_combination};
use crate::constructions::ResourceCaps;
use crate::error::{arg, Error, Result};
use crate::exactmath::Rational;
use crate::relation::{OrderedPointSet, SemiAlgebraicRelation};

/// Membership of every k-subset of a point set, stored by colex rank.
#[derive(Debug, Clone)]
pub struct MembershipTable {
    n: usize,
    k: usize,
    bits: Vec<u64>,
    // binom[v][i] = C(v, i)
    binom: Vec<Vec<u64>>,
}

impl MembershipTable {
    /// Evaluates the relation on all `C(n, k)` tuples, in parallel over the
    /// largest index. Refuses tables larger than `max_tuples`.
    pub fn build(
        points: &OrderedPointSet,
        relation: &SemiAlgebraicRelation,
        max_tuples: u64,
    ) -> Result<Self> {
        if points.dim() != relation.point_dim() {
            return arg("point dimension does not match relation");
        }
        let n = points.len();
        let k = relation.arity();
        let total = binomial(n as u64, k as u64);
        if total > max_tuples {
            return Err(Error::Resource(format!(
                "{total} tuples exceeds the table limit of {max_tuples}"
            )));
        }
        let binom: Vec<Vec<u64>> = (0..=n)
            .map(|v| (0..=k).map(|i| binomial(v as u64, i as u64)).collect())
            .collect();
        // Tuples with largest element m occupy ranks C(m, k)..C(m + 1, k).
        let blocks: Vec<Vec<bool>> = (k.saturating_sub(1)..n)
            .into_par_iter()
            .map(|m| {
                let size = binom[m][k - 1] as usize;
                let mut block = vec![false; size];
                let mut coords: Vec<Rational> = Vec::with_capacity(k * points.dim());
                for_each_combination(m, k - 1, |c| {
                    coords.clear();
                    for &i in c {
                        coords.extend_from_slice(points.point(i));
                    }
                    coords.extend_from_slice(points.point(m));
                    let r: u64 = c.iter().enumerate().map(|(i, &v)| binom[v][i + 1]).sum();
                    block[r as usize] = relation.evaluate_unchecked(&coords);
                    true
                });
                block
            })
            .collect();
        let mut bits = vec![0u64; (total as usize).div_ceil(64)];
        let mut pos = 0usize;
        for b in blocks {
            for v in b {
                if v {
                    bits[pos / 64] |= 1 << (pos % 64);
                }
                pos += 1;
            }
        }
        debug_assert_eq!(pos as u64, total);
        Ok(Self { n, k, bits, binom })
    }

    pub fn default_limit(caps: &ResourceCaps) -> u64 {
        (caps.max_points as u64).saturating_mul(64).max(1 << 26)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn arity(&self) -> usize {
        self.k
    }

    /// Membership of a strictly increasing zero-based k-tuple.
    pub fn get(&self, tuple: &[usize]) -> bool {
        debug_assert_eq!(tuple.len(), self.k);
        let r: u64 = tuple
            .iter()
            .enumerate()
            .map(|(i, &v)| self.binom[v][i + 1])
            .sum();
        self.bits[(r / 64) as usize] >> (r % 64) & 1 == 1
    }
}
