use rand::Rng;

use crate::error::{arg, Error, Result};
use crate::rng::stream;

const MAX_ROUNDS: u64 = 10_000;

/// 3-uniform hypergraph on `0..n` with strictly increasing edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph3 {
    n: usize,
    edges: Vec<[usize; 3]>,
}

impl Hypergraph3 {
    pub fn new(n: usize, mut edges: Vec<[usize; 3]>) -> Result<Self> {
        if let Some(e) = edges
            .iter()
            .find(|e| !(e[0] < e[1] && e[1] < e[2] && e[2] < n))
        {
            return arg(format!("edge {e:?} is not an increasing triple below {n}"));
        }
        edges.sort_unstable();
        edges.dedup();
        Ok(Self { n, edges })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[[usize; 3]] {
        &self.edges
    }

    pub fn is_independent(&self, set: &[usize]) -> bool {
        let mut member = vec![false; self.n];
        for &v in set {
            member[v] = true;
        }
        !self.edges.iter().any(|e| e.iter().all(|&v| member[v]))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpencerResult {
    pub set: Vec<usize>,
    /// Rounds used, counting from 1.
    pub rounds: u64,
}

/// `|S| >= (2N/3) sqrt(N / (3|E|))`, checked as `27 |E| |S|^2 >= 4 N^3`.
pub fn spencer_bound_met(n: usize, edges: usize, size: usize) -> bool {
    27 * edges as u128 * (size as u128).pow(2) >= 4 * (n as u128).pow(3)
}

/// Deletion method: keep each vertex with probability `sqrt(N / (3|E|))`,
/// then drop the largest vertex of every edge that survived. Rounds use
/// independent streams of `seed` until the size bound holds.
pub fn spencer_independent_set(h: &Hypergraph3, seed: u64) -> Result<SpencerResult> {
    let (n, m) = (h.n, h.edges.len());
    if 3 * m < n {
        return Err(Error::Precondition(format!(
            "{m} edges is fewer than N/3 for N = {n}"
        )));
    }
    if n == 0 {
        return Ok(SpencerResult {
            set: Vec::new(),
            rounds: 1,
        });
    }
    let p = (n as f64 / (3 * m) as f64).sqrt();
    for round in 0..MAX_ROUNDS {
        let mut rng = stream(seed, round);
        let mut keep: Vec<bool> = (0..n).map(|_| rng.random_bool(p)).collect();
        for e in &h.edges {
            if e.iter().all(|&v| keep[v]) {
                keep[e[2]] = false;
            }
        }
        let set: Vec<usize> = (0..n).filter(|&v| keep[v]).collect();
        if spencer_bound_met(n, m, set.len()) {
            debug_assert!(h.is_independent(&set));
            return Ok(SpencerResult {
                set,
                rounds: round + 1,
            });
        }
    }
    Err(Error::Budget(format!(
        "no round out of {MAX_ROUNDS} met the bound"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::for_each_combination;

    #[test]
    fn two_disjoint_edges() {
        let h = Hypergraph3::new(6, vec![[0, 1, 2], [3, 4, 5]]).unwrap();
        let r = spencer_independent_set(&h, 0).unwrap();
        assert_eq!(r.set, vec![0, 1, 3, 4]);
    }

    #[test]
    fn complete_and_single() {
        let mut all = Vec::new();
        for_each_combination(6, 3, |t| {
            all.push([t[0], t[1], t[2]]);
            true
        });
        let h = Hypergraph3::new(6, all).unwrap();
        let r = spencer_independent_set(&h, 7).unwrap();
        assert!(r.set.len() >= 2 && h.is_independent(&r.set));
        let h = Hypergraph3::new(3, vec![[0, 1, 2]]).unwrap();
        assert_eq!(spencer_independent_set(&h, 0).unwrap().set, vec![0, 1]);
    }

    #[test]
    fn hypothesis_enforced() {
        let h = Hypergraph3::new(9, vec![[0, 1, 2], [3, 4, 5]]).unwrap();
        assert!(matches!(
            spencer_independent_set(&h, 0),
            Err(Error::Precondition(_))
        ));
        assert!(Hypergraph3::new(3, vec![[0, 2, 1]]).is_err());
    }
}
