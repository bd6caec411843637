//! Homogeneous subsets and the combinatorial lemmas around them.

mod freeness;
mod greedy;
mod homogeneous;
mod monotone;
mod oracle;
mod spencer;
mod transitive;

pub use freeness::{
    find_bad_triples, is_k4e_free, is_ks3_free, roots_within_domain, BadTriples, Freeness,
};
pub use greedy::erdos_rado_greedy;
pub use homogeneous::max_homogeneous;
pub use monotone::{longest_monotone_subsequence, MonotoneSubsequence};
pub use oracle::MembershipTable;
pub use spencer::{spencer_bound_met, spencer_independent_set, Hypergraph3, SpencerResult};
pub use transitive::{
    is_transitive, transitive_ramsey_number, verify_transitive_ramsey, TransitiveColoring,
    TransitiveVerdict,
};

use crate::combinatorics::for_each_combination;
use crate::error::{arg, Result};
use crate::relation::{eval_membership, OrderedPointSet, SemiAlgebraicRelation};

/// Whether every k-tuple of a homogeneous subset is in the relation or none is.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Polarity {
    In,
    Out,
}

impl Polarity {
    pub fn as_bool(self) -> bool {
        self == Polarity::In
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Polarity::In => "in",
            Polarity::Out => "out",
        }
    }
}

/// Search counters.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Branch-and-bound nodes visited.
    pub nodes: u64,
    /// For the greedy: class counts at each step, one list per arity level.
    pub classes_per_level: Vec<Vec<usize>>,
    /// For the greedy: number of points `q_1..q_{M+1}` chosen at each level.
    pub depths: Vec<usize>,
}

/// A homogeneous subset with zero-based indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomogeneousResult {
    pub subset: Vec<usize>,
    pub polarity: Polarity,
    /// Every k-tuple of `subset` was re-evaluated against the relation.
    pub certified: bool,
    /// The search ran to completion, so no larger homogeneous subset exists.
    pub maximum: bool,
    pub stats: SearchStats,
}

/// Re-evaluates every k-tuple of `subset` directly against the relation.
pub fn certify(
    points: &OrderedPointSet,
    relation: &SemiAlgebraicRelation,
    subset: &[usize],
    polarity: Polarity,
) -> Result<bool> {
    if subset.windows(2).any(|w| w[0] >= w[1]) || subset.last().is_some_and(|&i| i >= points.len())
    {
        return arg("subset must be strictly increasing and in range");
    }
    let mut ok = true;
    let mut err = None;
    for_each_combination(subset.len(), relation.arity(), |c| {
        let idx: Vec<usize> = c.iter().map(|&i| subset[i]).collect();
        match eval_membership(relation, points, &idx) {
            Ok(m) => ok = m == polarity.as_bool(),
            Err(e) => {
                err = Some(e);
                ok = false;
            }
        }
        ok
    });
    match err {
        Some(e) => Err(e),
        None => Ok(ok),
    }
}
