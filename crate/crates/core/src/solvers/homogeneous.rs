use super::{certify, HomogeneousResult, MembershipTable, Polarity, SearchStats};
use crate::combinatorics::for_each_combination;
use crate::constructions::ResourceCaps;
use crate::error::{Error, Result};
use crate::relation::{OrderedPointSet, SemiAlgebraicRelation};

struct Search<'a> {
    table: &'a MembershipTable,
    want: bool,
    best: Vec<usize>,
    nodes: u64,
    budget: Option<u64>,
    exhausted: bool,
}

impl Search<'_> {
    /// `c` can join `chosen` (whose last element is the newest) if every
    /// k-subset containing both the newest element and `c` has the wanted
    /// membership.
    fn compatible(&self, chosen: &[usize], c: usize) -> bool {
        let k = self.table.arity();
        let (&v, rest) = match chosen.split_last() {
            Some(x) => x,
            None => return k != 1 || self.table.get(&[c]) == self.want,
        };
        if k < 2 || rest.len() < k - 2 {
            return true;
        }
        let mut tuple = vec![0; k];
        let mut ok = true;
        for_each_combination(rest.len(), k - 2, |t| {
            for (slot, &i) in t.iter().enumerate() {
                tuple[slot] = rest[i];
            }
            tuple[k - 2] = v;
            tuple[k - 1] = c;
            ok = self.table.get(&tuple) == self.want;
            ok
        });
        ok
    }

    fn run(&mut self, chosen: &mut Vec<usize>, candidates: &[usize]) {
        self.nodes += 1;
        if chosen.len() > self.best.len() {
            self.best = chosen.clone();
        }
        if self.budget.is_some_and(|b| self.nodes >= b) {
            self.exhausted = true;
            return;
        }
        for (pos, &v) in candidates.iter().enumerate() {
            if chosen.len() + candidates.len() - pos <= self.best.len() {
                return;
            }
            chosen.push(v);
            let next: Vec<usize> = candidates[pos + 1..]
                .iter()
                .copied()
                .filter(|&c| self.compatible(chosen, c))
                .collect();
            self.run(chosen, &next);
            chosen.pop();
            if self.exhausted {
                return;
            }
        }
    }
}

/// A maximum homogeneous subset by branch and bound over both polarities,
/// preferring "in" on ties. With a node `budget`, an exhausted search
/// returns the best subset found so far with `maximum = false`.
pub fn max_homogeneous(
    points: &OrderedPointSet,
    relation: &SemiAlgebraicRelation,
    budget: Option<u64>,
) -> Result<HomogeneousResult> {
    let table = MembershipTable::build(
        points,
        relation,
        MembershipTable::default_limit(&ResourceCaps::default()),
    )?;
    max_homogeneous_in_table(points, relation, &table, budget)
}

pub(crate) fn max_homogeneous_in_table(
    points: &OrderedPointSet,
    relation: &SemiAlgebraicRelation,
    table: &MembershipTable,
    budget: Option<u64>,
) -> Result<HomogeneousResult> {
    let n = points.len();
    let k = relation.arity();
    // any k - 1 points are vacuously homogeneous
    let mut best = ((0..n.min(k - 1)).collect::<Vec<_>>(), Polarity::In);
    let mut nodes = 0;
    let mut exhausted = false;
    for polarity in [Polarity::In, Polarity::Out] {
        let mut s = Search {
            table,
            want: polarity.as_bool(),
            best: best.0.clone(),
            nodes,
            budget,
            exhausted: false,
        };
        let roots: Vec<usize> = (0..n).filter(|&c| s.compatible(&[], c)).collect();
        s.run(&mut Vec::new(), &roots);
        nodes = s.nodes;
        if s.best.len() > best.0.len() {
            best = (s.best, polarity);
        }
        if s.exhausted {
            exhausted = true;
            break;
        }
    }
    let certified = certify(points, relation, &best.0, best.1)?;
    if !certified {
        return Err(Error::Precondition(
            "homogeneous subset failed certification".into(),
        ));
    }
    Ok(HomogeneousResult {
        subset: best.0,
        polarity: best.1,
        certified,
        maximum: !exhausted,
        stats: SearchStats {
            nodes,
            ..Default::default()
        },
    })
}
