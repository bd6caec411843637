use std::collections::BTreeMap;

use crate::combinatorics::{binomial, for_each_combination};
use crate::error::{arg, Result};

/// Red/blue colouring of the triples of `0..n` (`true` is red), stored in
/// colex order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitiveColoring {
    pub n: usize,
    pub red: Vec<bool>,
}

impl TransitiveColoring {
    fn index(a: usize, b: usize, c: usize) -> usize {
        binomial(a as u64, 1) as usize
            + binomial(b as u64, 2) as usize
            + binomial(c as u64, 3) as usize
    }

    /// Colour of the triple `a < b < c`.
    pub fn is_red(&self, a: usize, b: usize, c: usize) -> bool {
        self.red[Self::index(a, b, c)]
    }

    /// Colours keyed by increasing triple.
    pub fn to_map(&self) -> BTreeMap<[usize; 3], bool> {
        let mut m = BTreeMap::new();
        for_each_combination(self.n, 3, |t| {
            m.insert([t[0], t[1], t[2]], self.is_red(t[0], t[1], t[2]));
            true
        });
        m
    }
}

/// `(i1,i2,i3)` and `(i2,i3,i4)` of one colour force `(i1,i2,i4)` and
/// `(i1,i3,i4)` to share it.
pub fn is_transitive(c: &TransitiveColoring) -> bool {
    let mut ok = true;
    for_each_combination(c.n, 4, |q| {
        let (a, b, x, e) = (q[0], q[1], q[2], q[3]);
        let col = c.is_red(a, b, x);
        ok = col != c.is_red(b, x, e) || (c.is_red(a, b, e) == col && c.is_red(a, x, e) == col);
        ok
    });
    ok
}

/// `C(s + n - 4, s - 2) + 1`.
pub fn transitive_ramsey_number(s: u64, n: u64) -> Result<u64> {
    if s < 3 || n < 3 {
        return arg("s and n must be at least 3");
    }
    let b = binomial(s + n - 4, s - 2);
    if b == u64::MAX {
        return arg("value overflows 64 bits");
    }
    Ok(b + 1)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TransitiveVerdict {
    /// Every transitive colouring has a red `s`-set or a blue `n`-set.
    Holds,
    /// A transitive colouring avoiding both.
    Counterexample(TransitiveColoring),
    Inconclusive {
        nodes: u64,
    },
}

struct Backtrack {
    n: usize,
    s: usize,
    blue_n: usize,
    triples: Vec<[usize; 3]>,
    red: Vec<bool>,
    nodes: u64,
    budget: Option<u64>,
}

impl Backtrack {
    fn color(&self, a: usize, b: usize, c: usize) -> bool {
        self.red[TransitiveColoring::index(a, b, c)]
    }

    /// Checks the constraints whose last triple in colex order is `(b, c, e)`.
    fn consistent(&self, b: usize, c: usize, e: usize) -> bool {
        let col = self.color(b, c, e);
        for a in 0..b {
            if self.color(a, b, c) == col
                && !(self.color(a, b, e) == col && self.color(a, c, e) == col)
            {
                return false;
            }
        }
        let size = if col { self.s } else { self.blue_n };
        // a monochromatic `size`-set whose three largest elements are b < c < e
        if size < 3 || b < size - 3 {
            return true;
        }
        let mut clique = false;
        for_each_combination(b, size - 3, |rest| {
            let mut set: Vec<usize> = rest.to_vec();
            set.extend([b, c, e]);
            let mut mono = true;
            for_each_combination(set.len(), 3, |t| {
                mono = self.color(set[t[0]], set[t[1]], set[t[2]]) == col;
                mono
            });
            clique = mono;
            !clique
        });
        !clique
    }

    fn run(&mut self, pos: usize) -> Option<bool> {
        self.nodes += 1;
        if self.budget.is_some_and(|b| self.nodes > b) {
            return None;
        }
        if pos == self.triples.len() {
            return Some(true);
        }
        let [a, b, c] = self.triples[pos];
        for col in [true, false] {
            self.red[pos] = col;
            if self.consistent(a, b, c) {
                match self.run(pos + 1) {
                    Some(false) => {}
                    other => return other,
                }
            }
        }
        Some(false)
    }
}

/// Exhaustive backtracking over transitive colourings of the triples of
/// `0..big_n`, pruning on transitivity and on red `s`-sets / blue `n`-sets.
pub fn verify_transitive_ramsey(
    s: usize,
    n: usize,
    big_n: usize,
    budget: Option<u64>,
) -> Result<TransitiveVerdict> {
    if s < 3 || n < 3 {
        return arg("s and n must be at least 3");
    }
    let mut triples = Vec::new();
    for_each_combination(big_n, 3, |t| {
        triples.push([t[0], t[1], t[2]]);
        true
    });
    triples.sort_by_key(|t| [t[2], t[1], t[0]]);
    let mut bt = Backtrack {
        n: big_n,
        s,
        blue_n: n,
        red: vec![false; triples.len()],
        triples,
        nodes: 0,
        budget,
    };
    Ok(match bt.run(0) {
        None => TransitiveVerdict::Inconclusive { nodes: bt.nodes },
        Some(true) => TransitiveVerdict::Counterexample(TransitiveColoring {
            n: bt.n,
            red: bt.red,
        }),
        Some(false) => TransitiveVerdict::Holds,
    })
}
