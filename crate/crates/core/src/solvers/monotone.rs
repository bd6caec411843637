use std::collections::HashSet;

use crate::error::{arg, Result};
use crate::exactmath::Rational;

/// Zero-based positions of a longest monotone subsequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotoneSubsequence {
    pub indices: Vec<usize>,
    pub increasing: bool,
}

impl MonotoneSubsequence {
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

/// Patience sorting with back-pointers; `O(N log N)`.
fn longest_increasing(seq: &[&Rational]) -> Vec<usize> {
    let mut tails: Vec<usize> = Vec::new();
    let mut prev = vec![usize::MAX; seq.len()];
    for (i, x) in seq.iter().enumerate() {
        let pos = tails.partition_point(|&t| seq[t] < *x);
        if pos > 0 {
            prev[i] = tails[pos - 1];
        }
        if pos == tails.len() {
            tails.push(i);
        } else {
            tails[pos] = i;
        }
    }
    let mut out = Vec::with_capacity(tails.len());
    let mut cur = tails.last().copied();
    while let Some(i) = cur {
        out.push(i);
        cur = (prev[i] != usize::MAX).then(|| prev[i]);
    }
    out.reverse();
    out
}

/// A longest increasing or decreasing subsequence of distinct values,
/// preferring increasing on ties.
pub fn longest_monotone_subsequence(seq: &[Rational]) -> Result<MonotoneSubsequence> {
    let mut seen = HashSet::new();
    if let Some(dup) = seq.iter().find(|x| !seen.insert(*x)) {
        return arg(format!("duplicate entry {dup}"));
    }
    let refs: Vec<&Rational> = seq.iter().collect();
    let inc = longest_increasing(&refs);
    let negated: Vec<Rational> = seq.iter().map(|x| -x).collect();
    let dec = longest_increasing(&negated.iter().collect::<Vec<_>>());
    Ok(if dec.len() > inc.len() {
        MonotoneSubsequence {
            indices: dec,
            increasing: false,
        }
    } else {
        MonotoneSubsequence {
            indices: inc,
            increasing: true,
        }
    })
}
