//! Independent oracles shared by the integration tests. Nothing here calls
//! into the library's own search or root-counting code.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use semiramsey::{eval_membership, OrderedPointSet, Rational, SemiAlgebraicRelation};

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

// ---- dense univariate polynomials, lowest degree first ----

pub fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

pub fn eval(p: &[Rational], x: &Rational) -> Rational {
    p.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
}

fn derivative(p: &[Rational]) -> Vec<Rational> {
    trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * int(i as i64))
            .collect(),
    )
}

/// Quotient and remainder of `a / b`.
fn divmod(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    let mut q = vec![Rational::zero(); r.len().saturating_sub(db).max(1)];
    while r.len() > db && !r.is_empty() {
        let shift = r.len() - 1 - db;
        let c = r.last().unwrap() / b.last().unwrap();
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] -= &c * bc;
        }
        q[shift] = c;
        r = trim(r);
    }
    (trim(q), r)
}

fn gcd(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let (_, r) = divmod(&a, &b);
        a = b;
        b = r;
    }
    a
}

fn squarefree(p: &[Rational]) -> Vec<Rational> {
    let g = gcd(p, &derivative(p));
    if g.len() <= 1 {
        return p.to_vec();
    }
    divmod(p, &g).0
}

/// `p(x + c)` by repeated synthetic division.
fn taylor_shift(p: &[Rational], c: &Rational) -> Vec<Rational> {
    let mut a = p.to_vec();
    let n = a.len();
    for i in 0..n {
        for j in (i..n - 1).rev() {
            let t = &a[j + 1] * c;
            a[j] += t;
        }
    }
    a
}

/// `p(s x)`.
fn scale_arg(p: &[Rational], s: &Rational) -> Vec<Rational> {
    let mut pw = Rational::one();
    p.iter()
        .map(|c| {
            let v = c * &pw;
            pw *= s;
            v
        })
        .collect()
}

fn sign_variations(p: &[Rational]) -> usize {
    let signs: Vec<bool> = p
        .iter()
        .filter(|c| !c.is_zero())
        .map(|c| c.is_positive())
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Roots in `(0, 1)` of a squarefree polynomial by Descartes' rule on the
/// Möbius image `(1 + t)^n p(1 / (1 + t))`, bisecting until each piece has
/// zero or one variation.
fn roots_unit_interval(p: &[Rational]) -> usize {
    let rev: Vec<Rational> = p.iter().rev().cloned().collect();
    let m = taylor_shift(&rev, &Rational::one());
    match sign_variations(&m) {
        0 => 0,
        1 => 1,
        _ => {
            let half = ratio(1, 2);
            let mid = if eval(p, &half).is_zero() { 1 } else { 0 };
            let left = scale_arg(p, &half);
            let right = taylor_shift(&scale_arg(p, &half), &Rational::one());
            mid + roots_unit_interval(&left) + roots_unit_interval(&right)
        }
    }
}

/// Distinct real roots of `p` in the open interval `(a, b)`.
pub fn descartes_root_count(p: &[Rational], a: &Rational, b: &Rational) -> usize {
    let p = trim(p.to_vec());
    if p.len() <= 1 {
        return 0;
    }
    let sf = squarefree(&p);
    // x = a + (b - a) t
    let moved = scale_arg(&taylor_shift(&sf, a), &(b - a));
    roots_unit_interval(&moved)
}

/// Product of `(x - r)` over `roots`, times `lead`.
pub fn from_roots(roots: &[Rational], lead: Rational) -> Vec<Rational> {
    let mut p = vec![lead];
    for r in roots {
        let mut next = vec![Rational::zero(); p.len() + 1];
        for (i, c) in p.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= c * r;
        }
        p = next;
    }
    p
}

// ---- homogeneous subsets by plain enumeration ----

/// Membership of every k-subset, evaluated directly.
pub fn membership_map(
    points: &OrderedPointSet,
    rel: &SemiAlgebraicRelation,
) -> std::collections::HashMap<Vec<usize>, bool> {
    let mut m = std::collections::HashMap::new();
    let n = points.len();
    let k = rel.arity();
    let mut c: Vec<usize> = (0..k).collect();
    if k > n {
        return m;
    }
    loop {
        m.insert(c.clone(), eval_membership(rel, points, &c).unwrap());
        let mut i = k;
        loop {
            if i == 0 {
                return m;
            }
            i -= 1;
            if c[i] < n - k + i {
                c[i] += 1;
                for j in i + 1..k {
                    c[j] = c[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// All k-subsets of `items` agree in the table; stops at the first disagreement.
fn uniform(items: &[usize], k: usize, table: &std::collections::HashMap<Vec<usize>, bool>) -> bool {
    fn go(
        items: &[usize],
        k: usize,
        start: usize,
        cur: &mut Vec<usize>,
        table: &std::collections::HashMap<Vec<usize>, bool>,
        first: &mut Option<bool>,
    ) -> bool {
        if cur.len() == k {
            let v = table[cur.as_slice()];
            return *first.get_or_insert(v) == v;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            let ok = go(items, k, i + 1, cur, table, first);
            cur.pop();
            if !ok {
                return false;
            }
        }
        true
    }
    go(items, k, 0, &mut Vec::new(), table, &mut None)
}

/// Largest homogeneous subset size over all `2^n` subsets (`n <= 20`).
pub fn brute_force_hom(points: &OrderedPointSet, rel: &SemiAlgebraicRelation) -> usize {
    let n = points.len();
    assert!(n <= 20);
    let k = rel.arity();
    let table = membership_map(points, rel);
    let mut best = n.min(k - 1);
    let mut masks: Vec<u32> = (0..1u32 << n).collect();
    masks.sort_by_key(|m| std::cmp::Reverse(m.count_ones()));
    for mask in masks {
        let size = mask.count_ones() as usize;
        if size <= best {
            break;
        }
        let items: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        if uniform(&items, k, &table) {
            best = size;
        }
    }
    best
}
