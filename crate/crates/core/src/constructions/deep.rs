//! ε-increasing and (sampled) ε-deep checks. Balls are max-norm cubes.

use num_bigint::BigInt;
use num_traits::Zero;
use rand::Rng;

use super::ConstructionInstance;
use crate::combinatorics::for_each_combination;
use crate::error::Result;
use crate::exactmath::Rational;
use crate::relation::OrderedPointSet;
use crate::rng;

/// True iff every coordinate of each point exceeds the same coordinate of its
/// predecessor by more than `2 * eps`.
pub fn verify_eps_increasing(points: &OrderedPointSet, eps: &Rational) -> bool {
    let two_eps = eps * Rational::from_integer(2.into());
    points
        .points()
        .windows(2)
        .all(|w| w[0].iter().zip(&w[1]).all(|(a, b)| b - a > two_eps))
}

/// Outcome of [`verify_eps_deep_sampled`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DeepnessCheck {
    /// No sampled perturbation changed any membership.
    Stable { tuples: usize, perturbations: usize },
    /// `tuple` (zero-based) changes membership when moved to `perturbed`.
    Violation {
        tuple: Vec<usize>,
        perturbed: Vec<Vec<Rational>>,
        original: bool,
    },
}

impl DeepnessCheck {
    pub fn is_stable(&self) -> bool {
        matches!(self, DeepnessCheck::Stable { .. })
    }
}

// Exhaustive corner enumeration is used when a tuple has at most this many coordinates.
const MAX_CORNER_COORDS: usize = 6;
const FINE: i64 = 1 << 16;

/// Perturbs every k-tuple within ε-balls and checks that membership never
/// changes. Samples are the cube corners (all of them for small tuples) plus
/// `samples` pseudorandom perturbations per tuple drawn from `seed`. This is a
/// necessary condition only.
pub fn verify_eps_deep_sampled(
    inst: &ConstructionInstance,
    samples: usize,
    seed: u64,
) -> Result<DeepnessCheck> {
    let eps = match &inst.epsilon {
        Some(e) => e.clone(),
        None => {
            return Err(crate::Error::Precondition(
                "instance carries no epsilon".into(),
            ))
        }
    };
    let rel = &inst.relation;
    let k = rel.arity();
    let d = rel.point_dim();
    let width = k * d;
    let mut result: Option<DeepnessCheck> = None;
    let mut tuples = 0usize;
    let mut perturbations = 0usize;
    let mut stream = 0u64;
    let neg_eps = -eps.clone();
    for_each_combination(inst.points.len(), k, |t| {
        let base: Vec<Rational> = t
            .iter()
            .flat_map(|&i| inst.points.point(i).iter().cloned())
            .collect();
        let original = rel.evaluate_unchecked(&base);
        let mut rng = rng::stream(seed, stream);
        stream += 1;
        tuples += 1;

        let mut offsets: Vec<Vec<Rational>> = Vec::new();
        if width <= MAX_CORNER_COORDS {
            for mask in 0u32..(1 << width) {
                offsets.push(
                    (0..width)
                        .map(|c| {
                            if mask >> c & 1 == 1 {
                                eps.clone()
                            } else {
                                neg_eps.clone()
                            }
                        })
                        .collect(),
                );
            }
        }
        for s in 0..samples {
            let offs = (0..width)
                .map(|_| {
                    if s % 2 == 0 {
                        if rng.random::<bool>() {
                            eps.clone()
                        } else {
                            neg_eps.clone()
                        }
                    } else {
                        let r = rng.random_range(-FINE..=FINE);
                        &eps * Rational::new(BigInt::from(r), BigInt::from(FINE))
                    }
                })
                .collect();
            offsets.push(offs);
        }
        for off in offsets {
            if off.iter().all(|o| o.is_zero()) {
                continue;
            }
            perturbations += 1;
            let moved: Vec<Rational> = base.iter().zip(&off).map(|(a, b)| a + b).collect();
            if rel.evaluate_unchecked(&moved) != original {
                result = Some(DeepnessCheck::Violation {
                    tuple: t.to_vec(),
                    perturbed: moved.chunks(d.max(1)).map(|c| c.to_vec()).collect(),
                    original,
                });
                return false;
            }
        }
        true
    });
    Ok(result.unwrap_or(DeepnessCheck::Stable {
        tuples,
        perturbations,
    }))
}
