//! Lower-bound instances and the checks that certify their construction
//! hypotheses.

mod deep;
mod delta;
mod frankl_wilson;
mod onedim;
mod stepup;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

pub use deep::{verify_eps_deep_sampled, verify_eps_increasing, DeepnessCheck};
pub use delta::{check_delta_properties, delta_index, DeltaIndex, DeltaViolation};
pub use frankl_wilson::{frankl_wilson_graph, frankl_wilson_instance, FranklWilsonGraph};
pub use onedim::{one_dim_k4_construction, one_dim_k4_relation, verify_delta_closeness};
pub use stepup::{
    check_slope_observation, for_each_rule_mismatch, slope, step_up, step_up_membership_rule,
    step_up_points, step_up_relation, StepUpPoints,
};

use crate::error::{Error, Result};
use crate::exactmath::rational::{int, ratio};
use crate::exactmath::{MultivariatePolynomial, Rational};
use crate::geometry::Arrangement;
use crate::relation::{Formula, OrderedPointSet, SemiAlgebraicRelation};

/// Size limits applied by every construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ResourceCaps {
    pub max_points: usize,
    pub max_bits: u64,
}

impl Default for ResourceCaps {
    fn default() -> Self {
        Self {
            max_points: 1 << 20,
            max_bits: 1_000_000,
        }
    }
}

impl ResourceCaps {
    pub(crate) fn check_points(&self, count: u128) -> Result<usize> {
        if count > self.max_points as u128 {
            return Err(Error::Resource(format!(
                "{count} points exceeds the cap of {}",
                self.max_points
            )));
        }
        Ok(count as usize)
    }
}

/// Which construction produced an instance, with its parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    Base {
        n: u32,
    },
    StepUp {
        base: Box<ConstructionInstance>,
        radii: Vec<Rational>,
    },
    OneDimK4 {
        n: u32,
        base_b: u64,
    },
    FranklWilson {
        m: usize,
        p: usize,
    },
    OrderType {
        d: usize,
    },
    OneSided {
        arrangement: Arrangement,
    },
    Custom {
        note: String,
    },
}

impl Provenance {
    pub fn kind(&self) -> &'static str {
        match self {
            Provenance::Base { .. } => "base",
            Provenance::StepUp { .. } => "stepup",
            Provenance::OneDimK4 { .. } => "onedim-k4",
            Provenance::FranklWilson { .. } => "frankl-wilson",
            Provenance::OrderType { .. } => "order-type",
            Provenance::OneSided { .. } => "one-sided",
            Provenance::Custom { .. } => "custom",
        }
    }
}

/// A point set with its relation and the perturbation radius for which the
/// construction claims ε-increasing / ε-deep (absent when no claim is made).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionInstance {
    pub points: OrderedPointSet,
    pub relation: SemiAlgebraicRelation,
    pub epsilon: Option<Rational>,
    pub provenance: Provenance,
}

impl ConstructionInstance {
    pub fn new(
        points: OrderedPointSet,
        relation: SemiAlgebraicRelation,
        epsilon: Option<Rational>,
        provenance: Provenance,
    ) -> Result<Self> {
        if points.dim() != relation.point_dim() {
            return Err(Error::Argument(format!(
                "points live in R^{} but the relation expects R^{}",
                points.dim(),
                relation.point_dim()
            )));
        }
        if let Some(e) = &epsilon {
            if *e <= Rational::from_integer(0.into()) {
                return Err(Error::Argument("epsilon must be positive".into()));
            }
        }
        Ok(Self {
            points,
            relation,
            epsilon,
            provenance,
        })
    }
}

/// `twr_k(x)`: `twr_1(x) = x`, `twr_{i+1}(x) = 2^{twr_i(x)}`. Refuses results
/// longer than `max_bits` bits.
pub fn tower(height: u32, x: &BigUint, max_bits: u64) -> Result<BigUint> {
    if height == 0 {
        return Err(Error::Argument("tower height must be at least 1".into()));
    }
    let mut v = x.clone();
    for _ in 1..height {
        // 2^v has v + 1 bits
        let exp = match v.to_u64() {
            Some(e) if e < max_bits => e,
            _ => {
                return Err(Error::Resource(format!(
                    "tower value exceeds {max_bits} bits"
                )))
            }
        };
        v = BigUint::one() << exp;
    }
    if v.bits() > max_bits {
        return Err(Error::Resource(format!(
            "tower value exceeds {max_bits} bits"
        )));
    }
    Ok(v)
}

/// The 3-ary relation on `R^1`: `x1 < x2 < x3` and `x1 + x3 - 2 x2 >= -1/2`.
///
/// On integer points the last atom agrees with `x1 + x3 - 2 x2 >= 0`; the
/// `-1/2` slack keeps the relation unchanged under perturbations of size 1/10.
pub fn base_relation() -> SemiAlgebraicRelation {
    let x = |i| MultivariatePolynomial::var(3, i);
    let polys = vec![
        &x(1) - &x(0),
        &x(2) - &x(1),
        &(&(&x(0) + &x(2)) - &x(1).scale(&int(2)))
            + &MultivariatePolynomial::constant(3, ratio(1, 2)),
    ];
    SemiAlgebraicRelation::new(
        3,
        1,
        polys,
        Formula::and(vec![Formula::gt(0), Formula::gt(1), Formula::ge(2)]),
    )
    .expect("base relation is well formed")
}

/// Points `1, 2, ..., 2^n` on the line with [`base_relation`] and ε = 1/10.
pub fn base_construction(n: u32, caps: &ResourceCaps) -> Result<ConstructionInstance> {
    if n == 0 {
        return Err(Error::Argument("n must be at least 1".into()));
    }
    if n >= 64 {
        return Err(Error::Resource(format!("2^{n} points")));
    }
    let count = caps.check_points(1u128 << n)?;
    let points = OrderedPointSet::from_scalars((1..=count as i64).map(int));
    ConstructionInstance::new(
        points,
        base_relation(),
        Some(ratio(1, 10)),
        Provenance::Base { n },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relation::eval_membership;

    #[test]
    fn tower_examples() {
        let b = |v: u32| BigUint::from(v);
        assert_eq!(tower(1, &b(5), 1000).unwrap(), b(5));
        assert_eq!(tower(3, &b(2), 1000).unwrap(), b(16));
        assert_eq!(tower(2, &b(10), 1000).unwrap(), b(1024));
        assert_eq!(tower(4, &b(2), 1000).unwrap(), b(65536));
        assert!(matches!(tower(5, &b(2), 1000), Err(Error::Resource(_))));
        assert!(tower(0, &b(2), 1000).is_err());
    }

    #[test]
    fn base_membership_examples() {
        let inst = base_construction(2, &ResourceCaps::default()).unwrap();
        assert_eq!(inst.points.len(), 4);
        let m = |t: [usize; 3]| eval_membership(&inst.relation, &inst.points, &t).unwrap();
        assert!(m([0, 1, 2]));
        assert!(m([1, 2, 3]));
        assert!(!m([0, 2, 3]));
        assert!(m([0, 1, 3]));
    }

    #[test]
    fn doubling_witness_is_homogeneous() {
        let inst = base_construction(3, &ResourceCaps::default()).unwrap();
        // {1, 2, 4, 8} at zero-based indices 0, 1, 3, 7
        let idx = [0usize, 1, 3, 7];
        for t in crate::combinatorics::subsets_of(&idx, 3) {
            assert!(eval_membership(&inst.relation, &inst.points, &t).unwrap());
        }
    }

    #[test]
    fn base_caps() {
        let caps = ResourceCaps {
            max_points: 8,
            max_bits: 100,
        };
        assert!(base_construction(3, &caps).is_ok());
        assert!(matches!(
            base_construction(4, &caps),
            Err(Error::Resource(_))
        ));
        assert!(base_construction(0, &caps).is_err());
    }
}
