//! Order types and one-sided hyperplane arrangements as semi-algebraic
//! relations, with the exact predicates behind them.

mod det;

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

pub use det::{bareiss_determinant, determinant_sign, rational_determinant};

use crate::combinatorics::for_each_combination;
use crate::constructions::{ConstructionInstance, Provenance};
use crate::error::{arg, Error, Result};
use crate::exactmath::rational::sign;
use crate::exactmath::{MultivariatePolynomial, Rational};
use crate::relation::{Formula, OrderedPointSet, SemiAlgebraicRelation};

/// `coeffs · x = offset`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Hyperplane {
    coeffs: Vec<Rational>,
    offset: Rational,
}

impl Hyperplane {
    pub fn new(coeffs: Vec<Rational>, offset: Rational) -> Result<Self> {
        if coeffs.iter().all(Zero::is_zero) {
            return arg("hyperplane coefficients are all zero");
        }
        Ok(Self { coeffs, offset })
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn offset(&self) -> &Rational {
        &self.offset
    }

    /// `coeffs · x - offset`.
    pub fn residual(&self, x: &[Rational]) -> Rational {
        self.coeffs
            .iter()
            .zip(x)
            .map(|(a, v)| a * v)
            .sum::<Rational>()
            - &self.offset
    }

    /// The point `(a_1, ..., a_d, b)` of `R^{d+1}`.
    pub fn representation(&self) -> Vec<Rational> {
        let mut v = self.coeffs.clone();
        v.push(self.offset.clone());
        v
    }

    /// True when `other` describes the same hyperplane up to a nonzero factor.
    pub fn same_as(&self, other: &Hyperplane) -> bool {
        let (a, b) = (self.representation(), other.representation());
        a.len() == b.len()
            && (0..a.len()).all(|i| (i + 1..a.len()).all(|j| &a[i] * &b[j] == &a[j] * &b[i]))
    }
}

/// Ordered hyperplanes of a common dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrangement {
    dim: usize,
    hyperplanes: Vec<Hyperplane>,
}

impl Arrangement {
    pub fn new(dim: usize, hyperplanes: Vec<Hyperplane>) -> Result<Self> {
        if dim == 0 {
            return arg("arrangement dimension must be positive");
        }
        if let Some(i) = hyperplanes.iter().position(|h| h.dim() != dim) {
            return arg(format!("hyperplane {i} does not live in R^{dim}"));
        }
        Ok(Self { dim, hyperplanes })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn select(&self, indices: &[usize]) -> Self {
        Self {
            dim: self.dim,
            hyperplanes: indices
                .iter()
                .map(|&i| self.hyperplanes[i].clone())
                .collect(),
        }
    }

    /// Representation points in `R^{d+1}`.
    pub fn representation(&self) -> OrderedPointSet {
        OrderedPointSet::new(
            self.dim + 1,
            self.hyperplanes
                .iter()
                .map(Hyperplane::representation)
                .collect(),
        )
        .expect("dimensions checked on construction")
    }
}

/// Outcome of a general-position check. Witness indices are zero-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeneralPosition {
    Holds,
    /// A tuple whose determinant vanishes.
    Singular(Vec<usize>),
    /// Two d-subsets of hyperplanes meeting in the same vertex.
    Coincident(Vec<usize>, Vec<usize>),
}

impl GeneralPosition {
    pub fn holds(&self) -> bool {
        matches!(self, GeneralPosition::Holds)
    }
}

/// Sign of `det` of the matrix with columns `(1, p_j)`.
pub fn orientation(points: &[&[Rational]]) -> Result<i8> {
    let d = points
        .len()
        .checked_sub(1)
        .ok_or_else(|| Error::Argument("orientation needs points".into()))?;
    if let Some(p) = points.iter().find(|p| p.len() != d) {
        return arg(format!(
            "orientation of {} points needs R^{d}, got R^{}",
            d + 1,
            p.len()
        ));
    }
    let one = Rational::from_integer(1.into());
    let rows: Vec<Vec<Rational>> = (0..=d)
        .map(|r| {
            points
                .iter()
                .map(|p| {
                    if r == 0 {
                        one.clone()
                    } else {
                        p[r - 1].clone()
                    }
                })
                .collect()
        })
        .collect();
    Ok(determinant_sign(&rows))
}

/// Laplace expansion of a square matrix of polynomials.
fn symbolic_determinant(
    m: &[Vec<MultivariatePolynomial>],
    num_vars: usize,
) -> MultivariatePolynomial {
    let n = m.len();
    if n == 0 {
        return MultivariatePolynomial::one(num_vars);
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut total = MultivariatePolynomial::zero(num_vars);
    for c in 0..n {
        if m[0][c].is_zero() {
            continue;
        }
        let minor: Vec<Vec<MultivariatePolynomial>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(j, _)| j != c)
                    .map(|(_, p)| p.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][c] * &symbolic_determinant(&minor, num_vars);
        total = if c % 2 == 0 {
            total + term
        } else {
            total - term
        };
    }
    total
}

/// Arity `d + 1` relation on `R^d`: positive orientation.
pub fn order_type_relation(d: usize) -> Result<SemiAlgebraicRelation> {
    if d == 0 {
        return arg("order type relation needs d >= 1");
    }
    let nv = (d + 1) * d;
    let rows: Vec<Vec<MultivariatePolynomial>> = (0..=d)
        .map(|r| {
            (0..=d)
                .map(|slot| {
                    if r == 0 {
                        MultivariatePolynomial::one(nv)
                    } else {
                        MultivariatePolynomial::var(nv, slot * d + r - 1)
                    }
                })
                .collect()
        })
        .collect();
    SemiAlgebraicRelation::new(
        d + 1,
        d,
        vec![symbolic_determinant(&rows, nv)],
        Formula::gt(0),
    )
}

pub fn order_type_instance(points: OrderedPointSet) -> Result<ConstructionInstance> {
    let d = points.dim();
    ConstructionInstance::new(
        points,
        order_type_relation(d)?,
        None,
        Provenance::OrderType { d },
    )
}

/// Checks that no `d + 1` points lie on a common hyperplane.
pub fn general_position_points(points: &OrderedPointSet) -> GeneralPosition {
    let d = points.dim();
    let mut witness = None;
    for_each_combination(points.len(), d + 1, |c| {
        let tuple: Vec<&[Rational]> = c.iter().map(|&i| points.point(i)).collect();
        if orientation(&tuple).expect("dimensions match") == 0 {
            witness = Some(c.to_vec());
            return false;
        }
        true
    });
    witness.map_or(GeneralPosition::Holds, GeneralPosition::Singular)
}

/// The unique common point of `d` hyperplanes in `R^d`.
pub fn hyperplane_intersection(hs: &[&Hyperplane]) -> Result<Vec<Rational>> {
    let d = hs.len();
    if d == 0 || hs.iter().any(|h| h.dim() != d) {
        return arg(format!("need exactly d hyperplanes in R^d, got {d}"));
    }
    let rows: Vec<Vec<Rational>> = hs.iter().map(|h| h.representation()).collect();
    let (m, _) = det::integerize_rows(&rows);
    let a: Vec<Vec<BigInt>> = m.iter().map(|r| r[..d].to_vec()).collect();
    let den = bareiss_determinant(a.clone());
    if den.is_zero() {
        return Err(Error::Degenerate("singular hyperplane system".into()));
    }
    Ok((0..d)
        .map(|col| {
            let mut ac = a.clone();
            for (row, full) in ac.iter_mut().zip(&m) {
                row[col] = full[d].clone();
            }
            Rational::new(bareiss_determinant(ac), den.clone())
        })
        .collect())
}

type Vertices = Vec<(Vec<usize>, Vec<Rational>)>;

/// Vertices of all `d`-subsets, keyed by the zero-based subset; a singular
/// subset is returned as the error.
fn vertices(a: &Arrangement) -> std::result::Result<Vertices, Vec<usize>> {
    let mut out = Vec::new();
    let mut singular = None;
    for_each_combination(a.len(), a.dim(), |c| {
        let hs: Vec<&Hyperplane> = c.iter().map(|&i| &a.hyperplanes[i]).collect();
        match hyperplane_intersection(&hs) {
            Ok(v) => {
                out.push((c.to_vec(), v));
                true
            }
            Err(_) => {
                singular = Some(c.to_vec());
                false
            }
        }
    });
    match singular {
        Some(c) => Err(c),
        None => Ok(out),
    }
}

/// Every `d` members meet in a single point, and distinct `d`-subsets meet
/// in distinct points.
pub fn general_position_hyperplanes(a: &Arrangement) -> GeneralPosition {
    let verts = match vertices(a) {
        Ok(v) => v,
        Err(c) => return GeneralPosition::Singular(c),
    };
    let mut seen: HashMap<&[Rational], &[usize]> = HashMap::new();
    for (c, v) in &verts {
        if let Some(prev) = seen.insert(v, c) {
            return GeneralPosition::Coincident(prev.to_vec(), c.clone());
        }
    }
    GeneralPosition::Holds
}

/// Arity `d` relation on representation points `(a_1..a_d, b)` of `R^{d+1}`:
/// the common vertex has positive last coordinate. Polynomial 0 is Cramer's
/// numerator for `x_d`, polynomial 1 the coefficient determinant.
pub fn one_sided_relation(d: usize) -> Result<SemiAlgebraicRelation> {
    if d < 2 {
        return arg("one-sided relation needs d >= 2");
    }
    let w = d + 1;
    let nv = d * w;
    let matrix = |last_col: usize| -> Vec<Vec<MultivariatePolynomial>> {
        (0..d)
            .map(|slot| {
                (0..d)
                    .map(|j| {
                        let c = if j == d - 1 { last_col } else { j };
                        MultivariatePolynomial::var(nv, slot * w + c)
                    })
                    .collect()
            })
            .collect()
    };
    let num = symbolic_determinant(&matrix(d), nv);
    let den = symbolic_determinant(&matrix(d - 1), nv);
    let formula = Formula::or(vec![
        Formula::and(vec![Formula::gt(0), Formula::gt(1)]),
        Formula::and(vec![
            Formula::not(Formula::ge(0)),
            Formula::not(Formula::ge(1)),
        ]),
    ]);
    SemiAlgebraicRelation::new(d, w, vec![num, den], formula)
}

/// Membership of a `d`-tuple under [`one_sided_relation`], plus a flag set
/// when the tuple is singular or its vertex lies on `x_d = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OneSidedMembership {
    pub member: bool,
    pub degenerate: bool,
}

pub fn one_sided_membership(
    relation: &SemiAlgebraicRelation,
    reps: &[&[Rational]],
) -> Result<OneSidedMembership> {
    let coords: Vec<Rational> = reps.iter().flat_map(|r| r.iter().cloned()).collect();
    let member = relation.evaluate(&coords)?;
    let degenerate = relation.polys()[..2]
        .iter()
        .any(|p| p.eval_unchecked(&coords).is_zero());
    Ok(OneSidedMembership { member, degenerate })
}

pub fn one_sided_instance(arrangement: Arrangement) -> Result<ConstructionInstance> {
    let rel = one_sided_relation(arrangement.dim())?;
    ConstructionInstance::new(
        arrangement.representation(),
        rel,
        None,
        Provenance::OneSided { arrangement },
    )
}

/// All vertices strictly on one side of `reference`. Requires general position;
/// a vertex on the reference hyperplane makes the answer false.
pub fn is_one_sided_wrt(a: &Arrangement, reference: &Hyperplane) -> Result<bool> {
    if reference.dim() != a.dim() {
        return arg("reference hyperplane dimension mismatch");
    }
    match general_position_hyperplanes(a) {
        GeneralPosition::Holds => {}
        gp => {
            return Err(Error::Precondition(format!(
                "arrangement not in general position: {gp:?}"
            )))
        }
    }
    let verts = vertices(a).expect("general position checked");
    let signs: Vec<i8> = verts
        .iter()
        .map(|(_, v)| sign(&reference.residual(v)))
        .collect();
    Ok(signs.iter().all(|&s| s == 1) || signs.iter().all(|&s| s == -1))
}

/// [`is_one_sided_wrt`] the hyperplane `x_d = 0`.
pub fn is_one_sided(a: &Arrangement) -> Result<bool> {
    let d = a.dim();
    let mut e = vec![Rational::zero(); d];
    e[d - 1] = Rational::from_integer(1.into());
    is_one_sided_wrt(a, &Hyperplane::new(e, Rational::zero())?)
}

/// Members of an arrangement restricted to one of its hyperplanes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Projection {
    /// The remaining members, in order, in the chart coordinates.
    pub arrangement: Arrangement,
    /// Zero-based indices in the original arrangement of those members.
    pub members: Vec<usize>,
    /// Image of `x_d = 0`, oriented so that its residual at a chart point
    /// equals `x_d` of the corresponding point of the pivot. `None` when
    /// `x_d` is constant on the pivot.
    pub reference: Option<Hyperplane>,
    /// The original axis eliminated by the chart.
    pub dropped_axis: usize,
}

/// Intersects every other member with the pivot and writes the results in
/// the chart of the pivot obtained by eliminating its largest-magnitude
/// coefficient axis (the later axis on ties).
pub fn project_onto_hyperplane(a: &Arrangement, pivot: usize) -> Result<Projection> {
    let d = a.dim();
    if d < 3 {
        return arg("projection needs d >= 3");
    }
    let p = a
        .hyperplanes
        .get(pivot)
        .ok_or_else(|| Error::Argument(format!("pivot {pivot} out of range")))?;
    let k = (0..d).fold(0, |best, j| {
        if p.coeffs[j].abs() >= p.coeffs[best].abs() {
            j
        } else {
            best
        }
    });
    let pk = &p.coeffs[k];
    let keep: Vec<usize> = (0..d).filter(|&j| j != k).collect();
    // x_k = (b_p - sum_{j != k} a_pj x_j) / a_pk
    let substitute = |h: &Hyperplane| -> (Vec<Rational>, Rational) {
        let t = &h.coeffs[k] / pk;
        let coeffs = keep
            .iter()
            .map(|&j| &h.coeffs[j] - &t * &p.coeffs[j])
            .collect();
        (coeffs, &h.offset - &t * &p.offset)
    };
    let mut hs = Vec::new();
    let mut members = Vec::new();
    for (i, h) in a.hyperplanes.iter().enumerate() {
        if i == pivot {
            continue;
        }
        let (coeffs, offset) = substitute(h);
        if coeffs.iter().all(Zero::is_zero) {
            return Err(Error::Degenerate(format!(
                "hyperplane {i} is parallel to the pivot"
            )));
        }
        hs.push(Hyperplane { coeffs, offset });
        members.push(i);
    }
    let reference = if k == d - 1 {
        let coeffs = keep.iter().map(|&j| -&p.coeffs[j] / pk).collect();
        Hyperplane::new(coeffs, -&p.offset / pk).ok()
    } else {
        let mut e = vec![Rational::zero(); d - 1];
        e[d - 2] = Rational::from_integer(1.into());
        Hyperplane::new(e, Rational::zero()).ok()
    };
    Ok(Projection {
        arrangement: Arrangement {
            dim: d - 1,
            hyperplanes: hs,
        },
        members,
        reference,
        dropped_axis: k,
    })
}

/// Lifts a chart point of [`Projection`] back onto the pivot hyperplane.
pub fn lift_from_chart(
    a: &Arrangement,
    pivot: usize,
    proj: &Projection,
    x: &[Rational],
) -> Vec<Rational> {
    let p = &a.hyperplanes[pivot];
    let k = proj.dropped_axis;
    let mut out = Vec::with_capacity(a.dim());
    let mut it = x.iter();
    let mut acc = p.offset.clone();
    for j in 0..a.dim() {
        if j == k {
            out.push(Rational::zero());
        } else {
            let v = it
                .next()
                .expect("chart point has d - 1 coordinates")
                .clone();
            acc -= &p.coeffs[j] * &v;
            out.push(v);
        }
    }
    out[k] = acc / &p.coeffs[k];
    out
}

/// Every point is a vertex of the convex hull. Points must be in general
/// position in the plane.
pub fn is_convex_position(points: &OrderedPointSet) -> Result<bool> {
    if points.dim() != 2 {
        return arg("convex position is decided in the plane");
    }
    if let GeneralPosition::Singular(t) = general_position_points(points) {
        return Err(Error::Precondition(format!("points {t:?} are collinear")));
    }
    let n = points.len();
    let o = |i: usize, j: usize, k: usize| {
        orientation(&[points.point(i), points.point(j), points.point(k)]).unwrap()
    };
    let mut convex = true;
    for_each_combination(n, 3, |t| {
        let (a, b, c) = (t[0], t[1], t[2]);
        let s = o(a, b, c);
        if (0..n).any(|q| {
            q != a && q != b && q != c && o(a, b, q) == s && o(b, c, q) == s && o(c, a, q) == s
        }) {
            convex = false;
        }
        convex
    });
    Ok(convex)
}

#[cfg(test)]
mod tests;
