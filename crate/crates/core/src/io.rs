//! JSON encodings. Rationals are `"num/den"` strings; point indices in result
//! and hypergraph files are one-based, everywhere else zero-based.

use serde_json::{json, Map, Value};

use crate::constructions::{ConstructionInstance, Provenance};
use crate::error::{Error, Result};
use crate::exactmath::rational;
use crate::exactmath::{MultivariatePolynomial, Rational};
use crate::geometry::{Arrangement, Hyperplane};
use crate::relation::{Comparison, Formula, OrderedPointSet, SemiAlgebraicRelation};
use crate::solvers::{HomogeneousResult, Hypergraph3, Polarity, SearchStats};

fn bad(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key)
        .ok_or_else(|| bad(format!("missing field {key:?}")))
}

fn as_usize(v: &Value, what: &str) -> Result<usize> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| bad(format!("{what} must be a non-negative integer")))
}

fn as_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| bad(format!("{what} must be an array")))
}

fn as_str<'a>(v: &'a Value, what: &str) -> Result<&'a str> {
    v.as_str()
        .ok_or_else(|| bad(format!("{what} must be a string")))
}

pub fn rational_to_json(r: &Rational) -> Value {
    Value::String(rational::to_string(r))
}

pub fn rational_from_json(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => rational::parse(s),
        Value::Number(n) if n.is_i64() => Ok(rational::int(n.as_i64().expect("checked"))),
        _ => Err(bad("rational must be a \"num/den\" string")),
    }
}

fn rationals_to_json(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rational_to_json).collect())
}

fn rationals_from_json(v: &Value) -> Result<Vec<Rational>> {
    as_array(v, "coordinate list")?
        .iter()
        .map(rational_from_json)
        .collect()
}

pub fn poly_to_json(p: &MultivariatePolynomial) -> Value {
    let terms: Vec<Value> = p
        .terms()
        .map(|(e, c)| json!({"c": rational::to_string(c), "e": e}))
        .collect();
    json!({"vars": p.num_vars(), "terms": terms})
}

pub fn poly_from_json(v: &Value) -> Result<MultivariatePolynomial> {
    let vars = as_usize(field(v, "vars")?, "vars")?;
    let mut terms = Vec::new();
    for t in as_array(field(v, "terms")?, "terms")? {
        let c = rational_from_json(field(t, "c")?)?;
        let e = as_array(field(t, "e")?, "exponents")?
            .iter()
            .map(|x| {
                x.as_u64()
                    .and_then(|x| u32::try_from(x).ok())
                    .ok_or_else(|| bad("bad exponent"))
            })
            .collect::<Result<Vec<u32>>>()?;
        terms.push((e, c));
    }
    MultivariatePolynomial::from_terms(vars, terms).map_err(|e| bad(e.to_string()))
}

pub fn formula_to_json(f: &Formula) -> Value {
    match f {
        Formula::And(c) => {
            json!({"op": "and", "children": c.iter().map(formula_to_json).collect::<Vec<_>>()})
        }
        Formula::Or(c) => {
            json!({"op": "or", "children": c.iter().map(formula_to_json).collect::<Vec<_>>()})
        }
        Formula::Not(c) => json!({"op": "not", "child": formula_to_json(c)}),
        Formula::Atom(a) => json!({"op": "atom", "poly": a.poly, "cmp": a.cmp.as_str()}),
    }
}

pub fn formula_from_json(v: &Value) -> Result<Formula> {
    let children = |v: &Value| -> Result<Vec<Formula>> {
        as_array(field(v, "children")?, "children")?
            .iter()
            .map(formula_from_json)
            .collect()
    };
    match as_str(field(v, "op")?, "op")? {
        "and" => Ok(Formula::And(children(v)?)),
        "or" => Ok(Formula::Or(children(v)?)),
        "not" => Ok(Formula::not(formula_from_json(field(v, "child")?)?)),
        "atom" => {
            let poly = as_usize(field(v, "poly")?, "poly")?;
            let cmp = Comparison::parse(as_str(field(v, "cmp")?, "cmp")?)
                .map_err(|e| bad(e.to_string()))?;
            Ok(Formula::atom(poly, cmp))
        }
        other => Err(bad(format!("unknown formula op {other:?}"))),
    }
}

pub fn relation_to_json(r: &SemiAlgebraicRelation) -> Value {
    json!({
        "arity": r.arity(),
        "dim": r.point_dim(),
        "polys": r.polys().iter().map(poly_to_json).collect::<Vec<_>>(),
        "formula": formula_to_json(r.formula()),
    })
}

pub fn relation_from_json(v: &Value) -> Result<SemiAlgebraicRelation> {
    let arity = as_usize(field(v, "arity")?, "arity")?;
    let dim = as_usize(field(v, "dim")?, "dim")?;
    let polys = as_array(field(v, "polys")?, "polys")?
        .iter()
        .map(poly_from_json)
        .collect::<Result<Vec<_>>>()?;
    let formula = formula_from_json(field(v, "formula")?)?;
    SemiAlgebraicRelation::new(arity, dim, polys, formula).map_err(|e| bad(e.to_string()))
}

pub fn points_to_json(p: &OrderedPointSet) -> Value {
    json!({"dim": p.dim(), "points": p.points().iter().map(|x| rationals_to_json(x)).collect::<Vec<_>>()})
}

pub fn points_from_json(v: &Value) -> Result<OrderedPointSet> {
    let dim = as_usize(field(v, "dim")?, "dim")?;
    let pts = as_array(field(v, "points")?, "points")?
        .iter()
        .map(rationals_from_json)
        .collect::<Result<Vec<_>>>()?;
    OrderedPointSet::new(dim, pts).map_err(|e| bad(e.to_string()))
}

pub fn hyperplane_to_json(h: &Hyperplane) -> Value {
    json!({"a": rationals_to_json(h.coeffs()), "b": rational_to_json(h.offset())})
}

pub fn hyperplane_from_json(v: &Value) -> Result<Hyperplane> {
    Hyperplane::new(
        rationals_from_json(field(v, "a")?)?,
        rational_from_json(field(v, "b")?)?,
    )
    .map_err(|e| bad(e.to_string()))
}

pub fn arrangement_to_json(a: &Arrangement) -> Value {
    Value::Array(a.hyperplanes().iter().map(hyperplane_to_json).collect())
}

pub fn arrangement_from_json(v: &Value) -> Result<Arrangement> {
    let hs = as_array(v, "arrangement")?
        .iter()
        .map(hyperplane_from_json)
        .collect::<Result<Vec<_>>>()?;
    let dim = hs
        .first()
        .map(Hyperplane::dim)
        .ok_or_else(|| bad("empty arrangement"))?;
    Arrangement::new(dim, hs).map_err(|e| bad(e.to_string()))
}

pub fn provenance_to_json(p: &Provenance) -> Value {
    let mut m = Map::new();
    m.insert("kind".into(), p.kind().into());
    match p {
        Provenance::Base { n } => {
            m.insert("n".into(), (*n).into());
        }
        Provenance::StepUp { base, radii } => {
            m.insert("base".into(), instance_to_json(base));
            m.insert("radii".into(), rationals_to_json(radii));
        }
        Provenance::OneDimK4 { n, base_b } => {
            m.insert("n".into(), (*n).into());
            m.insert("b".into(), (*base_b).into());
        }
        Provenance::FranklWilson { m: mm, p } => {
            m.insert("m".into(), (*mm).into());
            m.insert("p".into(), (*p).into());
        }
        Provenance::OrderType { d } => {
            m.insert("d".into(), (*d).into());
        }
        Provenance::OneSided { arrangement } => {
            m.insert("arrangement".into(), arrangement_to_json(arrangement));
        }
        Provenance::Custom { note } => {
            m.insert("note".into(), note.clone().into());
        }
    }
    Value::Object(m)
}

pub fn provenance_from_json(v: &Value) -> Result<Provenance> {
    let num = |key: &str| as_usize(field(v, key)?, key);
    let small = |key: &str| -> Result<u32> {
        u32::try_from(num(key)?).map_err(|_| bad(format!("{key} too large")))
    };
    Ok(match as_str(field(v, "kind")?, "kind")? {
        "base" => Provenance::Base { n: small("n")? },
        "stepup" => Provenance::StepUp {
            base: Box::new(instance_from_json(field(v, "base")?)?),
            radii: rationals_from_json(field(v, "radii")?)?,
        },
        "onedim-k4" => Provenance::OneDimK4 {
            n: small("n")?,
            base_b: num("b")? as u64,
        },
        "frankl-wilson" => Provenance::FranklWilson {
            m: num("m")?,
            p: num("p")?,
        },
        "order-type" => Provenance::OrderType { d: num("d")? },
        "one-sided" => Provenance::OneSided {
            arrangement: arrangement_from_json(field(v, "arrangement")?)?,
        },
        "custom" => Provenance::Custom {
            note: as_str(field(v, "note")?, "note")?.to_string(),
        },
        other => return Err(bad(format!("unknown provenance kind {other:?}"))),
    })
}

pub fn instance_to_json(inst: &ConstructionInstance) -> Value {
    json!({
        "points": points_to_json(&inst.points),
        "relation": relation_to_json(&inst.relation),
        "epsilon": inst.epsilon.as_ref().map_or(Value::Null, rational_to_json),
        "provenance": provenance_to_json(&inst.provenance),
    })
}

/// Reads an instance bundle. A bare `{"points", "relation"}` object is
/// accepted with custom provenance.
pub fn instance_from_json(v: &Value) -> Result<ConstructionInstance> {
    let points = points_from_json(field(v, "points")?)?;
    let relation = relation_from_json(field(v, "relation")?)?;
    let epsilon = match v.get("epsilon") {
        None | Some(Value::Null) => None,
        Some(e) => Some(rational_from_json(e)?),
    };
    let provenance = match v.get("provenance") {
        None | Some(Value::Null) => Provenance::Custom {
            note: String::new(),
        },
        Some(p) => provenance_from_json(p)?,
    };
    ConstructionInstance::new(points, relation, epsilon, provenance).map_err(|e| bad(e.to_string()))
}

pub fn result_to_json(r: &HomogeneousResult) -> Value {
    json!({
        "subset": r.subset.iter().map(|i| i + 1).collect::<Vec<_>>(),
        "polarity": r.polarity.as_str(),
        "certified": r.certified,
        "maximum": r.maximum,
        "stats": {
            "nodes": r.stats.nodes,
            "classes_per_level": r.stats.classes_per_level,
            "depths": r.stats.depths,
        },
    })
}

fn one_based(v: &Value, what: &str) -> Result<usize> {
    match as_usize(v, what)? {
        0 => Err(bad(format!("{what} indices are one-based"))),
        i => Ok(i - 1),
    }
}

fn usize_list(v: &Value, what: &str) -> Result<Vec<usize>> {
    as_array(v, what)?
        .iter()
        .map(|x| as_usize(x, what))
        .collect()
}

pub fn result_from_json(v: &Value) -> Result<HomogeneousResult> {
    let subset = as_array(field(v, "subset")?, "subset")?
        .iter()
        .map(|x| one_based(x, "subset"))
        .collect::<Result<_>>()?;
    let polarity = match as_str(field(v, "polarity")?, "polarity")? {
        "in" => Polarity::In,
        "out" => Polarity::Out,
        other => return Err(bad(format!("unknown polarity {other:?}"))),
    };
    let flag = |key: &str| v.get(key).and_then(Value::as_bool).unwrap_or(false);
    let stats = match v.get("stats") {
        Some(s) => SearchStats {
            nodes: s.get("nodes").and_then(Value::as_u64).unwrap_or(0),
            classes_per_level: match s.get("classes_per_level") {
                Some(c) => as_array(c, "classes_per_level")?
                    .iter()
                    .map(|l| usize_list(l, "classes_per_level"))
                    .collect::<Result<_>>()?,
                None => Vec::new(),
            },
            depths: match s.get("depths") {
                Some(d) => usize_list(d, "depths")?,
                None => Vec::new(),
            },
        },
        None => SearchStats::default(),
    };
    Ok(HomogeneousResult {
        subset,
        polarity,
        certified: flag("certified"),
        maximum: flag("maximum"),
        stats,
    })
}

pub fn hypergraph_to_json(h: &Hypergraph3) -> Value {
    json!({"n": h.n(), "edges": h.edges().iter().map(|e| e.map(|v| v + 1)).collect::<Vec<_>>()})
}

pub fn hypergraph_from_json(v: &Value) -> Result<Hypergraph3> {
    let n = as_usize(field(v, "n")?, "n")?;
    let mut edges = Vec::new();
    for e in as_array(field(v, "edges")?, "edges")? {
        let e = as_array(e, "edge")?;
        if e.len() != 3 {
            return Err(bad("edges are triples"));
        }
        edges.push([
            one_based(&e[0], "edge")?,
            one_based(&e[1], "edge")?,
            one_based(&e[2], "edge")?,
        ]);
    }
    Hypergraph3::new(n, edges).map_err(|e| bad(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{base_construction, frankl_wilson_instance, step_up, ResourceCaps};
    use crate::exactmath::rational::{int, ratio};
    use crate::geometry::one_sided_instance;

    #[test]
    fn polynomial_format() {
        let p = MultivariatePolynomial::var(2, 0).scale(&ratio(3, 2))
            - MultivariatePolynomial::constant(2, int(4));
        let v = poly_to_json(&p);
        assert_eq!(v["vars"], 2);
        assert!(v["terms"]
            .as_array()
            .unwrap()
            .contains(&json!({"c": "3/2", "e": [1, 0]})));
        assert!(v["terms"]
            .as_array()
            .unwrap()
            .contains(&json!({"c": "-4/1", "e": [0, 0]})));
        assert_eq!(poly_from_json(&v).unwrap(), p);
        assert!(poly_from_json(&json!({"vars": 1, "terms": [{"c": "1/0", "e": [1]}]})).is_err());
    }

    #[test]
    fn instances_round_trip() {
        let caps = ResourceCaps::default();
        let base = base_construction(2, &caps).unwrap();
        let up = step_up(&base, &caps).unwrap();
        let fw = frankl_wilson_instance(6, 2, &caps).unwrap();
        let arr = Arrangement::new(
            2,
            vec![
                Hyperplane::new(vec![int(-1), int(1)], int(1)).unwrap(),
                Hyperplane::new(vec![int(1), int(1)], int(3)).unwrap(),
            ],
        )
        .unwrap();
        let os = one_sided_instance(arr).unwrap();
        for inst in [base, up, fw, os] {
            let v = instance_to_json(&inst);
            let text = serde_json::to_string(&v).unwrap();
            let back = instance_from_json(&serde_json::from_str(&text).unwrap()).unwrap();
            assert_eq!(back, inst);
        }
    }

    #[test]
    fn formula_format() {
        let f = Formula::or(vec![Formula::not(Formula::ge(1)), Formula::and(vec![])]);
        let v = formula_to_json(&f);
        assert_eq!(v["op"], "or");
        assert_eq!(
            v["children"][0]["child"],
            json!({"op": "atom", "poly": 1, "cmp": "ge"})
        );
        assert_eq!(formula_from_json(&v).unwrap(), f);
    }

    #[test]
    fn results_and_hypergraphs_are_one_based() {
        let r = HomogeneousResult {
            subset: vec![0, 1, 2],
            polarity: Polarity::In,
            certified: true,
            maximum: true,
            stats: SearchStats {
                nodes: 9,
                classes_per_level: vec![vec![2, 1]],
                depths: vec![4],
            },
        };
        let v = result_to_json(&r);
        assert_eq!(v["subset"], json!([1, 2, 3]));
        assert_eq!(result_from_json(&v).unwrap(), r);
        let h = Hypergraph3::new(6, vec![[0, 1, 2], [3, 4, 5]]).unwrap();
        let v = hypergraph_to_json(&h);
        assert_eq!(v["edges"], json!([[1, 2, 3], [4, 5, 6]]));
        assert_eq!(hypergraph_from_json(&v).unwrap(), h);
        assert!(hypergraph_from_json(&json!({"n": 3, "edges": [[0, 1, 2]]})).is_err());
    }

    #[test]
    fn hyperplane_format() {
        let h = Hyperplane::new(vec![ratio(1, 2), int(0)], int(-3)).unwrap();
        let v = hyperplane_to_json(&h);
        assert_eq!(v, json!({"a": ["1/2", "0/1"], "b": "-3/1"}));
        assert_eq!(hyperplane_from_json(&v).unwrap(), h);
    }
}
