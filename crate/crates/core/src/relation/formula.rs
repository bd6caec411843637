use crate::error::{arg, Result};

/// Comparison of a polynomial value against zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Comparison {
    Ge,
    Gt,
    Eq,
}

impl Comparison {
    pub fn holds(self, sign: i8) -> bool {
        match self {
            Comparison::Ge => sign >= 0,
            Comparison::Gt => sign > 0,
            Comparison::Eq => sign == 0,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Comparison::Ge => "ge",
            Comparison::Gt => "gt",
            Comparison::Eq => "eq",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "ge" => Ok(Comparison::Ge),
            "gt" => Ok(Comparison::Gt),
            "eq" => Ok(Comparison::Eq),
            other => arg(format!("unknown comparison {other:?}")),
        }
    }
}

/// A sign condition on one polynomial of the owning relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Atom {
    pub poly: usize,
    pub cmp: Comparison,
}

/// Boolean combination of atoms. `And([])` is true and `Or([])` is false.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Not(Box<Formula>),
    Atom(Atom),
}

impl Formula {
    pub fn atom(poly: usize, cmp: Comparison) -> Self {
        Formula::Atom(Atom { poly, cmp })
    }

    pub fn ge(poly: usize) -> Self {
        Self::atom(poly, Comparison::Ge)
    }

    pub fn gt(poly: usize) -> Self {
        Self::atom(poly, Comparison::Gt)
    }

    pub fn eq(poly: usize) -> Self {
        Self::atom(poly, Comparison::Eq)
    }

    pub fn and(children: Vec<Formula>) -> Self {
        Formula::And(children)
    }

    pub fn or(children: Vec<Formula>) -> Self {
        Formula::Or(children)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(child: Formula) -> Self {
        Formula::Not(Box::new(child))
    }

    pub fn never() -> Self {
        Formula::Or(Vec::new())
    }

    pub fn always() -> Self {
        Formula::And(Vec::new())
    }

    /// Evaluates with `truth(atom)` supplying leaf values; short-circuits.
    pub fn eval(&self, truth: &mut impl FnMut(&Atom) -> bool) -> bool {
        match self {
            Formula::And(cs) => cs.iter().all(|c| c.eval(truth)),
            Formula::Or(cs) => cs.iter().any(|c| c.eval(truth)),
            Formula::Not(c) => !c.eval(truth),
            Formula::Atom(a) => truth(a),
        }
    }

    /// Node count.
    pub fn size(&self) -> usize {
        match self {
            Formula::And(cs) | Formula::Or(cs) => 1 + cs.iter().map(Formula::size).sum::<usize>(),
            Formula::Not(c) => 1 + c.size(),
            Formula::Atom(_) => 1,
        }
    }

    pub fn atoms(&self, out: &mut Vec<Atom>) {
        match self {
            Formula::And(cs) | Formula::Or(cs) => cs.iter().for_each(|c| c.atoms(out)),
            Formula::Not(c) => c.atoms(out),
            Formula::Atom(a) => out.push(*a),
        }
    }

    pub fn max_poly_index(&self) -> Option<usize> {
        let mut a = Vec::new();
        self.atoms(&mut a);
        a.iter().map(|a| a.poly).max()
    }

    /// Adds `offset` to every atom's polynomial index.
    pub fn shift_polys(&self, offset: usize) -> Self {
        match self {
            Formula::And(cs) => Formula::And(cs.iter().map(|c| c.shift_polys(offset)).collect()),
            Formula::Or(cs) => Formula::Or(cs.iter().map(|c| c.shift_polys(offset)).collect()),
            Formula::Not(c) => Formula::not(c.shift_polys(offset)),
            Formula::Atom(a) => Formula::atom(a.poly + offset, a.cmp),
        }
    }
}
