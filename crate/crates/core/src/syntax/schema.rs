use std::fmt;

use super::{Formula, Node, Operand};
use crate::error::{Error, Result};
use crate::model::IndepSet;

/// Schema syntax: formulas built from formula variables `α_i` and
/// equalities between variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SchemaNode {
    Var(usize),
    Eq(usize, usize),
    Neg(Box<SchemaNode>),
    Or(Box<SchemaNode>, Box<SchemaNode>, IndepSet),
    Exists(usize, IndepSet, Box<SchemaNode>),
}

/// An IFG_N schema in `arity` formula variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Schema {
    pub node: SchemaNode,
    pub vars: usize,
    pub arity: usize,
}

/// Terms in the language of IFG-cylindric algebras.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Var(usize),
    Diagonal(usize, usize),
    Zero,
    One,
    Neg(Box<Term>),
    Plus(Box<Term>, Box<Term>, IndepSet),
    Times(Box<Term>, Box<Term>, IndepSet),
    Cyl(usize, IndepSet, Box<Term>),
}

impl SchemaNode {
    #[allow(clippy::should_implement_trait)]
    pub fn neg(self) -> Self {
        SchemaNode::Neg(Box::new(self))
    }

    pub fn or(self, rhs: SchemaNode, j: IndepSet) -> Self {
        SchemaNode::Or(Box::new(self), Box::new(rhs), j)
    }

    pub fn exists(n: usize, j: IndepSet, body: SchemaNode) -> Self {
        SchemaNode::Exists(n, j, Box::new(body))
    }

    fn max_var(&self) -> Option<usize> {
        match self {
            SchemaNode::Var(_) => None,
            SchemaNode::Eq(i, k) => Some(*i.max(k)),
            SchemaNode::Neg(p) => p.max_var(),
            SchemaNode::Or(p, q, j) => p.max_var().max(q.max_var()).max(j.max_index()),
            SchemaNode::Exists(n, j, p) => Some(*n).max(j.max_index()).max(p.max_var()),
        }
    }

    fn max_formula_var(&self) -> Option<usize> {
        match self {
            SchemaNode::Var(i) => Some(*i),
            SchemaNode::Eq(..) => None,
            SchemaNode::Neg(p) | SchemaNode::Exists(_, _, p) => p.max_formula_var(),
            SchemaNode::Or(p, q, _) => p.max_formula_var().max(q.max_formula_var()),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            SchemaNode::Var(_) | SchemaNode::Eq(..) => 0,
            SchemaNode::Neg(p) | SchemaNode::Exists(_, _, p) => 1 + p.depth(),
            SchemaNode::Or(p, q, _) => 1 + p.depth().max(q.depth()),
        }
    }
}

impl Schema {
    pub fn new(node: SchemaNode, vars: usize, arity: usize) -> Result<Self> {
        if vars == 0 {
            return Err(Error::Invalid(
                "a schema needs at least one variable".into(),
            ));
        }
        if let Some(k) = node.max_var().filter(|&k| k >= vars) {
            return Err(Error::OutOfRange {
                what: "variable",
                index: k,
                bound: vars,
            });
        }
        if let Some(k) = node.max_formula_var().filter(|&k| k >= arity) {
            return Err(Error::OutOfRange {
                what: "formula variable",
                index: k,
                bound: arity,
            });
        }
        Ok(Schema { node, vars, arity })
    }
}

/// `ξ(φ_0, …, φ_{k-1})`.
pub fn instantiate(schema: &Schema, args: &[Formula]) -> Result<Formula> {
    if args.len() != schema.arity {
        return Err(Error::Arity {
            name: "schema".into(),
            expected: schema.arity,
            found: args.len(),
        });
    }
    if let Some(f) = args.iter().find(|f| f.vars != schema.vars) {
        return Err(Error::Dimension(format!(
            "formula over {} variables substituted into a schema over {}",
            f.vars, schema.vars
        )));
    }
    fn go(node: &SchemaNode, args: &[Formula]) -> Node {
        match node {
            SchemaNode::Var(i) => args[*i].node.clone(),
            SchemaNode::Eq(i, k) => Node::eq(Operand::Var(*i), Operand::Var(*k)),
            SchemaNode::Neg(p) => go(p, args).neg(),
            SchemaNode::Or(p, q, j) => go(p, args).or(go(q, args), *j),
            SchemaNode::Exists(n, j, p) => Node::exists(*n, *j, go(p, args)),
        }
    }
    Formula::new(go(&schema.node, args), schema.vars)
}

/// `T_ξ`: the term with the same shape as `ξ`.
pub fn schema_to_term(schema: &Schema) -> Term {
    fn go(node: &SchemaNode) -> Term {
        match node {
            SchemaNode::Var(i) => Term::Var(*i),
            SchemaNode::Eq(i, k) => Term::Diagonal(*i, *k),
            SchemaNode::Neg(p) => go(p).neg(),
            SchemaNode::Or(p, q, j) => go(p).plus(go(q), *j),
            SchemaNode::Exists(n, j, p) => Term::cyl(*n, *j, go(p)),
        }
    }
    go(&schema.node)
}

impl Term {
    #[allow(clippy::should_implement_trait)]
    pub fn neg(self) -> Term {
        Term::Neg(Box::new(self))
    }

    pub fn plus(self, rhs: Term, j: IndepSet) -> Term {
        Term::Plus(Box::new(self), Box::new(rhs), j)
    }

    pub fn times(self, rhs: Term, j: IndepSet) -> Term {
        Term::Times(Box::new(self), Box::new(rhs), j)
    }

    pub fn cyl(n: usize, j: IndepSet, body: Term) -> Term {
        Term::Cyl(n, j, Box::new(body))
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) | Term::Diagonal(..) | Term::Zero | Term::One => 0,
            Term::Neg(t) | Term::Cyl(_, _, t) => 1 + t.depth(),
            Term::Plus(s, t, _) | Term::Times(s, t, _) => 1 + s.depth().max(t.depth()),
        }
    }
}

impl fmt::Display for SchemaNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SchemaNode::Var(i) => write!(f, "$a{i}"),
            SchemaNode::Eq(i, k) => write!(f, "v{i} = v{k}"),
            SchemaNode::Neg(p) => match **p {
                SchemaNode::Eq(..) => write!(f, "~ ({p})"),
                _ => write!(f, "~ {p}"),
            },
            SchemaNode::Or(p, q, j) => write!(f, "({p} \\/{j} {q})"),
            SchemaNode::Exists(n, j, p) => write!(f, "E v{n}/{j} {p}"),
        }
    }
}

impl fmt::Display for Schema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.node.fmt(f)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(i) => write!(f, "X{i}"),
            Term::Diagonal(i, k) => write!(f, "D{i}{k}"),
            Term::Zero => f.write_str("0"),
            Term::One => f.write_str("1"),
            Term::Neg(t) => write!(f, "~{t}"),
            Term::Plus(s, t, j) => write!(f, "({s} +{} {t})", Indices(*j)),
            Term::Times(s, t, j) => write!(f, "({s} *{} {t})", Indices(*j)),
            Term::Cyl(n, j, t) => write!(f, "C({n},{}) {t}", Indices(*j)),
        }
    }
}

/// `{0, 1}` style index set, as used by the algebra expression syntax.
struct Indices(IndepSet);

impl fmt::Display for Indices {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}
