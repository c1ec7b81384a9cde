//! IFG formulas, schemas and algebra terms.
//!
//! Concrete grammar (binary connectives always parenthesized):
//!
//! ```text
//! formula := '~' formula
//!          | ('E' | 'A') var '/'? set formula
//!          | '(' formula binop '/'? set formula ')'
//!          | '(' formula ')'
//!          | term '=' term | term '!=' term | NAME '(' [term {',' term}] ')'
//! binop   := '\/' | '/\' | '->' | '<->'
//! set     := '{' [elem {',' elem}] '}'      elem := var | digits
//! term    := var | NAME                       var  := 'v' digits
//! ```

mod parse;
mod schema;

pub use parse::{parse, MAX_NESTING};
pub use schema::{instantiate, schema_to_term, Schema, SchemaNode, Term};

use std::fmt;

use crate::error::{Error, Result};
use crate::model::{IndepSet, Space, Structure, Team};

/// Argument of an atomic formula.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Operand {
    Var(usize),
    Const(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Atom {
    Eq(Operand, Operand),
    Rel(String, Vec<Operand>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Node {
    Atom(Atom),
    Neg(Box<Node>),
    Or(Box<Node>, Box<Node>, IndepSet),
    Exists(usize, IndepSet, Box<Node>),
    And(Box<Node>, Box<Node>, IndepSet),
    Forall(usize, IndepSet, Box<Node>),
    Implies(Box<Node>, Box<Node>, IndepSet),
    Iff(Box<Node>, Box<Node>, IndepSet),
}

/// An IFG_N formula: a syntax tree together with its variable count `N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Formula {
    pub node: Node,
    pub vars: usize,
}

impl Operand {
    fn max_var(&self) -> Option<usize> {
        match self {
            Operand::Var(i) => Some(*i),
            Operand::Const(_) => None,
        }
    }
}

impl Node {
    pub fn eq(a: Operand, b: Operand) -> Node {
        Node::Atom(Atom::Eq(a, b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(self) -> Node {
        Node::Neg(Box::new(self))
    }

    pub fn or(self, rhs: Node, j: IndepSet) -> Node {
        Node::Or(Box::new(self), Box::new(rhs), j)
    }

    pub fn and(self, rhs: Node, j: IndepSet) -> Node {
        Node::And(Box::new(self), Box::new(rhs), j)
    }

    pub fn implies(self, rhs: Node, j: IndepSet) -> Node {
        Node::Implies(Box::new(self), Box::new(rhs), j)
    }

    pub fn iff(self, rhs: Node, j: IndepSet) -> Node {
        Node::Iff(Box::new(self), Box::new(rhs), j)
    }

    pub fn exists(n: usize, j: IndepSet, body: Node) -> Node {
        Node::Exists(n, j, Box::new(body))
    }

    pub fn forall(n: usize, j: IndepSet, body: Node) -> Node {
        Node::Forall(n, j, Box::new(body))
    }

    /// Largest variable index mentioned anywhere, including quantified
    /// variables and independence sets.
    pub fn max_var(&self) -> Option<usize> {
        match self {
            Node::Atom(Atom::Eq(a, b)) => a.max_var().max(b.max_var()),
            Node::Atom(Atom::Rel(_, args)) => args.iter().filter_map(Operand::max_var).max(),
            Node::Neg(p) => p.max_var(),
            Node::Or(p, q, j)
            | Node::And(p, q, j)
            | Node::Implies(p, q, j)
            | Node::Iff(p, q, j) => p.max_var().max(q.max_var()).max(j.max_index()),
            Node::Exists(n, j, p) | Node::Forall(n, j, p) => {
                Some(*n).max(j.max_index()).max(p.max_var())
            }
        }
    }

    /// Only atoms, `~`, `\/` and `E`.
    pub fn is_core(&self) -> bool {
        match self {
            Node::Atom(_) => true,
            Node::Neg(p) | Node::Exists(_, _, p) => p.is_core(),
            Node::Or(p, q, _) => p.is_core() && q.is_core(),
            _ => false,
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Node::Atom(_) => 0,
            Node::Neg(p) | Node::Exists(_, _, p) | Node::Forall(_, _, p) => 1 + p.depth(),
            Node::Or(p, q, _)
            | Node::And(p, q, _)
            | Node::Implies(p, q, _)
            | Node::Iff(p, q, _) => 1 + p.depth().max(q.depth()),
        }
    }

    /// Rewrite the abbreviations into atoms, `~`, `\/` and `E`.
    pub fn desugar(&self) -> Node {
        match self {
            Node::Atom(a) => Node::Atom(a.clone()),
            Node::Neg(p) => p.desugar().neg(),
            Node::Or(p, q, j) => p.desugar().or(q.desugar(), *j),
            Node::Exists(n, j, p) => Node::exists(*n, *j, p.desugar()),
            // φ ∧_J ψ  =  ~(~φ ∨_J ~ψ)
            Node::And(p, q, j) => p.desugar().neg().or(q.desugar().neg(), *j).neg(),
            // ∀v/J φ  =  ~∃v/J ~φ
            Node::Forall(n, j, p) => Node::exists(*n, *j, p.desugar().neg()).neg(),
            // φ →_J ψ  =  ~φ ∨_J ψ
            Node::Implies(p, q, j) => p.desugar().neg().or(q.desugar(), *j),
            // φ ↔_J ψ  =  (φ →_J ψ) ∧_J (ψ →_J φ)
            Node::Iff(p, q, j) => {
                let p = (**p).clone();
                let q = (**q).clone();
                p.clone()
                    .implies(q.clone(), *j)
                    .and(q.implies(p, *j), *j)
                    .desugar()
            }
        }
    }

    fn check_symbols(&self, a: &Structure) -> Result<()> {
        let check_operand = |t: &Operand| match t {
            Operand::Var(_) => Ok(()),
            Operand::Const(c) => a
                .constant(c)
                .map(|_| ())
                .ok_or_else(|| Error::UnknownSymbol(c.clone())),
        };
        match self {
            Node::Atom(Atom::Eq(s, t)) => {
                check_operand(s)?;
                check_operand(t)
            }
            Node::Atom(Atom::Rel(r, args)) => {
                let rel = a
                    .relation(r)
                    .ok_or_else(|| Error::UnknownSymbol(r.clone()))?;
                if rel.arity != args.len() {
                    return Err(Error::Arity {
                        name: r.clone(),
                        expected: rel.arity,
                        found: args.len(),
                    });
                }
                args.iter().try_for_each(check_operand)
            }
            Node::Neg(p) | Node::Exists(_, _, p) | Node::Forall(_, _, p) => p.check_symbols(a),
            Node::Or(p, q, _)
            | Node::And(p, q, _)
            | Node::Implies(p, q, _)
            | Node::Iff(p, q, _) => {
                p.check_symbols(a)?;
                q.check_symbols(a)
            }
        }
    }
}

impl Formula {
    /// Checks that every variable, quantified index and independence set
    /// stays below `vars`.
    pub fn new(node: Node, vars: usize) -> Result<Self> {
        if vars == 0 {
            return Err(Error::Invalid(
                "a formula needs at least one variable".into(),
            ));
        }
        if let Some(k) = node.max_var() {
            if k >= vars {
                return Err(Error::OutOfRange {
                    what: "variable",
                    index: k,
                    bound: vars,
                });
            }
        }
        Ok(Formula { node, vars })
    }

    /// Uses the smallest admissible `N`: one more than the largest index
    /// mentioned, and at least 1.
    pub fn with_min_vars(node: Node) -> Self {
        let vars = node.max_var().map_or(1, |k| k + 1);
        Formula { node, vars }
    }

    pub fn desugar(&self) -> Formula {
        Formula {
            node: self.node.desugar(),
            vars: self.vars,
        }
    }

    /// Every constant and relation symbol exists in `a`, with matching arity.
    pub fn validate(&self, a: &Structure) -> Result<()> {
        self.node.check_symbols(a)
    }

    pub fn pretty(&self) -> String {
        self.node.to_string()
    }
}

/// `φ_V`: the `∨_∅`-disjunction over `ā ∈ V` of `v_0 = a_0 ∧_∅ … ∧_∅
/// v_{N-1} = a_{N-1}`, or `~(v0 = v0)` for the empty team.
pub fn formula_for_team(space: &Space, v: Team, a: &Structure) -> Result<Formula> {
    if a.universe() != space.base() {
        return Err(Error::Dimension(format!(
            "structure of size {} for a space over {} elements",
            a.universe(),
            space.base()
        )));
    }
    let names = a
        .naming()
        .ok_or_else(|| Error::Invalid("every element must be named by a constant".into()))?;
    let point = |idx: usize| -> Node {
        (0..space.vars())
            .map(|i| {
                Node::eq(
                    Operand::Var(i),
                    Operand::Const(names[space.entry(idx, i)].to_string()),
                )
            })
            .reduce(|acc, atom| acc.and(atom, IndepSet::EMPTY))
            .expect("at least one variable")
    };
    let node = v
        .members()
        .map(point)
        .reduce(|acc, p| acc.or(p, IndepSet::EMPTY))
        .unwrap_or_else(|| Node::eq(Operand::Var(0), Operand::Var(0)).neg());
    Formula::new(node, space.vars())
}

impl fmt::Display for Operand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Operand::Var(i) => write!(f, "v{i}"),
            Operand::Const(c) => f.write_str(c),
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Eq(a, b) => write!(f, "{a} = {b}"),
            Atom::Rel(r, args) => {
                let args: Vec<String> = args.iter().map(|t| t.to_string()).collect();
                write!(f, "{r}({})", args.join(", "))
            }
        }
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::Atom(a) => write!(f, "{a}"),
            Node::Neg(p) => match **p {
                Node::Atom(_) => write!(f, "~ ({p})"),
                _ => write!(f, "~ {p}"),
            },
            Node::Or(p, q, j) => write!(f, "({p} \\/{j} {q})"),
            Node::And(p, q, j) => write!(f, "({p} /\\{j} {q})"),
            Node::Implies(p, q, j) => write!(f, "({p} ->/{j} {q})"),
            Node::Iff(p, q, j) => write!(f, "({p} <->/{j} {q})"),
            Node::Exists(n, j, p) => write!(f, "E v{n}/{j} {p}"),
            Node::Forall(n, j, p) => write!(f, "A v{n}/{j} {p}"),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.node.fmt(f)
    }
}
