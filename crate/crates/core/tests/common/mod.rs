//! Reference implementations written directly from the definitions, used
//! as oracles by the integration tests.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use ifg::algebra::Element;
use ifg::model::{IndepSet, Space, Structure, Team, TeamFamily};
use ifg::syntax::{Atom, Node, Operand};
use ifg::ualg::{FiniteAlgebra, Operation};

fn operand(a: &Structure, space: &Space, idx: usize, t: &Operand) -> usize {
    match t {
        Operand::Var(i) => space.entry(idx, *i),
        Operand::Const(c) => a.constant(c).expect("known constant"),
    }
}

fn holds(a: &Structure, space: &Space, idx: usize, atom: &Atom) -> bool {
    match atom {
        Atom::Eq(x, y) => operand(a, space, idx, x) == operand(a, space, idx, y),
        Atom::Rel(r, args) => {
            let tuple: Vec<usize> = args.iter().map(|t| operand(a, space, idx, t)).collect();
            a.relation(r)
                .expect("known relation")
                .tuples
                .contains(&tuple)
        }
    }
}

fn agree_outside(space: &Space, s: usize, t: usize, j: IndepSet) -> bool {
    (0..space.vars()).all(|i| j.contains(i) || space.entry(s, i) == space.entry(t, i))
}

fn set_entry(space: &Space, idx: usize, n: usize, b: usize) -> usize {
    let mut vals: Vec<usize> = (0..space.vars()).map(|i| space.entry(idx, i)).collect();
    vals[n] = b;
    vals.iter()
        .enumerate()
        .map(|(i, &v)| v * space.base().pow(i as u32))
        .sum()
}

fn members(v: u64) -> Vec<usize> {
    (0..64).filter(|i| v >> i & 1 == 1).collect()
}

/// Trumps (`positive`) and cotrumps of a core formula, straight from the
/// compositional clauses: covers and uniform choice functions are
/// enumerated exhaustively.
pub fn naive(a: &Structure, space: &Space, node: &Node, v: u64, positive: bool) -> bool {
    match node {
        Node::Atom(atom) => members(v)
            .into_iter()
            .all(|s| holds(a, space, s, atom) == positive),
        Node::Neg(p) => naive(a, space, p, v, !positive),
        Node::Or(p, q, j) => {
            if !positive {
                return naive(a, space, p, v, false) && naive(a, space, q, v, false);
            }
            let vs = members(v);
            let mut sub = v;
            loop {
                let rest = v & !sub;
                let saturated = vs.iter().all(|&s| {
                    vs.iter().all(|&t| {
                        !agree_outside(space, s, t, *j) || (sub >> s & 1) == (sub >> t & 1)
                    })
                });
                if saturated && naive(a, space, p, sub, true) && naive(a, space, q, rest, true) {
                    return true;
                }
                if sub == 0 {
                    return false;
                }
                sub = (sub - 1) & v;
            }
        }
        Node::Exists(n, j, p) => {
            let vs = members(v);
            if !positive {
                let mut w = 0u64;
                for &s in &vs {
                    for b in 0..space.base() {
                        w |= 1 << set_entry(space, s, *n, b);
                    }
                }
                return naive(a, space, p, w, false);
            }
            let m = space.base();
            let total = m.pow(vs.len() as u32);
            'choice: for code in 0..total {
                let f: Vec<usize> = (0..vs.len()).map(|k| code / m.pow(k as u32) % m).collect();
                for x in 0..vs.len() {
                    for y in 0..vs.len() {
                        if agree_outside(space, vs[x], vs[y], *j) && f[x] != f[y] {
                            continue 'choice;
                        }
                    }
                }
                let image = vs
                    .iter()
                    .zip(&f)
                    .fold(0u64, |acc, (&s, &b)| acc | 1 << set_entry(space, s, *n, b));
                if naive(a, space, p, image, true) {
                    return true;
                }
            }
            false
        }
        other => naive(a, space, &other.desugar(), v, positive),
    }
}

/// Tarskian satisfaction for formulas read with every independence set
/// ignored.
pub fn tarski(a: &Structure, space: &Space, node: &Node, s: usize) -> bool {
    match node {
        Node::Atom(atom) => holds(a, space, s, atom),
        Node::Neg(p) => !tarski(a, space, p, s),
        Node::Or(p, q, _) => tarski(a, space, p, s) || tarski(a, space, q, s),
        Node::And(p, q, _) => tarski(a, space, p, s) && tarski(a, space, q, s),
        Node::Implies(p, q, _) => !tarski(a, space, p, s) || tarski(a, space, q, s),
        Node::Iff(p, q, _) => tarski(a, space, p, s) == tarski(a, space, q, s),
        Node::Exists(n, _, p) => {
            (0..space.base()).any(|b| tarski(a, space, p, set_entry(space, s, *n, b)))
        }
        Node::Forall(n, _, p) => {
            (0..space.base()).all(|b| tarski(a, space, p, set_entry(space, s, *n, b)))
        }
    }
}

/// Nonempty downward-closed families, by filtering every family.
pub fn brute_suits(space: &Space) -> Vec<TeamFamily> {
    let teams = space.team_count();
    assert!(teams <= 16, "brute force over 2^{teams} families");
    (0..1u64 << teams)
        .filter(|&mask| {
            mask & 1 == 1
                && (0..teams).all(|t| {
                    mask >> t & 1 == 0 || (0..teams).all(|u| u & !t != 0 || mask >> u & 1 == 1)
                })
        })
        .map(|mask| TeamFamily::from_mask(space.size(), mask))
        .collect()
}

/// Pairs of suits meeting only in `{∅}`, by filtering all pairs.
pub fn brute_double_suits(space: &Space) -> BTreeSet<Element> {
    let suits = brute_suits(space);
    let bottom = TeamFamily::bottom(space.size());
    let mut out = BTreeSet::new();
    for p in &suits {
        for q in &suits {
            if p.intersection(q) == bottom {
                out.insert(Element::new(*space, p.clone(), q.clone()).unwrap());
            }
        }
    }
    out
}

/// Operation tables of a finite algebra, read through `apply`.
pub struct Tables {
    pub n: usize,
    pub unary: Vec<Vec<usize>>,
    pub binary: Vec<Vec<usize>>,
}

impl Tables {
    pub fn new(alg: &FiniteAlgebra) -> Self {
        let n = alg.len();
        let mut unary = Vec::new();
        let mut binary = Vec::new();
        for &op in alg.signature().operations() {
            match op {
                Operation::Neg | Operation::Cyl(..) => {
                    unary.push((0..n).map(|x| alg.apply(op, &[x]).unwrap()).collect())
                }
                Operation::Plus(_) | Operation::Times(_) => binary.push(
                    (0..n * n)
                        .map(|p| alg.apply(op, &[p / n, p % n]).unwrap())
                        .collect(),
                ),
            }
        }
        Tables { n, unary, binary }
    }

    /// Whether the partition given by `class` (element to block id) is
    /// compatible with every operation.
    pub fn compatible(&self, class: &[usize]) -> bool {
        let n = self.n;
        let rel = |a: usize, b: usize| class[a] == class[b];
        for u in &self.unary {
            for a in 0..n {
                for b in 0..n {
                    if rel(a, b) && !rel(u[a], u[b]) {
                        return false;
                    }
                }
            }
        }
        for t in &self.binary {
            for a in 0..n {
                for b in 0..n {
                    if !rel(a, b) {
                        continue;
                    }
                    for c in 0..n {
                        for d in 0..n {
                            if rel(c, d) && !rel(t[a * n + c], t[b * n + d]) {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }

    /// The congruence generated by `(x, y)`: start from the pair and close
    /// under the operations and transitivity until nothing changes.
    /// Returns block ids.
    pub fn naive_cg(&self, x: usize, y: usize) -> Vec<usize> {
        let n = self.n;
        let mut class: Vec<usize> = (0..n).collect();
        let merge = |class: &mut Vec<usize>, a: usize, b: usize| -> bool {
            let (ca, cb) = (class[a], class[b]);
            if ca == cb {
                return false;
            }
            for c in class.iter_mut() {
                if *c == cb {
                    *c = ca;
                }
            }
            true
        };
        merge(&mut class, x, y);
        loop {
            let mut changed = false;
            for u in &self.unary {
                for a in 0..n {
                    for b in 0..n {
                        if class[a] == class[b] {
                            changed |= merge(&mut class, u[a], u[b]);
                        }
                    }
                }
            }
            for t in &self.binary {
                for a in 0..n {
                    for b in 0..n {
                        if class[a] != class[b] {
                            continue;
                        }
                        for c in 0..n {
                            changed |= merge(&mut class, t[a * n + c], t[b * n + c]);
                            changed |= merge(&mut class, t[c * n + a], t[c * n + b]);
                        }
                    }
                }
            }
            if !changed || class.iter().all(|&c| c == class[0]) {
                return class;
            }
        }
    }
}

/// Closure of a set of indices under the tables.
pub fn close(t: &Tables, start: &[usize]) -> Vec<bool> {
    let mut set = vec![false; t.n];
    for &i in start {
        set[i] = true;
    }
    loop {
        let mut changed = false;
        let items: Vec<usize> = (0..t.n).filter(|&i| set[i]).collect();
        for u in &t.unary {
            for &a in &items {
                if !set[u[a]] {
                    set[u[a]] = true;
                    changed = true;
                }
            }
        }
        for b in &t.binary {
            for &x in &items {
                for &y in &items {
                    let z = b[x * t.n + y];
                    if !set[z] {
                        set[z] = true;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            return set;
        }
    }
}

/// Index map of a carrier.
pub fn index(carrier: &[Element]) -> HashMap<Element, usize> {
    carrier
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, e)| (e, i))
        .collect()
}

pub fn team(space: &Space, text: &str) -> Team {
    Team::parse(text, space).unwrap()
}
