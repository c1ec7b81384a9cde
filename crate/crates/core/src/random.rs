//! Seeded generators for formulas and schemas.
//!
//! Each node kind is drawn uniformly while depth remains; at depth zero an
//! atom is drawn, uniformly among `v_i = v_j` and `v_i = c`.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::model::IndepSet;
use crate::syntax::{Formula, Node, Operand, Schema, SchemaNode};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Shape of the formulas to generate.
#[derive(Clone, Debug)]
pub struct FormulaGen {
    pub vars: usize,
    pub constants: Vec<String>,
    pub max_depth: usize,
    /// Also draw `/\`, `A`, `->` and `<->`.
    pub sugar: bool,
    /// Draw every independence set as `∅`.
    pub first_order: bool,
}

impl FormulaGen {
    pub fn new(vars: usize, constants: &[&str], max_depth: usize) -> Self {
        FormulaGen {
            vars,
            constants: constants.iter().map(|s| s.to_string()).collect(),
            max_depth,
            sugar: false,
            first_order: false,
        }
    }

    fn indep<R: Rng>(&self, rng: &mut R) -> IndepSet {
        if self.first_order {
            IndepSet::EMPTY
        } else {
            IndepSet::from_bits(rng.gen_range(0..1u32 << self.vars))
        }
    }

    fn atom<R: Rng>(&self, rng: &mut R) -> Node {
        let v = Operand::Var(rng.gen_range(0..self.vars));
        let rhs = if self.constants.is_empty() || rng.gen_bool(0.5) {
            Operand::Var(rng.gen_range(0..self.vars))
        } else {
            Operand::Const(self.constants.choose(rng).expect("nonempty").clone())
        };
        Node::eq(v, rhs)
    }

    pub fn node<R: Rng>(&self, rng: &mut R, depth: usize) -> Node {
        if depth == 0 {
            return self.atom(rng);
        }
        let kinds = if self.sugar { 8 } else { 4 };
        let d = depth - 1;
        match rng.gen_range(0..kinds) {
            0 => self.atom(rng),
            1 => self.node(rng, d).neg(),
            2 => {
                let j = self.indep(rng);
                self.node(rng, d).or(self.node(rng, d), j)
            }
            3 => {
                let n = rng.gen_range(0..self.vars);
                let j = self.indep(rng);
                Node::exists(n, j, self.node(rng, d))
            }
            4 => {
                let j = self.indep(rng);
                self.node(rng, d).and(self.node(rng, d), j)
            }
            5 => {
                let n = rng.gen_range(0..self.vars);
                let j = self.indep(rng);
                Node::forall(n, j, self.node(rng, d))
            }
            6 => {
                let j = self.indep(rng);
                self.node(rng, d).implies(self.node(rng, d), j)
            }
            _ => {
                let j = self.indep(rng);
                self.node(rng, d).iff(self.node(rng, d), j)
            }
        }
    }

    pub fn formula<R: Rng>(&self, rng: &mut R) -> Formula {
        let depth = rng.gen_range(0..=self.max_depth);
        Formula::new(self.node(rng, depth), self.vars).expect("generated within bounds")
    }
}

/// A random schema over `vars` variables in `arity` formula variables.
pub fn random_schema<R: Rng>(rng: &mut R, vars: usize, arity: usize, max_depth: usize) -> Schema {
    fn go<R: Rng>(rng: &mut R, vars: usize, arity: usize, depth: usize) -> SchemaNode {
        let leaf = |rng: &mut R| {
            if arity > 0 && rng.gen_bool(0.75) {
                SchemaNode::Var(rng.gen_range(0..arity))
            } else {
                SchemaNode::Eq(rng.gen_range(0..vars), rng.gen_range(0..vars))
            }
        };
        if depth == 0 {
            return leaf(rng);
        }
        match rng.gen_range(0..4) {
            0 => leaf(rng),
            1 => go(rng, vars, arity, depth - 1).neg(),
            2 => {
                let j = IndepSet::from_bits(rng.gen_range(0..1u32 << vars));
                go(rng, vars, arity, depth - 1).or(go(rng, vars, arity, depth - 1), j)
            }
            _ => {
                let n = rng.gen_range(0..vars);
                let j = IndepSet::from_bits(rng.gen_range(0..1u32 << vars));
                SchemaNode::exists(n, j, go(rng, vars, arity, depth - 1))
            }
        }
    }
    let depth = rng.gen_range(0..=max_depth);
    Schema::new(go(rng, vars, arity, depth), vars, arity).expect("generated within bounds")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_under_seed() {
        let g = FormulaGen::new(2, &["c0", "c1"], 4);
        let a: Vec<Formula> = {
            let mut r = rng(7);
            (0..20).map(|_| g.formula(&mut r)).collect()
        };
        let b: Vec<Formula> = {
            let mut r = rng(7);
            (0..20).map(|_| g.formula(&mut r)).collect()
        };
        assert_eq!(a, b);
        assert!(a.iter().all(|f| f.node.depth() <= 4 && f.node.is_core()));
    }

    #[test]
    fn schemas_respect_bounds() {
        let mut r = rng(3);
        for _ in 0..50 {
            let s = random_schema(&mut r, 2, 2, 3);
            assert!(s.node.depth() <= 3);
        }
    }
}
