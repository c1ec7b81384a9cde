use std::collections::BTreeSet;

use proptest::prelude::*;

use ifg::random::{random_schema, rng, FormulaGen};
use ifg::syntax::{
    instantiate, parse, schema_to_term, Atom, Formula, Node, Operand, SchemaNode, Term,
};

fn used_vars(node: &Node, out: &mut BTreeSet<usize>) {
    let mut operand = |t: &Operand| {
        if let Operand::Var(i) = t {
            out.insert(*i);
        }
    };
    match node {
        Node::Atom(Atom::Eq(a, b)) => {
            operand(a);
            operand(b);
        }
        Node::Atom(Atom::Rel(_, args)) => args.iter().for_each(operand),
        Node::Neg(p) => used_vars(p, out),
        Node::Exists(n, _, p) | Node::Forall(n, _, p) => {
            out.insert(*n);
            used_vars(p, out);
        }
        Node::Or(p, q, _) | Node::And(p, q, _) | Node::Implies(p, q, _) | Node::Iff(p, q, _) => {
            used_vars(p, out);
            used_vars(q, out);
        }
    }
}

fn vars_of(phi: &Formula) -> BTreeSet<usize> {
    let mut out = BTreeSet::new();
    used_vars(&phi.node, &mut out);
    out
}

fn same_shape(s: &SchemaNode, t: &Term) -> bool {
    match (s, t) {
        (SchemaNode::Var(i), Term::Var(k)) => i == k,
        (SchemaNode::Eq(i, k), Term::Diagonal(a, b)) => (i, k) == (a, b),
        (SchemaNode::Neg(p), Term::Neg(q)) => same_shape(p, q),
        (SchemaNode::Or(p, q, j), Term::Plus(a, b, k)) => {
            j == k && same_shape(p, a) && same_shape(q, b)
        }
        (SchemaNode::Exists(n, j, p), Term::Cyl(k, i, q)) => n == k && j == i && same_shape(p, q),
        _ => false,
    }
}

fn formula(seed: u64, vars: usize, depth: usize, sugar: bool) -> Formula {
    let mut gen = FormulaGen::new(vars, &["c0", "c1", "zero"], depth);
    gen.sugar = sugar;
    gen.formula(&mut rng(seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn pretty_then_parse_is_identity(seed in any::<u64>(), vars in 1usize..=3, sugar in any::<bool>()) {
        let phi = formula(seed, vars, 5, sugar);
        let text = phi.pretty();
        let back = parse(&text, Some(vars)).unwrap();
        prop_assert_eq!(&back, &phi, "{}", text);
    }

    #[test]
    fn desugar_keeps_vars(seed in any::<u64>(), vars in 1usize..=3) {
        let phi = formula(seed, vars, 5, true);
        let core = phi.desugar();
        prop_assert!(core.node.is_core());
        prop_assert_eq!(core.vars, phi.vars);
        prop_assert_eq!(vars_of(&core), vars_of(&phi));
    }

    #[test]
    fn schema_terms_have_the_schema_shape(seed in any::<u64>(), vars in 1usize..=3, arity in 1usize..=3) {
        let schema = random_schema(&mut rng(seed), vars, arity, 5);
        let term = schema_to_term(&schema);
        prop_assert!(same_shape(&schema.node, &term));
        prop_assert_eq!(term.depth(), schema.node.depth());
    }

    #[test]
    fn desugar_commutes_with_instantiation(seed in any::<u64>(), vars in 1usize..=2, sugar in any::<bool>()) {
        let mut g = rng(seed);
        let schema = random_schema(&mut g, vars, 2, 3);
        let mut gen = FormulaGen::new(vars, &["c0"], 3);
        gen.sugar = sugar;
        let args = [gen.formula(&mut g), gen.formula(&mut g)];
        let core: Vec<Formula> = args.iter().map(Formula::desugar).collect();
        prop_assert_eq!(
            instantiate(&schema, &args).unwrap().desugar(),
            instantiate(&schema, &core).unwrap()
        );
    }

    #[test]
    fn parser_never_panics(text in "[EA~v0-9=!()/{},\\\\/<>\\- cz]{0,40}") {
        let _ = parse(&text, None);
    }
}
