//! Trump semantics: the satisfaction relations `⊨+ φ[V]` and `⊨- φ[W]`,
//! meanings and sentence status.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::algebra::Element;
use crate::error::{Error, Result};
use crate::model::{
    expand, saturated_disjoint_covers, substitution_images, IndepSet, Space, Structure, Team,
    TeamFamily,
};
use crate::syntax::{formula_for_team, Atom, Formula, Node, Operand};

/// Size limits, in valuations (`m^N`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// For computing a full meaning, which visits all `2^(m^N)` teams.
    pub meaning: usize,
    /// For evaluating on a single team.
    pub eval: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            meaning: 12,
            eval: 20,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SentenceStatus {
    True,
    False,
    Undetermined,
}

impl fmt::Display for SentenceStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SentenceStatus::True => "true",
            SentenceStatus::False => "false",
            SentenceStatus::Undetermined => "undetermined",
        })
    }
}

#[derive(Clone, Debug)]
enum Compiled {
    /// The valuations satisfying the atom classically.
    Atom(Team),
    Neg(usize),
    Or(usize, usize, IndepSet),
    Exists(usize, IndepSet, usize),
}

/// A formula compiled against a structure, with a memo table shared by
/// every query made through it.
pub struct Evaluator {
    space: Space,
    nodes: Vec<Compiled>,
    root: usize,
    memo: HashMap<(usize, Team, bool), bool>,
}

fn operand_value(a: &Structure, space: &Space, t: &Operand, idx: usize) -> usize {
    match t {
        Operand::Var(i) => space.entry(idx, *i),
        Operand::Const(c) => a.constant(c).expect("symbols validated"),
    }
}

impl Evaluator {
    pub fn new(a: &Structure, phi: &Formula) -> Result<Self> {
        Evaluator::with_limit(a, phi, Limits::default().eval)
    }

    pub fn with_limit(a: &Structure, phi: &Formula, max_valuations: usize) -> Result<Self> {
        phi.validate(a)?;
        let space = Space::new(a.universe(), phi.vars)?;
        if space.size() > max_valuations {
            return Err(Error::Guard(format!(
                "{} has {} valuations, above the limit of {max_valuations}",
                space,
                space.size()
            )));
        }
        let mut ev = Evaluator {
            space,
            nodes: Vec::new(),
            root: 0,
            memo: HashMap::new(),
        };
        ev.root = ev.compile(a, &phi.desugar().node);
        Ok(ev)
    }

    fn compile(&mut self, a: &Structure, node: &Node) -> usize {
        let c = match node {
            Node::Atom(atom) => {
                let space = self.space;
                let holds = |idx: usize| match atom {
                    Atom::Eq(s, t) => {
                        operand_value(a, &space, s, idx) == operand_value(a, &space, t, idx)
                    }
                    Atom::Rel(r, args) => {
                        let tuple: Vec<usize> = args
                            .iter()
                            .map(|t| operand_value(a, &space, t, idx))
                            .collect();
                        a.relation(r)
                            .expect("symbols validated")
                            .tuples
                            .contains(&tuple)
                    }
                };
                Compiled::Atom(
                    (0..space.size())
                        .filter(|&idx| holds(idx))
                        .fold(Team::EMPTY, |t, idx| t.with(idx)),
                )
            }
            Node::Neg(p) => Compiled::Neg(self.compile(a, p)),
            Node::Or(p, q, j) => {
                let p = self.compile(a, p);
                let q = self.compile(a, q);
                Compiled::Or(p, q, *j)
            }
            Node::Exists(n, j, p) => Compiled::Exists(*n, *j, self.compile(a, p)),
            _ => unreachable!("formula was desugared"),
        };
        self.nodes.push(c);
        self.nodes.len() - 1
    }

    pub fn space(&self) -> Space {
        self.space
    }

    fn check_team(&self, v: Team) -> Result<()> {
        if !v.is_subset(self.space.full_team()) {
            return Err(Error::Dimension(format!(
                "team {:#b} is not a set of valuations in {}",
                v.0, self.space
            )));
        }
        Ok(())
    }

    /// `A ⊨+ φ[V]`.
    pub fn plus(&mut self, v: Team) -> Result<bool> {
        self.check_team(v)?;
        Ok(self.sat(self.root, v, true))
    }

    /// `A ⊨- φ[W]`.
    pub fn minus(&mut self, w: Team) -> Result<bool> {
        self.check_team(w)?;
        Ok(self.sat(self.root, w, false))
    }

    fn sat(&mut self, node: usize, v: Team, positive: bool) -> bool {
        if let Some(&r) = self.memo.get(&(node, v, positive)) {
            return r;
        }
        let space = self.space;
        let r = match (self.nodes[node].clone(), positive) {
            (Compiled::Atom(s), true) => v.is_subset(s),
            (Compiled::Atom(s), false) => v.intersection(s).is_empty(),
            (Compiled::Neg(p), pos) => self.sat(p, v, !pos),
            (Compiled::Or(p, q, j), true) => saturated_disjoint_covers(&space, v, j)
                .any(|(v1, v2)| self.sat(p, v1, true) && self.sat(q, v2, true)),
            (Compiled::Or(p, q, _), false) => self.sat(p, v, false) && self.sat(q, v, false),
            (Compiled::Exists(n, j, p), true) => substitution_images(&space, v, n, j)
                .expect("quantified variable checked at construction")
                .into_iter()
                .any(|img| self.sat(p, img, true)),
            (Compiled::Exists(n, _, p), false) => {
                let w = expand(&space, v, n).expect("quantified variable checked at construction");
                self.sat(p, w, false)
            }
        };
        self.memo.insert((node, v, positive), r);
        r
    }
}

pub fn eval_plus(a: &Structure, phi: &Formula, v: Team) -> Result<bool> {
    Evaluator::new(a, phi)?.plus(v)
}

pub fn eval_minus(a: &Structure, phi: &Formula, w: Team) -> Result<bool> {
    Evaluator::new(a, phi)?.minus(w)
}

/// `‖φ‖ = ⟨trumps, cotrumps⟩`.
pub fn meaning(a: &Structure, phi: &Formula) -> Result<Element> {
    meaning_with(a, phi, Limits::default())
}

pub fn meaning_with(a: &Structure, phi: &Formula, limits: Limits) -> Result<Element> {
    let mut ev = Evaluator::with_limit(a, phi, limits.meaning)?;
    let space = ev.space();
    let mut plus = TeamFamily::empty(space.size());
    let mut minus = TeamFamily::empty(space.size());
    for v in space.full_team().subteams() {
        if ev.plus(v)? {
            plus.insert(v);
        }
        if ev.minus(v)? {
            minus.insert(v);
        }
    }
    Element::new(space, plus, minus)
}

/// True or false according to the full team, undetermined otherwise.
pub fn sentence_status(a: &Structure, phi: &Formula) -> Result<SentenceStatus> {
    sentence_status_with(a, phi, Limits::default())
}

pub fn sentence_status_with(
    a: &Structure,
    phi: &Formula,
    limits: Limits,
) -> Result<SentenceStatus> {
    let mut ev = Evaluator::with_limit(a, phi, limits.eval)?;
    let full = ev.space().full_team();
    Ok(if ev.plus(full)? {
        SentenceStatus::True
    } else if ev.minus(full)? {
        SentenceStatus::False
    } else {
        SentenceStatus::Undetermined
    })
}

/// A formula whose meaning is `Ω` over `a`: `∀v0/∅ (v0 = c ∨_N v0 ≠ c)`.
///
/// Requires at least two elements; over a single element every formula is
/// true or false on the full team.
pub fn omega_formula(a: &Structure, vars: usize) -> Result<Formula> {
    if a.universe() < 2 {
        return Err(Error::Invalid(
            "Omega is not the meaning of any formula over a one-element structure".into(),
        ));
    }
    let names = a
        .naming()
        .ok_or_else(|| Error::Invalid("every element must be named by a constant".into()))?;
    let all = IndepSet::full(vars);
    let atom = || Node::eq(Operand::Var(0), Operand::Const(names[0].to_string()));
    let node = Node::forall(0, IndepSet::EMPTY, atom().or(atom().neg(), all));
    Formula::new(node, vars)
}

/// A formula with meaning `x`: `(φ ∨_N χ) ∧_N ((ψ ∧_N χ) ∨_N φ_V)`, where `φ`
/// joins the formulas of the maximal trumps, `ψ` negates the join for the
/// maximal cotrumps, `χ` has meaning `Ω` and `V` is the union of the trumps.
pub fn realize_double_suit(x: &Element, a: &Structure) -> Result<Formula> {
    let space = x.space();
    if a.universe() != space.base() {
        return Err(Error::Dimension(format!(
            "element over {space} for a structure of size {}",
            a.universe()
        )));
    }
    if !x.is_double_suit() {
        return Err(Error::Invalid(format!("{x} is not a double suit")));
    }
    let n = IndepSet::full(space.vars());
    let join = |teams: Vec<Team>| -> Result<Node> {
        let mut nodes = teams
            .into_iter()
            .map(|t| formula_for_team(&space, t, a).map(|f| f.node));
        let first = nodes.next().expect("suits are nonempty")?;
        nodes.try_fold(first, |acc, f| Ok(acc.or(f?, n)))
    };
    let trumps = x.plus_family().maximal();
    let union = trumps.iter().fold(Team::EMPTY, |u, &t| u.union(t));
    let phi = join(trumps)?;
    let psi = join(x.minus_family().maximal())?.neg();
    let chi = omega_formula(a, space.vars())?.node;
    let phi_v = formula_for_team(&space, union, a)?.node;
    let node = phi.or(chi.clone(), n).and(psi.and(chi, n).or(phi_v, n), n);
    Formula::new(node, space.vars())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::alias;
    use crate::syntax::parse;

    fn two() -> Structure {
        Structure::builtin("2").unwrap()
    }

    fn f(text: &str) -> Formula {
        parse(text, None).unwrap()
    }

    #[test]
    fn eloise_wins_on_a_known_team() {
        let phi = f("E v1/{v0} v0 != v1");
        let s = Space::new(2, 2).unwrap();
        let v = Team::parse("{00, 01}", &s).unwrap();
        assert!(eval_plus(&two(), &phi, v).unwrap());
        assert!(!eval_plus(&two(), &phi, s.full_team()).unwrap());
    }

    #[test]
    fn empty_team_is_both() {
        for text in [
            "v0 = c0",
            "E v1/{v0} v0 != v1",
            "(v0 = v1 \\/{v0} ~ (v1 = c1))",
        ] {
            let phi = f(text);
            assert!(eval_plus(&two(), &phi, Team::EMPTY).unwrap());
            assert!(eval_minus(&two(), &phi, Team::EMPTY).unwrap());
        }
    }

    #[test]
    fn abelard_has_no_winning_strategy() {
        let phi = f("A v0/{} E v1/{v0} v0 != v1");
        let full = Space::new(2, 2).unwrap().full_team();
        assert!(!eval_minus(&two(), &phi, full).unwrap());
        let s = Space::new(2, 2).unwrap();
        let w = Team::parse("{01, 10}", &s).unwrap();
        assert!(eval_minus(&two(), &f("v0 = v1"), w).unwrap());
    }

    #[test]
    fn status_of_the_pennies_sentences() {
        let fo = f("A v0/{} E v1/{} v0 != v1");
        let ifg = f("A v0/{} E v1/{v0} v0 != v1");
        assert_eq!(sentence_status(&two(), &fo).unwrap(), SentenceStatus::True);
        assert_eq!(
            sentence_status(&two(), &ifg).unwrap(),
            SentenceStatus::Undetermined
        );
        let one = Structure::builtin("1").unwrap();
        assert_eq!(sentence_status(&one, &ifg).unwrap(), SentenceStatus::False);
        assert!(meaning(&two(), &ifg).unwrap().is_omega());
    }

    #[test]
    fn atomic_meaning_is_perfect() {
        let m = meaning(&two(), &f("v0 = c0")).unwrap();
        let s = Space::new(2, 1).unwrap();
        assert_eq!(m, Element::perfect(s, Team(0b01)).unwrap());
    }

    #[test]
    fn naive_chi_is_not_omega() {
        // The full-independence disjunction alone lets Eloise win on any
        // team where v0 is constant.
        let chi = parse("(v0 = c0 \\/{v0} v0 != c0)", Some(1)).unwrap();
        let s = Space::new(2, 1).unwrap();
        assert_eq!(meaning(&two(), &chi).unwrap(), alias(s, "A").unwrap());
        for m in 2..=4 {
            let a = Structure::builtin(&m.to_string()).unwrap();
            for vars in 1..=2 {
                if m * vars > 6 {
                    continue;
                }
                assert!(meaning(&a, &omega_formula(&a, vars).unwrap())
                    .unwrap()
                    .is_omega());
            }
        }
        assert!(omega_formula(&Structure::builtin("1").unwrap(), 1).is_err());
    }

    #[test]
    fn realizes_named_elements() {
        let s2 = Space::new(2, 1).unwrap();
        let x = Element::perfect(s2, Team(0b01)).unwrap();
        let phi = realize_double_suit(&x, &two()).unwrap();
        assert_eq!(meaning(&two(), &phi).unwrap(), x);
        let om = Element::omega(s2).unwrap();
        assert_eq!(
            meaning(&two(), &realize_double_suit(&om, &two()).unwrap()).unwrap(),
            om
        );
        let three = Structure::builtin("3").unwrap();
        let s3 = Space::new(3, 1).unwrap();
        let b = alias(s3, "B").unwrap();
        assert_eq!(
            meaning(&three, &realize_double_suit(&b, &three).unwrap()).unwrap(),
            b
        );
        let mut plus = TeamFamily::empty(2);
        plus.insert(Team(0b01));
        let not_suit = Element::new(s2, plus, TeamFamily::bottom(2)).unwrap();
        assert!(realize_double_suit(&not_suit, &two()).is_err());
    }

    #[test]
    fn guards() {
        let a = Structure::builtin("4").unwrap();
        let wide = parse("v0 = v1", Some(2)).unwrap();
        assert!(matches!(meaning(&a, &wide), Err(Error::Guard(_))));
        assert!(eval_plus(&a, &wide, Team(1)).is_ok());
        assert!(eval_plus(&two(), &f("v0 = c2"), Team(1)).is_err());
    }
}
