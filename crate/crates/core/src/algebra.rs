//! The IFG-cylindric power set algebra over `^N A`.
//!
//! Elements are arbitrary pairs `⟨X⁺, X⁻⟩` of team families; the
//! operations never assume they are double suits.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{
    expand, saturated_disjoint_covers, substitution_images, IndepSet, Space, Team, TeamFamily,
    FAMILY_MAX_VALUATIONS,
};
use crate::syntax::Term;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Element {
    space: Space,
    plus: TeamFamily,
    minus: TeamFamily,
}

/// Named constants of the algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Constant {
    Zero,
    One,
    Omega,
    Diagonal(usize, usize),
}

/// Structural flags of an element. Each flag implies the ones before it.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Classification {
    pub suit_pair: bool,
    pub double_suit: bool,
    pub flat: bool,
    pub perfect: bool,
}

/// Least number of `+_∅`-joined copies reaching `1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Order {
    Finite(usize),
    Infinite,
}

fn check_family_space(space: &Space) -> Result<()> {
    if space.size() > FAMILY_MAX_VALUATIONS {
        return Err(Error::Guard(format!(
            "{} valuations is more than the {FAMILY_MAX_VALUATIONS} an algebra element can hold",
            space.size()
        )));
    }
    Ok(())
}

/// `{V : V = V1 ∪_J V2, V1 ∈ f, V2 ∈ g}`.
fn cover_join(space: &Space, f: &TeamFamily, g: &TeamFamily, j: IndepSet) -> TeamFamily {
    let mut out = TeamFamily::empty(space.size());
    for v in space.full_team().subteams() {
        if saturated_disjoint_covers(space, v, j).any(|(a, b)| f.contains(a) && g.contains(b)) {
            out.insert(v);
        }
    }
    out
}

impl Element {
    pub fn new(space: Space, plus: TeamFamily, minus: TeamFamily) -> Result<Self> {
        check_family_space(&space)?;
        for fam in [&plus, &minus] {
            if fam.space_size() != space.size() {
                return Err(Error::Dimension(format!(
                    "family over {} valuations in a space of {}",
                    fam.space_size(),
                    space.size()
                )));
            }
        }
        Ok(Element { space, plus, minus })
    }

    pub fn constant(space: Space, kind: Constant) -> Result<Self> {
        check_family_space(&space)?;
        let n = space.size();
        Ok(match kind {
            Constant::Zero => Element {
                space,
                plus: TeamFamily::bottom(n),
                minus: TeamFamily::all(n),
            },
            Constant::One => Element {
                space,
                plus: TeamFamily::all(n),
                minus: TeamFamily::bottom(n),
            },
            Constant::Omega => Element {
                space,
                plus: TeamFamily::bottom(n),
                minus: TeamFamily::bottom(n),
            },
            Constant::Diagonal(i, k) => {
                space.check_var(i)?;
                space.check_var(k)?;
                let same = (0..n)
                    .filter(|&idx| space.entry(idx, i) == space.entry(idx, k))
                    .fold(Team::EMPTY, |t, idx| t.with(idx));
                Element::perfect(space, same)?
            }
        })
    }

    pub fn zero(space: Space) -> Result<Self> {
        Element::constant(space, Constant::Zero)
    }

    pub fn one(space: Space) -> Result<Self> {
        Element::constant(space, Constant::One)
    }

    pub fn omega(space: Space) -> Result<Self> {
        Element::constant(space, Constant::Omega)
    }

    /// `⟨P(V), P(^N A ∖ V)⟩`.
    pub fn perfect(space: Space, v: Team) -> Result<Self> {
        check_family_space(&space)?;
        let n = space.size();
        Ok(Element {
            space,
            plus: TeamFamily::power_set(n, v),
            minus: TeamFamily::power_set(n, space.full_team().difference(v)),
        })
    }

    /// The element whose coordinates are generated by the given maximal
    /// teams.
    pub fn from_maximal(space: Space, trumps: &[Team], cotrumps: &[Team]) -> Result<Self> {
        check_family_space(&space)?;
        let full = space.full_team();
        if let Some(t) = trumps.iter().chain(cotrumps).find(|t| !t.is_subset(full)) {
            return Err(Error::Dimension(format!(
                "team {:#b} is outside {space}",
                t.0
            )));
        }
        let n = space.size();
        Ok(Element {
            space,
            plus: TeamFamily::generated_by(n, trumps.iter().copied()),
            minus: TeamFamily::generated_by(n, cotrumps.iter().copied()),
        })
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn plus_family(&self) -> &TeamFamily {
        &self.plus
    }

    pub fn minus_family(&self) -> &TeamFamily {
        &self.minus
    }

    fn same_space(&self, other: &Element) -> Result<()> {
        if self.space != other.space {
            return Err(Error::Dimension(format!(
                "elements over {} and {}",
                self.space, other.space
            )));
        }
        Ok(())
    }

    /// `¬X = ⟨X⁻, X⁺⟩`.
    pub fn neg(&self) -> Element {
        Element {
            space: self.space,
            plus: self.minus.clone(),
            minus: self.plus.clone(),
        }
    }

    /// `X +_J Y`.
    pub fn plus(&self, other: &Element, j: IndepSet) -> Result<Element> {
        self.same_space(other)?;
        self.space.check_indep(j)?;
        Ok(Element {
            space: self.space,
            plus: cover_join(&self.space, &self.plus, &other.plus, j),
            minus: self.minus.intersection(&other.minus),
        })
    }

    /// `X ·_J Y`, computed directly rather than through De Morgan.
    pub fn times(&self, other: &Element, j: IndepSet) -> Result<Element> {
        self.same_space(other)?;
        self.space.check_indep(j)?;
        Ok(Element {
            space: self.space,
            plus: self.plus.intersection(&other.plus),
            minus: cover_join(&self.space, &self.minus, &other.minus, j),
        })
    }

    /// `C_{n,J}(X)`.
    pub fn cyl(&self, n: usize, j: IndepSet) -> Result<Element> {
        let space = self.space;
        space.check_var(n)?;
        space.check_indep(j)?;
        let mut plus = TeamFamily::empty(space.size());
        let mut minus = TeamFamily::empty(space.size());
        for v in space.full_team().subteams() {
            if substitution_images(&space, v, n, j)?
                .iter()
                .any(|&img| self.plus.contains(img))
            {
                plus.insert(v);
            }
            if self.minus.contains(expand(&space, v, n)?) {
                minus.insert(v);
            }
        }
        Ok(Element { space, plus, minus })
    }

    /// `C_{0,J_0} … C_{N-1,J_{N-1}}(X)`, innermost index `N-1`.
    pub fn full_cyl(&self, js: &[IndepSet]) -> Result<Element> {
        if js.len() != self.space.vars() {
            return Err(Error::Dimension(format!(
                "{} independence sets for {} variables",
                js.len(),
                self.space.vars()
            )));
        }
        let mut x = self.clone();
        for (n, &j) in js.iter().enumerate().rev() {
            x = x.cyl(n, j)?;
        }
        Ok(x)
    }

    /// `X⁺ ⊆ Y⁺` and `Y⁻ ⊆ X⁻`.
    pub fn leq(&self, other: &Element) -> bool {
        self.space == other.space
            && self.plus.is_subset(&other.plus)
            && other.minus.is_subset(&self.minus)
    }

    pub fn classify(&self) -> Classification {
        let suit_pair = self.plus.is_suit() && self.minus.is_suit();
        let double_suit = suit_pair
            && self.plus.intersection(&self.minus) == TeamFamily::bottom(self.space.size());
        let top = self.plus.maximal();
        let flat = double_suit && top.len() == 1;
        let perfect = flat && {
            let rest = self.space.full_team().difference(top[0]);
            self.minus == TeamFamily::power_set(self.space.size(), rest)
        };
        Classification {
            suit_pair,
            double_suit,
            flat,
            perfect,
        }
    }

    pub fn is_double_suit(&self) -> bool {
        self.classify().double_suit
    }

    pub fn is_zero(&self) -> bool {
        self.plus == TeamFamily::bottom(self.space.size())
            && self.minus == TeamFamily::all(self.space.size())
    }

    pub fn is_one(&self) -> bool {
        self.plus == TeamFamily::all(self.space.size())
            && self.minus == TeamFamily::bottom(self.space.size())
    }

    pub fn is_omega(&self) -> bool {
        let bottom = TeamFamily::bottom(self.space.size());
        self.plus == bottom && self.minus == bottom
    }

    /// `kX`: `k` copies joined with `+_∅`, folded from the left.
    pub fn nfold_join(&self, k: usize) -> Result<Element> {
        if k == 0 {
            return Err(Error::Invalid("a join needs at least one copy".into()));
        }
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.plus(self, IndepSet::EMPTY)?;
        }
        Ok(acc)
    }

    /// Least `k` with `kX = 1`, or [`Order::Infinite`] once the sequence
    /// `kX` repeats without reaching `1`.
    pub fn order(&self) -> Order {
        let limit = self.space.team_count() + 1;
        let mut acc = self.clone();
        for k in 1..=limit {
            if acc.is_one() {
                return Order::Finite(k);
            }
            let next = acc
                .plus(self, IndepSet::EMPTY)
                .expect("same space and empty independence set");
            if next == acc {
                return Order::Infinite;
            }
            acc = next;
        }
        Order::Infinite
    }

    /// `<{max trumps} | {max cotrumps}>`.
    pub fn format(&self) -> String {
        format!(
            "<{} | {}>",
            self.plus.format(&self.space),
            self.minus.format(&self.space)
        )
    }

    /// Inverse of [`Element::format`]; coordinates are read as the
    /// downward closures of the listed teams.
    pub fn parse(text: &str, space: Space) -> Result<Element> {
        let t = text.trim();
        let inner = t
            .strip_prefix('<')
            .and_then(|r| r.strip_suffix('>'))
            .ok_or_else(|| Error::parse(0, "an element must be written as `<{...} | {...}>`"))?;
        let (p, m) = inner
            .split_once('|')
            .ok_or_else(|| Error::parse(0, "missing `|` between the coordinates"))?;
        let plus = parse_team_list(p, &space)?;
        let minus = parse_team_list(m, &space)?;
        Element::from_maximal(space, &plus, &minus)
    }
}

/// `{{..}, {..}}` as a list of teams.
pub fn parse_team_list(text: &str, space: &Space) -> Result<Vec<Team>> {
    let t = text.trim();
    let inner = t
        .strip_prefix('{')
        .and_then(|r| r.strip_suffix('}'))
        .ok_or_else(|| Error::parse(0, "a family must be written as `{{...}, ...}`"))?;
    let mut out = Vec::new();
    let mut rest = inner.trim();
    while !rest.is_empty() {
        let close = rest
            .find('}')
            .ok_or_else(|| Error::parse(0, "unterminated team in family"))?;
        out.push(Team::parse(&rest[..=close], space)?);
        rest = rest[close + 1..].trim_start();
        if let Some(r) = rest.strip_prefix(',') {
            rest = r.trim_start();
            if rest.is_empty() {
                return Err(Error::parse(0, "trailing `,` in family"));
            }
        } else if !rest.is_empty() {
            return Err(Error::parse(0, "expected `,` between teams"));
        }
    }
    Ok(out)
}

impl Ord for Element {
    fn cmp(&self, other: &Self) -> Ordering {
        self.space
            .cmp(&other.space)
            .then_with(|| self.plus.cmp(&other.plus))
            .then_with(|| self.minus.cmp(&other.minus))
    }
}

impl PartialOrd for Element {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format())
    }
}

/// Evaluate a term with `X_i` bound to `env[i]`.
pub fn eval_term(t: &Term, env: &[Element], space: Space) -> Result<Element> {
    if let Some(e) = env.iter().find(|e| e.space != space) {
        return Err(Error::Dimension(format!(
            "environment element over {} for a term over {space}",
            e.space
        )));
    }
    fn go(t: &Term, env: &[Element], space: Space) -> Result<Element> {
        Ok(match t {
            Term::Var(i) => env
                .get(*i)
                .cloned()
                .ok_or_else(|| Error::Invalid(format!("X{i} is unbound")))?,
            Term::Diagonal(i, k) => Element::constant(space, Constant::Diagonal(*i, *k))?,
            Term::Zero => Element::zero(space)?,
            Term::One => Element::one(space)?,
            Term::Neg(s) => go(s, env, space)?.neg(),
            Term::Plus(s, u, j) => go(s, env, space)?.plus(&go(u, env, space)?, *j)?,
            Term::Times(s, u, j) => go(s, env, space)?.times(&go(u, env, space)?, *j)?,
            Term::Cyl(n, j, s) => go(s, env, space)?.cyl(*n, *j)?,
        })
    }
    go(t, env, space)
}

/// `T_J(X, Y) = (¬X +_J Y) ·_J (X +_J ¬Y)`, the term of `X ↔_J Y`.
pub fn iff_term(j: IndepSet) -> Term {
    let x = || Term::Var(0);
    let y = || Term::Var(1);
    x().neg().plus(y(), j).times(x().plus(y().neg(), j), j)
}

/// Outcome of [`check_kleene`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KleeneReport {
    pub elements: usize,
    pub tuples_checked: usize,
    /// The first failing law, with the offending elements.
    pub violation: Option<String>,
}

impl KleeneReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// Check that `(carrier, +_N, ·_N, ¬, 0, 1)` is a Kleene algebra, over
/// every tuple of elements.
pub fn check_kleene(carrier: &[Element]) -> Result<KleeneReport> {
    let first = carrier
        .first()
        .ok_or_else(|| Error::Invalid("empty carrier".into()))?;
    let space = first.space;
    let jn = space.all_vars();
    let index: HashMap<&Element, usize> = carrier.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let n = carrier.len();
    let find = |e: &Element, what: &str| {
        index
            .get(e)
            .copied()
            .ok_or_else(|| Error::NotClosed(format!("{what} gives {e}")))
    };
    let zero = find(&Element::zero(space)?, "the constant 0")?;
    let one = find(&Element::one(space)?, "the constant 1")?;
    let mut neg = vec![0; n];
    let mut join = vec![0; n * n];
    let mut meet = vec![0; n * n];
    for (a, x) in carrier.iter().enumerate() {
        neg[a] = find(&x.neg(), &format!("~{x}"))?;
        for (b, y) in carrier.iter().enumerate() {
            join[a * n + b] = find(&x.plus(y, jn)?, &format!("{x} + {y}"))?;
            meet[a * n + b] = find(&x.times(y, jn)?, &format!("{x} * {y}"))?;
        }
    }
    let j = |a: usize, b: usize| join[a * n + b];
    let m = |a: usize, b: usize| meet[a * n + b];
    let leq = |a: usize, b: usize| j(a, b) == b;
    let show = |xs: &[usize]| {
        xs.iter()
            .map(|&i| carrier[i].to_string())
            .collect::<Vec<_>>()
            .join(", ")
    };
    let mut checked = 0;
    let report = |law: &str, xs: &[usize], checked: usize| KleeneReport {
        elements: n,
        tuples_checked: checked,
        violation: Some(format!("{law} fails at {}", show(xs))),
    };
    for a in 0..n {
        checked += 1;
        let laws: [(&str, bool); 5] = [
            ("x + 0 = x", j(a, zero) == a),
            ("x * 1 = x", m(a, one) == a),
            ("x + x = x", j(a, a) == a),
            ("x * x = x", m(a, a) == a),
            ("~~x = x", neg[neg[a]] == a),
        ];
        if let Some((law, _)) = laws.iter().find(|(_, ok)| !ok) {
            return Ok(report(law, &[a], checked));
        }
        for b in 0..n {
            checked += 1;
            let laws: [(&str, bool); 7] = [
                ("x + y = y + x", j(a, b) == j(b, a)),
                ("x * y = y * x", m(a, b) == m(b, a)),
                ("x + (x * y) = x", j(a, m(a, b)) == a),
                ("x * (x + y) = x", m(a, j(a, b)) == a),
                ("~(x + y) = ~x * ~y", neg[j(a, b)] == m(neg[a], neg[b])),
                ("~(x * y) = ~x + ~y", neg[m(a, b)] == j(neg[a], neg[b])),
                ("x * ~x <= y + ~y", leq(m(a, neg[a]), j(b, neg[b]))),
            ];
            if let Some((law, _)) = laws.iter().find(|(_, ok)| !ok) {
                return Ok(report(law, &[a, b], checked));
            }
            for c in 0..n {
                checked += 1;
                let laws: [(&str, bool); 4] = [
                    ("(x + y) + z = x + (y + z)", j(j(a, b), c) == j(a, j(b, c))),
                    ("(x * y) * z = x * (y * z)", m(m(a, b), c) == m(a, m(b, c))),
                    (
                        "x * (y + z) = x * y + x * z",
                        m(a, j(b, c)) == j(m(a, b), m(a, c)),
                    ),
                    (
                        "x + (y * z) = (x + y) * (x + z)",
                        j(a, m(b, c)) == m(j(a, b), j(a, c)),
                    ),
                ];
                if let Some((law, _)) = laws.iter().find(|(_, ok)| !ok) {
                    return Ok(report(law, &[a, b, c], checked));
                }
            }
        }
    }
    Ok(KleeneReport {
        elements: n,
        tuples_checked: checked,
        violation: None,
    })
}

/// Element names used for the one-variable algebras over two and three
/// elements, and the constants everywhere else.
pub fn aliases(space: Space) -> Vec<(&'static str, Element)> {
    let mk = |t: &[u64], c: &[u64]| {
        let ts: Vec<Team> = t.iter().map(|&b| Team(b)).collect();
        let cs: Vec<Team> = c.iter().map(|&b| Team(b)).collect();
        Element::from_maximal(space, &ts, &cs).expect("alias fits its space")
    };
    let mut out = Vec::new();
    let Ok(zero) = Element::zero(space) else {
        return out;
    };
    out.push(("0", zero));
    out.push(("1", Element::one(space).expect("space checked")));
    out.push(("Omega", Element::omega(space).expect("space checked")));
    let named: Vec<(&'static str, Element)> = match (space.base(), space.vars()) {
        (2, 1) => vec![
            ("A", mk(&[0b01, 0b10], &[0])),
            ("B", mk(&[0b01], &[0])),
            ("C", mk(&[0b10], &[0])),
        ],
        (3, 1) => vec![("A", mk(&[0b011], &[0])), ("B", mk(&[0b001, 0b010], &[0]))],
        _ => Vec::new(),
    };
    for (name, e) in named {
        let negated = e.neg();
        out.push((name, e));
        out.push((
            match name {
                "A" => "~A",
                "B" => "~B",
                _ => "~C",
            },
            negated,
        ));
    }
    out
}

/// Look up an alias by name.
pub fn alias(space: Space, name: &str) -> Option<Element> {
    aliases(space)
        .into_iter()
        .find(|(n, _)| *n == name)
        .map(|(_, e)| e)
}

/// The alias of an element, if it has one.
pub fn alias_of(e: &Element) -> Option<&'static str> {
    aliases(e.space)
        .into_iter()
        .find(|(_, x)| x == e)
        .map(|(n, _)| n)
}

/// Alias, `[v0=k]` for the perfect one-point elements of a one-variable
/// space, or the literal.
pub fn label(e: &Element) -> String {
    if let Some(name) = alias_of(e) {
        return name.to_string();
    }
    let s = e.space;
    if s.vars() == 1 {
        for k in 0..s.base() {
            if Element::perfect(s, Team(1 << k)).is_ok_and(|p| &p == e) {
                return format!("[v0={k}]");
            }
        }
    }
    e.format()
}

/// Serialized form of an element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ElementView {
    pub label: String,
    pub literal: String,
    /// Maximal trumps.
    pub plus: Vec<String>,
    /// Maximal cotrumps.
    pub minus: Vec<String>,
    pub suit_pair: bool,
    pub double_suit: bool,
    pub flat: bool,
    pub perfect: bool,
}

impl Element {
    pub fn view(&self) -> ElementView {
        let c = self.classify();
        let teams = |f: &TeamFamily| f.maximal().iter().map(|t| t.format(&self.space)).collect();
        ElementView {
            label: label(self),
            literal: self.format(),
            plus: teams(&self.plus),
            minus: teams(&self.minus),
            suit_pair: c.suit_pair,
            double_suit: c.double_suit,
            flat: c.flat,
            perfect: c.perfect,
        }
    }
}
