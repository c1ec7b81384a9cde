//! Executable checks of the concrete facts about trump semantics and the
//! small IFG-cylindric algebras. Each suite returns a report of named
//! claims; a failing claim carries the counterexample in its detail.

use std::collections::{BTreeSet, HashSet};

use rand::Rng;
use serde::Serialize;

use crate::algebra::{
    alias, check_kleene, eval_term, iff_term, label as element_label, Element, Order,
};
use crate::enumeration::{count_table, dsuit_carrier};
use crate::error::{Error, Result};
use crate::model::{IndepSet, Space, Structure, Team, TeamFamily};
use crate::random::{random_schema, rng, FormulaGen};
use crate::semantics::{eval_plus, meaning, realize_double_suit, sentence_status, SentenceStatus};
use crate::syntax::{
    instantiate, parse, schema_to_term, Formula, Node, Operand, Schema, SchemaNode,
};
use crate::ualg::{
    enumerate_subuniverses, generate_subuniverse, is_congruence, is_hereditarily_simple, is_simple,
    principal_congruence, Congruence, FiniteAlgebra, Signature,
};

pub const DEFAULT_SEED: u64 = 20_231_019;
pub const DEFAULT_TRIALS: usize = 100;

/// Suite names accepted by [`run_suite`], in the order [`verify_all`] runs
/// them.
pub const SUITES: &[&str] = &[
    "pennies",
    "figures",
    "cs2",
    "cs3",
    "iff",
    "schema",
    "no-iff",
    "counting",
    "kleene",
    "identities",
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Claim {
    pub id: String,
    pub anchor: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub seed: Option<u64>,
    pub passed: bool,
    pub claims: Vec<Claim>,
}

impl VerificationReport {
    fn new(suite: &str, seed: Option<u64>) -> Self {
        VerificationReport {
            suite: suite.into(),
            seed,
            passed: true,
            claims: Vec::new(),
        }
    }

    fn check(&mut self, id: &str, anchor: &str, passed: bool, detail: impl Into<String>) {
        self.passed &= passed;
        self.claims.push(Claim {
            id: id.into(),
            anchor: anchor.into(),
            passed,
            detail: detail.into(),
        });
    }

    pub fn failures(&self) -> impl Iterator<Item = &Claim> {
        self.claims.iter().filter(|c| !c.passed)
    }

    /// One line per claim, then a summary line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.claims {
            let mark = if c.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!("{mark} {}/{} [{}]", self.suite, c.id, c.anchor));
            if !c.detail.is_empty() {
                out.push_str(&format!(": {}", c.detail));
            }
            out.push('\n');
        }
        let ok = self.claims.iter().filter(|c| c.passed).count();
        out.push_str(&format!(
            "{}: {ok}/{} claims passed",
            self.suite,
            self.claims.len()
        ));
        if let Some(seed) = self.seed {
            out.push_str(&format!(" (seed {seed})"));
        }
        out.push('\n');
        out
    }
}

fn space(m: usize, vars: usize) -> Space {
    Space::new(m, vars).expect("small space")
}

fn named(space: Space, name: &str) -> Element {
    alias(space, name).unwrap_or_else(|| panic!("alias {name} over {space}"))
}

fn labels(es: &[Element]) -> String {
    let parts: Vec<String> = es.iter().map(element_label).collect();
    format!("{{{}}}", parts.join(", "))
}

fn n_all(space: Space) -> IndepSet {
    IndepSet::full(space.vars())
}

fn two() -> Structure {
    Structure::builtin("2").expect("builtin")
}

fn three() -> Structure {
    Structure::builtin("3").expect("builtin")
}

// ---------------------------------------------------------------------------

pub fn verify_matching_pennies() -> Result<VerificationReport> {
    let mut r = VerificationReport::new("pennies", None);
    let a = two();
    let one = Structure::builtin("1").expect("builtin");
    let fo = parse("A v0/{} E v1/{} v0 != v1", None)?;
    let ifg = parse("A v0/{} E v1/{v0} v0 != v1", None)?;

    let st = sentence_status(&a, &fo)?;
    r.check(
        "fo-true",
        "perfect-information pennies",
        st == SentenceStatus::True,
        format!("{fo} over 2 is {st}"),
    );
    let st = sentence_status(&a, &ifg)?;
    r.check(
        "ifg-undetermined",
        "imperfect-information pennies",
        st == SentenceStatus::Undetermined,
        format!("{ifg} over 2 is {st}"),
    );
    let st = sentence_status(&one, &ifg)?;
    r.check(
        "ifg-false-on-singleton",
        "imperfect-information pennies",
        st == SentenceStatus::False,
        format!("{ifg} over 1 is {st}"),
    );
    let open = parse("E v1/{v0} v0 != v1", None)?;
    let s = space(2, 2);
    let v = Team::parse("{00, 01}", &s)?;
    let win = eval_plus(&a, &open, v)?;
    r.check(
        "winning-team",
        "winning team of the open formula",
        win,
        format!("{} trump of {open}: {win}", v.format(&s)),
    );
    Ok(r)
}

// ---------------------------------------------------------------------------

fn covers(carrier: &[Element]) -> BTreeSet<(usize, usize)> {
    let n = carrier.len();
    let lt = |a: usize, b: usize| a != b && carrier[a].leq(&carrier[b]);
    let mut out = BTreeSet::new();
    for hi in 0..n {
        for lo in 0..n {
            if lt(lo, hi) && !(0..n).any(|z| lt(lo, z) && lt(z, hi)) {
                out.insert((hi, lo));
            }
        }
    }
    out
}

/// Teams over a one-variable space written as digit groups: `"01,2"` is
/// the antichain `{0,1}, {2}`; `""` is `{∅}`.
fn antichain(space: Space, text: &str) -> Element {
    let teams: Vec<Team> = text
        .split(',')
        .filter(|g| !g.is_empty())
        .map(|g| Team(g.bytes().fold(0u64, |acc, d| acc | 1 << (d - b'0') as u64)))
        .collect();
    let plus = if teams.is_empty() {
        TeamFamily::bottom(space.size())
    } else {
        TeamFamily::generated_by(space.size(), teams)
    };
    Element::new(space, plus, TeamFamily::bottom(space.size())).expect("suit pair")
}

/// Vertices of the interval above `Ω` in the three-element algebra, by the
/// maximal trumps of each vertex.
pub const INTERVAL_LABELS: &[&str] = &[
    "012", "01,02,12", "01,02", "01,12", "02,12", "01,2", "02,1", "12,0", "01", "0,1,2", "02",
    "12", "0,1", "0,2", "1,2", "0", "1", "2", "",
];

/// Edges of the drawn interval, upper end first.
pub const INTERVAL_EDGES: &[(&str, &str)] = &[
    ("012", "01,02,12"),
    ("01,02,12", "01,02"),
    ("01,02,12", "01,12"),
    ("01,02,12", "02,12"),
    ("01,02", "01,2"),
    ("01,12", "01,2"),
    ("01,02", "02,1"),
    ("02,12", "02,1"),
    ("01,12", "12,0"),
    ("02,12", "12,0"),
    ("01,2", "01"),
    ("01,2", "0,1,2"),
    ("02,1", "0,1,2"),
    ("12,0", "0,1,2"),
    ("02,1", "02"),
    ("12,0", "12"),
    ("01", "0,1"),
    ("0,1,2", "0,1"),
    ("0,1,2", "0,2"),
    ("02", "0,2"),
    ("0,1,2", "1,2"),
    ("12", "1,2"),
    ("0,1", "0"),
    ("0,2", "0"),
    ("0,1", "1"),
    ("1,2", "1"),
    ("0,2", "2"),
    ("1,2", "2"),
    ("0", ""),
    ("1", ""),
    ("2", ""),
];

/// Edges of the Hasse diagram of the two-element algebra.
pub const CS2_EDGES: &[(&str, &str)] = &[
    ("1", "A"),
    ("A", "B"),
    ("A", "C"),
    ("B", "[v0=0]"),
    ("B", "Omega"),
    ("C", "Omega"),
    ("C", "[v0=1]"),
    ("[v0=0]", "~C"),
    ("Omega", "~C"),
    ("Omega", "~B"),
    ("[v0=1]", "~B"),
    ("~C", "~A"),
    ("~B", "~A"),
    ("~A", "0"),
];

fn edge_diff(got: &BTreeSet<(String, String)>, want: &BTreeSet<(String, String)>) -> String {
    let missing: Vec<String> = want
        .difference(got)
        .map(|(a, b)| format!("{a}-{b}"))
        .collect();
    let extra: Vec<String> = got
        .difference(want)
        .map(|(a, b)| format!("{a}-{b}"))
        .collect();
    format!(
        "missing [{}], extra [{}]",
        missing.join(" "),
        extra.join(" ")
    )
}

/// The closure of `gens` under `+_N` and `·_N`.
fn lattice_closure(gens: &[Element]) -> Result<Vec<Element>> {
    let n = n_all(gens[0].space());
    let mut set: BTreeSet<Element> = gens.iter().cloned().collect();
    loop {
        let items: Vec<Element> = set.iter().cloned().collect();
        let before = set.len();
        for x in &items {
            for y in &items {
                set.insert(x.plus(y, n)?);
                set.insert(x.times(y, n)?);
            }
        }
        if set.len() == before {
            return Ok(items);
        }
    }
}

pub fn verify_figures() -> Result<VerificationReport> {
    let mut r = VerificationReport::new("figures", None);

    let s2 = space(2, 1);
    let c2 = dsuit_carrier(2, 1)?;
    let got: BTreeSet<(String, String)> = covers(&c2)
        .into_iter()
        .map(|(h, l)| (element_label(&c2[h]), element_label(&c2[l])))
        .collect();
    let want: BTreeSet<(String, String)> = CS2_EDGES
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();
    r.check(
        "cs2-hasse",
        "Hasse diagram of the two-element algebra",
        got == want,
        format!("{} edges; {}", got.len(), edge_diff(&got, &want)),
    );
    let p0 = Element::perfect(s2, Team(0b01))?;
    let ok = p0.leq(&named(s2, "B")) && named(s2, "~C").leq(&p0);
    r.check(
        "cs2-perfect-position",
        "Hasse diagram of the two-element algebra",
        ok,
        "~C <= [v0=0] <= B",
    );

    let s3 = space(3, 1);
    let omega = Element::omega(s3)?;
    let interval: Vec<Element> = dsuit_carrier(3, 1)?
        .into_iter()
        .filter(|x| omega.leq(x))
        .collect();
    let drawn: BTreeSet<Element> = INTERVAL_LABELS.iter().map(|t| antichain(s3, t)).collect();
    let got_set: BTreeSet<Element> = interval.iter().cloned().collect();
    r.check(
        "interval-vertices",
        "interval above Omega",
        got_set == drawn && drawn.len() == INTERVAL_LABELS.len(),
        format!(
            "{} elements above Omega, {} drawn vertices",
            got_set.len(),
            drawn.len()
        ),
    );
    let lbl = |e: &Element| -> String {
        INTERVAL_LABELS
            .iter()
            .find(|t| antichain(s3, t) == *e)
            .map(|t| t.to_string())
            .unwrap_or_else(|| e.format())
    };
    let got: BTreeSet<(String, String)> = covers(&interval)
        .into_iter()
        .map(|(h, l)| (lbl(&interval[h]), lbl(&interval[l])))
        .collect();
    let want: BTreeSet<(String, String)> = INTERVAL_EDGES
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();
    r.check(
        "interval-hasse",
        "interval above Omega",
        got == want,
        format!("{} edges; {}", got.len(), edge_diff(&got, &want)),
    );
    let bottom = interval.iter().find(|x| interval.iter().all(|y| x.leq(y)));
    r.check(
        "interval-bottom",
        "interval above Omega",
        bottom == Some(&omega) && lbl(&omega).is_empty(),
        format!("bottom {}", bottom.map(Element::format).unwrap_or_default()),
    );
    // Below the top, the interval is the free distributive lattice on the
    // three two-element teams.
    let gens: Vec<Element> = ["01", "02", "12"]
        .iter()
        .map(|t| antichain(s3, t))
        .collect();
    let fd = lattice_closure(&gens)?;
    let one = Element::one(s3)?;
    let rest: BTreeSet<Element> = got_set.iter().filter(|x| **x != one).cloned().collect();
    let fd_set: BTreeSet<Element> = fd.iter().cloned().collect();
    r.check(
        "free-distributive",
        "interval above Omega",
        fd.len() == 18 && fd_set == rest,
        format!(
            "lattice generated by {{01}}, {{02}}, {{12}} has {} elements; interval without its top has {}",
            fd.len(),
            rest.len()
        ),
    );
    Ok(r)
}

// ---------------------------------------------------------------------------

fn full_algebra(m: usize) -> Result<FiniteAlgebra> {
    FiniteAlgebra::new(dsuit_carrier(m, 1)?, Signature::new(space(m, 1)))
}

/// Meanings of the atomic formulas over a fully named structure in one
/// variable.
fn atomic_meanings(a: &Structure) -> Result<Vec<Element>> {
    let names: Vec<String> = a
        .naming()
        .ok_or_else(|| Error::Invalid("structure is not fully named".into()))?
        .into_iter()
        .map(String::from)
        .collect();
    let mut operands = vec![Operand::Var(0)];
    operands.extend(names.iter().cloned().map(Operand::Const));
    let mut out = Vec::new();
    for x in &operands {
        for y in &operands {
            let phi = Formula::new(Node::eq(x.clone(), y.clone()), 1)?;
            out.push(meaning(a, &phi)?);
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

fn check_atomic_generation(r: &mut VerificationReport, a: &Structure) -> Result<()> {
    let m = a.universe();
    let carrier = dsuit_carrier(m, 1)?;
    let atoms = atomic_meanings(a)?;
    let generated = generate_subuniverse(&atoms, &Signature::new(space(m, 1)))?;
    r.check(
        "atomic-generation",
        "every double suit is a meaning",
        generated.carrier() == carrier.as_slice(),
        format!(
            "{} atomic meanings generate {} of {} double suits",
            atoms.len(),
            generated.len(),
            carrier.len()
        ),
    );
    Ok(())
}

fn set_of(alg: &FiniteAlgebra, idx: &[usize]) -> BTreeSet<Element> {
    idx.iter().map(|&i| alg.element(i).clone()).collect()
}

pub fn verify_cs2() -> Result<VerificationReport> {
    let mut r = VerificationReport::new("cs2", None);
    let s = space(2, 1);
    let alg = full_algebra(2)?;
    let sig = alg.signature().clone();
    r.check(
        "carrier",
        "double suits over two elements",
        alg.len() == 11,
        format!("{} elements", alg.len()),
    );
    check_atomic_generation(&mut r, &two())?;

    let e = |n: &str| named(s, n);
    let p0 = Element::perfect(s, Team(0b01))?;
    let p1 = Element::perfect(s, Team(0b10))?;
    let (a, b, c) = (e("A"), e("B"), e("C"));
    let ids: Vec<(&str, Element, Element)> = vec![
        ("A +{} A = 1", a.plus(&a, IndepSet::EMPTY)?, e("1")),
        ("B +{} C = 1", b.plus(&c, IndepSet::EMPTY)?, e("1")),
        (
            "~B +{} ~C = Omega",
            e("~B").plus(&e("~C"), IndepSet::EMPTY)?,
            e("Omega"),
        ),
        ("B +{0} C = A", b.plus(&c, n_all(s))?, a.clone()),
        ("B +{0} [v0=0] = B", b.plus(&p0, n_all(s))?, b.clone()),
        ("C +{0} [v0=0] = A", c.plus(&p0, n_all(s))?, a.clone()),
        ("B +{} B = B", b.nfold_join(2)?, b.clone()),
        ("B *{} C = Omega", b.times(&c, IndepSet::EMPTY)?, e("Omega")),
    ];
    for (id, got, want) in ids {
        r.check(
            id,
            "identities in the simplicity proof",
            got == want,
            format!("got {}", element_label(&got)),
        );
    }

    let subs = enumerate_subuniverses(&alg)?;
    let got: BTreeSet<BTreeSet<Element>> = subs.iter().map(|u| set_of(&alg, u)).collect();
    let mk = |names: &[&str]| -> BTreeSet<Element> {
        names
            .iter()
            .map(|n| match *n {
                "[v0=0]" => p0.clone(),
                "[v0=1]" => p1.clone(),
                _ => e(n),
            })
            .collect()
    };
    let catalogue: Vec<(&str, BTreeSet<Element>)> = vec![
        ("{0,1}", mk(&["0", "1"])),
        ("{0,Omega,1}", mk(&["0", "Omega", "1"])),
        ("<A>", mk(&["0", "~A", "Omega", "A", "1"])),
        ("<B>", mk(&["0", "~B", "Omega", "B", "1"])),
        ("<C>", mk(&["0", "~C", "Omega", "C", "1"])),
        ("<A,B>", mk(&["0", "~A", "~B", "Omega", "B", "A", "1"])),
        ("<A,C>", mk(&["0", "~A", "~C", "Omega", "C", "A", "1"])),
        (
            "<B,C>",
            mk(&["0", "~A", "~B", "~C", "Omega", "C", "B", "A", "1"]),
        ),
        ("full", alg.carrier().iter().cloned().collect()),
    ];
    let want: BTreeSet<BTreeSet<Element>> = catalogue.iter().map(|(_, s)| s.clone()).collect();
    r.check(
        "subuniverse-catalogue",
        "proper subalgebras of the two-element algebra",
        got == want && subs.len() == 9,
        format!(
            "{} subuniverses: {}",
            subs.len(),
            subs.iter()
                .map(|u| labels(&set_of(&alg, u).into_iter().collect::<Vec<_>>()))
                .collect::<Vec<_>>()
                .join(" ")
        ),
    );
    for (name, gens) in [
        ("<A>", vec![a.clone()]),
        ("<B>", vec![b.clone()]),
        ("<A,B>", vec![a.clone(), b.clone()]),
        ("<B,C>", vec![b.clone(), c.clone()]),
    ] {
        let sub = generate_subuniverse(&gens, &sig)?;
        let want = &catalogue
            .iter()
            .find(|(n, _)| *n == name)
            .expect("listed")
            .1;
        let got: BTreeSet<Element> = sub.carrier().iter().cloned().collect();
        r.check(
            &format!("generated {name}"),
            "proper subalgebras of the two-element algebra",
            &got == want,
            format!("{} elements: {}", got.len(), labels(sub.carrier())),
        );
    }

    let (ia, ib) = (
        alg.index_of(&a).expect("in carrier"),
        alg.index_of(&b).expect("in carrier"),
    );
    let cg = principal_congruence(&alg, ia, ib);
    r.check(
        "cg-a-b-total",
        "simplicity of the two-element algebra",
        cg.is_total(),
        format!("Cg(A,B) has {} blocks", cg.block_count()),
    );
    let mut bad = Vec::new();
    for u in &subs {
        let rep = is_simple(&alg.subalgebra(u)?)?;
        if !rep.simple {
            bad.push(labels(&set_of(&alg, u).into_iter().collect::<Vec<_>>()));
        }
    }
    r.check(
        "every-subalgebra-simple",
        "hereditary simplicity of the two-element algebra",
        bad.is_empty(),
        if bad.is_empty() {
            format!("{} subalgebras simple", subs.len())
        } else {
            format!("not simple: {}", bad.join(" "))
        },
    );
    let rep = is_hereditarily_simple(&alg)?;
    r.check(
        "hereditarily-simple",
        "hereditary simplicity of the two-element algebra",
        rep.hereditarily_simple,
        "",
    );
    Ok(r)
}

// ---------------------------------------------------------------------------

/// The partition of `⟨B⟩` in the three-element algebra identifying `A`
/// with `B` and `¬A` with `¬B`.
fn b_partition(sub: &FiniteAlgebra) -> Result<Congruence> {
    let s = sub.signature().space();
    let idx = |n: &str| sub.index_of(&named(s, n)).expect("in <B>");
    let blocks = vec![
        vec![idx("A"), idx("B")],
        vec![idx("~A"), idx("~B")],
        vec![idx("0")],
        vec![idx("Omega")],
        vec![idx("1")],
    ];
    Congruence::from_blocks(sub.len(), &blocks)
}

fn sub_b() -> Result<FiniteAlgebra> {
    let s = space(3, 1);
    generate_subuniverse(&[named(s, "B")], &Signature::new(s))
}

/// The ten `+_∅` and ten `+_{0}` identities of `⟨B⟩`: summands, then the
/// two sums.
pub const CS3_TABLE: &[(&str, &str, &str, &str)] = &[
    ("A", "A", "A", "A"),
    ("A", "B", "A", "A"),
    ("B", "B", "A", "B"),
    ("A", "~A", "A", "A"),
    ("A", "~B", "A", "A"),
    ("B", "~A", "B", "B"),
    ("B", "~B", "B", "B"),
    ("~A", "~A", "~A", "~A"),
    ("~A", "~B", "~B", "~B"),
    ("~B", "~B", "~B", "~B"),
];

pub fn verify_cs3(seed: u64) -> Result<VerificationReport> {
    let mut r = VerificationReport::new("cs3", Some(seed));
    let s = space(3, 1);
    let alg = full_algebra(3)?;
    r.check(
        "carrier",
        "double suits over three elements",
        alg.len() == 55,
        format!("{} elements", alg.len()),
    );
    check_atomic_generation(&mut r, &three())?;
    let rep = is_simple(&alg)?;
    r.check(
        "simple",
        "simplicity of the full algebra",
        rep.simple && rep.pairs_checked == 55 * 54 / 2,
        match &rep.witness {
            None => format!("{} principal congruences, all total", rep.pairs_checked),
            Some((x, y, cg)) => format!(
                "Cg({}, {}) = {}",
                alg.label(*x),
                alg.label(*y),
                cg.format(&alg)
            ),
        },
    );

    let sub = sub_b()?;
    let want: BTreeSet<Element> = ["0", "~A", "~B", "Omega", "B", "A", "1"]
        .iter()
        .map(|n| named(s, n))
        .collect();
    let got: BTreeSet<Element> = sub.carrier().iter().cloned().collect();
    r.check(
        "generated <B>",
        "the subalgebra generated by B",
        got == want,
        format!("{} elements: {}", got.len(), labels(sub.carrier())),
    );
    for &(x, y, sum0, sum1) in CS3_TABLE {
        for (j, want) in [(IndepSet::EMPTY, sum0), (n_all(s), sum1)] {
            let got = named(s, x).plus(&named(s, y), j)?;
            r.check(
                &format!("{x} +{j} {y} = {want}"),
                "operation table of <B>",
                got == named(s, want),
                format!("got {}", element_label(&got)),
            );
        }
    }
    let theta = b_partition(&sub)?;
    let ok = is_congruence(&sub, &theta)?;
    r.check(
        "partition-congruence",
        "the subalgebra generated by B is not simple",
        ok && !theta.is_identity() && !theta.is_total(),
        format!("{} is a congruence: {ok}", theta.format(&sub)),
    );
    let (ia, ib) = (
        sub.index_of(&named(s, "A")).expect("in <B>"),
        sub.index_of(&named(s, "B")).expect("in <B>"),
    );
    let cg = principal_congruence(&sub, ia, ib);
    r.check(
        "cg-a-b",
        "the subalgebra generated by B is not simple",
        cg == theta,
        format!("Cg(A,B) = {}", cg.format(&sub)),
    );
    let rep = is_hereditarily_simple(&alg)?;
    r.check(
        "not-hereditarily-simple",
        "the three-element algebra is not hereditarily simple",
        !rep.hereditarily_simple,
        format!("{} subuniverses", rep.subuniverses.len()),
    );

    let singles = antichain(s, "0,1,2");
    let pair = antichain(s, "01,2");
    let (o1, o2) = (singles.order(), pair.order());
    r.check(
        "orders-differ",
        "congruent elements of different order",
        o1 == Order::Finite(3) && o2 == Order::Finite(2),
        format!(
            "order of {{0}},{{1}},{{2}} is {o1:?}; of {{0,1}},{{2}} is {o2:?} (counting copies)"
        ),
    );

    let a = three();
    let carrier = alg.carrier();
    let mut picks = vec![named(s, "A")];
    let mut g = rng(seed);
    while picks.len() < 20 {
        picks.push(carrier[g.gen_range(0..carrier.len())].clone());
    }
    let mut bad = Vec::new();
    for x in &picks {
        let phi = realize_double_suit(x, &a)?;
        let got = meaning(&a, &phi)?;
        if &got != x {
            bad.push(format!("{x} realized as {phi} means {got}"));
        }
    }
    r.check(
        "realize-20",
        "every double suit is a meaning",
        bad.is_empty(),
        if bad.is_empty() {
            format!("{} double suits realized", picks.len())
        } else {
            bad.join("; ")
        },
    );
    Ok(r)
}

// ---------------------------------------------------------------------------

pub fn verify_iff_props() -> Result<VerificationReport> {
    let mut r = VerificationReport::new("iff", None);
    for m in [2, 3] {
        let s = space(m, 1);
        let carrier = dsuit_carrier(m, 1)?;
        let perfect: Vec<&Element> = carrier.iter().filter(|x| x.classify().perfect).collect();
        let t0 = iff_term(IndepSet::EMPTY);
        let tn = iff_term(n_all(s));
        let (mut bad0, mut badn) = (Vec::new(), Vec::new());
        for x in &carrier {
            for y in &carrier {
                let env = [x.clone(), y.clone()];
                let v0 = eval_term(&t0, &env, s)?.is_one();
                if v0 != (x == y && x.classify().perfect) {
                    bad0.push(format!("({}, {})", element_label(x), element_label(y)));
                }
                let vn = eval_term(&tn, &env, s)?.is_one();
                if vn != (x == y && (x.is_zero() || x.is_one())) {
                    badn.push(format!("({}, {})", element_label(x), element_label(y)));
                }
            }
        }
        let pairs = carrier.len() * carrier.len();
        r.check(
            &format!("t-empty-{m}"),
            "iff with empty independence set",
            bad0.is_empty(),
            if bad0.is_empty() {
                format!("{pairs} pairs; {} perfect elements", perfect.len())
            } else {
                format!("mismatch at {}", bad0.join(" "))
            },
        );
        r.check(
            &format!("t-full-{m}"),
            "iff with full independence set",
            badn.is_empty(),
            if badn.is_empty() {
                format!("{pairs} pairs")
            } else {
                format!("mismatch at {}", badn.join(" "))
            },
        );
        if m == 2 {
            let want: BTreeSet<Element> = [
                Element::zero(s)?,
                Element::one(s)?,
                Element::perfect(s, Team(0b01))?,
                Element::perfect(s, Team(0b10))?,
            ]
            .into_iter()
            .collect();
            let got: BTreeSet<Element> = perfect.iter().map(|x| (*x).clone()).collect();
            r.check(
                "perfect-2",
                "iff with empty independence set",
                got == want,
                labels(&got.into_iter().collect::<Vec<_>>()),
            );
        }
    }

    // The same characterization through semantics: realize each element
    // over 2 and evaluate the derived biconditional.
    let a = two();
    let s = space(2, 1);
    let carrier = dsuit_carrier(2, 1)?;
    let formulas: Vec<Formula> = carrier
        .iter()
        .map(|x| realize_double_suit(x, &a))
        .collect::<Result<_>>()?;
    let mut bad = Vec::new();
    for j in [IndepSet::EMPTY, n_all(s)] {
        for (x, phi) in carrier.iter().zip(&formulas) {
            for (y, psi) in carrier.iter().zip(&formulas) {
                let both = Formula::new(phi.node.clone().iff(psi.node.clone(), j), 1)?;
                let sem = meaning(&a, &both)?;
                let alg = eval_term(&iff_term(j), &[x.clone(), y.clone()], s)?;
                if sem != alg {
                    bad.push(format!(
                        "J={j} ({}, {}): meaning {sem}, term {alg}",
                        element_label(x),
                        element_label(y)
                    ));
                }
            }
        }
    }
    r.check(
        "semantic-cross-check",
        "iff as a derived connective",
        bad.is_empty(),
        if bad.is_empty() {
            format!(
                "{} biconditionals over 2",
                2 * carrier.len() * carrier.len()
            )
        } else {
            bad.join("; ")
        },
    );
    Ok(r)
}

// ---------------------------------------------------------------------------

fn schema_trial(a: &Structure, schema: &Schema, args: &[Formula]) -> Result<Option<String>> {
    let phi = instantiate(schema, args)?;
    let sem = meaning(a, &phi)?;
    let env: Vec<Element> = args.iter().map(|f| meaning(a, f)).collect::<Result<_>>()?;
    let term = schema_to_term(schema);
    let space = Space::new(a.universe(), schema.vars)?;
    let alg = eval_term(&term, &env, space)?;
    Ok((sem != alg).then(|| {
        format!(
            "schema {schema} with ({}): meaning {sem}, term {term} gives {alg}",
            args.iter()
                .map(|f| f.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        )
    }))
}

pub fn verify_schema_lemma(trials: usize, seed: u64) -> Result<VerificationReport> {
    let mut r = VerificationReport::new("schema", Some(seed));
    let a = two();
    let atoms = [parse("v0 = c0", Some(1))?, parse("v0 = c1", Some(1))?];
    let or = Schema::new(
        SchemaNode::Var(0).or(SchemaNode::Var(1), IndepSet::EMPTY),
        1,
        2,
    )?;
    let ex = Schema::new(
        SchemaNode::exists(0, IndepSet::full(1), SchemaNode::Var(0).neg()),
        1,
        2,
    )?;
    for (id, schema) in [("disjunction", &or), ("quantifier", &ex)] {
        let bad = schema_trial(&a, schema, &atoms)?;
        r.check(
            id,
            "schemas and terms agree",
            bad.is_none(),
            bad.unwrap_or_else(|| format!("{schema}")),
        );
    }

    let mut g = rng(seed);
    let mut bad = None;
    for i in 0..trials {
        let vars = g.gen_range(1..=2);
        let schema = random_schema(&mut g, vars, 2, 3);
        let gen = FormulaGen::new(vars, &["c0", "c1"], 2);
        let args = [gen.formula(&mut g), gen.formula(&mut g)];
        if let Some(msg) = schema_trial(&a, &schema, &args)? {
            bad = Some(format!("trial {i}: {msg}"));
            break;
        }
    }
    r.check(
        "random-trials",
        "schemas and terms agree",
        bad.is_none(),
        bad.unwrap_or_else(|| format!("{trials} trials over 2")),
    );
    Ok(r)
}

// ---------------------------------------------------------------------------

/// Distinct binary term operations of depth at most `depth`, each as its
/// table over all pairs `(x, y)` at index `x * n + y`.
pub fn term_tables(alg: &FiniteAlgebra, depth: usize) -> Vec<Vec<u8>> {
    let n = alg.len();
    assert!(
        n <= u8::MAX as usize,
        "tables hold element indices as bytes"
    );
    let mut unary: Vec<Vec<u8>> = Vec::new();
    let mut binary: Vec<Vec<u8>> = Vec::new();
    for &op in alg.signature().operations() {
        if op.arity() == 1 {
            unary.push(
                (0..n)
                    .map(|x| alg.apply(op, &[x]).expect("closed") as u8)
                    .collect(),
            );
        } else {
            binary.push(
                (0..n * n)
                    .map(|p| alg.apply(op, &[p / n, p % n]).expect("closed") as u8)
                    .collect(),
            );
        }
    }
    let mut all: Vec<Vec<u8>> = Vec::new();
    let mut seen: HashSet<Vec<u8>> = HashSet::new();
    let mut push = |t: Vec<u8>, all: &mut Vec<Vec<u8>>| {
        if seen.insert(t.clone()) {
            all.push(t);
        }
    };
    push((0..n * n).map(|p| (p / n) as u8).collect(), &mut all);
    push((0..n * n).map(|p| (p % n) as u8).collect(), &mut all);
    for &c in alg.constant_indices() {
        push(vec![c as u8; n * n], &mut all);
    }
    let mut start = 0;
    for _ in 0..depth {
        let end = all.len();
        let mut fresh = Vec::new();
        for t in &all[start..end] {
            for u in &unary {
                fresh.push(t.iter().map(|&v| u[v as usize]).collect::<Vec<u8>>());
            }
        }
        for i in 0..end {
            for k in 0..end {
                if i < start && k < start {
                    continue;
                }
                let (t, w) = (&all[i], &all[k]);
                for b in &binary {
                    fresh.push(
                        t.iter()
                            .zip(w)
                            .map(|(&x, &y)| b[x as usize * n + y as usize])
                            .collect(),
                    );
                }
            }
        }
        for t in fresh {
            push(t, &mut all);
        }
        start = end;
    }
    all
}

fn detects_equality(table: &[u8], n: usize, one: usize, eq: impl Fn(usize, usize) -> bool) -> bool {
    (0..n * n).all(|p| (table[p] as usize == one) == eq(p / n, p % n))
}

pub fn verify_no_iff_schema() -> Result<VerificationReport> {
    let mut r = VerificationReport::new("no-iff", None);
    let s = space(3, 1);
    let sub = sub_b()?;
    let theta = b_partition(&sub)?;
    let idx = |name: &str| sub.index_of(&named(s, name)).expect("in <B>");
    let (ia, ib, i1) = (idx("A"), idx("B"), idx("1"));
    r.check(
        "witness-congruence",
        "the subalgebra generated by B is not simple",
        is_congruence(&sub, &theta)? && theta.related(ia, ib) && ia != ib,
        format!("theta = {}", theta.format(&sub)),
    );
    r.check(
        "class-of-one",
        "the subalgebra generated by B is not simple",
        theta.class_of(i1) == vec![i1],
        format!(
            "class of 1: {{{}}}",
            theta
                .class_of(i1)
                .iter()
                .map(|&i| sub.label(i))
                .collect::<Vec<_>>()
                .join(", ")
        ),
    );

    let n = sub.len();
    let tables = term_tables(&sub, 3);
    let detector = tables
        .iter()
        .find(|t| detects_equality(t, n, i1, |x, y| x == y));
    let incompatible = tables
        .iter()
        .find(|t| !theta.related(t[ia * n + ib] as usize, t[ia * n + ia] as usize));
    r.check(
        "term-sweep",
        "no term defines equality on <B>",
        detector.is_none() && incompatible.is_none(),
        match (detector, incompatible) {
            (None, None) => format!(
                "{} term operations of depth <= 3, none detects equality",
                tables.len()
            ),
            (Some(t), _) => format!("equality detected by table {t:?}"),
            (_, Some(t)) => format!("table {t:?} breaks compatibility at (A,B)"),
        },
    );
    let hs = is_hereditarily_simple(&full_algebra(3)?)?;
    r.check(
        "contrapositive",
        "an equality term forces hereditary simplicity",
        !hs.hereditarily_simple,
        "the three-element algebra has a non-simple subalgebra, so no schema defines iff",
    );

    // Over two elements the same sweep finds the empty-J biconditional,
    // which detects equality only between perfect elements.
    let s2 = space(2, 1);
    let alg = full_algebra(2)?;
    let n = alg.len();
    let one = alg.index_of(&Element::one(s2)?).expect("in carrier");
    let t0: Vec<u8> = (0..n * n)
        .map(|p| {
            let env = [alg.element(p / n).clone(), alg.element(p % n).clone()];
            let v = eval_term(&iff_term(IndepSet::EMPTY), &env, s2).expect("same space");
            alg.index_of(&v).expect("closed") as u8
        })
        .collect();
    let tables = term_tables(&alg, 3);
    let found = tables.contains(&t0);
    let perfect_only = detects_equality(&t0, n, one, |x, y| {
        x == y && alg.element(x).classify().perfect
    });
    r.check(
        "cs2-sweep",
        "iff with empty independence set",
        found && perfect_only && !detects_equality(&t0, n, one, |x, y| x == y),
        format!(
            "{} term operations of depth <= 3 over the two-element algebra; T_empty present: {found}; full equality detectors: {}",
            tables.len(),
            tables.iter().filter(|t| detects_equality(t, n, one, |x, y| x == y)).count()
        ),
    );
    Ok(r)
}

// ---------------------------------------------------------------------------

/// Suit and double-suit counts for `m = 0..=5`.
pub const SUIT_COUNTS: &[(u64, u64)] =
    &[(1, 1), (2, 3), (5, 11), (19, 55), (167, 489), (7580, 17279)];

pub fn verify_counting() -> Result<VerificationReport> {
    let mut r = VerificationReport::new("counting", None);
    let rows = count_table(5)?;
    for (row, &(f, g)) in rows.iter().zip(SUIT_COUNTS) {
        r.check(
            &format!("m={}", row.m),
            "suit and double-suit counts",
            row.suits == f && row.double_suits == g,
            format!("{} suits, {} double suits", row.suits, row.double_suits),
        );
    }
    Ok(r)
}

pub fn verify_kleene() -> Result<VerificationReport> {
    let mut r = VerificationReport::new("kleene", None);
    for m in [2, 3] {
        let rep = check_kleene(&dsuit_carrier(m, 1)?)?;
        r.check(
            &format!("carrier-{m}"),
            "the join-meet-negation reduct is a Kleene algebra",
            rep.passed(),
            match &rep.violation {
                None => format!("{} elements, {} tuples", rep.elements, rep.tuples_checked),
                Some(v) => v.clone(),
            },
        );
    }
    Ok(r)
}

/// Short-circuit identities of the joins, absorption below `Ω` and below
/// flat elements, and the value of full cylindrification.
pub fn verify_identities() -> Result<VerificationReport> {
    let mut r = VerificationReport::new("identities", None);
    for (m, vars) in [(2, 1), (3, 1)] {
        let s = space(m, vars);
        let carrier = dsuit_carrier(m, vars)?;
        let (zero, one, omega) = (Element::zero(s)?, Element::one(s)?, Element::omega(s)?);
        let js: Vec<IndepSet> = IndepSet::all_subsets(vars).collect();
        let mut bad: Vec<String> = Vec::new();
        for x in &carrier {
            for &j in &js {
                if x.plus(&zero, j)? != *x
                    || !x.plus(&one, j)?.is_one()
                    || x.times(&one, j)? != *x
                    || !x.times(&zero, j)?.is_zero()
                {
                    bad.push(format!("X = {x}, J = {j}"));
                }
            }
        }
        r.check(
            &format!("units-{m}"),
            "identities for 0 and 1",
            bad.is_empty(),
            bad.first()
                .cloned()
                .unwrap_or_else(|| format!("{} elements", carrier.len())),
        );
        let mut bad_n = None;
        let mut bad_omega = None;
        let mut bad_flat = None;
        for x in &carrier {
            for y in &carrier {
                let join = x.plus(y, n_all(s))?;
                let direct = Element::new(
                    s,
                    x.plus_family().union(y.plus_family()),
                    x.minus_family().intersection(y.minus_family()),
                )?;
                if join != direct && bad_n.is_none() {
                    bad_n = Some(format!("X = {x}, Y = {y}: {join}"));
                }
                if !x.leq(y) {
                    continue;
                }
                let flat = y.classify().flat;
                for &j in &js {
                    let sum = x.plus(y, j)?;
                    if x.leq(&omega) && sum != *y && bad_omega.is_none() {
                        bad_omega = Some(format!("X = {x}, Y = {y}, J = {j}: {sum}"));
                    }
                    if flat && sum != *y && bad_flat.is_none() {
                        bad_flat = Some(format!("X = {x}, Y = {y}, J = {j}: {sum}"));
                    }
                }
            }
        }
        for (id, anchor, bad) in [
            ("full-join", "join with full independence set", bad_n),
            ("below-omega", "absorption below Omega", bad_omega),
            ("flat", "absorption by flat elements", bad_flat),
        ] {
            r.check(
                &format!("{id}-{m}"),
                anchor,
                bad.is_none(),
                bad.unwrap_or_default(),
            );
        }
    }
    for (m, vars) in [(2, 1), (3, 1), (2, 2)] {
        let s = space(m, vars);
        let omega = Element::omega(s)?;
        let mut bad = None;
        let mut count = 0;
        let choices: Vec<Vec<IndepSet>> = (0..vars).fold(vec![Vec::new()], |acc, _| {
            acc.into_iter()
                .flat_map(|p| {
                    IndepSet::all_subsets(vars).map(move |j| {
                        let mut q = p.clone();
                        q.push(j);
                        q
                    })
                })
                .collect()
        });
        for x in dsuit_carrier(m, vars)? {
            let want = if x.is_zero() {
                Element::zero(s)?
            } else if x.leq(&omega) {
                omega.clone()
            } else {
                Element::one(s)?
            };
            for js in &choices {
                count += 1;
                let got = x.full_cyl(js)?;
                if got != want && bad.is_none() {
                    bad = Some(format!("X = {x}, J = {js:?}: {got}"));
                }
            }
        }
        r.check(
            &format!("cylindrification-{m}-{vars}"),
            "full cylindrification is 0, Omega or 1",
            bad.is_none(),
            bad.unwrap_or_else(|| format!("{count} cylindrifications")),
        );
    }
    Ok(r)
}

// ---------------------------------------------------------------------------

/// Run one suite by name.
pub fn run_suite(name: &str, seed: u64, trials: usize) -> Result<VerificationReport> {
    match name {
        "pennies" => verify_matching_pennies(),
        "figures" => verify_figures(),
        "cs2" => verify_cs2(),
        "cs3" => verify_cs3(seed),
        "iff" => verify_iff_props(),
        "schema" => verify_schema_lemma(trials, seed),
        "no-iff" => verify_no_iff_schema(),
        "counting" => verify_counting(),
        "kleene" => verify_kleene(),
        "identities" => verify_identities(),
        _ => Err(Error::Invalid(format!(
            "unknown suite `{name}`; expected one of {}",
            SUITES.join(", ")
        ))),
    }
}

pub fn verify_all(seed: u64, trials: usize) -> Result<Vec<VerificationReport>> {
    SUITES.iter().map(|s| run_suite(s, seed, trials)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_passes(r: VerificationReport) {
        assert!(r.passed, "{}", r.to_text());
    }

    #[test]
    fn pennies() {
        assert_passes(verify_matching_pennies().unwrap());
    }

    #[test]
    fn figures() {
        assert_passes(verify_figures().unwrap());
    }

    #[test]
    fn interval_tables_are_consistent() {
        let s = space(3, 1);
        let set: BTreeSet<Element> = INTERVAL_LABELS.iter().map(|t| antichain(s, t)).collect();
        assert_eq!(set.len(), 19);
        assert_eq!(INTERVAL_EDGES.len(), 31);
        for (a, b) in INTERVAL_EDGES {
            assert!(antichain(s, b).leq(&antichain(s, a)), "{a} over {b}");
        }
    }

    #[test]
    fn unknown_suite() {
        assert!(run_suite("nope", 0, 1).is_err());
    }

    #[test]
    fn report_text_marks_failures() {
        let mut r = VerificationReport::new("x", Some(5));
        r.check("a", "anchor", true, "");
        r.check("b", "anchor", false, "counterexample");
        assert!(!r.passed);
        let text = r.to_text();
        assert!(text.contains("PASS x/a [anchor]\n"));
        assert!(text.contains("FAIL x/b [anchor]: counterexample"));
        assert!(text.ends_with("x: 1/2 claims passed (seed 5)\n"));
    }
}
