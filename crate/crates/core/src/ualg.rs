//! Finite universal algebra on carriers of IFG-cylindric set algebras:
//! subuniverses, congruences and simplicity.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use crate::algebra::{label, Constant, Element};
use crate::error::{Error, Result};
use crate::model::{IndepSet, Space};

/// Default bound on the size of a generated subuniverse.
pub const DEFAULT_ELEMENT_CAP: usize = 100_000;

/// Carriers up to this size have their subuniverses enumerated by checking
/// every subset.
pub const EXHAUSTIVE_SUBSET_LIMIT: usize = 16;

/// Largest carrier [`is_simple`] will examine.
pub const SIMPLICITY_LIMIT: usize = 1000;

/// A non-constant operation of the signature.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Operation {
    Neg,
    Plus(IndepSet),
    Times(IndepSet),
    Cyl(usize, IndepSet),
}

impl Operation {
    pub fn arity(self) -> usize {
        match self {
            Operation::Neg | Operation::Cyl(..) => 1,
            Operation::Plus(_) | Operation::Times(_) => 2,
        }
    }

    pub fn apply(self, args: &[&Element]) -> Result<Element> {
        match (self, args) {
            (Operation::Neg, [x]) => Ok(x.neg()),
            (Operation::Cyl(n, j), [x]) => x.cyl(n, j),
            (Operation::Plus(j), [x, y]) => x.plus(y, j),
            (Operation::Times(j), [x, y]) => x.times(y, j),
            _ => Err(Error::Arity {
                name: self.to_string(),
                expected: self.arity(),
                found: args.len(),
            }),
        }
    }
}

impl fmt::Display for Operation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let set = |j: IndepSet| {
            let items: Vec<String> = j.iter().map(|i| i.to_string()).collect();
            format!("{{{}}}", items.join(","))
        };
        match self {
            Operation::Neg => f.write_str("~"),
            Operation::Plus(j) => write!(f, "+{}", set(*j)),
            Operation::Times(j) => write!(f, "*{}", set(*j)),
            Operation::Cyl(n, j) => write!(f, "C({n},{})", set(*j)),
        }
    }
}

/// The signature of IFG_N-algebras over a space: constants `0`, `1`,
/// `D_ij` and operations `¬`, `+_J`, `·_J`, `C_{n,J}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signature {
    space: Space,
    constants: Vec<Constant>,
    operations: Vec<Operation>,
}

impl Signature {
    pub fn new(space: Space) -> Self {
        let n = space.vars();
        let mut constants = vec![Constant::Zero, Constant::One];
        for i in 0..n {
            for k in 0..n {
                constants.push(Constant::Diagonal(i, k));
            }
        }
        let mut operations = vec![Operation::Neg];
        for j in IndepSet::all_subsets(n) {
            operations.push(Operation::Plus(j));
            operations.push(Operation::Times(j));
        }
        for v in 0..n {
            for j in IndepSet::all_subsets(n) {
                operations.push(Operation::Cyl(v, j));
            }
        }
        Signature {
            space,
            constants,
            operations,
        }
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn constants(&self) -> &[Constant] {
        &self.constants
    }

    pub fn operations(&self) -> &[Operation] {
        &self.operations
    }

    pub fn constant_elements(&self) -> Result<Vec<Element>> {
        self.constants
            .iter()
            .map(|&c| Element::constant(self.space, c))
            .collect()
    }
}

/// A finite algebra: a carrier closed under the signature, with every
/// operation tabulated.
#[derive(Clone, Debug)]
pub struct FiniteAlgebra {
    signature: Signature,
    carrier: Vec<Element>,
    index: HashMap<Element, usize>,
    constants: Vec<usize>,
    unary: Vec<(Operation, Vec<usize>)>,
    binary: Vec<(Operation, Vec<usize>)>,
}

impl FiniteAlgebra {
    /// Sorts and deduplicates `carrier`, then tabulates every operation.
    /// Fails unless the carrier is closed and holds the constants.
    pub fn new(carrier: Vec<Element>, signature: Signature) -> Result<Self> {
        let mut carrier = carrier;
        carrier.sort();
        carrier.dedup();
        if let Some(e) = carrier.iter().find(|e| e.space() != signature.space) {
            return Err(Error::Dimension(format!(
                "element over {} in an algebra over {}",
                e.space(),
                signature.space
            )));
        }
        let index: HashMap<Element, usize> = carrier
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, e)| (e, i))
            .collect();
        let find = |e: Element, what: &dyn Fn() -> String| {
            index
                .get(&e)
                .copied()
                .ok_or_else(|| Error::NotClosed(format!("{} = {e} is missing", what())))
        };
        let mut constants = Vec::new();
        for (c, e) in signature
            .constants
            .iter()
            .zip(signature.constant_elements()?)
        {
            constants.push(find(e, &|| format!("{c:?}"))?);
        }
        let n = carrier.len();
        let mut unary = Vec::new();
        let mut binary = Vec::new();
        for &op in &signature.operations {
            if op.arity() == 1 {
                let mut table = Vec::with_capacity(n);
                for x in &carrier {
                    table.push(find(op.apply(&[x])?, &|| format!("{op} {x}"))?);
                }
                unary.push((op, table));
            } else {
                let mut table = Vec::with_capacity(n * n);
                for x in &carrier {
                    for y in &carrier {
                        table.push(find(op.apply(&[x, y])?, &|| format!("{x} {op} {y}"))?);
                    }
                }
                binary.push((op, table));
            }
        }
        Ok(FiniteAlgebra {
            signature,
            carrier,
            index,
            constants,
            unary,
            binary,
        })
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    pub fn carrier(&self) -> &[Element] {
        &self.carrier
    }

    pub fn element(&self, i: usize) -> &Element {
        &self.carrier[i]
    }

    pub fn index_of(&self, e: &Element) -> Option<usize> {
        self.index.get(e).copied()
    }

    /// Carrier indices of the constants.
    pub fn constant_indices(&self) -> &[usize] {
        &self.constants
    }

    /// Value of operation `op` on carrier indices.
    pub fn apply(&self, op: Operation, args: &[usize]) -> Option<usize> {
        let n = self.len();
        match args {
            [x] => self
                .unary
                .iter()
                .find(|(o, _)| *o == op)
                .map(|(_, t)| t[*x]),
            [x, y] => self
                .binary
                .iter()
                .find(|(o, _)| *o == op)
                .map(|(_, t)| t[x * n + y]),
            _ => None,
        }
    }

    /// See [`crate::algebra::label`].
    pub fn label(&self, i: usize) -> String {
        label(&self.carrier[i])
    }

    /// Whether the index set is closed under every operation and holds the
    /// constants.
    pub fn is_closed(&self, set: &[bool]) -> bool {
        let n = self.len();
        self.constants.iter().all(|&c| set[c])
            && self
                .unary
                .iter()
                .all(|(_, t)| (0..n).filter(|&x| set[x]).all(|x| set[t[x]]))
            && self.binary.iter().all(|(_, t)| {
                (0..n)
                    .filter(|&x| set[x])
                    .all(|x| (0..n).filter(|&y| set[y]).all(|y| set[t[x * n + y]]))
            })
    }

    /// The least closed index set containing `gens` and the constants.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let n = self.len();
        let mut inside = vec![false; n];
        let mut members = Vec::new();
        let mut queue = VecDeque::new();
        let add = |x: usize,
                   inside: &mut Vec<bool>,
                   members: &mut Vec<usize>,
                   queue: &mut VecDeque<usize>| {
            if !inside[x] {
                inside[x] = true;
                members.push(x);
                queue.push_back(x);
            }
        };
        for &x in self.constants.iter().chain(gens) {
            add(x, &mut inside, &mut members, &mut queue);
        }
        while let Some(x) = queue.pop_front() {
            for (_, t) in &self.unary {
                add(t[x], &mut inside, &mut members, &mut queue);
            }
            let snapshot = members.clone();
            for y in snapshot {
                for (_, t) in &self.binary {
                    add(t[x * n + y], &mut inside, &mut members, &mut queue);
                    add(t[y * n + x], &mut inside, &mut members, &mut queue);
                }
            }
        }
        members.sort();
        members
    }

    /// The subalgebra on the given closed index set.
    pub fn subalgebra(&self, indices: &[usize]) -> Result<FiniteAlgebra> {
        let mut set = vec![false; self.len()];
        for &i in indices {
            if i >= self.len() {
                return Err(Error::OutOfRange {
                    what: "carrier",
                    index: i,
                    bound: self.len(),
                });
            }
            set[i] = true;
        }
        if !self.is_closed(&set) {
            return Err(Error::NotClosed("index set is not a subuniverse".into()));
        }
        let keep: Vec<usize> = (0..self.len()).filter(|&i| set[i]).collect();
        let mut local = vec![usize::MAX; self.len()];
        for (k, &i) in keep.iter().enumerate() {
            local[i] = k;
        }
        let n = self.len();
        let m = keep.len();
        let carrier: Vec<Element> = keep.iter().map(|&i| self.carrier[i].clone()).collect();
        let index = carrier
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, e)| (e, i))
            .collect();
        Ok(FiniteAlgebra {
            signature: self.signature.clone(),
            carrier,
            index,
            constants: self.constants.iter().map(|&c| local[c]).collect(),
            unary: self
                .unary
                .iter()
                .map(|(op, t)| (*op, keep.iter().map(|&x| local[t[x]]).collect()))
                .collect(),
            binary: self
                .binary
                .iter()
                .map(|(op, t)| {
                    let mut table = Vec::with_capacity(m * m);
                    for &x in &keep {
                        for &y in &keep {
                            table.push(local[t[x * n + y]]);
                        }
                    }
                    (*op, table)
                })
                .collect(),
        })
    }
}

/// The subalgebra of the full power set algebra generated by `gens`.
pub fn generate_subuniverse(gens: &[Element], signature: &Signature) -> Result<FiniteAlgebra> {
    generate_subuniverse_capped(gens, signature, DEFAULT_ELEMENT_CAP)
}

pub fn generate_subuniverse_capped(
    gens: &[Element],
    signature: &Signature,
    cap: usize,
) -> Result<FiniteAlgebra> {
    let mut seen: HashSet<Element> = HashSet::new();
    let mut members: Vec<Element> = Vec::new();
    let mut next = 0;
    let push =
        |e: Element, seen: &mut HashSet<Element>, members: &mut Vec<Element>| -> Result<()> {
            if seen.insert(e.clone()) {
                members.push(e);
                if members.len() > cap {
                    return Err(Error::Guard(format!(
                        "generated subuniverse exceeds {cap} elements"
                    )));
                }
            }
            Ok(())
        };
    for e in signature
        .constant_elements()?
        .into_iter()
        .chain(gens.iter().cloned())
    {
        if e.space() != signature.space {
            return Err(Error::Dimension(format!(
                "generator over {} for a signature over {}",
                e.space(),
                signature.space
            )));
        }
        push(e, &mut seen, &mut members)?;
    }
    while next < members.len() {
        let x = members[next].clone();
        for &op in &signature.operations {
            if op.arity() == 1 {
                push(op.apply(&[&x])?, &mut seen, &mut members)?;
            } else {
                for k in 0..=next {
                    let y = members[k].clone();
                    push(op.apply(&[&x, &y])?, &mut seen, &mut members)?;
                    push(op.apply(&[&y, &x])?, &mut seen, &mut members)?;
                }
            }
        }
        next += 1;
    }
    FiniteAlgebra::new(members, signature.clone())
}

/// Bound on the number of subuniverses found by generator closure.
pub const SUBUNIVERSE_CAP: usize = 10_000;

/// Every subuniverse, as sorted index sets in increasing size then
/// lexicographic order.
pub fn enumerate_subuniverses(alg: &FiniteAlgebra) -> Result<Vec<Vec<usize>>> {
    let n = alg.len();
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    if n <= EXHAUSTIVE_SUBSET_LIMIT {
        for mask in 0u32..1 << n {
            let set: Vec<bool> = (0..n).map(|i| mask & (1 << i) != 0).collect();
            if alg.is_closed(&set) {
                found.insert((0..n).filter(|&i| set[i]).collect());
            }
        }
    } else {
        // Every subuniverse is reached from the least one by adding one
        // generator at a time.
        let base = alg.closure(&[]);
        let mut queue = VecDeque::from([base.clone()]);
        found.insert(base);
        while let Some(s) = queue.pop_front() {
            let mut inside = vec![false; n];
            for &i in &s {
                inside[i] = true;
            }
            for x in (0..n).filter(|&x| !inside[x]) {
                let mut gens = s.clone();
                gens.push(x);
                let t = alg.closure(&gens);
                if found.insert(t.clone()) {
                    if found.len() > SUBUNIVERSE_CAP {
                        return Err(Error::Guard(format!(
                            "more than {SUBUNIVERSE_CAP} subuniverses"
                        )));
                    }
                    queue.push_back(t);
                }
            }
        }
    }
    let mut out: Vec<Vec<usize>> = found.into_iter().collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out)
}

/// An equivalence relation on carrier indices, stored as the least member
/// of each element's class.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Congruence {
    class: Vec<usize>,
}

impl Congruence {
    pub fn identity(n: usize) -> Self {
        Congruence {
            class: (0..n).collect(),
        }
    }

    pub fn total(n: usize) -> Self {
        Congruence { class: vec![0; n] }
    }

    /// From a list of blocks, which must partition `0..n`.
    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut class = vec![usize::MAX; n];
        for block in blocks {
            let least = *block
                .iter()
                .min()
                .ok_or_else(|| Error::Invalid("empty block".into()))?;
            for &x in block {
                if x >= n {
                    return Err(Error::OutOfRange {
                        what: "carrier",
                        index: x,
                        bound: n,
                    });
                }
                if class[x] != usize::MAX {
                    return Err(Error::Invalid(format!("element {x} lies in two blocks")));
                }
                class[x] = least;
            }
        }
        if let Some(x) = class.iter().position(|&c| c == usize::MAX) {
            return Err(Error::Invalid(format!("element {x} lies in no block")));
        }
        Ok(Congruence { class })
    }

    fn from_union_find(parent: &mut [usize]) -> Self {
        let n = parent.len();
        let mut least = vec![usize::MAX; n];
        for x in 0..n {
            let r = find(parent, x);
            least[r] = least[r].min(x);
        }
        Congruence {
            class: (0..n).map(|x| least[find(parent, x)]).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.class.len()
    }

    pub fn is_empty(&self) -> bool {
        self.class.is_empty()
    }

    pub fn related(&self, a: usize, b: usize) -> bool {
        self.class[a] == self.class[b]
    }

    /// Members of the class of `a`.
    pub fn class_of(&self, a: usize) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.related(a, x)).collect()
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = Vec::new();
        for x in 0..self.len() {
            if self.class[x] == x {
                out.push(self.class_of(x));
            }
        }
        out
    }

    pub fn block_count(&self) -> usize {
        (0..self.len()).filter(|&x| self.class[x] == x).count()
    }

    pub fn is_identity(&self) -> bool {
        self.block_count() == self.len()
    }

    pub fn is_total(&self) -> bool {
        self.block_count() <= 1
    }

    /// Blocks listed by label, e.g. `{A,B} {~A,~B} {0}`.
    pub fn format(&self, alg: &FiniteAlgebra) -> String {
        self.blocks()
            .iter()
            .map(|b| {
                let labels: Vec<String> = b.iter().map(|&x| alg.label(x)).collect();
                format!("{{{}}}", labels.join(","))
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// `Cg(x, y)`, the least congruence relating `x` and `y`.
pub fn principal_congruence(alg: &FiniteAlgebra, x: usize, y: usize) -> Congruence {
    let n = alg.len();
    let mut parent: Vec<usize> = (0..n).collect();
    let mut components = n;
    let mut pending = vec![(x, y)];
    // Each merged pair is pushed through every basic translation; by
    // transitivity that makes the relation compatible with every operation.
    while let Some((a, b)) = pending.pop() {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra == rb {
            continue;
        }
        parent[ra] = rb;
        components -= 1;
        if components == 1 {
            return Congruence::total(n);
        }
        for (_, t) in &alg.unary {
            pending.push((t[a], t[b]));
        }
        for (_, t) in &alg.binary {
            for c in 0..n {
                pending.push((t[a * n + c], t[b * n + c]));
                pending.push((t[c * n + a], t[c * n + b]));
            }
        }
    }
    Congruence::from_union_find(&mut parent)
}

/// Whether `theta` is compatible with every operation, checked over all
/// tuples of related arguments.
pub fn is_congruence(alg: &FiniteAlgebra, theta: &Congruence) -> Result<bool> {
    let n = alg.len();
    if theta.len() != n {
        return Err(Error::Dimension(format!(
            "partition of {} elements for an algebra of {n}",
            theta.len()
        )));
    }
    let blocks = theta.blocks();
    let block_of: Vec<&Vec<usize>> = (0..n)
        .map(|x| {
            blocks
                .iter()
                .find(|b| b.contains(&x))
                .expect("blocks cover the carrier")
        })
        .collect();
    for (_, t) in &alg.unary {
        for b in &blocks {
            if !b.iter().all(|&x| theta.related(t[x], t[b[0]])) {
                return Ok(false);
            }
        }
    }
    for (_, t) in &alg.binary {
        for a in 0..n {
            for c in 0..n {
                let v = t[a * n + c];
                for &a2 in block_of[a] {
                    for &c2 in block_of[c] {
                        if !theta.related(v, t[a2 * n + c2]) {
                            return Ok(false);
                        }
                    }
                }
            }
        }
    }
    Ok(true)
}

/// Outcome of [`is_simple`].
#[derive(Clone, Debug)]
pub struct SimplicityReport {
    pub simple: bool,
    /// A pair whose principal congruence is neither trivial nor total.
    pub witness: Option<(usize, usize, Congruence)>,
    pub pairs_checked: usize,
}

/// An algebra is simple when every pair of distinct elements generates the
/// total congruence.
pub fn is_simple(alg: &FiniteAlgebra) -> Result<SimplicityReport> {
    let n = alg.len();
    if n > SIMPLICITY_LIMIT {
        return Err(Error::Guard(format!(
            "simplicity is checked for at most {SIMPLICITY_LIMIT} elements, got {n}"
        )));
    }
    let mut pairs_checked = 0;
    for x in 0..n {
        for y in x + 1..n {
            pairs_checked += 1;
            let cg = principal_congruence(alg, x, y);
            if !cg.is_total() {
                return Ok(SimplicityReport {
                    simple: false,
                    witness: Some((x, y, cg)),
                    pairs_checked,
                });
            }
        }
    }
    Ok(SimplicityReport {
        simple: n >= 2,
        witness: None,
        pairs_checked,
    })
}

/// Outcome of [`is_hereditarily_simple`].
#[derive(Clone, Debug)]
pub struct HereditaryReport {
    pub hereditarily_simple: bool,
    pub subuniverses: Vec<Vec<usize>>,
    /// A subuniverse that is not simple, with its witness pair and
    /// congruence in the subalgebra's own indexing.
    pub witness: Option<(Vec<usize>, usize, usize, Congruence)>,
}

pub fn is_hereditarily_simple(alg: &FiniteAlgebra) -> Result<HereditaryReport> {
    let subuniverses = enumerate_subuniverses(alg)?;
    for s in &subuniverses {
        let sub = alg.subalgebra(s)?;
        let report = is_simple(&sub)?;
        if !report.simple {
            let (x, y, cg) = report
                .witness
                .unwrap_or((0, 0, Congruence::identity(sub.len())));
            return Ok(HereditaryReport {
                hereditarily_simple: false,
                witness: Some((s.clone(), x, y, cg)),
                subuniverses,
            });
        }
    }
    Ok(HereditaryReport {
        hereditarily_simple: true,
        subuniverses,
        witness: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::alias;
    use crate::enumeration::dsuit_carrier;

    fn full(m: usize) -> FiniteAlgebra {
        let space = Space::new(m, 1).unwrap();
        FiniteAlgebra::new(dsuit_carrier(m, 1).unwrap(), Signature::new(space)).unwrap()
    }

    fn idx(alg: &FiniteAlgebra, name: &str) -> usize {
        let space = alg.signature().space();
        alg.index_of(&alias(space, name).unwrap()).unwrap()
    }

    #[test]
    fn signature_for_one_variable() {
        let sig = Signature::new(Space::new(2, 1).unwrap());
        assert_eq!(sig.constants().len(), 3);
        assert_eq!(sig.operations().len(), 7);
    }

    #[test]
    fn generated_by_a() {
        let space = Space::new(2, 1).unwrap();
        let alg =
            generate_subuniverse(&[alias(space, "A").unwrap()], &Signature::new(space)).unwrap();
        let labels: BTreeSet<String> = (0..alg.len()).map(|i| alg.label(i)).collect();
        let want: BTreeSet<String> = ["0", "~A", "Omega", "A", "1"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(labels, want);
    }

    #[test]
    fn generation_cap() {
        let space = Space::new(2, 1).unwrap();
        let gens = [alias(space, "B").unwrap(), alias(space, "C").unwrap()];
        assert!(matches!(
            generate_subuniverse_capped(&gens, &Signature::new(space), 4),
            Err(Error::Guard(_))
        ));
    }

    #[test]
    fn closure_within_algebra_matches_generation() {
        let alg = full(2);
        let space = alg.signature().space();
        for gens in [vec!["B", "C"], vec!["A", "B"], vec!["B"]] {
            let elements: Vec<Element> = gens.iter().map(|g| alias(space, g).unwrap()).collect();
            let direct = generate_subuniverse(&elements, alg.signature()).unwrap();
            let idxs: Vec<usize> = gens.iter().map(|g| idx(&alg, g)).collect();
            let inside: Vec<Element> = alg
                .closure(&idxs)
                .iter()
                .map(|&i| alg.element(i).clone())
                .collect();
            let mut sorted = inside.clone();
            sorted.sort();
            assert_eq!(direct.carrier(), &sorted[..]);
        }
    }

    #[test]
    fn not_closed_is_rejected() {
        let space = Space::new(2, 1).unwrap();
        let partial = vec![
            Element::zero(space).unwrap(),
            Element::one(space).unwrap(),
            alias(space, "A").unwrap(),
        ];
        assert!(matches!(
            FiniteAlgebra::new(partial, Signature::new(space)),
            Err(Error::NotClosed(_))
        ));
    }

    #[test]
    fn congruence_basics() {
        let alg = full(2);
        let (a, b) = (idx(&alg, "A"), idx(&alg, "B"));
        assert!(principal_congruence(&alg, a, b).is_total());
        assert!(principal_congruence(&alg, a, a).is_identity());
        assert!(is_congruence(&alg, &Congruence::identity(alg.len())).unwrap());
        assert!(is_congruence(&alg, &Congruence::total(alg.len())).unwrap());
        let (zero, one) = (idx(&alg, "0"), idx(&alg, "1"));
        let mut blocks: Vec<Vec<usize>> = (0..alg.len())
            .filter(|&x| x != zero && x != one)
            .map(|x| vec![x])
            .collect();
        blocks.push(vec![zero, one]);
        let merged = Congruence::from_blocks(alg.len(), &blocks).unwrap();
        assert!(!is_congruence(&alg, &merged).unwrap());
        assert!(Congruence::from_blocks(3, &[vec![0, 1]]).is_err());
        assert!(Congruence::from_blocks(3, &[vec![0, 1], vec![1, 2]]).is_err());
    }

    #[test]
    fn principal_congruences_are_congruences() {
        let alg = full(2);
        for x in 0..alg.len() {
            for y in 0..alg.len() {
                let cg = principal_congruence(&alg, x, y);
                assert!(cg.related(x, y));
                assert!(is_congruence(&alg, &cg).unwrap());
            }
        }
    }

    #[test]
    fn subuniverses_of_the_two_element_algebra() {
        let alg = full(2);
        let subs = enumerate_subuniverses(&alg).unwrap();
        assert_eq!(subs.len(), 9);
        let report = is_hereditarily_simple(&alg).unwrap();
        assert!(report.hereditarily_simple);
    }

    #[test]
    fn generator_enumeration_agrees_with_subsets() {
        let alg = full(2);
        let exhaustive = enumerate_subuniverses(&alg).unwrap();
        let base = alg.closure(&[]);
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::from([base.clone()]);
        let mut queue = VecDeque::from([base]);
        while let Some(s) = queue.pop_front() {
            for x in 0..alg.len() {
                let mut g = s.clone();
                g.push(x);
                let t = alg.closure(&g);
                if found.insert(t.clone()) {
                    queue.push_back(t);
                }
            }
        }
        let mut found: Vec<Vec<usize>> = found.into_iter().collect();
        found.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        assert_eq!(found, exhaustive);
    }

    #[test]
    fn b_in_the_three_element_algebra() {
        let alg = full(3);
        let sub = alg.closure(&[idx(&alg, "B")]);
        assert_eq!(sub.len(), 7);
        let sub = alg.subalgebra(&sub).unwrap();
        let (a, b) = (idx(&sub, "A"), idx(&sub, "B"));
        let cg = principal_congruence(&sub, a, b);
        let blocks: BTreeSet<BTreeSet<String>> = cg
            .blocks()
            .iter()
            .map(|b| b.iter().map(|&x| sub.label(x)).collect())
            .collect();
        let want: BTreeSet<BTreeSet<String>> = [
            vec!["A", "B"],
            vec!["~A", "~B"],
            vec!["0"],
            vec!["Omega"],
            vec!["1"],
        ]
        .iter()
        .map(|b| b.iter().map(|s| s.to_string()).collect())
        .collect();
        assert_eq!(blocks, want);
        assert!(is_congruence(&sub, &cg).unwrap());
        let report = is_simple(&sub).unwrap();
        assert!(!report.simple);
    }
}
