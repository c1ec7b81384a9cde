use std::collections::HashSet;

use super::{IndepSet, Space, Team};
use crate::error::{Error, Result};

/// Partition `v` into its `≈_J` classes, ordered by least member.
pub fn agreement_blocks(space: &Space, v: Team, j: IndepSet) -> Vec<Team> {
    let mut keys: Vec<usize> = Vec::new();
    let mut blocks: Vec<Team> = Vec::new();
    for idx in v.members() {
        let key = space.outside_key(idx, j);
        match keys.iter().position(|&k| k == key) {
            Some(p) => blocks[p] = blocks[p].with(idx),
            None => {
                keys.push(key);
                blocks.push(Team::singleton(idx));
            }
        }
    }
    blocks
}

/// Iterator over the `J`-saturated disjoint covers `v = v1 ∪_J v2`.
///
/// Each `≈_J` block goes wholly to one side; bit `k` of the internal
/// counter set means block `k` goes to `v2`, so `(v, ∅)` comes first.
#[derive(Clone, Debug)]
pub struct Covers {
    blocks: Vec<Team>,
    whole: Team,
    next: u64,
    end: u64,
}

impl Iterator for Covers {
    type Item = (Team, Team);

    fn next(&mut self) -> Option<Self::Item> {
        if self.next >= self.end {
            return None;
        }
        let assign = self.next;
        self.next += 1;
        let mut v2 = Team::EMPTY;
        for (k, b) in self.blocks.iter().enumerate() {
            if assign & (1 << k) != 0 {
                v2 = v2.union(*b);
            }
        }
        Some((self.whole.difference(v2), v2))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = (self.end - self.next) as usize;
        (n, Some(n))
    }
}

pub fn saturated_disjoint_covers(space: &Space, v: Team, j: IndepSet) -> Covers {
    let blocks = agreement_blocks(space, v, j);
    let end = 1u64 << blocks.len();
    Covers {
        blocks,
        whole: v,
        next: 0,
        end,
    }
}

/// A function `f: V →_J A`, constant on each `≈_J` block of its domain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChoiceFunction {
    indep: IndepSet,
    domain: Team,
    /// `(block, value)` pairs, blocks ordered by least member.
    blocks: Vec<(Team, usize)>,
}

impl ChoiceFunction {
    pub fn domain(&self) -> Team {
        self.domain
    }

    pub fn indep(&self) -> IndepSet {
        self.indep
    }

    /// `(least member of block, value)` pairs.
    pub fn table(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.blocks
            .iter()
            .map(|(b, val)| (b.members().next().unwrap_or(0), *val))
    }

    pub fn value_at(&self, idx: usize) -> Option<usize> {
        self.blocks
            .iter()
            .find(|(b, _)| b.contains(idx))
            .map(|&(_, val)| val)
    }

    /// A constant function on `domain`.
    pub fn constant(space: &Space, domain: Team, j: IndepSet, value: usize) -> Self {
        ChoiceFunction {
            indep: j,
            domain,
            blocks: agreement_blocks(space, domain, j)
                .into_iter()
                .map(|b| (b, value))
                .collect(),
        }
    }
}

/// Iterator over every `f: V →_J A`, odometer-style with block 0 fastest.
#[derive(Clone, Debug)]
pub struct Choices {
    m: usize,
    indep: IndepSet,
    domain: Team,
    blocks: Vec<Team>,
    digits: Option<Vec<usize>>,
}

impl Iterator for Choices {
    type Item = ChoiceFunction;

    fn next(&mut self) -> Option<ChoiceFunction> {
        let digits = self.digits.as_mut()?;
        let f = ChoiceFunction {
            indep: self.indep,
            domain: self.domain,
            blocks: self
                .blocks
                .iter()
                .copied()
                .zip(digits.iter().copied())
                .collect(),
        };
        let mut k = 0;
        loop {
            if k == digits.len() {
                self.digits = None;
                break;
            }
            digits[k] += 1;
            if digits[k] < self.m {
                break;
            }
            digits[k] = 0;
            k += 1;
        }
        Some(f)
    }
}

pub fn independent_choices(space: &Space, v: Team, j: IndepSet) -> Choices {
    let blocks = agreement_blocks(space, v, j);
    let digits = if space.base() == 0 && !blocks.is_empty() {
        None
    } else {
        Some(vec![0; blocks.len()])
    };
    Choices {
        m: space.base(),
        indep: j,
        domain: v,
        blocks,
        digits,
    }
}

/// `V(n:f) = {a(n : f(a)) : a ∈ V}`.
pub fn substitute(space: &Space, v: Team, n: usize, f: &ChoiceFunction) -> Result<Team> {
    space.check_var(n)?;
    if !v.is_subset(f.domain) {
        return Err(Error::Invalid(format!(
            "choice function defined on {} does not cover {}",
            f.domain.format(space),
            v.format(space)
        )));
    }
    let mut out = Team::EMPTY;
    for idx in v.members() {
        let b = f.value_at(idx).expect("domain checked above");
        out = out.with(space.with_entry(idx, n, b));
    }
    Ok(out)
}

/// `W(n:A) = {a(n:b) : a ∈ W, b ∈ A}`.
pub fn expand(space: &Space, w: Team, n: usize) -> Result<Team> {
    space.check_var(n)?;
    let mut out = Team::EMPTY;
    for idx in w.members() {
        for b in 0..space.base() {
            out = out.with(space.with_entry(idx, n, b));
        }
    }
    Ok(out)
}

/// The distinct teams `V(n:f)` over all `f: V →_J A`, in increasing
/// bitmask order.
///
/// Built block by block, merging equal partial images, so the cost is
/// bounded by the number of distinct images rather than by `m^blocks`.
pub fn substitution_images(space: &Space, v: Team, n: usize, j: IndepSet) -> Result<Vec<Team>> {
    space.check_var(n)?;
    let mut layer: HashSet<Team> = HashSet::from([Team::EMPTY]);
    for block in agreement_blocks(space, v, j) {
        let moves: Vec<Team> = (0..space.base())
            .map(|b| {
                block
                    .members()
                    .fold(Team::EMPTY, |t, idx| t.with(space.with_entry(idx, n, b)))
            })
            .collect();
        layer = layer
            .iter()
            .flat_map(|&t| moves.iter().map(move |&mv| t.union(mv)))
            .collect();
    }
    let mut out: Vec<Team> = layer.into_iter().collect();
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn team(space: &Space, text: &str) -> Team {
        Team::parse(text, space).unwrap()
    }

    fn js(items: &[usize]) -> IndepSet {
        items.iter().copied().collect()
    }

    /// All splits of `v` into two disjoint parts each closed under `≈_J`.
    fn brute_force_covers(space: &Space, v: Team, j: IndepSet) -> Vec<(Team, Team)> {
        let closed = |part: Team| {
            part.members().all(|a| {
                v.members()
                    .filter(|&b| space.outside_key(a, j) == space.outside_key(b, j))
                    .all(|b| part.contains(b))
            })
        };
        let mut out: Vec<(Team, Team)> = v
            .subteams()
            .map(|v1| (v1, v.difference(v1)))
            .filter(|&(v1, v2)| closed(v1) && closed(v2))
            .collect();
        out.sort();
        out
    }

    /// All maps from members of `v` to `A` that respect `≈_J`.
    fn brute_force_choice_count(space: &Space, v: Team, j: IndepSet) -> usize {
        let members: Vec<usize> = v.members().collect();
        let total = space.base().pow(members.len() as u32);
        (0..total)
            .filter(|&code| {
                let val = |k: usize| (code / space.base().pow(k as u32)) % space.base();
                (0..members.len()).all(|x| {
                    (0..members.len()).all(|y| {
                        space.outside_key(members[x], j) != space.outside_key(members[y], j)
                            || val(x) == val(y)
                    })
                })
            })
            .count()
    }

    #[test]
    fn blocks_examples() {
        let s1 = Space::new(2, 1).unwrap();
        let v = team(&s1, "{0, 1}");
        assert_eq!(
            agreement_blocks(&s1, v, IndepSet::EMPTY),
            vec![Team(0b01), Team(0b10)]
        );
        assert_eq!(agreement_blocks(&s1, v, js(&[0])), vec![v]);

        let s2 = Space::new(2, 2).unwrap();
        let v = team(&s2, "{00, 01, 10}");
        assert_eq!(
            agreement_blocks(&s2, v, js(&[1])),
            vec![team(&s2, "{00, 01}"), team(&s2, "{10}")]
        );
    }

    #[test]
    fn covers_examples() {
        let s1 = Space::new(2, 1).unwrap();
        let v = s1.full_team();
        let mut got: Vec<_> = saturated_disjoint_covers(&s1, v, IndepSet::EMPTY).collect();
        assert_eq!(got[0], (v, Team::EMPTY));
        got.sort();
        assert_eq!(
            got,
            vec![
                (Team(0), Team(3)),
                (Team(1), Team(2)),
                (Team(2), Team(1)),
                (Team(3), Team(0))
            ]
        );
        let s2 = Space::new(3, 2).unwrap();
        let v = team(&s2, "{00, 12, 21}");
        let got: Vec<_> = saturated_disjoint_covers(&s2, v, s2.all_vars()).collect();
        assert_eq!(got, vec![(v, Team::EMPTY), (Team::EMPTY, v)]);
        let got: Vec<_> = saturated_disjoint_covers(&s2, Team::EMPTY, IndepSet::EMPTY).collect();
        assert_eq!(got, vec![(Team::EMPTY, Team::EMPTY)]);
    }

    #[test]
    fn covers_match_brute_force() {
        for (m, n) in [(1, 1), (2, 1), (3, 1), (1, 2), (2, 2), (3, 2)] {
            let s = Space::new(m, n).unwrap();
            for j in IndepSet::all_subsets(n) {
                for v in s.full_team().subteams() {
                    let mut got: Vec<_> = saturated_disjoint_covers(&s, v, j).collect();
                    got.sort();
                    assert_eq!(got, brute_force_covers(&s, v, j), "m={m} n={n} v={v:?}");
                }
            }
        }
    }

    #[test]
    fn choice_examples() {
        let s = Space::new(2, 2).unwrap();
        let v = team(&s, "{00, 01}");
        assert_eq!(independent_choices(&s, v, js(&[0])).count(), 4);
        assert_eq!(brute_force_choice_count(&s, v, js(&[0])), 4);
        assert_eq!(independent_choices(&s, v, js(&[1])).count(), 2);
        assert_eq!(brute_force_choice_count(&s, v, js(&[1])), 2);
        let empty: Vec<_> = independent_choices(&s, Team::EMPTY, js(&[1])).collect();
        assert_eq!(empty.len(), 1);
        assert_eq!(empty[0].table().count(), 0);
    }

    #[test]
    fn choices_match_brute_force_and_are_independent() {
        for (m, n) in [(2, 1), (3, 1), (2, 2), (3, 2)] {
            let s = Space::new(m, n).unwrap();
            for j in IndepSet::all_subsets(n) {
                for v in s.full_team().subteams().step_by(3) {
                    let fs: Vec<_> = independent_choices(&s, v, j).collect();
                    let blocks = agreement_blocks(&s, v, j).len();
                    assert_eq!(fs.len(), m.pow(blocks as u32));
                    assert_eq!(fs.len(), brute_force_choice_count(&s, v, j));
                    for f in &fs {
                        for a in v.members() {
                            for b in v.members() {
                                if s.outside_key(a, j) == s.outside_key(b, j) {
                                    assert_eq!(f.value_at(a), f.value_at(b));
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn substitute_examples() {
        let s = Space::new(2, 2).unwrap();
        let v = team(&s, "{00, 10}");
        let f = ChoiceFunction::constant(&s, v, IndepSet::EMPTY, 1);
        assert_eq!(substitute(&s, v, 1, &f).unwrap(), team(&s, "{01, 11}"));

        // Eloise is told v0 = 0 and picks 1 for v1.
        let v = team(&s, "{00, 01}");
        let f = ChoiceFunction::constant(&s, v, js(&[0]), 1);
        let out = substitute(&s, v, 1, &f).unwrap();
        assert_eq!(out, team(&s, "{01}"));
        assert!(out.members().all(|i| s.entry(i, 0) != s.entry(i, 1)));

        let f = ChoiceFunction::constant(&s, Team::EMPTY, IndepSet::EMPTY, 0);
        assert_eq!(substitute(&s, Team::EMPTY, 0, &f).unwrap(), Team::EMPTY);
        assert!(substitute(&s, v, 2, &f).is_err());
        assert!(substitute(&s, v, 0, &f).is_err());
    }

    #[test]
    fn expand_examples() {
        let s = Space::new(2, 2).unwrap();
        assert_eq!(
            expand(&s, team(&s, "{00}"), 1).unwrap(),
            team(&s, "{00, 01}")
        );
        assert_eq!(expand(&s, Team::EMPTY, 0).unwrap(), Team::EMPTY);
        assert_eq!(expand(&s, s.full_team(), 0).unwrap(), s.full_team());
        assert!(expand(&s, Team::EMPTY, 2).is_err());
    }

    #[test]
    fn expand_and_substitute_commute_with_union() {
        let s = Space::new(3, 2).unwrap();
        let teams: Vec<Team> = s.full_team().subteams().step_by(7).collect();
        for &v in &teams {
            for &w in &teams {
                for n in 0..2 {
                    let lhs = expand(&s, v.union(w), n).unwrap();
                    let rhs = expand(&s, v, n).unwrap().union(expand(&s, w, n).unwrap());
                    assert_eq!(lhs, rhs);
                    let f = ChoiceFunction::constant(&s, v.union(w), IndepSet::EMPTY, 2);
                    let lhs = substitute(&s, v.union(w), n, &f).unwrap();
                    let rhs = substitute(&s, v, n, &f)
                        .unwrap()
                        .union(substitute(&s, w, n, &f).unwrap());
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn images_match_enumerated_choices() {
        for (m, n_vars) in [(2, 1), (3, 1), (2, 2), (3, 2)] {
            let s = Space::new(m, n_vars).unwrap();
            for v in s.full_team().subteams() {
                for j in IndepSet::all_subsets(n_vars) {
                    for n in 0..n_vars {
                        let mut want: Vec<Team> = independent_choices(&s, v, j)
                            .map(|f| substitute(&s, v, n, &f).unwrap())
                            .collect();
                        want.sort();
                        want.dedup();
                        assert_eq!(substitution_images(&s, v, n, j).unwrap(), want);
                    }
                }
            }
        }
    }
}
