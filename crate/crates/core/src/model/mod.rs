//! Finite structures, valuations, teams and the team transformers used by
//! trump semantics.
//!
//! Valuations over `^N A` (with `A = {0..m-1}`) are identified with their
//! base-`m` index, `v_0` least significant. A [`Team`] is a bitmask over those
//! indices, so a space may hold at most 64 valuations.

mod cover;
mod structure;
mod team;

pub use cover::{
    agreement_blocks, expand, independent_choices, saturated_disjoint_covers, substitute,
    substitution_images, ChoiceFunction, Choices, Covers,
};
pub use structure::{Relation, Structure};
pub use team::{Team, TeamFamily, FAMILY_MAX_VALUATIONS};

use std::fmt;

use crate::error::{Error, Result};

/// Largest number of valuations a [`Team`] bitmask can hold.
pub const MAX_VALUATIONS: usize = 64;

/// The valuation space `^N A` for a base set of size `m` and `N` variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Space {
    m: usize,
    vars: usize,
    size: usize,
}

impl Space {
    /// `m = 0` is accepted (it yields a space with no valuations), which the
    /// suit counting needs; structures themselves always have `m >= 1`.
    pub fn new(m: usize, vars: usize) -> Result<Self> {
        if vars == 0 || vars > 32 {
            return Err(Error::Invalid(format!(
                "number of variables must be in 1..=32, got {vars}"
            )));
        }
        let mut size: usize = 1;
        for _ in 0..vars {
            size = size.saturating_mul(m);
            if size > MAX_VALUATIONS {
                return Err(Error::Guard(format!(
                    "{m}^{vars} valuations exceed the team capacity of {MAX_VALUATIONS}"
                )));
            }
        }
        Ok(Space { m, vars, size })
    }

    /// Size of the base set.
    pub fn base(&self) -> usize {
        self.m
    }

    /// Number of variables `N`.
    pub fn vars(&self) -> usize {
        self.vars
    }

    /// Number of valuations, `m^N`.
    pub fn size(&self) -> usize {
        self.size
    }

    /// Number of teams, `2^(m^N)`.
    pub fn team_count(&self) -> usize {
        1usize << self.size
    }

    pub fn full_team(&self) -> Team {
        Team::full(self.size)
    }

    pub fn all_vars(&self) -> IndepSet {
        IndepSet::full(self.vars)
    }

    /// Entry `i` of the valuation with index `idx`.
    pub fn entry(&self, idx: usize, i: usize) -> usize {
        (idx / self.m.pow(i as u32)) % self.m
    }

    pub fn valuation(&self, idx: usize) -> Valuation {
        Valuation {
            entries: (0..self.vars).map(|i| self.entry(idx, i)).collect(),
        }
    }

    pub fn index_of(&self, v: &Valuation) -> Result<usize> {
        if v.entries.len() != self.vars {
            return Err(Error::Dimension(format!(
                "valuation of length {} in a space of {} variables",
                v.entries.len(),
                self.vars
            )));
        }
        let mut idx = 0;
        for &a in v.entries.iter().rev() {
            if a >= self.m {
                return Err(Error::OutOfRange {
                    what: "element",
                    index: a,
                    bound: self.m,
                });
            }
            idx = idx * self.m + a;
        }
        Ok(idx)
    }

    /// Index of `idx` with entry `n` replaced by `b`.
    pub fn with_entry(&self, idx: usize, n: usize, b: usize) -> usize {
        let p = self.m.pow(n as u32);
        let old = (idx / p) % self.m;
        idx - old * p + b * p
    }

    /// The index obtained by zeroing every entry inside `j`; two valuations
    /// agree outside `j` iff their keys coincide.
    pub fn outside_key(&self, idx: usize, j: IndepSet) -> usize {
        let mut key = idx;
        for i in j.iter() {
            let p = self.m.pow(i as u32);
            key -= ((idx / p) % self.m) * p;
        }
        key
    }

    pub fn check_var(&self, n: usize) -> Result<()> {
        if n >= self.vars {
            return Err(Error::OutOfRange {
                what: "variable",
                index: n,
                bound: self.vars,
            });
        }
        Ok(())
    }

    pub fn check_indep(&self, j: IndepSet) -> Result<()> {
        match j.iter().find(|&i| i >= self.vars) {
            Some(i) => Err(Error::OutOfRange {
                what: "independence set variable",
                index: i,
                bound: self.vars,
            }),
            None => Ok(()),
        }
    }

    /// Render a valuation as a digit string, `v_0` first. Bases above ten
    /// separate entries with dots.
    pub fn format_valuation(&self, idx: usize) -> String {
        let entries = (0..self.vars).map(|i| self.entry(idx, i).to_string());
        if self.m <= 10 {
            entries.collect()
        } else {
            entries.collect::<Vec<_>>().join(".")
        }
    }

    /// Inverse of [`Space::format_valuation`].
    pub fn parse_valuation(&self, text: &str) -> Result<usize> {
        let bad = || Error::parse(0, format!("malformed valuation `{text}`"));
        let entries: Vec<usize> = if self.m <= 10 && !text.contains('.') {
            text.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad))
                .collect::<Result<_>>()?
        } else {
            text.split('.')
                .map(|s| s.parse::<usize>().map_err(|_| bad()))
                .collect::<Result<_>>()?
        };
        self.index_of(&Valuation { entries })
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "^{}{}", self.vars, self.m)
    }
}

/// An element of `^N A`, stored entry by entry.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Valuation {
    pub entries: Vec<usize>,
}

impl Valuation {
    pub fn new(entries: Vec<usize>) -> Self {
        Valuation { entries }
    }

    /// `a ≈_J b`: the valuations coincide at every index outside `j`.
    pub fn agrees_outside(&self, other: &Valuation, j: IndepSet) -> Result<bool> {
        if self.entries.len() != other.entries.len() {
            return Err(Error::Dimension(format!(
                "valuations of length {} and {}",
                self.entries.len(),
                other.entries.len()
            )));
        }
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .enumerate()
            .all(|(i, (a, b))| j.contains(i) || a == b))
    }
}

/// A set `J` of variable indices hidden from the player making a move.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndepSet(u32);

impl IndepSet {
    pub const EMPTY: IndepSet = IndepSet(0);

    /// `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        if n >= 32 {
            IndepSet(u32::MAX)
        } else {
            IndepSet((1u32 << n) - 1)
        }
    }

    pub fn from_bits(bits: u32) -> Self {
        IndepSet(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn contains(self, i: usize) -> bool {
        i < 32 && self.0 & (1 << i) != 0
    }

    pub fn insert(&mut self, i: usize) -> Result<()> {
        if i >= 32 {
            return Err(Error::OutOfRange {
                what: "variable",
                index: i,
                bound: 32,
            });
        }
        self.0 |= 1 << i;
        Ok(())
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&i| self.0 & (1 << i) != 0)
    }

    pub fn max_index(self) -> Option<usize> {
        self.iter().last()
    }

    /// Every subset of `{0, .., n-1}`.
    pub fn all_subsets(n: usize) -> impl Iterator<Item = IndepSet> {
        (0..1u32 << n).map(IndepSet)
    }
}

impl FromIterator<usize> for IndepSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        IndepSet(iter.into_iter().fold(0, |acc, i| acc | (1 << i)))
    }
}

impl fmt::Display for IndepSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.iter().map(|i| format!("v{i}")).collect();
        write!(f, "{{{}}}", items.join(", "))
    }
}

/// `a ≈_J b` on valuation indices of `space`.
pub fn agree_outside(space: &Space, a: usize, b: usize, j: IndepSet) -> bool {
    space.outside_key(a, j) == space.outside_key(b, j)
}
