use std::cmp::Ordering;
use std::fmt;

use super::Space;
use crate::error::{Error, Result};

/// A set of valuations, as a bitmask over valuation indices.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Team(pub u64);

impl Team {
    pub const EMPTY: Team = Team(0);

    /// The team holding the first `size` valuations.
    pub fn full(size: usize) -> Self {
        if size >= 64 {
            Team(u64::MAX)
        } else {
            Team((1u64 << size) - 1)
        }
    }

    pub fn singleton(idx: usize) -> Self {
        Team(1 << idx)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, idx: usize) -> bool {
        idx < 64 && self.0 & (1 << idx) != 0
    }

    pub fn with(self, idx: usize) -> Self {
        Team(self.0 | 1 << idx)
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn union(self, other: Team) -> Team {
        Team(self.0 | other.0)
    }

    pub fn intersection(self, other: Team) -> Team {
        Team(self.0 & other.0)
    }

    pub fn difference(self, other: Team) -> Team {
        Team(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Team) -> bool {
        self.0 & !other.0 == 0
    }

    /// Member valuation indices in increasing order.
    pub fn members(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(i)
        })
    }

    /// All subteams, starting from the empty team.
    pub fn subteams(self) -> impl Iterator<Item = Team> {
        let full = self.0;
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full {
                None
            } else {
                Some((cur.wrapping_sub(full)) & full)
            };
            Some(Team(cur))
        })
    }

    /// `{a, b, ...}` with valuations as digit strings, `v_0` first.
    pub fn format(self, space: &Space) -> String {
        let items: Vec<String> = self.members().map(|i| space.format_valuation(i)).collect();
        format!("{{{}}}", items.join(", "))
    }

    /// Parse the team syntax produced by [`Team::format`].
    pub fn parse(text: &str, space: &Space) -> Result<Team> {
        let t = text.trim();
        let inner = t
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(|| Error::parse(0, "a team must be written as `{a, b, ...}`"))?;
        let mut team = Team::EMPTY;
        if inner.trim().is_empty() {
            return Ok(team);
        }
        for item in inner.split(',') {
            let idx = space.parse_valuation(item.trim())?;
            team = team.with(idx);
        }
        Ok(team)
    }
}

/// Families bigger than this many valuations are refused (2^20 teams).
pub const FAMILY_MAX_VALUATIONS: usize = 20;

/// A set of teams over a fixed valuation space, as a bit-vector indexed by
/// the team bitmask.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TeamFamily {
    teams: usize,
    words: Vec<u64>,
}

impl TeamFamily {
    /// The empty family over a space with `size` valuations.
    ///
    /// # Panics
    /// If `size` exceeds [`FAMILY_MAX_VALUATIONS`].
    pub fn empty(size: usize) -> Self {
        assert!(
            size <= FAMILY_MAX_VALUATIONS,
            "team families over {size} valuations are too large"
        );
        let teams = 1usize << size;
        TeamFamily {
            teams,
            words: vec![0; teams.div_ceil(64)],
        }
    }

    /// `{∅}`.
    pub fn bottom(size: usize) -> Self {
        let mut f = Self::empty(size);
        f.insert(Team::EMPTY);
        f
    }

    /// `P(v)`.
    pub fn power_set(size: usize, v: Team) -> Self {
        let mut f = Self::empty(size);
        for t in v.subteams() {
            f.insert(t);
        }
        f
    }

    /// `P(^N A)`.
    pub fn all(size: usize) -> Self {
        let mut f = Self::empty(size);
        for w in f.words.iter_mut() {
            *w = u64::MAX;
        }
        f.trim();
        f
    }

    /// Downward closure of the given teams.
    pub fn generated_by(size: usize, maximal: impl IntoIterator<Item = Team>) -> Self {
        let mut f = Self::empty(size);
        for v in maximal {
            for t in v.subteams() {
                f.insert(t);
            }
        }
        f
    }

    /// Build from a bitmask over at most 64 teams.
    pub fn from_mask(size: usize, mask: u64) -> Self {
        let mut f = Self::empty(size);
        f.words[0] = mask;
        f.trim();
        f
    }

    /// Bitmask view; only meaningful for spaces with at most 64 teams.
    pub fn to_mask(&self) -> u64 {
        self.words[0]
    }

    fn trim(&mut self) {
        if self.teams < 64 {
            self.words[0] &= (1u64 << self.teams) - 1;
        }
    }

    /// Number of valuations of the underlying space.
    pub fn space_size(&self) -> usize {
        self.teams.trailing_zeros() as usize
    }

    /// Number of teams in the underlying space.
    pub fn universe_len(&self) -> usize {
        self.teams
    }

    pub fn contains(&self, t: Team) -> bool {
        let i = t.0 as usize;
        i < self.teams && self.words[i / 64] & (1 << (i % 64)) != 0
    }

    pub fn insert(&mut self, t: Team) {
        let i = t.0 as usize;
        assert!(i < self.teams, "team outside the family's space");
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = Team> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as u64;
                rest &= rest - 1;
                Some(Team(wi as u64 * 64 + b))
            })
        })
    }

    pub fn union(&self, other: &TeamFamily) -> TeamFamily {
        self.zip(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &TeamFamily) -> TeamFamily {
        self.zip(other, |a, b| a & b)
    }

    fn zip(&self, other: &TeamFamily, op: impl Fn(u64, u64) -> u64) -> TeamFamily {
        assert_eq!(self.teams, other.teams, "families over different spaces");
        TeamFamily {
            teams: self.teams,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(&a, &b)| op(a, b))
                .collect(),
        }
    }

    pub fn is_subset(&self, other: &TeamFamily) -> bool {
        self.teams == other.teams
            && self
                .words
                .iter()
                .zip(&other.words)
                .all(|(a, b)| a & !b == 0)
    }

    /// `V' ⊆ V ∈ F` implies `V' ∈ F`.
    pub fn is_downward_closed(&self) -> bool {
        self.iter()
            .all(|v| v.members().all(|i| self.contains(Team(v.0 & !(1 << i)))))
    }

    /// A nonempty downward-closed family.
    pub fn is_suit(&self) -> bool {
        !self.is_empty() && self.is_downward_closed()
    }

    /// Members not strictly contained in another member, in increasing
    /// bitmask order.
    pub fn maximal(&self) -> Vec<Team> {
        let members: Vec<Team> = self.iter().collect();
        members
            .iter()
            .copied()
            .filter(|&v| !members.iter().any(|&w| w != v && v.is_subset(w)))
            .collect()
    }

    /// `{{..}, {..}}` listing the maximal members.
    pub fn format(&self, space: &Space) -> String {
        let items: Vec<String> = self.maximal().iter().map(|t| t.format(space)).collect();
        format!("{{{}}}", items.join(", "))
    }
}

impl Ord for TeamFamily {
    /// Compares the bit-vectors as binary numbers, highest team first.
    fn cmp(&self, other: &Self) -> Ordering {
        self.teams.cmp(&other.teams).then_with(|| {
            for (a, b) in self.words.iter().rev().zip(other.words.iter().rev()) {
                match a.cmp(b) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for TeamFamily {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for TeamFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self
            .maximal()
            .iter()
            .map(|t| format!("{:#b}", t.0))
            .collect();
        write!(f, "{{{}}}", items.join(", "))
    }
}
