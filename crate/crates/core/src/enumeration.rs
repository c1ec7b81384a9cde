//! Suits and double suits over `^N A`, enumerated through the antichains of
//! their maximal teams.

use serde::Serialize;

use crate::algebra::Element;
use crate::error::{Error, Result};
use crate::model::{Space, Team, TeamFamily};

/// Largest `m^N` for which suits are enumerated.
pub const SUIT_MAX_VALUATIONS: usize = 5;

/// Largest `m^N` for which the full double-suit carrier is built.
pub const CARRIER_MAX_VALUATIONS: usize = 4;

/// Largest `m` accepted by [`count_table`].
pub const TABLE_MAX_M: usize = 5;

/// Depth-first search over antichains of teams, yielding the downward
/// closure of each nonempty antichain as a bitmask over team indices.
#[derive(Clone, Debug)]
pub struct SuitMasks {
    /// `down[t]`: bitmask of the subteams of team `t`.
    down: Vec<u64>,
    stack: Vec<Frame>,
}

#[derive(Clone, Copy, Debug)]
struct Frame {
    chosen: u64,
    downset: u64,
    next: usize,
}

impl Iterator for SuitMasks {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        loop {
            let top = self.stack.last_mut()?;
            // Candidates come in increasing order, so a later team can only
            // contain, never be contained in, an earlier choice.
            match (top.next..self.down.len()).find(|&t| self.down[t] & top.chosen == 0) {
                Some(t) => {
                    top.next = t + 1;
                    let frame = Frame {
                        chosen: top.chosen | 1 << t,
                        downset: top.downset | self.down[t],
                        next: t + 1,
                    };
                    self.stack.push(frame);
                    return Some(frame.downset);
                }
                None => {
                    self.stack.pop();
                }
            }
        }
    }
}

fn suit_space(m: usize, vars: usize) -> Result<Space> {
    let space = Space::new(m, vars)?;
    if space.size() > SUIT_MAX_VALUATIONS {
        return Err(Error::Guard(format!(
            "{space} has {} valuations; suits are enumerated only up to {SUIT_MAX_VALUATIONS}",
            space.size()
        )));
    }
    Ok(space)
}

/// Every suit over `^N A` with `|A| = m`, as team-index bitmasks.
pub fn suit_masks(m: usize, vars: usize) -> Result<SuitMasks> {
    let space = suit_space(m, vars)?;
    let down = (0..space.team_count() as u64)
        .map(|t| Team(t).subteams().fold(0u64, |acc, s| acc | 1 << s.0))
        .collect();
    Ok(SuitMasks {
        down,
        stack: vec![Frame {
            chosen: 0,
            downset: 0,
            next: 0,
        }],
    })
}

/// Every suit over `^N A` with `|A| = m`, each exactly once.
pub fn enumerate_suits(m: usize, vars: usize) -> Result<impl Iterator<Item = TeamFamily>> {
    let size = suit_space(m, vars)?.size();
    Ok(suit_masks(m, vars)?.map(move |mask| TeamFamily::from_mask(size, mask)))
}

/// Number of pairs of suits meeting only in `{∅}`.
fn count_double_suits(suits: &[u64]) -> u64 {
    suits
        .iter()
        .map(|&a| suits.iter().filter(|&&b| a & b == 1).count() as u64)
        .sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CountRow {
    pub m: usize,
    /// `2^m`, the number of teams over `^1 A`.
    pub teams: u64,
    pub suits: u64,
    pub double_suits: u64,
}

/// Suit and double-suit counts over `^1 A` for `|A| = 0..=max_m`.
pub fn count_table(max_m: usize) -> Result<Vec<CountRow>> {
    if max_m > TABLE_MAX_M {
        return Err(Error::Guard(format!(
            "counting is exhaustive and limited to m <= {TABLE_MAX_M}, got {max_m}"
        )));
    }
    (0..=max_m)
        .map(|m| {
            let suits: Vec<u64> = suit_masks(m, 1)?.collect();
            Ok(CountRow {
                m,
                teams: 1 << m,
                suits: suits.len() as u64,
                double_suits: count_double_suits(&suits),
            })
        })
        .collect()
}

/// `DSuit(^N A)`, sorted.
pub fn dsuit_carrier(m: usize, vars: usize) -> Result<Vec<Element>> {
    let space = Space::new(m, vars)?;
    if space.size() > CARRIER_MAX_VALUATIONS {
        return Err(Error::Guard(format!(
            "{space} has {} valuations; full carriers are built only up to {CARRIER_MAX_VALUATIONS}",
            space.size()
        )));
    }
    let suits: Vec<u64> = suit_masks(m, vars)?.collect();
    let size = space.size();
    let mut out = Vec::new();
    for &a in &suits {
        for &b in suits.iter().filter(|&&b| a & b == 1) {
            out.push(Element::new(
                space,
                TeamFamily::from_mask(size, a),
                TeamFamily::from_mask(size, b),
            )?);
        }
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Every family of teams that is nonempty and downward closed, found by
    /// filtering all `2^(2^(m^N))` families.
    fn brute_force_suits(m: usize, vars: usize) -> Vec<u64> {
        let space = Space::new(m, vars).unwrap();
        let teams = space.team_count();
        (0..1u64 << teams)
            .filter(|&mask| TeamFamily::from_mask(space.size(), mask).is_suit())
            .collect()
    }

    #[test]
    fn small_cases() {
        let one: Vec<TeamFamily> = enumerate_suits(1, 1).unwrap().collect();
        assert_eq!(one.len(), 2);
        assert!(one.contains(&TeamFamily::bottom(1)));
        assert!(one.contains(&TeamFamily::all(1)));
        assert_eq!(enumerate_suits(2, 1).unwrap().count(), 5);
        assert_eq!(enumerate_suits(0, 1).unwrap().count(), 1);
    }

    #[test]
    fn dfs_matches_brute_force() {
        for (m, vars) in [(0, 1), (1, 1), (2, 1), (3, 1), (1, 3), (2, 2)] {
            let mut dfs: Vec<u64> = suit_masks(m, vars).unwrap().collect();
            let n = dfs.len();
            dfs.sort();
            dfs.dedup();
            assert_eq!(dfs.len(), n, "duplicates for ({m}, {vars})");
            assert_eq!(dfs, brute_force_suits(m, vars), "({m}, {vars})");
        }
    }

    #[test]
    fn double_suit_count_matches_definition() {
        for m in 0..=3 {
            let space = Space::new(m, 1).unwrap();
            let suits: Vec<TeamFamily> = brute_force_suits(m, 1)
                .into_iter()
                .map(|mask| TeamFamily::from_mask(space.size(), mask))
                .collect();
            let bottom = TeamFamily::bottom(space.size());
            let want = suits
                .iter()
                .flat_map(|a| suits.iter().map(move |b| (a, b)))
                .filter(|(a, b)| a.intersection(b) == bottom)
                .count() as u64;
            assert_eq!(count_table(m).unwrap()[m].double_suits, want);
        }
    }

    #[test]
    fn table_rows() {
        let rows = count_table(4).unwrap();
        let fg: Vec<(u64, u64)> = rows.iter().map(|r| (r.suits, r.double_suits)).collect();
        assert_eq!(fg, vec![(1, 1), (2, 3), (5, 11), (19, 55), (167, 489)]);
        assert!(count_table(6).is_err());
    }

    #[test]
    fn carriers() {
        assert_eq!(dsuit_carrier(1, 1).unwrap().len(), 3);
        let c2 = dsuit_carrier(2, 1).unwrap();
        assert_eq!(c2.len(), 11);
        assert!(c2.iter().all(Element::is_double_suit));
        assert!(c2.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(dsuit_carrier(3, 1).unwrap().len(), 55);
        assert_eq!(dsuit_carrier(2, 2).unwrap().len(), 489);
        assert!(dsuit_carrier(5, 1).is_err());
    }
}
