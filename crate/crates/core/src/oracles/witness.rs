//! Exact-overlap search over difference states.
//!
//! Two digit blocks `i₁…i_k`, `j₁…j_k` over `D = {0, 3p, 3q, 3p+3q}` give the
//! same point iff `s_k = 0` where `s_0 = 0` and `s_m = 4·s_{m−1} + (i_m − j_m)`.
//! Once `|s| > p + q` the gap can only grow (`|4s + Δ| ≥ 4|s| − 3(p+q) > |s|`),
//! so the reachable part of the automaton lives in `[−(p+q), p+q]` and the
//! search is a decision procedure.

use std::collections::VecDeque;

use serde::Serialize;

use crate::classifier::ReducedRational;
use crate::error::{Error, Result};

/// The scaled digit set `q·Ω_t = {0, 3p, 3q, 3p+3q}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DigitSet {
    t: ReducedRational,
    digits: [u64; 4],
}

impl DigitSet {
    pub fn new(t: ReducedRational) -> Result<Self> {
        let (p, q) = (t.p(), t.q());
        let overflow = || Error::Overflow("digit set");
        let three_p = p.checked_mul(3).ok_or_else(overflow)?;
        let three_q = q.checked_mul(3).ok_or_else(overflow)?;
        let top = three_p.checked_add(three_q).ok_or_else(overflow)?;
        Ok(Self {
            t,
            digits: [0, three_p, three_q, top],
        })
    }

    pub fn digits(&self) -> [u64; 4] {
        self.digits
    }

    pub fn t(&self) -> ReducedRational {
        self.t
    }

    pub fn contains(&self, d: u64) -> bool {
        self.digits.contains(&d)
    }

    /// Renders a scaled digit in `Ω_t` notation: `0`, `3t`, `3`, `3t+3`.
    pub fn label(&self, d: u64) -> Option<&'static str> {
        const LABELS: [&str; 4] = ["0", "3t", "3", "3t+3"];
        self.digits.iter().position(|&x| x == d).map(|i| LABELS[i])
    }

    /// All ordered digit pairs `(a, b)` in lexicographic order.
    fn pairs(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        let mut sorted = self.digits;
        sorted.sort_unstable();
        sorted
            .into_iter()
            .flat_map(move |a| sorted.into_iter().map(move |b| (a, b)))
    }
}

/// Two distinct equal-length blocks with `f_{block_i}(0) = f_{block_j}(0)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OverlapWitness {
    pub p: u64,
    pub q: u64,
    pub depth: usize,
    pub block_i: Vec<u64>,
    pub block_j: Vec<u64>,
}

impl OverlapWitness {
    /// Rechecks `Σ (i_n − j_n)·4^(k−n) = 0` from scratch.
    pub fn verify(&self) -> bool {
        let Ok(t) = ReducedRational::proper_reduced(self.p, self.q) else {
            return false;
        };
        let Ok(digits) = DigitSet::new(t) else {
            return false;
        };
        if self.depth == 0
            || self.block_i.len() != self.depth
            || self.block_j.len() != self.depth
            || self.block_i == self.block_j
        {
            return false;
        }
        let all_digits = self
            .block_i
            .iter()
            .chain(&self.block_j)
            .all(|&d| digits.contains(d));
        if !all_digits {
            return false;
        }
        let value = |block: &[u64]| {
            block
                .iter()
                .try_fold(0i128, |acc, &d| acc.checked_mul(4)?.checked_add(i128::from(d)))
        };
        match (value(&self.block_i), value(&self.block_j)) {
            (Some(a), Some(b)) => a == b,
            // Blocks this deep are far beyond anything the search produces.
            _ => false,
        }
    }

    /// Blocks rendered in `Ω_t` notation, e.g. `(0, 3t, 3t+3) ~ (3t, 0, 0)`.
    pub fn render_human(&self) -> String {
        let t = ReducedRational::new(self.p, self.q).expect("witness holds a positive pair");
        let digits = DigitSet::new(t).expect("witness digits fit");
        let render = |block: &[u64]| {
            block
                .iter()
                .map(|&d| digits.label(d).unwrap_or("?"))
                .collect::<Vec<_>>()
                .join(", ")
        };
        format!("({}) ~ ({})", render(&self.block_i), render(&self.block_j))
    }
}

/// Outcome of [`search_overlap`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessSearch {
    pub witness: Option<OverlapWitness>,
    /// Distinct difference states reached after the first step.
    pub states_visited: usize,
    /// True when absence of a witness is proven for every depth.
    pub exhaustive: bool,
}

/// Depth beyond which no new minimal witness can appear: `2(p+q) + 1`.
pub fn exhaustive_depth(t: ReducedRational) -> u64 {
    2 * (t.p() + t.q()) + 1
}

struct StateSpace {
    bound: i64,
}

impl StateSpace {
    fn index(&self, s: i64) -> Option<usize> {
        (s.abs() <= self.bound).then(|| (s + self.bound) as usize)
    }

    fn len(&self) -> usize {
        2 * self.bound as usize + 1
    }
}

fn deltas(digits: &DigitSet) -> Vec<(u64, u64, i64)> {
    digits.pairs().map(|(a, b)| (a, b, a as i64 - b as i64)).collect()
}

/// Minimal-depth witness search, returning the lexicographically least
/// witness (digit pairs compared as `(a, b)`) among those of minimal depth.
pub fn search_overlap(t: ReducedRational, max_depth: u64) -> Result<WitnessSearch> {
    let t = ReducedRational::proper_reduced(t.p(), t.q())?;
    if max_depth == 0 {
        return Err(Error::NotPositive("max_depth"));
    }
    let digits = DigitSet::new(t)?;
    // keeps 4·bound + 3·bound inside i64
    let bound = t
        .p()
        .checked_add(t.q())
        .filter(|&b| b <= (i64::MAX / 8) as u64)
        .ok_or(Error::Overflow("difference state bound"))? as i64;
    let space = StateSpace { bound };
    let moves = deltas(&digits);

    // forward BFS from the forced unequal first step
    let mut seen = vec![false; space.len()];
    let mut frontier = Vec::new();
    for &(a, b, delta) in &moves {
        if a == b {
            continue;
        }
        if let Some(i) = space.index(delta) {
            if !seen[i] {
                seen[i] = true;
                frontier.push(delta);
            }
        }
    }
    let mut depth = 1u64;
    let mut visited = frontier.len();
    let mut found = None;
    loop {
        if frontier.contains(&0) {
            found = Some(depth);
            break;
        }
        if frontier.is_empty() || depth >= max_depth {
            break;
        }
        let mut next = Vec::new();
        for &s in &frontier {
            for &(_, _, delta) in &moves {
                if let Some(i) = space.index(4 * s + delta) {
                    if !seen[i] {
                        seen[i] = true;
                        next.push(4 * s + delta);
                    }
                }
            }
        }
        visited += next.len();
        frontier = next;
        depth += 1;
    }

    let Some(min_depth) = found else {
        let exhaustive = frontier.is_empty() || max_depth >= exhaustive_depth(t);
        return Ok(WitnessSearch {
            witness: None,
            states_visited: visited,
            exhaustive,
        });
    };

    let to_zero = distances_to_zero(&space, &moves);
    let witness = least_witness(t, &space, &moves, &to_zero, min_depth as usize);
    debug_assert!(witness.verify());
    Ok(WitnessSearch {
        witness: Some(witness),
        states_visited: visited,
        exhaustive: true,
    })
}

pub fn find_overlap_witness(t: ReducedRational, max_depth: u64) -> Result<Option<OverlapWitness>> {
    Ok(search_overlap(t, max_depth)?.witness)
}

/// Shortest number of steps from each state to 0 (reverse BFS).
fn distances_to_zero(space: &StateSpace, moves: &[(u64, u64, i64)]) -> Vec<Option<u32>> {
    let mut dist = vec![None; space.len()];
    let zero = space.index(0).expect("0 is in range");
    dist[zero] = Some(0);
    let mut queue = VecDeque::from([0i64]);
    while let Some(s) = queue.pop_front() {
        let d = dist[space.index(s).expect("queued states are in range")].expect("queued");
        for &(_, _, delta) in moves {
            let diff = s - delta;
            if diff % 4 != 0 {
                continue;
            }
            if let Some(i) = space.index(diff / 4) {
                if dist[i].is_none() {
                    dist[i] = Some(d + 1);
                    queue.push_back(diff / 4);
                }
            }
        }
    }
    dist
}

/// Greedy reconstruction: at each step take the smallest pair that keeps the
/// remaining distance to 0 exactly on schedule.
fn least_witness(
    t: ReducedRational,
    space: &StateSpace,
    moves: &[(u64, u64, i64)],
    to_zero: &[Option<u32>],
    depth: usize,
) -> OverlapWitness {
    let mut block_i = Vec::with_capacity(depth);
    let mut block_j = Vec::with_capacity(depth);
    let mut s = 0i64;
    for step in 0..depth {
        let remaining = (depth - step - 1) as u32;
        let (a, b, next) = moves
            .iter()
            .filter(|&&(a, b, _)| step > 0 || a != b)
            .find_map(|&(a, b, delta)| {
                let next = 4 * s + delta;
                let i = space.index(next)?;
                (to_zero[i] == Some(remaining)).then_some((a, b, next))
            })
            .expect("a minimal path exists at every step");
        block_i.push(a);
        block_j.push(b);
        s = next;
    }
    OverlapWitness {
        p: t.p(),
        q: t.q(),
        depth,
        block_i,
        block_j,
    }
}
