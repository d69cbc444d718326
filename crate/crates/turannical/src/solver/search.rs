//! Exact branch-and-bound for minimum hitting set.
//!
//! Branching picks a constraint with the fewest undecided pairs (ties to the
//! lowest constraint index) and tries each of its undecided pairs in turn,
//! excluding tried pairs so the enumeration is complete. The lower bound is
//! a greedy packing of pairwise-disjoint unsatisfied constraints combined
//! with a pair-frequency bound; both are admissible. A node budget turns
//! exhaustion into an explicit non-optimal outcome, never a guess.

use super::instance::HittingSetInstance;

#[derive(Clone, Copy, Debug)]
pub struct SearchBudget {
    pub max_nodes: u64,
}

impl Default for SearchBudget {
    fn default() -> SearchBudget {
        SearchBudget {
            max_nodes: 10_000_000,
        }
    }
}

impl SearchBudget {
    pub fn nodes(max_nodes: u64) -> SearchBudget {
        SearchBudget { max_nodes }
    }
}

#[derive(Clone, Debug)]
pub enum OptimizeOutcome {
    /// Exact minimum transversal.
    Optimal { transversal: Vec<u32> },
    /// Budget exhausted: best transversal found plus a certified lower bound.
    Bounded {
        transversal: Vec<u32>,
        lower_bound: u64,
    },
}

#[derive(Clone, Debug)]
pub enum DecideOutcome {
    /// A transversal of size at most the bound.
    Found(Vec<u32>),
    /// No transversal of size at most the bound exists.
    Refuted,
    /// Budget exhausted before the question was settled.
    Unknown { lower_bound: u64 },
}

#[derive(Clone, Copy, Debug, Default)]
pub struct SearchStats {
    pub nodes: u64,
    pub exhausted: bool,
}

/// Deterministic greedy transversal: repeatedly take the pair hitting the
/// most unhit constraints (ties to the lowest pair index), then drop
/// redundant picks in reverse insertion order.
pub fn greedy_transversal(inst: &HittingSetInstance) -> Vec<u32> {
    let n_pairs = inst.universe.len();
    let m = inst.constraints.len();
    let mut hit = vec![false; m];
    let mut unhit = m;
    let mut deg = vec![0u32; n_pairs];
    let mut pair_constraints: Vec<Vec<u32>> = vec![Vec::new(); n_pairs];
    for (ci, c) in inst.constraints.iter().enumerate() {
        for &p in c {
            deg[p as usize] += 1;
            pair_constraints[p as usize].push(ci as u32);
        }
    }
    let mut chosen: Vec<u32> = Vec::new();
    while unhit > 0 {
        let best = (0..n_pairs)
            .max_by_key(|&p| (deg[p], std::cmp::Reverse(p)))
            .unwrap();
        debug_assert!(deg[best] > 0);
        chosen.push(best as u32);
        for &ci in &pair_constraints[best] {
            if !hit[ci as usize] {
                hit[ci as usize] = true;
                unhit -= 1;
                for &p in &inst.constraints[ci as usize] {
                    deg[p as usize] -= 1;
                }
            }
        }
    }
    // Minimalize: remove picks whose constraints are all hit elsewhere.
    let mut cover_count = vec![0u32; m];
    let in_set: std::collections::HashSet<u32> = chosen.iter().copied().collect();
    for (ci, c) in inst.constraints.iter().enumerate() {
        cover_count[ci] = c.iter().filter(|p| in_set.contains(p)).count() as u32;
    }
    let mut kept = chosen.clone();
    for idx in (0..chosen.len()).rev() {
        let p = chosen[idx];
        if pair_constraints[p as usize]
            .iter()
            .all(|&ci| cover_count[ci as usize] >= 2)
        {
            for &ci in &pair_constraints[p as usize] {
                cover_count[ci as usize] -= 1;
            }
            kept.retain(|&q| q != p);
        }
    }
    kept.sort_unstable();
    kept
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum PairState {
    Undecided,
    Chosen,
    Excluded,
}

struct Searcher<'a> {
    constraints: &'a [Vec<u32>],
    pair_constraints: Vec<Vec<u32>>,
    constraint_masks: Vec<Vec<u64>>,
    words: usize,

    pair_state: Vec<PairState>,
    undecided_mask: Vec<u64>,
    hit_count: Vec<u32>,
    undecided_count: Vec<u32>,
    unhit_total: usize,
    pair_unhit_deg: Vec<u32>,
    chosen: Vec<u32>,

    /// Prune partial solutions reaching this size.
    prune_at: u64,
    best: Option<Vec<u32>>,
    target: Option<u64>,
    done: bool,

    nodes: u64,
    max_nodes: u64,
    exhausted: bool,
}

impl<'a> Searcher<'a> {
    fn new(inst: &'a HittingSetInstance, prune_at: u64, target: Option<u64>, budget: SearchBudget) -> Searcher<'a> {
        let n_pairs = inst.universe.len();
        let m = inst.constraints.len();
        let words = n_pairs.div_ceil(64).max(1);
        let mut pair_constraints: Vec<Vec<u32>> = vec![Vec::new(); n_pairs];
        let mut constraint_masks = Vec::with_capacity(m);
        let mut pair_unhit_deg = vec![0u32; n_pairs];
        for (ci, c) in inst.constraints.iter().enumerate() {
            let mut mask = vec![0u64; words];
            for &p in c {
                pair_constraints[p as usize].push(ci as u32);
                pair_unhit_deg[p as usize] += 1;
                mask[p as usize / 64] |= 1 << (p % 64);
            }
            constraint_masks.push(mask);
        }
        let mut undecided_mask = vec![0u64; words];
        for p in 0..n_pairs {
            undecided_mask[p / 64] |= 1 << (p % 64);
        }
        Searcher {
            constraints: &inst.constraints,
            pair_constraints,
            constraint_masks,
            words,
            pair_state: vec![PairState::Undecided; n_pairs],
            undecided_mask,
            hit_count: vec![0; m],
            undecided_count: inst.constraints.iter().map(|c| c.len() as u32).collect(),
            unhit_total: m,
            pair_unhit_deg,
            chosen: Vec::new(),
            prune_at,
            best: None,
            target,
            done: false,
            nodes: 0,
            max_nodes: budget.max_nodes,
            exhausted: false,
        }
    }

    fn choose(&mut self, p: u32) {
        debug_assert_eq!(self.pair_state[p as usize], PairState::Undecided);
        self.pair_state[p as usize] = PairState::Chosen;
        self.undecided_mask[p as usize / 64] &= !(1 << (p % 64));
        self.chosen.push(p);
        for i in 0..self.pair_constraints[p as usize].len() {
            let ci = self.pair_constraints[p as usize][i];
            self.undecided_count[ci as usize] -= 1;
            self.hit_count[ci as usize] += 1;
            if self.hit_count[ci as usize] == 1 {
                self.unhit_total -= 1;
                for &q in &self.constraints[ci as usize] {
                    self.pair_unhit_deg[q as usize] -= 1;
                }
            }
        }
    }

    fn unchoose(&mut self, p: u32) {
        debug_assert_eq!(self.pair_state[p as usize], PairState::Chosen);
        self.pair_state[p as usize] = PairState::Undecided;
        self.undecided_mask[p as usize / 64] |= 1 << (p % 64);
        debug_assert_eq!(self.chosen.last(), Some(&p));
        self.chosen.pop();
        for i in 0..self.pair_constraints[p as usize].len() {
            let ci = self.pair_constraints[p as usize][i];
            self.undecided_count[ci as usize] += 1;
            self.hit_count[ci as usize] -= 1;
            if self.hit_count[ci as usize] == 0 {
                self.unhit_total += 1;
                for &q in &self.constraints[ci as usize] {
                    self.pair_unhit_deg[q as usize] += 1;
                }
            }
        }
    }

    fn exclude(&mut self, p: u32) {
        debug_assert_eq!(self.pair_state[p as usize], PairState::Undecided);
        self.pair_state[p as usize] = PairState::Excluded;
        self.undecided_mask[p as usize / 64] &= !(1 << (p % 64));
        for i in 0..self.pair_constraints[p as usize].len() {
            let ci = self.pair_constraints[p as usize][i];
            self.undecided_count[ci as usize] -= 1;
        }
    }

    fn unexclude(&mut self, p: u32) {
        debug_assert_eq!(self.pair_state[p as usize], PairState::Excluded);
        self.pair_state[p as usize] = PairState::Undecided;
        self.undecided_mask[p as usize / 64] |= 1 << (p % 64);
        for i in 0..self.pair_constraints[p as usize].len() {
            let ci = self.pair_constraints[p as usize][i];
            self.undecided_count[ci as usize] += 1;
        }
    }

    /// Admissible lower bound on further deletions: greedy packing of
    /// unhit constraints with disjoint undecided pairs, combined with
    /// ceil(unhit / max pair frequency).
    fn lower_bound(&self) -> u64 {
        if self.unhit_total == 0 {
            return 0;
        }
        let mut used = vec![0u64; self.words];
        let mut packing: u64 = 0;
        for (ci, mask) in self.constraint_masks.iter().enumerate() {
            if self.hit_count[ci] > 0 {
                continue;
            }
            let mut disjoint = true;
            let mut any_undecided = false;
            for w in 0..self.words {
                let undecided = mask[w] & self.undecided_mask[w];
                if undecided & used[w] != 0 {
                    disjoint = false;
                    break;
                }
                if undecided != 0 {
                    any_undecided = true;
                }
            }
            if disjoint && any_undecided {
                packing += 1;
                for w in 0..self.words {
                    used[w] |= mask[w] & self.undecided_mask[w];
                }
            }
        }
        let max_deg = self
            .pair_state
            .iter()
            .enumerate()
            .filter(|(_, s)| **s == PairState::Undecided)
            .map(|(p, _)| self.pair_unhit_deg[p])
            .max()
            .unwrap_or(0);
        let freq = if max_deg == 0 {
            // Some unhit constraint has no undecided pair left; dead branch.
            u64::MAX / 2
        } else {
            (self.unhit_total as u64).div_ceil(max_deg as u64)
        };
        packing.max(freq)
    }

    fn record_solution(&mut self) {
        let mut sol = self.chosen.clone();
        sol.sort_unstable();
        match self.target {
            Some(t) => {
                if sol.len() as u64 <= t {
                    self.best = Some(sol);
                    self.done = true;
                }
            }
            None => {
                self.prune_at = sol.len() as u64;
                self.best = Some(sol);
            }
        }
    }

    fn search(&mut self) {
        if self.done || self.exhausted {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            self.exhausted = true;
            return;
        }

        // Unit propagation: forced pairs and dead constraints.
        let mut forced: Vec<u32> = Vec::new();
        loop {
            let mut changed = false;
            let mut infeasible = false;
            for ci in 0..self.constraints.len() {
                if self.hit_count[ci] > 0 {
                    continue;
                }
                match self.undecided_count[ci] {
                    0 => {
                        infeasible = true;
                        break;
                    }
                    1 => {
                        let p = *self.constraints[ci]
                            .iter()
                            .find(|&&q| self.pair_state[q as usize] == PairState::Undecided)
                            .unwrap();
                        if (self.chosen.len() as u64 + 1) >= self.prune_at {
                            infeasible = true;
                            break;
                        }
                        self.choose(p);
                        forced.push(p);
                        changed = true;
                    }
                    _ => {}
                }
            }
            if infeasible {
                for &p in forced.iter().rev() {
                    self.unchoose(p);
                }
                return;
            }
            if !changed {
                break;
            }
        }

        if self.unhit_total == 0 {
            self.record_solution();
            for &p in forced.iter().rev() {
                self.unchoose(p);
            }
            return;
        }

        if self.chosen.len() as u64 + self.lower_bound() >= self.prune_at {
            for &p in forced.iter().rev() {
                self.unchoose(p);
            }
            return;
        }

        // Branch on the unhit constraint with the fewest undecided pairs.
        let mut pick = usize::MAX;
        let mut pick_count = u32::MAX;
        for ci in 0..self.constraints.len() {
            if self.hit_count[ci] == 0 && self.undecided_count[ci] < pick_count {
                pick = ci;
                pick_count = self.undecided_count[ci];
            }
        }
        debug_assert!(pick != usize::MAX);

        let mut pairs: Vec<u32> = self.constraints[pick]
            .iter()
            .copied()
            .filter(|&p| self.pair_state[p as usize] == PairState::Undecided)
            .collect();
        // Try high-frequency pairs first; ties to the lower pair index.
        pairs.sort_by_key(|&p| (std::cmp::Reverse(self.pair_unhit_deg[p as usize]), p));

        let mut excluded: Vec<u32> = Vec::new();
        for &p in &pairs {
            if (self.chosen.len() as u64 + 1) < self.prune_at {
                self.choose(p);
                self.search();
                self.unchoose(p);
                if self.done || self.exhausted {
                    break;
                }
            }
            self.exclude(p);
            excluded.push(p);
            if self.undecided_count[pick] == 0 {
                break; // constraint can no longer be hit on this path
            }
        }
        for &p in excluded.iter().rev() {
            self.unexclude(p);
        }
        for &p in forced.iter().rev() {
            self.unchoose(p);
        }
    }
}

/// Exact minimum transversal within the node budget.
pub fn min_transversal(
    inst: &HittingSetInstance,
    budget: SearchBudget,
) -> (OptimizeOutcome, SearchStats) {
    let greedy = greedy_transversal(inst);
    let mut s = Searcher::new(inst, greedy.len() as u64, None, budget);
    let root_lb = s.lower_bound();
    if root_lb >= greedy.len() as u64 {
        // Greedy already meets the certified lower bound.
        return (
            OptimizeOutcome::Optimal { transversal: greedy },
            SearchStats {
                nodes: 0,
                exhausted: false,
            },
        );
    }
    s.search();
    let stats = SearchStats {
        nodes: s.nodes,
        exhausted: s.exhausted,
    };
    let best = s.best.unwrap_or(greedy);
    if stats.exhausted {
        (
            OptimizeOutcome::Bounded {
                transversal: best,
                lower_bound: root_lb,
            },
            stats,
        )
    } else {
        (OptimizeOutcome::Optimal { transversal: best }, stats)
    }
}

/// Is there a transversal of size at most `bound`?
pub fn find_transversal_at_most(
    inst: &HittingSetInstance,
    bound: u64,
    budget: SearchBudget,
) -> (DecideOutcome, SearchStats) {
    let greedy = greedy_transversal(inst);
    if greedy.len() as u64 <= bound {
        return (
            DecideOutcome::Found(greedy),
            SearchStats {
                nodes: 0,
                exhausted: false,
            },
        );
    }
    let mut s = Searcher::new(inst, bound + 1, Some(bound), budget);
    let root_lb = s.lower_bound();
    if root_lb > bound {
        return (
            DecideOutcome::Refuted,
            SearchStats {
                nodes: 0,
                exhausted: false,
            },
        );
    }
    s.search();
    let stats = SearchStats {
        nodes: s.nodes,
        exhausted: s.exhausted,
    };
    match s.best {
        Some(t) => (DecideOutcome::Found(t), stats),
        None if stats.exhausted => (DecideOutcome::Unknown { lower_bound: root_lb }, stats),
        None => (DecideOutcome::Refuted, stats),
    }
}

/// Validity check used by tests and report assembly.
pub fn is_transversal(inst: &HittingSetInstance, transversal: &[u32]) -> bool {
    let set: std::collections::HashSet<u32> = transversal.iter().copied().collect();
    inst.constraints
        .iter()
        .all(|c| c.iter().any(|p| set.contains(p)))
}
