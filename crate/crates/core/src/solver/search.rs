use alloc::vec;
use alloc::vec::Vec;

use crate::control::Budget;
use crate::pieces::Piece;
use crate::tiling::{Placement, Tiling};

use super::skyline::{Skyline, Slot};
use super::{EngineProblem, Mode, Outcome, SolveReport, Symmetry};

const POLL_EVERY: u64 = 1 << 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Flow {
    Found,
    Exhausted,
    Limit,
}

struct Search<'a> {
    problem: &'a EngineProblem,
    sky: Skyline,
    used: Vec<bool>,
    free_classes: usize,
    placed: Vec<Placement>,
    covered: u64,
    nodes: u64,
    max_depth: usize,
    budget: &'a mut dyn Budget,
    /// When set, stop descending at this depth and record the prefix.
    split_at: Option<usize>,
    prefixes: Vec<Vec<Placement>>,
}

impl<'a> Search<'a> {
    fn new(problem: &'a EngineProblem, budget: &'a mut dyn Budget) -> Self {
        Search {
            problem,
            sky: Skyline::new(problem.width, problem.height),
            used: vec![false; problem.classes],
            free_classes: problem.classes,
            placed: Vec::new(),
            covered: 0,
            nodes: 0,
            max_depth: 0,
            budget,
            split_at: None,
            prefixes: Vec::new(),
        }
    }

    fn report(&self, flow: Flow) -> SolveReport {
        let outcome = match flow {
            Flow::Found => Outcome::Found(Tiling {
                width: self.problem.width,
                height: self.problem.height,
                placements: self.placed.clone(),
            }),
            Flow::Exhausted => Outcome::Exhausted,
            Flow::Limit => Outcome::Limit,
        };
        SolveReport {
            outcome,
            nodes: self.nodes,
            max_depth: self.max_depth,
        }
    }

    #[inline]
    fn admissible(&self, p: &Piece, slot: Slot) -> bool {
        let w = self.problem.width;
        match self.problem.symmetry {
            Symmetry::Off | Symmetry::Auto => true,
            Symmetry::Square => match self.placed.first() {
                None => p.width <= p.height && p.width < w,
                Some(bl) if slot.base == 0 && slot.x + p.width == w => {
                    bl.width < p.width && p.width < bl.height
                }
                Some(_) => true,
            },
            Symmetry::Mirror => match self.placed.first() {
                Some(bl) if slot.base == 0 && slot.x + p.width == w => bl.width <= p.width,
                _ => true,
            },
        }
    }

    fn push(&mut self, p: &Piece, slot: Slot) {
        self.sky.raise(slot.x, p.width, p.height);
        self.used[p.class] = true;
        self.free_classes -= 1;
        self.covered += p.area();
        self.placed.push(Placement {
            x: slot.x,
            y: slot.base,
            width: p.width,
            height: p.height,
            piece: p.index,
            class: p.class,
        });
        self.max_depth = self.max_depth.max(self.placed.len());
    }

    fn pop(&mut self) {
        let q = self.placed.pop().expect("pop without push");
        self.sky.unplace(super::PlaceRecord {
            x: q.x,
            width: q.width,
            height: q.height,
        });
        self.used[q.class] = false;
        self.free_classes += 1;
        self.covered -= q.area();
    }

    fn dfs(&mut self) -> Flow {
        if self.covered == self.problem.board_area() {
            if self.split_at.is_some() {
                self.prefixes.push(self.placed.clone());
                return Flow::Exhausted;
            }
            return Flow::Found;
        }
        if self.split_at == Some(self.placed.len()) {
            self.prefixes.push(self.placed.clone());
            return Flow::Exhausted;
        }
        let slot = self
            .sky
            .lowest_slot()
            .expect("uncovered area implies a slot");
        if self.problem.mode == Mode::Pmp {
            let r = self.problem.piece_count.unwrap_or(0) as usize;
            if self.free_classes + self.placed.len() < r {
                return Flow::Exhausted;
            }
        }
        let pieces = &self.problem.pieces;
        // Pieces are sorted by width: the first unused one is the narrowest.
        match pieces.iter().find(|p| !self.used[p.class]) {
            Some(p) if p.width <= slot.flat => {}
            _ => return Flow::Exhausted,
        }
        let headroom = self.problem.height - slot.base;
        for p in pieces {
            if p.width > slot.flat {
                break;
            }
            if self.used[p.class] || p.height > headroom || !self.admissible(p, slot) {
                continue;
            }
            self.nodes += 1;
            // Polling on the first node lets an expired budget stop a fresh task at once.
            if self.problem.node_limit.is_some_and(|l| self.nodes > l)
                || (self.nodes % POLL_EVERY == 1 && self.budget.exhausted())
            {
                return Flow::Limit;
            }
            self.push(p, slot);
            match self.dfs() {
                Flow::Exhausted => self.pop(),
                other => return other,
            }
        }
        Flow::Exhausted
    }

    /// Replays `prefix`, checking each placement is one the search could make.
    fn replay(&mut self, prefix: &[Placement]) -> bool {
        for q in prefix {
            let Ok(slot) = self.sky.lowest_slot() else {
                return false;
            };
            let Some(p) = self.problem.pieces.get(q.piece).copied() else {
                return false;
            };
            if slot.x != q.x
                || slot.base != q.y
                || (p.width, p.height) != (q.width, q.height)
                || p.width > slot.flat
                || p.height > self.problem.height - slot.base
                || self.used[p.class]
                || !self.admissible(&p, slot)
            {
                return false;
            }
            self.push(&p, slot);
        }
        true
    }
}

/// Searches the whole space.
pub fn solve(problem: &EngineProblem, budget: &mut dyn Budget) -> SolveReport {
    let mut s = Search::new(problem, budget);
    let flow = s.dfs();
    s.report(flow)
}

/// Searches only below `prefix`, a placement sequence produced by [`split`].
/// An inadmissible prefix has an empty subtree and reports `Exhausted`.
pub fn solve_from(
    problem: &EngineProblem,
    prefix: &[Placement],
    budget: &mut dyn Budget,
) -> SolveReport {
    let mut s = Search::new(problem, budget);
    if !s.replay(prefix) {
        return s.report(Flow::Exhausted);
    }
    let flow = s.dfs();
    s.report(flow)
}

/// All admissible placement sequences of length `depth` (or shorter ones that
/// already tile the board). Their subtrees partition the search space.
pub fn split(
    problem: &EngineProblem,
    depth: usize,
    budget: &mut dyn Budget,
) -> Result<Vec<Vec<Placement>>, SolveReport> {
    let mut s = Search::new(problem, budget);
    s.split_at = Some(depth);
    match s.dfs() {
        Flow::Limit => Err(s.report(Flow::Limit)),
        _ => Ok(core::mem::take(&mut s.prefixes)),
    }
}
