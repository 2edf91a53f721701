use alloc::vec;
use alloc::vec::Vec;

use crate::control::Budget;
use crate::pieces::{Piece, PieceCatalog};

use super::Interrupted;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Axis {
    /// Widths sum to the board width (bottom and top edges).
    Horizontal,
    /// Heights sum to the board height (left and right edges).
    Vertical,
}

impl Axis {
    /// Extent of `p` along this axis.
    #[inline]
    pub fn span(self, p: &Piece) -> u32 {
        match self {
            Axis::Horizontal => p.width,
            Axis::Vertical => p.height,
        }
    }

    /// Extent of `p` across this axis, i.e. into the board from the edge.
    #[inline]
    pub fn depth(self, p: &Piece) -> u32 {
        match self {
            Axis::Horizontal => p.height,
            Axis::Vertical => p.width,
        }
    }

    pub fn target<C: PieceCatalog + ?Sized>(self, cat: &C) -> u32 {
        let (w, h) = cat.board();
        match self {
            Axis::Horizontal => w,
            Axis::Vertical => h,
        }
    }
}

/// A class-distinct set of pieces whose spans tile one edge of the board.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SideSubset {
    pub axis: Axis,
    /// Piece indices, ascending.
    pub members: Vec<usize>,
    pub span: u32,
}

impl SideSubset {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, piece: usize) -> bool {
        self.members.binary_search(&piece).is_ok()
    }
}

/// All side subsets of `cat` along `axis` with at least `min_size` members,
/// in lexicographic order of their member lists.
pub fn side_subsets<C: PieceCatalog + ?Sized>(
    cat: &C,
    axis: Axis,
    min_size: usize,
) -> Vec<SideSubset> {
    side_subsets_bounded(
        cat,
        axis,
        min_size,
        usize::MAX,
        &mut crate::control::Unlimited,
    )
    .expect("unlimited budget")
}

/// [`side_subsets`] restricted to at most `max_size` members.
pub fn side_subsets_bounded<C: PieceCatalog + ?Sized>(
    cat: &C,
    axis: Axis,
    min_size: usize,
    max_size: usize,
    budget: &mut dyn Budget,
) -> Result<Vec<SideSubset>, Interrupted> {
    let target = axis.target(cat);
    let mut out = Vec::new();
    let mut search = SubsetSearch::new(cat, axis, min_size, max_size);
    search.run(target, budget, &mut |members| {
        let mut members = members.to_vec();
        members.sort_unstable();
        out.push(SideSubset {
            axis,
            members,
            span: target,
        });
        true
    })?;
    out.sort_unstable_by(|a, b| a.members.cmp(&b.members));
    Ok(out)
}

/// Whether any side subset with at least `min_size` members exists.
pub fn has_side_subset<C: PieceCatalog + ?Sized>(
    cat: &C,
    axis: Axis,
    min_size: usize,
    budget: &mut dyn Budget,
) -> Result<bool, Interrupted> {
    let mut found = false;
    let mut search = SubsetSearch::new(cat, axis, min_size, usize::MAX);
    search.run(axis.target(cat), budget, &mut |_| {
        found = true;
        false
    })?;
    Ok(found)
}

/// Depth-first include/exclude search over pieces sorted by descending span,
/// cut when the remaining spans cannot reach the target.
struct SubsetSearch {
    items: Vec<(usize, usize, u32)>,
    suffix: Vec<u64>,
    used: Vec<bool>,
    chosen: Vec<usize>,
    min_size: usize,
    max_size: usize,
    steps: u32,
}

const POLL_EVERY: u32 = 1 << 14;

impl SubsetSearch {
    fn new<C: PieceCatalog + ?Sized>(
        cat: &C,
        axis: Axis,
        min_size: usize,
        max_size: usize,
    ) -> Self {
        let target = axis.target(cat);
        let mut items: Vec<(usize, usize, u32)> = cat
            .pieces()
            .iter()
            .filter(|p| axis.span(p) <= target && axis.span(p) > 0)
            .map(|p| (p.index, p.class, axis.span(p)))
            .collect();
        items.sort_by(|a, b| b.2.cmp(&a.2).then(a.0.cmp(&b.0)));
        let mut suffix = vec![0u64; items.len() + 1];
        for i in (0..items.len()).rev() {
            suffix[i] = suffix[i + 1] + items[i].2 as u64;
        }
        SubsetSearch {
            items,
            suffix,
            used: vec![false; cat.class_count()],
            chosen: Vec::new(),
            min_size: min_size.max(1),
            max_size,
            steps: 0,
        }
    }

    fn run(
        &mut self,
        target: u32,
        budget: &mut dyn Budget,
        emit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> Result<(), Interrupted> {
        self.go(0, target as u64, budget, emit).map(|_| ())
    }

    /// Returns `Ok(false)` once `emit` asks to stop.
    fn go(
        &mut self,
        from: usize,
        remaining: u64,
        budget: &mut dyn Budget,
        emit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> Result<bool, Interrupted> {
        self.steps += 1;
        if self.steps.is_multiple_of(POLL_EVERY) && budget.exhausted() {
            return Err(Interrupted);
        }
        if remaining == 0 {
            if self.chosen.len() >= self.min_size {
                return Ok(emit(&self.chosen));
            }
            return Ok(true);
        }
        if self.chosen.len() >= self.max_size || self.suffix[from] < remaining {
            return Ok(true);
        }
        for i in from..self.items.len() {
            if self.suffix[i] < remaining {
                break;
            }
            let (index, class, span) = self.items[i];
            if span as u64 > remaining || self.used[class] {
                continue;
            }
            self.used[class] = true;
            self.chosen.push(index);
            let go_on = self.go(i + 1, remaining - span as u64, budget, emit);
            self.chosen.pop();
            self.used[class] = false;
            if !go_on? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
