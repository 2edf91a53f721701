//! The gap left above the shallowest piece of each perimeter side.
//!
//! On every side the piece reaching least far into the board leaves a strip
//! above it that pieces outside the perimeter must cover exactly. An interior
//! piece is flanked by deeper neighbours, so the strip is as long as the piece.
//! A corner piece is partly covered by the next piece of the adjacent side;
//! which piece that is depends on the unfixed order of that side's interior,
//! so every admissible choice is tried.

use alloc::vec::Vec;

use crate::pieces::PieceCatalog;

use super::perimeter::{CandidateView, Side};
use super::sums;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum GapMode {
    /// Each unused class may contribute either of its two sides.
    #[default]
    Mixed,
    /// All fillers contribute their short side, or all their long side.
    Strict,
}

/// Outcome for one side.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SideGap {
    pub side: Side,
    /// Piece index of the shallowest piece.
    pub lowest: usize,
    /// Candidate gap lengths over all admissible resting pieces, ascending.
    /// Negative lengths mean the resting piece overhangs into a deeper
    /// neighbour.
    pub extents: Vec<i64>,
    /// The gap length that was filled, with `(class, length)` fillers.
    pub filled: Option<(u32, Vec<(usize, u32)>)>,
}

impl SideGap {
    pub fn passes(&self) -> bool {
        self.filled.is_some()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GapVerdict {
    Pass(Vec<SideGap>),
    Fail(SideGap),
}

impl GapVerdict {
    pub fn passes(&self) -> bool {
        matches!(self, GapVerdict::Pass(_))
    }
}

/// Runs the gap test on all four sides, stopping at the first failure.
pub fn gap_check<'a, C: PieceCatalog + ?Sized>(
    cat: &C,
    cand: impl Into<CandidateView<'a>>,
    mode: GapMode,
) -> GapVerdict {
    let view = cand.into();
    let fillers = Fillers::new(cat, &view);
    let mut sides = Vec::with_capacity(4);
    for side in Side::ALL {
        let g = side_gap_with(cat, &view, side, mode, &fillers, true);
        if !g.passes() {
            return GapVerdict::Fail(g);
        }
        sides.push(g);
    }
    GapVerdict::Pass(sides)
}

/// The gap test for one side, with a witness when it passes.
pub fn side_gap<'a, C: PieceCatalog + ?Sized>(
    cat: &C,
    cand: impl Into<CandidateView<'a>>,
    side: Side,
    mode: GapMode,
) -> SideGap {
    let view = cand.into();
    let fillers = Fillers::new(cat, &view);
    side_gap_with(cat, &view, side, mode, &fillers, true)
}

/// Pass/fail only; no witnesses are built.
pub fn gap_passes<C: PieceCatalog + ?Sized>(
    cat: &C,
    view: &CandidateView<'_>,
    mode: GapMode,
) -> bool {
    let fillers = Fillers::new(cat, view);
    Side::ALL
        .iter()
        .all(|&side| side_gap_with(cat, view, side, mode, &fillers, false).passes())
}

/// Per unused class: its extents along each axis.
struct Fillers {
    /// `[along width, along height]` values per class, over the entries present.
    mixed: [Vec<Vec<u32>>; 2],
    short: Vec<u32>,
    long: Vec<u32>,
}

impl Fillers {
    fn new<C: PieceCatalog + ?Sized>(cat: &C, view: &CandidateView<'_>) -> Self {
        let pieces = cat.pieces();
        let mut used = alloc::vec![false; cat.class_count()];
        for side in Side::ALL {
            for &i in view.side(side) {
                used[pieces[i].class] = true;
            }
        }
        let mut along_w: Vec<Vec<u32>> = alloc::vec![Vec::new(); cat.class_count()];
        let mut along_h: Vec<Vec<u32>> = alloc::vec![Vec::new(); cat.class_count()];
        let mut short = alloc::vec![0u32; cat.class_count()];
        let mut long = alloc::vec![0u32; cat.class_count()];
        for p in pieces.iter().filter(|p| !used[p.class]) {
            if !along_w[p.class].contains(&p.width) {
                along_w[p.class].push(p.width);
            }
            if !along_h[p.class].contains(&p.height) {
                along_h[p.class].push(p.height);
            }
            short[p.class] = p.short_side();
            long[p.class] = p.long_side();
        }
        let keep = |v: &Vec<Vec<u32>>| {
            v.iter()
                .filter(|g| !g.is_empty())
                .cloned()
                .collect::<Vec<_>>()
        };
        let present: Vec<usize> = (0..cat.class_count())
            .filter(|&c| !along_w[c].is_empty())
            .collect();
        Fillers {
            mixed: [keep(&along_w), keep(&along_h)],
            short: present.iter().map(|&c| short[c]).collect(),
            long: present.iter().map(|&c| long[c]).collect(),
        }
    }

    fn classes(&self) -> usize {
        self.short.len()
    }

    /// Fillers for a gap running along `side`'s axis.
    fn fill(
        &self,
        side: Side,
        gap: u32,
        mode: GapMode,
        want_witness: bool,
    ) -> Option<Vec<(usize, u32)>> {
        let axis = match side {
            Side::Bottom | Side::Top => 0,
            Side::Left | Side::Right => 1,
        };
        let along = &self.mixed[axis];
        let mut attempts: Vec<Vec<&[u32]>> = Vec::new();
        match mode {
            GapMode::Mixed => attempts.push(along.iter().map(|g| &g[..]).collect()),
            GapMode::Strict => {
                // A class contributes only in an orientation that fits the board.
                for sides in [&self.short, &self.long] {
                    attempts.push(
                        along
                            .iter()
                            .zip(sides.iter())
                            .map(|(g, v)| {
                                if g.contains(v) {
                                    core::slice::from_ref(v)
                                } else {
                                    &[][..]
                                }
                            })
                            .collect(),
                    );
                }
            }
        }
        for groups in attempts {
            debug_assert_eq!(groups.len(), self.classes());
            if want_witness {
                if let Some(w) = sums::witness(&groups, gap) {
                    return Some(w);
                }
            } else if sums::reachable(&groups, gap) {
                return Some(Vec::new());
            }
        }
        None
    }
}

/// Pieces that may rest directly on the corner piece `corner` from the
/// adjacent side `adjacent`.
fn resting(view: &CandidateView<'_>, adjacent: Side, corner: usize) -> Vec<usize> {
    let members = view.side(adjacent);
    match members.len() {
        0 | 1 => Vec::new(),
        2 => members.iter().copied().filter(|&i| i != corner).collect(),
        _ => {
            let (a, b) = view.corners.ends(adjacent);
            members
                .iter()
                .copied()
                .filter(|&i| i != a && i != b)
                .collect()
        }
    }
}

fn adjacent_sides(side: Side) -> (Side, Side) {
    match side {
        Side::Bottom | Side::Top => (Side::Left, Side::Right),
        Side::Left | Side::Right => (Side::Bottom, Side::Top),
    }
}

/// Admissible gap lengths for `side`, or `None` when the shallowest piece
/// reaches the opposite edge (nothing to fill).
pub(crate) fn gap_extents<C: PieceCatalog + ?Sized>(
    cat: &C,
    view: &CandidateView<'_>,
    side: Side,
) -> (usize, Option<Vec<i64>>) {
    let pieces = cat.pieces();
    let axis = side.axis();
    let (bw, bh) = cat.board();
    let depth_limit = match side {
        Side::Bottom | Side::Top => bh,
        Side::Left | Side::Right => bw,
    };
    let members = view.side(side);
    let lowest = *members
        .iter()
        .min_by_key(|&&i| (axis.depth(&pieces[i]), i))
        .expect("side subsets are non-empty");
    if axis.depth(&pieces[lowest]) >= depth_limit {
        return (lowest, None);
    }
    let span = axis.span(&pieces[lowest]) as i64;
    let (start, end) = view.corners.ends(side);
    let (adj_start, adj_end) = adjacent_sides(side);
    let along = |i: usize| axis.span(&pieces[i]) as i64;
    let mut extents = Vec::new();
    match (lowest == start, lowest == end) {
        (false, false) => extents.push(span),
        (true, false) => extents.extend(
            resting(view, adj_start, start)
                .into_iter()
                .map(|i| span - along(i)),
        ),
        (false, true) => extents.extend(
            resting(view, adj_end, end)
                .into_iter()
                .map(|i| span - along(i)),
        ),
        (true, true) => {
            for a in resting(view, adj_start, start) {
                for b in resting(view, adj_end, end) {
                    extents.push(if a == b {
                        span - along(a)
                    } else {
                        span - along(a) - along(b)
                    });
                }
            }
        }
    }
    extents.sort_unstable();
    extents.dedup();
    (lowest, Some(extents))
}

fn side_gap_with<C: PieceCatalog + ?Sized>(
    cat: &C,
    view: &CandidateView<'_>,
    side: Side,
    mode: GapMode,
    fillers: &Fillers,
    want_witness: bool,
) -> SideGap {
    let (lowest, extents) = gap_extents(cat, view, side);
    let Some(extents) = extents else {
        return SideGap {
            side,
            lowest,
            extents: Vec::new(),
            filled: Some((0, Vec::new())),
        };
    };
    let mut filled = None;
    for &g in &extents {
        if g < 0 {
            continue;
        }
        if g == 0 {
            filled = Some((0, Vec::new()));
            break;
        }
        if let Some(w) = fillers.fill(side, g as u32, mode, want_witness) {
            filled = Some((g as u32, w));
            break;
        }
    }
    // Witness group indices refer to the list of unused classes; map them back.
    if let Some((_, w)) = filled.as_mut() {
        if !w.is_empty() {
            let unused = unused_classes(cat, view);
            for (group, _) in w.iter_mut() {
                *group = unused[*group];
            }
        }
    }
    SideGap {
        side,
        lowest,
        extents,
        filled,
    }
}

/// Classes not used by the candidate, ascending.
pub fn unused_classes<C: PieceCatalog + ?Sized>(cat: &C, view: &CandidateView<'_>) -> Vec<usize> {
    let pieces = cat.pieces();
    let mut used = alloc::vec![false; cat.class_count()];
    for side in Side::ALL {
        for &i in view.side(side) {
            used[pieces[i].class] = true;
        }
    }
    let mut present = alloc::vec![false; cat.class_count()];
    for p in pieces {
        present[p.class] = true;
    }
    (0..cat.class_count())
        .filter(|&c| present[c] && !used[c])
        .collect()
}
