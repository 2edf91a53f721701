//! Perimeter candidates: four side subsets linked through shared corner
//! pieces into a left, bottom, right, top cycle.

use alloc::vec::Vec;
use core::ops::ControlFlow;

use thiserror::Error;

use crate::classes::ClassBits;
use crate::control::Budget;
use crate::pieces::PieceCatalog;

use super::side::{side_subsets_bounded, Axis, SideSubset};
use super::Interrupted;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Side {
    Bottom,
    Right,
    Top,
    Left,
}

impl Side {
    pub const ALL: [Side; 4] = [Side::Bottom, Side::Right, Side::Top, Side::Left];

    /// Axis along which the side's pieces are laid out.
    pub fn axis(self) -> Axis {
        match self {
            Side::Bottom | Side::Top => Axis::Horizontal,
            Side::Left | Side::Right => Axis::Vertical,
        }
    }
}

/// Piece indices sitting in the four board corners.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Corners {
    pub bottom_left: usize,
    pub bottom_right: usize,
    pub top_right: usize,
    pub top_left: usize,
}

impl Corners {
    /// The corners at the (start, end) of a side. Horizontal sides run left to
    /// right, vertical sides bottom to top.
    pub fn ends(&self, side: Side) -> (usize, usize) {
        match side {
            Side::Bottom => (self.bottom_left, self.bottom_right),
            Side::Top => (self.top_left, self.top_right),
            Side::Left => (self.bottom_left, self.top_left),
            Side::Right => (self.bottom_right, self.top_right),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PerimeterCandidate {
    pub bottom: SideSubset,
    pub top: SideSubset,
    pub left: SideSubset,
    pub right: SideSubset,
    pub corners: Corners,
}

impl PerimeterCandidate {
    pub fn side(&self, side: Side) -> &SideSubset {
        match side {
            Side::Bottom => &self.bottom,
            Side::Top => &self.top,
            Side::Left => &self.left,
            Side::Right => &self.right,
        }
    }

    /// Distinct classes used, ascending.
    pub fn classes<C: PieceCatalog + ?Sized>(&self, cat: &C) -> Vec<usize> {
        let mut out: Vec<usize> = Side::ALL
            .iter()
            .flat_map(|&s| self.side(s).members.iter())
            .map(|&i| cat.pieces()[i].class)
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// The piece indices of `side` that are not corners of that side.
    pub fn interior(&self, side: Side) -> impl Iterator<Item = usize> + '_ {
        let (a, b) = self.corners.ends(side);
        self.side(side)
            .members
            .iter()
            .copied()
            .filter(move |&i| i != a && i != b)
    }
}

/// Borrowed form of a candidate: the member lists of the four sides.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CandidateView<'a> {
    pub bottom: &'a [usize],
    pub right: &'a [usize],
    pub top: &'a [usize],
    pub left: &'a [usize],
    pub corners: Corners,
}

impl<'a> CandidateView<'a> {
    pub fn side(&self, side: Side) -> &'a [usize] {
        match side {
            Side::Bottom => self.bottom,
            Side::Right => self.right,
            Side::Top => self.top,
            Side::Left => self.left,
        }
    }
}

impl<'a> From<&'a PerimeterCandidate> for CandidateView<'a> {
    fn from(c: &'a PerimeterCandidate) -> Self {
        CandidateView {
            bottom: &c.bottom.members,
            right: &c.right.members,
            top: &c.top.members,
            left: &c.left.members,
            corners: c.corners,
        }
    }
}

/// A neighbouring subset of the other axis and the one piece both contain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Neighbor {
    pub subset: usize,
    pub shared: usize,
}

/// Vertical/horizontal subsets sharing exactly one piece (and no other class).
#[derive(Debug, Clone, Default)]
pub struct NeighborTable {
    /// Per vertical subset: horizontal neighbours, ascending by subset index.
    pub by_vertical: Vec<Vec<Neighbor>>,
    /// Per horizontal subset: vertical neighbours, ascending by subset index.
    pub by_horizontal: Vec<Vec<Neighbor>>,
}

impl NeighborTable {
    pub fn shared(&self, vertical: usize, horizontal: usize) -> Option<usize> {
        let list = &self.by_vertical[vertical];
        list.binary_search_by_key(&horizontal, |n| n.subset)
            .ok()
            .map(|i| list[i].shared)
    }
}

fn class_sets<C: PieceCatalog + ?Sized, S: ClassBits>(cat: &C, subsets: &[SideSubset]) -> Vec<S> {
    subsets
        .iter()
        .map(|s| {
            let mut set = S::empty(cat.class_count());
            for &i in &s.members {
                set.insert(cat.pieces()[i].class);
            }
            set
        })
        .collect()
}

pub fn neighbor_table<C: PieceCatalog + ?Sized>(
    cat: &C,
    vertical: &[SideSubset],
    horizontal: &[SideSubset],
) -> NeighborTable {
    if cat.class_count() <= 64 {
        build_table::<C, u64>(
            cat,
            vertical,
            horizontal,
            &class_sets(cat, vertical),
            &class_sets(cat, horizontal),
        )
    } else {
        build_table::<C, crate::classes::WideClassSet>(
            cat,
            vertical,
            horizontal,
            &class_sets(cat, vertical),
            &class_sets(cat, horizontal),
        )
    }
}

fn build_table<C: PieceCatalog + ?Sized, S: ClassBits>(
    cat: &C,
    vertical: &[SideSubset],
    horizontal: &[SideSubset],
    v_cls: &[S],
    h_cls: &[S],
) -> NeighborTable {
    let mut containing: Vec<Vec<usize>> = alloc::vec![Vec::new(); cat.pieces().len()];
    for (hi, h) in horizontal.iter().enumerate() {
        for &p in &h.members {
            containing[p].push(hi);
        }
    }
    let mut table = NeighborTable {
        by_vertical: alloc::vec![Vec::new(); vertical.len()],
        by_horizontal: alloc::vec![Vec::new(); horizontal.len()],
    };
    for (vi, v) in vertical.iter().enumerate() {
        for &p in &v.members {
            for &hi in &containing[p] {
                if v_cls[vi].intersection_len(&h_cls[hi]) == 1 {
                    table.by_vertical[vi].push(Neighbor {
                        subset: hi,
                        shared: p,
                    });
                    table.by_horizontal[hi].push(Neighbor {
                        subset: vi,
                        shared: p,
                    });
                }
            }
        }
        table.by_vertical[vi].sort_unstable_by_key(|n| n.subset);
    }
    // by_horizontal is filled in ascending vertical order already.
    table
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PerimeterOptions {
    /// Admit one-piece sides (a full-span piece covering both corners).
    pub singletons: bool,
    /// Emit one candidate per orbit under the board's horizontal and vertical
    /// reflections.
    pub canonical_only: bool,
}

impl Default for PerimeterOptions {
    fn default() -> Self {
        PerimeterOptions {
            singletons: true,
            canonical_only: false,
        }
    }
}

/// A candidate by subset indices into a [`PerimeterSearch`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CycleRef {
    pub left: usize,
    pub bottom: usize,
    pub right: usize,
    pub top: usize,
    pub corners: Corners,
    /// Number of distinct classes used.
    pub classes: u32,
}

/// Side subsets of both axes with their neighbour table, ready to enumerate
/// 4-cycles.
#[derive(Debug, Clone)]
pub struct PerimeterSearch<S: ClassBits> {
    pub vertical: Vec<SideSubset>,
    pub horizontal: Vec<SideSubset>,
    pub table: NeighborTable,
    v_cls: Vec<S>,
    h_cls: Vec<S>,
    piece_classes: Vec<usize>,
    dims: Vec<(u32, u32)>,
    board: (u32, u32),
    class_count: usize,
    max_classes: u32,
    options: PerimeterOptions,
}

impl<S: ClassBits> PerimeterSearch<S> {
    pub fn build<C: PieceCatalog + ?Sized>(
        cat: &C,
        options: PerimeterOptions,
        budget: &mut dyn Budget,
    ) -> Result<Self, Interrupted> {
        let min_size = if options.singletons { 1 } else { 2 };
        let r = cat.piece_count() as usize;
        let horizontal = side_subsets_bounded(cat, Axis::Horizontal, min_size, r, budget)?;
        let vertical = side_subsets_bounded(cat, Axis::Vertical, min_size, r, budget)?;
        let v_cls = class_sets(cat, &vertical);
        let h_cls = class_sets(cat, &horizontal);
        let table = build_table(cat, &vertical, &horizontal, &v_cls, &h_cls);
        Ok(PerimeterSearch {
            vertical,
            horizontal,
            table,
            v_cls,
            h_cls,
            piece_classes: cat.pieces().iter().map(|p| p.class).collect(),
            dims: cat.pieces().iter().map(|p| (p.width, p.height)).collect(),
            board: cat.board(),
            class_count: cat.class_count(),
            max_classes: cat.piece_count(),
            options,
        })
    }

    /// Visits every valid cycle; the visitor may break early.
    pub fn for_each(
        &self,
        budget: &mut dyn Budget,
        mut visit: impl FnMut(CycleRef) -> ControlFlow<()>,
    ) -> Result<(), Interrupted> {
        let cls = &self.piece_classes;
        let r = self.max_classes;
        let mut steps = 0u32;
        for l in 0..self.vertical.len() {
            let l_single = self.vertical[l].len() == 1;
            let l_cls = &self.v_cls[l];
            let around_l = &self.table.by_vertical[l];
            for nb in around_l {
                let b = nb.subset;
                let bl = nb.shared;
                let b_single = self.horizontal[b].len() == 1;
                let lb = l_cls.union(&self.h_cls[b]);
                if lb.len() > r {
                    continue;
                }
                for nt in around_l {
                    let t = nt.subset;
                    let tl = nt.shared;
                    if t == b || (!l_single && tl == bl) {
                        continue;
                    }
                    let t_single = self.horizontal[t].len() == 1;
                    let lbt = lb.union(&self.h_cls[t]);
                    if lbt.len() > r {
                        continue;
                    }
                    let bt_shared = self.h_cls[b].intersection_len(&self.h_cls[t]);
                    if bt_shared > l_single as u32 + 1 {
                        continue;
                    }
                    for nr in &self.table.by_horizontal[b] {
                        steps += 1;
                        if steps.is_multiple_of(4096) && budget.exhausted() {
                            return Err(Interrupted);
                        }
                        let rr = nr.subset;
                        let br = nr.shared;
                        if b_single != (br == bl) {
                            continue;
                        }
                        let Some(tr) = self.table.shared(rr, t) else {
                            continue;
                        };
                        let r_single = self.vertical[rr].len() == 1;
                        if (t_single != (tr == tl)) || (!r_single && tr == br) {
                            continue;
                        }
                        let r_cls = &self.v_cls[rr];
                        // Opposite sides may only share a piece that spans the
                        // side between them.
                        let mut lr_expected = S::empty(self.class_count);
                        if b_single {
                            lr_expected.insert(cls[bl]);
                        }
                        if t_single {
                            lr_expected.insert(cls[tl]);
                        }
                        if l_cls.intersection(r_cls) != lr_expected {
                            continue;
                        }
                        let mut bt_expected = S::empty(self.class_count);
                        if l_single {
                            bt_expected.insert(cls[bl]);
                        }
                        if r_single {
                            bt_expected.insert(cls[br]);
                        }
                        if bt_shared != bt_expected.len()
                            || self.h_cls[b].intersection(&self.h_cls[t]) != bt_expected
                        {
                            continue;
                        }
                        let all = lbt.union(r_cls);
                        if all.len() > r {
                            continue;
                        }
                        if self.options.canonical_only && !is_canonical(l, b, rr, t) {
                            continue;
                        }
                        let corners = Corners {
                            bottom_left: bl,
                            bottom_right: br,
                            top_right: tr,
                            top_left: tl,
                        };
                        let view = CandidateView {
                            bottom: &self.horizontal[b].members,
                            right: &self.vertical[rr].members,
                            top: &self.horizontal[t].members,
                            left: &self.vertical[l].members,
                            corners,
                        };
                        if !depths_fit(&self.dims, self.board, &view) {
                            continue;
                        }
                        let cycle = CycleRef {
                            left: l,
                            bottom: b,
                            right: rr,
                            top: t,
                            corners,
                            classes: all.len(),
                        };
                        if visit(cycle).is_break() {
                            return Ok(());
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn materialize(&self, c: &CycleRef) -> PerimeterCandidate {
        PerimeterCandidate {
            bottom: self.horizontal[c.bottom].clone(),
            top: self.horizontal[c.top].clone(),
            left: self.vertical[c.left].clone(),
            right: self.vertical[c.right].clone(),
            corners: c.corners,
        }
    }

    pub fn view(&self, c: &CycleRef) -> CandidateView<'_> {
        CandidateView {
            bottom: &self.horizontal[c.bottom].members,
            right: &self.vertical[c.right].members,
            top: &self.horizontal[c.top].members,
            left: &self.vertical[c.left].members,
            corners: c.corners,
        }
    }

    pub fn class_set(&self, c: &CycleRef) -> S {
        let mut s = self.v_cls[c.left].union(&self.v_cls[c.right]);
        s.union_with(&self.h_cls[c.bottom]);
        s.union_with(&self.h_cls[c.top]);
        s
    }
}

/// Every column's top cell lies in some piece of the top side, so a bottom
/// piece that is not itself on the top side can reach at most the board
/// height minus the shallowest top piece. The same holds for each pair of
/// opposite sides.
fn depths_fit(dims: &[(u32, u32)], board: (u32, u32), view: &CandidateView<'_>) -> bool {
    let pairs = [
        (Side::Bottom, Side::Top),
        (Side::Top, Side::Bottom),
        (Side::Left, Side::Right),
        (Side::Right, Side::Left),
    ];
    pairs.iter().all(|&(side, opposite)| {
        let axis = side.axis();
        let depth = |i: usize| {
            let (w, h) = dims[i];
            if axis == Axis::Horizontal {
                h
            } else {
                w
            }
        };
        let limit = if axis == Axis::Horizontal {
            board.1
        } else {
            board.0
        };
        let far = view.side(opposite);
        let shallowest = far.iter().map(|&i| depth(i)).min().unwrap_or(0);
        view.side(side)
            .iter()
            .all(|&i| far.contains(&i) || depth(i) + shallowest <= limit)
    })
}

/// Smallest of the tuple and its three reflections.
fn is_canonical(l: usize, b: usize, r: usize, t: usize) -> bool {
    let me = (l, b, r, t);
    me <= (r, b, l, t) && me <= (l, t, r, b) && me <= (r, t, l, b)
}

/// Every valid perimeter candidate of `cat`, one per oriented cycle.
pub fn perimeter_candidates<C: PieceCatalog + ?Sized>(cat: &C) -> Vec<PerimeterCandidate> {
    perimeter_candidates_with(cat, PerimeterOptions::default())
}

pub fn perimeter_candidates_with<C: PieceCatalog + ?Sized>(
    cat: &C,
    options: PerimeterOptions,
) -> Vec<PerimeterCandidate> {
    let mut budget = crate::control::Unlimited;
    if cat.class_count() <= 64 {
        collect::<C, u64>(cat, options, &mut budget)
    } else {
        collect::<C, crate::classes::WideClassSet>(cat, options, &mut budget)
    }
}

fn collect<C: PieceCatalog + ?Sized, S: ClassBits>(
    cat: &C,
    options: PerimeterOptions,
    budget: &mut dyn Budget,
) -> Vec<PerimeterCandidate> {
    let search = PerimeterSearch::<S>::build(cat, options, budget).expect("unlimited budget");
    let mut out = Vec::new();
    search
        .for_each(budget, |c| {
            out.push(search.materialize(&c));
            ControlFlow::Continue(())
        })
        .expect("unlimited budget");
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CandidateError {
    #[error("piece index {0} out of range")]
    UnknownPiece(usize),
    #[error("{0:?} side has the wrong axis")]
    WrongAxis(Side),
    #[error("{side:?} side spans {got}, board needs {want}")]
    WrongSpan { side: Side, got: u64, want: u32 },
    #[error("{0:?} side repeats a congruence class")]
    RepeatedClass(Side),
    #[error("corner piece {piece} missing from the {side:?} side")]
    MissingCorner { side: Side, piece: usize },
    #[error("{0:?} side has at least two pieces but one piece on both ends")]
    CollapsedSide(Side),
    #[error("class {0} appears on sides where it is not a shared corner")]
    DuplicateClass(usize),
    #[error("a {0:?} side piece reaches into the opposite side")]
    TooDeep(Side),
    #[error("{used} classes used, at most {allowed} allowed")]
    TooManyClasses { used: usize, allowed: u32 },
}

/// Checks every structural invariant of a perimeter candidate from scratch.
pub fn validate_candidate<C: PieceCatalog + ?Sized>(
    cat: &C,
    cand: &PerimeterCandidate,
) -> Result<(), CandidateError> {
    let pieces = cat.pieces();
    let (w, h) = cat.board();
    for side in Side::ALL {
        let s = cand.side(side);
        if s.axis != side.axis() {
            return Err(CandidateError::WrongAxis(side));
        }
        let mut sum = 0u64;
        let mut seen = Vec::new();
        for &i in &s.members {
            let p = pieces.get(i).ok_or(CandidateError::UnknownPiece(i))?;
            sum += side.axis().span(p) as u64;
            if seen.contains(&p.class) {
                return Err(CandidateError::RepeatedClass(side));
            }
            seen.push(p.class);
        }
        let want = if side.axis() == Axis::Horizontal {
            w
        } else {
            h
        };
        if sum != want as u64 || s.span != want {
            return Err(CandidateError::WrongSpan {
                side,
                got: sum,
                want,
            });
        }
        let (a, b) = cand.corners.ends(side);
        for piece in [a, b] {
            if !s.contains(piece) {
                return Err(CandidateError::MissingCorner { side, piece });
            }
        }
        if s.len() >= 2 && a == b {
            return Err(CandidateError::CollapsedSide(side));
        }
    }
    // Each class must appear exactly on the sides its corner roles dictate,
    // always as the same piece.
    let corners = [
        (cand.corners.bottom_left, [Side::Bottom, Side::Left]),
        (cand.corners.bottom_right, [Side::Bottom, Side::Right]),
        (cand.corners.top_right, [Side::Top, Side::Right]),
        (cand.corners.top_left, [Side::Top, Side::Left]),
    ];
    let classes = cand.classes(cat);
    for &class in &classes {
        let mut expected: Vec<Side> = corners
            .iter()
            .filter(|(p, _)| pieces[*p].class == class)
            .flat_map(|(_, sides)| sides.iter().copied())
            .collect();
        expected.sort();
        expected.dedup();
        let mut found = Vec::new();
        for side in Side::ALL {
            for &i in &cand.side(side).members {
                if pieces[i].class == class {
                    if !expected.is_empty() && !corners.iter().any(|(p, _)| *p == i) {
                        return Err(CandidateError::DuplicateClass(class));
                    }
                    found.push(side);
                }
            }
        }
        found.sort();
        if expected.is_empty() {
            if found.len() != 1 {
                return Err(CandidateError::DuplicateClass(class));
            }
        } else if found != expected {
            return Err(CandidateError::DuplicateClass(class));
        }
    }
    let view = CandidateView::from(cand);
    for (side, opposite) in [(Side::Bottom, Side::Top), (Side::Left, Side::Right)] {
        let axis = side.axis();
        let limit = if axis == Axis::Horizontal { h } else { w };
        for (near, far) in [(side, opposite), (opposite, side)] {
            let shallowest = view
                .side(far)
                .iter()
                .map(|&i| axis.depth(&pieces[i]))
                .min()
                .unwrap_or(0);
            for &i in view.side(near) {
                if !view.side(far).contains(&i) && axis.depth(&pieces[i]) + shallowest > limit {
                    return Err(CandidateError::TooDeep(near));
                }
            }
        }
    }
    if classes.len() > cat.piece_count() as usize {
        return Err(CandidateError::TooManyClasses {
            used: classes.len(),
            allowed: cat.piece_count(),
        });
    }
    Ok(())
}
