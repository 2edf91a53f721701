//! Problem instances and the divisor-derived candidate pieces.
//!
//! A case fixes a `W x H` board and a piece count `r`; every piece then has
//! area `W*H / r`. The candidate list contains every integer rectangle of that
//! area that fits on the board, in both orientations. Entry `i` and entry
//! `k-1-i` are the two orientations of one congruence class.

use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::arith::divisors;

/// Largest supported board side. Keeps every area product well inside `u64`.
pub const MAX_SIDE: u32 = 100_000;

/// No perfect partition can use fewer pieces than this.
pub const MIN_PMP_PIECES: u32 = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CaseSpec {
    pub width: u32,
    pub height: u32,
    /// Number of pieces `r`.
    pub pieces: u32,
    /// Common piece area `W*H / r`.
    pub area: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CaseError {
    #[error("board sides must lie in 1..={MAX_SIDE}, got {width}x{height}")]
    BadBoard { width: u32, height: u32 },
    #[error("piece count must be positive")]
    ZeroPieces,
    #[error("{pieces} does not divide the board area {area}")]
    NotDivisor { pieces: u32, area: u64 },
}

impl CaseSpec {
    pub fn new(width: u32, height: u32, pieces: u32) -> Result<Self, CaseError> {
        check_board(width, height)?;
        if pieces == 0 {
            return Err(CaseError::ZeroPieces);
        }
        let board = width as u64 * height as u64;
        if !board.is_multiple_of(pieces as u64) {
            return Err(CaseError::NotDivisor {
                pieces,
                area: board,
            });
        }
        Ok(CaseSpec {
            width,
            height,
            pieces,
            area: board / pieces as u64,
        })
    }

    pub fn board_area(&self) -> u64 {
        self.width as u64 * self.height as u64
    }

    pub fn is_square(&self) -> bool {
        self.width == self.height
    }

    pub fn transposed(&self) -> CaseSpec {
        CaseSpec {
            width: self.height,
            height: self.width,
            ..*self
        }
    }
}

impl fmt::Display for CaseSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{} r={}", self.width, self.height, self.pieces)
    }
}

pub(crate) fn check_board(width: u32, height: u32) -> Result<(), CaseError> {
    if width == 0 || height == 0 || width > MAX_SIDE || height > MAX_SIDE {
        return Err(CaseError::BadBoard { width, height });
    }
    Ok(())
}

/// One orientation of a candidate rectangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Piece {
    pub width: u32,
    pub height: u32,
    /// 0-based position in the catalog.
    pub index: usize,
    /// Congruence class; the two orientations of a rectangle share it.
    pub class: usize,
}

impl Piece {
    pub fn area(&self) -> u64 {
        self.width as u64 * self.height as u64
    }

    pub fn short_side(&self) -> u32 {
        self.width.min(self.height)
    }

    pub fn long_side(&self) -> u32 {
        self.width.max(self.height)
    }
}

impl fmt::Display for Piece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.width, self.height)
    }
}

/// Anything the filter cascade can run on: a board, a target piece count and
/// a list of orientation entries grouped into congruence classes.
pub trait PieceCatalog {
    fn board(&self) -> (u32, u32);
    /// Number of pieces a full partition must use.
    fn piece_count(&self) -> u32;
    fn pieces(&self) -> &[Piece];
    fn class_count(&self) -> usize;
}

/// The pieces of a perfect-partition case, sorted by ascending width.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PieceSet {
    case: CaseSpec,
    pieces: Vec<Piece>,
    classes: usize,
}

/// Returned when a case cannot supply `r` pairwise non-congruent pieces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("only {classes} congruence classes fit the board, {required} pieces required")]
pub struct Infeasible {
    pub classes: usize,
    pub required: u32,
}

impl PieceSet {
    /// Builds the candidate list for `case`, or reports that fewer than `r`
    /// congruence classes exist.
    pub fn new(case: CaseSpec) -> Result<Self, Infeasible> {
        let pieces = candidate_pieces(&case);
        let classes = pieces.iter().map(|p| p.class + 1).max().unwrap_or(0);
        if classes < case.pieces as usize {
            return Err(Infeasible {
                classes,
                required: case.pieces,
            });
        }
        Ok(PieceSet {
            case,
            pieces,
            classes,
        })
    }

    pub fn case(&self) -> &CaseSpec {
        &self.case
    }

    pub fn len(&self) -> usize {
        self.pieces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    /// Index of the other orientation of piece `i`, if it fits the board.
    /// Square pieces are their own rotation.
    pub fn rotation_of(&self, i: usize) -> Option<usize> {
        let p = self.pieces[i];
        self.pieces
            .iter()
            .position(|q| q.width == p.height && q.height == p.width)
    }

    /// The narrowest entry of each class, indexed by class.
    pub fn representatives(&self) -> Vec<Piece> {
        let mut out: Vec<Option<Piece>> = alloc::vec![None; self.classes];
        for p in &self.pieces {
            out[p.class].get_or_insert(*p);
        }
        out.into_iter().flatten().collect()
    }
}

impl PieceCatalog for PieceSet {
    fn board(&self) -> (u32, u32) {
        (self.case.width, self.case.height)
    }

    fn piece_count(&self) -> u32 {
        self.case.pieces
    }

    fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    fn class_count(&self) -> usize {
        self.classes
    }
}

fn candidate_pieces(case: &CaseSpec) -> Vec<Piece> {
    let alpha = case.area;
    let widths: Vec<u64> = divisors(alpha)
        .into_iter()
        .filter(|&d| d <= case.width as u64 && alpha / d <= case.height as u64)
        .collect();
    let mut shorts: Vec<u64> = widths.iter().map(|&d| d.min(alpha / d)).collect();
    shorts.sort_unstable();
    shorts.dedup();
    widths
        .iter()
        .enumerate()
        .map(|(index, &d)| Piece {
            width: d as u32,
            height: (alpha / d) as u32,
            index,
            class: shorts
                .binary_search(&d.min(alpha / d))
                .expect("short side listed"),
        })
        .collect()
}

/// Convenience wrapper over [`PieceSet::new`].
pub fn piece_set(case: CaseSpec) -> Result<PieceSet, Infeasible> {
    PieceSet::new(case)
}

/// Every `r >= 7` dividing `W*H` whose piece set is feasible, ascending.
pub fn enumerate_cases(width: u32, height: u32) -> Vec<CaseSpec> {
    enumerate_cases_from(width, height, MIN_PMP_PIECES)
}

/// Like [`enumerate_cases`] with an explicit lower bound on `r`.
pub fn enumerate_cases_from(width: u32, height: u32, min_pieces: u32) -> Vec<CaseSpec> {
    if check_board(width, height).is_err() {
        return Vec::new();
    }
    let board = width as u64 * height as u64;
    divisors(board)
        .into_iter()
        .filter(|&r| r >= min_pieces as u64 && r <= u32::MAX as u64)
        .filter_map(|r| CaseSpec::new(width, height, r as u32).ok())
        .filter(|case| PieceSet::new(*case).is_ok())
        .collect()
}

/// An arbitrary list of rectangles with explicit classes, for running the
/// filters on instances that are not equal-area piece sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeCatalog {
    width: u32,
    height: u32,
    piece_count: u32,
    pieces: Vec<Piece>,
    classes: usize,
}

impl FreeCatalog {
    /// Every rectangle contributes its fitting orientations, sharing one class
    /// per input rectangle. `piece_count` is the number of rectangles.
    pub fn from_rectangles(width: u32, height: u32, rects: &[(u32, u32)]) -> Self {
        let mut pieces = Vec::new();
        for (class, &(w, h)) in rects.iter().enumerate() {
            for (pw, ph) in [(w, h), (h, w)] {
                if pw <= width
                    && ph <= height
                    && !pieces
                        .iter()
                        .any(|p: &Piece| p.class == class && p.width == pw && p.height == ph)
                {
                    pieces.push(Piece {
                        width: pw,
                        height: ph,
                        index: 0,
                        class,
                    });
                }
            }
        }
        pieces.sort_by_key(|p| (p.width, p.height, p.class));
        for (i, p) in pieces.iter_mut().enumerate() {
            p.index = i;
        }
        FreeCatalog {
            width,
            height,
            piece_count: rects.len() as u32,
            pieces,
            classes: rects.len(),
        }
    }
}

impl PieceCatalog for FreeCatalog {
    fn board(&self) -> (u32, u32) {
        (self.width, self.height)
    }

    fn piece_count(&self) -> u32 {
        self.piece_count
    }

    fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    fn class_count(&self) -> usize {
        self.classes
    }
}
