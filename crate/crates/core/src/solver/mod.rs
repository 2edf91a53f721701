//! Complete backtracking tiler over a skyline.
//!
//! The next piece always goes into the leftmost of the lowest columns, flush
//! with the level run there. Every unused class entry that fits the run and
//! the remaining headroom is tried in ascending width order, so an exhausted
//! search certifies that no tiling exists.
//!
//! In perfect-partition mode the catalog is a [`PieceSet`]; in generic mode it
//! is an arbitrary list of pairwise non-congruent rectangles of any area, which
//! is what the positive-control tests run on.

mod search;
mod skyline;

use alloc::vec::Vec;

use thiserror::Error;

use crate::pieces::{check_board, Piece, PieceCatalog, PieceSet};
use crate::tiling::Tiling;

pub use search::{solve, solve_from, split};
pub use skyline::{PlaceRecord, Skyline, SkylineError, Slot};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Mode {
    /// Equal-area pieces of one case; exactly `r` are used.
    Pmp,
    /// Any non-congruent rectangles; any subset may be used.
    Generic,
}

/// Symmetry pruning rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Symmetry {
    /// Square boards with a perfect-partition catalog get [`Symmetry::Square`],
    /// everything else [`Symmetry::Off`].
    #[default]
    Auto,
    Off,
    /// Diagonal + vertical mirror: the bottom-left piece is upright
    /// (`w <= h`) and the bottom-right piece's width lies strictly between
    /// the bottom-left piece's width and height.
    Square,
    /// Vertical mirror only: the bottom-right piece is at least as wide as the
    /// bottom-left one.
    Mirror,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SearchOptions {
    pub symmetry: Symmetry,
    /// Stop with [`Outcome::Limit`] after this many placements.
    pub node_limit: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProblemError {
    #[error(transparent)]
    Board(#[from] crate::pieces::CaseError),
    #[error("piece {0} has a zero side")]
    EmptyPiece(usize),
    #[error("pieces {0} and {1} are congruent but in different classes")]
    CongruentClasses(usize, usize),
    #[error("square symmetry needs a square board")]
    SymmetryNeedsSquare,
    #[error("square symmetry needs an equal-area, rotation-closed catalog")]
    SymmetryNeedsPerfectSet,
}

/// A board, the entries that may be placed, and search options.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EngineProblem {
    width: u32,
    height: u32,
    /// Sorted by ascending width, then height.
    pieces: Vec<Piece>,
    classes: usize,
    mode: Mode,
    /// `r` in perfect-partition mode.
    piece_count: Option<u32>,
    symmetry: Symmetry,
    node_limit: Option<u64>,
}

impl EngineProblem {
    /// The perfect-partition search for one case.
    pub fn pmp(ps: &PieceSet, options: SearchOptions) -> Result<Self, ProblemError> {
        let case = ps.case();
        Self::build(
            case.width,
            case.height,
            ps.pieces().to_vec(),
            ps.class_count(),
            Mode::Pmp,
            Some(case.pieces),
            options,
        )
    }

    /// Generic mode over `rects`, one class each. With `rotations`, every
    /// rectangle may also be placed turned by 90 degrees.
    pub fn generic(
        width: u32,
        height: u32,
        rects: &[(u32, u32)],
        rotations: bool,
        options: SearchOptions,
    ) -> Result<Self, ProblemError> {
        let mut pieces = Vec::new();
        for (class, &(w, h)) in rects.iter().enumerate() {
            if w == 0 || h == 0 {
                return Err(ProblemError::EmptyPiece(class));
            }
            pieces.push(Piece {
                width: w,
                height: h,
                index: 0,
                class,
            });
            if rotations && w != h {
                pieces.push(Piece {
                    width: h,
                    height: w,
                    index: 0,
                    class,
                });
            }
        }
        Self::build(
            width,
            height,
            pieces,
            rects.len(),
            Mode::Generic,
            None,
            options,
        )
    }

    fn build(
        width: u32,
        height: u32,
        mut pieces: Vec<Piece>,
        classes: usize,
        mode: Mode,
        piece_count: Option<u32>,
        options: SearchOptions,
    ) -> Result<Self, ProblemError> {
        check_board(width, height)?;
        pieces.retain(|p| p.width <= width && p.height <= height);
        pieces.sort_by_key(|p| (p.width, p.height, p.class));
        for (i, p) in pieces.iter_mut().enumerate() {
            p.index = i;
        }
        for (i, a) in pieces.iter().enumerate() {
            for b in &pieces[i + 1..] {
                let same = (a.width, a.height) == (b.width, b.height)
                    || (a.width, a.height) == (b.height, b.width);
                if same && a.class != b.class {
                    return Err(ProblemError::CongruentClasses(a.index, b.index));
                }
            }
        }
        let symmetry = match options.symmetry {
            Symmetry::Auto if mode == Mode::Pmp && width == height => Symmetry::Square,
            Symmetry::Auto => Symmetry::Off,
            other => other,
        };
        let problem = EngineProblem {
            width,
            height,
            pieces,
            classes,
            mode,
            piece_count,
            symmetry,
            node_limit: options.node_limit,
        };
        if symmetry == Symmetry::Square {
            if width != height {
                return Err(ProblemError::SymmetryNeedsSquare);
            }
            if !problem.is_perfect_catalog() {
                return Err(ProblemError::SymmetryNeedsPerfectSet);
            }
        }
        Ok(problem)
    }

    /// Equal areas and every entry's rotation present in the same class.
    fn is_perfect_catalog(&self) -> bool {
        let Some(first) = self.pieces.first() else {
            return true;
        };
        let area = first.area();
        self.pieces.iter().all(|p| {
            p.area() == area
                && self
                    .pieces
                    .iter()
                    .any(|q| q.class == p.class && q.width == p.height && q.height == p.width)
        })
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn classes(&self) -> usize {
        self.classes
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn piece_count(&self) -> Option<u32> {
        self.piece_count
    }

    /// The rule set in force after resolving [`Symmetry::Auto`].
    pub fn symmetry(&self) -> Symmetry {
        self.symmetry
    }

    pub fn node_limit(&self) -> Option<u64> {
        self.node_limit
    }

    pub fn board_area(&self) -> u64 {
        self.width as u64 * self.height as u64
    }

    /// A copy with a different symmetry rule or node limit.
    pub fn with_options(&self, options: SearchOptions) -> Result<Self, ProblemError> {
        Self::build(
            self.width,
            self.height,
            self.pieces.clone(),
            self.classes,
            self.mode,
            self.piece_count,
            options,
        )
    }

    /// Entry indices the bottom-left corner piece may use under the current
    /// rules, in trial order.
    pub fn first_piece_candidates(&self) -> Vec<usize> {
        self.pieces
            .iter()
            .filter(|p| match self.symmetry {
                Symmetry::Square => p.width <= p.height && p.width < self.width,
                _ => true,
            })
            .map(|p| p.index)
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Found(Tiling),
    /// The whole search space was covered without finding a tiling.
    Exhausted,
    /// The node limit or the caller's budget stopped the search.
    Limit,
}

impl Outcome {
    pub fn is_found(&self) -> bool {
        matches!(self, Outcome::Found(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            Outcome::Found(_) => "FOUND",
            Outcome::Exhausted => "EXHAUSTED",
            Outcome::Limit => "LIMIT",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveReport {
    pub outcome: Outcome,
    /// Placements made.
    pub nodes: u64,
    /// Deepest number of simultaneous placements reached.
    pub max_depth: usize,
}
