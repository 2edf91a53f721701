//! Finished tilings and an independent validator for them.

use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::pieces::CaseSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Placement {
    /// Left column, 0-based.
    pub x: u32,
    /// Bottom row, 0-based.
    pub y: u32,
    pub width: u32,
    pub height: u32,
    /// Index of the piece entry in the problem's catalog.
    pub piece: usize,
    pub class: usize,
}

impl Placement {
    pub fn area(&self) -> u64 {
        self.width as u64 * self.height as u64
    }

    pub fn right(&self) -> u32 {
        self.x + self.width
    }

    pub fn top(&self) -> u32 {
        self.y + self.height
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Tiling {
    pub width: u32,
    pub height: u32,
    pub placements: Vec<Placement>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TilingError {
    #[error("placement {0} is empty or leaves the board")]
    OutOfBounds(usize),
    #[error("placements {0} and {1} overlap")]
    Overlap(usize, usize),
    #[error("placements cover {covered} cells of {board}")]
    AreaMismatch { covered: u64, board: u64 },
    #[error("two placements share congruence class {0}")]
    RepeatedClass(usize),
    #[error("placements {0} and {1} are congruent")]
    Congruent(usize, usize),
    #[error("cell ({x}, {y}) covered {count} times")]
    CellCount { x: u32, y: u32, count: u32 },
    #[error("placement {index} has area {area}, expected {expected}")]
    WrongArea {
        index: usize,
        area: u64,
        expected: u64,
    },
    #[error("{got} pieces used, expected {expected}")]
    WrongPieceCount { got: usize, expected: u32 },
    #[error("tiling board {got:?} does not match case {expected:?}")]
    WrongBoard {
        got: (u32, u32),
        expected: (u32, u32),
    },
}

/// Boards up to this many cells also get a per-cell coverage audit.
const CELL_AUDIT_LIMIT: u64 = 1 << 20;

impl Tiling {
    /// Exact cover, pairwise disjointness, distinct classes and distinct
    /// shapes, checked without trusting how the tiling was produced.
    pub fn validate(&self) -> Result<(), TilingError> {
        let board = self.width as u64 * self.height as u64;
        for (i, p) in self.placements.iter().enumerate() {
            if p.width == 0 || p.height == 0 || p.right() > self.width || p.top() > self.height {
                return Err(TilingError::OutOfBounds(i));
            }
        }
        let mut classes: Vec<(usize, usize)> = self
            .placements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.class, i))
            .collect();
        classes.sort_unstable();
        if let Some(w) = classes.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(TilingError::RepeatedClass(w[0].0));
        }
        let mut shapes: Vec<((u32, u32), usize)> = self
            .placements
            .iter()
            .enumerate()
            .map(|(i, p)| ((p.width.min(p.height), p.width.max(p.height)), i))
            .collect();
        shapes.sort_unstable();
        if let Some(w) = shapes.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(TilingError::Congruent(w[0].1, w[1].1));
        }
        self.check_disjoint()?;
        let covered: u64 = self.placements.iter().map(Placement::area).sum();
        if covered != board {
            return Err(TilingError::AreaMismatch { covered, board });
        }
        if board <= CELL_AUDIT_LIMIT {
            self.cell_audit()?;
        }
        Ok(())
    }

    /// [`validate`](Self::validate) plus the perfect-partition conditions:
    /// every piece has area `W*H/r` and exactly `r` pieces are used.
    pub fn validate_pmp(&self, case: &CaseSpec) -> Result<(), TilingError> {
        if (self.width, self.height) != (case.width, case.height) {
            return Err(TilingError::WrongBoard {
                got: (self.width, self.height),
                expected: (case.width, case.height),
            });
        }
        self.validate()?;
        for (index, p) in self.placements.iter().enumerate() {
            if p.area() != case.area {
                return Err(TilingError::WrongArea {
                    index,
                    area: p.area(),
                    expected: case.area,
                });
            }
        }
        if self.placements.len() != case.pieces as usize {
            return Err(TilingError::WrongPieceCount {
                got: self.placements.len(),
                expected: case.pieces,
            });
        }
        Ok(())
    }

    /// Sweep over x: rectangles still open when a new one starts overlap it in
    /// x, so only their y-ranges need comparing.
    fn check_disjoint(&self) -> Result<(), TilingError> {
        let mut order: Vec<usize> = (0..self.placements.len()).collect();
        order.sort_by_key(|&i| (self.placements[i].x, i));
        let mut active: Vec<usize> = Vec::new();
        for &i in &order {
            let p = &self.placements[i];
            active.retain(|&j| self.placements[j].right() > p.x);
            for &j in &active {
                let q = &self.placements[j];
                if q.y < p.top() && p.y < q.top() {
                    return Err(TilingError::Overlap(i.min(j), i.max(j)));
                }
            }
            active.push(i);
        }
        Ok(())
    }

    fn cell_audit(&self) -> Result<(), TilingError> {
        let w = self.width as usize;
        let mut count = vec![0u32; w * self.height as usize];
        for p in &self.placements {
            for y in p.y..p.top() {
                for x in p.x..p.right() {
                    count[y as usize * w + x as usize] += 1;
                }
            }
        }
        if let Some(i) = count.iter().position(|&c| c != 1) {
            return Err(TilingError::CellCount {
                x: (i % w) as u32,
                y: (i / w) as u32,
                count: count[i],
            });
        }
        Ok(())
    }
}
