use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

/// Covered height per board column.
///
/// Pieces are only ever placed at the leftmost lowest column, flush on a flat
/// run, so the vector is the exact upper profile of everything placed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Skyline {
    heights: Vec<u32>,
    limit: u32,
}

/// Leftmost lowest column, the length of the level run starting there, and
/// the run's height.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Slot {
    pub x: u32,
    pub flat: u32,
    pub base: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum SkylineError {
    #[error("board is full")]
    Full,
    #[error("piece does not sit flat inside the board here")]
    Reject,
}

/// Enough to undo one placement.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PlaceRecord {
    pub x: u32,
    pub width: u32,
    pub height: u32,
}

impl Skyline {
    pub fn new(width: u32, height: u32) -> Self {
        Skyline {
            heights: vec![0; width as usize],
            limit: height,
        }
    }

    /// A skyline with given column heights; panics if any exceeds `height`.
    pub fn from_heights(heights: Vec<u32>, height: u32) -> Self {
        assert!(heights.iter().all(|&v| v <= height));
        Skyline {
            heights,
            limit: height,
        }
    }

    pub fn heights(&self) -> &[u32] {
        &self.heights
    }

    pub fn width(&self) -> u32 {
        self.heights.len() as u32
    }

    pub fn limit(&self) -> u32 {
        self.limit
    }

    /// Total covered area.
    pub fn area(&self) -> u64 {
        self.heights.iter().map(|&v| v as u64).sum()
    }

    pub fn lowest_slot(&self) -> Result<Slot, SkylineError> {
        let (x, &base) = self
            .heights
            .iter()
            .enumerate()
            .min_by_key(|&(i, &v)| (v, i))
            .ok_or(SkylineError::Full)?;
        if base >= self.limit {
            return Err(SkylineError::Full);
        }
        let flat = self.heights[x..].iter().take_while(|&&v| v == base).count();
        Ok(Slot {
            x: x as u32,
            flat: flat as u32,
            base,
        })
    }

    /// Raises columns `x..x+width` by `height`. They must currently be level.
    pub fn place(&mut self, x: u32, width: u32, height: u32) -> Result<PlaceRecord, SkylineError> {
        let (x0, x1) = (x as usize, x as usize + width as usize);
        if width == 0 || x1 > self.heights.len() {
            return Err(SkylineError::Reject);
        }
        let base = self.heights[x0];
        if base + height > self.limit || self.heights[x0..x1].iter().any(|&v| v != base) {
            return Err(SkylineError::Reject);
        }
        self.raise(x, width, height);
        Ok(PlaceRecord { x, width, height })
    }

    /// Raises without checks; the caller has validated the span.
    #[inline]
    pub(crate) fn raise(&mut self, x: u32, width: u32, height: u32) {
        for v in &mut self.heights[x as usize..(x + width) as usize] {
            *v += height;
        }
    }

    pub fn unplace(&mut self, record: PlaceRecord) {
        for v in &mut self.heights[record.x as usize..(record.x + record.width) as usize] {
            *v -= record.height;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_board_slot() {
        let s = Skyline::new(3, 5);
        assert_eq!(
            s.lowest_slot(),
            Ok(Slot {
                x: 0,
                flat: 3,
                base: 0
            })
        );
    }

    #[test]
    fn leftmost_minimum_run() {
        let s = Skyline::from_heights(vec![5, 3, 3, 7], 10);
        assert_eq!(
            s.lowest_slot(),
            Ok(Slot {
                x: 1,
                flat: 2,
                base: 3
            })
        );
    }

    #[test]
    fn after_two_bottom_pieces_of_the_360_board() {
        let mut s = Skyline::new(360, 360);
        s.place(0, 240, 45).unwrap();
        s.place(240, 120, 90).unwrap();
        assert_eq!(
            s.lowest_slot(),
            Ok(Slot {
                x: 0,
                flat: 240,
                base: 45
            })
        );
    }

    #[test]
    fn the_84_bottom_edge() {
        let mut s = Skyline::new(84, 84);
        s.place(0, 12, 84).unwrap();
        assert!(s.heights()[..12].iter().all(|&v| v == 84));
        s.place(12, 72, 14).unwrap();
        assert!(s.heights()[12..].iter().all(|&v| v == 14));
        assert_eq!(
            s.lowest_slot(),
            Ok(Slot {
                x: 12,
                flat: 72,
                base: 14
            })
        );
    }

    #[test]
    fn rejects_and_full() {
        let mut s = Skyline::new(4, 4);
        s.place(0, 2, 1).unwrap();
        assert_eq!(s.place(1, 2, 1), Err(SkylineError::Reject));
        assert_eq!(s.place(2, 3, 1), Err(SkylineError::Reject));
        assert_eq!(s.place(2, 2, 5), Err(SkylineError::Reject));
        let mut full = Skyline::new(2, 2);
        full.place(0, 2, 2).unwrap();
        assert_eq!(full.lowest_slot(), Err(SkylineError::Full));
    }

    #[test]
    fn unplace_restores() {
        let mut s = Skyline::from_heights(vec![1, 1, 1, 4], 9);
        let before = s.clone();
        let rec = s.place(0, 3, 2).unwrap();
        assert_eq!(s.area(), before.area() + 6);
        s.unplace(rec);
        assert_eq!(s, before);
    }
}
