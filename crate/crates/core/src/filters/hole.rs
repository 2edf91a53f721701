//! Upper bounds on the hole enclosed by a perimeter, and how many unused
//! classes can still fit inside it.

use crate::pieces::PieceCatalog;

use super::perimeter::{CandidateView, Side};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct HoleReport {
    /// Board width minus the narrowest left and right side pieces.
    pub max_width: i64,
    /// Board height minus the shallowest bottom and top side pieces.
    pub max_height: i64,
    /// Classes used by the perimeter.
    pub used: u32,
    /// Unused classes with an orientation inside the bounds.
    pub fitting: u32,
    /// Pieces still to be placed: `r - used`.
    pub needed: u32,
}

impl HoleReport {
    pub fn passes(&self) -> bool {
        self.fitting >= self.needed
    }
}

pub fn hole_check<'a, C: PieceCatalog + ?Sized>(
    cat: &C,
    cand: impl Into<CandidateView<'a>>,
) -> HoleReport {
    let view = cand.into();
    let pieces = cat.pieces();
    let (w, h) = cat.board();
    let min_of = |side: Side, f: fn(&crate::pieces::Piece) -> u32| {
        view.side(side)
            .iter()
            .map(|&i| f(&pieces[i]))
            .min()
            .unwrap_or(0) as i64
    };
    let max_width = w as i64 - min_of(Side::Left, |p| p.width) - min_of(Side::Right, |p| p.width);
    let max_height =
        h as i64 - min_of(Side::Bottom, |p| p.height) - min_of(Side::Top, |p| p.height);

    let mut used = alloc::vec![false; cat.class_count()];
    for side in Side::ALL {
        for &i in view.side(side) {
            used[pieces[i].class] = true;
        }
    }
    let mut fits = alloc::vec![false; cat.class_count()];
    for p in pieces.iter().filter(|p| !used[p.class]) {
        if p.width as i64 <= max_width && p.height as i64 <= max_height {
            fits[p.class] = true;
        }
    }
    let used_count = used.iter().filter(|&&u| u).count() as u32;
    HoleReport {
        max_width,
        max_height,
        used: used_count,
        fitting: fits.iter().filter(|&&f| f).count() as u32,
        needed: cat.piece_count().saturating_sub(used_count),
    }
}
