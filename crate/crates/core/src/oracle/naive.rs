use alloc::vec;
use alloc::vec::Vec;

use crate::tiling::{Placement, Tiling};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleOutcome {
    Found(Tiling),
    Exhausted,
}

impl OracleOutcome {
    pub fn is_found(&self) -> bool {
        matches!(self, OracleOutcome::Found(_))
    }
}

/// Exact cover of a `width x height` grid by entries `(class, w, h)`, each
/// class at most once. Fills the first empty cell in row-major order (bottom
/// row first) and tries every entry there in input order.
///
/// Meant for boards of at most a few hundred cells.
pub fn naive_tiler(width: u32, height: u32, entries: &[(usize, u32, u32)]) -> OracleOutcome {
    let classes = entries.iter().map(|e| e.0 + 1).max().unwrap_or(0);
    let mut grid = vec![false; width as usize * height as usize];
    let mut used = vec![false; classes];
    let mut placed = Vec::new();
    if fill(width, height, entries, &mut grid, &mut used, &mut placed) {
        OracleOutcome::Found(Tiling {
            width,
            height,
            placements: placed,
        })
    } else {
        OracleOutcome::Exhausted
    }
}

fn fill(
    width: u32,
    height: u32,
    entries: &[(usize, u32, u32)],
    grid: &mut [bool],
    used: &mut [bool],
    placed: &mut Vec<Placement>,
) -> bool {
    let Some(cell) = grid.iter().position(|&c| !c) else {
        return true;
    };
    let x = cell as u32 % width;
    let y = cell as u32 / width;
    for (index, &(class, w, h)) in entries.iter().enumerate() {
        if used[class] || x + w > width || y + h > height {
            continue;
        }
        let cells =
            || (y..y + h).flat_map(move |yy| (x..x + w).map(move |xx| (yy * width + xx) as usize));
        if cells().any(|c| grid[c]) {
            continue;
        }
        cells().for_each(|c| grid[c] = true);
        used[class] = true;
        placed.push(Placement {
            x,
            y,
            width: w,
            height: h,
            piece: index,
            class,
        });
        if fill(width, height, entries, grid, used, placed) {
            return true;
        }
        placed.pop();
        used[class] = false;
        cells().for_each(|c| grid[c] = false);
    }
    false
}
