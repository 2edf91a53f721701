use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::tiling::{Placement, Tiling};

/// A known-solvable instance: pairwise non-congruent rectangles obtained by
/// cutting the board, together with the dissection that produced them.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GuillotineInstance {
    pub width: u32,
    pub height: u32,
    /// `(w, h)` per piece; piece `i` is class `i` in the witness.
    pub pieces: Vec<(u32, u32)>,
    pub witness: Tiling,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("no non-congruent dissection of {width}x{height} with {cuts} cuts from seed {seed}")]
pub struct GenerationFailed {
    pub width: u32,
    pub height: u32,
    pub cuts: u32,
    pub seed: u64,
}

const ATTEMPTS: u32 = 256;

#[derive(Clone, Copy)]
struct Cell {
    x: u32,
    y: u32,
    w: u32,
    h: u32,
    /// Cut direction for this rectangle: `true` splits it with a vertical line.
    vertical: bool,
}

/// Cuts the board `cuts` times and returns the `cuts + 1` pieces.
///
/// The generator is ChaCha8 seeded with `seed` through
/// `SeedableRng::seed_from_u64`. Each step picks a uniformly random
/// rectangle that can still be cut in its direction and splits it at a
/// uniform integer offset; children are cut in the opposite direction. The
/// first rectangle's direction is a coin flip. If the result contains two
/// congruent pieces the whole draw is repeated from the same stream, up to
/// 256 times.
pub fn random_guillotine(
    width: u32,
    height: u32,
    cuts: u32,
    seed: u64,
) -> Result<GuillotineInstance, GenerationFailed> {
    let failed = GenerationFailed {
        width,
        height,
        cuts,
        seed,
    };
    if cuts == 0 || width == 0 || height == 0 {
        return Err(failed);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..ATTEMPTS {
        if let Some(cells) = draw(width, height, cuts, &mut rng) {
            if distinct_shapes(&cells) {
                return Ok(instance(width, height, &cells, seed));
            }
        }
    }
    Err(failed)
}

fn draw(width: u32, height: u32, cuts: u32, rng: &mut ChaCha8Rng) -> Option<Vec<Cell>> {
    let mut cells = Vec::with_capacity(cuts as usize + 1);
    cells.push(Cell {
        x: 0,
        y: 0,
        w: width,
        h: height,
        vertical: rng.gen_bool(0.5),
    });
    for _ in 0..cuts {
        let splittable: Vec<usize> = (0..cells.len())
            .filter(|&i| {
                if cells[i].vertical {
                    cells[i].w >= 2
                } else {
                    cells[i].h >= 2
                }
            })
            .collect();
        if splittable.is_empty() {
            return None;
        }
        let i = splittable[rng.gen_range(0..splittable.len())];
        let c = cells[i];
        let (a, b) = if c.vertical {
            let cut = rng.gen_range(1..c.w);
            (
                Cell {
                    w: cut,
                    vertical: false,
                    ..c
                },
                Cell {
                    x: c.x + cut,
                    w: c.w - cut,
                    vertical: false,
                    ..c
                },
            )
        } else {
            let cut = rng.gen_range(1..c.h);
            (
                Cell {
                    h: cut,
                    vertical: true,
                    ..c
                },
                Cell {
                    y: c.y + cut,
                    h: c.h - cut,
                    vertical: true,
                    ..c
                },
            )
        };
        cells[i] = a;
        cells.push(b);
    }
    Some(cells)
}

fn distinct_shapes(cells: &[Cell]) -> bool {
    let mut shapes: Vec<(u32, u32)> = cells.iter().map(|c| (c.w.min(c.h), c.w.max(c.h))).collect();
    shapes.sort_unstable();
    shapes.windows(2).all(|w| w[0] != w[1])
}

fn instance(width: u32, height: u32, cells: &[Cell], seed: u64) -> GuillotineInstance {
    let placements: Vec<Placement> = cells
        .iter()
        .enumerate()
        .map(|(i, c)| Placement {
            x: c.x,
            y: c.y,
            width: c.w,
            height: c.h,
            piece: i,
            class: i,
        })
        .collect();
    GuillotineInstance {
        width,
        height,
        pieces: cells.iter().map(|c| (c.w, c.h)).collect(),
        witness: Tiling {
            width,
            height,
            placements,
        },
        seed,
    }
}
