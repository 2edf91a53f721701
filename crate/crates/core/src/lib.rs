//! Exact search for perfect Mondrian partitions: dissections of an integer
//! rectangle into pairwise non-congruent integer rectangles of equal area.
//!
//! The crate is `no_std` (with `alloc`) and free of IO. It provides
//!
//! * [`pieces`]: feasible `(W, H, r)` cases and their divisor-derived pieces,
//! * [`filters`]: the side / perimeter / gap / hole elimination cascade,
//! * [`solver`]: a complete skyline backtracking tiler with square-symmetry
//!   pruning and first-placement task splitting,
//! * [`oracle`]: deliberately naive reference implementations and a seeded
//!   guillotine instance generator used to cross-check the fast paths.
#![no_std]
extern crate alloc;

pub mod arith;
pub mod classes;
pub mod control;
pub mod filters;
pub mod oracle;
pub mod pieces;
pub mod solver;
pub mod tiling;

pub use control::{Budget, Unlimited};
pub use pieces::{enumerate_cases, piece_set, CaseSpec, Piece, PieceCatalog, PieceSet};
