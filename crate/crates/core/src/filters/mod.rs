//! The elimination cascade: side coverage, perimeter cycles, gap filling and
//! hole fit. Each stage only rejects a case by showing that a necessary
//! condition for a perfect partition fails.

mod cascade;
mod gap;
mod hole;
mod perimeter;
mod side;
mod sums;

pub use cascade::{
    evaluate_case, evaluate_spec, CascadeOptions, CaseOutcome, Stage, StageError, Stages,
};
pub use gap::{gap_check, gap_passes, side_gap, unused_classes, GapMode, GapVerdict, SideGap};
pub use hole::{hole_check, HoleReport};
pub use perimeter::{
    neighbor_table, perimeter_candidates, perimeter_candidates_with, validate_candidate,
    CandidateError, CandidateView, Corners, CycleRef, Neighbor, NeighborTable, PerimeterCandidate,
    PerimeterOptions, PerimeterSearch, Side,
};
pub use side::{has_side_subset, side_subsets, side_subsets_bounded, Axis, SideSubset};

/// A search was stopped by its [`Budget`](crate::control::Budget).
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("search interrupted by its budget")]
pub struct Interrupted;
