use core::fmt;
use core::ops::ControlFlow;
use core::str::FromStr;

use thiserror::Error;

use crate::classes::{ClassBits, WideClassSet};
use crate::control::Budget;
use crate::pieces::{CaseSpec, PieceCatalog, PieceSet};

use super::gap::{gap_passes, GapMode};
use super::hole::hole_check;
use super::perimeter::{PerimeterOptions, PerimeterSearch};
use super::side::{has_side_subset, Axis};
use super::Interrupted;

/// Where a case left the cascade.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "SCREAMING_SNAKE_CASE"))]
pub enum Stage {
    NoPieceSet,
    Side,
    Perimeter,
    Gap,
    Hole,
    Survivor,
    /// The budget ran out before a stage could decide.
    Timeout,
}

impl Stage {
    pub fn as_str(self) -> &'static str {
        match self {
            Stage::NoPieceSet => "NO_PIECE_SET",
            Stage::Side => "SIDE",
            Stage::Perimeter => "PERIMETER",
            Stage::Gap => "GAP",
            Stage::Hole => "HOLE",
            Stage::Survivor => "SURVIVOR",
            Stage::Timeout => "TIMEOUT",
        }
    }

    /// Survivors and undecided cases are not eliminated.
    pub fn eliminated(self) -> bool {
        !matches!(self, Stage::Survivor | Stage::Timeout)
    }
}

impl FromStr for Stage {
    type Err = StageError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let all = [
            Stage::NoPieceSet,
            Stage::Side,
            Stage::Perimeter,
            Stage::Gap,
            Stage::Hole,
            Stage::Survivor,
            Stage::Timeout,
        ];
        all.into_iter()
            .find(|stage| stage.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| StageError::Unknown(s.into()))
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StageError {
    #[error("unknown stage {0:?}; expected side, perimeter, gap or hole")]
    Unknown(alloc::string::String),
    #[error("the gap and hole stages need the perimeter stage")]
    MissingPerimeter,
}

/// Which filters run. Gap and hole operate on perimeter candidates and so
/// require the perimeter stage.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Stages {
    side: bool,
    perimeter: bool,
    gap: bool,
    hole: bool,
}

impl Stages {
    pub const ALL: Stages = Stages {
        side: true,
        perimeter: true,
        gap: true,
        hole: true,
    };

    pub fn new(side: bool, perimeter: bool, gap: bool, hole: bool) -> Result<Self, StageError> {
        if (gap || hole) && !perimeter {
            return Err(StageError::MissingPerimeter);
        }
        Ok(Stages {
            side,
            perimeter,
            gap,
            hole,
        })
    }

    pub fn side(&self) -> bool {
        self.side
    }
    pub fn perimeter(&self) -> bool {
        self.perimeter
    }
    pub fn gap(&self) -> bool {
        self.gap
    }
    pub fn hole(&self) -> bool {
        self.hole
    }
}

impl Default for Stages {
    fn default() -> Self {
        Stages::ALL
    }
}

impl FromStr for Stages {
    type Err = StageError;

    /// Comma-separated stage names, e.g. `side,perimeter,gap`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (mut side, mut perimeter, mut gap, mut hole) = (false, false, false, false);
        for name in s.split(',').map(str::trim).filter(|n| !n.is_empty()) {
            match name.to_ascii_lowercase().as_str() {
                "side" => side = true,
                "perimeter" => perimeter = true,
                "gap" => gap = true,
                "hole" => hole = true,
                "all" => (side, perimeter, gap, hole) = (true, true, true, true),
                _ => return Err(StageError::Unknown(name.into())),
            }
        }
        Stages::new(side, perimeter, gap, hole)
    }
}

impl fmt::Display for Stages {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (on, name) in [
            (self.side, "side"),
            (self.perimeter, "perimeter"),
            (self.gap, "gap"),
            (self.hole, "hole"),
        ] {
            if on {
                if !first {
                    f.write_str(",")?;
                }
                f.write_str(name)?;
                first = false;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CascadeOptions {
    pub stages: Stages,
    pub gap_mode: GapMode,
    /// Admit one-piece sides in the perimeter stage.
    pub singletons: bool,
    /// Count perimeter candidates once per reflection orbit.
    pub canonical_only: bool,
    /// Stop at the first surviving candidate instead of counting all.
    pub first_survivor: bool,
}

impl Default for CascadeOptions {
    fn default() -> Self {
        CascadeOptions {
            stages: Stages::ALL,
            gap_mode: GapMode::Mixed,
            singletons: true,
            canonical_only: true,
            first_survivor: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CaseOutcome {
    pub stage: Stage,
    /// Perimeter candidates enumerated.
    pub candidates: u64,
    /// Candidates that passed every enabled stage.
    pub surviving: u64,
}

/// Builds the piece set and runs the cascade; infeasible cases stop at
/// [`Stage::NoPieceSet`].
pub fn evaluate_spec(
    case: CaseSpec,
    options: &CascadeOptions,
    budget: &mut dyn Budget,
) -> CaseOutcome {
    match PieceSet::new(case) {
        Ok(ps) => evaluate_case(&ps, options, budget),
        Err(_) => CaseOutcome {
            stage: Stage::NoPieceSet,
            candidates: 0,
            surviving: 0,
        },
    }
}

/// Runs the enabled stages in order and reports the first one that rules the
/// case out.
pub fn evaluate_case<C: PieceCatalog + ?Sized>(
    cat: &C,
    options: &CascadeOptions,
    budget: &mut dyn Budget,
) -> CaseOutcome {
    let timeout = CaseOutcome {
        stage: Stage::Timeout,
        candidates: 0,
        surviving: 0,
    };
    match run(cat, options, budget) {
        Ok(outcome) => outcome,
        Err(Interrupted) => timeout,
    }
}

fn run<C: PieceCatalog + ?Sized>(
    cat: &C,
    options: &CascadeOptions,
    budget: &mut dyn Budget,
) -> Result<CaseOutcome, Interrupted> {
    let outcome = |stage, candidates, surviving| CaseOutcome {
        stage,
        candidates,
        surviving,
    };
    let (w, h) = cat.board();
    if options.stages.side {
        let horizontal = has_side_subset(cat, Axis::Horizontal, 2, budget)?;
        let vertical = horizontal && (w == h || has_side_subset(cat, Axis::Vertical, 2, budget)?);
        if !vertical {
            return Ok(outcome(Stage::Side, 0, 0));
        }
    }
    if !options.stages.perimeter {
        return Ok(outcome(Stage::Survivor, 0, 0));
    }
    if cat.class_count() <= 64 {
        cycles::<C, u64>(cat, options, budget)
    } else {
        cycles::<C, WideClassSet>(cat, options, budget)
    }
}

fn cycles<C: PieceCatalog + ?Sized, S: ClassBits>(
    cat: &C,
    options: &CascadeOptions,
    budget: &mut dyn Budget,
) -> Result<CaseOutcome, Interrupted> {
    let perimeter = PerimeterOptions {
        singletons: options.singletons,
        canonical_only: options.canonical_only,
    };
    let search = PerimeterSearch::<S>::build(cat, perimeter, budget)?;
    let (mut candidates, mut past_gap, mut surviving) = (0u64, 0u64, 0u64);
    search.for_each(budget, |cycle| {
        candidates += 1;
        let view = search.view(&cycle);
        if options.stages.gap && !gap_passes(cat, &view, options.gap_mode) {
            return ControlFlow::Continue(());
        }
        past_gap += 1;
        if options.stages.hole && !hole_check(cat, view).passes() {
            return ControlFlow::Continue(());
        }
        surviving += 1;
        if options.first_survivor {
            return ControlFlow::Break(());
        }
        ControlFlow::Continue(())
    })?;
    let stage = if candidates == 0 {
        Stage::Perimeter
    } else if surviving > 0 {
        Stage::Survivor
    } else if past_gap > 0 {
        Stage::Hole
    } else {
        Stage::Gap
    };
    Ok(CaseOutcome {
        stage,
        candidates,
        surviving,
    })
}
