//! Runs the filter cascade over many cases on a bounded worker pool.

use std::panic::{self, AssertUnwindSafe};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::mpsc;
use std::thread;
use std::time::{Duration, Instant};

use mondrian_core::filters::{evaluate_spec, CascadeOptions, Stage};
use mondrian_core::pieces::{enumerate_cases_from, MIN_PMP_PIECES};
use mondrian_core::CaseSpec;
use serde::{Deserialize, Serialize};

/// Where a case ended up. `Crashed` means the evaluation panicked; the
/// message is kept in [`Verdict::error`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Outcome {
    Stage(Stage),
    Crashed,
}

impl Outcome {
    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Stage(s) => s.as_str(),
            Outcome::Crashed => "CRASHED",
        }
    }

    pub fn is_survivor(self) -> bool {
        self == Outcome::Stage(Stage::Survivor)
    }
}

impl std::fmt::Display for Outcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Outcome {
    type Err = mondrian_core::filters::StageError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.trim().eq_ignore_ascii_case("CRASHED") {
            Ok(Outcome::Crashed)
        } else {
            s.parse().map(Outcome::Stage)
        }
    }
}

impl Serialize for Outcome {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for Outcome {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// One row of a scan. Field names are the CSV header and JSON keys.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    #[serde(rename = "W")]
    pub width: u32,
    #[serde(rename = "H")]
    pub height: u32,
    pub r: u32,
    pub stage: Outcome,
    #[serde(rename = "survivingCandidates")]
    pub surviving: u64,
    pub elapsed_ms: u64,
    #[serde(skip)]
    pub error: Option<String>,
}

impl Verdict {
    pub fn case(&self) -> (u32, u32, u32) {
        (self.width, self.height, self.r)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PipelineConfig {
    pub cascade: CascadeOptions,
    /// Wall-clock cap per case; an expired case gets [`Stage::Timeout`].
    pub timeout: Option<Duration>,
    pub workers: usize,
    /// Smallest piece count considered.
    pub min_pieces: u32,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            cascade: CascadeOptions::default(),
            timeout: None,
            workers: 1,
            min_pieces: MIN_PMP_PIECES,
        }
    }
}

/// Feasible cases of a `W x H` board with at least `min_pieces` pieces.
pub fn board_cases(width: u32, height: u32, min_pieces: u32) -> Vec<CaseSpec> {
    enumerate_cases_from(width, height, min_pieces)
}

/// Feasible cases of every `n x n` board with `lo <= n <= hi`, ordered by
/// `n` then `r`.
pub fn square_cases(lo: u32, hi: u32, min_pieces: u32) -> Vec<CaseSpec> {
    (lo.max(1)..=hi)
        .flat_map(|n| board_cases(n, n, min_pieces))
        .collect()
}

/// Feasible cases of every `w x h` board with `w <= h <= max`.
pub fn rectangle_cases(max: u32, min_pieces: u32) -> Vec<CaseSpec> {
    (1..=max)
        .flat_map(|h| (1..=h).flat_map(move |w| board_cases(w, h, min_pieces)))
        .collect()
}

/// Evaluates one case, converting a panic into [`Outcome::Crashed`].
pub fn evaluate(case: CaseSpec, config: &PipelineConfig) -> Verdict {
    let start = Instant::now();
    let deadline = config.timeout.map(|t| start + t);
    let result = panic::catch_unwind(AssertUnwindSafe(|| {
        let mut budget = || deadline.is_some_and(|d| Instant::now() >= d);
        evaluate_spec(case, &config.cascade, &mut budget)
    }));
    let elapsed_ms = start.elapsed().as_millis() as u64;
    let (stage, surviving, error) = match result {
        Ok(o) => (Outcome::Stage(o.stage), o.surviving, None),
        Err(payload) => (Outcome::Crashed, 0, Some(panic_message(payload.as_ref()))),
    };
    Verdict {
        width: case.width,
        height: case.height,
        r: case.pieces,
        stage,
        surviving,
        elapsed_ms,
        error,
    }
}

fn panic_message(payload: &(dyn std::any::Any + Send)) -> String {
    if let Some(s) = payload.downcast_ref::<&str>() {
        (*s).to_owned()
    } else if let Some(s) = payload.downcast_ref::<String>() {
        s.clone()
    } else {
        "panic".to_owned()
    }
}

/// Evaluates `cases` on `config.workers` threads. `progress` sees each
/// verdict as it completes; the returned list is in input order.
pub fn run_cases(
    cases: &[CaseSpec],
    config: &PipelineConfig,
    mut progress: impl FnMut(&Verdict),
) -> Vec<Verdict> {
    let workers = config.workers.clamp(1, cases.len().max(1));
    let next = AtomicUsize::new(0);
    let mut slots: Vec<Option<Verdict>> = vec![None; cases.len()];
    thread::scope(|scope| {
        let (tx, rx) = mpsc::channel();
        for _ in 0..workers {
            let tx = tx.clone();
            let next = &next;
            scope.spawn(move || loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(&case) = cases.get(i) else { break };
                if tx.send((i, evaluate(case, config))).is_err() {
                    break;
                }
            });
        }
        drop(tx);
        for (i, verdict) in rx {
            progress(&verdict);
            slots[i] = Some(verdict);
        }
    });
    slots
        .into_iter()
        .map(|v| v.expect("every case evaluated"))
        .collect()
}

/// All feasible cases of one board.
pub fn run_pipeline(width: u32, height: u32, config: &PipelineConfig) -> Vec<Verdict> {
    run_cases(
        &board_cases(width, height, config.min_pieces),
        config,
        |_| {},
    )
}

/// Per board, whether any of its cases survived.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoardSummary {
    pub width: u32,
    pub height: u32,
    /// Piece counts that survived.
    pub surviving: Vec<u32>,
    /// Piece counts that timed out or crashed and so remain undecided.
    pub undecided: Vec<u32>,
}

/// Groups verdicts by board, keeping boards in first-seen order.
pub fn summarize(verdicts: &[Verdict]) -> Vec<BoardSummary> {
    let mut out: Vec<BoardSummary> = Vec::new();
    for v in verdicts {
        let board = (v.width, v.height);
        let entry = match out.last_mut() {
            Some(s) if (s.width, s.height) == board => s,
            _ => {
                out.push(BoardSummary {
                    width: v.width,
                    height: v.height,
                    surviving: Vec::new(),
                    undecided: Vec::new(),
                });
                out.last_mut().expect("just pushed")
            }
        };
        match v.stage {
            Outcome::Stage(Stage::Survivor) => entry.surviving.push(v.r),
            Outcome::Stage(Stage::Timeout) | Outcome::Crashed => entry.undecided.push(v.r),
            Outcome::Stage(_) => {}
        }
    }
    out
}

/// Square sides with at least one surviving case, ascending.
pub fn surviving_squares(verdicts: &[Verdict]) -> Vec<u32> {
    let mut out: Vec<u32> = verdicts
        .iter()
        .filter(|v| v.width == v.height && v.stage.is_survivor())
        .map(|v| v.width)
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}
