//! Parallel exact search: every admissible placement of the first two pieces
//! becomes an independent task.

use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::mpsc;
use std::thread;
use std::time::Instant;

use mondrian_core::solver::{solve, solve_from, split, EngineProblem, Outcome, SolveReport};
use mondrian_core::tiling::{Placement, Tiling};

/// Depth at which the search tree is cut into tasks.
pub const SPLIT_DEPTH: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ParallelOptions {
    pub workers: usize,
    /// Stop once this instant has passed, reporting [`Outcome::Limit`].
    pub deadline: Option<Instant>,
    /// Return the tiling sequential search would find instead of whichever
    /// task finished first.
    pub canonical_witness: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParallelReport {
    pub outcome: Outcome,
    /// Placements made, summed over the split and every task that ran.
    pub nodes: u64,
    pub tasks: usize,
    /// Tasks that ran to completion.
    pub finished: usize,
    /// Tasks stopped by their node limit or the deadline.
    pub limited: usize,
}

enum Message {
    Done(usize, SolveReport),
}

/// Same verdict as [`solve`]: FOUND iff some task finds a tiling, EXHAUSTED
/// iff every task exhausts, LIMIT otherwise. The problem's node limit
/// applies to each task separately.
pub fn solve_parallel(problem: &EngineProblem, options: &ParallelOptions) -> ParallelReport {
    let deadline = options.deadline;
    let expired = || deadline.is_some_and(|d| Instant::now() >= d);
    if options.workers <= 1 {
        let report = solve(problem, &mut || expired());
        let limited = usize::from(report.outcome == Outcome::Limit);
        return ParallelReport {
            outcome: report.outcome,
            nodes: report.nodes,
            tasks: 1,
            finished: 1 - limited,
            limited,
        };
    }
    let prefixes = match split(problem, SPLIT_DEPTH, &mut || expired()) {
        Ok(p) => p,
        Err(report) => {
            return ParallelReport {
                outcome: Outcome::Limit,
                nodes: report.nodes,
                tasks: 0,
                finished: 0,
                limited: 0,
            }
        }
    };
    let cancel = AtomicBool::new(false);
    let next = AtomicUsize::new(0);
    let mut reports: Vec<Option<SolveReport>> = vec![None; prefixes.len()];
    let mut winner: Option<usize> = None;
    thread::scope(|scope| {
        let (tx, rx) = mpsc::channel();
        for _ in 0..options.workers.min(prefixes.len()) {
            let tx = tx.clone();
            let (cancel, next, prefixes) = (&cancel, &next, &prefixes);
            scope.spawn(move || loop {
                if cancel.load(Ordering::Relaxed) {
                    break;
                }
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(prefix) = prefixes.get(i) else { break };
                let mut budget = || {
                    cancel.load(Ordering::Relaxed) || deadline.is_some_and(|d| Instant::now() >= d)
                };
                let report = solve_from(problem, prefix, &mut budget);
                if tx.send(Message::Done(i, report)).is_err() {
                    break;
                }
            });
        }
        drop(tx);
        for Message::Done(i, report) in rx {
            if report.outcome.is_found() && winner.is_none() {
                winner = Some(i);
                cancel.store(true, Ordering::Relaxed);
            }
            reports[i] = Some(report);
        }
    });
    let nodes: u64 = reports.iter().flatten().map(|r| r.nodes).sum();
    let finished = reports
        .iter()
        .flatten()
        .filter(|r| r.outcome != Outcome::Limit)
        .count();
    let limited = reports
        .iter()
        .flatten()
        .filter(|r| r.outcome == Outcome::Limit)
        .count();
    let outcome = match winner {
        Some(i) if options.canonical_witness => canonical(problem, &prefixes[..=i]),
        Some(i) => reports[i].take().expect("winner reported").outcome,
        None if finished == prefixes.len() => Outcome::Exhausted,
        None => Outcome::Limit,
    };
    ParallelReport {
        outcome,
        nodes,
        tasks: prefixes.len(),
        finished,
        limited,
    }
}

/// Replays the prefixes in search order; the first tiling found is the one
/// sequential search returns.
fn canonical(problem: &EngineProblem, prefixes: &[Vec<Placement>]) -> Outcome {
    for prefix in prefixes {
        if let Outcome::Found(t) =
            solve_from(problem, prefix, &mut mondrian_core::Unlimited).outcome
        {
            return Outcome::Found(t);
        }
    }
    unreachable!("the last prefix is known to contain a tiling")
}

/// The tiling in a found outcome.
pub fn witness(outcome: &Outcome) -> Option<&Tiling> {
    match outcome {
        Outcome::Found(t) => Some(t),
        _ => None,
    }
}
