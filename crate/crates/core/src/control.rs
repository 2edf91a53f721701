//! Cooperative budgets for long searches.
//!
//! The engines poll a [`Budget`] every few thousand steps. The core crate only
//! knows step counts; wall-clock deadlines and cross-thread cancellation are
//! supplied by the caller.

/// Polled periodically by long-running searches; `true` aborts the search.
pub trait Budget {
    fn exhausted(&mut self) -> bool;
}

/// Never stops.
#[derive(Debug, Default, Clone, Copy)]
pub struct Unlimited;

impl Budget for Unlimited {
    #[inline]
    fn exhausted(&mut self) -> bool {
        false
    }
}

impl<F: FnMut() -> bool> Budget for F {
    #[inline]
    fn exhausted(&mut self) -> bool {
        self()
    }
}
