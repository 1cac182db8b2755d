//! Node and wall-clock budgets for the exhaustive searches.
//!
//! Permutation search and the order prover both have worst cases exponential
//! in the design size; a budget turns those into an explicit
//! exhausted/unknown outcome instead of a hang.

use std::time::{Duration, Instant};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub max_time: Option<Duration>,
}

impl Budget {
    pub const UNLIMITED: Budget = Budget { max_nodes: None, max_time: None };

    pub fn nodes(n: u64) -> Self {
        Budget { max_nodes: Some(n), max_time: None }
    }

    pub fn seconds(s: f64) -> Self {
        Budget {
            max_nodes: None,
            max_time: Some(Duration::from_secs_f64(s)),
        }
    }

    pub fn with_nodes(mut self, n: u64) -> Self {
        self.max_nodes = Some(n);
        self
    }

    pub fn is_unlimited(&self) -> bool {
        self.max_nodes.is_none() && self.max_time.is_none()
    }
}

/// Mutable counter for one search run. Time is checked every 1024 ticks.
pub struct Meter {
    budget: Budget,
    started: Instant,
    nodes: u64,
    exhausted: bool,
}

impl Meter {
    pub fn new(budget: Budget) -> Self {
        Meter {
            budget,
            started: Instant::now(),
            nodes: 0,
            exhausted: false,
        }
    }

    /// Count one unit of work; returns false once the budget is spent.
    #[inline]
    pub fn tick(&mut self) -> bool {
        if self.exhausted {
            return false;
        }
        self.nodes += 1;
        if let Some(max) = self.budget.max_nodes {
            if self.nodes > max {
                self.exhausted = true;
                return false;
            }
        }
        if self.nodes.is_multiple_of(1024) {
            if let Some(max) = self.budget.max_time {
                if self.started.elapsed() > max {
                    self.exhausted = true;
                    return false;
                }
            }
        }
        true
    }

    pub fn nodes(&self) -> u64 {
        self.nodes
    }

    pub fn exhausted(&self) -> bool {
        self.exhausted
    }
}
