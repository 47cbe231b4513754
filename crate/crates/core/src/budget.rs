use std::cell::Cell;

use crate::error::{Error, Result};

/// Default number of elementary checks an exhaustive search may perform.
pub const DEFAULT_BOUND: u64 = 10_000_000;

/// Counts elementary checks (compositions, comparisons) against a limit.
#[derive(Debug)]
pub struct Budget {
    limit: u64,
    used: Cell<u64>,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit, used: Cell::new(0) }
    }

    pub fn tick(&self, n: u64) -> Result<()> {
        let used = self.used.get().saturating_add(n);
        self.used.set(used);
        if used > self.limit {
            Err(Error::ResourceLimit { bound: self.limit })
        } else {
            Ok(())
        }
    }

    pub fn used(&self) -> u64 {
        self.used.get()
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }
}
