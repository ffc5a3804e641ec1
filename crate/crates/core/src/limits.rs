//! Enumeration budgets and range partitioning for exhaustive loops.

use std::ops::Range;

use crate::error::{Error, Result};

pub const DEFAULT_MAX_ELEMENTS: u64 = 1 << 24;
pub const DEFAULT_MAX_CODEWORDS: u64 = 1 << 24;

/// Capacity limits shared by every exhaustive operation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest field (or extension field) that may be enumerated.
    pub max_elements: u64,
    /// Largest number of codewords a distance search may walk.
    pub max_codewords: u64,
    /// Upper bound on the number of partitions processed concurrently.
    pub threads: usize,
}

impl Default for Limits {
    fn default() -> Self {
        let threads = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1);
        Limits { max_elements: DEFAULT_MAX_ELEMENTS, max_codewords: DEFAULT_MAX_CODEWORDS, threads }
    }
}

impl Limits {
    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads.max(1);
        self
    }

    pub fn check_elements(&self, required: u128) -> Result<()> {
        if required > self.max_elements as u128 {
            return Err(Error::Capacity {
                what: "field elements",
                required,
                budget: self.max_elements as u128,
            });
        }
        Ok(())
    }

    pub fn check_codewords(&self, required: u128) -> Result<()> {
        if required > self.max_codewords as u128 {
            return Err(Error::Capacity {
                what: "codewords",
                required,
                budget: self.max_codewords as u128,
            });
        }
        Ok(())
    }
}

/// Splits `range` into at most `parts` contiguous, disjoint, ordered pieces.
pub fn split_range(range: Range<u64>, parts: usize) -> Vec<Range<u64>> {
    let len = range.end.saturating_sub(range.start);
    let parts = (parts.max(1) as u64).min(len.max(1));
    let chunk = len / parts;
    let extra = len % parts;
    let mut out = Vec::with_capacity(parts as usize);
    let mut start = range.start;
    for i in 0..parts {
        let size = chunk + u64::from(i < extra);
        out.push(start..start + size);
        start += size;
    }
    out
}

/// Runs `work` over disjoint pieces of `range` on up to `threads` scoped
/// threads and returns the per-piece results in range order.
pub fn map_partitions<T, W>(range: Range<u64>, threads: usize, work: W) -> Vec<T>
where
    T: Send,
    W: Fn(Range<u64>) -> T + Sync,
{
    let len = range.end.saturating_sub(range.start);
    // Small ranges are not worth a thread spawn.
    if threads <= 1 || len < 4096 {
        return vec![work(range)];
    }
    let pieces = split_range(range, threads);
    std::thread::scope(|scope| {
        let handles: Vec<_> = pieces
            .into_iter()
            .map(|piece| {
                let work = &work;
                scope.spawn(move || work(piece))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_covers_range_exactly() {
        for (len, parts) in [(0u64, 3usize), (1, 4), (10, 3), (4096, 7), (5, 5)] {
            let pieces = split_range(3..3 + len, parts);
            let mut next = 3;
            for p in &pieces {
                assert_eq!(p.start, next);
                next = p.end;
            }
            assert_eq!(next, 3 + len);
        }
    }

    #[test]
    fn partitioned_sum_is_partition_independent() {
        let serial: u64 = (0..100_000u64).map(|x| x % 7).sum();
        for threads in [1, 2, 3, 8] {
            let parts = map_partitions(0..100_000, threads, |r| r.map(|x| x % 7).sum::<u64>());
            assert_eq!(parts.iter().sum::<u64>(), serial);
        }
    }

    #[test]
    fn capacity_errors_report_requirement() {
        let limits = Limits { max_elements: 16, ..Limits::default() };
        assert!(limits.check_elements(16).is_ok());
        match limits.check_elements(32) {
            Err(Error::Capacity { required, budget, .. }) => assert_eq!((required, budget), (32, 16)),
            other => panic!("unexpected {other:?}"),
        }
    }
}
