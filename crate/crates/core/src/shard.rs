//! Contiguous work partitions for data-parallel scans.

use std::ops::Range;

use rayon::prelude::*;

/// Splits `0..n` into `shards` contiguous ranges whose lengths differ by at
/// most one. Earlier shards get the extra items.
pub fn ranges(n: u64, shards: usize) -> Vec<Range<u64>> {
    let shards = shards.max(1) as u64;
    let (base, extra) = (n / shards, n % shards);
    let mut start = 0;
    (0..shards)
        .map(|s| {
            let len = base + u64::from(s < extra);
            let r = start..start + len;
            start += len;
            r
        })
        .collect()
}

/// Runs `job` on every shard in parallel and returns the results in shard
/// order, so any fold over them is independent of scheduling.
pub fn map_shards<T, F>(n: u64, shards: usize, job: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize, Range<u64>) -> T + Sync,
{
    ranges(n, shards)
        .into_par_iter()
        .enumerate()
        .map(|(i, r)| job(i, r))
        .collect()
}
