//! Instance builders shared by the benchmarks.

use domcover::grid::Segment;

/// A dense k-by-k hash: every vertical crosses every horizontal, so the
/// intersection graph is complete bipartite with k^2 crossings.
pub fn hash_grid(k: usize) -> Vec<Segment> {
    let size = 2 * k as i64;
    let mut segments = Vec::with_capacity(2 * k);
    for i in 0..k {
        segments.push(Segment::vertical(2 * i as i64 + 1, 0, size).unwrap());
    }
    for i in 0..k {
        segments.push(Segment::horizontal(2 * i as i64 + 1, 0, size).unwrap());
    }
    segments
}

/// A sparse staircase: alternating verticals and horizontals, each
/// crossing only its neighbors, so crossings stay linear in the count.
pub fn staircase_grid(n: usize) -> Vec<Segment> {
    let mut segments = Vec::with_capacity(n);
    for i in 0..n {
        let at = i as i64;
        segments.push(if i % 2 == 0 {
            Segment::vertical(at, at - 1, at + 1).unwrap()
        } else {
            Segment::horizontal(at, at - 1, at + 1).unwrap()
        });
    }
    segments
}
