//! Shared helpers for the integration suites: exhaustive enumeration of
//! small connected graphs and labeled trees, random and hand-staggered
//! grid generators, and naive re-implementations used as independent
//! oracles.

#![allow(dead_code)]

use domcover::grid::{Orientation, Segment};
use domcover::oracles;
use domcover::{Graph, VertexId};
use rand::Rng;

/// Calls `f` on every connected labeled graph on exactly `n` vertices,
/// enumerated as edge subsets of the complete graph. Connectivity is
/// pre-filtered on bit masks before any allocation.
pub fn for_each_connected_graph(n: usize, mut f: impl FnMut(&Graph)) {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let m = pairs.len();
    assert!(m <= 31, "enumeration is meant for small orders");
    for mask in 0u32..(1u32 << m) {
        // Adjacency masks for the subset.
        let mut adj = [0u32; 16];
        let mut bits = mask;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let (u, v) = pairs[i];
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        // Mask-level reachability from vertex 0.
        let mut reached = 1u32;
        loop {
            let mut next = reached;
            let mut r = reached;
            while r != 0 {
                let v = r.trailing_zeros() as usize;
                r &= r - 1;
                next |= adj[v];
            }
            if next == reached {
                break;
            }
            reached = next;
        }
        if reached != (1u32 << n) - 1 {
            continue;
        }
        let edges: Vec<_> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, &e)| e)
            .collect();
        f(&Graph::from_edges(n, &edges).unwrap());
    }
}

/// Decodes a Prüfer sequence over `0..n` into the edge list of the
/// corresponding labeled tree on `n >= 2` vertices.
pub fn prufer_decode(seq: &[usize], n: usize) -> Vec<(usize, usize)> {
    assert_eq!(seq.len() + 2, n);
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &s in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
        edges.push((leaf, s));
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let u = (0..n).find(|&v| degree[v] == 1).unwrap();
    let v = (u + 1..n).find(|&v| degree[v] == 1).unwrap();
    edges.push((u, v));
    edges
}

/// Calls `f` on every labeled tree on exactly `n >= 2` vertices via
/// Prüfer enumeration (`n^(n-2)` trees).
pub fn for_each_labeled_tree(n: usize, mut f: impl FnMut(&Graph)) {
    if n == 2 {
        f(&Graph::from_edges(2, &[(0, 1)]).unwrap());
        return;
    }
    let len = n - 2;
    let mut seq = vec![0usize; len];
    loop {
        let edges = prufer_decode(&seq, n);
        f(&Graph::from_edges(n, &edges).unwrap());
        // Next sequence in base-n counting order.
        let mut i = len;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            seq[i] += 1;
            if seq[i] < n {
                break;
            }
            seq[i] = 0;
        }
    }
}

/// Naive dominating-set test.
pub fn dominates(g: &Graph, set: &[VertexId]) -> bool {
    let chosen = |v: usize| set.contains(&v);
    (0..g.vertex_count()).all(|v| chosen(v) || g.neighbors(v).iter().any(|&u| chosen(u)))
}

/// Gamma, beta, and alpha with the Gallai identity asserted inline.
pub fn oracle_triple(g: &Graph) -> (usize, usize, usize) {
    let ga = oracles::gamma(g).unwrap().value;
    let be = oracles::beta(g).unwrap().value;
    let al = oracles::alpha(g).unwrap().value;
    assert_eq!(
        al + be,
        g.vertex_count(),
        "gallai identity violated on {g:?}"
    );
    (ga, be, al)
}

/// All maximum independent sets of a small graph, by subset scan.
pub fn all_maximum_independent_sets(g: &Graph) -> Vec<Vec<VertexId>> {
    let n = g.vertex_count();
    assert!(n <= 20);
    let alpha = oracles::alpha(g).unwrap().value;
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != alpha {
            continue;
        }
        let set: Vec<_> = (0..n).filter(|&v| mask & (1 << v) != 0).collect();
        let independent = g
            .edges()
            .all(|(u, v)| !(mask & (1 << u) != 0 && mask & (1 << v) != 0));
        if independent {
            out.push(set);
        }
    }
    out
}

/// All-pairs closed-intersection edges; the independent oracle for the
/// sweep.
pub fn naive_crossings(segments: &[Segment]) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for i in 0..segments.len() {
        for j in i + 1..segments.len() {
            if segments[i].intersects(&segments[j]) {
                edges.push((i, j));
            }
        }
    }
    edges
}

/// Grows a random connected grid of up to `max_n` segments: each new
/// segment crosses a randomly chosen existing perpendicular one, with
/// collinear clashes resolved by retry. Coordinates stay in a compact
/// range so extra crossings are common.
pub fn random_grid(rng: &mut impl Rng, max_n: usize) -> Vec<Segment> {
    let span = (3 * max_n as i64).max(12);
    let mut segments = vec![Segment::horizontal(0, 0, rng.random_range(2..=span)).unwrap()];
    let target = rng.random_range(2..=max_n);
    let mut attempts = 0;
    while segments.len() < target && attempts < 40 * max_n {
        attempts += 1;
        let host = segments[rng.random_range(0..segments.len())];
        let orientation = match host.orientation {
            Orientation::Horizontal => Orientation::Vertical,
            Orientation::Vertical => Orientation::Horizontal,
        };
        let fixed = rng.random_range(host.lo..=host.hi);
        let lo = host.fixed - rng.random_range(0..=6);
        let hi = host.fixed + rng.random_range(0..=6);
        let candidate = match Segment::new(orientation, fixed, lo, hi) {
            Ok(s) => s,
            Err(_) => continue,
        };
        let clash = segments.iter().any(|s| {
            s.orientation == candidate.orientation
                && s.fixed == candidate.fixed
                && s.lo <= candidate.hi
                && candidate.lo <= s.hi
        });
        if !clash {
            segments.push(candidate);
        }
    }
    segments
}

/// A grid whose intersection graph is the quadratic-work family: `p`
/// staggered verticals (`p` in 2..=4), two exclusive horizontal
/// witnesses per vertical pair, and `extra` horizontals crossing every
/// vertical. The intersection graph is leafless with domination number
/// `p`.
pub fn staggered_grid(p: usize, extra: usize) -> Vec<Segment> {
    assert!((2..=4).contains(&p) && extra >= 1 && extra <= 400);
    // One band per vertical pair, placed so each vertical's needed bands
    // form an interval excluding the bands of pairs it lies strictly
    // between.
    let band = |i: usize, j: usize| -> i64 {
        match (i, j) {
            (0, 1) => 10,
            (1, 2) => 20,
            (2, 3) => 30,
            (0, 2) => 500,
            (1, 3) => -500,
            (0, 3) => 1000,
            _ => unreachable!(),
        }
    };
    let crossall = 40i64;
    let mut needed: Vec<Vec<i64>> = vec![vec![crossall, crossall + extra as i64 - 1]; p];
    let mut segments = Vec::new();
    for i in 0..p {
        for j in i + 1..p {
            let y = band(i, j);
            segments.push(Segment::horizontal(y, i as i64, j as i64).unwrap());
            segments.push(Segment::horizontal(y + 1, i as i64, j as i64).unwrap());
            needed[i].push(y);
            needed[i].push(y + 1);
            needed[j].push(y);
            needed[j].push(y + 1);
        }
    }
    for q in 0..extra {
        segments.push(Segment::horizontal(crossall + q as i64, 0, (p - 1).max(1) as i64).unwrap());
    }
    for (i, bands) in needed.iter().enumerate() {
        let lo = *bands.iter().min().unwrap();
        let hi = *bands.iter().max().unwrap();
        segments.push(Segment::vertical(i as i64, lo, hi).unwrap());
    }
    segments
}
