//! Exact exponential-time oracles for the domination, covering, and
//! independence numbers of small graphs, with verified witness sets.
//!
//! Values are found by branch and bound; the reported witness is then the
//! lexicographically smallest optimal set, located by a second, ordered
//! search. Every witness is re-checked against its defining property
//! before it is returned. These oracles are the ground truth the
//! polynomial recognizers are validated against.

use crate::graph::{Graph, VertexId};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default vertex-count cap for the exponential searches.
pub const DEFAULT_SIZE_CAP: usize = 24;

/// Absolute cap imposed by the 64-bit set representation.
pub const HARD_SIZE_CAP: usize = 63;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("graph order {n} exceeds oracle size cap {cap}")]
    SizeCapExceeded { n: usize, cap: usize },
    #[error("vertex {0} does not belong to the query set")]
    XNotInSet(VertexId),
    #[error("vertex {0} out of range for graph on {1} vertices")]
    OutOfRange(VertexId, usize),
}

/// An exact optimum together with one optimal witness and the number of
/// search nodes explored.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleResult {
    pub value: usize,
    pub witness: Vec<VertexId>,
    pub explored: u64,
}

/// Minimum dominating set, default size cap.
pub fn gamma(g: &Graph) -> Result<OracleResult, OracleError> {
    gamma_capped(g, DEFAULT_SIZE_CAP)
}

/// Minimum covering (vertex cover) set, default size cap.
pub fn beta(g: &Graph) -> Result<OracleResult, OracleError> {
    beta_capped(g, DEFAULT_SIZE_CAP)
}

/// Maximum independent set, default size cap.
pub fn alpha(g: &Graph) -> Result<OracleResult, OracleError> {
    alpha_capped(g, DEFAULT_SIZE_CAP)
}

pub fn gamma_capped(g: &Graph, cap: usize) -> Result<OracleResult, OracleError> {
    let sets = Masks::new(g, cap)?;
    let mut explored = 0;
    if g.vertex_count() == 0 {
        return Ok(OracleResult {
            value: 0,
            witness: Vec::new(),
            explored,
        });
    }

    // Phase 1: optimal value, branching on an undominated vertex.
    let mut best = sets.greedy_dominating().len();
    sets.gamma_branch(0, 0, &mut best, &mut explored);

    // Phase 2: lexicographically smallest witness of that size.
    let witness = sets
        .lex_min_dominating(best, &mut explored)
        .expect("a dominating set of the optimal size exists");
    assert!(
        witness.len() == best && sets.is_dominating(&witness),
        "dominating witness failed verification"
    );
    Ok(OracleResult {
        value: best,
        witness,
        explored,
    })
}

pub fn beta_capped(g: &Graph, cap: usize) -> Result<OracleResult, OracleError> {
    let sets = Masks::new(g, cap)?;
    let mut explored = 0;
    let mut best = sets.greedy_cover().len();
    sets.beta_branch(0, 0, &mut best, &mut explored);

    let witness = sets
        .lex_min_cover(best, &mut explored)
        .expect("a cover of the optimal size exists");
    assert!(
        witness.len() == best && sets.is_cover(&witness),
        "covering witness failed verification"
    );
    Ok(OracleResult {
        value: best,
        witness,
        explored,
    })
}

pub fn alpha_capped(g: &Graph, cap: usize) -> Result<OracleResult, OracleError> {
    let sets = Masks::new(g, cap)?;
    let mut explored = 0;
    let mut best = 0;
    sets.alpha_branch(sets.full, 0, &mut best, &mut explored);

    let witness = sets
        .lex_min_independent(best, &mut explored)
        .expect("an independent set of the optimal size exists");
    assert!(
        witness.len() == best && sets.is_independent(&witness),
        "independent witness failed verification"
    );
    Ok(OracleResult {
        value: best,
        witness,
        explored,
    })
}

/// The private neighborhood of `x` with respect to `set`: the closed
/// neighborhood of `x` minus the closed neighborhood of `set - {x}`.
pub fn private_neighborhood(
    g: &Graph,
    x: VertexId,
    set: &[VertexId],
) -> Result<Vec<VertexId>, OracleError> {
    let n = g.vertex_count();
    if x >= n {
        return Err(OracleError::OutOfRange(x, n));
    }
    for &y in set {
        if y >= n {
            return Err(OracleError::OutOfRange(y, n));
        }
    }
    if !set.contains(&x) {
        return Err(OracleError::XNotInSet(x));
    }
    let mut excluded = vec![false; n];
    for &y in set {
        if y == x {
            continue;
        }
        excluded[y] = true;
        for &z in g.neighbors(y) {
            excluded[z] = true;
        }
    }
    let mut result: Vec<_> = g
        .neighbors(x)
        .iter()
        .copied()
        .chain(std::iter::once(x))
        .filter(|&v| !excluded[v])
        .collect();
    result.sort_unstable();
    Ok(result)
}

/// True iff deleting `v` decreases the domination number (always by
/// exactly one when it decreases at all).
pub fn is_gamma_minus_critical(g: &Graph, v: VertexId) -> Result<bool, OracleError> {
    is_gamma_minus_critical_capped(g, v, DEFAULT_SIZE_CAP)
}

pub fn is_gamma_minus_critical_capped(
    g: &Graph,
    v: VertexId,
    cap: usize,
) -> Result<bool, OracleError> {
    let n = g.vertex_count();
    if v >= n {
        return Err(OracleError::OutOfRange(v, n));
    }
    let whole = gamma_capped(g, cap)?.value;
    let deleted = gamma_capped(&g.delete_vertex(v), cap)?.value;
    debug_assert!(
        deleted + 1 >= whole,
        "deletion can lower gamma by at most one"
    );
    Ok(deleted < whole)
}

/// Bit-set view of a graph: closed and open neighborhoods as u64 masks.
struct Masks {
    n: usize,
    full: u64,
    closed: Vec<u64>,
    open: Vec<u64>,
}

impl Masks {
    fn new(g: &Graph, cap: usize) -> Result<Self, OracleError> {
        let n = g.vertex_count();
        let cap = cap.min(HARD_SIZE_CAP);
        if n > cap {
            return Err(OracleError::SizeCapExceeded { n, cap });
        }
        let mut closed = vec![0u64; n];
        let mut open = vec![0u64; n];
        for v in 0..n {
            let mut m = 0u64;
            for &u in g.neighbors(v) {
                m |= 1 << u;
            }
            open[v] = m;
            closed[v] = m | (1 << v);
        }
        Ok(Masks {
            n,
            full: (1u64 << n) - 1,
            closed,
            open,
        })
    }

    fn below(start: usize) -> u64 {
        if start >= 64 {
            u64::MAX
        } else {
            (1u64 << start) - 1
        }
    }

    fn is_dominating(&self, set: &[VertexId]) -> bool {
        let mut covered = 0u64;
        for &v in set {
            covered |= self.closed[v];
        }
        covered == self.full
    }

    fn is_cover(&self, set: &[VertexId]) -> bool {
        let mut in_set = 0u64;
        for &v in set {
            in_set |= 1 << v;
        }
        (0..self.n).all(|u| in_set & (1 << u) != 0 || self.open[u] & !in_set == 0)
    }

    fn is_independent(&self, set: &[VertexId]) -> bool {
        let mut in_set = 0u64;
        for &v in set {
            in_set |= 1 << v;
        }
        set.iter().all(|&v| self.open[v] & in_set == 0)
    }

    fn greedy_dominating(&self) -> Vec<VertexId> {
        let mut covered = 0u64;
        let mut chosen = Vec::new();
        while covered != self.full {
            let v = (0..self.n)
                .max_by_key(|&v| (self.closed[v] & !covered).count_ones())
                .expect("nonempty graph");
            chosen.push(v);
            covered |= self.closed[v];
        }
        chosen
    }

    fn greedy_cover(&self) -> Vec<VertexId> {
        let mut in_set = 0u64;
        let mut chosen = Vec::new();
        loop {
            let pick = (0..self.n)
                .filter(|&v| in_set & (1 << v) == 0)
                .map(|v| (v, (self.open[v] & !in_set).count_ones()))
                .filter(|&(_, d)| d > 0)
                .max_by_key(|&(_, d)| d);
            match pick {
                Some((v, _)) => {
                    chosen.push(v);
                    in_set |= 1 << v;
                }
                None => return chosen,
            }
        }
    }

    /// Lower bound for domination: greedily pack undominated vertices with
    /// pairwise disjoint closed neighborhoods; each needs its own
    /// dominator. `None` when some undominated vertex has no candidate
    /// dominator left in `avail`.
    fn gamma_lower_bound(&self, dominated: u64, avail: u64) -> Option<usize> {
        let mut taken = 0u64;
        let mut count = 0;
        let mut m = !dominated & self.full;
        while m != 0 {
            let u = m.trailing_zeros() as usize;
            m &= m - 1;
            if self.closed[u] & avail == 0 {
                return None;
            }
            if self.closed[u] & taken == 0 {
                taken |= self.closed[u];
                count += 1;
            }
        }
        Some(count)
    }

    fn gamma_branch(&self, dominated: u64, chosen: usize, best: &mut usize, explored: &mut u64) {
        *explored += 1;
        if dominated == self.full {
            *best = (*best).min(chosen);
            return;
        }
        let lb = match self.gamma_lower_bound(dominated, self.full) {
            Some(lb) => lb,
            None => return,
        };
        if chosen + lb >= *best {
            return;
        }
        // Branch on the undominated vertex with the fewest candidates.
        let mut pick = usize::MAX;
        let mut pick_cands = u32::MAX;
        let mut m = !dominated & self.full;
        while m != 0 {
            let u = m.trailing_zeros() as usize;
            m &= m - 1;
            let c = self.closed[u].count_ones();
            if c < pick_cands {
                pick_cands = c;
                pick = u;
            }
        }
        let mut cands = self.closed[pick];
        while cands != 0 {
            let c = cands.trailing_zeros() as usize;
            cands &= cands - 1;
            self.gamma_branch(dominated | self.closed[c], chosen + 1, best, explored);
        }
    }

    /// First dominating set of exactly `budget` vertices in ascending
    /// subset order; that is the lexicographically smallest one.
    fn lex_min_dominating(&self, budget: usize, explored: &mut u64) -> Option<Vec<VertexId>> {
        fn rec(
            sets: &Masks,
            start: usize,
            dominated: u64,
            remaining: usize,
            acc: &mut Vec<VertexId>,
            explored: &mut u64,
        ) -> bool {
            *explored += 1;
            if dominated == sets.full {
                return true;
            }
            if remaining == 0 {
                return false;
            }
            let avail = sets.full & !Masks::below(start);
            match sets.gamma_lower_bound(dominated, avail) {
                Some(lb) if lb <= remaining => {}
                _ => return false,
            }
            for v in start..sets.n {
                if sets.closed[v] & !dominated == 0 {
                    continue; // adds nothing; cannot appear in a minimum set
                }
                acc.push(v);
                if rec(
                    sets,
                    v + 1,
                    dominated | sets.closed[v],
                    remaining - 1,
                    acc,
                    explored,
                ) {
                    return true;
                }
                acc.pop();
            }
            false
        }
        let mut acc = Vec::new();
        if self.full == 0 {
            return Some(acc);
        }
        rec(self, 0, 0, budget, &mut acc, explored).then_some(acc)
    }

    /// Lowest-endpoint uncovered edge, as `(u, v)` with `u < v`.
    fn first_uncovered_edge(&self, in_set: u64) -> Option<(usize, usize)> {
        let mut m = self.full & !in_set;
        while m != 0 {
            let u = m.trailing_zeros() as usize;
            m &= m - 1;
            let above_u = !((1u64 << u) | Masks::below(u));
            let rest = self.open[u] & !in_set & above_u;
            if rest != 0 {
                return Some((u, rest.trailing_zeros() as usize));
            }
        }
        None
    }

    /// Lower bound for covering: a greedy matching among uncovered edges
    /// restricted to `avail` vertices. Matched edges are vertex-disjoint,
    /// so each needs its own cover vertex.
    fn matching_lower_bound(&self, in_set: u64, avail: u64) -> usize {
        let mut used = 0u64;
        let mut count = 0;
        for u in 0..self.n {
            let ubit = 1u64 << u;
            if in_set & ubit != 0 || used & ubit != 0 || avail & ubit == 0 {
                continue;
            }
            let partners = self.open[u] & !in_set & !used & avail;
            if partners != 0 {
                used |= ubit | (1u64 << partners.trailing_zeros());
                count += 1;
            }
        }
        count
    }

    fn beta_branch(&self, in_set: u64, chosen: usize, best: &mut usize, explored: &mut u64) {
        *explored += 1;
        let (u, v) = match self.first_uncovered_edge(in_set) {
            Some(e) => e,
            None => {
                *best = (*best).min(chosen);
                return;
            }
        };
        if chosen + self.matching_lower_bound(in_set, self.full) >= *best {
            return;
        }
        self.beta_branch(in_set | (1 << u), chosen + 1, best, explored);
        self.beta_branch(in_set | (1 << v), chosen + 1, best, explored);
    }

    fn lex_min_cover(&self, budget: usize, explored: &mut u64) -> Option<Vec<VertexId>> {
        fn rec(
            sets: &Masks,
            start: usize,
            in_set: u64,
            remaining: usize,
            acc: &mut Vec<VertexId>,
            explored: &mut u64,
        ) -> bool {
            *explored += 1;
            if sets.first_uncovered_edge(in_set).is_none() {
                return true;
            }
            if remaining == 0 {
                return false;
            }
            let before = Masks::below(start) & sets.full;
            // Vertices below `start` can no longer be chosen: an uncovered
            // edge with both endpoints there is fatal, and one with a
            // single endpoint there forces the other endpoint.
            let mut forced = 0u64;
            let mut m = before & !in_set;
            while m != 0 {
                let u = m.trailing_zeros() as usize;
                m &= m - 1;
                let open_uncovered = sets.open[u] & !in_set;
                let above_u = !((1u64 << u) | Masks::below(u));
                if open_uncovered & before & above_u != 0 {
                    return false;
                }
                forced |= open_uncovered & !before;
            }
            let lb = (forced.count_ones() as usize)
                + sets.matching_lower_bound(in_set | forced, sets.full & !before & !forced);
            if lb > remaining {
                return false;
            }
            for v in start..sets.n {
                if sets.open[v] & !in_set == 0 {
                    continue; // covers nothing new
                }
                acc.push(v);
                if rec(sets, v + 1, in_set | (1 << v), remaining - 1, acc, explored) {
                    return true;
                }
                acc.pop();
            }
            false
        }
        let mut acc = Vec::new();
        if self.first_uncovered_edge(0).is_none() {
            return Some(acc);
        }
        rec(self, 0, 0, budget, &mut acc, explored).then_some(acc)
    }

    fn alpha_branch(&self, avail: u64, chosen: usize, best: &mut usize, explored: &mut u64) {
        *explored += 1;
        if avail == 0 {
            *best = (*best).max(chosen);
            return;
        }
        if chosen + avail.count_ones() as usize <= *best {
            return;
        }
        // Branch on the available vertex of highest remaining degree.
        let mut pick = 0;
        let mut pick_deg = i64::MIN;
        let mut m = avail;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            let d = (self.open[v] & avail).count_ones() as i64;
            if d > pick_deg {
                pick_deg = d;
                pick = v;
            }
        }
        self.alpha_branch(avail & !self.closed[pick], chosen + 1, best, explored);
        self.alpha_branch(avail & !(1u64 << pick), chosen, best, explored);
    }

    fn lex_min_independent(&self, target: usize, explored: &mut u64) -> Option<Vec<VertexId>> {
        fn rec(
            sets: &Masks,
            avail: u64,
            start: usize,
            remaining: usize,
            acc: &mut Vec<VertexId>,
            explored: &mut u64,
        ) -> bool {
            *explored += 1;
            if remaining == 0 {
                return true;
            }
            let ahead = avail & !Masks::below(start);
            if (ahead.count_ones() as usize) < remaining {
                return false;
            }
            let mut m = ahead;
            while m != 0 {
                let v = m.trailing_zeros() as usize;
                m &= m - 1;
                acc.push(v);
                if rec(sets, avail & !sets.closed[v], v + 1, remaining - 1, acc, explored) {
                    return true;
                }
                acc.pop();
            }
            false
        }
        let mut acc = Vec::new();
        rec(self, self.full, 0, target, &mut acc, explored).then_some(acc)
    }
}
