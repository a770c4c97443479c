//! Simple undirected graphs with dense vertex ids, plus the structural
//! queries (bipartition, leaves and supports, distances, corona and
//! four-cycle tests) that every recognizer in this crate builds on.

use thiserror::Error;

/// Dense vertex id in `0..n`.
pub type VertexId = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {0} out of range for graph on {1} vertices")]
    OutOfRange(VertexId, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(VertexId, VertexId),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph contains an odd cycle")]
    NotBipartite,
}

/// Simple undirected graph. Adjacency lists are kept sorted ascending,
/// so neighbor iteration order is deterministic and membership tests are
/// binary searches.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adjacency: Vec<Vec<VertexId>>,
    edge_count: usize,
}

impl Graph {
    /// Builds a graph on `n` vertices from an edge list. Rejects
    /// out-of-range endpoints, self-loops, and duplicate edges.
    pub fn from_edges(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Self, GraphError> {
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n {
                return Err(GraphError::OutOfRange(u, n));
            }
            if v >= n {
                return Err(GraphError::OutOfRange(v, n));
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        for (u, list) in adjacency.iter().enumerate() {
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(GraphError::DuplicateEdge(u.min(w[0]), u.max(w[0])));
            }
        }
        Ok(Graph {
            n,
            adjacency,
            edge_count: edges.len(),
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[v].len()
    }

    /// Neighbors of `v`, sorted ascending.
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adjacency[v]
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    /// All edges as `(u, v)` pairs with `u < v`, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    /// True iff a single traversal from vertex 0 reaches every vertex.
    /// Graphs on zero or one vertices count as connected.
    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut reached = 1;
        while let Some(u) = stack.pop() {
            for &v in &self.adjacency[u] {
                if !seen[v] {
                    seen[v] = true;
                    reached += 1;
                    stack.push(v);
                }
            }
        }
        reached == self.n
    }

    /// Two-colors a connected graph. The smaller side comes first; at a
    /// tie the side containing vertex 0 is `side_a`.
    pub fn bipartition(&self) -> Result<Bipartition, GraphError> {
        if !self.is_connected() {
            return Err(GraphError::Disconnected);
        }
        if self.n == 0 {
            return Ok(Bipartition {
                side_a: Vec::new(),
                side_b: Vec::new(),
                in_a: Vec::new(),
            });
        }
        let mut color = vec![u8::MAX; self.n];
        color[0] = 0;
        let mut queue = std::collections::VecDeque::from([0]);
        while let Some(u) = queue.pop_front() {
            for &v in &self.adjacency[u] {
                if color[v] == u8::MAX {
                    color[v] = 1 - color[u];
                    queue.push_back(v);
                } else if color[v] == color[u] {
                    return Err(GraphError::NotBipartite);
                }
            }
        }
        let zero: Vec<_> = (0..self.n).filter(|&v| color[v] == 0).collect();
        let one: Vec<_> = (0..self.n).filter(|&v| color[v] == 1).collect();
        // Vertex 0 is always colored 0, so the tie-break keeps `zero`.
        let (side_a, side_b) = if zero.len() <= one.len() {
            (zero, one)
        } else {
            (one, zero)
        };
        let mut in_a = vec![false; self.n];
        for &v in &side_a {
            in_a[v] = true;
        }
        Ok(Bipartition {
            side_a,
            side_b,
            in_a,
        })
    }

    /// Degrees, leaves, supports, and weak supports, in one pass.
    pub fn structural_marks(&self) -> StructuralMarks {
        let degrees: Vec<_> = (0..self.n).map(|v| self.degree(v)).collect();
        let is_leaf: Vec<_> = degrees.iter().map(|&d| d == 1).collect();
        let mut is_support = vec![false; self.n];
        let mut is_weak_support = vec![false; self.n];
        for v in 0..self.n {
            let leaf_neighbors = self.adjacency[v].iter().filter(|&&u| is_leaf[u]).count();
            is_support[v] = leaf_neighbors >= 1;
            is_weak_support[v] = leaf_neighbors == 1;
        }
        StructuralMarks {
            degrees,
            is_leaf,
            is_support,
            is_weak_support,
        }
    }

    /// Length of a shortest path, `None` if `v` is unreachable from `u`.
    pub fn distance(&self, u: VertexId, v: VertexId) -> Option<usize> {
        if u == v {
            return Some(0);
        }
        let mut dist = vec![usize::MAX; self.n];
        dist[u] = 0;
        let mut queue = std::collections::VecDeque::from([u]);
        while let Some(x) = queue.pop_front() {
            for &y in &self.adjacency[x] {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    if y == v {
                        return Some(dist[y]);
                    }
                    queue.push_back(y);
                }
            }
        }
        None
    }

    /// True iff every vertex is a leaf or is adjacent to exactly one leaf,
    /// i.e. the graph is `F ∘ K1` for some graph `F`. Assumes a connected
    /// input.
    pub fn is_corona(&self) -> bool {
        if self.n < 2 {
            return false;
        }
        let marks = self.structural_marks();
        (0..self.n).all(|v| marks.is_leaf(v) || marks.is_weak_support(v))
    }

    /// True iff the graph is the four-cycle: four vertices, all of degree
    /// two, connected.
    pub fn is_cycle4(&self) -> bool {
        self.n == 4 && (0..4).all(|v| self.degree(v) == 2) && self.is_connected()
    }

    /// The graph with vertex `v` removed; vertices above `v` shift down
    /// by one.
    pub fn delete_vertex(&self, v: VertexId) -> Graph {
        assert!(v < self.n, "vertex {v} out of range");
        let remap = |u: VertexId| if u > v { u - 1 } else { u };
        let edges: Vec<_> = self
            .edges()
            .filter(|&(a, b)| a != v && b != v)
            .map(|(a, b)| (remap(a), remap(b)))
            .collect();
        Graph::from_edges(self.n - 1, &edges).expect("deleting a vertex keeps the graph simple")
    }

    /// The same graph under a vertex relabeling: `labels[v]` is the new
    /// name of vertex `v`. Labels must be a permutation of `0..n`.
    pub fn relabeled(&self, labels: &[VertexId]) -> Result<Graph, GraphError> {
        assert_eq!(labels.len(), self.n, "label vector length mismatch");
        let edges: Vec<_> = self.edges().map(|(u, v)| (labels[u], labels[v])).collect();
        Graph::from_edges(self.n, &edges)
    }
}

/// Leaves, supports, weak supports, and degrees of a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructuralMarks {
    pub degrees: Vec<usize>,
    is_leaf: Vec<bool>,
    is_support: Vec<bool>,
    is_weak_support: Vec<bool>,
}

impl StructuralMarks {
    /// Degree one.
    pub fn is_leaf(&self, v: VertexId) -> bool {
        self.is_leaf[v]
    }

    /// Adjacent to at least one leaf.
    pub fn is_support(&self, v: VertexId) -> bool {
        self.is_support[v]
    }

    /// Adjacent to exactly one leaf.
    pub fn is_weak_support(&self, v: VertexId) -> bool {
        self.is_weak_support[v]
    }

    /// Neither a leaf nor a support.
    pub fn is_free(&self, v: VertexId) -> bool {
        !self.is_leaf[v] && !self.is_support[v]
    }

    pub fn leaves(&self) -> Vec<VertexId> {
        (0..self.is_leaf.len()).filter(|&v| self.is_leaf[v]).collect()
    }

    pub fn supports(&self) -> Vec<VertexId> {
        (0..self.is_support.len())
            .filter(|&v| self.is_support[v])
            .collect()
    }

    pub fn weak_supports(&self) -> Vec<VertexId> {
        (0..self.is_weak_support.len())
            .filter(|&v| self.is_weak_support[v])
            .collect()
    }
}

/// A two-coloring of a connected graph with `|side_a| <= |side_b|`.
/// When the sides tie, `side_a` is the side containing vertex 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    side_a: Vec<VertexId>,
    side_b: Vec<VertexId>,
    in_a: Vec<bool>,
}

impl Bipartition {
    pub fn side_a(&self) -> &[VertexId] {
        &self.side_a
    }

    pub fn side_b(&self) -> &[VertexId] {
        &self.side_b
    }

    pub fn contains_a(&self, v: VertexId) -> bool {
        self.in_a[v]
    }

    /// Builds a bipartition from explicit sides, normalizing so the
    /// smaller side is `side_a` (ties keep the side containing vertex 0).
    pub(crate) fn from_sides(n: usize, first: Vec<VertexId>, second: Vec<VertexId>) -> Self {
        let swap = match first.len().cmp(&second.len()) {
            std::cmp::Ordering::Less => false,
            std::cmp::Ordering::Greater => true,
            std::cmp::Ordering::Equal => !first.contains(&0),
        };
        let (mut side_a, mut side_b) = if swap { (second, first) } else { (first, second) };
        side_a.sort_unstable();
        side_b.sort_unstable();
        let mut in_a = vec![false; n];
        for &v in &side_a {
            in_a[v] = true;
        }
        Bipartition {
            side_a,
            side_b,
            in_a,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{complete_bipartite, cycle, path, star};

    #[test]
    fn build_accepts_simple_graphs() {
        let k2 = Graph::from_edges(2, &[(0, 1)]).unwrap();
        assert_eq!(k2.vertex_count(), 2);
        assert_eq!(k2.edge_count(), 1);
        let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(c4.edge_count(), 4);
        assert!(c4.has_edge(3, 0));
    }

    #[test]
    fn build_rejects_bad_edges() {
        assert_eq!(
            Graph::from_edges(3, &[(0, 0)]),
            Err(GraphError::SelfLoop(0))
        );
        assert_eq!(
            Graph::from_edges(2, &[(0, 2)]),
            Err(GraphError::OutOfRange(2, 2))
        );
        assert_eq!(
            Graph::from_edges(3, &[(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
    }

    #[test]
    fn degree_sum_counts_edges_twice() {
        let g = complete_bipartite(2, 3);
        let total: usize = (0..g.vertex_count()).map(|v| g.degree(v)).sum();
        assert_eq!(total, 2 * g.edge_count());
    }

    #[test]
    fn connectivity() {
        assert!(cycle(4).is_connected());
        assert!(path(2).is_connected());
        let two_edges = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(!two_edges.is_connected());
        assert!(Graph::from_edges(0, &[]).unwrap().is_connected());
        assert!(Graph::from_edges(1, &[]).unwrap().is_connected());
    }

    #[test]
    fn bipartition_small_sides_first() {
        let p3 = path(3);
        let b = p3.bipartition().unwrap();
        assert_eq!(b.side_a(), &[1]);
        assert_eq!(b.side_b(), &[0, 2]);

        assert_eq!(cycle(3).bipartition(), Err(GraphError::NotBipartite));

        let c4 = cycle(4);
        let b = c4.bipartition().unwrap();
        assert_eq!(b.side_a(), &[0, 2]);
        assert_eq!(b.side_b(), &[1, 3]);
        assert!(b.contains_a(0));

        let two_edges = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(two_edges.bipartition(), Err(GraphError::Disconnected));
    }

    #[test]
    fn bipartition_has_no_internal_edges() {
        for g in [path(7), cycle(8), star(4), complete_bipartite(3, 4)] {
            let b = g.bipartition().unwrap();
            for (u, v) in g.edges() {
                assert_ne!(b.contains_a(u), b.contains_a(v));
            }
        }
    }

    #[test]
    fn marks_on_fixtures() {
        let s = star(3);
        let m = s.structural_marks();
        assert_eq!(m.leaves(), vec![1, 2, 3]);
        assert_eq!(m.supports(), vec![0]);
        assert_eq!(m.weak_supports(), Vec::<usize>::new());

        let p4 = path(4);
        let m = p4.structural_marks();
        assert_eq!(m.leaves(), vec![0, 3]);
        assert_eq!(m.supports(), vec![1, 2]);
        assert_eq!(m.weak_supports(), vec![1, 2]);

        let m = cycle(4).structural_marks();
        assert!(m.leaves().is_empty());
        assert!(m.supports().is_empty());
    }

    #[test]
    fn marks_match_naive_recomputation() {
        let graphs = [path(9), cycle(7), star(5), complete_bipartite(2, 4)];
        for g in graphs {
            let m = g.structural_marks();
            for v in 0..g.vertex_count() {
                let leaf = g.degree(v) == 1;
                let leaf_nbrs = g.neighbors(v).iter().filter(|&&u| g.degree(u) == 1).count();
                assert_eq!(m.is_leaf(v), leaf);
                assert_eq!(m.is_support(v), leaf_nbrs >= 1);
                assert_eq!(m.is_weak_support(v), leaf_nbrs == 1);
                assert_eq!(m.degrees[v], g.degree(v));
            }
        }
    }

    #[test]
    fn distances() {
        let p4 = path(4);
        assert_eq!(p4.distance(0, 3), Some(3));
        assert_eq!(p4.distance(2, 2), Some(0));
        let k23 = complete_bipartite(2, 3);
        assert_eq!(k23.distance(0, 1), Some(2));
        let two_edges = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(two_edges.distance(0, 3), None);
    }

    #[test]
    fn corona_recognition() {
        assert!(path(4).is_corona());
        assert!(path(2).is_corona());
        assert!(!cycle(4).is_corona());
        assert!(!star(3).is_corona());
        // Corona of a triangle: every vertex of K3 gets a pendant leaf.
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (0, 3), (1, 4), (2, 5)]).unwrap();
        assert!(g.is_corona());
    }

    #[test]
    fn corona_graphs_have_half_leaves() {
        // Holds for every corona on at least four vertices; K2 is the
        // degenerate corona of K1 where both vertices are leaves.
        for g in [path(4), path(6)] {
            if g.is_corona() {
                let n = g.vertex_count();
                assert_eq!(n % 2, 0);
                assert_eq!(g.structural_marks().leaves().len(), n / 2);
            }
        }
    }

    #[test]
    fn cycle4_recognition() {
        assert!(cycle(4).is_cycle4());
        assert!(!path(4).is_cycle4());
        let k4 = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert!(!k4.is_cycle4());
    }

    #[test]
    fn vertex_deletion_remaps() {
        let p4 = path(4);
        let g = p4.delete_vertex(1);
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(1, 2)]);
    }
}
