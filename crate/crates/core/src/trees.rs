//! The constructive tree family: trees grown from a single edge by four
//! attachment operations, together with a linear-time domination DP,
//! deletion-critical analysis, random generation with replayable build
//! scripts, and a deconstruction that decides membership by unwinding
//! the growth — a tree unwinds to the base edge exactly when its
//! domination number equals the size of its smaller partite set.

use crate::graph::{Graph, VertexId};
use crate::oracles::OracleResult;
use crate::recognition::{Rule, Verdict};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("graph is not a tree")]
    NotATree,
    #[error("tree has {0} vertices; at least 2 are required")]
    TooSmall(usize),
    #[error("tree does not belong to the family")]
    NotMember,
    #[error("operation {kind:?} at attacher {attacher} violates its precondition: {reason}")]
    PreconditionViolated {
        kind: TreeOpKind,
        attacher: VertexId,
        reason: String,
    },
    #[error("vertex {0} does not exist in the current tree")]
    UnknownVertex(VertexId),
    #[error("script line {line}: {message}")]
    InvalidScript { line: usize, message: String },
}

/// The four growth operations. Text tokens are `O1`..`O4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TreeOpKind {
    /// `O1`: a new leaf on an A-side attacher.
    LeafOnA,
    /// `O2`: a new leaf on a non-leaf B-side attacher all of whose
    /// neighbors are supports.
    LeafOnB,
    /// `O3`: a new two-vertex path hung on an A-side attacher that is a
    /// support.
    PathOnA,
    /// `O4`: a new two-vertex path hung on a B-side attacher that is not
    /// deletion-critical for the domination number.
    PathOnB,
}

impl TreeOpKind {
    pub fn token(self) -> &'static str {
        match self {
            TreeOpKind::LeafOnA => "O1",
            TreeOpKind::LeafOnB => "O2",
            TreeOpKind::PathOnA => "O3",
            TreeOpKind::PathOnB => "O4",
        }
    }

    pub fn from_token(s: &str) -> Option<Self> {
        match s {
            "O1" => Some(TreeOpKind::LeafOnA),
            "O2" => Some(TreeOpKind::LeafOnB),
            "O3" => Some(TreeOpKind::PathOnA),
            "O4" => Some(TreeOpKind::PathOnB),
            _ => None,
        }
    }

    fn adds(self) -> usize {
        match self {
            TreeOpKind::LeafOnA | TreeOpKind::LeafOnB => 1,
            TreeOpKind::PathOnA | TreeOpKind::PathOnB => 2,
        }
    }
}

/// One growth step: the operation, its attacher in the pre-existing
/// tree, and the ids assigned to the added vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeOp {
    pub kind: TreeOpKind,
    pub attacher: VertexId,
    pub new_ids: Vec<VertexId>,
}

/// A replayable growth sequence starting from a single edge. `base` is
/// the starting edge with the A-side vertex first; canonical scripts use
/// the edge `(0, 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuildScript {
    pub base: (VertexId, VertexId),
    pub ops: Vec<TreeOp>,
}

/// A replayed script: the rebuilt tree over dense ids plus the recorded
/// label of each dense vertex.
#[derive(Debug, Clone)]
pub struct Replayed {
    pub tree: RootedTree,
    pub labels: Vec<VertexId>,
}

impl BuildScript {
    /// Rebuilds the tree, validating every operation's precondition.
    /// Dense ids are assigned in encounter order; `labels` maps them back
    /// to the ids recorded in the script.
    pub fn replay(&self) -> Result<Replayed, TreeError> {
        let mut tree = RootedTree::base_edge();
        let mut labels = vec![self.base.0, self.base.1];
        for op in &self.ops {
            let attacher = labels
                .iter()
                .position(|&l| l == op.attacher)
                .ok_or(TreeError::UnknownVertex(op.attacher))?;
            let (next, _) = apply_operation(&tree, op.kind, attacher)?;
            tree = next;
            if op.new_ids.is_empty() {
                for d in labels.len()..tree.vertex_count() {
                    labels.push(d);
                }
            } else {
                if op.new_ids.len() != op.kind.adds() {
                    return Err(TreeError::InvalidScript {
                        line: 0,
                        message: format!(
                            "operation {} records {} new ids, expected {}",
                            op.kind.token(),
                            op.new_ids.len(),
                            op.kind.adds()
                        ),
                    });
                }
                labels.extend_from_slice(&op.new_ids);
            }
        }
        Ok(Replayed { tree, labels })
    }

    /// One operation per line: `O1 <attacher>` through `O4 <attacher>`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for op in &self.ops {
            out.push_str(op.kind.token());
            out.push(' ');
            out.push_str(&op.attacher.to_string());
            out.push('\n');
        }
        out
    }

    /// Parses the line format produced by [`BuildScript::to_text`]. The
    /// base edge is `(0, 1)` and fresh ids are assigned in encounter
    /// order.
    pub fn from_text(text: &str) -> Result<Self, TreeError> {
        let mut ops = Vec::new();
        let mut next = 2;
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut parts = line.split_whitespace();
            let kind = parts
                .next()
                .and_then(TreeOpKind::from_token)
                .ok_or_else(|| TreeError::InvalidScript {
                    line: idx + 1,
                    message: format!("unknown operation in {line:?}"),
                })?;
            let attacher: VertexId = parts
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| TreeError::InvalidScript {
                    line: idx + 1,
                    message: "missing or invalid attacher".into(),
                })?;
            if parts.next().is_some() {
                return Err(TreeError::InvalidScript {
                    line: idx + 1,
                    message: "trailing tokens".into(),
                });
            }
            let new_ids: Vec<_> = (next..next + kind.adds()).collect();
            next += kind.adds();
            ops.push(TreeOp {
                kind,
                attacher,
                new_ids,
            });
        }
        Ok(BuildScript { base: (0, 1), ops })
    }
}

/// A tree rooted at vertex 0 with a parent array and a tracked
/// bipartition. Trees built from a raw graph take the normalized
/// bipartition (smaller side first); trees grown by operations extend
/// the sides of the tree they grew from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedTree {
    graph: Graph,
    parent: Vec<Option<VertexId>>,
    in_a: Vec<bool>,
}

impl RootedTree {
    pub fn from_graph(graph: Graph) -> Result<Self, TreeError> {
        let n = graph.vertex_count();
        if n == 0 || graph.edge_count() != n - 1 || !graph.is_connected() {
            return Err(TreeError::NotATree);
        }
        let bip = graph.bipartition().map_err(|_| TreeError::NotATree)?;
        let in_a: Vec<_> = (0..n).map(|v| bip.contains_a(v)).collect();
        Ok(Self::with_sides(graph, in_a))
    }

    /// The single edge `(0, 1)` with vertex 0 on the A side.
    pub fn base_edge() -> Self {
        let graph = Graph::from_edges(2, &[(0, 1)]).expect("valid base edge");
        Self::with_sides(graph, vec![true, false])
    }

    fn with_sides(graph: Graph, in_a: Vec<bool>) -> Self {
        let n = graph.vertex_count();
        let mut parent = vec![None; n];
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut queue = std::collections::VecDeque::from([0]);
        while let Some(u) = queue.pop_front() {
            for &v in graph.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    parent[v] = Some(u);
                    queue.push_back(v);
                }
            }
        }
        RootedTree {
            graph,
            parent,
            in_a,
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn parent(&self, v: VertexId) -> Option<VertexId> {
        self.parent[v]
    }

    pub fn in_side_a(&self, v: VertexId) -> bool {
        self.in_a[v]
    }

    pub fn side_a(&self) -> Vec<VertexId> {
        (0..self.vertex_count()).filter(|&v| self.in_a[v]).collect()
    }

    pub fn side_b(&self) -> Vec<VertexId> {
        (0..self.vertex_count())
            .filter(|&v| !self.in_a[v])
            .collect()
    }
}

const INF: usize = usize::MAX / 4;

/// Three-state domination DP over one component: for each vertex the
/// cheapest subtree cost with the vertex (0) in the set, (1) dominated
/// from below, or (2) left for its parent to dominate.
struct ComponentDp {
    order: Vec<VertexId>, // BFS order from the component root
    cost: Vec<[usize; 3]>,
}

fn component_dp(
    neighbors: &dyn Fn(VertexId) -> Vec<VertexId>,
    root: VertexId,
    seen: &mut [bool],
    parent: &mut [usize],
) -> ComponentDp {
    let mut order = vec![root];
    seen[root] = true;
    parent[root] = usize::MAX;
    let mut head = 0;
    while head < order.len() {
        let u = order[head];
        head += 1;
        for v in neighbors(u) {
            if !seen[v] {
                seen[v] = true;
                parent[v] = u;
                order.push(v);
            }
        }
    }
    let mut cost = vec![[0usize; 3]; parent.len()];
    for &v in order.iter().rev() {
        let mut in_set = 1usize;
        let mut dominated = 0usize;
        let mut needs = 0usize;
        let mut swap_penalty = INF; // turn one child from state 1 to 0
        let mut has_child = false;
        for u in neighbors(v) {
            if parent[u] != v {
                continue;
            }
            has_child = true;
            let c = cost[u];
            in_set = in_set.saturating_add(c[0].min(c[1]).min(c[2]));
            let best01 = c[0].min(c[1]);
            dominated = dominated.saturating_add(best01);
            needs = needs.saturating_add(best01);
            if c[0] <= c[1] {
                swap_penalty = 0;
            } else {
                swap_penalty = swap_penalty.min(c[0] - c[1]);
            }
        }
        let dominated = if has_child {
            dominated.saturating_add(swap_penalty)
        } else {
            INF
        };
        cost[v] = [in_set, dominated, needs];
    }
    ComponentDp { order, cost }
}

/// Exact domination number of a tree by the three-state DP, with a
/// verified witness. `explored` counts DP vertex visits.
pub fn tree_gamma(t: &RootedTree) -> OracleResult {
    let g = t.graph();
    let n = g.vertex_count();
    let neighbors = |v: VertexId| g.neighbors(v).to_vec();
    let mut seen = vec![false; n];
    let mut parent = vec![usize::MAX; n];
    let dp = component_dp(&neighbors, 0, &mut seen, &mut parent);
    debug_assert!(seen.iter().all(|&s| s), "tree must be connected");

    // Top-down state assignment, then read off the witness.
    let mut state = vec![0u8; n];
    let mut witness = Vec::new();
    for &v in &dp.order {
        let s = if parent[v] == usize::MAX {
            if dp.cost[v][0] <= dp.cost[v][1] {
                0
            } else {
                1
            }
        } else {
            state[v]
        };
        state[v] = s;
        if s == 0 {
            witness.push(v);
        }
        let children: Vec<_> = neighbors(v).into_iter().filter(|&u| parent[u] == v).collect();
        match s {
            0 => {
                for &u in &children {
                    let c = dp.cost[u];
                    state[u] = if c[2] <= c[0] && c[2] <= c[1] {
                        2
                    } else if c[0] <= c[1] {
                        0
                    } else {
                        1
                    };
                }
            }
            1 => {
                // At least one child must enter the set.
                let mut have_in = false;
                for &u in &children {
                    let c = dp.cost[u];
                    if c[0] <= c[1] {
                        state[u] = 0;
                        have_in = true;
                    } else {
                        state[u] = 1;
                    }
                }
                if !have_in {
                    let swap = children
                        .iter()
                        .copied()
                        .min_by_key(|&u| dp.cost[u][0] - dp.cost[u][1])
                        .expect("dominated state requires a child");
                    state[swap] = 0;
                }
            }
            _ => {
                for &u in &children {
                    let c = dp.cost[u];
                    state[u] = if c[0] <= c[1] { 0 } else { 1 };
                }
            }
        }
    }
    witness.sort_unstable();

    let value = dp.cost[0][0].min(dp.cost[0][1]);
    let dominated = |v: VertexId| {
        witness.binary_search(&v).is_ok()
            || g.neighbors(v).iter().any(|&u| witness.binary_search(&u).is_ok())
    };
    assert!(
        witness.len() == value && (0..n).all(dominated),
        "tree DP witness failed verification"
    );
    OracleResult {
        value,
        witness,
        explored: n as u64,
    }
}

/// Domination number of a forest: sum of the DP over its components.
fn forest_gamma(g: &Graph) -> usize {
    let n = g.vertex_count();
    let neighbors = |v: VertexId| g.neighbors(v).to_vec();
    let mut seen = vec![false; n];
    let mut parent = vec![usize::MAX; n];
    let mut total = 0;
    for root in 0..n {
        if !seen[root] {
            let dp = component_dp(&neighbors, root, &mut seen, &mut parent);
            total += dp.cost[root][0].min(dp.cost[root][1]);
        }
    }
    total
}

/// Vertices whose deletion lowers the tree's domination number by one.
/// Deletion may disconnect; the number of a forest is the sum over its
/// components.
pub fn gamma_minus_critical_vertices(t: &RootedTree) -> Vec<VertexId> {
    let whole = tree_gamma(t).value;
    (0..t.vertex_count())
        .filter(|&v| forest_gamma(&t.graph().delete_vertex(v)) < whole)
        .collect()
}

/// Deletion-criticality of one vertex, via the tree DP.
pub fn is_tree_gamma_minus_critical(t: &RootedTree, v: VertexId) -> bool {
    forest_gamma(&t.graph().delete_vertex(v)) < tree_gamma(t).value
}

/// Applies one growth operation, enforcing its precondition. New
/// vertices get the next dense ids in declaration order; the returned
/// [`TreeOp`] records them.
pub fn apply_operation(
    t: &RootedTree,
    kind: TreeOpKind,
    attacher: VertexId,
) -> Result<(RootedTree, TreeOp), TreeError> {
    let g = t.graph();
    let n = g.vertex_count();
    if attacher >= n {
        return Err(TreeError::UnknownVertex(attacher));
    }
    let marks = g.structural_marks();
    let fail = |reason: &str| TreeError::PreconditionViolated {
        kind,
        attacher,
        reason: reason.into(),
    };
    match kind {
        TreeOpKind::LeafOnA => {
            if !t.in_side_a(attacher) {
                return Err(fail("attacher must be on the A side"));
            }
        }
        TreeOpKind::LeafOnB => {
            if t.in_side_a(attacher) {
                return Err(fail("attacher must be on the B side"));
            }
            if marks.is_leaf(attacher) {
                return Err(fail("attacher must not be a leaf"));
            }
            if let Some(&u) = g
                .neighbors(attacher)
                .iter()
                .find(|&&u| !marks.is_support(u))
            {
                return Err(fail(&format!("neighbor {u} is not a support")));
            }
        }
        TreeOpKind::PathOnA => {
            if !t.in_side_a(attacher) {
                return Err(fail("attacher must be on the A side"));
            }
            if !marks.is_support(attacher) {
                return Err(fail("attacher must be a support"));
            }
        }
        TreeOpKind::PathOnB => {
            if t.in_side_a(attacher) {
                return Err(fail("attacher must be on the B side"));
            }
            if is_tree_gamma_minus_critical(t, attacher) {
                return Err(fail("attacher is deletion-critical"));
            }
        }
    }

    let mut edges: Vec<_> = g.edges().collect();
    let mut in_a = t.in_a.clone();
    let new_ids = match kind {
        TreeOpKind::LeafOnA => {
            edges.push((attacher, n));
            in_a.push(false);
            vec![n]
        }
        TreeOpKind::LeafOnB => {
            edges.push((attacher, n));
            in_a.push(true);
            vec![n]
        }
        TreeOpKind::PathOnA => {
            // New path a-b with b on the attacher: a joins A, b joins B.
            edges.push((n + 1, n));
            edges.push((n + 1, attacher));
            in_a.push(true);
            in_a.push(false);
            vec![n, n + 1]
        }
        TreeOpKind::PathOnB => {
            // New path b-a with a on the attacher: a joins A, b joins B.
            edges.push((n, n + 1));
            edges.push((n, attacher));
            in_a.push(true);
            in_a.push(false);
            vec![n, n + 1]
        }
    };
    let graph = Graph::from_edges(n + kind.adds(), &edges).expect("growth keeps the graph simple");
    Ok((
        RootedTree::with_sides(graph, in_a),
        TreeOp {
            kind,
            attacher,
            new_ids,
        },
    ))
}

/// Grows a random family member from the base edge: each step samples an
/// operation and an attacher uniformly, retrying on precondition
/// failures up to 64 times before falling back to a leaf on a random
/// A-side vertex, which is always applicable. The same seed reproduces
/// the identical labeled tree.
pub fn generate_tmax(steps: usize, rng_seed: u64) -> (RootedTree, BuildScript) {
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut tree = RootedTree::base_edge();
    let mut ops = Vec::with_capacity(steps);
    const KINDS: [TreeOpKind; 4] = [
        TreeOpKind::LeafOnA,
        TreeOpKind::LeafOnB,
        TreeOpKind::PathOnA,
        TreeOpKind::PathOnB,
    ];
    for _ in 0..steps {
        let mut done = false;
        for _ in 0..64 {
            let kind = KINDS[rng.random_range(0..4)];
            let side = match kind {
                TreeOpKind::LeafOnA | TreeOpKind::PathOnA => tree.side_a(),
                TreeOpKind::LeafOnB | TreeOpKind::PathOnB => tree.side_b(),
            };
            let attacher = side[rng.random_range(0..side.len())];
            if let Ok((next, op)) = apply_operation(&tree, kind, attacher) {
                tree = next;
                ops.push(op);
                done = true;
                break;
            }
        }
        if !done {
            let side = tree.side_a();
            let attacher = side[rng.random_range(0..side.len())];
            let (next, op) = apply_operation(&tree, TreeOpKind::LeafOnA, attacher)
                .expect("a leaf on the A side is always applicable");
            tree = next;
            ops.push(op);
        }
    }
    (tree, BuildScript { base: (0, 1), ops })
}

/// Unwinds a tree to the base edge, producing a build script over the
/// tree's own vertex ids, or reports that the tree is not a family
/// member. Replaying the script and relabeling through its recorded ids
/// reproduces the input tree exactly.
///
/// The reduction handles, in order: stars, the equal-sides corona case,
/// a smaller-side leaf (undone by a leaf or path attachment depending on
/// the neighbor's degree), and otherwise the deep end of a longest path.
/// Every emitted operation's precondition is checked in the reduced
/// tree, so a fully unwound script certifies membership on its own.
pub fn deconstruct(t: &RootedTree) -> Result<BuildScript, TreeError> {
    let n = t.vertex_count();
    if n < 2 {
        return Err(TreeError::TooSmall(n));
    }

    // Fixed two-coloring, normalized so the A class is not larger.
    let mut in_a: Vec<bool> = (0..n).map(|v| t.in_side_a(v)).collect();
    let mut a_count = in_a.iter().filter(|&&x| x).count();
    let mut b_count = n - a_count;
    if a_count > b_count {
        for x in &mut in_a {
            *x = !*x;
        }
        std::mem::swap(&mut a_count, &mut b_count);
    }

    let mut adj: Vec<BTreeSet<VertexId>> = vec![BTreeSet::new(); n];
    for (u, v) in t.graph().edges() {
        adj[u].insert(v);
        adj[v].insert(u);
    }
    let mut alive: Vec<bool> = vec![true; n];
    let mut alive_count = n;
    let mut reversed_ops: Vec<TreeOp> = Vec::new();

    // Domination number of the alive forest, optionally without one more
    // vertex, by the DP over the shrinking adjacency structure.
    let gamma_alive = |adj: &Vec<BTreeSet<VertexId>>, alive: &Vec<bool>, skip: Option<VertexId>| {
        let neighbors = |v: VertexId| {
            adj[v]
                .iter()
                .copied()
                .filter(|&u| alive[u] && Some(u) != skip)
                .collect::<Vec<_>>()
        };
        let mut seen: Vec<bool> = alive.iter().map(|&a| !a).collect();
        if let Some(s) = skip {
            seen[s] = true;
        }
        let mut parent = vec![usize::MAX; adj.len()];
        let mut total = 0;
        for root in 0..adj.len() {
            if !seen[root] {
                let dp = component_dp(&neighbors, root, &mut seen, &mut parent);
                total += dp.cost[root][0].min(dp.cost[root][1]);
            }
        }
        total
    };

    while alive_count > 2 {
        let deg = |v: VertexId, adj: &Vec<BTreeSet<VertexId>>| adj[v].len();
        let is_leaf = |v: VertexId, adj: &Vec<BTreeSet<VertexId>>| adj[v].len() == 1;
        let is_support = |v: VertexId, adj: &Vec<BTreeSet<VertexId>>| {
            adj[v].iter().any(|&u| adj[u].len() == 1)
        };
        let remove = |v: VertexId, adj: &mut Vec<BTreeSet<VertexId>>| {
            let nbrs: Vec<_> = adj[v].iter().copied().collect();
            for u in nbrs {
                adj[u].remove(&v);
            }
            adj[v].clear();
        };

        // Star: peel the smallest leaf off the center, which sits alone
        // on the A side.
        let center = (0..n).find(|&v| alive[v] && deg(v, &adj) == alive_count - 1);
        if let Some(center) = center {
            if !in_a[center] {
                return Err(TreeError::NotMember);
            }
            let leaf = (0..n)
                .find(|&v| alive[v] && v != center)
                .expect("a star has leaves");
            reversed_ops.push(TreeOp {
                kind: TreeOpKind::LeafOnA,
                attacher: center,
                new_ids: vec![leaf],
            });
            remove(leaf, &mut adj);
            alive[leaf] = false;
            alive_count -= 1;
            b_count -= 1;
            continue;
        }

        if a_count == b_count {
            // Equal sides: only coronas survive; drop a degree-two
            // support together with its leaf and reattach as a path.
            let corona = (0..n).filter(|&v| alive[v]).all(|v| {
                is_leaf(v, &adj) || adj[v].iter().filter(|&&u| is_leaf(u, &adj)).count() == 1
            });
            if !corona {
                return Err(TreeError::NotMember);
            }
            let v = (0..n)
                .find(|&v| {
                    alive[v]
                        && deg(v, &adj) == 2
                        && adj[v].iter().filter(|&&u| is_leaf(u, &adj)).count() == 1
                })
                .ok_or(TreeError::NotMember)?;
            let leaf = *adj[v].iter().find(|&&u| is_leaf(u, &adj)).expect("checked");
            let other = *adj[v].iter().find(|&&u| !is_leaf(u, &adj)).expect("degree two");

            remove(leaf, &mut adj);
            remove(v, &mut adj);
            alive[leaf] = false;
            alive[v] = false;
            alive_count -= 2;
            a_count -= 1;
            b_count -= 1;

            if in_a[other] {
                // Path on an A-side support.
                if !is_support(other, &adj) {
                    return Err(TreeError::NotMember);
                }
                let (a, b) = if in_a[leaf] { (leaf, v) } else { (v, leaf) };
                debug_assert!(in_a[a] && !in_a[b]);
                reversed_ops.push(TreeOp {
                    kind: TreeOpKind::PathOnA,
                    attacher: other,
                    new_ids: vec![a, b],
                });
            } else {
                if gamma_alive(&adj, &alive, Some(other)) < gamma_alive(&adj, &alive, None) {
                    return Err(TreeError::NotMember);
                }
                let (a, b) = if in_a[v] { (v, leaf) } else { (leaf, v) };
                debug_assert!(in_a[a] && !in_a[b]);
                reversed_ops.push(TreeOp {
                    kind: TreeOpKind::PathOnB,
                    attacher: other,
                    new_ids: vec![a, b],
                });
            }
            continue;
        }

        // Strictly smaller A side. First try an A-side leaf.
        let a_leaf = (0..n).find(|&v| alive[v] && in_a[v] && is_leaf(v, &adj));
        if let Some(v) = a_leaf {
            let v1 = *adj[v].iter().next().expect("leaf neighbor");
            debug_assert!(!in_a[v1]);
            if deg(v1, &adj) >= 3 {
                // Undo a leaf on the B side: afterwards every neighbor of
                // the attacher must be a support and the attacher no leaf.
                remove(v, &mut adj);
                alive[v] = false;
                alive_count -= 1;
                a_count -= 1;
                if is_leaf(v1, &adj) || adj[v1].iter().any(|&u| !is_support(u, &adj)) {
                    return Err(TreeError::NotMember);
                }
                reversed_ops.push(TreeOp {
                    kind: TreeOpKind::LeafOnB,
                    attacher: v1,
                    new_ids: vec![v],
                });
            } else {
                // The neighbor has degree two: undo a path hung on its
                // other neighbor, which must be an A-side support.
                let u = *adj[v1].iter().find(|&&x| x != v).expect("degree two");
                debug_assert!(in_a[u]);
                remove(v, &mut adj);
                remove(v1, &mut adj);
                alive[v] = false;
                alive[v1] = false;
                alive_count -= 2;
                a_count -= 1;
                b_count -= 1;
                if !is_support(u, &adj) {
                    return Err(TreeError::NotMember);
                }
                reversed_ops.push(TreeOp {
                    kind: TreeOpKind::PathOnA,
                    attacher: u,
                    new_ids: vec![v, v1],
                });
            }
            continue;
        }

        // No A-side leaves: work at the deep end of a longest path.
        let bfs = |from: VertexId, adj: &Vec<BTreeSet<VertexId>>| {
            let mut dist = vec![usize::MAX; n];
            let mut from_parent = vec![usize::MAX; n];
            dist[from] = 0;
            let mut queue = std::collections::VecDeque::from([from]);
            let mut far = from;
            while let Some(u) = queue.pop_front() {
                if dist[u] > dist[far] {
                    far = u;
                }
                for &w in &adj[u] {
                    if alive[w] && dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        from_parent[w] = u;
                        queue.push_back(w);
                    }
                }
            }
            (far, from_parent)
        };
        let start = (0..n).find(|&v| alive[v]).expect("tree is nonempty");
        let (x0, _) = bfs(start, &adj);
        let (far, parents) = bfs(x0, &adj);
        let mut path = vec![far];
        while *path.last().unwrap() != x0 {
            path.push(parents[*path.last().unwrap()]);
        }
        // path runs far -> x0; the deep end is x0.
        let x0 = *path.last().unwrap();
        let x1 = path[path.len() - 2];
        debug_assert!(!in_a[x0] && is_leaf(x0, &adj) && in_a[x1]);

        if deg(x1, &adj) > 2 {
            reversed_ops.push(TreeOp {
                kind: TreeOpKind::LeafOnA,
                attacher: x1,
                new_ids: vec![x0],
            });
            remove(x0, &mut adj);
            alive[x0] = false;
            alive_count -= 1;
            b_count -= 1;
        } else {
            let x2 = path[path.len() - 3];
            debug_assert!(!in_a[x2]);
            remove(x0, &mut adj);
            remove(x1, &mut adj);
            alive[x0] = false;
            alive[x1] = false;
            alive_count -= 2;
            a_count -= 1;
            b_count -= 1;
            if gamma_alive(&adj, &alive, Some(x2)) < gamma_alive(&adj, &alive, None) {
                return Err(TreeError::NotMember);
            }
            reversed_ops.push(TreeOp {
                kind: TreeOpKind::PathOnB,
                attacher: x2,
                new_ids: vec![x1, x0],
            });
        }
    }

    let survivors: Vec<_> = (0..n).filter(|&v| alive[v]).collect();
    debug_assert_eq!(survivors.len(), 2);
    let (p, q) = (survivors[0], survivors[1]);
    let base = if in_a[p] { (p, q) } else { (q, p) };
    reversed_ops.reverse();
    Ok(BuildScript {
        base,
        ops: reversed_ops,
    })
}

/// Direct membership test from the two tree conditions: supports on the
/// larger side must be weak with all non-leaf neighbors supports, and no
/// free larger-side vertex may see two smaller-side vertices that are
/// not supports. Equal sides reduce to the corona test.
pub fn check_tree_conditions(t: &RootedTree) -> Result<Verdict, TreeError> {
    let n = t.vertex_count();
    if n < 2 {
        return Err(TreeError::TooSmall(n));
    }
    let g = t.graph();
    let marks = g.structural_marks();

    let mut in_a: Vec<bool> = (0..n).map(|v| t.in_side_a(v)).collect();
    let a_count = in_a.iter().filter(|&&x| x).count();
    if a_count > n - a_count {
        for x in &mut in_a {
            *x = !*x;
        }
    }
    let side_a: Vec<_> = (0..n).filter(|&v| in_a[v]).collect();
    let mut pair_checks = 0u64;

    if side_a.len() * 2 == n {
        return Ok(if g.is_corona() {
            Verdict {
                member: true,
                certificate: crate::recognition::Certificate::WitnessGammaSet {
                    vertices: side_a,
                },
                pair_checks,
            }
        } else {
            let offender = (0..n).find(|&v| !marks.is_leaf(v) && !marks.is_weak_support(v));
            Verdict {
                member: false,
                certificate: crate::recognition::Certificate::ViolatedCondition {
                    rule: Rule::CoronaOrC4,
                    vertices: offender.into_iter().collect(),
                },
                pair_checks,
            }
        });
    }

    for (v, &on_a) in in_a.iter().enumerate() {
        if on_a || !marks.is_support(v) {
            continue;
        }
        if !marks.is_weak_support(v) {
            return Ok(Verdict {
                member: false,
                certificate: crate::recognition::Certificate::ViolatedCondition {
                    rule: Rule::WeakSupport,
                    vertices: vec![v],
                },
                pair_checks,
            });
        }
        if let Some(&u) = g
            .neighbors(v)
            .iter()
            .find(|&&u| !marks.is_leaf(u) && !marks.is_support(u))
        {
            return Ok(Verdict {
                member: false,
                certificate: crate::recognition::Certificate::ViolatedCondition {
                    rule: Rule::WeakSupport,
                    vertices: vec![v, u],
                },
                pair_checks,
            });
        }
    }

    for z in 0..n {
        if in_a[z] || marks.is_leaf(z) || marks.is_support(z) {
            continue;
        }
        pair_checks += 1;
        let hits: Vec<_> = g
            .neighbors(z)
            .iter()
            .copied()
            .filter(|&x| in_a[x] && !marks.is_support(x))
            .take(2)
            .collect();
        if hits.len() > 1 {
            return Ok(Verdict {
                member: false,
                certificate: crate::recognition::Certificate::ViolatedCondition {
                    rule: Rule::PairWitness,
                    vertices: hits,
                },
                pair_checks,
            });
        }
    }

    Ok(Verdict {
        member: true,
        certificate: crate::recognition::Certificate::WitnessGammaSet { vertices: side_a },
        pair_checks,
    })
}
