//! Immutable simple undirected graphs and the set predicates (independence,
//! clique, neighborhood, proper coloring) everything else builds on.
//!
//! Vertices are dense 0-indexed integers. External 1-indexed formats (DIMACS)
//! are translated at the I/O boundary. Graphs never mutate; "removing" a set
//! of vertices is expressed as [`Graph::induced_subgraph`] on the complement
//! set, which carries an index map back to the parent ids.

use std::fmt;

// ============================================================================
// Errors
// ============================================================================

/// Errors from graph construction and vertex-indexed queries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphError {
    /// An edge joins a vertex to itself.
    SelfLoop { vertex: usize },
    /// A vertex id is outside `0..n`.
    VertexOutOfRange { vertex: usize, n: usize },
    /// A coloring does not assign exactly one color per vertex.
    ColoringLengthMismatch { expected: usize, got: usize },
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::SelfLoop { vertex } => write!(f, "self-loop at vertex {vertex}"),
            GraphError::VertexOutOfRange { vertex, n } => {
                write!(f, "vertex {vertex} out of range for graph on {n} vertices")
            }
            GraphError::ColoringLengthMismatch { expected, got } => {
                write!(f, "coloring assigns {got} vertices, graph has {expected}")
            }
        }
    }
}

impl std::error::Error for GraphError {}

// ============================================================================
// VertexSet
// ============================================================================

/// A sorted, duplicate-free set of vertex ids.
///
/// The ids are only meaningful against the graph the set is interpreted with;
/// operations taking a `VertexSet` check membership against their own vertex
/// range.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VertexSet {
    members: Vec<usize>,
}

impl VertexSet {
    /// The empty set.
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(v: usize) -> Self {
        Self { members: vec![v] }
    }

    /// Builds a set from arbitrary ids; sorts and removes duplicates.
    pub fn from_vec(mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        Self { members }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.members
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.members
    }

    /// Set union (both operands stay sorted, so this is a merge).
    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut out = Vec::with_capacity(self.len() + other.len());
        let (mut a, mut b) = (
            self.members.iter().peekable(),
            other.members.iter().peekable(),
        );
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&x), Some(&&y)) if x < y => {
                    out.push(x);
                    a.next();
                }
                (Some(&&x), Some(&&y)) if x > y => {
                    out.push(y);
                    b.next();
                }
                (Some(&&x), Some(_)) => {
                    out.push(x);
                    a.next();
                    b.next();
                }
                (Some(&&x), None) => {
                    out.push(x);
                    a.next();
                }
                (None, Some(&&y)) => {
                    out.push(y);
                    b.next();
                }
                (None, None) => break,
            }
        }
        VertexSet { members: out }
    }

    /// Members of `self` that are not in `other`.
    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        VertexSet {
            members: self
                .members
                .iter()
                .copied()
                .filter(|&v| !other.contains(v))
                .collect(),
        }
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        Self::from_vec(iter.into_iter().collect())
    }
}

// ============================================================================
// Graph
// ============================================================================

/// An immutable simple undirected graph.
///
/// Invariants, established at construction and never broken afterwards:
/// - no self-loops, no duplicate edges;
/// - the edge list is canonical (`u < v`, sorted);
/// - per-vertex adjacency lists are sorted and symmetric with the edge list;
/// - all endpoints are `< n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph on `n` vertices from an edge list.
    ///
    /// Duplicate pairs and reversed duplicates collapse to one edge. Rejects
    /// self-loops and out-of-range endpoints.
    pub fn new(n: usize, edge_pairs: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut edges = Vec::with_capacity(edge_pairs.len());
        for &(a, b) in edge_pairs {
            if a == b {
                return Err(GraphError::SelfLoop { vertex: a });
            }
            let bad = if a >= n {
                Some(a)
            } else if b >= n {
                Some(b)
            } else {
                None
            };
            if let Some(vertex) = bad {
                return Err(GraphError::VertexOutOfRange { vertex, n });
            }
            edges.push((a.min(b), a.max(b)));
        }
        edges.sort_unstable();
        edges.dedup();

        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph { n, edges, adj })
    }

    /// Graph on `n` vertices with no edges.
    pub fn edgeless(n: usize) -> Graph {
        Graph {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    /// Complete graph K_n.
    pub fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in (u + 1)..n {
                edges.push((u, v));
            }
        }
        Graph::new(n, &edges).expect("complete graph is always valid")
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of edges.
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Canonical edge list (`u < v`, sorted).
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Sorted neighbor list of `v`.
    ///
    /// # Panics
    /// Panics if `v >= n`.
    pub fn adjacency(&self, v: usize) -> &[usize] {
        assert!(
            v < self.n,
            "vertex {v} out of range for graph on {} vertices",
            self.n
        );
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency(v).len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        assert!(u < self.n && v < self.n, "endpoint out of range");
        self.adj[u].binary_search(&v).is_ok()
    }

    /// All vertices `0..n` as a set.
    pub fn vertex_set(&self) -> VertexSet {
        VertexSet {
            members: (0..self.n).collect(),
        }
    }

    /// The open neighborhood N(v): vertices adjacent to `v`, excluding `v`.
    ///
    /// # Panics
    /// Panics if `v >= n`.
    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet {
            members: self.adjacency(v).to_vec(),
        }
    }

    /// The non-neighborhood of a set: vertices not in `set` and not adjacent
    /// to any of its members.
    pub fn non_neighborhood(&self, set: &VertexSet) -> VertexSet {
        self.check_set(set);
        let members = (0..self.n)
            .filter(|&v| {
                !set.contains(v) && !set.iter().any(|u| self.adj[u].binary_search(&v).is_ok())
            })
            .collect();
        VertexSet { members }
    }

    /// Subgraph induced by `set`, plus the map from subgraph ids back to the
    /// parent's ids (`map[local] == parent`).
    pub fn induced_subgraph(&self, set: &VertexSet) -> (Graph, Vec<usize>) {
        self.check_set(set);
        let map: Vec<usize> = set.as_slice().to_vec();
        let mut local = vec![usize::MAX; self.n];
        for (i, &v) in map.iter().enumerate() {
            local[v] = i;
        }
        let mut edges = Vec::new();
        for &(u, v) in &self.edges {
            if local[u] != usize::MAX && local[v] != usize::MAX {
                edges.push((local[u], local[v]));
            }
        }
        let sub = Graph::new(map.len(), &edges).expect("induced edges are valid by construction");
        (sub, map)
    }

    /// True iff no edge of the graph has both endpoints in `set`.
    pub fn is_independent(&self, set: &VertexSet) -> bool {
        self.check_set(set);
        set.iter()
            .all(|v| self.adj[v].iter().all(|&u| !set.contains(u)))
    }

    /// True iff every pair in `set` is adjacent. The empty set and singletons
    /// are cliques.
    pub fn is_clique(&self, set: &VertexSet) -> bool {
        self.check_set(set);
        let members = set.as_slice();
        for (i, &u) in members.iter().enumerate() {
            for &v in &members[i + 1..] {
                if !self.has_edge(u, v) {
                    return false;
                }
            }
        }
        true
    }

    /// True iff `colors` (one entry per vertex) gives every edge differently
    /// colored endpoints. A partial coloring is rejected as an error, which is
    /// distinct from returning `false`.
    pub fn is_proper_coloring(&self, colors: &[usize]) -> Result<bool, GraphError> {
        if colors.len() != self.n {
            return Err(GraphError::ColoringLengthMismatch {
                expected: self.n,
                got: colors.len(),
            });
        }
        Ok(self.edges.iter().all(|&(u, v)| colors[u] != colors[v]))
    }

    /// True iff the graph is 2-colorable (every component admits a BFS
    /// 2-partition). Edgeless graphs and the empty graph are bipartite.
    pub fn is_bipartite(&self) -> bool {
        let mut side = vec![u8::MAX; self.n];
        let mut queue = std::collections::VecDeque::new();
        for start in 0..self.n {
            if side[start] != u8::MAX {
                continue;
            }
            side[start] = 0;
            queue.push_back(start);
            while let Some(v) = queue.pop_front() {
                for &u in &self.adj[v] {
                    if side[u] == u8::MAX {
                        side[u] = 1 - side[v];
                        queue.push_back(u);
                    } else if side[u] == side[v] {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn check_set(&self, set: &VertexSet) {
        if let Some(&last) = set.as_slice().last() {
            assert!(
                last < self.n,
                "vertex {last} out of range for graph on {} vertices",
                self.n
            );
        }
    }
}

// ============================================================================
// Tests
// ============================================================================
