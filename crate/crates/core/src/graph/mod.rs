//! Finite simplicial graphs.
//!
//! A [`Graph`] stores its vertex labels in lexicographic order, so the dense
//! index of a vertex is also its rank in label order. All tie-breaking in the
//! crate ("first edge", "least pair", "neighbors in order") goes through this
//! index order.
//!
//! Most operations come in two flavours: a label-facing method on [`Graph`]
//! that validates its input, and a `*_within` variant working on a
//! [`VertexSet`] mask of the same graph. The mask variants never allocate a
//! new graph and are what the exhaustive sweeps use.

mod builders;
mod io;
mod set;

use std::collections::VecDeque;
use std::fmt;
use std::sync::Arc;

pub use builders::{cycle_graph, cycle_on, disjoint_union, join, path_graph, path_on};
pub use io::{parse_edge_list, parse_graph6, parse_graphs, to_edge_list, to_graph6};
pub use set::{VertexSet, MAX_VERTICES};

use crate::error::{Error, Result};

/// Graph distance. `Infinite` separates vertices in different components and
/// orders after every finite value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Finite(u32),
    Infinite,
}

impl Distance {
    pub fn finite(self) -> Option<u32> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Infinite => None,
        }
    }

    pub fn is_at_least(self, k: u32) -> bool {
        match self {
            Distance::Finite(d) => d >= k,
            Distance::Infinite => true,
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => f.write_str("inf"),
        }
    }
}

/// An edge `{a, b}` given by vertex indices with `a < b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    a: usize,
    b: usize,
}

impl Edge {
    pub fn new(g: &Graph, u: &str, v: &str) -> Result<Edge> {
        let (a, b) = (g.index_of(u)?, g.index_of(v)?);
        Edge::from_indices(g, a, b)
    }

    pub fn from_indices(g: &Graph, a: usize, b: usize) -> Result<Edge> {
        if !g.has_edge(a, b) {
            return Err(Error::input(format!(
                "{{{}, {}}} is not an edge",
                g.label(a),
                g.label(b)
            )));
        }
        Ok(Edge::unchecked(a, b))
    }

    pub(crate) fn unchecked(a: usize, b: usize) -> Edge {
        debug_assert_ne!(a, b);
        Edge {
            a: a.min(b),
            b: a.max(b),
        }
    }

    pub fn endpoints(self) -> (usize, usize) {
        (self.a, self.b)
    }

    pub fn as_set(self) -> VertexSet {
        VertexSet::singleton(self.a).with(self.b)
    }

    pub fn labels(self, g: &Graph) -> (String, String) {
        (g.label(self.a).to_owned(), g.label(self.b).to_owned())
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    labels: Arc<[String]>,
    adj: Vec<VertexSet>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self
            .edges()
            .into_iter()
            .map(|e| format!("{}-{}", self.label(e.a), self.label(e.b)))
            .collect();
        f.debug_struct("Graph")
            .field("vertices", &&*self.labels)
            .field("edges", &edges)
            .finish()
    }
}

impl Graph {
    /// Builds a graph from vertex labels and label pairs.
    ///
    /// Rejects duplicate labels, self-loops and edges with unlisted endpoints.
    /// Repeated edges are merged.
    pub fn new<V, S, E, A, B>(vertices: V, edges: E) -> Result<Graph>
    where
        V: IntoIterator<Item = S>,
        S: Into<String>,
        E: IntoIterator<Item = (A, B)>,
        A: AsRef<str>,
        B: AsRef<str>,
    {
        let mut labels: Vec<String> = vertices.into_iter().map(Into::into).collect();
        labels.sort();
        if let Some(w) = labels.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::input(format!("duplicate vertex `{}`", w[0])));
        }
        if labels.len() > MAX_VERTICES {
            return Err(Error::input(format!(
                "{} vertices exceeds the supported maximum of {MAX_VERTICES}",
                labels.len()
            )));
        }
        if let Some(bad) = labels
            .iter()
            .find(|l| l.is_empty() || l.contains(char::is_whitespace))
        {
            return Err(Error::input(format!("invalid vertex label {bad:?}")));
        }
        let mut g = Graph {
            adj: vec![VertexSet::EMPTY; labels.len()],
            labels: labels.into(),
        };
        for (u, v) in edges {
            let (a, b) = (g.index_of(u.as_ref())?, g.index_of(v.as_ref())?);
            if a == b {
                return Err(Error::input(format!("self-loop at `{}`", g.label(a))));
            }
            g.adj[a].insert(b);
            g.adj[b].insert(a);
        }
        Ok(g)
    }

    /// Graph on pre-sorted shared labels with a symmetric adjacency.
    pub(crate) fn from_parts(labels: Arc<[String]>, adj: Vec<VertexSet>) -> Graph {
        debug_assert!(labels.windows(2).all(|w| w[0] < w[1]));
        debug_assert_eq!(labels.len(), adj.len());
        debug_assert!((0..adj.len())
            .all(|i| !adj[i].contains(i) && adj[i].iter().all(|j| adj[j].contains(i))));
        Graph { labels, adj }
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .binary_search_by(|l| l.as_str().cmp(label))
            .map_err(|_| Error::UnknownVertex(label.to_owned()))
    }

    pub fn vertex_set<S: AsRef<str>>(
        &self,
        labels: impl IntoIterator<Item = S>,
    ) -> Result<VertexSet> {
        labels
            .into_iter()
            .map(|l| self.index_of(l.as_ref()))
            .collect()
    }

    pub fn labels_of(&self, set: VertexSet) -> Vec<String> {
        set.iter().map(|i| self.labels[i].clone()).collect()
    }

    pub fn all(&self) -> VertexSet {
        VertexSet::full(self.order())
    }

    #[inline]
    pub fn neighbors(&self, i: usize) -> VertexSet {
        self.adj[i]
    }

    #[inline]
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.order() && self.adj[a].contains(b)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|s| s.len()).sum::<usize>() / 2
    }

    /// All edges, sorted by (smaller endpoint, larger endpoint).
    pub fn edges(&self) -> Vec<Edge> {
        (0..self.order())
            .flat_map(|a| {
                (self.adj[a] - VertexSet::full(a + 1))
                    .iter()
                    .map(move |b| Edge { a, b })
            })
            .collect()
    }

    fn check_subset(&self, a: VertexSet) -> Result<()> {
        if a.is_subset(self.all()) {
            Ok(())
        } else {
            Err(Error::input("vertex set is not contained in the graph"))
        }
    }

    pub fn complement(&self) -> Graph {
        let all = self.all();
        let adj = (0..self.order())
            .map(|i| (all - self.adj[i]).without(i))
            .collect();
        Graph {
            labels: self.labels.clone(),
            adj,
        }
    }

    /// Neighbours of `i` in the complement graph.
    #[inline]
    pub fn co_neighbors(&self, i: usize) -> VertexSet {
        (self.all() - self.adj[i]).without(i)
    }

    /// The subgraph induced by `a`.
    pub fn induced(&self, a: VertexSet) -> Result<Graph> {
        self.check_subset(a)?;
        let keep: Vec<usize> = a.iter().collect();
        let mut position = vec![usize::MAX; self.order()];
        for (new, &old) in keep.iter().enumerate() {
            position[old] = new;
        }
        let labels: Vec<String> = keep.iter().map(|&i| self.labels[i].clone()).collect();
        let adj = keep
            .iter()
            .map(|&i| (self.adj[i] & a).iter().map(|j| position[j]).collect())
            .collect();
        Ok(Graph {
            labels: labels.into(),
            adj,
        })
    }

    /// Deletes one vertex.
    pub fn remove_vertex(&self, i: usize) -> Graph {
        self.induced(self.all().without(i))
            .expect("subset of own vertices")
    }

    /// `St(a)`: `a` together with every vertex adjacent to a member of `a`.
    pub fn star(&self, a: VertexSet) -> Result<VertexSet> {
        self.check_subset(a)?;
        if a.is_empty() {
            return Err(Error::input("star of the empty set"));
        }
        Ok(self.star_within(a, self.all()))
    }

    /// Star of `a` inside the subgraph induced by `within`.
    #[inline]
    pub fn star_within(&self, a: VertexSet, within: VertexSet) -> VertexSet {
        let mut s = a;
        for v in a {
            s |= self.adj[v];
        }
        s & within
    }

    /// Star of `a` in the complement graph, restricted to `within`.
    #[inline]
    pub fn co_star_within(&self, a: VertexSet, within: VertexSet) -> VertexSet {
        let mut s = a;
        for v in a {
            s |= self.co_neighbors(v);
        }
        s & within
    }

    /// `a` dominates `b` iff `b ⊆ St(a)`. The empty set dominates only the
    /// empty set.
    pub fn dominates(&self, a: VertexSet, b: VertexSet) -> bool {
        b.is_subset(self.star_within(a, self.all()))
    }

    /// Connected components, each listed by its vertex set, ordered by least
    /// member.
    pub fn components(&self) -> Vec<VertexSet> {
        self.components_within(self.all(), false)
    }

    fn components_within(&self, within: VertexSet, complement: bool) -> Vec<VertexSet> {
        let mut rest = within;
        let mut out = Vec::new();
        while let Some(seed) = rest.first() {
            let comp = self.reach(seed, within, complement);
            rest = rest - comp;
            out.push(comp);
        }
        out
    }

    /// Vertices reachable from `seed` inside `within`, walking edges of the
    /// graph or of its complement.
    #[inline]
    fn reach(&self, seed: usize, within: VertexSet, complement: bool) -> VertexSet {
        let mut seen = VertexSet::singleton(seed);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for v in frontier {
                next |= if complement {
                    self.co_neighbors(v)
                } else {
                    self.adj[v]
                };
            }
            frontier = next & within & !seen;
            seen |= frontier;
        }
        seen
    }

    /// Whether the subgraph induced by `within` is connected. The empty
    /// graph has zero components and is not connected.
    #[inline]
    pub fn connected_within(&self, within: VertexSet) -> bool {
        match within.first() {
            None => false,
            Some(seed) => self.reach(seed, within, false) == within,
        }
    }

    /// Whether the complement of the subgraph induced by `within` is
    /// connected.
    #[inline]
    pub fn co_connected_within(&self, within: VertexSet) -> bool {
        match within.first() {
            None => false,
            Some(seed) => self.reach(seed, within, true) == within,
        }
    }

    #[inline]
    pub fn biconnected_within(&self, within: VertexSet) -> bool {
        self.connected_within(within) && self.co_connected_within(within)
    }

    pub fn is_connected(&self) -> bool {
        self.connected_within(self.all())
    }

    /// Both the graph and its complement are connected.
    pub fn is_biconnected(&self) -> bool {
        self.biconnected_within(self.all())
    }

    /// Biconnected with at least two vertices.
    pub fn is_nontrivial_biconnected(&self) -> bool {
        self.order() >= 2 && self.is_biconnected()
    }

    /// BFS levels from `src` inside `within` (optionally in the complement).
    /// Unreached vertices get `u32::MAX`.
    pub fn bfs_within(&self, src: usize, within: VertexSet, complement: bool) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.order()];
        if !within.contains(src) {
            return dist;
        }
        dist[src] = 0;
        let mut queue = VecDeque::from([src]);
        let mut seen = VertexSet::singleton(src);
        while let Some(v) = queue.pop_front() {
            let nbrs = if complement {
                self.co_neighbors(v)
            } else {
                self.adj[v]
            };
            for w in nbrs & within & !seen {
                seen.insert(w);
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
        dist
    }

    pub fn distance(&self, u: &str, v: &str) -> Result<Distance> {
        let (a, b) = (self.index_of(u)?, self.index_of(v)?);
        Ok(self.distance_idx(a, b))
    }

    pub fn distance_idx(&self, a: usize, b: usize) -> Distance {
        match self.bfs_within(a, self.all(), false)[b] {
            u32::MAX => Distance::Infinite,
            d => Distance::Finite(d),
        }
    }

    /// Diameter of the subgraph induced by `within` (or of its complement).
    /// Zero for at most one vertex.
    pub fn diameter_within(&self, within: VertexSet, complement: bool) -> Distance {
        let mut best = 0;
        for v in within {
            let dist = self.bfs_within(v, within, complement);
            for w in within {
                match dist[w] {
                    u32::MAX => return Distance::Infinite,
                    d => best = best.max(d),
                }
            }
        }
        Distance::Finite(best)
    }

    pub fn diameter(&self) -> Distance {
        self.diameter_within(self.all(), false)
    }

    /// Vertices whose deletion disconnects the graph.
    pub fn cut_vertices(&self) -> Result<VertexSet> {
        if !self.is_connected() {
            return Err(Error::input(
                "cut vertices requested for a disconnected graph",
            ));
        }
        let all = self.all();
        Ok(all
            .iter()
            .filter(|&v| {
                let rest = all.without(v);
                !rest.is_empty() && !self.connected_within(rest)
            })
            .collect())
    }
}
