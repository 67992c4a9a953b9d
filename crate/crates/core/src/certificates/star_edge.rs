//! Edges whose star induces a biconnected subgraph ("star-edges").
//!
//! Three finders: a direct scan, a diameter-based construction for graphs
//! with a long geodesic on either side, and an inductive construction that
//! deletes one vertex at a time. All of them operate on a vertex mask of a
//! fixed graph so the inductive steps never build new graphs.

use super::loxodromic::require_nontrivial_biconnected;
use crate::error::{Error, Result};
use crate::graph::{Distance, Edge, Graph, VertexSet};

/// Whether `Γ[St(e)]` is biconnected.
#[inline]
pub fn is_star_edge(graph: &Graph, e: Edge) -> bool {
    is_star_edge_within(graph, e, graph.all())
}

#[inline]
fn is_star_edge_within(graph: &Graph, e: Edge, active: VertexSet) -> bool {
    graph.biconnected_within(graph.star_within(e.as_set(), active))
}

fn edges_within(graph: &Graph, active: VertexSet) -> impl Iterator<Item = Edge> + '_ {
    active.iter().flat_map(move |a| {
        (graph.neighbors(a) & active)
            .iter()
            .filter(move |&b| b > a)
            .map(move |b| Edge::unchecked(a, b))
    })
}

/// Every star-edge, in edge order.
pub fn qualifying_star_edges(graph: &Graph) -> Vec<Edge> {
    edges_within(graph, graph.all())
        .filter(|&e| is_star_edge(graph, e))
        .collect()
}

/// First star-edge in edge order.
pub fn find_star_edge_scan(graph: &Graph) -> Result<Edge> {
    require_nontrivial_biconnected(graph)?;
    edges_within(graph, graph.all())
        .find(|&e| is_star_edge(graph, e))
        .ok_or_else(|| Error::Invariant("biconnected graph without a star-edge".into()))
}

/// Star-edge for a biconnected graph whose diameter, or whose complement's
/// diameter, is at least 3.
///
/// With a complement pair at distance ≥ 3 the pair itself is an edge whose
/// star is everything. Otherwise the middle edge of a geodesic of length 3 is
/// returned.
pub fn diam3_star_edge(graph: &Graph) -> Result<Edge> {
    require_nontrivial_biconnected(graph)?;
    diam3_within(graph, graph.all())
}

fn diam3_within(graph: &Graph, active: VertexSet) -> Result<Edge> {
    // Least pair far apart in the complement.
    for a in active {
        let dist = graph.bfs_within(a, active, true);
        if let Some(b) = active.iter().find(|&b| b > a && dist[b] >= 3) {
            return Ok(Edge::unchecked(a, b));
        }
    }
    // Least pair at distance 3 in the graph, then a geodesic through it.
    for a in active {
        let from_a = graph.bfs_within(a, active, false);
        if let Some(d) = active.iter().find(|&d| d > a && from_a[d] == 3) {
            let from_d = graph.bfs_within(d, active, false);
            let b = (graph.neighbors(a) & active)
                .iter()
                .find(|&b| from_d[b] == 2)
                .ok_or_else(|| Error::Invariant("geodesic second vertex missing".into()))?;
            let c = (graph.neighbors(b) & graph.neighbors(d) & active)
                .first()
                .ok_or_else(|| Error::Invariant("geodesic third vertex missing".into()))?;
            return Ok(Edge::unchecked(b, c));
        }
    }
    Err(Error::precondition(
        "both the graph and its complement have diameter at most 2",
    ))
}

/// Star-edge built by induction on the number of vertices.
///
/// Deletes the least vertex `v0`. If the rest is not biconnected, one side
/// has a cut vertex and so a long geodesic, and [`diam3_star_edge`] applies.
/// Otherwise recurse to get `e0`; keep it unless `v0` dominates its star, in
/// which case use `{v0, v4}` for a path `(v0, v4, v3)` with `v3` at distance
/// 2 from `v0` outside that star.
pub fn find_star_edge_constructive(graph: &Graph) -> Result<Edge> {
    require_nontrivial_biconnected(graph)?;
    constructive_within(graph, graph.all())
}

fn constructive_within(graph: &Graph, active: VertexSet) -> Result<Edge> {
    if active.len() <= 4 {
        return diam3_within(graph, active);
    }
    let v0 = active.first().expect("nonempty");
    let rest = active.without(v0);
    if !graph.biconnected_within(rest) {
        return diam3_within(graph, active);
    }
    let e0 = constructive_within(graph, rest)?;
    let star0 = graph.star_within(e0.as_set(), rest);
    let v0_star = graph.star_within(VertexSet::singleton(v0), active);
    if !star0.is_subset(v0_star) {
        return Ok(e0);
    }
    let dist = graph.bfs_within(v0, active, false);
    let v3 = (active - star0)
        .iter()
        .find(|&v| dist[v] == 2)
        .ok_or_else(|| Error::Invariant("no vertex at distance 2 outside the star".into()))?;
    let v4 = (graph.neighbors(v0) & graph.neighbors(v3) & active)
        .first()
        .ok_or_else(|| Error::Invariant("no common neighbour on a length-2 path".into()))?;
    Ok(Edge::unchecked(v0, v4))
}

/// Whether the diameter-based finder applies.
pub fn has_long_geodesic(graph: &Graph) -> bool {
    graph.diameter().is_at_least(3)
        || graph.diameter_within(graph.all(), true) >= Distance::Finite(3)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::graph::{cycle_graph, path_graph};

    fn labels(g: &Graph, es: &[Edge]) -> Vec<(String, String)> {
        es.iter().map(|e| e.labels(g)).collect()
    }

    fn pair(a: &str, b: &str) -> (String, String) {
        (a.into(), b.into())
    }

    #[test]
    fn p6_qualifying_set() {
        let g = path_graph(6);
        assert_eq!(
            labels(&g, &qualifying_star_edges(&g)),
            [pair("v2", "v3"), pair("v3", "v4"), pair("v4", "v5")]
        );
        let e = find_star_edge_scan(&g).unwrap();
        assert_eq!(e.labels(&g), pair("v2", "v3"));
        assert_eq!(diam3_star_edge(&g).unwrap().labels(&g), pair("v2", "v3"));
    }

    #[test]
    fn fig3b_qualifying_set() {
        let g = families::fig3b();
        assert_eq!(
            labels(&g, &qualifying_star_edges(&g)),
            [pair("v0", "v2"), pair("v2", "v3")]
        );
    }

    #[test]
    fn c5_all_edges_qualify() {
        let g = cycle_graph(5);
        assert_eq!(qualifying_star_edges(&g).len(), 5);
        let e = find_star_edge_constructive(&g).unwrap();
        assert!(is_star_edge(&g, e));
    }

    #[test]
    fn p4_constructive_matches_scan() {
        let g = path_graph(4);
        let e = find_star_edge_constructive(&g).unwrap();
        assert!(qualifying_star_edges(&g).contains(&e));
        assert_eq!(e.labels(&g), pair("v2", "v3"));
    }

    #[test]
    fn long_complement_pair_dominates() {
        // P4's complement is P4(v3,v1,v4,v2): v2 and v3 are 3 apart there.
        let g = path_graph(4);
        let e = diam3_star_edge(&g).unwrap();
        assert_eq!(e.labels(&g), pair("v2", "v3"));
        assert_eq!(g.star(e.as_set()).unwrap(), g.all());
    }

    #[test]
    fn preconditions() {
        assert!(matches!(
            find_star_edge_scan(&path_graph(3)),
            Err(Error::Precondition(_))
        ));
        // C5 has diameter 2 on both sides.
        assert!(matches!(
            diam3_star_edge(&cycle_graph(5)),
            Err(Error::Precondition(_))
        ));
        assert!(!has_long_geodesic(&cycle_graph(5)));
    }
}
