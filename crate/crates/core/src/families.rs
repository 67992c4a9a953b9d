//! Named graphs: the `Λ_n` / `Γ_n` families and three small worked examples.
//!
//! Labels follow the fixed scheme `v1..vn, x, y` (and `v0` in `fig3b`).

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{cycle_graph, path_graph, Graph};

/// `Λ_n` for `n ≥ 3`.
///
/// `n = 3`: the pentagon `x - v1 - v2 - v3 - y - x`. `n ≥ 4`: the path
/// `v1 ... vn` plus `x` joined to `v2..vn` and `y` joined to `v1, v4..vn`.
pub fn lambda_n(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::input(format!("lambda_n needs n ≥ 3, got {n}")));
    }
    let v = |i: usize| format!("v{i}");
    let mut vertices: Vec<String> = (1..=n).map(v).collect();
    vertices.push("x".into());
    vertices.push("y".into());
    let mut edges: Vec<(String, String)> = (1..n).map(|i| (v(i), v(i + 1))).collect();
    if n == 3 {
        edges.push(("x".into(), v(1)));
        edges.push(("y".into(), v(3)));
        edges.push(("x".into(), "y".into()));
    } else {
        edges.extend((2..=n).map(|i| ("x".to_string(), v(i))));
        edges.extend(
            std::iter::once(1)
                .chain(4..=n)
                .map(|j| ("y".to_string(), v(j))),
        );
    }
    Graph::new(vertices, edges)
}

/// `Γ_n`: the complement of `Λ_n`, for `n ≥ 4`.
pub fn gamma_n(n: usize) -> Result<Graph> {
    if n < 4 {
        return Err(Error::input(format!("gamma_n needs n ≥ 4, got {n}")));
    }
    Ok(lambda_n(n)?.complement())
}

/// Path `v1..v6` plus `v0` joined to `v2..v6`.
pub fn fig3b() -> Graph {
    let mut edges: Vec<(String, String)> = (1..6)
        .map(|i| (format!("v{i}"), format!("v{}", i + 1)))
        .collect();
    edges.extend((2..=6).map(|i| ("v0".to_string(), format!("v{i}"))));
    Graph::new((0..=6).map(|i| format!("v{i}")), edges).expect("well formed")
}

/// `p4`, `p6`, `fig3b` and `c5`.
pub fn named_examples() -> BTreeMap<&'static str, Graph> {
    BTreeMap::from([
        ("c5", cycle_graph(5)),
        ("fig3b", fig3b()),
        ("p4", path_graph(4)),
        ("p6", path_graph(6)),
    ])
}

pub fn named_example(name: &str) -> Result<Graph> {
    named_examples()
        .remove(name)
        .ok_or_else(|| Error::input(format!("unknown example `{name}`")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{path_on, Distance};

    #[test]
    fn lambda_3_is_the_pentagon() {
        let g = lambda_n(3).unwrap();
        assert_eq!(
            g,
            crate::graph::cycle_on(["x", "v1", "v2", "v3", "y"]).unwrap()
        );
        let p3 = g.vertex_set(["v1", "v2", "v3"]).unwrap();
        assert_eq!(g.induced(p3).unwrap(), path_graph(3));
    }

    #[test]
    fn lambda_7_matches_figure() {
        let g = lambda_n(7).unwrap();
        let x = g.index_of("x").unwrap();
        let y = g.index_of("y").unwrap();
        assert_eq!(
            g.labels_of(g.neighbors(x)),
            ["v2", "v3", "v4", "v5", "v6", "v7"]
        );
        assert_eq!(g.labels_of(g.neighbors(y)), ["v1", "v4", "v5", "v6", "v7"]);
        assert_eq!(g.edge_count(), 6 + 6 + 5);
    }

    #[test]
    fn gamma_n_basics() {
        let g = gamma_n(6).unwrap();
        assert_eq!(g.order(), 8);
        let pn = g.vertex_set((1..=6).map(|i| format!("v{i}"))).unwrap();
        let path = path_on((1..=6).map(|i| format!("v{i}"))).unwrap();
        assert_eq!(g.complement().induced(pn).unwrap(), path);
        assert_eq!(g.diameter(), Distance::Finite(2));
        assert!(gamma_n(3).is_err());
        assert!(lambda_n(2).is_err());
    }

    #[test]
    fn fig3b_shape() {
        let g = fig3b();
        assert_eq!(g.order(), 7);
        assert_eq!(g.edge_count(), 10);
    }

    #[test]
    fn lookup() {
        assert_eq!(named_example("p6").unwrap(), path_graph(6));
        assert!(named_example("k9").is_err());
    }
}
