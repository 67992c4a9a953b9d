use std::collections::HashSet;

use super::Graph;
use crate::error::Result;

/// `P_n(v1, ..., vn)`.
///
/// # Panics
/// If `n == 0`.
pub fn path_graph(n: usize) -> Graph {
    assert!(n >= 1, "path graph needs at least one vertex");
    path_on((1..=n).map(|i| format!("v{i}"))).expect("generated labels are valid")
}

/// Path through the given labels in the given order.
pub fn path_on<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Graph> {
    let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
    let edges: Vec<(String, String)> = labels
        .windows(2)
        .map(|w| (w[0].clone(), w[1].clone()))
        .collect();
    Graph::new(labels, edges)
}

/// `C_n` on `v1, ..., vn`.
///
/// # Panics
/// If `n < 3`.
pub fn cycle_graph(n: usize) -> Graph {
    assert!(n >= 3, "cycle graph needs at least three vertices");
    cycle_on((1..=n).map(|i| format!("v{i}"))).expect("generated labels are valid")
}

/// Cycle through the given labels in the given order (closing the last one
/// back to the first).
pub fn cycle_on<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Graph> {
    let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
    let n = labels.len();
    let edges: Vec<(String, String)> = (0..n)
        .map(|i| (labels[i].clone(), labels[(i + 1) % n].clone()))
        .collect();
    Graph::new(labels, edges)
}

/// Labels of `right`, renamed by appending `'` until they avoid `left`.
fn fresh_labels(left: &Graph, right: &Graph) -> Vec<String> {
    let mut taken: HashSet<String> = left.labels().iter().cloned().collect();
    right
        .labels()
        .iter()
        .map(|l| {
            let mut l = l.clone();
            while taken.contains(&l) {
                l.push('\'');
            }
            taken.insert(l.clone());
            l
        })
        .collect()
}

fn combine(left: &Graph, right: &Graph, cross: bool) -> Graph {
    let renamed = fresh_labels(left, right);
    let mut edges: Vec<(String, String)> =
        left.edges().into_iter().map(|e| e.labels(left)).collect();
    for e in right.edges() {
        let (a, b) = e.endpoints();
        edges.push((renamed[a].clone(), renamed[b].clone()));
    }
    if cross {
        for l in left.labels() {
            for r in &renamed {
                edges.push((l.clone(), r.clone()));
            }
        }
    }
    let vertices = left.labels().iter().cloned().chain(renamed);
    Graph::new(vertices, edges).expect("combined graph is well formed")
}

/// `left ⊔ right`. Clashing labels on the right get primes appended.
pub fn disjoint_union(left: &Graph, right: &Graph) -> Graph {
    combine(left, right, false)
}

/// `left * right`: the disjoint union plus every edge between the two sides.
pub fn join(left: &Graph, right: &Graph) -> Graph {
    combine(left, right, true)
}
