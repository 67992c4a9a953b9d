use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::words::{GroupElement, Raag};

/// The data behind the loxodromicity verdict for a nontrivial element of
/// `A(Γ)` acting on `Γ^e`, evaluated on its cyclically reduced core.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LoxodromicityEvidence {
    /// Support of the cyclically reduced core, in label order.
    pub support: Vec<String>,
    /// The complement graph restricted to the support is connected.
    pub complement_support_connected: bool,
    /// The support dominates the complement graph.
    pub support_dominates_complement: bool,
    /// The evaluated core is cyclically reduced.
    pub cyclically_reduced: bool,
    /// Whether the input itself was already cyclically reduced.
    pub input_cyclically_reduced: bool,
}

impl LoxodromicityEvidence {
    pub fn verdict(&self) -> bool {
        self.complement_support_connected
            && self.support_dominates_complement
            && self.cyclically_reduced
    }
}

/// Loxodromicity test for `g` on the extension graph.
///
/// Requires a nontrivial biconnected defining graph and `g ≠ 1`. The element
/// is cyclically reduced first; the verdict is "support connected in the
/// complement and dominating the complement".
pub fn is_loxodromic(group: &Raag, g: &GroupElement) -> Result<LoxodromicityEvidence> {
    let graph = group.graph();
    require_nontrivial_biconnected(graph)?;
    if g.group() != group {
        return Err(Error::AmbientMismatch);
    }
    if g.is_identity() {
        return Err(Error::input("the identity is never loxodromic"));
    }
    let (_, core) = g.cyclic_reduce();
    let support = core.support();
    Ok(LoxodromicityEvidence {
        support: graph.labels_of(support),
        complement_support_connected: graph.co_connected_within(support),
        support_dominates_complement: support_dominates_complement(graph, support),
        cyclically_reduced: core.is_cyclically_reduced(),
        input_cyclically_reduced: core.len() == g.len(),
    })
}

/// `s` dominates the complement of `graph`.
pub fn support_dominates_complement(graph: &Graph, s: VertexSet) -> bool {
    graph.co_star_within(s, graph.all()) == graph.all()
}

/// True iff `s` is contained in a subjoin: some `W ⊇ s` with `|W| ≥ 2` whose
/// induced subgraph is a join, i.e. has disconnected complement.
///
/// Brute force over all supersets of `s`.
pub fn subjoin_oracle(graph: &Graph, s: VertexSet) -> Result<bool> {
    if s.is_empty() {
        return Err(Error::input("subjoin test of the empty set"));
    }
    if !s.is_subset(graph.all()) {
        return Err(Error::input("vertex set is not contained in the graph"));
    }
    let free: Vec<usize> = (graph.all() - s).iter().collect();
    if free.len() >= 63 {
        return Err(Error::input(
            "too many vertices for the brute-force subjoin search",
        ));
    }
    for pick in 0u64..(1u64 << free.len()) {
        let mut w = s;
        for (k, &v) in free.iter().enumerate() {
            if pick >> k & 1 == 1 {
                w.insert(v);
            }
        }
        if w.len() >= 2 && !graph.co_connected_within(w) {
            return Ok(true);
        }
    }
    Ok(false)
}

pub(crate) fn require_nontrivial_biconnected(graph: &Graph) -> Result<()> {
    if graph.order() < 2 {
        return Err(Error::precondition(format!(
            "graph with {} vertices is trivial",
            graph.order()
        )));
    }
    let connected = graph.is_connected();
    let co_connected = graph.co_connected_within(graph.all());
    match (connected, co_connected) {
        (true, true) => Ok(()),
        (false, true) => Err(Error::precondition(
            "graph is not biconnected: the graph is disconnected",
        )),
        (true, false) => Err(Error::precondition(
            "graph is not biconnected: the complement graph is disconnected",
        )),
        (false, false) => Err(Error::precondition(
            "graph is not biconnected: both the graph and its complement are disconnected",
        )),
    }
}
