//! Finite truncations of the extension graph `Γ^e`.
//!
//! A vertex of `Γ^e` is a conjugate `v^g = g^{-1} v g`. Since `v^g = v^h` iff
//! `g h^{-1}` lies in the centralizer `Z(v)`, and `Z(v)` is generated by the
//! star of `v`, each vertex is stored as `(v, c)` where `c` is the shortest
//! element of the coset `Z(v) g`: the canonical word of `g` with star letters
//! repeatedly stripped from the front.

use std::collections::{HashMap, VecDeque};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Distance;
use crate::words::{GroupElement, Letter, Raag};

/// Default vertex cap for [`Ball::build`].
pub const DEFAULT_BALL_CAP: usize = 200_000;

/// A vertex `v^g` of the extension graph with canonical conjugator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ConjugateVertex {
    base: usize,
    conjugator: GroupElement,
}

impl std::fmt::Debug for ConjugateVertex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.display())
    }
}

impl ConjugateVertex {
    /// `v^g`, canonicalized.
    pub fn new(group: &Raag, base: &str, g: &GroupElement) -> Result<ConjugateVertex> {
        let v = group.graph().index_of(base)?;
        canonical_conjugate(v, g)
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn base_label(&self) -> &str {
        self.conjugator.group().graph().label(self.base)
    }

    pub fn conjugator(&self) -> &GroupElement {
        &self.conjugator
    }

    pub fn group(&self) -> &Raag {
        self.conjugator.group()
    }

    /// The group element `c^{-1} v c`.
    pub fn as_element(&self) -> GroupElement {
        let group = self.group();
        group
            .generator_idx(self.base)
            .conjugate_by(&self.conjugator)
            .expect("same group")
    }

    /// `(v^c)^h = v^{ch}`.
    pub fn act(&self, h: &GroupElement) -> Result<ConjugateVertex> {
        canonical_conjugate(self.base, &self.conjugator.multiply(h)?)
    }

    /// `v^g` written as `v` or `v^(g)`.
    pub fn display(&self) -> String {
        if self.conjugator.is_identity() {
            self.base_label().to_owned()
        } else {
            format!("{}^({})", self.base_label(), self.conjugator)
        }
    }
}

/// Canonical representative of `v^g` for the vertex with index `v`.
pub fn canonical_conjugate(v: usize, g: &GroupElement) -> Result<ConjugateVertex> {
    let group = g.group();
    let graph = group.graph();
    if v >= graph.order() {
        return Err(Error::UnknownVertex(format!("#{v}")));
    }
    let star = graph.neighbors(v).with(v);
    let mut word: Vec<Letter> = g.letters().to_vec();
    loop {
        let mut seen = crate::graph::VertexSet::EMPTY;
        let mut strip = None;
        for (i, x) in word.iter().enumerate() {
            if seen.is_subset(graph.neighbors(x.generator())) && star.contains(x.generator()) {
                strip = Some(i);
                break;
            }
            seen.insert(x.generator());
        }
        match strip {
            Some(i) => {
                word.remove(i);
            }
            None => break,
        }
    }
    Ok(ConjugateVertex {
        base: v,
        conjugator: group.with_normal_word(group.canonical_order(word)),
    })
}

/// Adjacency in `Γ^e`: distinct conjugates that commute.
pub fn adjacent(a: &ConjugateVertex, b: &ConjugateVertex) -> Result<bool> {
    if a.group() != b.group() {
        return Err(Error::AmbientMismatch);
    }
    Ok(adjacent_unchecked(a, b))
}

fn adjacent_unchecked(a: &ConjugateVertex, b: &ConjugateVertex) -> bool {
    if a == b {
        return false;
    }
    let group = a.group();
    // Conjugate both by a's conjugator inverse: compare v_a with v_b^{k},
    // k = c_b c_a^{-1}.
    let k = b.conjugator.mul(&a.conjugator.inverse());
    let vb = group
        .generator_idx(b.base)
        .conjugate_by(&k)
        .expect("same group");
    let va = group.generator_idx(a.base);
    va.commutes_unchecked(&vb)
}

/// The truncation of `Γ^e` to conjugates whose canonical conjugator has
/// length at most `radius`, with every commuting pair as an edge.
#[derive(Debug, Clone)]
pub struct Ball {
    group: Raag,
    radius: usize,
    vertices: Vec<ConjugateVertex>,
    index: HashMap<ConjugateVertex, usize>,
    adjacency: Vec<Vec<usize>>,
}

impl Ball {
    pub fn build(group: &Raag, radius: usize) -> Result<Ball> {
        Ball::build_capped(group, radius, DEFAULT_BALL_CAP)
    }

    /// Enumerates vertices by base (label order), then conjugator length,
    /// then letter order. Fails with [`Error::Overflow`] once more than `cap`
    /// vertices are found.
    pub fn build_capped(group: &Raag, radius: usize, cap: usize) -> Result<Ball> {
        let graph = group.graph();
        let letters: Vec<Letter> = (0..graph.order())
            .flat_map(|v| [Letter::new(v, false), Letter::new(v, true)])
            .collect();
        let mut vertices: Vec<ConjugateVertex> = Vec::new();
        let mut index: HashMap<ConjugateVertex, usize> = HashMap::new();
        let mut push = |cv: ConjugateVertex, vertices: &mut Vec<ConjugateVertex>| -> Result<bool> {
            if index.contains_key(&cv) {
                return Ok(false);
            }
            if vertices.len() >= cap {
                return Err(Error::Overflow {
                    cap,
                    partial: vertices.len(),
                });
            }
            index.insert(cv.clone(), vertices.len());
            vertices.push(cv);
            Ok(true)
        };
        for v in 0..graph.order() {
            let root = canonical_conjugate(v, &group.identity())?;
            push(root.clone(), &mut vertices)?;
            let mut layer = vec![root];
            for len in 1..=radius {
                let mut next = Vec::new();
                for cv in &layer {
                    for &x in &letters {
                        let c = cv.conjugator.mul(&group.with_normal_word(vec![x]));
                        if c.len() != len {
                            continue;
                        }
                        let cand = canonical_conjugate(v, &c)?;
                        if cand.conjugator.len() == len && push(cand.clone(), &mut vertices)? {
                            next.push(cand);
                        }
                    }
                }
                layer = next;
            }
        }

        // Commuting conjugates have adjacent bases: the projection
        // `v^g -> v` is a graph map onto Γ. Only those pairs are tested.
        let n = vertices.len();
        let upper: Vec<Vec<usize>> = (0..n)
            .into_par_iter()
            .map(|i| {
                let near = graph.neighbors(vertices[i].base);
                (i + 1..n)
                    .filter(|&j| {
                        near.contains(vertices[j].base)
                            && adjacent_unchecked(&vertices[i], &vertices[j])
                    })
                    .collect()
            })
            .collect();
        let mut adjacency = upper.clone();
        for (i, row) in upper.iter().enumerate() {
            for &j in row {
                adjacency[j].push(i);
            }
        }
        for row in &mut adjacency {
            row.sort_unstable();
        }
        Ok(Ball {
            group: group.clone(),
            radius,
            vertices,
            index,
            adjacency,
        })
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn group(&self) -> &Raag {
        &self.group
    }

    pub fn vertices(&self) -> &[ConjugateVertex] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges as sorted index pairs `(i, j)` with `i < j`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(i, nb)| nb.iter().filter(move |&&j| j > i).map(move |&j| (i, j)))
            .collect()
    }

    pub fn position(&self, v: &ConjugateVertex) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn contains(&self, v: &ConjugateVertex) -> bool {
        self.index.contains_key(v)
    }

    fn bfs(&self, src: usize) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.len()];
        dist[src] = 0;
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adjacency[u] {
                if dist[w] == u32::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Distance inside the truncation: an upper bound for the true distance
    /// in `Γ^e`.
    pub fn distance(&self, a: &ConjugateVertex, c: &ConjugateVertex) -> Result<Distance> {
        let ia = self
            .position(a)
            .ok_or_else(|| Error::input(format!("{} is not in the ball", a.display())))?;
        let ic = self
            .position(c)
            .ok_or_else(|| Error::input(format!("{} is not in the ball", c.display())))?;
        Ok(match self.bfs(ia)[ic] {
            u32::MAX => Distance::Infinite,
            d => Distance::Finite(d),
        })
    }

    pub fn to_json(&self) -> BallJson {
        BallJson {
            radius: self.radius,
            vertices: self
                .vertices
                .iter()
                .map(|v| BallVertexJson {
                    base: v.base_label().to_owned(),
                    conjugator: v.conjugator.to_string(),
                })
                .collect(),
            edges: self.edges().into_iter().map(|(i, j)| [i, j]).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BallJson {
    pub radius: usize,
    pub vertices: Vec<BallVertexJson>,
    pub edges: Vec<[usize; 2]>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BallVertexJson {
    pub base: String,
    pub conjugator: String,
}

/// One sample of `d(x, x g^n) / n` measured inside a truncation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrbitSample {
    pub n: u32,
    /// `None` when `x·g^n` lies outside the ball.
    pub distance: Option<u32>,
    pub ratio: Option<f64>,
    /// The search reached a vertex on the ball's outer layer before the
    /// target, so a shorter path through the rest of `Γ^e` is possible.
    pub boundary_touched: bool,
}

/// Samples truncated orbit distances `d(base, base^{g^n}) / n` for
/// `n = 1..=n_max` inside the ball of the given radius.
pub fn orbit_ratio(
    group: &Raag,
    g: &GroupElement,
    base: &str,
    n_max: u32,
    radius: usize,
    cap: usize,
) -> Result<Vec<OrbitSample>> {
    if g.is_identity() {
        return Err(Error::input("orbit ratios need a nontrivial element"));
    }
    if g.group() != group {
        return Err(Error::AmbientMismatch);
    }
    let ball = Ball::build_capped(group, radius, cap)?;
    orbit_ratio_in(&ball, g, base, n_max)
}

/// [`orbit_ratio`] over a prebuilt ball.
pub fn orbit_ratio_in(
    ball: &Ball,
    g: &GroupElement,
    base: &str,
    n_max: u32,
) -> Result<Vec<OrbitSample>> {
    let group = ball.group();
    let v = group.graph().index_of(base)?;
    let origin = canonical_conjugate(v, &group.identity())?;
    let src = ball
        .position(&origin)
        .expect("radius-0 layer is always present");
    let dist = ball.bfs(src);
    let mut out = Vec::new();
    for n in 1..=n_max {
        let target = canonical_conjugate(v, &g.power(n as i64))?;
        let sample = match ball.position(&target) {
            None => OrbitSample {
                n,
                distance: None,
                ratio: None,
                boundary_touched: true,
            },
            Some(t) => {
                let d = dist[t];
                if d == u32::MAX {
                    OrbitSample {
                        n,
                        distance: None,
                        ratio: None,
                        boundary_touched: true,
                    }
                } else {
                    let boundary_touched = (0..ball.len())
                        .any(|i| dist[i] < d && ball.vertices[i].conjugator.len() == ball.radius);
                    OrbitSample {
                        n,
                        distance: Some(d),
                        ratio: Some(d as f64 / n as f64),
                        boundary_touched,
                    }
                }
            }
        };
        out.push(sample);
    }
    Ok(out)
}
