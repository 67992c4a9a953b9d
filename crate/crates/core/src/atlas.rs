//! Exhaustive enumeration of small labeled graphs and the theorem sweeps
//! built on it.
//!
//! Graph codes are adjacency bitmasks: bit `k` is the `k`-th vertex pair in
//! lexicographic order `(0,1), (0,2), ..., (n-2,n-1)`. Sweeps split the code
//! range into fixed chunks, process chunks in parallel and merge the partial
//! reports in chunk order, so output does not depend on the worker count.

use std::sync::Arc;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::certificates::{
    best_upper_bound, find_star_edge_constructive, find_star_edge_scan, is_star_edge,
    subjoin_oracle, support_dominates_complement, verify_path_certificate, BoundOptions,
    CertificateJson,
};
use crate::error::{Error, Result};
use crate::graph::{to_graph6, Graph, VertexSet};
use crate::words::Raag;

/// Largest vertex count for labeled enumeration.
pub const MAX_ENUMERATION_ORDER: usize = 8;

const CHUNK: u64 = 1 << 12;

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect()
}

fn labels(n: usize) -> Arc<[String]> {
    (1..=n).map(|i| format!("v{i}")).collect::<Vec<_>>().into()
}

fn check_order(n: usize) -> Result<()> {
    if (1..=MAX_ENUMERATION_ORDER).contains(&n) {
        Ok(())
    } else {
        Err(Error::input(format!(
            "enumeration order must be in 1..={MAX_ENUMERATION_ORDER}, got {n}"
        )))
    }
}

/// Decoder from codes to graphs on `v1..vn`.
#[derive(Clone)]
pub struct CodeSpace {
    n: usize,
    pairs: Vec<(usize, usize)>,
    labels: Arc<[String]>,
}

impl CodeSpace {
    pub fn new(n: usize) -> Result<CodeSpace> {
        check_order(n)?;
        Ok(CodeSpace {
            n,
            pairs: pairs(n),
            labels: labels(n),
        })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Number of labeled graphs, `2^(n(n-1)/2)`.
    pub fn size(&self) -> u64 {
        1u64 << self.pairs.len()
    }

    pub fn graph(&self, code: u64) -> Graph {
        let mut adj = vec![VertexSet::EMPTY; self.n];
        for (k, &(i, j)) in self.pairs.iter().enumerate() {
            if code >> k & 1 == 1 {
                adj[i].insert(j);
                adj[j].insert(i);
            }
        }
        Graph::from_parts(self.labels.clone(), adj)
    }

    /// Code of `graph`, which must be on `v1..vn`.
    pub fn code(&self, graph: &Graph) -> u64 {
        self.pairs
            .iter()
            .enumerate()
            .filter(|(_, &(i, j))| graph.has_edge(i, j))
            .fold(0, |acc, (k, _)| acc | 1 << k)
    }

    fn adjacency(&self, code: u64) -> Vec<VertexSet> {
        self.graph(code).adj_rows()
    }

    /// Least code over all vertex relabelings.
    pub fn canonical_code(&self, code: u64) -> u64 {
        let adj = self.adjacency(code);
        let mut best = code;
        let mut perm: Vec<usize> = (0..self.n).collect();
        for_each_permutation(&mut perm, &mut |p| {
            if let Some(c) = self.permuted_below(&adj, p, best) {
                best = c;
            }
        });
        best
    }

    /// Whether `code` is the least code in its isomorphism class.
    pub fn is_canonical(&self, code: u64) -> bool {
        let adj = self.adjacency(code);
        let mut perm: Vec<usize> = (0..self.n).collect();
        let mut smaller = false;
        for_each_permutation(&mut perm, &mut |p| {
            if !smaller && self.permuted_below(&adj, p, code).is_some() {
                smaller = true;
            }
        });
        !smaller
    }

    /// Code of the graph relabeled by `p` (new pair `(i, j)` is the old pair
    /// `(p[i], p[j])`), if it is strictly below `bound`. Compares from the
    /// most significant bit and stops at the first difference.
    fn permuted_below(&self, adj: &[VertexSet], p: &[usize], bound: u64) -> Option<u64> {
        let mut code = 0u64;
        let mut deciding = true;
        for (k, &(i, j)) in self.pairs.iter().enumerate().rev() {
            let bit = adj[p[i]].contains(p[j]) as u64;
            if deciding {
                let want = bound >> k & 1;
                if bit > want {
                    return None;
                }
                if bit < want {
                    deciding = false;
                }
            }
            code |= bit << k;
        }
        (!deciding).then_some(code)
    }
}

impl Graph {
    pub(crate) fn adj_rows(&self) -> Vec<VertexSet> {
        (0..self.order()).map(|i| self.neighbors(i)).collect()
    }
}

/// Heap's algorithm.
fn for_each_permutation(perm: &mut [usize], f: &mut impl FnMut(&[usize])) {
    let n = perm.len();
    let mut c = vec![0usize; n];
    f(perm);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            f(perm);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// All labeled graphs on `v1..vn` in code order.
pub fn labeled_graphs(n: usize) -> Result<impl Iterator<Item = Graph>> {
    let space = CodeSpace::new(n)?;
    Ok((0..space.size()).map(move |c| space.graph(c)))
}

/// All graphs on `n` vertices in code order; with `dedupe_iso`, only the
/// least code of each isomorphism class.
pub fn enumerate_graphs(n: usize, dedupe_iso: bool) -> Result<Box<dyn Iterator<Item = Graph>>> {
    let space = CodeSpace::new(n)?;
    let codes = 0..space.size();
    if dedupe_iso {
        Ok(Box::new(codes.filter(move |&c| space.is_canonical(c)).map(
            {
                let space = CodeSpace::new(n)?;
                move |c| space.graph(c)
            },
        )))
    } else {
        Ok(Box::new(codes.map(move |c| space.graph(c))))
    }
}

/// Per-order counters of a sweep.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SweepCounts {
    pub n: usize,
    pub graphs: u64,
    pub biconnected: u64,
    pub skipped: u64,
    /// Individual checks performed (edges, subsets, certificates...).
    pub checks: u64,
    pub failures: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepFailure {
    pub n: usize,
    pub code: u64,
    pub graph6: String,
    pub reason: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    pub sweep: String,
    pub n_min: usize,
    pub n_max: usize,
    pub counts: Vec<SweepCounts>,
    pub failures: Vec<SweepFailure>,
    #[serde(skip)]
    pub wall_time: Duration,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn total(&self) -> SweepCounts {
        self.counts
            .iter()
            .fold(SweepCounts::default(), |mut acc, c| {
                acc.graphs += c.graphs;
                acc.biconnected += c.biconnected;
                acc.skipped += c.skipped;
                acc.checks += c.checks;
                acc.failures += c.failures;
                acc
            })
    }

    pub fn counts_for(&self, n: usize) -> Option<&SweepCounts> {
        self.counts.iter().find(|c| c.n == n)
    }

    /// CSV: one `count` row per order, then one `failure` row per failure.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "row,sweep,n,graphs,biconnected,skipped,checks,failures,code,graph6,reason\n",
        );
        for c in &self.counts {
            out.push_str(&format!(
                "count,{},{},{},{},{},{},{},,,\n",
                self.sweep, c.n, c.graphs, c.biconnected, c.skipped, c.checks, c.failures
            ));
        }
        for f in &self.failures {
            out.push_str(&format!(
                "failure,{},{},,,,,,{},{},\"{}\"\n",
                self.sweep,
                f.n,
                f.code,
                f.graph6,
                f.reason.replace('"', "\"\"")
            ));
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Outcome of checking one graph.
enum Verdict {
    Skipped,
    Checked {
        checks: u64,
        failure: Option<String>,
    },
}

#[derive(Default)]
struct Partial {
    counts: SweepCounts,
    failures: Vec<SweepFailure>,
}

fn run_sweep<F>(
    name: &str,
    n_min: usize,
    n_max: usize,
    jobs: Option<usize>,
    check: F,
) -> Result<SweepReport>
where
    F: Fn(&Graph) -> Verdict + Sync,
{
    let start = Instant::now();
    let work = || -> Result<Vec<(SweepCounts, Vec<SweepFailure>)>> {
        (n_min..=n_max)
            .map(|n| {
                let space = CodeSpace::new(n)?;
                let chunks = space.size().div_ceil(CHUNK);
                let partials: Vec<Partial> = (0..chunks)
                    .into_par_iter()
                    .map(|chunk| {
                        let mut p = Partial::default();
                        let end = ((chunk + 1) * CHUNK).min(space.size());
                        for code in chunk * CHUNK..end {
                            let g = space.graph(code);
                            p.counts.graphs += 1;
                            match check(&g) {
                                Verdict::Skipped => p.counts.skipped += 1,
                                Verdict::Checked { checks, failure } => {
                                    p.counts.biconnected += 1;
                                    p.counts.checks += checks;
                                    if let Some(reason) = failure {
                                        p.counts.failures += 1;
                                        p.failures.push(SweepFailure {
                                            n,
                                            code,
                                            graph6: to_graph6(&g),
                                            reason,
                                        });
                                    }
                                }
                            }
                        }
                        p
                    })
                    .collect();
                let mut counts = SweepCounts {
                    n,
                    ..SweepCounts::default()
                };
                let mut failures = Vec::new();
                for p in partials {
                    counts.graphs += p.counts.graphs;
                    counts.biconnected += p.counts.biconnected;
                    counts.skipped += p.counts.skipped;
                    counts.checks += p.counts.checks;
                    counts.failures += p.counts.failures;
                    failures.extend(p.failures);
                }
                Ok((counts, failures))
            })
            .collect()
    };
    let per_n = match jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map_err(|e| Error::input(format!("thread pool: {e}")))?
            .install(work)?,
        None => work()?,
    };
    let mut counts = Vec::new();
    let mut failures = Vec::new();
    for (c, f) in per_n {
        counts.push(c);
        failures.extend(f);
    }
    Ok(SweepReport {
        sweep: name.to_owned(),
        n_min,
        n_max,
        counts,
        failures,
        wall_time: start.elapsed(),
    })
}

/// Star-edge existence on every labeled biconnected graph with
/// `n_min..=n_max` vertices, cross-checking the inductive finder against
/// the scan.
pub fn sweep_theorem_2v(n_min: usize, n_max: usize, jobs: Option<usize>) -> Result<SweepReport> {
    if !(4 <= n_min && n_min <= n_max && n_max <= MAX_ENUMERATION_ORDER) {
        return Err(Error::input(format!(
            "star-edge sweep range must satisfy 4 ≤ n_min ≤ n_max ≤ {MAX_ENUMERATION_ORDER}"
        )));
    }
    run_sweep("star-edge", n_min, n_max, jobs, |g| {
        if !g.is_biconnected() {
            return Verdict::Skipped;
        }
        let failure = match (find_star_edge_scan(g), find_star_edge_constructive(g)) {
            (Err(e), _) => Some(format!("scan: {e}")),
            (_, Err(e)) => Some(format!("constructive: {e}")),
            (Ok(_), Ok(e)) if !is_star_edge(g, e) => {
                let (a, b) = e.labels(g);
                Some(format!("constructive edge {{{a}, {b}}} is not a star-edge"))
            }
            _ => None,
        };
        Verdict::Checked { checks: 2, failure }
    })
}

/// Agreement of the subjoin criterion with the connected-and-dominating
/// criterion on every nonempty vertex subset of every nontrivial
/// biconnected graph up to `n_max` vertices.
pub fn sweep_loxo_equiv(n_max: usize, jobs: Option<usize>) -> Result<SweepReport> {
    if !(1..=6).contains(&n_max) {
        return Err(Error::input("loxodromicity sweep supports n_max ≤ 6"));
    }
    run_sweep("loxo-equiv", 1, n_max, jobs, |g| {
        if !g.is_nontrivial_biconnected() {
            return Verdict::Skipped;
        }
        let mut checks = 0;
        for bits in 1..(1u128 << g.order()) {
            let s = VertexSet::from_bits(bits);
            checks += 1;
            let in_subjoin = subjoin_oracle(g, s).expect("nonempty subset");
            let criterion = g.co_connected_within(s) && support_dominates_complement(g, s);
            if in_subjoin == criterion {
                return Verdict::Checked {
                    checks,
                    failure: Some(format!(
                        "subset {:?}: subjoin={in_subjoin}, connected-and-dominating={criterion}",
                        g.labels_of(s)
                    )),
                };
            }
        }
        Verdict::Checked {
            checks,
            failure: None,
        }
    })
}

/// Bound certificates for every nontrivial biconnected graph: each must
/// verify, certify a bound of at most 2, survive a JSON round trip, and pass
/// the zig-zag path check for `n = 1..=zigzag_max`.
pub fn sweep_bounds(
    n_min: usize,
    n_max: usize,
    zigzag_max: u32,
    jobs: Option<usize>,
) -> Result<SweepReport> {
    if !(1 <= n_min && n_min <= n_max && n_max <= MAX_ENUMERATION_ORDER) {
        return Err(Error::input("bound sweep range out of bounds"));
    }
    run_sweep("bounds", n_min, n_max, jobs, |g| {
        if !g.is_nontrivial_biconnected() {
            return Verdict::Skipped;
        }
        let group = Raag::new(g.clone());
        let cert = match best_upper_bound(&group, BoundOptions::default()) {
            Ok(c) => c,
            Err(e) => {
                return Verdict::Checked {
                    checks: 1,
                    failure: Some(e.to_string()),
                }
            }
        };
        let mut failure = None;
        if cert.bound() > num_rational::Ratio::from_integer(2) {
            failure = Some(format!("bound {} exceeds 2", cert.bound()));
        }
        let text = cert.to_json().to_json_string();
        let reparsed = CertificateJson::parse(&text).and_then(|j| j.into_certificate());
        match reparsed {
            Ok(c) if c.is_valid() => {}
            Ok(c) => failure = Some(format!("round trip failed checks {:?}", c.failures())),
            Err(e) => failure = Some(format!("round trip: {e}")),
        }
        for n in 1..=zigzag_max {
            if !matches!(verify_path_certificate(&cert, n), Ok(true)) {
                failure = Some(format!("zig-zag path check failed at n = {n}"));
                break;
            }
        }
        Verdict::Checked {
            checks: 2 + u64::from(zigzag_max),
            failure,
        }
    })
}
