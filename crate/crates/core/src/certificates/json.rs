//! JSON form of [`BoundCertificate`].
//!
//! Field order is fixed by the struct definitions, and `checks` is a sorted
//! map, so output is byte-stable. Parsing rebuilds every group element from
//! its word string; the stored `checks` are informational and are recomputed
//! by [`CertificateJson::into_certificate`] callers via `verify`.

use std::collections::BTreeMap;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use super::bounds::{BoundCertificate, Witness};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::words::Raag;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: Vec<String>,
    pub edges: Vec<[String; 2]>,
}

impl GraphJson {
    pub fn from_graph(g: &Graph) -> GraphJson {
        GraphJson {
            vertices: g.labels().to_vec(),
            edges: g
                .edges()
                .into_iter()
                .map(|e| {
                    let (a, b) = e.labels(g);
                    [a, b]
                })
                .collect(),
        }
    }

    pub fn to_graph(&self) -> Result<Graph> {
        Graph::new(
            self.vertices.iter().cloned(),
            self.edges.iter().map(|[a, b]| (a.as_str(), b.as_str())),
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalJson {
    pub num: u64,
    pub den: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WitnessJson {
    Path {
        v1: String,
        v2: String,
        g1: String,
        g2: String,
    },
    Factor {
        v0: String,
        vd: String,
        d: u32,
        h0: String,
        hd: String,
        lambda: Vec<String>,
        levels: Vec<Vec<String>>,
        lambda_from_search: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub graph: GraphJson,
    pub element_word: String,
    pub bound: RationalJson,
    pub kind: String,
    pub witness: WitnessJson,
    pub checks: BTreeMap<String, bool>,
}

impl CertificateJson {
    pub fn from_certificate(cert: &BoundCertificate) -> CertificateJson {
        let g = cert.graph();
        let label = |v: usize| g.label(v).to_owned();
        let witness = match cert.witness() {
            Witness::Path { v1, v2, g1, g2 } => WitnessJson::Path {
                v1: label(*v1),
                v2: label(*v2),
                g1: g1.to_string(),
                g2: g2.to_string(),
            },
            Witness::Factor {
                v0,
                vd,
                d,
                h0,
                hd,
                lambda,
                levels,
                from_search,
            } => WitnessJson::Factor {
                v0: label(*v0),
                vd: label(*vd),
                d: *d,
                h0: h0.to_string(),
                hd: hd.to_string(),
                lambda: g.labels_of(*lambda),
                levels: levels.iter().map(|l| g.labels_of(*l)).collect(),
                lambda_from_search: *from_search,
            },
        };
        CertificateJson {
            graph: GraphJson::from_graph(g),
            element_word: cert.element().to_string(),
            bound: RationalJson {
                num: *cert.bound().numer(),
                den: *cert.bound().denom(),
            },
            kind: cert.witness().kind().to_owned(),
            witness,
            checks: cert
                .verify()
                .into_iter()
                .map(|(k, v)| (k.to_owned(), v))
                .collect(),
        }
    }

    /// Rebuilds the certificate (unverified).
    pub fn into_certificate(&self) -> Result<BoundCertificate> {
        let graph = self.graph.to_graph()?;
        let group = Raag::new(graph);
        let g = group.graph();
        let set = |labels: &[String]| -> Result<VertexSet> { g.vertex_set(labels) };
        let element = group.parse(&self.element_word)?;
        if self.bound.den == 0 {
            return Err(Error::input("bound has zero denominator"));
        }
        let bound = Ratio::new(self.bound.num, self.bound.den);
        let witness = match (&self.witness, self.kind.as_str()) {
            (WitnessJson::Path { v1, v2, g1, g2 }, "path") => Witness::Path {
                v1: g.index_of(v1)?,
                v2: g.index_of(v2)?,
                g1: group.parse(g1)?,
                g2: group.parse(g2)?,
            },
            (
                WitnessJson::Factor {
                    v0,
                    vd,
                    d,
                    h0,
                    hd,
                    lambda,
                    levels,
                    lambda_from_search,
                },
                "factor",
            ) => Witness::Factor {
                v0: g.index_of(v0)?,
                vd: g.index_of(vd)?,
                d: *d,
                h0: group.parse(h0)?,
                hd: group.parse(hd)?,
                lambda: set(lambda)?,
                levels: levels.iter().map(|l| set(l)).collect::<Result<_>>()?,
                from_search: *lambda_from_search,
            },
            (_, kind) => {
                return Err(Error::input(format!(
                    "certificate kind `{kind}` does not match its witness fields"
                )))
            }
        };
        Ok(BoundCertificate::from_parts(group, element, bound, witness))
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn parse(text: &str) -> Result<CertificateJson> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            message: e.to_string(),
        })
    }
}

impl BoundCertificate {
    pub fn to_json(&self) -> CertificateJson {
        CertificateJson::from_certificate(self)
    }
}
