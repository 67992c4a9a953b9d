//! Constructive engines: star-edges, loxodromic elements, and checkable
//! upper-bound certificates for translation lengths on `Γ^e`.

mod bounds;
mod json;
mod loxodromic;
mod star_edge;

pub use bounds::{
    best_lambda, best_upper_bound, build_len2, build_minlox, build_minlox_with_pair,
    verify_path_certificate, BoundCertificate, BoundOptions, Witness, DEFAULT_LAMBDA_SEARCH_CAP,
};
pub use json::{CertificateJson, GraphJson, RationalJson, WitnessJson};
pub use loxodromic::{
    is_loxodromic, subjoin_oracle, support_dominates_complement, LoxodromicityEvidence,
};
pub use star_edge::{
    diam3_star_edge, find_star_edge_constructive, find_star_edge_scan, has_long_geodesic,
    is_star_edge, qualifying_star_edges,
};
