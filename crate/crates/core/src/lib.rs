//! Bootstrap percolation on grid hypergraphs with exact lower-bound
//! certificates.
//!
//! * [`grid`]: grids, the `K` / `P` hypergraph families, the extremal set `U`
//!   and its closed-form size.
//! * [`percolation`]: the hypergraph bootstrap closure with infection traces.
//! * [`algebra`]: exact rational matrices, general-position matrices,
//!   dependency coefficients, rank.
//! * [`certificate`]: the vectors `f_v`, edge coefficients and their
//!   verification, plus span audits of percolating sets.
//! * [`search`]: brute-force and greedy oracles, `r`-neighbour percolation.

pub mod algebra;
pub mod certificate;
pub mod grid;
pub mod percolation;
pub mod search;

pub use algebra::{
    build_general_position_matrix, dependency_coeffs, verify_general_position, AlgebraError,
    EliminationBasis, Rational, RationalMatrix, RationalVector,
};
pub use certificate::{
    audit_percolating_set, certified_lower_bound, certify_with, project, AuditReport, Certificate,
    CertificateContext, CertificateError, CertifyOptions,
};
pub use grid::{
    construct_u, count_edges, enumerate_edges, extremal_size, homogeneous_extremal_size, Family,
    GridEdge, GridError, GridSpec, MultiIndex,
};
pub use percolation::{
    closure, grid_hypergraph, percolates, weak_saturation_hypergraph, ClosureResult, Hypergraph,
    HypergraphError, InfectionStep,
};
pub use search::{
    build_graph, greedy_upper_bound, min_percolating_exact, min_rn_percolating, rn_closure, Graph,
    GraphKind, SearchError, SearchOptions, SearchResult,
};
