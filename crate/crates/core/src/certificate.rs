//! Linear-algebra lower-bound certificates for the grid families.
//!
//! Fix an `n_k x (t_k - 1)` general-position matrix `M^(k)` per axis and let
//! `W` have basis `{e_u : u in U}`. For every set `P` of `p = d - r + 1` axes
//! and every vertex `v`,
//!
//! ```text
//! f^(P)_v = sum_{j_1..j_p} prod_a M^(k_a)[v_{k_a}, j_a] e_{pi(v)}
//! ```
//!
//! where `pi` overwrites coordinate `k_a` with `j_a <= t_{k_a} - 1`, and
//! `f_v = sum_P f^(P)_v`. On every edge `S` the products of per-axis row
//! dependencies `lambda_{S,v}` kill `sum_v lambda_{S,v} f^(P)_v`, so each
//! infected vertex's `f_v` stays in the span of the seed's vectors. Since the
//! `f_v` span `W`, any percolating set has at least `dim W = |U|` vertices.

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{
    build_general_position_matrix, dependency_coeffs, rank_of, verify_general_position,
    AlgebraError, EliminationBasis, Rational, RationalMatrix, RationalVector,
};
use crate::grid::{
    construct_u, enumerate_edges, extremal_size, next_combination, Family, GridEdge, GridError,
    GridSpec, MultiIndex,
};
use crate::percolation::{closure, grid_hypergraph};

#[derive(Debug, Error)]
pub enum CertificateError {
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("projection repeats coordinate {axis}")]
    DuplicateAxis { axis: usize },
    #[error("projection value {value} on axis {axis} outside 1..={n}")]
    ValueOutOfRange { axis: usize, value: usize, n: usize },
    #[error("projection has {coords} coordinates but {values} values")]
    ProjectionArity { coords: usize, values: usize },
    #[error("projected axis set {axes:?} must be {expected} distinct sorted axes below {d}")]
    BadAxisSet {
        axes: Vec<usize>,
        expected: usize,
        d: usize,
    },
    #[error("axis {axis}: matrix is {rows}x{cols}, expected {n}x{want_cols}")]
    BadAxisMatrix {
        axis: usize,
        rows: usize,
        cols: usize,
        n: usize,
        want_cols: usize,
    },
    #[error("axis {axis}: matrix is not in general position")]
    NotGeneralPosition { axis: usize },
    #[error("edge {edge} is not an edge of the grid family")]
    InvalidEdge { edge: String },
    #[error("vertex {vertex} is not in edge {edge}")]
    NotInEdge { vertex: String, edge: String },
    #[error("f^(P)_{vertex} with P={axes:?} reaches {target}, which is outside U")]
    SupportOutsideU {
        vertex: String,
        axes: Vec<usize>,
        target: String,
    },
    #[error("dependency fails on edge {edge} for projected axes {axes:?}")]
    DependencyResidual {
        edge: String,
        axes: Option<Vec<usize>>,
    },
    #[error("f-vectors have rank {rank}, expected |U| = {u_size}")]
    RankDeficit { rank: usize, u_size: usize },
    #[error("vertex id {id} out of range")]
    VertexOutOfRange { id: usize },
}

/// Sparse vector over basis positions of `W`, sorted by position.
type Terms = Vec<(usize, Rational)>;

/// Everything fixed before any vector is built: the grid, per-axis matrices,
/// and the basis positions of `U`.
#[derive(Debug, Clone)]
pub struct CertificateContext {
    spec: GridSpec,
    family: Family,
    axis_matrices: Vec<RationalMatrix>,
    u_vertices: Vec<usize>,
    u_position: Vec<Option<usize>>,
    subsets: Vec<Vec<usize>>,
}

impl CertificateContext {
    /// Context with `M^(k)` from [`build_general_position_matrix`].
    pub fn new(spec: &GridSpec, family: Family) -> Result<Self, CertificateError> {
        let matrices = spec
            .dims()
            .iter()
            .zip(spec.thick())
            .map(|(&n, &t)| build_general_position_matrix(n, t))
            .collect::<Result<Vec<_>, _>>()?;
        Self::with_axis_matrices(spec, family, matrices)
    }

    /// Context with caller-supplied matrices, each `n_k x (t_k - 1)` and in
    /// general position.
    pub fn with_axis_matrices(
        spec: &GridSpec,
        family: Family,
        axis_matrices: Vec<RationalMatrix>,
    ) -> Result<Self, CertificateError> {
        if axis_matrices.len() != spec.d() {
            return Err(AlgebraError::DimensionMismatch {
                expected: spec.d(),
                got: axis_matrices.len(),
            }
            .into());
        }
        for (axis, m) in axis_matrices.iter().enumerate() {
            let (n, t) = (spec.dims()[axis], spec.thick()[axis]);
            if m.rows() != n || m.cols() != t - 1 {
                return Err(CertificateError::BadAxisMatrix {
                    axis,
                    rows: m.rows(),
                    cols: m.cols(),
                    n,
                    want_cols: t - 1,
                });
            }
            if !verify_general_position(m, t)? {
                return Err(CertificateError::NotGeneralPosition { axis });
            }
        }
        let mut u_position = vec![None; spec.num_vertices()];
        let mut u_vertices = Vec::new();
        for v in construct_u(spec) {
            let id = spec.encode_unchecked(v.coords());
            u_position[id] = Some(u_vertices.len());
            u_vertices.push(id);
        }
        let p = spec.projected();
        let mut subsets = Vec::new();
        let mut sel: Vec<usize> = (0..p).collect();
        loop {
            subsets.push(sel.clone());
            if !next_combination(&mut sel, spec.d() - 1) {
                break;
            }
        }
        Ok(CertificateContext {
            spec: spec.clone(),
            family,
            axis_matrices,
            u_vertices,
            u_position,
            subsets,
        })
    }

    pub fn spec(&self) -> &GridSpec {
        &self.spec
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn axis_matrices(&self) -> &[RationalMatrix] {
        &self.axis_matrices
    }

    pub fn u_size(&self) -> usize {
        self.u_vertices.len()
    }

    /// Vertex ids of `U`, in basis order.
    pub fn u_vertices(&self) -> &[usize] {
        &self.u_vertices
    }

    /// Basis position of `e_v`, if `v` is in `U`.
    pub fn u_position(&self, id: usize) -> Option<usize> {
        self.u_position.get(id).copied().flatten()
    }

    /// All projected axis sets `P`, lexicographic.
    pub fn subsets(&self) -> &[Vec<usize>] {
        &self.subsets
    }

    fn check_axes(&self, axes: &[usize]) -> Result<(), CertificateError> {
        let ok = axes.len() == self.spec.projected()
            && axes.windows(2).all(|w| w[0] < w[1])
            && axes.iter().all(|&a| a < self.spec.d());
        if ok {
            Ok(())
        } else {
            Err(CertificateError::BadAxisSet {
                axes: axes.to_vec(),
                expected: self.spec.projected(),
                d: self.spec.d(),
            })
        }
    }

    /// `f^(P)_v` as sparse terms over basis positions.
    fn component_terms(&self, v: &MultiIndex, axes: &[usize]) -> Result<Terms, CertificateError> {
        let p = axes.len();
        let mut js = vec![1usize; p];
        let mut coords = v.coords().to_vec();
        let mut terms = Vec::new();
        loop {
            let mut coeff = Rational::from_integer(1.into());
            for (a, &axis) in axes.iter().enumerate() {
                coeff *= self.axis_matrices[axis].get(v.get(axis) - 1, js[a] - 1);
                if coeff.is_zero() {
                    break;
                }
            }
            if !coeff.is_zero() {
                for (a, &axis) in axes.iter().enumerate() {
                    coords[axis] = js[a];
                }
                let id = self.spec.encode_unchecked(&coords);
                match self.u_position[id] {
                    Some(pos) => terms.push((pos, coeff)),
                    None => {
                        return Err(CertificateError::SupportOutsideU {
                            vertex: v.to_string(),
                            axes: axes.to_vec(),
                            target: MultiIndex::new(coords).to_string(),
                        })
                    }
                }
            }
            // odometer over j_a in 1..=t_{k_a}-1
            let mut a = p;
            loop {
                if a == 0 {
                    terms.sort_by_key(|(pos, _)| *pos);
                    return Ok(terms);
                }
                a -= 1;
                if js[a] < self.spec.thick()[axes[a]] - 1 {
                    js[a] += 1;
                    break;
                }
                js[a] = 1;
            }
        }
    }

    fn densify(&self, terms: &Terms) -> RationalVector {
        let mut out = RationalVector::zeros(self.u_size());
        for (pos, c) in terms {
            out.entries_mut()[*pos] += c;
        }
        out
    }

    /// `f^(P)_v` as a dense vector over `U`.
    pub fn f_component(
        &self,
        v: &MultiIndex,
        axes: &[usize],
    ) -> Result<RationalVector, CertificateError> {
        self.spec.check(v)?;
        self.check_axes(axes)?;
        Ok(self.densify(&self.component_terms(v, axes)?))
    }

    /// `f_v = sum_P f^(P)_v`.
    pub fn f_vector(&self, v: &MultiIndex) -> Result<RationalVector, CertificateError> {
        self.spec.check(v)?;
        let mut out = RationalVector::zeros(self.u_size());
        for axes in &self.subsets {
            for (pos, c) in self.component_terms(v, axes)? {
                out.entries_mut()[pos] += c;
            }
        }
        Ok(out)
    }

    fn check_edge(&self, edge: &GridEdge) -> Result<(), CertificateError> {
        let spec = &self.spec;
        let bad = || CertificateError::InvalidEdge {
            edge: edge.to_string(),
        };
        if edge.d() != spec.d() || edge.varying().len() != spec.r() {
            return Err(bad());
        }
        for (&axis, set) in edge.varying().iter().zip(edge.values()) {
            let sorted = set.windows(2).all(|w| w[0] < w[1]);
            let in_range = set.iter().all(|&x| x >= 1 && x <= spec.dims()[axis]);
            if set.len() != spec.thick()[axis] || !sorted || !in_range {
                return Err(bad());
            }
        }
        for &(axis, x) in edge.fixed() {
            if axis >= spec.d() || x < 1 || x > spec.dims()[axis] || edge.varying().contains(&axis)
            {
                return Err(bad());
            }
        }
        Ok(())
    }

    /// Per varying axis `l`, the dependency `lambda_{I_l, .}` of the rows of
    /// `M^(l)` indexed by `I_l`.
    pub fn edge_lambdas(&self, edge: &GridEdge) -> Result<Vec<RationalVector>, CertificateError> {
        self.check_edge(edge)?;
        edge.varying()
            .iter()
            .zip(edge.values())
            .map(|(&axis, set)| Ok(dependency_coeffs(&self.axis_matrices[axis], set)?))
            .collect()
    }

    /// `lambda_{S,v} = prod_{l in D(S)} lambda_{I_l, v_l}`.
    pub fn edge_coefficient(
        &self,
        edge: &GridEdge,
        v: &MultiIndex,
    ) -> Result<Rational, CertificateError> {
        let lambdas = self.edge_lambdas(edge)?;
        if !edge.contains(v) {
            return Err(CertificateError::NotInEdge {
                vertex: v.to_string(),
                edge: edge.to_string(),
            });
        }
        Ok(coefficient_from(edge, &lambdas, v))
    }
}

fn coefficient_from(edge: &GridEdge, lambdas: &[RationalVector], v: &MultiIndex) -> Rational {
    let mut c = Rational::from_integer(1.into());
    for ((&axis, set), lambda) in edge.varying().iter().zip(edge.values()).zip(lambdas) {
        let pos = set
            .binary_search(&v.get(axis))
            .expect("vertex lies in edge");
        c *= &lambda[pos];
    }
    c
}

/// `pi^{k_1..k_p}_{j_1..j_p}(v)`: `v` with coordinate `coords[a]` set to
/// `values[a]`.
pub fn project(
    spec: &GridSpec,
    v: &MultiIndex,
    coords: &[usize],
    values: &[usize],
) -> Result<MultiIndex, CertificateError> {
    spec.check(v)?;
    if coords.len() != values.len() {
        return Err(CertificateError::ProjectionArity {
            coords: coords.len(),
            values: values.len(),
        });
    }
    let mut out = v.coords().to_vec();
    let mut seen = vec![false; spec.d()];
    for (&axis, &value) in coords.iter().zip(values) {
        if axis >= spec.d() {
            return Err(GridError::WrongArity {
                got: axis + 1,
                want: spec.d(),
            }
            .into());
        }
        if std::mem::replace(&mut seen[axis], true) {
            return Err(CertificateError::DuplicateAxis { axis });
        }
        let n = spec.dims()[axis];
        if value < 1 || value > n {
            return Err(CertificateError::ValueOutOfRange { axis, value, n });
        }
        out[axis] = value;
    }
    Ok(MultiIndex::new(out))
}

#[derive(Debug, Clone)]
pub struct CertifyOptions {
    /// Edges to verify. `K` also covers `P`, since `P`'s edges are a subset.
    pub edge_family: Family,
    /// Worker threads for the per-edge checks; 1 runs inline.
    pub jobs: usize,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions {
            edge_family: Family::K,
            jobs: 1,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Certificate {
    context: CertificateContext,
    components: Vec<Vec<Terms>>,
    f_vectors: Vec<RationalVector>,
    rank: Option<usize>,
    edges_checked: u64,
    verified_span: bool,
    verified_dependencies: bool,
    lower_bound: u128,
}

impl Certificate {
    /// Builds every `f^(P)_v` and `f_v`. Nothing is verified yet.
    pub fn build(context: CertificateContext) -> Result<Self, CertificateError> {
        let spec = context.spec().clone();
        let mut components = Vec::with_capacity(spec.num_vertices());
        let mut f_vectors = Vec::with_capacity(spec.num_vertices());
        for v in spec.vertices() {
            let per_subset = context
                .subsets()
                .iter()
                .map(|axes| context.component_terms(&v, axes))
                .collect::<Result<Vec<_>, _>>()?;
            let mut f = RationalVector::zeros(context.u_size());
            for terms in &per_subset {
                for (pos, c) in terms {
                    f.entries_mut()[*pos] += c;
                }
            }
            components.push(per_subset);
            f_vectors.push(f);
        }
        Ok(Certificate {
            context,
            components,
            f_vectors,
            rank: None,
            edges_checked: 0,
            verified_span: false,
            verified_dependencies: false,
            lower_bound: 0,
        })
    }

    pub fn context(&self) -> &CertificateContext {
        &self.context
    }

    pub fn f_vectors(&self) -> &[RationalVector] {
        &self.f_vectors
    }

    pub fn f_vector(&self, id: usize) -> Option<&RationalVector> {
        self.f_vectors.get(id)
    }

    pub fn verified_span(&self) -> bool {
        self.verified_span
    }

    pub fn verified_dependencies(&self) -> bool {
        self.verified_dependencies
    }

    /// `|U|` once both checks passed, 0 before.
    pub fn lower_bound(&self) -> u128 {
        self.lower_bound
    }

    pub fn rank(&self) -> Option<usize> {
        self.rank
    }

    pub fn edges_checked(&self) -> u64 {
        self.edges_checked
    }

    /// Rank of the full f-matrix must equal `|U|`.
    pub fn verify_span(&mut self) -> Result<usize, CertificateError> {
        let u_size = self.context.u_size();
        let rank = rank_of(&self.f_vectors, u_size)?;
        self.rank = Some(rank);
        self.verified_span = rank == u_size;
        self.refresh_bound();
        if self.verified_span {
            Ok(rank)
        } else {
            Err(CertificateError::RankDeficit { rank, u_size })
        }
    }

    /// For every edge `S` of `family` and every `P`:
    /// `sum_{v in S} lambda_{S,v} f^(P)_v = 0`, and the summed form on the
    /// stored `f_v`. Reports the first failing edge in enumeration order.
    pub fn verify_dependencies(
        &mut self,
        family: Family,
        jobs: usize,
    ) -> Result<u64, CertificateError> {
        let edges: Vec<GridEdge> = enumerate_edges(self.context.spec(), family).collect();
        let check = |edge: &GridEdge| self.check_edge_dependency(edge).err();
        let failure = if jobs <= 1 {
            edges.iter().find_map(check)
        } else {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs)
                .build()
                .expect("thread pool");
            pool.install(|| edges.par_iter().find_map_first(check))
        };
        self.verified_dependencies = failure.is_none();
        self.edges_checked = if failure.is_none() {
            edges.len() as u64
        } else {
            0
        };
        self.refresh_bound();
        match failure {
            Some(e) => Err(e),
            None => Ok(edges.len() as u64),
        }
    }

    fn refresh_bound(&mut self) {
        self.lower_bound = if self.verified_span && self.verified_dependencies {
            self.context.u_size() as u128
        } else {
            0
        };
    }

    fn check_edge_dependency(&self, edge: &GridEdge) -> Result<(), CertificateError> {
        let ctx = &self.context;
        let spec = ctx.spec();
        let lambdas = ctx.edge_lambdas(edge)?;
        let members: Vec<(usize, Rational)> = edge
            .vertices()
            .iter()
            .map(|v| {
                (
                    spec.encode_unchecked(v.coords()),
                    coefficient_from(edge, &lambdas, v),
                )
            })
            .collect();
        let residual = || CertificateError::DependencyResidual {
            edge: edge.to_string(),
            axes: None,
        };
        if members.iter().any(|(_, c)| c.is_zero()) {
            return Err(residual());
        }
        for (s, axes) in ctx.subsets().iter().enumerate() {
            let mut acc = RationalVector::zeros(ctx.u_size());
            for (id, c) in &members {
                for (pos, x) in &self.components[*id][s] {
                    acc.entries_mut()[*pos] += c * x;
                }
            }
            if !acc.is_zero() {
                return Err(CertificateError::DependencyResidual {
                    edge: edge.to_string(),
                    axes: Some(axes.clone()),
                });
            }
        }
        let mut acc = RationalVector::zeros(ctx.u_size());
        for (id, c) in &members {
            acc.add_scaled(c, &self.f_vectors[*id])?;
        }
        if acc.is_zero() {
            Ok(())
        } else {
            Err(residual())
        }
    }

    /// For an axis `k` in both `P` and `D(S)`, the partial sums
    /// `sum_{v in L} lambda_{S,v} f^(P)_v` over each of the `prod_{l != k} t_l`
    /// lines `L` of `S` along axis `k`.
    pub fn line_sums(
        &self,
        edge: &GridEdge,
        axes: &[usize],
        axis: usize,
    ) -> Result<Vec<RationalVector>, CertificateError> {
        let ctx = &self.context;
        ctx.check_axes(axes)?;
        let s = ctx
            .subsets()
            .iter()
            .position(|p| p == axes)
            .expect("checked axis set");
        let lambdas = ctx.edge_lambdas(edge)?;
        if !axes.contains(&axis) || edge.value_set(axis).is_none() {
            return Err(CertificateError::BadAxisSet {
                axes: axes.to_vec(),
                expected: ctx.spec().projected(),
                d: ctx.spec().d(),
            });
        }
        let mut lines: Vec<(Vec<usize>, RationalVector)> = Vec::new();
        for v in edge.vertices() {
            let mut key = v.coords().to_vec();
            key[axis] = 0;
            let c = coefficient_from(edge, &lambdas, &v);
            let id = ctx.spec().encode_unchecked(v.coords());
            let slot = match lines.iter().position(|(k, _)| *k == key) {
                Some(i) => i,
                None => {
                    lines.push((key, RationalVector::zeros(ctx.u_size())));
                    lines.len() - 1
                }
            };
            for (pos, x) in &self.components[id][s] {
                lines[slot].1.entries_mut()[*pos] += &c * x;
            }
        }
        Ok(lines.into_iter().map(|(_, v)| v).collect())
    }

    pub fn to_json(&self, with_vectors: bool) -> CertificateJson {
        let spec = self.context.spec();
        CertificateJson {
            spec: SpecJson {
                dims: spec.dims().to_vec(),
                thick: spec.thick().to_vec(),
                r: spec.r(),
            },
            family: self.context.family(),
            axis_matrices: self
                .context
                .axis_matrices()
                .iter()
                .map(|m| {
                    (0..m.rows())
                        .map(|i| m.row(i).iter().map(MatrixEntry::from_rational).collect())
                        .collect()
                })
                .collect(),
            lower_bound: self.lower_bound,
            verified_span: self.verified_span,
            verified_dependencies: self.verified_dependencies,
            u_size: self.context.u_size(),
            f_vectors: with_vectors.then(|| {
                self.f_vectors
                    .iter()
                    .map(|f| {
                        f.entries()
                            .iter()
                            .map(|x| format!("{}/{}", x.numer(), x.denom()))
                            .collect()
                    })
                    .collect()
            }),
        }
    }
}

/// Matrix entries serialize as JSON integers when they are integral and fit,
/// as `"p/q"` strings otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum MatrixEntry {
    Int(i64),
    Text(String),
}

impl MatrixEntry {
    fn from_rational(x: &Rational) -> Self {
        use num_traits::ToPrimitive;
        match x.is_integer().then(|| x.numer().to_i64()).flatten() {
            Some(i) => MatrixEntry::Int(i),
            None => MatrixEntry::Text(format!("{}/{}", x.numer(), x.denom())),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SpecJson {
    pub dims: Vec<usize>,
    pub thick: Vec<usize>,
    pub r: usize,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CertificateJson {
    pub spec: SpecJson,
    pub family: Family,
    pub axis_matrices: Vec<Vec<Vec<MatrixEntry>>>,
    pub lower_bound: u128,
    pub verified_span: bool,
    pub verified_dependencies: bool,
    pub u_size: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f_vectors: Option<Vec<Vec<String>>>,
}

/// Builds and fully verifies the certificate for `spec`. On success
/// `lower_bound == |U| == extremal_size(spec)`.
pub fn certified_lower_bound(
    spec: &GridSpec,
    family: Family,
) -> Result<Certificate, CertificateError> {
    certify_with(spec, family, &CertifyOptions::default())
}

pub fn certify_with(
    spec: &GridSpec,
    family: Family,
    options: &CertifyOptions,
) -> Result<Certificate, CertificateError> {
    let context = CertificateContext::new(spec, family)?;
    let mut cert = Certificate::build(context)?;
    cert.verify_dependencies(options.edge_family, options.jobs)?;
    cert.verify_span()?;
    debug_assert_eq!(Some(cert.lower_bound), extremal_size(spec).ok());
    Ok(cert)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AuditStep {
    pub vertex: usize,
    pub edge: usize,
    pub in_span: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AuditReport {
    pub percolated: bool,
    pub initial_size: usize,
    pub final_size: usize,
    /// `dim span{f_a : a in A}`.
    pub seed_rank: usize,
    pub u_size: usize,
    pub all_steps_in_span: bool,
    pub steps: Vec<AuditStep>,
}

impl AuditReport {
    /// A percolating seed whose vectors span `W`, with every infection
    /// staying inside that span.
    pub fn consistent(&self) -> bool {
        self.percolated && self.all_steps_in_span && self.seed_rank == self.u_size
    }

    pub fn summary(&self) -> &'static str {
        if !self.percolated {
            "did not percolate"
        } else if self.consistent() {
            "percolated; seed spans W and every step stays in span"
        } else {
            "percolated but the span walk failed"
        }
    }
}

/// Replays the closure of `seed` under `family`, tracking
/// `span{f_a : a in A}` and checking each newly infected vertex's `f_v`
/// already lies in it.
pub fn audit_percolating_set(
    cert: &Certificate,
    family: Family,
    seed: &[usize],
) -> Result<AuditReport, CertificateError> {
    let ctx = cert.context();
    let spec = ctx.spec();
    if let Some(&id) = seed.iter().find(|&&id| id >= spec.num_vertices()) {
        return Err(CertificateError::VertexOutOfRange { id });
    }
    let mut seed: Vec<usize> = seed.to_vec();
    seed.sort_unstable();
    seed.dedup();
    let h = grid_hypergraph(spec, family);
    let result = closure(&h, &seed).expect("ids checked");
    let mut basis = EliminationBasis::new(ctx.u_size());
    for &a in &seed {
        basis.insert(&cert.f_vectors()[a])?;
    }
    let seed_rank = basis.rank();
    let mut steps = Vec::with_capacity(result.trace.len());
    for step in &result.trace {
        let grew = basis.insert(&cert.f_vectors()[step.vertex])?;
        steps.push(AuditStep {
            vertex: step.vertex,
            edge: step.edge,
            in_span: !grew,
        });
    }
    Ok(AuditReport {
        percolated: result.len() == spec.num_vertices(),
        initial_size: seed.len(),
        final_size: result.len(),
        seed_rank,
        u_size: ctx.u_size(),
        all_steps_in_span: steps.iter().all(|s| s.in_span),
        steps,
    })
}
