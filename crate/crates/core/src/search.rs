//! Brute-force oracles: exact minimum percolating sets by subset
//! enumeration, randomized greedy upper bounds, and `r`-neighbour bootstrap
//! percolation on graphs.

use std::collections::VecDeque;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::grid::{binomial, Family, GridError, GridSpec};
use crate::percolation::{BootstrapEngine, Hypergraph};

pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Candidates handed to one worker at a time.
const CHUNK: u64 = 2048;

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("search budget of {budget} closure calls exceeded")]
    BudgetExceeded { budget: u64 },
    #[error("no percolating set of size at most {upper}")]
    NotFound { upper: usize },
    #[error("need 0 <= lower <= upper <= {num_vertices}, got lower={lower}, upper={upper}")]
    BadHints {
        lower: usize,
        upper: usize,
        num_vertices: usize,
    },
    #[error("a set of size {found} percolates below the promised lower bound {lower}")]
    LowerHintViolated { lower: usize, found: usize },
    #[error("axis {axis} has length {n}, need at least 1")]
    EmptyAxis { axis: usize, n: usize },
    #[error("hypercube axes must all have length 2, got {dims:?}")]
    NotHypercube { dims: Vec<usize> },
    #[error("neighbour threshold must be at least 1")]
    BadThreshold,
    #[error(transparent)]
    Grid(#[from] GridError),
}

/// A process whose closure can be evaluated repeatedly from scratch.
pub trait Spread: Sync {
    type Workspace: Send;

    fn num_vertices(&self) -> usize;
    fn workspace(&self) -> Self::Workspace;
    /// Size of the closure of `seed`.
    fn closure_size(&self, ws: &mut Self::Workspace, seed: &[usize]) -> usize;
    /// Vertices that cannot be infected by the rule and so belong to every
    /// percolating set.
    fn mandatory(&self) -> Vec<usize>;

    fn percolates(&self, ws: &mut Self::Workspace, seed: &[usize]) -> bool {
        self.closure_size(ws, seed) == self.num_vertices()
    }
}

/// The hypergraph bootstrap rule with a shared incidence table.
pub struct HypergraphRule<'h> {
    graph: &'h Hypergraph,
    incidence: Vec<Vec<usize>>,
}

impl<'h> HypergraphRule<'h> {
    pub fn new(graph: &'h Hypergraph) -> Self {
        HypergraphRule {
            graph,
            incidence: graph.incidence(),
        }
    }
}

impl<'h> Spread for HypergraphRule<'h> {
    type Workspace = BootstrapEngine<'h>;

    fn num_vertices(&self) -> usize {
        self.graph.num_vertices()
    }

    fn workspace(&self) -> BootstrapEngine<'h> {
        BootstrapEngine::with_incidence(self.graph, self.incidence.clone())
    }

    fn closure_size(&self, ws: &mut BootstrapEngine<'h>, seed: &[usize]) -> usize {
        ws.closure_size(seed)
    }

    fn mandatory(&self) -> Vec<usize> {
        self.graph.isolated_vertices()
    }
}

/// Simple undirected graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds from an edge list; self-loops are rejected, repeats collapse.
    pub fn from_edges(num_vertices: usize, edges: &[(usize, usize)]) -> Result<Self, SearchError> {
        let mut adjacency = vec![Vec::new(); num_vertices];
        for &(a, b) in edges {
            if a == b || a >= num_vertices || b >= num_vertices {
                return Err(GridError::IdOutOfRange {
                    id: a.max(b),
                    size: num_vertices,
                }
                .into());
            }
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Graph { adjacency })
    }

    pub fn num_vertices(&self) -> usize {
        self.adjacency.len()
    }

    pub fn num_edges(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphKind {
    /// `P_{n_1} x ... x P_{n_d}`: neighbours differ by one in one coordinate.
    Grid,
    /// `Q_d`; the dims list must be `d` copies of 2.
    Hypercube,
}

/// The grid graph on `[n_1] x ... x [n_d]` with row-major ids.
pub fn grid_graph(dims: &[usize]) -> Result<Graph, SearchError> {
    if dims.is_empty() {
        return Err(GridError::NoAxes.into());
    }
    if let Some((axis, &n)) = dims.iter().enumerate().find(|(_, &n)| n < 1) {
        return Err(SearchError::EmptyAxis { axis, n });
    }
    let total = dims
        .iter()
        .try_fold(1usize, |acc, &n| acc.checked_mul(n))
        .ok_or(GridError::TooLarge)?;
    let mut edges = Vec::new();
    let mut stride = 1;
    let mut strides = vec![0; dims.len()];
    for axis in (0..dims.len()).rev() {
        strides[axis] = stride;
        stride *= dims[axis];
    }
    for id in 0..total {
        for (axis, &n) in dims.iter().enumerate() {
            let coord = id / strides[axis] % n;
            if coord + 1 < n {
                edges.push((id, id + strides[axis]));
            }
        }
    }
    Graph::from_edges(total, &edges)
}

pub fn hypercube(d: usize) -> Result<Graph, SearchError> {
    grid_graph(&vec![2; d])
}

pub fn build_graph(kind: GraphKind, dims: &[usize]) -> Result<Graph, SearchError> {
    match kind {
        GraphKind::Grid => grid_graph(dims),
        GraphKind::Hypercube => {
            if dims.iter().any(|&n| n != 2) {
                return Err(SearchError::NotHypercube {
                    dims: dims.to_vec(),
                });
            }
            hypercube(dims.len())
        }
    }
}

/// `r`-neighbour bootstrap: a vertex becomes infected once at least `r`
/// of its neighbours are.
pub struct NeighbourRule<'g> {
    graph: &'g Graph,
    threshold: usize,
}

impl<'g> NeighbourRule<'g> {
    pub fn new(graph: &'g Graph, threshold: usize) -> Result<Self, SearchError> {
        if threshold == 0 {
            return Err(SearchError::BadThreshold);
        }
        Ok(NeighbourRule { graph, threshold })
    }
}

pub struct NeighbourWorkspace {
    infected: Vec<bool>,
    count: Vec<usize>,
    queue: VecDeque<usize>,
}

impl Spread for NeighbourRule<'_> {
    type Workspace = NeighbourWorkspace;

    fn num_vertices(&self) -> usize {
        self.graph.num_vertices()
    }

    fn workspace(&self) -> NeighbourWorkspace {
        let n = self.graph.num_vertices();
        NeighbourWorkspace {
            infected: vec![false; n],
            count: vec![0; n],
            queue: VecDeque::new(),
        }
    }

    fn closure_size(&self, ws: &mut NeighbourWorkspace, seed: &[usize]) -> usize {
        ws.infected.iter_mut().for_each(|x| *x = false);
        ws.count.iter_mut().for_each(|x| *x = 0);
        ws.queue.clear();
        let mut size = 0;
        for &v in seed {
            if !ws.infected[v] {
                ws.infected[v] = true;
                size += 1;
                ws.queue.push_back(v);
            }
        }
        while let Some(v) = ws.queue.pop_front() {
            for &w in self.graph.neighbours(v) {
                if ws.infected[w] {
                    continue;
                }
                ws.count[w] += 1;
                if ws.count[w] >= self.threshold {
                    ws.infected[w] = true;
                    size += 1;
                    ws.queue.push_back(w);
                }
            }
        }
        size
    }

    fn mandatory(&self) -> Vec<usize> {
        (0..self.graph.num_vertices())
            .filter(|&v| self.graph.neighbours(v).len() < self.threshold)
            .collect()
    }
}

/// Closure under the `r`-neighbour rule, sorted.
pub fn rn_closure(graph: &Graph, seed: &[usize], r: usize) -> Result<Vec<usize>, SearchError> {
    if let Some(&v) = seed.iter().find(|&&v| v >= graph.num_vertices()) {
        return Err(GridError::IdOutOfRange {
            id: v,
            size: graph.num_vertices(),
        }
        .into());
    }
    let rule = NeighbourRule::new(graph, r)?;
    let mut ws = rule.workspace();
    rule.closure_size(&mut ws, seed);
    Ok((0..graph.num_vertices())
        .filter(|&v| ws.infected[v])
        .collect())
}

#[derive(Debug, Clone)]
pub struct SearchOptions {
    /// Maximum number of closure evaluations.
    pub budget: u64,
    pub jobs: usize,
    /// Force vertices the rule can never infect into every candidate.
    pub mandatory: bool,
    /// Before searching from `lower`, exhaust level `lower - 1` and fail if
    /// anything there percolates.
    pub confirm_lower: bool,
    /// Automorphisms (as vertex permutations) used to skip candidates that
    /// some automorphism maps to a lexicographically smaller set. Never
    /// changes the result, only the number of closures run.
    pub symmetries: Vec<Vec<usize>>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: DEFAULT_BUDGET,
            jobs: 1,
            mandatory: false,
            confirm_lower: false,
            symmetries: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SearchResult {
    pub minimum: usize,
    /// Lexicographically first percolating set of that size.
    pub witness: Vec<usize>,
    /// Closure evaluations performed.
    pub tested: u64,
    /// Every smaller size was ruled out by enumeration.
    pub exhaustive: bool,
}

/// Lexicographic unranking of `k`-subsets of `0..n`.
fn unrank_combination(n: usize, k: usize, mut rank: u128) -> Vec<usize> {
    let mut out = Vec::with_capacity(k);
    let mut next = 0;
    for slot in 0..k {
        let remaining = k - slot - 1;
        loop {
            let block = binomial(n - next - 1, remaining).unwrap_or(u128::MAX);
            if rank < block {
                break;
            }
            rank -= block;
            next += 1;
        }
        out.push(next);
        next += 1;
    }
    out
}

fn is_canonical(candidate: &[usize], symmetries: &[Vec<usize>], image: &mut Vec<usize>) -> bool {
    symmetries.iter().all(|perm| {
        image.clear();
        image.extend(candidate.iter().map(|&v| perm[v]));
        image.sort_unstable();
        image.as_slice() >= candidate
    })
}

struct Level<'a, R: Spread> {
    rule: &'a R,
    pool: &'a [usize],
    fixed: &'a [usize],
    symmetries: &'a [Vec<usize>],
}

impl<R: Spread> Level<'_, R> {
    /// Scans candidates `start..end` (ranks among `k`-subsets of the pool).
    /// Returns the closures run up to and including the first hit, and the hit.
    fn scan(&self, k: usize, start: u128, end: u128) -> (u64, Option<Vec<usize>>) {
        let mut ws = self.rule.workspace();
        let mut sel = unrank_combination(self.pool.len(), k, start);
        let mut candidate = Vec::with_capacity(self.fixed.len() + k);
        let mut image = Vec::new();
        let mut tested = 0;
        let mut rank = start;
        while rank < end {
            candidate.clear();
            candidate.extend_from_slice(self.fixed);
            candidate.extend(sel.iter().map(|&i| self.pool[i]));
            candidate.sort_unstable();
            if self.symmetries.is_empty() || is_canonical(&candidate, self.symmetries, &mut image) {
                tested += 1;
                if self.rule.percolates(&mut ws, &candidate) {
                    return (tested, Some(candidate));
                }
            }
            rank += 1;
            if k == 0 || !crate::grid::next_combination(&mut sel, self.pool.len() - 1) {
                break;
            }
        }
        (tested, None)
    }
}

/// Finds the lexicographically first percolating set among all sets of
/// `size` vertices. Deterministic regardless of `jobs`.
fn search_level<R: Spread>(
    rule: &R,
    size: usize,
    fixed: &[usize],
    pool: &[usize],
    options: &SearchOptions,
    thread_pool: Option<&rayon::ThreadPool>,
    tested: &mut u64,
) -> Result<Option<Vec<usize>>, SearchError> {
    if size < fixed.len() || size - fixed.len() > pool.len() {
        return Ok(None);
    }
    let k = size - fixed.len();
    let total = binomial(pool.len(), k).unwrap_or(u128::MAX);
    let level = Level {
        rule,
        pool,
        fixed,
        symmetries: &options.symmetries,
    };
    let workers = thread_pool.map_or(1, |p| p.current_num_threads()).max(1) as u128;
    let batch = CHUNK as u128 * workers;
    let mut start = 0u128;
    while start < total {
        let end = (start + batch).min(total);
        let chunks: Vec<(u128, u128)> = (0..workers)
            .map(|w| {
                (
                    start + w * CHUNK as u128,
                    (start + (w + 1) * CHUNK as u128).min(end),
                )
            })
            .filter(|(a, b)| a < b)
            .collect();
        let results: Vec<(u64, Option<Vec<usize>>)> = match thread_pool {
            Some(tp) if chunks.len() > 1 => tp.install(|| {
                chunks
                    .par_iter()
                    .map(|&(a, b)| level.scan(k, a, b))
                    .collect()
            }),
            _ => chunks.iter().map(|&(a, b)| level.scan(k, a, b)).collect(),
        };
        // chunks are in rank order, so the first hit is the global first
        for (count, hit) in results {
            *tested += count;
            if *tested > options.budget {
                return Err(SearchError::BudgetExceeded {
                    budget: options.budget,
                });
            }
            if hit.is_some() {
                return Ok(hit);
            }
        }
        start = end;
    }
    Ok(None)
}

/// Smallest percolating set of `rule`, trying sizes `lower..=upper` in order.
pub fn min_percolating_with<R: Spread>(
    rule: &R,
    lower: usize,
    upper: usize,
    options: &SearchOptions,
) -> Result<SearchResult, SearchError> {
    let n = rule.num_vertices();
    if lower > upper || upper > n {
        return Err(SearchError::BadHints {
            lower,
            upper,
            num_vertices: n,
        });
    }
    let fixed = if options.mandatory {
        rule.mandatory()
    } else {
        Vec::new()
    };
    let pool: Vec<usize> = (0..n).filter(|v| fixed.binary_search(v).is_err()).collect();
    let thread_pool = (options.jobs > 1).then(|| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(options.jobs)
            .build()
            .expect("thread pool")
    });
    let mut tested = 0;
    let mut exhaustive = lower == 0 || (options.mandatory && lower <= fixed.len());
    if options.confirm_lower && lower > 0 {
        let below = lower - 1;
        if let Some(hit) = search_level(
            rule,
            below,
            &fixed,
            &pool,
            options,
            thread_pool.as_ref(),
            &mut tested,
        )? {
            return Err(SearchError::LowerHintViolated {
                lower,
                found: hit.len(),
            });
        }
        // percolation is monotone, so ruling out size lower-1 rules out everything below
        exhaustive = true;
    }
    for size in lower..=upper {
        if let Some(witness) = search_level(
            rule,
            size,
            &fixed,
            &pool,
            options,
            thread_pool.as_ref(),
            &mut tested,
        )? {
            return Ok(SearchResult {
                minimum: size,
                witness,
                tested,
                exhaustive,
            });
        }
    }
    Err(SearchError::NotFound { upper })
}

/// `m(H)` by exhaustive subset enumeration from `lower_hint` upward.
pub fn min_percolating_exact(
    graph: &Hypergraph,
    lower_hint: usize,
    upper_hint: usize,
    options: &SearchOptions,
) -> Result<SearchResult, SearchError> {
    min_percolating_with(&HypergraphRule::new(graph), lower_hint, upper_hint, options)
}

/// `m(G, r)` by exhaustive subset enumeration.
pub fn min_rn_percolating(
    graph: &Graph,
    r: usize,
    options: &SearchOptions,
) -> Result<SearchResult, SearchError> {
    let rule = NeighbourRule::new(graph, r)?;
    min_percolating_with(&rule, 0, graph.num_vertices(), options)
}

/// Randomized greedy deletion: start from all vertices and drop each vertex
/// (in a random order) whose removal keeps the set percolating. Returns the
/// smallest result over `trials` orders. Deterministic for a given seed.
pub fn greedy_upper_bound_with<R: Spread>(rule: &R, trials: usize, seed: u64) -> Vec<usize> {
    let n = rule.num_vertices();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ws = rule.workspace();
    let mut best: Vec<usize> = (0..n).collect();
    let mut order: Vec<usize> = (0..n).collect();
    for _ in 0..trials.max(1) {
        order.shuffle(&mut rng);
        let mut keep = vec![true; n];
        let mut current: Vec<usize> = (0..n).collect();
        for &v in &order {
            keep[v] = false;
            let trial: Vec<usize> = (0..n).filter(|&u| keep[u]).collect();
            if rule.percolates(&mut ws, &trial) {
                current = trial;
            } else {
                keep[v] = true;
            }
        }
        if current.len() < best.len() {
            best = current;
        }
    }
    best
}

pub fn greedy_upper_bound(graph: &Hypergraph, trials: usize, seed: u64) -> Vec<usize> {
    greedy_upper_bound_with(&HypergraphRule::new(graph), trials, seed)
}

type CoordMap = Box<dyn Fn(&mut [usize])>;

/// Generators of a subgroup of the automorphisms of the grid family on
/// row-major ids: adjacent value swaps on every axis (`K`) or axis
/// reversals (`P`), plus swaps of adjacent interchangeable axes.
pub fn grid_symmetries(spec: &GridSpec, family: Family) -> Vec<Vec<usize>> {
    let mut maps: Vec<CoordMap> = Vec::new();
    for axis in 0..spec.d() {
        let n = spec.dims()[axis];
        match family {
            Family::K => {
                for i in 1..n {
                    maps.push(Box::new(move |c: &mut [usize]| {
                        if c[axis] == i {
                            c[axis] = i + 1;
                        } else if c[axis] == i + 1 {
                            c[axis] = i;
                        }
                    }));
                }
            }
            Family::P => maps.push(Box::new(move |c: &mut [usize]| c[axis] = n + 1 - c[axis])),
        }
        if axis + 1 < spec.d()
            && spec.dims()[axis] == spec.dims()[axis + 1]
            && spec.thick()[axis] == spec.thick()[axis + 1]
        {
            maps.push(Box::new(move |c: &mut [usize]| c.swap(axis, axis + 1)));
        }
    }
    maps.iter()
        .map(|f| {
            spec.vertices()
                .map(|v| {
                    let mut c = v.into_coords();
                    f(&mut c);
                    spec.encode_unchecked(&c)
                })
                .collect()
        })
        .collect()
}
