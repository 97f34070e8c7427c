//! The hypergraph bootstrap process: a vertex becomes infected once it is the
//! only uninfected vertex of some edge.

use std::collections::VecDeque;
use std::fmt::Write as _;
use std::io::BufRead;

use thiserror::Error;

use crate::grid::{enumerate_edges, Family, GridSpec};

#[derive(Debug, Error)]
pub enum HypergraphError {
    #[error("vertex {vertex} out of range (hypergraph has {num_vertices} vertices)")]
    VertexOutOfRange { vertex: usize, num_vertices: usize },
    #[error("edge {edge} is empty")]
    EmptyEdge { edge: usize },
    #[error("edge {edge} repeats vertex {vertex}")]
    DuplicateVertex { edge: usize, vertex: usize },
    #[error("need n >= k >= 2, got n={n}, k={k}")]
    BadCliqueSize { n: usize, k: usize },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    num_vertices: usize,
    edges: Vec<Vec<usize>>,
}

impl Hypergraph {
    pub fn new(num_vertices: usize, edges: Vec<Vec<usize>>) -> Result<Self, HypergraphError> {
        for (i, e) in edges.iter().enumerate() {
            if e.is_empty() {
                return Err(HypergraphError::EmptyEdge { edge: i });
            }
            let mut seen = e.clone();
            seen.sort_unstable();
            for w in seen.windows(2) {
                if w[0] == w[1] {
                    return Err(HypergraphError::DuplicateVertex {
                        edge: i,
                        vertex: w[0],
                    });
                }
            }
            if let Some(&v) = seen.last().filter(|&&v| v >= num_vertices) {
                return Err(HypergraphError::VertexOutOfRange {
                    vertex: v,
                    num_vertices,
                });
            }
        }
        Ok(Hypergraph {
            num_vertices,
            edges,
        })
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// `incidence[v]` lists the edges containing `v`.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.num_vertices];
        for (i, e) in self.edges.iter().enumerate() {
            for &v in e {
                inc[v].push(i);
            }
        }
        inc
    }

    /// Vertices lying in no edge; they can never be infected.
    pub fn isolated_vertices(&self) -> Vec<usize> {
        let mut covered = vec![false; self.num_vertices];
        for e in &self.edges {
            for &v in e {
                covered[v] = true;
            }
        }
        (0..self.num_vertices).filter(|&v| !covered[v]).collect()
    }

    /// Parses the text format: a header `p <num_vertices> <num_edges>`
    /// followed by one line of space-separated 0-based vertex ids per edge.
    /// Blank lines and lines starting with `c` are skipped.
    pub fn read_text<R: BufRead>(reader: R) -> Result<Self, HypergraphError> {
        let mut header: Option<(usize, usize)> = None;
        let mut edges = Vec::new();
        for (i, line) in reader.lines().enumerate() {
            let line = line?;
            let lineno = i + 1;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('c') {
                continue;
            }
            let parse = |tok: &str| {
                tok.parse::<usize>().map_err(|_| HypergraphError::Parse {
                    line: lineno,
                    msg: format!("expected a non-negative integer, got {tok:?}"),
                })
            };
            match header {
                None => {
                    let toks: Vec<&str> = trimmed.split_whitespace().collect();
                    if toks.len() != 3 || toks[0] != "p" {
                        return Err(HypergraphError::Parse {
                            line: lineno,
                            msg: "expected header `p <num_vertices> <num_edges>`".into(),
                        });
                    }
                    header = Some((parse(toks[1])?, parse(toks[2])?));
                }
                Some(_) => {
                    let edge = trimmed
                        .split_whitespace()
                        .map(parse)
                        .collect::<Result<Vec<_>, _>>()?;
                    edges.push(edge);
                }
            }
        }
        let Some((n, m)) = header else {
            return Err(HypergraphError::Parse {
                line: 0,
                msg: "missing header".into(),
            });
        };
        if edges.len() != m {
            return Err(HypergraphError::Parse {
                line: 0,
                msg: format!("header announces {m} edges, found {}", edges.len()),
            });
        }
        Hypergraph::new(n, edges)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("p {} {}\n", self.num_vertices, self.edges.len());
        for e in &self.edges {
            let mut first = true;
            for v in e {
                if !first {
                    out.push(' ');
                }
                first = false;
                let _ = write!(out, "{v}");
            }
            out.push('\n');
        }
        out
    }
}

/// The grid family instance as an explicit hypergraph on row-major vertex
/// ids, edges in enumeration order.
pub fn grid_hypergraph(spec: &GridSpec, family: Family) -> Hypergraph {
    let edges = enumerate_edges(spec, family)
        .map(|e| {
            e.vertices()
                .iter()
                .map(|v| spec.encode_unchecked(v.coords()))
                .collect()
        })
        .collect();
    Hypergraph {
        num_vertices: spec.num_vertices(),
        edges,
    }
}

/// Weak saturation of `K_k` in `K_n` as a vertex process: vertices are the
/// `C(n,2)` pairs of `[n]` (lexicographic), edges are the pair sets of the
/// `C(n,k)` copies of `K_k`.
pub fn weak_saturation_hypergraph(n: usize, k: usize) -> Result<Hypergraph, HypergraphError> {
    if k < 2 || k > n {
        return Err(HypergraphError::BadCliqueSize { n, k });
    }
    let pair_id = |a: usize, b: usize| a * n - a * (a + 1) / 2 + (b - a - 1);
    let mut edges = Vec::new();
    let mut clique: Vec<usize> = (0..k).collect();
    loop {
        let mut e = Vec::with_capacity(k * (k - 1) / 2);
        for (i, &a) in clique.iter().enumerate() {
            for &b in &clique[i + 1..] {
                e.push(pair_id(a, b));
            }
        }
        edges.push(e);
        if !crate::grid::next_combination(&mut clique, n - 1) {
            break;
        }
    }
    Hypergraph::new(n * (n - 1) / 2, edges)
}

/// One infection: `vertex` was the last uninfected vertex of edge `edge`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InfectionStep {
    pub vertex: usize,
    pub edge: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureResult {
    /// `[A]`, sorted.
    pub final_set: Vec<usize>,
    pub trace: Vec<InfectionStep>,
}

impl ClosureResult {
    pub fn len(&self) -> usize {
        self.final_set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.final_set.is_empty()
    }
}

/// Reusable closure machinery for one hypergraph: incidence lists plus
/// scratch buffers, so repeated closures do not reallocate.
pub struct BootstrapEngine<'h> {
    graph: &'h Hypergraph,
    incidence: Vec<Vec<usize>>,
    infected: Vec<bool>,
    missing: Vec<usize>,
    queue: VecDeque<usize>,
}

impl<'h> BootstrapEngine<'h> {
    pub fn new(graph: &'h Hypergraph) -> Self {
        Self::with_incidence(graph, graph.incidence())
    }

    pub fn with_incidence(graph: &'h Hypergraph, incidence: Vec<Vec<usize>>) -> Self {
        BootstrapEngine {
            graph,
            incidence,
            infected: vec![false; graph.num_vertices],
            missing: vec![0; graph.edges.len()],
            queue: VecDeque::new(),
        }
    }

    pub fn graph(&self) -> &Hypergraph {
        self.graph
    }

    fn check(&self, seed: &[usize]) -> Result<(), HypergraphError> {
        match seed.iter().find(|&&v| v >= self.graph.num_vertices) {
            Some(&vertex) => Err(HypergraphError::VertexOutOfRange {
                vertex,
                num_vertices: self.graph.num_vertices,
            }),
            None => Ok(()),
        }
    }

    /// Runs the process and returns the number of infected vertices. Each
    /// edge keeps a count of uninfected members and is scanned only when the
    /// count drops to one. `on_infect` sees every infection in order.
    fn run(&mut self, seed: &[usize], mut on_infect: impl FnMut(InfectionStep)) -> usize {
        self.infected.iter_mut().for_each(|x| *x = false);
        self.queue.clear();
        let mut count = 0;
        for &v in seed {
            if !self.infected[v] {
                self.infected[v] = true;
                count += 1;
            }
        }
        for (i, e) in self.graph.edges.iter().enumerate() {
            let m = e.iter().filter(|&&v| !self.infected[v]).count();
            self.missing[i] = m;
            if m == 1 {
                self.queue.push_back(i);
            }
        }
        while let Some(edge) = self.queue.pop_front() {
            if self.missing[edge] != 1 {
                continue;
            }
            let Some(&vertex) = self.graph.edges[edge].iter().find(|&&v| !self.infected[v]) else {
                continue;
            };
            self.infected[vertex] = true;
            count += 1;
            on_infect(InfectionStep { vertex, edge });
            for &f in &self.incidence[vertex] {
                self.missing[f] -= 1;
                if self.missing[f] == 1 {
                    self.queue.push_back(f);
                }
            }
        }
        count
    }

    pub fn closure(&mut self, seed: &[usize]) -> Result<ClosureResult, HypergraphError> {
        self.check(seed)?;
        let mut trace = Vec::new();
        self.run(seed, |step| trace.push(step));
        let final_set = (0..self.graph.num_vertices)
            .filter(|&v| self.infected[v])
            .collect();
        Ok(ClosureResult { final_set, trace })
    }

    /// Size of the closure without recording a trace. Ids are trusted.
    pub fn closure_size(&mut self, seed: &[usize]) -> usize {
        self.run(seed, |_| {})
    }

    pub fn percolates(&mut self, seed: &[usize]) -> Result<bool, HypergraphError> {
        self.check(seed)?;
        Ok(self.closure_size(seed) == self.graph.num_vertices)
    }
}

/// `[A]` together with the order in which vertices were infected and the
/// edge that forced each one.
pub fn closure(graph: &Hypergraph, seed: &[usize]) -> Result<ClosureResult, HypergraphError> {
    BootstrapEngine::new(graph).closure(seed)
}

pub fn percolates(graph: &Hypergraph, seed: &[usize]) -> Result<bool, HypergraphError> {
    BootstrapEngine::new(graph).percolates(seed)
}
