//! Command-line driver. [`run_command`] parses an argument vector, runs one
//! subcommand and returns the exit code together with the rendered output,
//! so the binary and the tests share one code path.
//!
//! Exit codes: 0 success, 1 verification failure or negative search result,
//! 2 invalid input, 3 search budget exceeded.

use std::ffi::OsString;
use std::fs::File;
use std::io::BufReader;
use std::path::PathBuf;
use std::time::Instant;

use bootcert::certificate::CertificateError;
use bootcert::search::{
    greedy_upper_bound_with, grid_symmetries, min_percolating_with, HypergraphRule, NeighbourRule,
    DEFAULT_BUDGET,
};
use bootcert::{
    audit_percolating_set, certify_with, closure, construct_u, count_edges, enumerate_edges,
    extremal_size, grid_hypergraph, percolates, rn_closure, weak_saturation_hypergraph,
    CertifyOptions, Family, GridSpec, Hypergraph, SearchError, SearchOptions,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

pub const SWEEP_HEADER: [&str; 11] = [
    "d",
    "r",
    "n",
    "t",
    "family",
    "formula",
    "lower_bound",
    "brute_force",
    "edges",
    "u_size",
    "runtime_ms",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Parsed command line.
#[derive(Debug, Parser)]
#[command(
    name = "bootcert",
    version,
    about = "Bootstrap percolation on grid hypergraphs with exact lower-bound certificates"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Seed for randomized searches.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Maximum closure evaluations for brute-force searches.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    /// Worker threads for searches and certificate verification.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
}

/// Grid parameters. A single `--n` / `--t` value applies to every axis;
/// comma lists give per-axis values.
#[derive(Debug, Clone, Args)]
pub struct SpecArgs {
    /// Number of axes (inferred from list lengths when omitted).
    #[arg(long)]
    pub d: Option<usize>,
    /// Copy rank.
    #[arg(long)]
    pub r: Option<usize>,
    /// Side lengths.
    #[arg(long, value_delimiter = ',')]
    pub n: Vec<usize>,
    /// Thicknesses.
    #[arg(long, value_delimiter = ',')]
    pub t: Vec<usize>,
    /// Hypergraph family: K (all induced copies) or P (interval-aligned).
    #[arg(long, default_value = "K")]
    pub family: Family,
}

impl SpecArgs {
    fn given(&self) -> bool {
        self.d.is_some() || self.r.is_some() || !self.n.is_empty() || !self.t.is_empty()
    }

    pub fn spec(&self) -> Result<GridSpec, CliError> {
        let r = self.r.ok_or_else(|| invalid("--r is required"))?;
        if self.n.is_empty() || self.t.is_empty() {
            return Err(invalid("--n and --t are required"));
        }
        let lists: Vec<usize> = [self.n.len(), self.t.len()]
            .into_iter()
            .filter(|&l| l > 1)
            .collect();
        let d = match (self.d, lists.first()) {
            (Some(d), _) => d,
            (None, Some(&l)) => l,
            (None, None) => {
                return Err(invalid(
                    "--d is required when --n and --t are single values",
                ))
            }
        };
        if lists.iter().any(|&l| l != d) {
            return Err(invalid(format!(
                "inconsistent lengths: d={d}, --n has {}, --t has {}",
                self.n.len(),
                self.t.len()
            )));
        }
        let broadcast = |xs: &[usize]| {
            if xs.len() == 1 {
                vec![xs[0]; d]
            } else {
                xs.to_vec()
            }
        };
        GridSpec::new(broadcast(&self.n), broadcast(&self.t), r).map_err(|e| invalid(e.to_string()))
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form minimum percolating set size.
    Formula {
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// The extremal set U and whether it percolates.
    Extremal {
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// Edge count (closed form and enumerated), optional listing/export.
    Edges {
        #[command(flatten)]
        spec: SpecArgs,
        /// Include every edge in the output.
        #[arg(long)]
        list: bool,
        /// Write the hypergraph in text format to this file.
        #[arg(long)]
        export: Option<PathBuf>,
    },
    /// Bootstrap closure of an initial set.
    Closure {
        #[command(flatten)]
        spec: SpecArgs,
        /// Hypergraph text file to use instead of a grid family.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Initially infected vertex ids (0-based).
        #[arg(long, value_delimiter = ',')]
        infected: Vec<usize>,
        /// Start from the extremal set U (grid families only).
        #[arg(long)]
        from_u: bool,
    },
    /// Build and verify the linear-algebra lower-bound certificate.
    Certify {
        #[command(flatten)]
        spec: SpecArgs,
        /// Include the f-vectors as rational strings.
        #[arg(long)]
        with_vectors: bool,
        /// Verify only the requested family's edges instead of all of K.
        #[arg(long)]
        strict_family: bool,
    },
    /// Replay a closure and check every infection stays in the certificate span.
    Audit {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, value_delimiter = ',')]
        infected: Vec<usize>,
        #[arg(long)]
        from_u: bool,
        /// Vertex ids to drop from the initial set.
        #[arg(long, value_delimiter = ',')]
        remove: Vec<usize>,
    },
    /// Minimum percolating set by subset enumeration.
    Minperc {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        input: Option<PathBuf>,
        /// Search from size 0 instead of the certified lower bound.
        #[arg(long)]
        exhaustive: bool,
        /// In certificate-assisted mode, also rule out the size just below.
        #[arg(long)]
        confirm: bool,
        /// Skip candidates that a grid automorphism maps to a smaller set.
        #[arg(long)]
        symmetry: bool,
        /// Force never-infectable vertices into every candidate.
        #[arg(long)]
        mandatory: bool,
        /// Also run this many randomized greedy trials.
        #[arg(long, default_value_t = 0)]
        greedy: usize,
    },
    /// r-neighbour bootstrap percolation on grids and hypercubes.
    Rneighbour {
        /// Hypercube dimension.
        #[arg(long, conflicts_with = "grid")]
        hypercube: Option<usize>,
        /// Grid side lengths.
        #[arg(long, value_delimiter = ',')]
        grid: Vec<usize>,
        /// Neighbour threshold.
        #[arg(long)]
        r: usize,
        /// Exact minimum by subset enumeration (otherwise greedy upper bound).
        #[arg(long)]
        exhaustive: bool,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        /// Report the closure of this set instead of searching.
        #[arg(long, value_delimiter = ',')]
        infected: Vec<usize>,
        #[arg(long)]
        mandatory: bool,
    },
    /// Weak saturation of K_k in K_n as a bootstrap instance.
    Wsat {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long)]
        export: Option<PathBuf>,
        /// Only describe the instance.
        #[arg(long)]
        no_search: bool,
    },
    /// Formula, certificate and brute force over a range of homogeneous specs.
    Sweep {
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        #[arg(long, default_value_t = 3)]
        max_d: usize,
        /// Skip specs with more grid vertices.
        #[arg(long, default_value_t = 64)]
        max_vertices: usize,
        #[arg(long, value_delimiter = ',', default_value = "K,P")]
        families: Vec<Family>,
        /// Run the exhaustive search only up to this many vertices.
        #[arg(long, default_value_t = 16)]
        brute_force_max: usize,
    },
}

#[derive(Debug)]
pub enum CliError {
    Invalid(String),
    Negative(String),
    Budget(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Invalid(_) => EXIT_INVALID,
            CliError::Negative(_) => EXIT_NEGATIVE,
            CliError::Budget(_) => EXIT_BUDGET,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Invalid(m) | CliError::Negative(m) | CliError::Budget(m) => m,
        }
    }
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Invalid(msg.into())
}

impl From<SearchError> for CliError {
    fn from(e: SearchError) -> Self {
        match e {
            SearchError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            SearchError::NotFound { .. } | SearchError::LowerHintViolated { .. } => {
                CliError::Negative(e.to_string())
            }
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

impl From<CertificateError> for CliError {
    fn from(e: CertificateError) -> Self {
        match e {
            CertificateError::VertexOutOfRange { .. } | CertificateError::Grid(_) => {
                invalid(e.to_string())
            }
            other => CliError::Negative(format!("certificate invalid: {other}")),
        }
    }
}

/// A flat table for CSV output.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    fn new(header: &[&str]) -> Self {
        Table {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    fn render(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header).expect("in-memory csv");
        for row in &self.rows {
            w.write_record(row).expect("in-memory csv");
        }
        String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8")
    }
}

struct Report {
    code: i32,
    json: Value,
    table: Table,
}

impl Report {
    fn ok(json: Value, table: Table) -> Self {
        Report {
            code: EXIT_OK,
            json,
            table,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn join(xs: &[usize], sep: &str) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(sep)
}

/// `n`/`t` column value: a single number for homogeneous specs.
fn axis_column(xs: &[usize]) -> String {
    if xs.iter().all(|&x| x == xs[0]) {
        xs[0].to_string()
    } else {
        join(xs, ";")
    }
}

fn to_json<T: Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("serializable")
}

/// Parses `argv` (including the program name), runs the command and renders
/// its output. With `--out`, output goes to the file and `stdout` is empty.
pub fn run_command<I, T>(argv: I) -> CommandOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let shown = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => CommandOutput {
                    code: EXIT_OK,
                    stdout: shown,
                    stderr: String::new(),
                },
                _ => CommandOutput {
                    code: EXIT_INVALID,
                    stdout: String::new(),
                    stderr: shown,
                },
            };
        }
    };
    if config.jobs == 0 {
        return failure(&invalid("--jobs must be at least 1"));
    }
    let report = match execute(&config) {
        Ok(r) => r,
        Err(e) => return failure(&e),
    };
    let rendered = match config.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report.json).expect("json");
            s.push('\n');
            s
        }
        Format::Csv => report.table.render(),
    };
    match &config.out {
        Some(path) => match std::fs::write(path, &rendered) {
            Ok(()) => CommandOutput {
                code: report.code,
                stdout: String::new(),
                stderr: String::new(),
            },
            Err(e) => failure(&invalid(format!("cannot write {}: {e}", path.display()))),
        },
        None => CommandOutput {
            code: report.code,
            stdout: rendered,
            stderr: String::new(),
        },
    }
}

fn failure(e: &CliError) -> CommandOutput {
    let stdout = if e.code() == EXIT_INVALID {
        String::new()
    } else {
        let mut s = serde_json::to_string_pretty(&json!({ "error": e.message() })).expect("json");
        s.push('\n');
        s
    };
    CommandOutput {
        code: e.code(),
        stdout,
        stderr: format!("error: {}\n", e.message()),
    }
}

fn search_options(config: &RunConfig) -> SearchOptions {
    SearchOptions {
        budget: config.budget,
        jobs: config.jobs,
        ..SearchOptions::default()
    }
}

fn execute(config: &RunConfig) -> Result<Report, CliError> {
    match &config.command {
        Command::Formula { spec } => formula(&spec.spec()?),
        Command::Extremal { spec } => extremal(&spec.spec()?, spec.family),
        Command::Edges { spec, list, export } => {
            edges(&spec.spec()?, spec.family, *list, export.as_ref())
        }
        Command::Closure {
            spec,
            input,
            infected,
            from_u,
        } => closure_cmd(spec, input.as_ref(), infected, *from_u),
        Command::Certify {
            spec,
            with_vectors,
            strict_family,
        } => certify(
            config,
            &spec.spec()?,
            spec.family,
            *with_vectors,
            *strict_family,
        ),
        Command::Audit {
            spec,
            infected,
            from_u,
            remove,
        } => audit(
            config,
            &spec.spec()?,
            spec.family,
            infected,
            *from_u,
            remove,
        ),
        Command::Minperc {
            spec,
            input,
            exhaustive,
            confirm,
            symmetry,
            mandatory,
            greedy,
        } => minperc(
            config,
            spec,
            input.as_ref(),
            MinpercFlags {
                exhaustive: *exhaustive,
                confirm: *confirm,
                symmetry: *symmetry,
                mandatory: *mandatory,
                greedy: *greedy,
            },
        ),
        Command::Rneighbour {
            hypercube,
            grid,
            r,
            exhaustive,
            trials,
            infected,
            mandatory,
        } => rneighbour(
            config,
            *hypercube,
            grid,
            *r,
            *exhaustive,
            *trials,
            infected,
            *mandatory,
        ),
        Command::Wsat {
            n,
            k,
            export,
            no_search,
        } => wsat(config, *n, *k, export.as_ref(), *no_search),
        Command::Sweep {
            max_n,
            max_d,
            max_vertices,
            families,
            brute_force_max,
        } => {
            let params = SweepParams {
                max_n: *max_n,
                max_d: *max_d,
                max_vertices: *max_vertices,
                families: families.clone(),
                brute_force_max: *brute_force_max,
                budget: config.budget,
                jobs: config.jobs,
            };
            let rows = sweep(&params)?;
            let disagree = rows.iter().any(|r| !r.agrees());
            let mut table = Table::new(&SWEEP_HEADER);
            for row in &rows {
                table.push(row.csv_record());
            }
            Ok(Report {
                code: if disagree { EXIT_NEGATIVE } else { EXIT_OK },
                json: to_json(&rows),
                table,
            })
        }
    }
}

fn spec_json(spec: &GridSpec) -> Value {
    json!({ "dims": spec.dims(), "thick": spec.thick(), "r": spec.r() })
}

fn spec_row(spec: &GridSpec) -> Vec<String> {
    vec![
        spec.d().to_string(),
        spec.r().to_string(),
        axis_column(spec.dims()),
        axis_column(spec.thick()),
    ]
}

fn formula(spec: &GridSpec) -> Result<Report, CliError> {
    let size = extremal_size(spec).map_err(|e| invalid(e.to_string()))?;
    let mut table = Table::new(&["d", "r", "n", "t", "extremal_size"]);
    let mut row = spec_row(spec);
    row.push(size.to_string());
    table.push(row);
    Ok(Report::ok(json!({ "extremalSize": size }), table))
}

fn u_ids(spec: &GridSpec) -> Vec<usize> {
    construct_u(spec)
        .iter()
        .map(|v| spec.encode(v).expect("grid vertex"))
        .collect()
}

fn extremal(spec: &GridSpec, family: Family) -> Result<Report, CliError> {
    let u = construct_u(spec);
    let size = extremal_size(spec).map_err(|e| invalid(e.to_string()))?;
    let ids = u_ids(spec);
    let h = grid_hypergraph(spec, family);
    let perc = percolates(&h, &ids).expect("valid ids");
    let mut table = Table::new(&["id", "coords"]);
    for (id, v) in ids.iter().zip(&u) {
        table.push(vec![id.to_string(), v.to_string()]);
    }
    Ok(Report::ok(
        json!({
            "spec": spec_json(spec),
            "family": family,
            "uSize": u.len(),
            "extremalSize": size,
            "percolates": perc,
            "ids": ids,
            "vertices": u,
        }),
        table,
    ))
}

fn edges(
    spec: &GridSpec,
    family: Family,
    list: bool,
    export: Option<&PathBuf>,
) -> Result<Report, CliError> {
    let count = count_edges(spec, family).map_err(|e| invalid(e.to_string()))?;
    let mut table = Table::new(&["index", "edge", "vertices"]);
    let mut listed = Vec::new();
    let mut enumerated: u64 = 0;
    for (i, e) in enumerate_edges(spec, family).enumerate() {
        enumerated += 1;
        if list || export.is_some() {
            let ids: Vec<usize> = e
                .vertices()
                .iter()
                .map(|v| spec.encode(v).expect("grid vertex"))
                .collect();
            table.push(vec![i.to_string(), e.to_string(), join(&ids, " ")]);
            listed.push(json!({ "edge": e.to_string(), "vertices": ids }));
        }
    }
    if let Some(path) = export {
        let h = grid_hypergraph(spec, family);
        std::fs::write(path, h.to_text())
            .map_err(|e| invalid(format!("cannot write {}: {e}", path.display())))?;
    }
    let mut out = json!({
        "spec": spec_json(spec),
        "family": family,
        "count": count,
        "enumerated": enumerated,
    });
    if list {
        out["edges"] = Value::Array(listed);
    }
    if !list {
        table = Table::new(&["family", "count", "enumerated"]);
        table.push(vec![
            family.to_string(),
            count.to_string(),
            enumerated.to_string(),
        ]);
    }
    let code = if count == enumerated as u128 {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    };
    Ok(Report {
        code,
        json: out,
        table,
    })
}

fn read_hypergraph(path: &PathBuf) -> Result<Hypergraph, CliError> {
    let file =
        File::open(path).map_err(|e| invalid(format!("cannot open {}: {e}", path.display())))?;
    Hypergraph::read_text(BufReader::new(file))
        .map_err(|e| invalid(format!("{}: {e}", path.display())))
}

fn closure_cmd(
    spec: &SpecArgs,
    input: Option<&PathBuf>,
    infected: &[usize],
    from_u: bool,
) -> Result<Report, CliError> {
    let (h, mut seed) = match input {
        Some(path) => {
            if from_u {
                return Err(invalid("--from-u needs a grid spec, not --input"));
            }
            (read_hypergraph(path)?, Vec::new())
        }
        None => {
            let s = spec.spec()?;
            let seed = if from_u { u_ids(&s) } else { Vec::new() };
            (grid_hypergraph(&s, spec.family), seed)
        }
    };
    seed.extend_from_slice(infected);
    seed.sort_unstable();
    seed.dedup();
    let result = closure(&h, &seed).map_err(|e| invalid(e.to_string()))?;
    let mut table = Table::new(&["step", "vertex", "edge"]);
    for (i, s) in result.trace.iter().enumerate() {
        table.push(vec![
            i.to_string(),
            s.vertex.to_string(),
            s.edge.to_string(),
        ]);
    }
    let trace: Vec<Value> = result
        .trace
        .iter()
        .map(|s| json!({ "vertex": s.vertex, "edge": s.edge }))
        .collect();
    Ok(Report::ok(
        json!({
            "numVertices": h.num_vertices(),
            "numEdges": h.num_edges(),
            "initial": seed,
            "finalSize": result.len(),
            "percolates": result.len() == h.num_vertices(),
            "final": result.final_set,
            "trace": trace,
        }),
        table,
    ))
}

fn certify(
    config: &RunConfig,
    spec: &GridSpec,
    family: Family,
    with_vectors: bool,
    strict_family: bool,
) -> Result<Report, CliError> {
    let options = CertifyOptions {
        edge_family: if strict_family { family } else { Family::K },
        jobs: config.jobs,
    };
    let cert = certify_with(spec, family, &options)?;
    let mut table = Table::new(&[
        "d",
        "r",
        "n",
        "t",
        "family",
        "lower_bound",
        "verified_span",
        "verified_dependencies",
        "u_size",
    ]);
    let mut row = spec_row(spec);
    row.extend([
        family.to_string(),
        cert.lower_bound().to_string(),
        cert.verified_span().to_string(),
        cert.verified_dependencies().to_string(),
        cert.context().u_size().to_string(),
    ]);
    table.push(row);
    Ok(Report::ok(to_json(&cert.to_json(with_vectors)), table))
}

fn audit(
    config: &RunConfig,
    spec: &GridSpec,
    family: Family,
    infected: &[usize],
    from_u: bool,
    remove: &[usize],
) -> Result<Report, CliError> {
    let cert = certify_with(
        spec,
        family,
        &CertifyOptions {
            edge_family: Family::K,
            jobs: config.jobs,
        },
    )?;
    let mut seed = if from_u { u_ids(spec) } else { Vec::new() };
    seed.extend_from_slice(infected);
    seed.retain(|v| !remove.contains(v));
    let report = audit_percolating_set(&cert, family, &seed)?;
    let mut table = Table::new(&["step", "vertex", "edge", "in_span"]);
    for (i, s) in report.steps.iter().enumerate() {
        table.push(vec![
            i.to_string(),
            s.vertex.to_string(),
            s.edge.to_string(),
            s.in_span.to_string(),
        ]);
    }
    let mut json = to_json(&report);
    json["summary"] = Value::from(report.summary());
    Ok(Report {
        code: if report.consistent() {
            EXIT_OK
        } else {
            EXIT_NEGATIVE
        },
        json,
        table,
    })
}

struct MinpercFlags {
    exhaustive: bool,
    confirm: bool,
    symmetry: bool,
    mandatory: bool,
    greedy: usize,
}

fn minperc(
    config: &RunConfig,
    spec: &SpecArgs,
    input: Option<&PathBuf>,
    flags: MinpercFlags,
) -> Result<Report, CliError> {
    let mut options = search_options(config);
    options.mandatory = flags.mandatory;
    options.confirm_lower = flags.confirm;
    let (h, lower, mode) = match input {
        Some(path) => {
            if spec.given() {
                return Err(invalid("--input cannot be combined with grid parameters"));
            }
            if flags.symmetry {
                return Err(invalid("--symmetry is only available for grid families"));
            }
            (read_hypergraph(path)?, 0, "exhaustive")
        }
        None => {
            let s = spec.spec()?;
            let h = grid_hypergraph(&s, spec.family);
            if flags.symmetry {
                options.symmetries = grid_symmetries(&s, spec.family);
            }
            if flags.exhaustive {
                (h, 0, "exhaustive")
            } else {
                let cert = certify_with(
                    &s,
                    spec.family,
                    &CertifyOptions {
                        edge_family: Family::K,
                        jobs: config.jobs,
                    },
                )?;
                (h, cert.lower_bound() as usize, "certificate-assisted")
            }
        }
    };
    let rule = HypergraphRule::new(&h);
    let result = min_percolating_with(&rule, lower, h.num_vertices(), &options)?;
    let mut json = to_json(&result);
    json["mode"] = Value::from(mode);
    json["startedAt"] = Value::from(lower);
    if flags.greedy > 0 {
        let g = greedy_upper_bound_with(&rule, flags.greedy, config.seed);
        json["greedyUpperBound"] = Value::from(g.len());
        json["greedyWitness"] = to_json(&g);
    }
    let mut table = Table::new(&["minimum", "tested", "exhaustive", "mode", "witness"]);
    table.push(vec![
        result.minimum.to_string(),
        result.tested.to_string(),
        result.exhaustive.to_string(),
        mode.to_string(),
        join(&result.witness, " "),
    ]);
    Ok(Report::ok(json, table))
}

#[allow(clippy::too_many_arguments)]
fn rneighbour(
    config: &RunConfig,
    hypercube: Option<usize>,
    grid: &[usize],
    r: usize,
    exhaustive: bool,
    trials: usize,
    infected: &[usize],
    mandatory: bool,
) -> Result<Report, CliError> {
    let (dims, name) = match (hypercube, grid.is_empty()) {
        (Some(d), true) => {
            if d == 0 {
                return Err(invalid("--hypercube needs d >= 1"));
            }
            (vec![2; d], format!("Q_{d}"))
        }
        (None, false) => (grid.to_vec(), format!("P_{}", join(grid, "x"))),
        _ => return Err(invalid("give exactly one of --hypercube or --grid")),
    };
    let g = bootcert::search::grid_graph(&dims)?;
    let mut out = json!({
        "graph": name,
        "vertices": g.num_vertices(),
        "edges": g.num_edges(),
        "r": r,
    });
    let mut table;
    if !infected.is_empty() {
        let closed = rn_closure(&g, infected, r)?;
        out["percolates"] = Value::from(closed.len() == g.num_vertices());
        out["closureSize"] = Value::from(closed.len());
        out["closure"] = to_json(&closed);
        table = Table::new(&["graph", "r", "closure_size", "percolates"]);
        table.push(vec![
            name,
            r.to_string(),
            closed.len().to_string(),
            (closed.len() == g.num_vertices()).to_string(),
        ]);
        return Ok(Report::ok(out, table));
    }
    let rule = NeighbourRule::new(&g, r)?;
    let (size, witness, tested) = if exhaustive {
        let mut options = search_options(config);
        options.mandatory = mandatory;
        let res = min_percolating_with(&rule, 0, g.num_vertices(), &options)?;
        out["minimum"] = Value::from(res.minimum);
        out["tested"] = Value::from(res.tested);
        (res.minimum, res.witness, Some(res.tested))
    } else {
        let w = greedy_upper_bound_with(&rule, trials, config.seed);
        out["upperBound"] = Value::from(w.len());
        (w.len(), w, None)
    };
    let valid = rn_closure(&g, &witness, r)?.len() == g.num_vertices();
    out["witness"] = to_json(&witness);
    out["witnessPercolates"] = Value::from(valid);
    out["mode"] = Value::from(if exhaustive { "exhaustive" } else { "greedy" });
    table = Table::new(&["graph", "r", "mode", "size", "tested", "witness"]);
    table.push(vec![
        name,
        r.to_string(),
        if exhaustive { "exhaustive" } else { "greedy" }.to_string(),
        size.to_string(),
        tested.map(|t| t.to_string()).unwrap_or_default(),
        join(&witness, " "),
    ]);
    Ok(Report {
        code: if valid { EXIT_OK } else { EXIT_NEGATIVE },
        json: out,
        table,
    })
}

fn wsat(
    config: &RunConfig,
    n: usize,
    k: usize,
    export: Option<&PathBuf>,
    no_search: bool,
) -> Result<Report, CliError> {
    let h = weak_saturation_hypergraph(n, k).map_err(|e| invalid(e.to_string()))?;
    if let Some(path) = export {
        std::fs::write(path, h.to_text())
            .map_err(|e| invalid(format!("cannot write {}: {e}", path.display())))?;
    }
    let mut out = json!({
        "n": n,
        "k": k,
        "vertices": h.num_vertices(),
        "hyperedges": h.num_edges(),
    });
    let mut table = Table::new(&["n", "k", "vertices", "hyperedges", "minimum", "witness"]);
    let mut row = vec![
        n.to_string(),
        k.to_string(),
        h.num_vertices().to_string(),
        h.num_edges().to_string(),
    ];
    if no_search {
        row.extend([String::new(), String::new()]);
    } else {
        let res = min_percolating_with(
            &HypergraphRule::new(&h),
            0,
            h.num_vertices(),
            &search_options(config),
        )?;
        out["minimum"] = Value::from(res.minimum);
        out["witness"] = to_json(&res.witness);
        out["tested"] = Value::from(res.tested);
        row.extend([res.minimum.to_string(), join(&res.witness, " ")]);
    }
    table.push(row);
    Ok(Report::ok(out, table))
}

#[derive(Debug, Clone)]
pub struct SweepParams {
    pub max_n: usize,
    pub max_d: usize,
    pub max_vertices: usize,
    pub families: Vec<Family>,
    pub brute_force_max: usize,
    pub budget: u64,
    pub jobs: usize,
}

impl Default for SweepParams {
    fn default() -> Self {
        SweepParams {
            max_n: 4,
            max_d: 3,
            max_vertices: 64,
            families: vec![Family::K, Family::P],
            brute_force_max: 16,
            budget: DEFAULT_BUDGET,
            jobs: 1,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SweepRow {
    pub d: usize,
    pub r: usize,
    pub n: usize,
    pub t: usize,
    pub family: Family,
    pub formula: u128,
    pub lower_bound: u128,
    /// `None` when the grid is above the brute-force limit or the budget ran out.
    pub brute_force: Option<usize>,
    pub edges: u128,
    pub u_size: usize,
    pub u_percolates: bool,
    pub runtime_ms: u128,
}

impl SweepRow {
    pub fn agrees(&self) -> bool {
        self.formula == self.lower_bound
            && self.u_size as u128 == self.formula
            && self.u_percolates
            && self.brute_force.is_none_or(|b| b as u128 == self.formula)
    }

    pub fn csv_record(&self) -> Vec<String> {
        vec![
            self.d.to_string(),
            self.r.to_string(),
            self.n.to_string(),
            self.t.to_string(),
            self.family.to_string(),
            self.formula.to_string(),
            self.lower_bound.to_string(),
            self.brute_force.map(|b| b.to_string()).unwrap_or_default(),
            self.edges.to_string(),
            self.u_size.to_string(),
            self.runtime_ms.to_string(),
        ]
    }
}

/// Every homogeneous `(n, d, t, r)` with `2 <= t <= n <= max_n`,
/// `1 <= r <= d <= max_d` and `n^d <= max_vertices`, in `d, r, n, t` order.
pub fn sweep_specs(max_n: usize, max_d: usize, max_vertices: usize) -> Vec<GridSpec> {
    let mut out = Vec::new();
    for d in 1..=max_d {
        for r in 1..=d {
            for n in 2..=max_n {
                let too_big = n
                    .checked_pow(d as u32)
                    .is_none_or(|size| size > max_vertices);
                if too_big {
                    continue;
                }
                for t in 2..=n {
                    out.push(GridSpec::homogeneous(n, d, t, r).expect("valid by construction"));
                }
            }
        }
    }
    out
}

pub fn sweep(params: &SweepParams) -> Result<Vec<SweepRow>, CliError> {
    let mut rows = Vec::new();
    for spec in sweep_specs(params.max_n, params.max_d, params.max_vertices) {
        for &family in &params.families {
            let started = Instant::now();
            let formula = extremal_size(&spec).map_err(|e| invalid(e.to_string()))?;
            let cert = certify_with(
                &spec,
                family,
                &CertifyOptions {
                    edge_family: Family::K,
                    jobs: params.jobs,
                },
            )?;
            let h = grid_hypergraph(&spec, family);
            let u = u_ids(&spec);
            let u_percolates = percolates(&h, &u).expect("valid ids");
            let brute_force = if spec.num_vertices() <= params.brute_force_max {
                let options = SearchOptions {
                    budget: params.budget,
                    jobs: params.jobs,
                    ..SearchOptions::default()
                };
                match min_percolating_with(&HypergraphRule::new(&h), 0, h.num_vertices(), &options)
                {
                    Ok(res) => Some(res.minimum),
                    Err(SearchError::BudgetExceeded { .. }) => None,
                    Err(e) => return Err(e.into()),
                }
            } else {
                None
            };
            rows.push(SweepRow {
                d: spec.d(),
                r: spec.r(),
                n: spec.dims()[0],
                t: spec.thick()[0],
                family,
                formula,
                lower_bound: cert.lower_bound(),
                brute_force,
                edges: count_edges(&spec, family).map_err(|e| invalid(e.to_string()))?,
                u_size: u.len(),
                u_percolates,
                runtime_ms: started.elapsed().as_millis(),
            });
        }
    }
    Ok(rows)
}
