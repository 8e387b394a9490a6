//! Command-line front end: argument definitions, the command runner and the
//! report formatter. `main.rs` only maps the outcome to an exit status.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path as FsPath, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand};
use thiserror::Error;

use leavitt_core::digraph::DEFAULT_CYCLE_CAP;
use leavitt_core::growth::{self, GrowthError, DEFAULT_BUDGET};
use leavitt_core::lpa::{parse_element, LpaError, Normalizer, DEFAULT_TERM_CAP};
use leavitt_core::quiver::{restrict_and_reconstruct, Actions, QuiverError, Relation, Representation};
use leavitt_core::reduction::{complete_reduction, loopless_nonsinks, reduce_step, ReductionError, Strategy};
use leavitt_core::structure::{self, Coefficients, StructureError};
use leavitt_core::{Digraph, DigraphError, ErrorClass, Ring, RingError, VertexSet};

#[derive(Debug, Parser)]
#[command(name = "leavitt", version, about = "Exact computations in Leavitt path algebras of finite digraphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Coefficient ring: Z, Q, Zmod:<m> or laurent.
    #[arg(long, global = true, default_value = "Q")]
    pub ring: String,
    /// Emit `key<TAB>value` lines instead of prose.
    #[arg(long, global = true)]
    pub machine: bool,
    /// Cap on the number of terms produced while normalizing.
    #[arg(long, global = true, default_value_t = DEFAULT_TERM_CAP)]
    pub term_cap: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sinks, cycles, the cycle poset, heights, GK dimensions and decomposition.
    Analyze { graph: PathBuf },
    /// Completely reduce by eliminating loopless nonsinks.
    Reduce {
        graph: PathBuf,
        /// name-order, max-degree or script:v1,v2,...
        #[arg(long, default_value = "name-order")]
        strategy: String,
    },
    /// Hereditary and hereditary saturated closures of a vertex set.
    Closure { graph: PathBuf, vertices: Vec<String> },
    /// Matrix decomposition of an algebra with no cycle exits.
    Decompose { graph: PathBuf },
    /// Lower and upper growth bounds with fitted degrees.
    Growth {
        graph: PathBuf,
        #[arg(long, default_value_t = 20)]
        nmax: usize,
        /// Cap on the size of the spanning set for the upper bound.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        /// Allowed gap between fitted degree and ht.
        #[arg(long, default_value_t = 0.5)]
        tolerance: f64,
    },
    /// Normal form of an expression.
    Eval { graph: PathBuf, expr: String },
    /// Condition Iso, relation audit and single-step round trips of a representation.
    RepAudit { graph: PathBuf, rep: PathBuf },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Digraph(#[from] DigraphError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Lpa(#[from] LpaError),
    #[error(transparent)]
    Reduction(#[from] ReductionError),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Growth(#[from] GrowthError),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    /// A failure after part of the report was produced.
    #[error("{source}")]
    Partial { output: String, source: Box<CliError> },
}

pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;
pub const EXIT_PRECONDITION: i32 = 4;
pub const EXIT_BUDGET: i32 = 5;

impl CliError {
    pub fn class(&self) -> ErrorClass {
        match self {
            CliError::Io { .. } | CliError::Usage(_) => ErrorClass::Input,
            CliError::Digraph(e) => e.class(),
            CliError::Ring(e) => e.class(),
            CliError::Lpa(e) => e.class(),
            CliError::Reduction(e) => e.class(),
            CliError::Structure(e) => e.class(),
            CliError::Growth(e) => e.class(),
            CliError::Quiver(e) => e.class(),
            CliError::Partial { source, .. } => source.class(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Partial { source, .. } => source.exit_code(),
            _ => match self.class() {
                ErrorClass::Input => EXIT_INPUT,
                ErrorClass::Precondition => EXIT_PRECONDITION,
                ErrorClass::Budget => EXIT_BUDGET,
            },
        }
    }

    pub fn partial_output(&self) -> Option<&str> {
        match self {
            CliError::Partial { output, .. } => Some(output),
            _ => None,
        }
    }
}

/// Report lines: human mode writes `label = value` and prose, machine mode
/// writes `key<TAB>value` and drops prose. Table rows are tab-separated in
/// both modes.
pub struct Report {
    machine: bool,
    out: String,
}

impl Report {
    pub fn new(machine: bool) -> Report {
        Report {
            machine,
            out: String::new(),
        }
    }

    pub fn field(&mut self, label: &str, key: &str, value: impl std::fmt::Display) {
        if self.machine {
            let _ = writeln!(self.out, "{key}\t{value}");
        } else {
            let _ = writeln!(self.out, "{label} = {value}");
        }
    }

    pub fn prose(&mut self, text: impl std::fmt::Display) {
        if !self.machine {
            let _ = writeln!(self.out, "{text}");
        }
    }

    pub fn row(&mut self, cells: &[String]) {
        let _ = writeln!(self.out, "{}", cells.join("\t"));
    }

    /// Verbatim block, e.g. a digraph file.
    pub fn block(&mut self, text: &str) {
        self.out.push_str(text);
    }

    pub fn finish(self) -> String {
        self.out
    }
}

fn read(path: &FsPath) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

pub fn load_digraph(path: &FsPath) -> Result<Arc<Digraph>, CliError> {
    Ok(Arc::new(Digraph::parse(&read(path)?)?))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn pass_fail(b: bool) -> &'static str {
    if b {
        "pass"
    } else {
        "FAIL"
    }
}

fn names(g: &Digraph, vs: impl IntoIterator<Item = leavitt_core::VertexId>) -> String {
    let v: Vec<&str> = vs.into_iter().map(|v| g.vertex_name(v)).collect();
    if v.is_empty() {
        "(none)".to_string()
    } else {
        v.join(" ")
    }
}

pub fn run(cli: &Cli) -> Result<String, CliError> {
    let ring: Ring = cli.ring.parse()?;
    let mut r = Report::new(cli.machine);
    match &cli.command {
        Command::Analyze { graph } => analyze(&load_digraph(graph)?, ring, &mut r)?,
        Command::Reduce { graph, strategy } => {
            let strategy: Strategy = strategy.parse().map_err(CliError::Usage)?;
            reduce(&load_digraph(graph)?, &strategy, &mut r)?
        }
        Command::Closure { graph, vertices } => closure(&load_digraph(graph)?, vertices, &mut r)?,
        Command::Decompose { graph } => decompose(&load_digraph(graph)?, &mut r)?,
        Command::Growth {
            graph,
            nmax,
            budget,
            tolerance,
        } => growth_table(&load_digraph(graph)?, *nmax, *budget, *tolerance, cli.term_cap, &mut r)?,
        Command::Eval { graph, expr } => {
            let g = load_digraph(graph)?;
            let normalizer = Normalizer::new(&g)?.with_term_cap(cli.term_cap);
            let a = parse_element(&g, ring, expr)?;
            r.field("result", "result", normalizer.render(&a)?);
        }
        Command::RepAudit { graph, rep } => {
            let g = load_digraph(graph)?;
            let rep = Representation::parse(&g, &read(rep)?)?;
            rep_audit(&rep, &mut r)?
        }
    }
    Ok(r.finish())
}

fn analyze(g: &Arc<Digraph>, ring: Ring, r: &mut Report) -> Result<(), CliError> {
    r.field("vertices", "vertices", g.vertex_count());
    r.field("arrows", "arrows", g.arrow_count());
    r.field("sinks", "sinks", names(g, g.sinks()));
    let report = g.cycles(DEFAULT_CYCLE_CAP)?;
    let cycles: Vec<String> = report.cycles.iter().map(|c| format!("[{}]", c.render(g))).collect();
    r.field("cycles", "cycles", if cycles.is_empty() { "(none)".into() } else { cycles.join(" ") });
    r.field("disjoint cycles", "disjoint", yes_no(report.disjoint));
    let coefficients = Coefficients::for_ring(ring);
    if !report.disjoint {
        r.prose("cycles share a vertex: the algebra grows exponentially");
        if let Ok(c) = coefficients {
            r.field("GKdim", "gkdim", structure::gk_dim(g, c)?);
        }
        return Ok(());
    }
    let poset = structure::build_poset(g)?;
    let edges: Vec<String> = poset
        .cover_edges()
        .into_iter()
        .map(|(i, j)| format!("{} > {}", poset.node_name(g, i), poset.node_name(g, j)))
        .collect();
    r.field("poset edges", "poset_edges", if edges.is_empty() { "(none)".into() } else { edges.join(", ") });
    for i in 0..poset.nodes().len() {
        let name = poset.node_name(g, i);
        r.field(&format!("height {name}"), &format!("height {name}"), poset.height_of(i));
    }
    r.field("ht", "ht", poset.height());
    match coefficients {
        Ok(c) => {
            r.field("GKdim", "gkdim", structure::gk_dim(g, c)?);
            r.field("GKdim path algebra", "gkdim_path_algebra", structure::gk_dim_path_algebra(g, c)?);
        }
        Err(e) => r.prose(format!("GK dimension not reported: {e}")),
    }
    match structure::decompose(g) {
        Ok(d) => r.field("decomposition", "decomposition", d.shape()),
        Err(StructureError::CycleWithExit(_)) => r.prose("decomposition: not applicable, a cycle has an exit"),
        Err(e) => return Err(e.into()),
    }
    Ok(())
}

fn reduce(g: &Arc<Digraph>, strategy: &Strategy, r: &mut Report) -> Result<(), CliError> {
    let trace = complete_reduction(g, strategy)?;
    for (i, step) in trace.steps().iter().enumerate() {
        r.field(&format!("step {}", i + 1), "eliminate", step.eliminated_name());
        let new: Vec<String> = step
            .new_arrows()
            .into_iter()
            .map(|(e, _, _)| step.after().arrow_name(e).to_string())
            .collect();
        if !new.is_empty() {
            r.prose(format!("  new arrows: {}", new.join(" ")));
        }
    }
    let end = trace.end();
    r.field("vertices", "vertices", end.vertex_count());
    r.field("arrows", "arrows", end.arrow_count());
    r.prose("# reduced digraph");
    r.block(&end.to_string());
    Ok(())
}

fn closure(g: &Arc<Digraph>, vertices: &[String], r: &mut Report) -> Result<(), CliError> {
    let refs: Vec<&str> = vertices.iter().map(String::as_str).collect();
    let x = VertexSet::from_names(g, &refs)?;
    let h = g.hereditary_closure(&x);
    let hs = g.hereditary_saturated_closure(&x);
    r.field("hereditary", "hereditary", yes_no(x.is_hereditary()));
    r.field("saturated", "saturated", yes_no(x.is_saturated()));
    r.field("hereditary closure", "hereditary_closure", names(g, h.members().iter().copied()));
    r.field("hereditary saturated closure", "hs_closure", names(g, hs.members().iter().copied()));
    let q = g.quotient(&hs)?;
    r.field("quotient vertices", "quotient_vertices", q.vertex_count());
    r.field("quotient arrows", "quotient_arrows", q.arrow_count());
    Ok(())
}

fn decompose(g: &Arc<Digraph>, r: &mut Report) -> Result<(), CliError> {
    let d = structure::decompose(g)?;
    for s in d.summands() {
        let index: Vec<String> = s.index().iter().map(|p| p.render(g)).collect();
        let anchor = match s {
            structure::Summand::Sink { sink, .. } => g.vertex_name(*sink).to_string(),
            structure::Summand::Cycle { cycle, .. } => format!("[{}]", d.structure().cycle(*cycle).render(g)),
        };
        r.field(&format!("summand {anchor}"), &format!("summand {anchor}"), s.shape());
        r.prose(format!("  index: {}", index.join(" ")));
    }
    r.field("shape", "shape", d.shape());
    if d.summands().iter().any(|s| s.is_laurent()) {
        r.field("dimension", "dimension", "inf");
    } else {
        r.field("dimension", "dimension", d.sink_dimension());
    }
    Ok(())
}

fn growth_table(
    g: &Arc<Digraph>,
    nmax: usize,
    budget: usize,
    tolerance: f64,
    term_cap: usize,
    r: &mut Report,
) -> Result<(), CliError> {
    let normalizer = Normalizer::new(g)?.with_term_cap(term_cap);
    let lower = growth::lower_bound(&normalizer, nmax)?;
    let upper = match growth::upper_bound(&normalizer, nmax, budget) {
        Ok(u) => u,
        Err(GrowthError::Budget { budget, partial }) => {
            let mut r = Report::new(false);
            r.row(&["# n".into(), "lower".into(), "upper".into()]);
            for (n, h) in partial.iter().enumerate() {
                r.row(&[n.to_string(), lower[n].to_string(), h.to_string()]);
            }
            return Err(CliError::Partial {
                output: r.finish(),
                source: Box::new(GrowthError::Budget { budget, partial }.into()),
            });
        }
        Err(e) => return Err(e.into()),
    };
    let table = growth::GrowthTable { lower, upper };
    r.row(&["# n".into(), "lower".into(), "upper".into()]);
    for (n, lo, hi) in table.rows() {
        r.row(&[n.to_string(), lo.to_string(), hi.to_string()]);
    }
    r.field("lower <= upper", "sandwich", yes_no(table.is_consistent()));
    let ht = structure::height(g)?;
    r.field("ht", "ht", ht);
    match (table.fit_lower(), table.fit_upper()) {
        (Ok(lo), Ok(hi)) => {
            r.field("fitted degree lower", "fit_lower", format!("{:.3}", lo.degree));
            r.field("fitted degree upper", "fit_upper", format!("{:.3}", hi.degree));
            r.field("fit residual lower", "residual_lower", format!("{:.4}", lo.residual));
            r.field("fit residual upper", "residual_upper", format!("{:.4}", hi.residual));
            let within = (lo.degree - ht as f64).abs() <= tolerance && (hi.degree - ht as f64).abs() <= tolerance;
            r.field("within tolerance", "within_tolerance", yes_no(within));
        }
        _ => r.prose("too few rows to fit a degree (need nmax >= 6)"),
    }
    Ok(())
}

fn rep_audit(rep: &Representation, r: &mut Report) -> Result<(), CliError> {
    let g = rep.graph();
    r.field("total dimension", "total_dim", rep.total_dim());
    let iso = rep.check_iso();
    for &(v, ok) in &iso.verdicts {
        let name = g.vertex_name(v);
        r.field(&format!("iso {name}"), &format!("iso {name}"), pass_fail(ok));
    }
    if let Some(v) = iso.first_failure() {
        let report = std::mem::replace(r, Report::new(r.machine));
        return Err(CliError::Partial {
            output: report.finish(),
            source: Box::new(QuiverError::IsoFails(g.vertex_name(v).to_string()).into()),
        });
    }
    let audit = Actions::new(rep)?.audit(g);
    for (i, rel) in [Relation::V, Relation::E, Relation::Ck1, Relation::Ck2].into_iter().enumerate() {
        let failed = audit.failures.iter().filter(|f| f.relation == rel).count();
        let checked = audit.checked[i];
        r.field(
            &format!("relation {rel}"),
            &format!("relation {rel}"),
            format!("{} {}/{}", pass_fail(failed == 0), checked - failed, checked),
        );
    }
    for f in &audit.failures {
        r.prose(format!("  {} fails at {}", f.relation, f.witness));
    }
    for v in loopless_nonsinks(g) {
        let step = reduce_step(g, v)?;
        let rt = restrict_and_reconstruct(rep, &step)?;
        let name = g.vertex_name(v);
        r.field(&format!("round trip {name}"), &format!("round_trip {name}"), pass_fail(rt.passed()));
        for f in &rt.failures {
            r.prose(format!("  {f}"));
        }
    }
    r.field("audit", "audit", pass_fail(audit.passed()));
    Ok(())
}
