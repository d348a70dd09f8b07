//! The command-line front end of the `grafts` binary.
//!
//! Nine subcommands cover the crate: `solve`, `dist`, `decompose`, `kl`,
//! `critical`, and `export` operate on one graft document; `rootlize`
//! produces an extended document; `verify` runs the check registry on a
//! file or a generated family; `gen` writes a random document. Every
//! subcommand takes `--json` to emit the same data as one machine-
//! readable object (keys sorted, values in vertex-id order), so text and
//! JSON runs are equally reproducible.
//!
//! Exit codes: 0 success, 2 parse errors, 3 parity violations, 4 size
//! caps, 5 structure violations, 1 everything else. `verify` exits 0
//! exactly when no check failed.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::Error;
use crate::format::{GraftDocument};
use crate::graph::VertexSet;
use crate::harness::{
    parse_check_list, run_checks, run_suite, CheckId, InstanceSpec, SuiteSummary, Verdict,
};
use crate::join::Graft;

/// Conventions the checks pin down where the structural statements admit
/// more than one reading; each line names the checks that enforce it.
/// `verify` prints them ahead of its results so a reported pass is
/// unambiguous about what was tested.
const CONVENTIONS: [&str; 6] = [
    "distance(x, y) = nu(G, T xor {x, y}) - nu(G, T); the reversed orientation already \
     fails on a single join edge (fact1-sign tests both)",
    "a vertex set is extreme when every pair inside it has nonnegative distance; \
     quantifying over the whole graph instead would ignore the set (level-extreme, homog)",
    "an optimal path leaving a component that holds its root crosses the cut once, on a \
     non-join edge; entering a rootless component it crosses once, on a join edge (path-cut)",
    "for a mount meeting both color classes, the per-side parts are pairwise disjoint and \
     contained in the whole-mount parts, and the union of the side zero parts is extreme; \
     the stronger disjoint-union equality fails on a square with two adjacent terminals \
     mounted at the other two vertices (hetero)",
    "union statements over a trisection index both the zero-part and the negative-part \
     unions by the zero part (monotone)",
    "round ears keep their interior strictly outside the component and use at least two \
     edges (ear-nonneg, ear-capital)",
];

// ======================================================================
// Argument surface
// ======================================================================

#[derive(Debug, Parser)]
#[command(
    name = "grafts",
    version,
    about = "Minimum T-joins and the distance decomposition of bipartite grafts"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Minimum join size, one minimum join, and the allowed edges.
    Solve {
        file: PathBuf,
        /// Accept documents with several components (even parity each).
        #[arg(long)]
        allow_disconnected: bool,
        /// Emit one JSON object instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Distance profile from a root: vertex, distance, level.
    Dist {
        file: PathBuf,
        /// Vertex the distances are measured from.
        #[arg(long)]
        root: String,
        /// Restrict the table to this one vertex.
        #[arg(long)]
        from: Option<String>,
        /// Emit one JSON object instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Distance components per level, capital flags, and the trisection.
    Decompose {
        file: PathBuf,
        /// Vertex the decomposition is rooted at.
        #[arg(long)]
        root: String,
        /// Emit one JSON object instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Factor components and the equal-distance partition.
    Kl {
        file: PathBuf,
        /// Emit one JSON object instead of text.
        #[arg(long)]
        json: bool,
    },
    /// The equal-distance class containing a vertex, and its critical set.
    Critical {
        file: PathBuf,
        /// Vertex whose class is reported.
        #[arg(long = "class-of")]
        class_of: String,
        /// Emit one JSON object instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Attach the root gadget at a mount and print the extended document.
    Rootlize {
        file: PathBuf,
        /// Mount vertices, comma separated; must be extreme.
        #[arg(long, value_delimiter = ',', required = true)]
        mount: Vec<String>,
        /// Write the extended document to this file instead of standard
        /// output.
        #[arg(long)]
        emit: Option<PathBuf>,
        /// Emit one JSON object instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Run the structural checks on a file or a generated family.
    Verify {
        /// One graft document to check (alternative to --enumerate and
        /// --random).
        file: Option<PathBuf>,
        /// Comma-separated check ids; all checks when absent.
        #[arg(long)]
        checks: Option<String>,
        /// Exhaustive family: all connected bipartite grafts with at
        /// most this many vertices, every even terminal subset.
        #[arg(long, value_name = "N")]
        enumerate: Option<usize>,
        /// Random family: this many seeded bipartite multigraphs.
        #[arg(long, value_name = "COUNT")]
        random: Option<usize>,
        /// Seed of the random family.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Vertex bound of the random family.
        #[arg(long, default_value_t = 10)]
        max_vertices: usize,
        /// Edge bound of the family (enumerate and random).
        #[arg(long)]
        max_edges: Option<usize>,
        /// Also write the JSON report to this file.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Emit one JSON object instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Write a random graft document to standard output.
    Gen {
        /// Draw a seeded random instance (the only generator).
        #[arg(long, required = true)]
        random: bool,
        /// Seed of the instance.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Vertex bound.
        #[arg(long, default_value_t = 10)]
        vertices: usize,
        /// Edge bound.
        #[arg(long, default_value_t = 14)]
        edges: usize,
        /// Emit one JSON object instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Emit drawing source with levels as ranks, join edges bold, and
    /// terminals doubled.
    Export {
        file: PathBuf,
        /// Vertex the level ranks are rooted at.
        #[arg(long)]
        root: String,
        /// Output format.
        #[arg(long, value_enum, default_value_t = ExportFormat::Dot)]
        format: ExportFormat,
        /// Emit one JSON object instead of text.
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ExportFormat {
    /// Graphviz source.
    Dot,
}

// ======================================================================
// Entry point and dispatch
// ======================================================================

/// Parse the process arguments, run one subcommand, print its payload,
/// and map errors to the exit-code contract.
pub fn run() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok((payload, code)) => {
            print!("{payload}");
            code
        }
        Err(e) => {
            match &e {
                // Line 0 marks errors that did not come from a file line;
                // a line prefix would only mislead there.
                Error::Parse { line: 0, message } => eprintln!("grafts: {message}"),
                _ => eprintln!("grafts: {e}"),
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn dispatch(command: Command) -> Result<(String, ExitCode), Error> {
    let ok = ExitCode::SUCCESS;
    match command {
        Command::Solve { file, allow_disconnected, json } => {
            let (doc, gt) = load(&file, allow_disconnected)?;
            Ok((solve_payload(&doc, &gt, json)?, ok))
        }
        Command::Dist { file, root, from, json } => {
            let (doc, gt) = load(&file, false)?;
            let root = resolve(&doc, &root)?;
            let from = from.as_deref().map(|n| resolve(&doc, n)).transpose()?;
            Ok((dist_payload(&doc, &gt, root, from, json)?, ok))
        }
        Command::Decompose { file, root, json } => {
            let (doc, gt) = load(&file, false)?;
            let root = resolve(&doc, &root)?;
            Ok((decompose_payload(&doc, &gt, root, json)?, ok))
        }
        Command::Kl { file, json } => {
            let (doc, gt) = load(&file, false)?;
            Ok((kl_payload(&doc, &gt, json)?, ok))
        }
        Command::Critical { file, class_of, json } => {
            let (doc, gt) = load(&file, false)?;
            let v = resolve(&doc, &class_of)?;
            Ok((critical_payload(&doc, &gt, v, json)?, ok))
        }
        Command::Rootlize { file, mount, emit, json } => {
            let (doc, gt) = load(&file, false)?;
            let mount = mount
                .iter()
                .map(|n| resolve(&doc, n))
                .collect::<Result<VertexSet, _>>()?;
            let (payload, document) = rootlize_payload(&doc, &gt, mount, json)?;
            if let Some(path) = emit {
                write_file(&path, &document)?;
                // The document went to the file; keep stdout to the
                // machine-readable object, or nothing in text mode.
                Ok((if json { payload } else { String::new() }, ok))
            } else {
                Ok((payload, ok))
            }
        }
        Command::Verify {
            file,
            checks,
            enumerate,
            random,
            seed,
            max_vertices,
            max_edges,
            report,
            json,
        } => {
            let selected = match checks.as_deref() {
                Some(list) => parse_check_list(list)
                    .map_err(|message| Error::Parse { line: 0, message })?,
                None => CheckId::ALL.to_vec(),
            };
            let modes =
                usize::from(file.is_some()) + usize::from(enumerate.is_some()) + usize::from(random.is_some());
            if modes != 1 {
                return Err(Error::Parse {
                    line: 0,
                    message: "pass exactly one of FILE, --enumerate, or --random".into(),
                });
            }
            let (payload, report_json, clean) = if let Some(path) = file {
                // The harness reports disconnected instances as skips,
                // so loading stays permissive here.
                let (_, gt) = load(&path, true)?;
                verify_instance(&gt, &selected, json)
            } else if let Some(n) = enumerate {
                let spec = InstanceSpec::exhaustive(n, max_edges.unwrap_or(8));
                verify_family(&spec, &selected, json)?
            } else {
                let spec = InstanceSpec::random(
                    random.unwrap_or(0),
                    max_vertices,
                    max_edges.unwrap_or(14),
                    seed,
                );
                verify_family(&spec, &selected, json)?
            };
            if let Some(path) = report {
                let mut pretty = serde_json::to_string_pretty(&report_json)
                    .expect("reports serialize");
                pretty.push('\n');
                write_file(&path, &pretty)?;
            }
            Ok((payload, if clean { ok } else { ExitCode::FAILURE }))
        }
        Command::Gen { random: _, seed, vertices, edges, json } => {
            Ok((gen_payload(seed, vertices, edges, json)?, ok))
        }
        Command::Export { file, root, format, json } => {
            let (doc, gt) = load(&file, false)?;
            let root = resolve(&doc, &root)?;
            Ok((export_payload(&doc, &gt, root, format, json)?, ok))
        }
    }
}

// ======================================================================
// Loading and name resolution
// ======================================================================

fn load(path: &Path, allow_disconnected: bool) -> Result<(GraftDocument, Graft), Error> {
    let text = fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    let doc = GraftDocument::parse(&text)?;
    let gt = if allow_disconnected {
        doc.graft_allow_disconnected()?
    } else {
        doc.graft()?
    };
    Ok((doc, gt))
}

fn write_file(path: &Path, content: &str) -> Result<(), Error> {
    fs::write(path, content).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn resolve(doc: &GraftDocument, name: &str) -> Result<usize, Error> {
    doc.index_of(name).ok_or_else(|| Error::Parse {
        line: 0,
        message: format!("unknown vertex {name:?}"),
    })
}

// ======================================================================
// Rendering helpers
// ======================================================================

/// `{a, c}` — the brace style the library's diagnostics use.
fn braces(doc: &GraftDocument, s: VertexSet) -> String {
    format!("{{{}}}", doc.name_set(s).join(", "))
}

/// Vertex names of a set in id order, as a JSON array.
fn set_json(doc: &GraftDocument, s: VertexSet) -> Value {
    Value::from(doc.name_set(s))
}

/// A comma list of `name-name` edges, `(none)` when empty.
fn edge_list(items: &[String]) -> String {
    if items.is_empty() {
        "(none)".to_string()
    } else {
        items.join(", ")
    }
}

/// The document fields as JSON (vertices, edges as name pairs,
/// terminals, optional comment), mirroring the text format.
fn doc_json(doc: &GraftDocument) -> Vec<(&'static str, Value)> {
    let edges: Vec<Value> = doc
        .edge_names()
        .into_iter()
        .map(|(u, v)| json!([u, v]))
        .collect();
    let mut fields = vec![
        ("vertices", Value::from(doc.names().to_vec())),
        ("edges", Value::from(edges)),
        ("terminals", Value::from(doc.terminal_names())),
    ];
    if let Some(c) = doc.comment() {
        fields.push(("comment", Value::from(c)));
    }
    fields
}

fn object(fields: Vec<(&'static str, Value)>) -> String {
    let map: serde_json::Map<String, Value> = fields
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect();
    let mut out = Value::Object(map).to_string();
    out.push('\n');
    out
}

// ======================================================================
// Subcommand payloads
// ======================================================================

fn solve_payload(doc: &GraftDocument, gt: &Graft, json: bool) -> Result<String, Error> {
    let cert = gt.min_join()?;
    let allowed = gt.allowed_edges()?;
    let join_names = doc.name_edges(cert.edges);
    let allowed_names = doc.name_edges(allowed);
    if json {
        Ok(object(vec![
            ("nu", Value::from(cert.size)),
            ("join", Value::from(join_names)),
            ("allowed", Value::from(allowed_names)),
        ]))
    } else {
        Ok(format!(
            "nu = {}; join = {}; allowed = {}\n",
            cert.size,
            edge_list(&join_names),
            edge_list(&allowed_names),
        ))
    }
}

fn dist_payload(
    doc: &GraftDocument,
    gt: &Graft,
    root: usize,
    from: Option<usize>,
    json: bool,
) -> Result<String, Error> {
    let w = gt.minimum_weighting()?;
    let profile = gt.profile(&w, root)?;
    let rows: Vec<usize> = match from {
        Some(v) => vec![v],
        None => (0..doc.vertex_count()).collect(),
    };
    if json {
        let table: Vec<Value> = rows
            .iter()
            .map(|&v| {
                json!({
                    "vertex": doc.name(v),
                    "distance": profile.distance(v),
                    "level": profile.distance(v),
                })
            })
            .collect();
        Ok(object(vec![
            ("root", Value::from(doc.name(root))),
            ("rows", Value::from(table)),
        ]))
    } else {
        let width = doc
            .names()
            .iter()
            .map(String::len)
            .max()
            .unwrap_or(0)
            .max("vertex".len());
        let mut out = format!("root: {}\n", doc.name(root));
        out.push_str(&format!("{:<width$} {:>8} {:>5}\n", "vertex", "distance", "level"));
        for v in rows {
            let d = profile.distance(v);
            out.push_str(&format!("{:<width$} {:>8} {:>5}\n", doc.name(v), d, d));
        }
        Ok(out)
    }
}

fn decompose_payload(
    doc: &GraftDocument,
    gt: &Graft,
    root: usize,
    json: bool,
) -> Result<String, Error> {
    let w = gt.minimum_weighting()?;
    let profile = gt.profile(&w, root)?;
    let family = profile.components(gt.graph());
    let tri = profile.trisection(gt.graph());
    if json {
        let levels: Vec<Value> = family
            .rows()
            .iter()
            .map(|row| {
                let components: Vec<Value> = row
                    .components
                    .iter()
                    .enumerate()
                    .map(|(i, &c)| {
                        json!({
                            "vertices": set_json(doc, c),
                            "capital": row.capital == Some(i),
                        })
                    })
                    .collect();
                json!({ "index": row.index, "components": components })
            })
            .collect();
        Ok(object(vec![
            ("root", Value::from(doc.name(root))),
            ("levels", Value::from(levels)),
            (
                "trisection",
                json!({
                    "initial": set_json(doc, tri.initial),
                    "zero": set_json(doc, tri.zero_part),
                    "negative": set_json(doc, tri.negative_part),
                    "outer": set_json(doc, tri.outer_part),
                }),
            ),
        ]))
    } else {
        let mut out = format!("root: {}\n", doc.name(root));
        for row in family.rows() {
            let rendered: Vec<String> = row
                .components
                .iter()
                .enumerate()
                .map(|(i, &c)| {
                    if row.capital == Some(i) {
                        format!("{} (capital)", braces(doc, c))
                    } else {
                        braces(doc, c)
                    }
                })
                .collect();
            out.push_str(&format!("level {}: {}\n", row.index, rendered.join(" | ")));
        }
        out.push_str(&format!(
            "trisection: zero {}; negative {}; outer {}\n",
            braces(doc, tri.zero_part),
            braces(doc, tri.negative_part),
            braces(doc, tri.outer_part),
        ));
        Ok(out)
    }
}

fn kl_payload(doc: &GraftDocument, gt: &Graft, json: bool) -> Result<String, Error> {
    let factor = gt.factor_components()?;
    let kl = gt.kl_classes()?;
    if json {
        Ok(object(vec![
            (
                "factor_components",
                Value::from(factor.iter().map(|&c| set_json(doc, c)).collect::<Vec<_>>()),
            ),
            (
                "classes",
                Value::from(
                    kl.classes().iter().map(|&c| set_json(doc, c)).collect::<Vec<_>>(),
                ),
            ),
        ]))
    } else {
        let factor_text: Vec<String> = factor.iter().map(|&c| braces(doc, c)).collect();
        let class_text: Vec<String> =
            kl.classes().iter().map(|&c| braces(doc, c)).collect();
        Ok(format!(
            "factor components: {}\nclasses: {}\n",
            factor_text.join(" | "),
            class_text.join(" | "),
        ))
    }
}

fn critical_payload(
    doc: &GraftDocument,
    gt: &Graft,
    v: usize,
    json: bool,
) -> Result<String, Error> {
    let kl = gt.kl_classes()?;
    let class = kl.class_of(v);
    let critical = gt.critical_set(class)?;
    if json {
        Ok(object(vec![
            ("vertex", Value::from(doc.name(v))),
            ("class", set_json(doc, class)),
            ("critical", set_json(doc, critical)),
        ]))
    } else {
        Ok(format!(
            "class: {}\ncritical: {}\n",
            braces(doc, class),
            braces(doc, critical),
        ))
    }
}

/// Fresh vertex name: the base when free, else underscores appended.
fn fresh_name(doc: &GraftDocument, base: &str) -> String {
    let mut name = base.to_string();
    while doc.index_of(&name).is_some() {
        name.push('_');
    }
    name
}

fn rootlize_payload(
    doc: &GraftDocument,
    gt: &Graft,
    mount: VertexSet,
    json: bool,
) -> Result<(String, String), Error> {
    let rl = gt.rootlize(mount)?;
    let ext = rl.extended();
    let root_name = fresh_name(doc, "r");
    let attachment_name = fresh_name(doc, "s");
    let mut names: Vec<String> = doc.names().to_vec();
    debug_assert_eq!(rl.root(), names.len());
    names.push(root_name.clone());
    debug_assert_eq!(rl.attachment(), names.len());
    names.push(attachment_name.clone());
    let g = ext.graph();
    let edges: Vec<(usize, usize)> = (0..g.edge_count()).map(|e| g.endpoints(e)).collect();
    let comment = format!(
        "root {root_name}, attachment {attachment_name}, mount {}",
        braces(doc, mount),
    );
    let ext_doc = GraftDocument::new(
        names,
        edges,
        ext.terminals().to_vec(),
        Some(comment),
    )?;
    let document = ext_doc.render();
    let payload = if json {
        let mut fields = vec![
            ("root", Value::from(root_name)),
            ("attachment", Value::from(attachment_name)),
            ("mount", set_json(doc, mount)),
        ];
        fields.extend(doc_json(&ext_doc));
        object(fields)
    } else {
        document.clone()
    };
    Ok((payload, document))
}

fn gen_payload(seed: u64, vertices: usize, edges: usize, json: bool) -> Result<String, Error> {
    let spec = InstanceSpec::random(1, vertices, edges, seed);
    let gt = crate::harness::random_graft(&spec, 0);
    let comment = format!("seed {seed}, vertices <= {vertices}, edges <= {edges}");
    let doc = GraftDocument::from_graft(&gt, Some(comment));
    if json {
        Ok(object(doc_json(&doc)))
    } else {
        Ok(doc.render())
    }
}

fn export_payload(
    doc: &GraftDocument,
    gt: &Graft,
    root: usize,
    format: ExportFormat,
    json: bool,
) -> Result<String, Error> {
    let ExportFormat::Dot = format;
    let w = gt.minimum_weighting()?;
    let profile = gt.profile(&w, root)?;
    let source = doc.render_dot(w.join(), Some(&profile));
    if json {
        Ok(object(vec![
            ("format", Value::from("dot")),
            ("root", Value::from(doc.name(root))),
            ("source", Value::from(source)),
        ]))
    } else {
        Ok(source)
    }
}

// ======================================================================
// Verification payloads
// ======================================================================

/// One instance: per-check verdict lines. Returns the stdout payload,
/// the JSON report, and whether no check failed.
fn verify_instance(gt: &Graft, checks: &[CheckId], json: bool) -> (String, Value, bool) {
    let reports = run_checks(gt, checks);
    let (mut pass, mut fail, mut skipped) = (0usize, 0usize, 0usize);
    let mut lines = String::new();
    let mut items: Vec<Value> = Vec::new();
    for r in &reports {
        match &r.verdict {
            Verdict::Pass => {
                pass += 1;
                lines.push_str(&format!("{:<15} pass\n", r.check.id()));
                items.push(json!({ "id": r.check.id(), "verdict": "pass" }));
            }
            Verdict::Fail(w) => {
                fail += 1;
                lines.push_str(&format!("{:<15} FAIL: {}\n", r.check.id(), w.detail));
                items.push(json!({
                    "id": r.check.id(),
                    "verdict": "fail",
                    "detail": w.detail,
                }));
            }
            Verdict::Skipped(reason) => {
                skipped += 1;
                lines.push_str(&format!("{:<15} skip: {reason}\n", r.check.id()));
                items.push(json!({
                    "id": r.check.id(),
                    "verdict": "skip",
                    "reason": reason,
                }));
            }
        }
    }
    let digest = reports.first().map(|r| format!("{:016x}", r.digest));
    let report = json!({
        "conventions": CONVENTIONS,
        "digest": digest,
        "checks": items,
        "pass": pass,
        "fail": fail,
        "skipped": skipped,
    });
    let payload = if json {
        let mut out = report.to_string();
        out.push('\n');
        out
    } else {
        let mut out = conventions_text();
        out.push_str(&lines);
        out.push_str(&format!(
            "checks: {}  pass: {pass}  fail: {fail}  skipped: {skipped}\n",
            reports.len(),
        ));
        out
    };
    (payload, report, fail == 0)
}

/// A generated family via the suite runner. Wall-clock goes to stderr so
/// equal runs print equal payloads.
fn verify_family(
    spec: &InstanceSpec,
    checks: &[CheckId],
    json: bool,
) -> Result<(String, Value, bool), Error> {
    let summary = run_suite(spec, checks)?;
    eprintln!(
        "suite: {} instances in {} ms",
        summary.instances, summary.millis
    );
    let report = summary_json(&summary);
    let payload = if json {
        let mut out = report.to_string();
        out.push('\n');
        out
    } else {
        let mut out = conventions_text();
        out.push_str(&summary.render());
        out
    };
    Ok((payload, report, summary.failures() == 0))
}

fn conventions_text() -> String {
    let mut out = String::new();
    for line in CONVENTIONS {
        out.push_str(&format!("convention: {line}\n"));
    }
    out
}

fn summary_json(summary: &SuiteSummary) -> Value {
    let totals: Vec<Value> = summary
        .totals
        .iter()
        .map(|t| {
            json!({
                "check": t.check.id(),
                "pass": t.pass,
                "fail": t.fail,
                "skipped": t.skipped,
                "skip_reasons": t.skip_reasons,
                "first_failure": t.first_failure.as_ref().map(|w| {
                    json!({ "detail": w.detail, "instance": w.instance })
                }),
            })
        })
        .collect();
    json!({
        "conventions": CONVENTIONS,
        "instances": summary.instances,
        "failures": summary.failures(),
        "totals": totals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const P3: &str = "vertices: a, b, c\nedges: a-b, b-c\nterminals: a, c\n";
    const CYCLE_ALL: &str = "vertices: a, b, c, d\nedges: a-b, b-c, c-d, d-a\nterminals: a, b, c, d\n";
    const CYCLE_EMPTY: &str = "vertices: a, b, c, d\nedges: a-b, b-c, c-d, d-a\nterminals:\n";

    fn doc_and_graft(text: &str) -> (GraftDocument, Graft) {
        let doc = GraftDocument::parse(text).unwrap();
        let gt = doc.graft().unwrap();
        (doc, gt)
    }

    #[test]
    fn solve_renders_text_and_json() {
        let (doc, gt) = doc_and_graft(P3);
        let text = solve_payload(&doc, &gt, false).unwrap();
        assert_eq!(text, "nu = 2; join = a-b, b-c; allowed = a-b, b-c\n");
        let json = solve_payload(&doc, &gt, true).unwrap();
        assert_eq!(
            json,
            "{\"allowed\":[\"a-b\",\"b-c\"],\"join\":[\"a-b\",\"b-c\"],\"nu\":2}\n"
        );
    }

    #[test]
    fn solve_marks_empty_joins() {
        let (doc, gt) = doc_and_graft(CYCLE_EMPTY);
        let text = solve_payload(&doc, &gt, false).unwrap();
        assert_eq!(text, "nu = 0; join = (none); allowed = (none)\n");
    }

    #[test]
    fn dist_table_and_single_row() {
        let (doc, gt) = doc_and_graft(P3);
        let table = dist_payload(&doc, &gt, 0, None, false).unwrap();
        assert_eq!(
            table,
            "root: a\n\
             vertex distance level\n\
             a             0     0\n\
             b            -1    -1\n\
             c            -2    -2\n"
        );
        let row = dist_payload(&doc, &gt, 0, Some(2), true).unwrap();
        assert_eq!(
            row,
            "{\"root\":\"a\",\"rows\":[{\"distance\":-2,\"level\":-2,\"vertex\":\"c\"}]}\n"
        );
    }

    #[test]
    fn decompose_reports_the_trisection() {
        let (doc, gt) = doc_and_graft(CYCLE_ALL);
        let text = decompose_payload(&doc, &gt, 0, false).unwrap();
        assert!(text.contains("level -1: {b} | {d}\n"));
        assert!(text.contains("level 0: {a, b, c, d} (capital)\n"));
        assert!(text.contains("trisection: zero {a, c}; negative {b, d}; outer {}\n"));
    }

    #[test]
    fn kl_and_critical_agree_on_the_cycle() {
        let (doc, gt) = doc_and_graft(CYCLE_ALL);
        let kl = kl_payload(&doc, &gt, false).unwrap();
        assert_eq!(
            kl,
            "factor components: {a, b, c, d}\nclasses: {a, c} | {b, d}\n"
        );
        let critical = critical_payload(&doc, &gt, 1, false).unwrap();
        assert_eq!(critical, "class: {b, d}\ncritical: {a, c}\n");
    }

    #[test]
    fn rootlize_emits_a_reparseable_document() {
        let (doc, gt) = doc_and_graft(CYCLE_EMPTY);
        let mount = [0, 2].into_iter().collect();
        let (_, document) = rootlize_payload(&doc, &gt, mount, false).unwrap();
        let ext_doc = GraftDocument::parse(&document).unwrap();
        assert_eq!(ext_doc.names()[4..], ["r".to_string(), "s".to_string()]);
        let ext = ext_doc.graft().unwrap();
        assert_eq!(ext.graph().vertex_count(), 6);
        // Host edges, the root edge, one edge per mount vertex.
        assert_eq!(ext.graph().edge_count(), 4 + 1 + 2);
        assert_eq!(ext_doc.comment(), Some("root r, attachment s, mount {a, c}"));
    }

    #[test]
    fn rootlize_avoids_name_clashes() {
        let text = "vertices: r, s, r_\nedges: r-s, s-r_\nterminals: r, r_\n";
        let (doc, gt) = doc_and_graft(text);
        let (_, document) =
            rootlize_payload(&doc, &gt, VertexSet::singleton(0), false).unwrap();
        let ext_doc = GraftDocument::parse(&document).unwrap();
        assert_eq!(ext_doc.names()[3..], ["r__".to_string(), "s_".to_string()]);
    }

    #[test]
    fn gen_is_deterministic_and_loadable() {
        let a = gen_payload(5, 8, 12, false).unwrap();
        let b = gen_payload(5, 8, 12, false).unwrap();
        assert_eq!(a, b);
        let doc = GraftDocument::parse(&a).unwrap();
        assert!(doc.graft().is_ok());
        assert_eq!(doc.comment(), Some("seed 5, vertices <= 8, edges <= 12"));
    }

    #[test]
    fn export_produces_dot_source() {
        let (doc, gt) = doc_and_graft(P3);
        let text = export_payload(&doc, &gt, 0, ExportFormat::Dot, false).unwrap();
        assert!(text.starts_with("graph {"));
        assert!(text.contains("\"a\" [shape=doublecircle];"));
        let json = export_payload(&doc, &gt, 0, ExportFormat::Dot, true).unwrap();
        assert!(json.starts_with("{\"format\":\"dot\""));
    }

    #[test]
    fn verify_instance_is_clean_on_the_path() {
        let (_, gt) = doc_and_graft(P3);
        let (payload, report, clean) = verify_instance(&gt, &CheckId::ALL, false);
        assert!(clean);
        assert!(payload.starts_with("convention: "));
        assert!(payload.contains("fact1-sign      pass\n"));
        assert!(payload.contains("checks: 25  pass: 25  fail: 0  skipped: 0\n"));
        assert_eq!(report["fail"], 0);
    }

    #[test]
    fn verify_family_payload_replays() {
        let spec = InstanceSpec::random(8, 6, 8, 11);
        let (a, report, clean) = verify_family(&spec, &CheckId::ALL, false).unwrap();
        let (b, _, _) = verify_family(&spec, &CheckId::ALL, false).unwrap();
        assert_eq!(a, b);
        assert!(clean);
        assert_eq!(report["failures"], 0);
        assert_eq!(report["instances"], 8);
    }

    #[test]
    fn unknown_names_are_parse_errors() {
        let (doc, _) = doc_and_graft(P3);
        let e = resolve(&doc, "z").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 0, .. }));
        assert_eq!(e.exit_code(), 2);
    }
}
