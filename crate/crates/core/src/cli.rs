//! Command-line front end.
//!
//! Every command prints one JSON document on stdout. Exit codes: 0 success
//! or "yes", 1 "no" from a decision command, 2 usage or input error, 3 a
//! violated assertion during search.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::bitset::VertexSet;
use crate::domination::{self, CorePolicy, DominationError};
use crate::format::{parse_graph, to_edge_list, Format};
use crate::graph::Graph;
use crate::hypergraph::{SizeVerdict, SpernerFamily};
use crate::reduction::{reduce_by_matching, MatchingSelection, ReductionStatus};
use crate::search::{self, SearchError, SearchFilter};
use crate::wtd2::{self, W2Error};

pub const EXIT_YES: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_ASSERTION: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "wtd", version, about = "Total domination and well-totally-dominated graphs")]
struct Cli {
    /// Input graph format.
    #[arg(long, global = true, default_value = "edge-list")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Minimal total dominating sets, total domination numbers and invariants.
    Analyze {
        /// Graph file, or `-` for stdin.
        path: PathBuf,
    },
    /// Decide whether the graph is WTD(k).
    Recognize {
        path: PathBuf,
        #[arg(long)]
        k: usize,
        /// Print the deviating minimal TDS on a negative answer.
        #[arg(long)]
        witness: bool,
    },
    /// Assemble a graph from a four-step recipe.
    ConstructW2 {
        recipe: PathBuf,
        /// Also write the graph as an edge list to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide membership in W2 (WTD(2) with packing number 2) and print a
    /// recipe that rebuilds the graph.
    W2Check {
        path: PathBuf,
        /// Explain a negative answer.
        #[arg(long)]
        witness: bool,
    },
    /// Build a graph whose minimal total dominating sets are the given family.
    Realize {
        /// Sets of labels, e.g. "{a,b};{c,d}".
        #[arg(long)]
        family: String,
        /// Graph attached to every member of the family.
        #[arg(long)]
        extension: Option<PathBuf>,
        /// How the family's support is wired: complete or minimal-valid.
        #[arg(long, default_value = "complete")]
        core: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Delete the closed neighborhood of an induced matching.
    Reduce {
        path: PathBuf,
        /// Matching edges, e.g. "0-1,3-4" (labels or ids).
        #[arg(long)]
        edges: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustive search over small graphs with structural assertions.
    Search {
        #[arg(long, default_value_t = 2)]
        n_min: usize,
        #[arg(long, default_value_t = 8)]
        n_max: usize,
        #[arg(long)]
        min_degree: Option<usize>,
        #[arg(long)]
        planar: bool,
        #[arg(long)]
        triangle_free: bool,
        /// Include disconnected graphs (those with isolated vertices are
        /// skipped).
        #[arg(long)]
        allow_disconnected: bool,
        /// Comma-separated assertion ids, or `all`.
        #[arg(long = "assert", default_value = "all")]
        assertions: String,
        /// Catalog file (JSONL), appended to and then sorted.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        jobs: Option<usize>,
    },
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

type Outcome = Result<(Value, i32), Failure>;

/// Runs the CLI on `args` (including the program name) and returns the
/// process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_YES };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(stderr, "{text}");
            } else {
                let _ = write!(stdout, "{text}");
            }
            return code;
        }
    };
    match dispatch(cli) {
        Ok((payload, code)) => {
            let text = serde_json::to_string_pretty(&payload).expect("JSON values serialize");
            let _ = writeln!(stdout, "{text}");
            code
        }
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(cli: Cli) -> Outcome {
    let format = cli.format;
    match cli.command {
        Command::Analyze { path } => cmd_analyze(&read_graph(&path, format)?),
        Command::Recognize { path, k, witness } => cmd_recognize(&read_graph(&path, format)?, k, witness),
        Command::ConstructW2 { recipe, out } => cmd_construct_w2(&recipe, out.as_deref()),
        Command::W2Check { path, witness } => cmd_w2_check(&read_graph(&path, format)?, witness),
        Command::Realize {
            family,
            extension,
            core,
            out,
        } => {
            let ext = extension.map(|p| read_graph(&p, format)).transpose()?;
            let policy: CorePolicy = core.parse().map_err(usage)?;
            cmd_realize(&family, ext.as_ref(), &policy, out.as_deref())
        }
        Command::Reduce { path, edges, out } => cmd_reduce(&read_graph(&path, format)?, &edges, out.as_deref()),
        Command::Search {
            n_min,
            n_max,
            min_degree,
            planar,
            triangle_free,
            allow_disconnected,
            assertions,
            out,
            jobs,
        } => {
            let filter = SearchFilter {
                n_min,
                n_max,
                require_connected: !allow_disconnected,
                min_degree,
                planar_only: planar,
                triangle_free_only: triangle_free,
            };
            let asserts = search::parse_assertions(&assertions).map_err(usage)?;
            cmd_search(&filter, &asserts, out.as_deref(), jobs)
        }
    }
}

fn read_text(path: &Path) -> Result<String, Failure> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| usage(format!("stdin: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn read_graph(path: &Path, format: Format) -> Result<Graph, Failure> {
    parse_graph(&read_text(path)?, format).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn write_out(path: Option<&Path>, g: &Graph) -> Result<(), Failure> {
    if let Some(p) = path {
        fs::write(p, to_edge_list(g)).map_err(|e| usage(format!("{}: {e}", p.display())))?;
    }
    Ok(())
}

fn domination_failure(g: &Graph, e: DominationError) -> Failure {
    match e {
        DominationError::IsolatedVertex(v) => usage(format!(
            "total domination undefined: vertex {} is isolated",
            g.name(v)
        )),
        other => usage(other.to_string()),
    }
}

/// A vertex as JSON: its label if the graph has labels, else its id.
fn vname(g: &Graph, v: usize) -> Value {
    match g.labels() {
        Some(l) => Value::String(l[v].clone()),
        None => json!(v),
    }
}

fn vset(g: &Graph, s: VertexSet) -> Value {
    Value::Array(s.iter().map(|v| vname(g, v)).collect())
}

/// Sets ordered by size, then by their ascending id lists.
fn family_json(g: &Graph, family: &SpernerFamily) -> Value {
    let mut sets: Vec<Vec<usize>> = family.edges().iter().map(|s| s.to_vec()).collect();
    sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Value::Array(
        sets.into_iter()
            .map(|s| Value::Array(s.into_iter().map(|v| vname(g, v)).collect()))
            .collect(),
    )
}

fn analysis(g: &Graph) -> Result<Value, Failure> {
    let family = domination::mtds(g).map_err(|e| domination_failure(g, e))?;
    let r = domination::report_from_family(&family);
    let mut out = json!({
        "n": g.n(),
        "m": g.edge_count(),
        "gamma_t": r.gamma_t,
        "Gamma_t": r.upper_gamma_t,
        "is_wtd": r.is_wtd,
        "mtds": family_json(g, &family),
        "rho": domination::packing_number(g),
        "diameter": g.diameter(),
        "girth": g.girth(),
    });
    if r.gamma_t == 2 {
        let de = domination::dominating_edge_subgraph(g).map_err(|e| domination_failure(g, e))?;
        out["g_de_edges"] = Value::Array(
            de.edges
                .iter()
                .map(|(u, v)| json!([vname(g, u), vname(g, v)]))
                .collect(),
        );
    }
    Ok(out)
}

fn cmd_analyze(g: &Graph) -> Outcome {
    Ok((analysis(g)?, EXIT_YES))
}

fn cmd_recognize(g: &Graph, k: usize, witness: bool) -> Outcome {
    let d = domination::recognize_wtd_k(g, k).map_err(|e| domination_failure(g, e))?;
    let mut out = json!({ "k": k, "wtd_k": d.accepted });
    if d.accepted {
        out["certificate"] = vset(g, d.certificate);
        return Ok((out, EXIT_YES));
    }
    out["verdict"] = json!(match d.verdict {
        SizeVerdict::Smaller => "smaller",
        SizeVerdict::Larger => "larger",
        SizeVerdict::AllSizeK => unreachable!("rejected decisions carry a deviation"),
    });
    if witness {
        out["witness"] = vset(g, d.certificate);
    }
    Ok((out, EXIT_NO))
}

fn w2_failure(e: W2Error) -> Failure {
    usage(format!("recipe rejected at {e}"))
}

fn cmd_construct_w2(path: &Path, out: Option<&Path>) -> Outcome {
    let recipe = wtd2::parse_recipe(&read_text(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let g = wtd2::construct_w2(&recipe).map_err(w2_failure)?;
    write_out(out, &g)?;
    let mut check = analysis(&g)?;
    let de = domination::dominating_edge_subgraph(&g).map_err(|e| domination_failure(&g, e))?;
    check["g_de_equals_h"] = json!(de.edges == recipe.h.edge_set());
    Ok((
        json!({
            "graph": to_edge_list(&g),
            "self_check": check,
        }),
        EXIT_YES,
    ))
}

fn cmd_w2_check(g: &Graph, witness: bool) -> Outcome {
    let cert = wtd2::w2_membership(g).map_err(|e| domination_failure(g, e))?;
    match cert {
        Some(c) => Ok((
            json!({
                "member": true,
                "packing": [vname(g, c.packing.0), vname(g, c.packing.1)],
                "recipe": wtd2::write_recipe(&c.recipe),
            }),
            EXIT_YES,
        )),
        None => {
            let mut out = json!({ "member": false });
            if witness {
                let d = domination::recognize_wtd_k(g, 2).map_err(|e| domination_failure(g, e))?;
                if d.accepted {
                    out["reason"] = json!("packing number is 1");
                } else {
                    out["reason"] = json!("not WTD(2)");
                    out["witness"] = vset(g, d.certificate);
                }
            }
            Ok((out, EXIT_NO))
        }
    }
}

/// Parses `"{a,b};{c,d}"` into a family over labels numbered by first
/// appearance.
fn parse_family(text: &str) -> Result<(SpernerFamily, Vec<String>), Failure> {
    let mut labels: Vec<String> = Vec::new();
    let mut sets = Vec::new();
    for part in text.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        let inner = part
            .strip_prefix('{')
            .and_then(|p| p.strip_suffix('}'))
            .unwrap_or(part);
        let mut s = VertexSet::EMPTY;
        for name in inner.split(',').map(str::trim) {
            if name.is_empty() || name.contains(char::is_whitespace) {
                return Err(usage(format!("bad element {name:?} in {part:?}")));
            }
            let id = match labels.iter().position(|l| l == name) {
                Some(i) => i,
                None => {
                    labels.push(name.to_string());
                    labels.len() - 1
                }
            };
            if id >= crate::MAX_VERTICES {
                return Err(usage("family has too many elements"));
            }
            s.insert(id);
        }
        sets.push(s);
    }
    let family = SpernerFamily::new(labels.len(), sets).map_err(|e| usage(format!("family: {e}")))?;
    Ok((family, labels))
}

fn cmd_realize(text: &str, ext: Option<&Graph>, policy: &CorePolicy, out: Option<&Path>) -> Outcome {
    let (family, labels) = parse_family(text)?;
    let r = domination::realize_mtds(&family, ext, policy, Some(&labels)).map_err(|e| usage(e.to_string()))?;
    let g = &r.graph;
    write_out(out, g)?;
    let mut check = analysis(g)?;
    let got = domination::mtds(g).map_err(|e| domination_failure(g, e))?;
    check["matches_family"] = json!(got == r.family_in_graph(&family));
    Ok((
        json!({
            "graph": to_edge_list(g),
            "self_check": check,
        }),
        EXIT_YES,
    ))
}

fn parse_edges(g: &Graph, text: &str) -> Result<MatchingSelection, Failure> {
    let mut edges = Vec::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        // labels may contain '-', so take the split where both sides resolve
        let found = part.match_indices('-').find_map(|(i, _)| {
            let (a, b) = (&part[..i], &part[i + 1..]);
            Some((g.vertex_by_name(a)?, g.vertex_by_name(b)?))
        });
        match found {
            Some(e) => edges.push(e),
            None => return Err(usage(format!("cannot read edge {part:?}"))),
        }
    }
    Ok(MatchingSelection::new(edges))
}

fn cmd_reduce(g: &Graph, edges: &str, out: Option<&Path>) -> Outcome {
    let sel = parse_edges(g, edges)?;
    let red = reduce_by_matching(g, &sel).map_err(|e| usage(e.to_string()))?;
    write_out(out, &red.graph)?;
    let kept: Vec<Value> = red.vertex_map.iter().map(|&v| vname(g, v)).collect();
    let mut payload = json!({
        "status": red.status.to_string(),
        "m": sel.edges.len(),
        "graph": to_edge_list(&red.graph),
        "kept_vertices": kept,
    });
    if red.status == ReductionStatus::Ok {
        let host = domination::report(g).map_err(|e| domination_failure(g, e))?;
        let after = domination::report(&red.graph).map_err(|e| domination_failure(&red.graph, e))?;
        payload["self_check"] = json!({
            "is_wtd": after.is_wtd,
            "gamma_t": after.gamma_t,
            "host_is_wtd": host.is_wtd,
            "host_gamma_t": host.gamma_t,
        });
    }
    Ok((payload, EXIT_YES))
}

fn cmd_search(
    filter: &SearchFilter,
    asserts: &std::collections::BTreeSet<search::Assertion>,
    out: Option<&Path>,
    jobs: Option<usize>,
) -> Outcome {
    let outcome = search::run_search(filter, asserts, out, jobs).map_err(|e: SearchError| usage(e.to_string()))?;
    let violations = outcome.assertions.total_violations();
    let payload = serde_json::to_value(&outcome).expect("outcome serializes");
    if violations > 0 {
        let text = serde_json::to_string_pretty(&payload).unwrap();
        return Err(Failure {
            code: EXIT_ASSERTION,
            message: format!("{violations} assertion violations\n{text}"),
        });
    }
    Ok((payload, EXIT_YES))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["wtd"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn family_parsing() {
        let (f, labels) = parse_family("{a,b};{c,d}").unwrap();
        assert_eq!(labels, ["a", "b", "c", "d"]);
        assert_eq!(f.len(), 2);
        assert!(parse_family("{a,b};{a}").is_err());
        assert!(parse_family("{a,,b}").is_err());
    }

    #[test]
    fn realize_two_pairs() {
        let (code, out, _) = run_args(&["realize", "--family", "{a,b};{c,d}"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["self_check"]["n"], 8);
        assert_eq!(v["self_check"]["mtds"], json!([["a", "b"], ["c", "d"]]));
        assert_eq!(v["self_check"]["matches_family"], true);
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run_args(&["frobnicate"]).0, 2);
        assert_eq!(run_args(&["analyze", "/nonexistent/file"]).0, 2);
        assert_eq!(run_args(&["search", "--n-max", "17"]).0, 2);
        assert_eq!(run_args(&["--help"]).0, 0);
    }
}
