//! Batch command-line surface. Every subcommand prints a JSON envelope by
//! default; `--table` prints aligned `key  value` columns and `--dot` renders
//! graphs.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::chowring;
use crate::degeneration;
use crate::dualgraph;
use crate::error::{Error, Result};
use crate::numerics;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Parser)]
#[command(name = "unisecant", version, about = "Enumerative invariants of general non-special scrolls")]
struct Cli {
    #[command(flatten)]
    format: FormatArgs,

    /// Lower the enumeration caps to at most this many materialized items.
    #[arg(long, global = true, value_name = "N")]
    cap: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct FormatArgs {
    /// JSON envelope (default).
    #[arg(long, global = true, conflicts_with_all = ["table", "dot"])]
    json: bool,
    /// Aligned human-readable columns.
    #[arg(long, global = true, conflicts_with = "dot")]
    table: bool,
    /// Graphviz output (limit-graph only).
    #[arg(long, global = true)]
    dot: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Expected dimension of degree-m unisecants and the splitting range on T = X ∪ Q.
    #[command(allow_negative_numbers = true)]
    Dims { d: i64, g: i64, m: i64 },
    /// Minimal unisecant degree and the shape of its family.
    #[command(name = "min-sections", allow_negative_numbers = true)]
    MinSections { d: i64, g: i64 },
    /// Index of the degree-m unisecants, with the projection trace.
    #[command(allow_negative_numbers = true)]
    Index { d: i64, g: i64, m: i64 },
    /// Expansion of H_1···H_g in the square-free Chow ring and its pairing with V_0.
    #[command(name = "chow-product")]
    ChowProduct {
        g: u32,
        /// Print every term.
        #[arg(long)]
        terms: bool,
    },
    /// Dual graph of the limit family of minimal unisecants (d + g even).
    #[command(name = "limit-graph")]
    LimitGraph { g: u32 },
    /// Genus 2^g (g - 1) + 1 of the family of minimal unisecants.
    Genus {
        g: u32,
        /// Also compute 1 - χ of the constructed limit graph.
        #[arg(long)]
        via_graph: bool,
    },
    /// Monodromy of the 2^g minimal sections (d + g odd).
    Monodromy {
        g: u32,
        /// Also generate the group explicitly (at most 8 symbols).
        #[arg(long)]
        brute_force: bool,
    },
    /// Stability of a decomposable rank-two bundle L_1 ⊕ L_2.
    #[command(allow_negative_numbers = true)]
    Stability { deg1: i64, deg2: i64 },
    /// Check (d, g) against the degree bound d >= 2g + 3 + min{1, g - 1}.
    #[command(allow_negative_numbers = true)]
    Validate {
        d: i64,
        g: i64,
        /// Fail instead of warning when the bound is violated.
        #[arg(long)]
        strict: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Table,
    Dot,
}

/// Result of one invocation: exit code plus what goes to each stream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, Serialize)]
struct Envelope<'a> {
    schema_version: &'static str,
    command: &'a str,
    inputs: Value,
    result: Value,
    warnings: Vec<String>,
}

struct Report {
    inputs: Value,
    result: Value,
    warnings: Vec<String>,
    /// Replacement for `result` in table mode.
    table: Option<Value>,
    dot: Option<String>,
}

impl Report {
    fn new(inputs: Value, result: Value) -> Self {
        Self { inputs, result, warnings: Vec::new(), table: None, dot: None }
    }
}

fn to_value<T: Serialize>(v: &T) -> Result<Value> {
    serde_json::to_value(v).map_err(|e| Error::Internal(format!("serialization failed: {e}")))
}

fn check_cap(items: u128, builtin: u128, cap: Option<u64>, what: &str) -> Result<()> {
    let limit = cap.map_or(builtin, |c| builtin.min(c as u128));
    if items > limit {
        return Err(Error::Resource(format!("{what} needs {items} items, cap is {limit}")));
    }
    Ok(())
}

fn pow2(g: u32) -> u128 {
    if g >= 127 {
        u128::MAX
    } else {
        1u128 << g
    }
}

fn graph_size(g: u32) -> u128 {
    if g == 0 {
        1
    } else {
        pow2(g - 1).saturating_mul(g as u128 + 2)
    }
}

fn execute(command: &Command, cap: Option<u64>) -> Result<Report> {
    match *command {
        Command::Dims { d, g, m } => {
            let dm = numerics::expected_dim(d, g, m)?;
            let mut warnings = Vec::new();
            let splitting = if g >= 1 {
                let s = degeneration::splitting_range(d, g, m)?;
                check_cap(s.entries.len() as u128, u128::MAX, cap, "splitting range")?;
                to_value(&s)?
            } else {
                warnings.push("splitting range needs g >= 1".to_string());
                Value::Null
            };
            if !numerics::in_hdg(d, g) {
                warnings.push(format!("(d, g) = ({d}, {g}) is outside the degree bound"));
            }
            let result = json!({
                "expected_dim": dm,
                "self_intersection": numerics::self_intersection(d, m)?,
                "splitting_range": splitting,
            });
            let mut r = Report::new(json!({"d": d, "g": g, "m": m}), result);
            r.warnings = warnings;
            Ok(r)
        }
        Command::MinSections { d, g } => {
            let s = numerics::min_unisecant_degree(d, g)?;
            let result = json!({
                "degree": s.degree,
                "family": to_value(&s.family)?,
                "parity": numerics::Parity::of(d, g),
            });
            Ok(Report::new(json!({"d": d, "g": g}), result))
        }
        Command::Index { d, g, m } => {
            let index = numerics::index(d, g, m)?;
            let image = numerics::projection_reduction(d, g, m)?;
            let mut warnings = Vec::new();
            let sections = match degeneration::limit_unisecant_count_odd(image.params.d, g) {
                Ok(n) => Value::String(n.to_string()),
                Err(_) => Value::Null,
            };
            if let Some(w) = &image.warning {
                warnings.push(w.clone());
            }
            let result = json!({
                "index": index.to_string(),
                "expected_dim": numerics::expected_dim(d, g, m)?,
                "projection": to_value(&image)?,
                "minimal_sections_on_image": sections,
            });
            let mut r = Report::new(json!({"d": d, "g": g, "m": m}), result);
            r.warnings = warnings;
            Ok(r)
        }
        Command::ChowProduct { g, terms } => {
            let count = chowring::product_h_term_count(g);
            let size = pow2(g);
            let mut warnings = Vec::new();
            let materialize = if terms {
                check_cap(size, chowring::MAX_TERMS as u128, cap, "term listing")?;
                true
            } else {
                let ok = check_cap(size, chowring::MAX_TERMS as u128, cap, "expansion").is_ok();
                if !ok {
                    warnings.push("expansion above the cap; term count computed without materializing".into());
                }
                ok
            };
            let mut result = json!({ "g": g, "term_count": count.to_string() });
            if materialize {
                let product = chowring::product_h(g)?;
                if num_bigint::BigUint::from(product.len()) != count {
                    return Err(Error::Internal(format!(
                        "materialized {} terms, expected {count}",
                        product.len()
                    )));
                }
                result["pairing_with_v0"] = Value::String(chowring::pair_with_v0(&product)?.to_string());
                if terms {
                    result["terms"] = Value::Array(
                        product
                            .terms()
                            .map(|(m, c)| {
                                let single = chowring::CycleClass::monomial(g, m, c)?;
                                Ok(Value::String(single.to_string()))
                            })
                            .collect::<Result<_>>()?,
                    );
                }
            } else {
                result["pairing_with_v0"] = Value::Null;
            }
            let mut r = Report::new(json!({"g": g, "terms": terms}), result);
            r.warnings = warnings;
            Ok(r)
        }
        Command::LimitGraph { g } => {
            check_cap(graph_size(g), u128::MAX, cap, "limit graph")?;
            let graph = dualgraph::build_limit_graph(g)?;
            let summary = json!({
                "g": g,
                "vertex_count": graph.vertex_count(),
                "edge_count": graph.edge_count(),
                "euler_char": dualgraph::euler_char(&graph),
                "connected": graph.is_connected(),
            });
            let mut result = summary.clone();
            result["graph"] = to_value(&graph.to_export())?;
            let mut r = Report::new(json!({"g": g}), result);
            r.table = Some(summary);
            r.dot = Some(graph.to_dot(&format!("limit_g{g}")));
            Ok(r)
        }
        Command::Genus { g, via_graph } => {
            let formula = dualgraph::genus_formula(g);
            let mut result = json!({ "formula": formula.to_string() });
            if via_graph {
                check_cap(graph_size(g), u128::MAX, cap, "limit graph")?;
                let graph = dualgraph::build_limit_graph(g)?;
                let genus = dualgraph::arithmetic_genus(&graph)?;
                let agree = num_bigint::BigInt::from(genus) == formula;
                if !agree {
                    return Err(Error::Internal(format!("graph genus {genus} differs from formula {formula}")));
                }
                result["graph"] = json!({
                    "vertex_count": graph.vertex_count(),
                    "edge_count": graph.edge_count(),
                    "euler_char": dualgraph::euler_char(&graph),
                    "arithmetic_genus": genus,
                });
                result["agree"] = Value::Bool(agree);
            }
            Ok(Report::new(json!({"g": g, "via_graph": via_graph}), result))
        }
        Command::Monodromy { g, brute_force } => {
            check_cap(pow2(g), u128::MAX, cap, "monodromy symbols")?;
            let t = dualgraph::monodromy_transpositions(g)?;
            let mut result = json!({
                "g": g,
                "symbol_count": t.symbols().len(),
                "swap_count": t.swaps().len(),
                "full_symmetric": dualgraph::is_full_symmetric(&t),
            });
            if brute_force {
                result["group_order"] = Value::String(dualgraph::brute_force_group_order(&t)?.to_string());
            }
            Ok(Report::new(json!({"g": g, "brute_force": brute_force}), result))
        }
        Command::Stability { deg1, deg2 } => {
            let bundle = numerics::DecomposableBundle::new(deg1, deg2);
            let verdict = numerics::classify_decomposable(&bundle)?;
            let result = json!({
                "degree": bundle.degree()?,
                "verdict": to_value(&verdict)?,
                "slope": verdict.slope.to_string(),
            });
            Ok(Report::new(json!({"deg1": deg1, "deg2": deg2}), result))
        }
        Command::Validate { d, g, strict } => {
            let v = numerics::validate(d, g, strict)?;
            let mut r = Report::new(json!({"d": d, "g": g, "strict": strict}), to_value(&v)?);
            if !v.in_hdg {
                r.warnings.push(format!("d = {d} is below the bound {} for genus {g}", v.degree_bound));
            }
            Ok(r)
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Dims { .. } => "dims",
        Command::MinSections { .. } => "min-sections",
        Command::Index { .. } => "index",
        Command::ChowProduct { .. } => "chow-product",
        Command::LimitGraph { .. } => "limit-graph",
        Command::Genus { .. } => "genus",
        Command::Monodromy { .. } => "monodromy",
        Command::Stability { .. } => "stability",
        Command::Validate { .. } => "validate",
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(map) => {
            for (k, v) in map {
                flatten(&key(k), v, out);
            }
        }
        Value::Array(items) => {
            if items.is_empty() {
                out.push((prefix.to_string(), "[]".into()));
            }
            for (i, v) in items.iter().enumerate() {
                flatten(&key(&i.to_string()), v, out);
            }
        }
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

fn render_table(command: &str, inputs: &Value, result: &Value, warnings: &[String]) -> String {
    let mut rows = vec![("command".to_string(), command.to_string())];
    flatten("inputs", inputs, &mut rows);
    flatten("", result, &mut rows);
    let width = rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
    let mut out = String::new();
    for (k, v) in rows {
        let _ = writeln!(out, "{k:<width$}  {v}");
    }
    for w in warnings {
        let _ = writeln!(out, "warning: {w}");
    }
    out
}

/// Runs one invocation. `argv[0]` is the program name.
pub fn run<I, T>(argv: I) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => CliOutput { code: 0, stdout: text, stderr: String::new() },
                _ => CliOutput { code: 2, stdout: String::new(), stderr: text },
            };
        }
    };
    let format = if cli.format.dot {
        Format::Dot
    } else if cli.format.table {
        Format::Table
    } else {
        Format::Json
    };
    let name = command_name(&cli.command);
    let fail = |e: Error| CliOutput { code: e.exit_code(), stdout: String::new(), stderr: format!("error: {e}\n") };

    let report = match execute(&cli.command, cli.cap) {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    let stderr: String = report.warnings.iter().map(|w| format!("warning: {w}\n")).collect();
    let stdout = match format {
        Format::Dot => match report.dot {
            Some(dot) => dot,
            None => return fail(Error::Parameter(format!("--dot is only available for limit-graph, not {name}"))),
        },
        Format::Table => {
            let result = report.table.as_ref().unwrap_or(&report.result);
            render_table(name, &report.inputs, result, &report.warnings)
        }
        Format::Json => {
            let env = Envelope {
                schema_version: SCHEMA_VERSION,
                command: name,
                inputs: report.inputs,
                result: report.result,
                warnings: report.warnings,
            };
            match serde_json::to_string_pretty(&env) {
                Ok(s) => s + "\n",
                Err(e) => return fail(Error::Internal(e.to_string())),
            }
        }
    };
    CliOutput { code: 0, stdout, stderr }
}
