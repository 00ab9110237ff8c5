//! Command-line front end. Every command is a pure function from file
//! contents to `(output, negative)` so the test suite can drive it without
//! spawning processes; [`run`] adds argument parsing, file IO and the exit
//! code policy (0 success, 1 domain-negative under `--exit-code`, 2 errors).

mod treefile;

pub use treefile::{
    parse_comb_file, parse_map_file, parse_metric_file, parse_tree_file,
    parse_tree_file_lenient, serialize_cochain, serialize_weighted,
};

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::completion::{boundary_dual_graph, is_minimal_completion, ml_via_boundary};
use crate::labelled::{decide_equivalence, factor_morphism, glue_morphisms, LabelledTree};
use crate::surface::{descriptor, emit_broom_equations, emit_comb_equations, ml_trivial};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("syntax error at line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("validation error: {0}")]
    Validation(String),
    #[error("{0}")]
    Domain(String),
    #[error("io error: {0}")]
    Io(String),
}

#[derive(Parser, Debug)]
#[command(name = "dfsurf", about = "Affine surfaces glued from labelled rooted trees")]
pub struct Cli {
    /// Exit with status 1 on negative answers (invalid, not equivalent, ...)
    #[arg(long, global = true)]
    pub exit_code: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the compatibility condition and report every violation
    Validate { file: PathBuf },
    /// Print the essential subtree together with the split-off data (c, m)
    Essentialize { file: PathBuf },
    /// Decide equivalence of two trees and print a witness
    Equiv {
        target: PathBuf,
        source: PathBuf,
        /// Restrict the relabelling to constant b
        #[arg(long)]
        strict_constant_b: bool,
    },
    /// Decide ML-triviality by the comb test and the boundary chain test
    Ml { file: PathBuf },
    /// Emit the equation system of a comb from a root-spec file
    Comb {
        spec: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Emit the defining equation of a broom as JSON
    Equations {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Print the chart/transition data of the surface
    Gluing { file: PathBuf },
    /// Print the boundary dual graph of the canonical completion
    Boundary {
        file: PathBuf,
        /// Also write the graph in DOT format to this file
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Factor the morphism given by a leaf map into blow-downs + embedding
    Factor {
        source: PathBuf,
        target: PathBuf,
        map: PathBuf,
    },
    /// Build a tree from ultrametric data and print it in cochain format
    FromMetric { file: PathBuf },
}

/// Checks the compatibility condition; negative when violations exist.
pub fn cmd_validate(tree_text: &str) -> Result<(String, bool), CliError> {
    let g = parse_tree_file_lenient(tree_text)?;
    let violations = g.validate();
    if violations.is_empty() {
        Ok(("valid\n".to_string(), false))
    } else {
        let mut out = String::new();
        for v in &violations {
            writeln!(out, "violation: {}", v).unwrap();
        }
        Ok((out, true))
    }
}

pub fn cmd_essentialize(tree_text: &str) -> Result<(String, bool), CliError> {
    let g = parse_tree_file(tree_text)?;
    let (es, c, m) = g.essentialize();
    let mut out = String::new();
    writeln!(out, "m = {}", m).unwrap();
    writeln!(out, "c = {}", c).unwrap();
    out.push_str(&serialize_cochain(&es));
    Ok((out, false))
}

/// Witness printout or "not equivalent" (negative).
pub fn cmd_equiv(
    target_text: &str,
    source_text: &str,
    strict_constant_b: bool,
) -> Result<(String, bool), CliError> {
    let target = parse_tree_file(target_text)?;
    let source = parse_tree_file(source_text)?;
    match decide_equivalence(&target, &source, strict_constant_b) {
        Some(w) => {
            let mut out = String::new();
            writeln!(out, "a={}, b={}, leaf map:", w.a, w.b).unwrap();
            for (from, to) in &w.leaf_map {
                writeln!(out, "  {} -> {}", from, to).unwrap();
            }
            Ok((out, false))
        }
        None => Ok(("not equivalent\n".to_string(), true)),
    }
}

/// ML-triviality by both routes; they agree on every valid tree.
pub fn cmd_ml(tree_text: &str) -> Result<(String, bool), CliError> {
    let g = parse_tree_file(tree_text)?;
    let comb = ml_trivial(&g);
    let chain = ml_via_boundary(&g);
    let out = format!(
        "ML-trivial: {} (comb test), {} (boundary chain test)\n",
        comb, chain
    );
    Ok((out, !comb))
}

pub fn cmd_comb(spec_text: &str, json: bool) -> Result<(String, bool), CliError> {
    let spec = parse_comb_file(spec_text)?;
    let (system, tree) =
        emit_comb_equations(&spec).map_err(|e| CliError::Domain(e.to_string()))?;
    if json {
        let doc = serde_json::json!({
            "system": system.to_json(),
            "tree": serialize_cochain(&tree),
        });
        Ok((format!("{}\n", serde_json::to_string_pretty(&doc).unwrap()), false))
    } else {
        let mut out = String::new();
        writeln!(out, "{}", serde_json::to_string_pretty(&system.to_json()).unwrap()).unwrap();
        out.push_str(&serialize_cochain(&tree));
        Ok((out, false))
    }
}

pub fn cmd_equations(tree_text: &str, _json: bool) -> Result<(String, bool), CliError> {
    let g = parse_tree_file(tree_text)?;
    let eq = emit_broom_equations(&g).map_err(|e| CliError::Domain(e.to_string()))?;
    let mut doc = eq.system.to_json();
    let obj = doc.as_object_mut().unwrap();
    obj.insert(
        "canonical_morphism".to_string(),
        serde_json::Value::String(eq.canonical_morphism.to_string()),
    );
    obj.insert("m".to_string(), serde_json::json!(eq.m));
    obj.insert("r".to_string(), serde_json::json!(eq.r));
    Ok((format!("{}\n", serde_json::to_string_pretty(&doc).unwrap()), false))
}

/// Transition matrix of the glued surface as Laurent text.
pub fn cmd_gluing(tree_text: &str) -> Result<(String, bool), CliError> {
    let g = parse_tree_file(tree_text)?;
    let d = descriptor(&g);
    let mut out = String::new();
    writeln!(out, "leaves: {}", d.leaves.join(" ")).unwrap();
    writeln!(out, "h = {}", d.h).unwrap();
    writeln!(
        out,
        "m = {}",
        d.m.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
    )
    .unwrap();
    writeln!(
        out,
        "mu = {}",
        d.mu.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
    )
    .unwrap();
    for i in 0..d.n {
        for j in 0..d.n {
            if i != j {
                writeln!(
                    out,
                    "g({}, {}) = {}",
                    d.leaves[i], d.leaves[j], d.transition[i][j]
                )
                .unwrap();
            }
        }
    }
    Ok((out, false))
}

/// Boundary listing plus the DOT text (written to a file by [`run`]).
pub fn cmd_boundary(tree_text: &str) -> Result<(String, String, bool), CliError> {
    let g = parse_tree_file(tree_text)?;
    let cfg = boundary_dual_graph(&g);
    let mut out = String::new();
    for c in cfg.curves() {
        writeln!(out, "curve {} s={}", c.name, c.self_intersection).unwrap();
    }
    let (_, edges) = cfg.snapshot();
    for (a, b) in &edges {
        writeln!(out, "edge {} -- {}", a, b).unwrap();
    }
    writeln!(out, "chain: {}", cfg.is_chain()).unwrap();
    writeln!(out, "minimal: {}", is_minimal_completion(&cfg)).unwrap();
    Ok((out, cfg.to_dot(), false))
}

pub fn cmd_factor(
    source_text: &str,
    target_text: &str,
    map_text: &str,
) -> Result<(String, bool), CliError> {
    let source = parse_tree_file(source_text)?;
    let target = parse_tree_file(target_text)?;
    let leaf_map = parse_map_file(map_text)?;
    let phi = glue_morphisms(&source, &target, &leaf_map)
        .map_err(|e| CliError::Domain(e.to_string()))?;
    let (blow_downs, embedding) =
        factor_morphism(&phi).map_err(|e| CliError::Domain(e.to_string()))?;
    let mut out = String::new();
    writeln!(out, "blow-downs: {}", blow_downs.len()).unwrap();
    for (i, (node, _)) in blow_downs.iter().enumerate() {
        writeln!(out, "blow-down {} at {}", i + 1, node).unwrap();
    }
    writeln!(out, "embedding:").unwrap();
    for (from, to) in embedding.node_map() {
        writeln!(out, "  {} -> {}", from, to).unwrap();
    }
    Ok((out, false))
}

pub fn cmd_from_metric(metric_text: &str) -> Result<(String, bool), CliError> {
    let u = parse_metric_file(metric_text)?;
    let g: LabelledTree = crate::labelled::build_from_ultrametric(&u)
        .map_err(|e| CliError::Validation(e.to_string()))?;
    Ok((serialize_cochain(&g), false))
}

fn read(path: &PathBuf) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {}", path.display(), e)))
}

/// Runs a parsed command line; returns (stdout, stderr, exit code).
pub fn run(cli: &Cli) -> (String, String, i32) {
    let result: Result<(String, bool), CliError> = match &cli.command {
        Command::Validate { file } => read(file).and_then(|t| cmd_validate(&t)),
        Command::Essentialize { file } => read(file).and_then(|t| cmd_essentialize(&t)),
        Command::Equiv {
            target,
            source,
            strict_constant_b,
        } => read(target).and_then(|t| {
            read(source).and_then(|s| cmd_equiv(&t, &s, *strict_constant_b))
        }),
        Command::Ml { file } => read(file).and_then(|t| cmd_ml(&t)),
        Command::Comb { spec, json } => read(spec).and_then(|t| cmd_comb(&t, *json)),
        Command::Equations { file, json } => {
            read(file).and_then(|t| cmd_equations(&t, *json))
        }
        Command::Gluing { file } => read(file).and_then(|t| cmd_gluing(&t)),
        Command::Boundary { file, dot } => read(file).and_then(|t| {
            let (out, dot_text, negative) = cmd_boundary(&t)?;
            if let Some(dot_path) = dot {
                std::fs::write(dot_path, dot_text).map_err(|e| {
                    CliError::Io(format!("{}: {}", dot_path.display(), e))
                })?;
            }
            Ok((out, negative))
        }),
        Command::Factor {
            source,
            target,
            map,
        } => read(source).and_then(|s| {
            read(target)
                .and_then(|t| read(map).and_then(|m| cmd_factor(&s, &t, &m)))
        }),
        Command::FromMetric { file } => read(file).and_then(|t| cmd_from_metric(&t)),
    };
    match result {
        Ok((out, negative)) => {
            let code = if negative && cli.exit_code { 1 } else { 0 };
            (out, String::new(), code)
        }
        Err(e) => (String::new(), format!("{}\n", e), 2),
    }
}
