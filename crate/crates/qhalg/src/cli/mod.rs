//! File format, command dispatch and JSON reports.

mod commands;
mod format;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::algebra::{build_algebra_capped, AlgebraPresentation, GradedAlgebra, DEFAULT_DEGREE_CAP};
use crate::corpus;
use crate::error::{Error, Result};
use crate::exactla::Field;

pub use format::{parse_presentation, presentation_json, write_presentation};

/// Version of the JSON report layout.
pub const SCHEMA: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PairingArg {
    HomExt1,
    Bar,
    Tau,
    Higher,
    Graded,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ObjectArg {
    Std,
    Costd,
    Simple,
    Tilt,
}

#[derive(Clone, Debug, Subcommand)]
pub enum Command {
    /// Dimensions and grading.
    Info { input: PathBuf },
    /// Quasi-hereditary verification and the classification flags.
    Check { input: PathBuf },
    /// Hom and Ext dimensions per shift between Δ, ∇, L and T.
    Tables {
        input: PathBuf,
        /// Highest Ext degree tabulated.
        #[arg(long, default_value_t = 1)]
        max_ext: usize,
    },
    /// Pairing matrices and ranks.
    Pairings {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "hom-ext1")]
        kind: PairingArg,
        /// Ext degree for the higher pairings.
        #[arg(short = 'l', long = "level", visible_alias = "l", default_value_t = 1)]
        level: usize,
        #[arg(short = 'i')]
        i: Option<String>,
        #[arg(short = 'j')]
        j: Option<String>,
    },
    /// Tilting modules and tilting (co)resolutions.
    Tilting { input: PathBuf },
    /// The Ringel dual.
    Ringel { input: PathBuf },
    /// Koszulity and the Koszul dual.
    Koszul { input: PathBuf },
    /// Linear complexes of tilting modules.
    Lincat {
        input: PathBuf,
        #[arg(long, value_enum)]
        object: Option<ObjectArg>,
        #[arg(short = 'i')]
        i: Option<String>,
    },
    /// Ringel and Koszul duality compared.
    Commute { input: PathBuf },
    /// Random search for SCT algebras that are not balanced.
    Mine {
        #[arg(long, default_value_t = 50)]
        count: usize,
        #[arg(long, default_value_t = 4)]
        max_vertices: usize,
        #[arg(long, default_value_t = 12)]
        max_dim: usize,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Info { .. } => "info",
            Command::Check { .. } => "check",
            Command::Tables { .. } => "tables",
            Command::Pairings { .. } => "pairings",
            Command::Tilting { .. } => "tilting",
            Command::Ringel { .. } => "ringel",
            Command::Koszul { .. } => "koszul",
            Command::Lincat { .. } => "lincat",
            Command::Commute { .. } => "commute",
            Command::Mine { .. } => "mine",
        }
    }

    fn input(&self) -> Option<&Path> {
        match self {
            Command::Info { input }
            | Command::Check { input }
            | Command::Tables { input, .. }
            | Command::Pairings { input, .. }
            | Command::Tilting { input }
            | Command::Ringel { input }
            | Command::Koszul { input }
            | Command::Lincat { input, .. }
            | Command::Commute { input } => Some(input),
            Command::Mine { .. } => None,
        }
    }
}

#[derive(Clone, Debug, Parser)]
#[command(name = "qhalg", version, about = "Exact computations for graded quasi-hereditary algebras")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Field override: `Q` or `Fp:<prime>`.
    #[arg(long, global = true)]
    pub field: Option<String>,
    /// Largest degree explored when building the algebra.
    #[arg(long, global = true, default_value_t = DEFAULT_DEGREE_CAP)]
    pub degree_cap: usize,
    /// Seed for randomized steps; `mine` starts scanning here.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write the report here instead of stdout.
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: OutputFormat,
}

fn parse_field(s: &str) -> Result<Field> {
    let t = s.trim();
    if t == "Q" {
        return Ok(Field::Q);
    }
    let p = t
        .strip_prefix("Fp:")
        .or_else(|| t.strip_prefix("Fp"))
        .or_else(|| t.strip_prefix('F'))
        .and_then(|q| q.trim().parse::<u64>().ok())
        .ok_or_else(|| Error::FieldUnsupported(format!("unrecognized field {s}")))?;
    if !crate::exactla::is_prime(p) {
        return Err(Error::FieldUnsupported(format!("{p} is not prime")));
    }
    Ok(Field::Fp(p))
}

/// Re-reads every coefficient in another field.
fn change_field(p: &AlgebraPresentation, f: Field) -> Result<AlgebraPresentation> {
    let mut q = p.clone();
    q.field = f;
    for r in &mut q.relations {
        for t in r.iter_mut() {
            t.coeff = f
                .parse(&t.coeff.to_string())
                .ok_or_else(|| Error::FieldUnsupported(format!("coefficient {} has no image in {}", t.coeff, f.name())))?;
        }
    }
    Ok(q)
}

/// Reads a presentation. A missing file whose stem names a bundled algebra
/// falls back to the bundled copy.
pub fn load_presentation(path: &Path) -> Result<AlgebraPresentation> {
    match std::fs::read_to_string(path) {
        Ok(text) => parse_presentation(&text),
        Err(e) => {
            let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("");
            match corpus::source(stem) {
                Some(text) if !path.exists() => parse_presentation(text),
                _ => Err(Error::Io(format!("{}: {e}", path.display()))),
            }
        }
    }
}

fn load_algebra(cfg: &RunConfig, path: &Path) -> Result<Arc<GradedAlgebra>> {
    let mut p = load_presentation(path)?;
    if let Some(f) = &cfg.field {
        p = change_field(&p, parse_field(f)?)?;
    }
    build_algebra_capped(&p, cfg.degree_cap)
}

/// The report for one run, without the envelope.
pub fn run_command(cfg: &RunConfig) -> Result<Value> {
    let alg = match cfg.command.input() {
        Some(p) => Some(load_algebra(cfg, p)?),
        None => None,
    };
    let a = || alg.clone().expect("command has an input");
    match &cfg.command {
        Command::Info { .. } => commands::info(&a()),
        Command::Check { .. } => commands::check(&a()),
        Command::Tables { max_ext, .. } => commands::tables(&a(), *max_ext),
        Command::Pairings { kind, level, i, j, .. } => commands::pairings(&a(), *kind, *level, i.as_deref(), j.as_deref()),
        Command::Tilting { .. } => commands::tilting(&a()),
        Command::Ringel { .. } => commands::ringel(&a(), cfg.seed),
        Command::Koszul { .. } => commands::koszul(&a(), cfg.seed),
        Command::Lincat { object, i, .. } => commands::lincat(&a(), *object, i.as_deref()),
        Command::Commute { .. } => commands::commute(&a()),
        Command::Mine { count, max_vertices, max_dim } => commands::mine(cfg.seed, *count, *max_vertices, *max_dim),
    }
}

/// Full report with envelope, and the process exit code.
pub fn report(cfg: &RunConfig) -> (Value, i32) {
    let mut env = json!({ "schema": SCHEMA, "command": cfg.command.name() });
    if let Some(p) = cfg.command.input() {
        env["input"] = json!(p.display().to_string());
    }
    match run_command(cfg) {
        Ok(v) => {
            env["result"] = v;
            (env, 0)
        }
        Err(e) => {
            env["error"] = json!({ "code": e.code(), "message": e.to_string() });
            (env, e.exit_code())
        }
    }
}

/// Indented `key: value` rendering.
pub fn render_text(v: &Value) -> String {
    fn go(v: &Value, indent: usize, out: &mut String) {
        let pad = "  ".repeat(indent);
        match v {
            Value::Object(m) => {
                for (k, x) in m {
                    if x.is_object() || (x.is_array() && x.as_array().is_some_and(|a| a.iter().any(|y| y.is_object()))) {
                        out.push_str(&format!("{pad}{k}:\n"));
                        go(x, indent + 1, out);
                    } else {
                        out.push_str(&format!("{pad}{k}: {}\n", compact(x)));
                    }
                }
            }
            Value::Array(a) => {
                for x in a {
                    out.push_str(&format!("{pad}-\n"));
                    go(x, indent + 1, out);
                }
            }
            x => out.push_str(&format!("{pad}{}\n", compact(x))),
        }
    }
    fn compact(v: &Value) -> String {
        match v {
            Value::String(s) => s.clone(),
            x => x.to_string(),
        }
    }
    let mut out = String::new();
    go(v, 0, &mut out);
    out
}

fn emit(cfg: &RunConfig, v: &Value) -> std::io::Result<()> {
    let body = match cfg.format {
        OutputFormat::Json => format!("{}\n", serde_json::to_string_pretty(v).expect("JSON values serialize")),
        OutputFormat::Text => render_text(v),
    };
    match &cfg.output {
        None => std::io::stdout().write_all(body.as_bytes()),
        Some(path) => {
            // Write beside the target, then rename over it.
            let tmp = path.with_extension("partial");
            std::fs::write(&tmp, body)?;
            std::fs::rename(&tmp, path)
        }
    }
}

/// Entry point for the binary; returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 3 } else { 0 };
        }
    };
    let (v, code) = report(&cfg);
    if let Some(err) = v.get("error") {
        eprintln!("qhalg: {}", err["message"].as_str().unwrap_or(""));
    }
    if let Err(e) = emit(&cfg, &v) {
        eprintln!("qhalg: cannot write output: {e}");
        return 3;
    }
    code
}

#[cfg(test)]
mod tests;
