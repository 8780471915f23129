//! Command-line driver: module documents, report emission, corpus export,
//! golden assertions and enumeration.

pub mod compare;
pub mod document;
pub mod report;

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;

use tord_core::classify::{classify_with, stable_flags, stable_subspaces, ClassifyOptions};
use tord_core::corpus::{entry_names, lookup};
use tord_core::phimod::FilteredPhiNModule;

pub use document::{DocumentError, ModuleDocument};
pub use report::{render_text, report_json, to_canonical};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_PARTIAL: i32 = 3;
pub const EXIT_MISMATCH: i32 = 4;

pub const DEFAULT_MAX_DIM: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "tord", version, about = "Classify filtered (phi,N)-modules")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Refuse enumeration above this dimension.
    #[arg(long, default_value_t = DEFAULT_MAX_DIM, global = true)]
    pub max_dim: usize,
    /// Worker threads for enumeration (0: automatic).
    #[arg(long, default_value_t = 0, global = true)]
    pub threads: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify a module document.
    Classify { file: PathBuf },
    /// Write a corpus entry and its golden report.
    Corpus {
        name: String,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Compare the report of a module against a partial expected report.
    Assert { file: PathBuf, expected: PathBuf },
    /// List stable subspaces (default) or stable flags.
    Enumerate {
        file: PathBuf,
        #[arg(long, conflicts_with = "subspaces")]
        flags: bool,
        #[arg(long)]
        subspaces: bool,
    },
}

/// Result of one command: exit status and the two output streams.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn fail(code: i32, message: impl Into<String>) -> Self {
        let mut stderr = message.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        Outcome {
            code,
            stdout: String::new(),
            stderr,
        }
    }
}

fn load_module(path: &Path) -> Result<FilteredPhiNModule, Outcome> {
    let text = fs::read_to_string(path)
        .map_err(|e| Outcome::fail(EXIT_USAGE, format!("cannot read {}: {e}", path.display())))?;
    let doc =
        ModuleDocument::parse(&text).map_err(|e| Outcome::fail(EXIT_INVALID, format!("{}: {e}", path.display())))?;
    doc.to_module().map_err(|e| match e {
        DocumentError::Validation(v) => {
            let lines: Vec<String> = v.0.iter().map(|x| format!("  {x}")).collect();
            Outcome::fail(
                EXIT_INVALID,
                format!("{}: invalid module\n{}", path.display(), lines.join("\n")),
            )
        }
        other => Outcome::fail(EXIT_INVALID, format!("{}: {other}", path.display())),
    })
}

/// Classification report JSON for a module, and whether every field was decided.
pub fn classify_value(d: &FilteredPhiNModule, threads: usize, max_dim: usize) -> Result<(Value, bool), String> {
    let options = ClassifyOptions {
        threads,
        max_dim: Some(max_dim),
    };
    let r = classify_with(d, &options).map_err(|e| e.to_string())?;
    Ok((report_json(&r), r.is_complete()))
}

fn emit(v: &Value, format: Format) -> String {
    match format {
        Format::Json => to_canonical(v),
        Format::Text => render_text(v),
    }
}

pub fn run_classify(path: &Path, format: Format, threads: usize, max_dim: usize) -> Outcome {
    let d = match load_module(path) {
        Ok(d) => d,
        Err(o) => return o,
    };
    match classify_value(&d, threads, max_dim) {
        Ok((v, complete)) => Outcome {
            code: if complete { EXIT_OK } else { EXIT_PARTIAL },
            stdout: emit(&v, format),
            stderr: if complete {
                String::new()
            } else {
                "report is partial: some fields are unknown\n".into()
            },
        },
        Err(e) => Outcome::fail(EXIT_INVALID, e),
    }
}

/// File stem for a corpus entry name.
pub fn corpus_slug(name: &str) -> String {
    name.chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '-' { c } else { '_' })
        .collect()
}

pub fn run_corpus(name: &str, out: &Path) -> Outcome {
    let entry = match lookup(name) {
        None => {
            return Outcome::fail(
                EXIT_USAGE,
                format!(
                    "unknown corpus entry {name:?}; available:\n  {}\n(cyclotomic:n=N:hom|coh accepts any integer N)",
                    entry_names().join("\n  ")
                ),
            )
        }
        Some(Err(e)) => return Outcome::fail(EXIT_INVALID, e.to_string()),
        Some(Ok(e)) => e,
    };
    let slug = corpus_slug(name);
    let module_path = out.join(format!("{slug}.json"));
    let expected_path = out.join(format!("{slug}.expected.json"));
    let doc = ModuleDocument::from_module(&entry.module);
    let written = fs::create_dir_all(out)
        .and_then(|_| fs::write(&module_path, doc.to_json()))
        .and_then(|_| fs::write(&expected_path, &entry.expected));
    match written {
        Ok(()) => Outcome {
            code: EXIT_OK,
            stdout: format!("{}\n{}\n", module_path.display(), expected_path.display()),
            stderr: String::new(),
        },
        Err(e) => Outcome::fail(EXIT_USAGE, format!("cannot write corpus files: {e}")),
    }
}

pub fn run_assert(path: &Path, expected: &Path, threads: usize, max_dim: usize) -> Outcome {
    let d = match load_module(path) {
        Ok(d) => d,
        Err(o) => return o,
    };
    let text = match fs::read_to_string(expected) {
        Ok(t) => t,
        Err(e) => return Outcome::fail(EXIT_USAGE, format!("cannot read {}: {e}", expected.display())),
    };
    let want: Value = match serde_json::from_str(&text) {
        Ok(v) => v,
        Err(e) => return Outcome::fail(EXIT_INVALID, format!("{}: malformed JSON: {e}", expected.display())),
    };
    let (got, _) = match classify_value(&d, threads, max_dim) {
        Ok(v) => v,
        Err(e) => return Outcome::fail(EXIT_INVALID, e),
    };
    let diffs = compare::diff(&want, &got);
    if diffs.is_empty() {
        Outcome {
            code: EXIT_OK,
            stdout: "all expectations hold\n".into(),
            stderr: String::new(),
        }
    } else {
        Outcome {
            code: EXIT_MISMATCH,
            stdout: diffs.iter().map(|d| format!("{d}\n")).collect(),
            stderr: format!("{} expectation(s) failed\n", diffs.len()),
        }
    }
}

pub fn run_enumerate(path: &Path, flags: bool, format: Format, max_dim: usize) -> Outcome {
    let d = match load_module(path) {
        Ok(d) => d,
        Err(o) => return o,
    };
    if d.dim() > max_dim {
        return Outcome::fail(
            EXIT_PARTIAL,
            format!(
                "GUARD_EXCEEDED: dimension {} is above the enumeration limit {max_dim}",
                d.dim()
            ),
        );
    }
    let value = if flags {
        stable_flags(&d, None).map(|fs| {
            Value::Array(
                fs.iter()
                    .map(|f| Value::Array(f.chain().iter().map(report::basis_json).collect()))
                    .collect(),
            )
        })
    } else {
        stable_subspaces(&d).map(|ss| Value::Array(ss.iter().map(report::basis_json).collect()))
    };
    match value {
        Err(e) => Outcome::fail(EXIT_PARTIAL, e.to_string()),
        Ok(v) => {
            let stdout = match format {
                Format::Json => to_canonical(&v),
                Format::Text => enumerate_text(&v, flags),
            };
            Outcome {
                code: EXIT_OK,
                stdout,
                stderr: String::new(),
            }
        }
    }
}

fn enumerate_text(v: &Value, flags: bool) -> String {
    let items = v.as_array().cloned().unwrap_or_default();
    let basis = |b: &Value| -> String {
        let rows: Vec<String> = b
            .as_array()
            .map(|rs| {
                rs.iter()
                    .map(|r| {
                        let xs: Vec<String> = r
                            .as_array()
                            .map(|xs| xs.iter().map(|x| x.as_str().unwrap_or("?").to_string()).collect())
                            .unwrap_or_default();
                        format!("({})", xs.join(", "))
                    })
                    .collect()
            })
            .unwrap_or_default();
        if rows.is_empty() {
            "0".into()
        } else {
            format!("span{{{}}}", rows.join(", "))
        }
    };
    let mut out = String::new();
    for item in &items {
        if flags {
            let chain: Vec<String> = item
                .as_array()
                .map(|c| c.iter().map(basis).collect())
                .unwrap_or_default();
            out.push_str(&chain.join(" > "));
        } else {
            out.push_str(&basis(item));
        }
        out.push('\n');
    }
    out.push_str(&format!(
        "{} {}\n",
        items.len(),
        if flags { "flags" } else { "subspaces" }
    ));
    out
}

pub fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Classify { file } => run_classify(file, cli.format, cli.threads, cli.max_dim),
        Command::Corpus { name, out } => run_corpus(name, out),
        Command::Assert { file, expected } => run_assert(file, expected, cli.threads, cli.max_dim),
        Command::Enumerate { file, flags, .. } => run_enumerate(file, *flags, cli.format, cli.max_dim),
    }
}
