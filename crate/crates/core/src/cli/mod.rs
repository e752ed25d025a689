//! `arithmos classify | batch | rules`.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::algebraic::DegreeCapConfig;
use crate::certificate::{render_certificate, verdict_json, Format};
use crate::engine::{catalog, DisjunctiveFact, EngineConfig, EngineError, Fact, KnowledgeBase};
use crate::grammar::{parse, render, render_compact, Expr, GrammarError};
use crate::numeric::MAX_PRECISION;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_CONTRADICTION: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "arithmos", version, about = "Classify closed-form constants as rational, algebraic or transcendental")]
struct Args {
    /// Emit JSON (one object per line in batch mode).
    #[arg(long, global = true)]
    json: bool,
    /// Print the certificate behind each verdict.
    #[arg(long, global = true)]
    explain: bool,
    /// Starting precision in bits for nonvanishing checks.
    #[arg(long, global = true, default_value_t = 64,
          value_parser = clap::value_parser!(u64).range(1..=MAX_PRECISION as u64))]
    precision: u64,
    /// Degree cap for exact algebraic arithmetic.
    #[arg(long = "max-degree", global = true, default_value_t = 24,
          value_parser = clap::value_parser!(u64).range(2..=4096))]
    max_degree: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify one expression.
    Classify { expr: String },
    /// Classify a file of expressions, one per line, sharing one knowledge base.
    Batch { path: PathBuf },
    /// Print the rule catalog.
    Rules,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CliConfig {
    pub precision_bits: u64,
    pub max_degree: usize,
    pub json: bool,
    pub explain: bool,
}

impl CliConfig {
    fn engine(&self) -> EngineConfig {
        EngineConfig {
            caps: DegreeCapConfig { max_degree: self.max_degree, ..DegreeCapConfig::default() },
            start_precision: self.precision_bits,
            max_precision: MAX_PRECISION,
            hypothetical: false,
        }
    }
}

pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

/// Runs the CLI against the given streams and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(args) {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return code;
        }
    };
    let cfg = CliConfig {
        precision_bits: args.precision,
        max_degree: args.max_degree as usize,
        json: args.json,
        explain: args.explain,
    };
    let res = match &args.command {
        Command::Classify { expr } => cmd_classify(expr, &cfg, out, err),
        Command::Batch { path } => cmd_batch(path, &cfg, out, err),
        Command::Rules => cmd_rules(&cfg, out),
    };
    match res {
        Ok(code) => code,
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "arithmos: {e}");
            EXIT_PARSE
        }
    }
}

#[derive(Debug)]
enum Failure {
    Parse(String),
    Domain(String),
    Contradiction(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Parse(_) => EXIT_PARSE,
            Failure::Domain(_) => EXIT_DOMAIN,
            Failure::Contradiction(_) => EXIT_CONTRADICTION,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            Failure::Parse(_) => "parse",
            Failure::Domain(_) => "domain",
            Failure::Contradiction(_) => "contradiction",
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Parse(m) | Failure::Domain(m) | Failure::Contradiction(m) => m,
        }
    }
}

fn parse_input(text: &str) -> Result<Expr, Failure> {
    parse(text).map_err(|e| match e {
        GrammarError::Domain(_) => Failure::Domain(e.to_string()),
        other => Failure::Parse(other.to_string()),
    })
}

fn engine_failure(e: EngineError) -> Failure {
    match e {
        EngineError::Contradiction(_) => Failure::Contradiction(e.to_string()),
        other => Failure::Domain(other.to_string()),
    }
}

fn related_text(d: &DisjunctiveFact) -> String {
    let members: Vec<String> = d.members.iter().map(render_compact).collect();
    format!("at least {} of {{{}}} {}", d.at_least, members.join(", "), d.class.word())
}

fn disjunctive_json(d: &DisjunctiveFact) -> Value {
    json!({
        "members": d.members.iter().map(render).collect::<Vec<_>>(),
        "at_least": d.at_least,
        "class": d.class.tag(),
        "rule": d.certificate.rule,
    })
}

/// Disjunctive facts worth reporting next to a verdict; a decided value needs none.
fn related<'a>(kb: &'a KnowledgeBase, f: &Fact) -> Vec<&'a DisjunctiveFact> {
    if f.verdict.natures.len() == 1 {
        return Vec::new();
    }
    kb.related(&f.subject)
}

fn summary_line(kb: &KnowledgeBase, f: &Fact) -> String {
    let mut s = f.verdict.label();
    for d in related(kb, f) {
        s.push_str(&format!("; related fact: {}", related_text(d)));
    }
    s
}

fn fact_json(kb: &KnowledgeBase, f: &Fact, input: &str, cfg: &CliConfig) -> Value {
    let mut v = json!({
        "input": input,
        "subject": render(&f.subject),
        "verdict": verdict_json(&f.verdict),
        "label": f.verdict.label(),
        "related": related(kb, f).into_iter().map(disjunctive_json).collect::<Vec<_>>(),
    });
    if cfg.explain {
        if let Ok(c) = kb.explain(&f.subject) {
            v["certificate"] = c.to_json();
        }
    }
    v
}

pub fn cmd_classify(text: &str, cfg: &CliConfig, out: &mut dyn Write, err: &mut dyn Write) -> std::io::Result<i32> {
    let mut kb = KnowledgeBase::with_config(cfg.engine());
    let result = parse_input(text).and_then(|e| kb.classify(&e).map_err(engine_failure));
    let f = match result {
        Ok(f) => f,
        Err(fail) => {
            writeln!(err, "arithmos: {}", fail.message())?;
            if cfg.json {
                writeln!(out, "{}", json!({"input": text, "error": fail.message(), "kind": fail.kind()}))?;
            }
            return Ok(fail.code());
        }
    };
    if cfg.json {
        writeln!(out, "{}", fact_json(&kb, &f, text, cfg))?;
    } else {
        writeln!(out, "{}", summary_line(&kb, &f))?;
        if cfg.explain {
            if let Ok(c) = kb.explain(&f.subject) {
                writeln!(out, "{}", render_certificate(&c, Format::Text))?;
            }
        }
    }
    Ok(EXIT_OK)
}

pub fn cmd_batch(path: &std::path::Path, cfg: &CliConfig, out: &mut dyn Write, err: &mut dyn Write) -> std::io::Result<i32> {
    let content = match std::fs::read_to_string(path) {
        Ok(c) => c,
        Err(e) => {
            writeln!(err, "arithmos: cannot read {}: {e}", path.display())?;
            return Ok(EXIT_PARSE);
        }
    };
    let mut kb = KnowledgeBase::with_config(cfg.engine());
    let mut rows: Vec<(usize, String, Result<Expr, Failure>)> = Vec::new();
    for (i, line) in content.lines().enumerate() {
        let text = line.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        let res = parse_input(text).and_then(|e| kb.classify(&e).map(|f| f.subject).map_err(engine_failure));
        rows.push((i + 1, text.to_string(), res));
    }
    let exprs: Vec<Expr> = rows.iter().filter_map(|(_, _, r)| r.as_ref().ok().cloned()).collect();
    if let Err(e) = kb.classify_set(&exprs) {
        writeln!(err, "arithmos: {e}")?;
    }
    for (line, text, res) in &rows {
        match res {
            Ok(e) => {
                let f = kb.fact(e).expect("classified").clone();
                if cfg.json {
                    let mut v = fact_json(&kb, &f, text, cfg);
                    v["line"] = json!(line);
                    writeln!(out, "{v}")?;
                } else {
                    writeln!(out, "{line}: {text} => {}", f.verdict.label())?;
                    if cfg.explain {
                        if let Ok(c) = kb.explain(e) {
                            writeln!(out, "{}", render_certificate(&c, Format::Text))?;
                        }
                    }
                }
            }
            Err(fail) => {
                writeln!(err, "arithmos: line {line}: {}", fail.message())?;
                if cfg.json {
                    writeln!(out, "{}", json!({"line": line, "input": text, "error": fail.message(), "kind": fail.kind()}))?;
                } else {
                    writeln!(out, "{line}: {text} => error ({}): {}", fail.kind(), fail.message())?;
                }
            }
        }
    }
    for d in kb.disjunctive() {
        if cfg.json {
            writeln!(out, "{}", json!({"disjunctive": disjunctive_json(d)}))?;
        } else {
            writeln!(out, "fact: {} [{}]", related_text(d), d.certificate.rule)?;
        }
    }
    Ok(EXIT_OK)
}

pub fn cmd_rules(cfg: &CliConfig, out: &mut dyn Write) -> std::io::Result<i32> {
    for r in catalog() {
        if cfg.json {
            writeln!(out, "{}", json!({"id": r.id, "name": r.name, "guard": r.guard, "anchor": r.anchor()}))?;
        } else {
            writeln!(out, "{} — {}\n    {}", r.id, r.anchor(), r.guard)?;
        }
    }
    Ok(EXIT_OK)
}
