//! Derivation trees: construction, JSON and text rendering, replay.

use std::collections::HashMap;

use num_rational::BigRational;
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::algebraic::DegreeCapConfig;
use crate::engine::catalog::{self, DISJUNCTIVE_RULES};
use crate::engine::rules::{self, Ctx, Facts};
use crate::engine::{NatureClass, Natures, Nonzero, Verdict};
use crate::grammar::{parse, render, render_compact, Expr};
use crate::numeric::{DEFAULT_START_PRECISION, MAX_PRECISION};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Conclusion {
    Single { subject: String, verdict: Verdict },
    Disjunctive { members: Vec<String>, at_least: usize, class: NatureClass },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub conclusion: Conclusion,
    pub rule: String,
    pub anchor: String,
    pub evidence: Map<String, Value>,
    pub premises: Vec<Certificate>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Validity {
    Valid,
    Invalid(String),
}

impl Validity {
    pub fn is_valid(&self) -> bool {
        matches!(self, Validity::Valid)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("malformed certificate: {0}")]
pub struct CertificateParseError(pub String);

fn anchor_of(rule: &str) -> String {
    catalog::rule(rule).map(|r| r.anchor()).unwrap_or_default()
}

impl Certificate {
    pub fn single(subject: &Expr, verdict: Verdict, rule: &str, evidence: Map<String, Value>, premises: Vec<Certificate>) -> Self {
        Certificate {
            conclusion: Conclusion::Single { subject: render(subject), verdict },
            rule: rule.to_string(),
            anchor: anchor_of(rule),
            evidence,
            premises,
        }
    }

    pub fn disjunctive(
        members: &[Expr],
        at_least: usize,
        class: NatureClass,
        rule: &str,
        evidence: Map<String, Value>,
        premises: Vec<Certificate>,
    ) -> Self {
        Certificate {
            conclusion: Conclusion::Disjunctive { members: members.iter().map(render).collect(), at_least, class },
            rule: rule.to_string(),
            anchor: anchor_of(rule),
            evidence,
            premises,
        }
    }

    pub fn subject(&self) -> Option<&str> {
        match &self.conclusion {
            Conclusion::Single { subject, .. } => Some(subject),
            Conclusion::Disjunctive { .. } => None,
        }
    }

    pub fn verdict(&self) -> Option<&Verdict> {
        match &self.conclusion {
            Conclusion::Single { verdict, .. } => Some(verdict),
            Conclusion::Disjunctive { .. } => None,
        }
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(Certificate::size).sum::<usize>()
    }

    /// Rule ids in post-order, premises before conclusions.
    pub fn chain(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.walk(&mut |c| out.push(c.rule.clone()));
        out
    }

    /// Visits every node, premises first.
    pub fn walk(&self, f: &mut impl FnMut(&Certificate)) {
        for p in &self.premises {
            p.walk(f);
        }
        f(self);
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        match &self.conclusion {
            Conclusion::Single { subject, verdict } => {
                m.insert("subject".into(), json!(subject));
                m.insert("verdict".into(), verdict_json(verdict));
            }
            Conclusion::Disjunctive { members, at_least, class } => {
                m.insert("members".into(), json!(members));
                m.insert("at_least".into(), json!(at_least));
                m.insert("class".into(), json!(class.tag()));
            }
        }
        m.insert("rule".into(), json!(self.rule));
        m.insert("anchor".into(), json!(self.anchor));
        m.insert("evidence".into(), Value::Object(self.evidence.clone()));
        m.insert("premises".into(), Value::Array(self.premises.iter().map(Certificate::to_json).collect()));
        Value::Object(m)
    }

    pub fn from_json(v: &Value) -> Result<Certificate, CertificateParseError> {
        let err = |m: &str| CertificateParseError(m.to_string());
        let o = v.as_object().ok_or_else(|| err("expected an object"))?;
        let text = |k: &str| o.get(k).and_then(Value::as_str).ok_or_else(|| err(&format!("missing \"{k}\"")));
        let conclusion = if let Some(s) = o.get("subject") {
            let subject = s.as_str().ok_or_else(|| err("subject must be a string"))?.to_string();
            let verdict = verdict_from_json(o.get("verdict").ok_or_else(|| err("missing \"verdict\""))?)?;
            Conclusion::Single { subject, verdict }
        } else {
            let members = o
                .get("members")
                .and_then(Value::as_array)
                .ok_or_else(|| err("missing \"members\""))?
                .iter()
                .map(|m| m.as_str().map(str::to_string).ok_or_else(|| err("members must be strings")))
                .collect::<Result<Vec<_>, _>>()?;
            let at_least = o.get("at_least").and_then(Value::as_u64).ok_or_else(|| err("missing \"at_least\""))?;
            let class = NatureClass::from_tag(text("class")?).ok_or_else(|| err("unknown class"))?;
            Conclusion::Disjunctive { members, at_least: at_least as usize, class }
        };
        let evidence = o
            .get("evidence")
            .and_then(Value::as_object)
            .cloned()
            .ok_or_else(|| err("missing \"evidence\""))?;
        let premises = o
            .get("premises")
            .and_then(Value::as_array)
            .ok_or_else(|| err("missing \"premises\""))?
            .iter()
            .map(Certificate::from_json)
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Certificate { conclusion, rule: text("rule")?.to_string(), anchor: text("anchor")?.to_string(), evidence, premises })
    }

    pub fn parse_json(s: &str) -> Result<Certificate, CertificateParseError> {
        let v: Value = serde_json::from_str(s).map_err(|e| CertificateParseError(e.to_string()))?;
        Certificate::from_json(&v)
    }
}

pub fn verdict_json(v: &Verdict) -> Value {
    let mut m = Map::new();
    m.insert("natures".into(), json!(v.natures.tags()));
    m.insert("nonzero".into(), json!(v.nonzero.tag()));
    if let Some(q) = &v.value {
        m.insert("value".into(), json!(q.to_string()));
    }
    Value::Object(m)
}

pub fn verdict_from_json(v: &Value) -> Result<Verdict, CertificateParseError> {
    let err = |m: &str| CertificateParseError(m.to_string());
    let natures = v
        .get("natures")
        .and_then(Value::as_array)
        .ok_or_else(|| err("verdict without natures"))?
        .iter()
        .map(|n| n.as_str().and_then(crate::engine::Nature::from_tag).ok_or_else(|| err("unknown nature")))
        .collect::<Result<Vec<_>, _>>()?;
    let nonzero = v
        .get("nonzero")
        .and_then(Value::as_str)
        .and_then(Nonzero::from_tag)
        .ok_or_else(|| err("verdict without nonzero"))?;
    let value = match v.get("value") {
        None => None,
        Some(x) => Some(
            x.as_str()
                .and_then(|s| s.parse::<BigRational>().ok())
                .ok_or_else(|| err("value must be a rational string"))?,
        ),
    };
    let natures = Natures::of(&natures);
    if natures.is_empty() {
        return Err(err("empty natures"));
    }
    Ok(Verdict { natures, nonzero, value })
}

/// Renders a certificate; JSON keys are sorted, so output is stable.
pub fn render_certificate(c: &Certificate, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(&c.to_json()).expect("JSON values serialize"),
        Format::Text => {
            let mut out = String::new();
            text_lines(c, 0, &mut out);
            out.pop();
            out
        }
    }
}

fn members_text(members: &[String]) -> String {
    let shown: Vec<String> = members
        .iter()
        .map(|m| parse(m).map(|e| render_compact(&e)).unwrap_or_else(|_| m.clone()))
        .collect();
    format!("{{{}}}", shown.join(", "))
}

/// One-line statement of a disjunctive conclusion.
pub fn disjunctive_phrase(members: &[String], at_least: usize, class: NatureClass) -> String {
    format!("at least {at_least} of {} {}", members_text(members), class.word())
}

fn text_lines(c: &Certificate, depth: usize, out: &mut String) {
    for p in &c.premises {
        text_lines(p, depth + 1, out);
    }
    let name = catalog::rule(&c.rule).map(|r| r.name).unwrap_or("unknown rule");
    let (what, phrase) = match &c.conclusion {
        Conclusion::Single { subject, verdict } => (subject.clone(), verdict.phrase()),
        Conclusion::Disjunctive { members, at_least, class } => {
            (members_text(members), disjunctive_phrase(members, *at_least, *class))
        }
    };
    out.push_str(&format!("{}{what}  [{}]  {} ({name}): {phrase}\n", "  ".repeat(depth), c.anchor, c.rule));
}

// ---- replay ----

#[derive(Clone, Copy, Debug)]
pub struct ReplayConfig {
    pub caps: DegreeCapConfig,
    pub start_precision: u64,
    pub max_precision: u64,
}

impl Default for ReplayConfig {
    fn default() -> Self {
        ReplayConfig { caps: DegreeCapConfig::default(), start_precision: DEFAULT_START_PRECISION, max_precision: MAX_PRECISION }
    }
}

struct Recorded {
    verdicts: HashMap<String, Verdict>,
}

impl Facts for Recorded {
    fn verdict_of(&mut self, e: &Expr) -> Option<Verdict> {
        self.verdicts.get(&render(e)).cloned()
    }
}

pub fn replay(c: &Certificate) -> Validity {
    replay_with(c, &ReplayConfig::default())
}

pub fn replay_with(c: &Certificate, cfg: &ReplayConfig) -> Validity {
    match check(c, cfg) {
        Ok(()) => Validity::Valid,
        Err(reason) => Validity::Invalid(reason),
    }
}

fn check(c: &Certificate, cfg: &ReplayConfig) -> Result<(), String> {
    let rule = &c.rule;
    let info = catalog::rule(rule).ok_or_else(|| format!("unknown rule {rule}"))?;
    if c.anchor != info.anchor() {
        return Err(format!("anchor mismatch at {rule}"));
    }
    for p in &c.premises {
        if let Err(inner) = check(p, cfg) {
            return Err(if inner.starts_with("premise mismatch") { inner } else { format!("premise mismatch at {rule}") });
        }
    }
    let mut recorded = Recorded { verdicts: HashMap::new() };
    for p in &c.premises {
        if let Conclusion::Single { subject, verdict } = &p.conclusion {
            recorded.verdicts.insert(subject.clone(), verdict.clone());
        }
    }
    let conclusion_mismatch = || format!("conclusion mismatch at {rule}");
    match rule.as_str() {
        "HYP" => Err("hypothetical assumption at HYP".into()),
        "TOP" => {
            let v = c.verdict().ok_or_else(conclusion_mismatch)?;
            let subject = c.subject().ok_or_else(conclusion_mismatch)?;
            if *v != Verdict::top() || !c.evidence.is_empty() || !is_canonical(subject) {
                return Err(conclusion_mismatch());
            }
            // only related disjunctive facts may ride along
            for p in &c.premises {
                match &p.conclusion {
                    Conclusion::Disjunctive { members, .. } if members.iter().any(|m| m == subject) => {}
                    _ => return Err(format!("premise mismatch at {rule}")),
                }
            }
            Ok(())
        }
        "MEET" => {
            let subject = c.subject().ok_or_else(conclusion_mismatch)?;
            let mut acc = Verdict::top();
            for p in &c.premises {
                if p.subject() != Some(subject) {
                    return Err(format!("premise mismatch at {rule}"));
                }
                acc = acc.meet(p.verdict().expect("single premise")).ok_or_else(conclusion_mismatch)?;
            }
            if c.premises.len() < 2 || !c.evidence.is_empty() {
                return Err(conclusion_mismatch());
            }
            (c.verdict() == Some(&acc)).then_some(()).ok_or_else(conclusion_mismatch)
        }
        "DISJ-PROP" => check_propagation(c),
        r if DISJUNCTIVE_RULES.contains(&r) => check_disjunctive(c, cfg, recorded),
        _ => check_node(c, cfg, recorded),
    }
}

fn ctx_for<'a>(recorded: &'a mut Recorded, c: &Certificate, cfg: &ReplayConfig) -> Ctx<'a> {
    let mut ctx = Ctx::new(recorded, cfg.caps, cfg.start_precision, cfg.max_precision);
    ctx.recorded_precision = c.evidence.get("precision").and_then(Value::as_u64);
    ctx
}

fn check_node(c: &Certificate, cfg: &ReplayConfig, mut recorded: Recorded) -> Result<(), String> {
    let rule = &c.rule;
    let (subject, verdict) = match &c.conclusion {
        Conclusion::Single { subject, verdict } => (subject, verdict),
        Conclusion::Disjunctive { .. } => return Err(format!("conclusion mismatch at {rule}")),
    };
    let e = parse(subject).map_err(|_| format!("unparsable subject at {rule}"))?;
    let mut ctx = ctx_for(&mut recorded, c, cfg);
    let d = rules::fire(rule, &e, &mut ctx).ok_or_else(|| format!("rule does not fire at {rule}"))?;
    if d.verdict != *verdict {
        return Err(format!("conclusion mismatch at {rule}"));
    }
    if d.evidence != c.evidence {
        return Err(format!("evidence mismatch at {rule}"));
    }
    Ok(())
}

fn check_disjunctive(c: &Certificate, cfg: &ReplayConfig, mut recorded: Recorded) -> Result<(), String> {
    let rule = c.rule.as_str();
    let Conclusion::Disjunctive { members, at_least, class } = &c.conclusion else {
        return Err(format!("conclusion mismatch at {rule}"));
    };
    let operand = |k: &str| {
        c.evidence
            .get(k)
            .and_then(Value::as_str)
            .and_then(|s| parse(s).ok())
            .ok_or_else(|| format!("evidence mismatch at {rule}"))
    };
    let mut ctx = ctx_for(&mut recorded, c, cfg);
    let d = match rule {
        "R-SUMPROD" => rules::sumprod(&operand("u")?, &operand("v")?, &mut ctx),
        "R-QUAD" => rules::quad(&operand("u")?, &operand("v")?, &mut ctx),
        _ => rules::one_of_three(&operand("t")?, &mut ctx),
    }
    .ok_or_else(|| format!("rule does not fire at {rule}"))?;
    let got: Vec<String> = d.members.iter().map(render).collect();
    if got != *members || d.at_least != *at_least || d.class != *class {
        return Err(format!("conclusion mismatch at {rule}"));
    }
    if d.evidence != c.evidence {
        return Err(format!("evidence mismatch at {rule}"));
    }
    Ok(())
}

fn is_canonical(subject: &str) -> bool {
    parse(subject).map_or(false, |e| render(&e) == subject)
}

fn check_propagation(c: &Certificate) -> Result<(), String> {
    let mismatch = || "conclusion mismatch at DISJ-PROP".to_string();
    let (subject, verdict) = match &c.conclusion {
        Conclusion::Single { subject, verdict } => (subject, verdict),
        _ => return Err(mismatch()),
    };
    let (fact, others) = c.premises.split_first().ok_or_else(mismatch)?;
    let Conclusion::Disjunctive { members, at_least, class } = &fact.conclusion else {
        return Err("premise mismatch at DISJ-PROP".into());
    };
    if !members.contains(subject) {
        return Err(mismatch());
    }
    let mut excluded = std::collections::BTreeSet::new();
    for o in others {
        let (s, v) = match &o.conclusion {
            Conclusion::Single { subject, verdict } => (subject, verdict),
            _ => return Err("premise mismatch at DISJ-PROP".into()),
        };
        let fresh = excluded.insert(s);
        if !fresh || s == subject || !members.contains(s) || !v.natures.intersect(class.natures()).is_empty() {
            return Err("premise mismatch at DISJ-PROP".into());
        }
    }
    if members.len() - excluded.len() != *at_least || !c.evidence.is_empty() {
        return Err(mismatch());
    }
    (*verdict == Verdict::with(class.natures())).then_some(()).ok_or_else(mismatch)
}
