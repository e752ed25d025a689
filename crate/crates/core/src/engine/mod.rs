//! Classification on the verdict lattice with certified rule applications.

pub mod catalog;
pub mod rules;
mod verdict;

use std::collections::{BTreeMap, BTreeSet};

use serde_json::Map;
use thiserror::Error;

pub use catalog::{catalog, RuleInfo};
pub use verdict::{Nature, NatureClass, Natures, Nonzero, Verdict};

use crate::algebraic::DegreeCapConfig;
use crate::certificate::Certificate;
use crate::grammar::{self, render, Expr, GrammarError};
use crate::numeric::{DEFAULT_START_PRECISION, MAX_PRECISION};
use rules::{Ctx, Derivation, DisjDerivation, Facts};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum EngineError {
    /// Natures became empty; an unsound rule or an engine bug.
    #[error("contradiction: {0}")]
    Contradiction(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("not classified: {0}")]
    NotFound(String),
    #[error("hypothetical facts need a knowledge base in hypothetical mode")]
    NotHypothetical,
}

impl From<GrammarError> for EngineError {
    fn from(e: GrammarError) -> Self {
        EngineError::Domain(e.to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EngineConfig {
    pub caps: DegreeCapConfig,
    pub start_precision: u64,
    pub max_precision: u64,
    /// Allows [`KnowledgeBase::assume`].
    pub hypothetical: bool,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            caps: DegreeCapConfig::default(),
            start_precision: DEFAULT_START_PRECISION,
            max_precision: MAX_PRECISION,
            hypothetical: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fact {
    pub subject: Expr,
    pub verdict: Verdict,
    pub certificate: Certificate,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DisjunctiveFact {
    /// Sorted canonical members.
    pub members: Vec<Expr>,
    pub at_least: usize,
    pub class: NatureClass,
    pub certificate: Certificate,
}

impl DisjunctiveFact {
    pub fn phrase(&self) -> String {
        let members: Vec<String> = self.members.iter().map(render).collect();
        crate::certificate::disjunctive_phrase(&members, self.at_least, self.class)
    }
}

/// A verdict refinement made by propagation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Refinement {
    pub iteration: usize,
    pub subject: Expr,
    pub before: Natures,
    pub after: Natures,
}

#[derive(Debug, Default)]
pub struct KnowledgeBase {
    config: EngineConfig,
    facts: BTreeMap<Expr, Fact>,
    disjunctive: Vec<DisjunctiveFact>,
    in_progress: BTreeSet<Expr>,
    pending: Vec<Expr>,
    error: Option<EngineError>,
    refinements: Vec<Refinement>,
    last_iterations: usize,
}

impl Facts for KnowledgeBase {
    fn verdict_of(&mut self, e: &Expr) -> Option<Verdict> {
        match self.node(e) {
            Ok(v) => v,
            Err(err) => {
                self.error.get_or_insert(err);
                None
            }
        }
    }
}

impl KnowledgeBase {
    pub fn new() -> Self {
        KnowledgeBase::default()
    }

    pub fn with_config(config: EngineConfig) -> Self {
        KnowledgeBase { config, ..KnowledgeBase::default() }
    }

    pub fn config(&self) -> &EngineConfig {
        &self.config
    }

    pub fn fact(&self, e: &Expr) -> Option<&Fact> {
        self.facts.get(e)
    }

    pub fn facts(&self) -> impl Iterator<Item = &Fact> {
        self.facts.values()
    }

    pub fn disjunctive(&self) -> &[DisjunctiveFact] {
        &self.disjunctive
    }

    /// Disjunctive facts mentioning `e`.
    pub fn related(&self, e: &Expr) -> Vec<&DisjunctiveFact> {
        self.disjunctive.iter().filter(|d| d.members.contains(e)).collect()
    }

    pub fn refinements(&self) -> &[Refinement] {
        &self.refinements
    }

    /// Iterations used by the most recent propagation.
    pub fn last_iterations(&self) -> usize {
        self.last_iterations
    }

    /// Natures of every fact, for monotonicity checks.
    pub fn snapshot(&self) -> BTreeMap<Expr, Natures> {
        self.facts.iter().map(|(k, f)| (k.clone(), f.verdict.natures)).collect()
    }

    pub fn classify(&mut self, e: &Expr) -> Result<Fact, EngineError> {
        let e = grammar::canonicalize(e)?;
        self.node(&e)?;
        self.settle()?;
        Ok(self.facts[&e].clone())
    }

    /// Classifies every member, fires the rules that look across the set and
    /// propagates.
    pub fn classify_set(&mut self, es: &[Expr]) -> Result<(Vec<Fact>, Vec<DisjunctiveFact>), EngineError> {
        let es = es.iter().map(grammar::canonicalize).collect::<Result<Vec<_>, _>>()?;
        for e in &es {
            self.node(e)?;
        }
        let set: BTreeSet<&Expr> = es.iter().collect();
        for e in &es {
            let Expr::Ln(t) = e else { continue };
            let Some(members) = rules::triple(t) else { continue };
            if members.iter().all(|m| set.contains(m)) {
                let d = {
                    let mut ctx = self.ctx();
                    rules::one_of_three(t, &mut ctx)
                };
                self.check_error()?;
                if let Some(d) = d {
                    self.add_disjunctive(d)?;
                }
            }
        }
        self.settle()?;
        let facts = es.iter().map(|e| self.facts[e].clone()).collect();
        let related = self
            .disjunctive
            .iter()
            .filter(|d| d.members.iter().any(|m| set.contains(m)))
            .cloned()
            .collect();
        Ok((facts, related))
    }

    /// Injects a fact; only in hypothetical mode, and only for tests of
    /// propagation.
    pub fn assume(&mut self, e: &Expr, verdict: Verdict) -> Result<Fact, EngineError> {
        if !self.config.hypothetical {
            return Err(EngineError::NotHypothetical);
        }
        let e = grammar::canonicalize(e)?;
        let verdict = verdict.normalized();
        let cert = Certificate::single(&e, verdict.clone(), "HYP", Map::new(), Vec::new());
        match self.facts.get(&e).cloned() {
            Some(old) => self.refine(&e, &old, verdict, cert, 0)?,
            None => {
                self.facts.insert(e.clone(), Fact { subject: e.clone(), verdict, certificate: cert });
            }
        }
        self.settle()?;
        Ok(self.facts[&e].clone())
    }

    /// The certificate behind the current verdict of `e`. With no nature
    /// information, related disjunctive facts are attached instead.
    pub fn explain(&self, e: &Expr) -> Result<Certificate, EngineError> {
        let e = grammar::canonicalize(e)?;
        let f = self.facts.get(&e).ok_or_else(|| EngineError::NotFound(render(&e)))?;
        let related = self.related(&e);
        if f.verdict.natures == Natures::ALL && !related.is_empty() {
            let mut c = f.certificate.clone();
            if c.rule == "TOP" {
                c.premises = related.iter().map(|d| d.certificate.clone()).collect();
                return Ok(c);
            }
        }
        Ok(f.certificate.clone())
    }

    fn ctx(&mut self) -> Ctx<'_> {
        let c = self.config;
        Ctx::new(self, c.caps, c.start_precision, c.max_precision)
    }

    fn check_error(&mut self) -> Result<(), EngineError> {
        match self.error.take() {
            Some(e) => Err(e),
            None => Ok(()),
        }
    }

    fn settle(&mut self) -> Result<(), EngineError> {
        while let Some(m) = self.pending.pop() {
            self.node(&m)?;
        }
        self.propagate()
    }

    /// Classifies `e` and its subexpressions; None while `e` is being
    /// classified further up the stack.
    fn node(&mut self, e: &Expr) -> Result<Option<Verdict>, EngineError> {
        if let Some(f) = self.facts.get(e) {
            return Ok(Some(f.verdict.clone()));
        }
        if self.in_progress.contains(e) {
            return Ok(None);
        }
        self.in_progress.insert(e.clone());
        let out = self.node_inner(e);
        self.in_progress.remove(e);
        out.map(Some)
    }

    fn node_inner(&mut self, e: &Expr) -> Result<Verdict, EngineError> {
        for c in e.children() {
            self.node(c)?;
        }
        let (derivations, disjunctive, domain) = {
            let mut ctx = self.ctx();
            let d = rules::fire_all(e, &mut ctx);
            let j = rules::disjunctive_at(e, &mut ctx);
            (d, j, ctx.domain.take())
        };
        self.check_error()?;
        if let Some(m) = domain {
            return Err(EngineError::Domain(m));
        }
        let mut certs = Vec::new();
        let mut verdict = Verdict::top();
        for d in derivations {
            let Some(c) = self.derivation_certificate(e, &d)? else { continue };
            verdict = verdict.meet(&d.verdict).ok_or_else(|| {
                EngineError::Contradiction(format!("{} at {}", d.rule, render(e)))
            })?;
            certs.push(c);
        }
        let certificate = match certs.len() {
            0 => Certificate::single(e, Verdict::top(), "TOP", Map::new(), Vec::new()),
            1 => certs.pop().unwrap(),
            _ => Certificate::single(e, verdict.clone(), "MEET", Map::new(), certs),
        };
        self.facts.insert(e.clone(), Fact { subject: e.clone(), verdict: verdict.clone(), certificate });
        for d in disjunctive {
            self.add_disjunctive(d)?;
        }
        Ok(verdict)
    }

    fn premise_certificates(&mut self, premises: &[Expr]) -> Result<Option<Vec<Certificate>>, EngineError> {
        let mut out = Vec::with_capacity(premises.len());
        for p in premises {
            self.node(p)?;
            match self.facts.get(p) {
                Some(f) => out.push(f.certificate.clone()),
                None => return Ok(None),
            }
        }
        Ok(Some(out))
    }

    fn derivation_certificate(&mut self, e: &Expr, d: &Derivation) -> Result<Option<Certificate>, EngineError> {
        Ok(self
            .premise_certificates(&d.premises)?
            .map(|ps| Certificate::single(e, d.verdict.clone(), d.rule, d.evidence.clone(), ps)))
    }

    fn add_disjunctive(&mut self, d: DisjDerivation) -> Result<(), EngineError> {
        let dup = self
            .disjunctive
            .iter()
            .any(|x| x.members == d.members && x.at_least == d.at_least && x.class == d.class);
        if dup {
            return Ok(());
        }
        let Some(ps) = self.premise_certificates(&d.premises)? else { return Ok(()) };
        let certificate = Certificate::disjunctive(&d.members, d.at_least, d.class, d.rule, d.evidence, ps);
        self.pending.extend(d.members.iter().cloned());
        self.disjunctive.push(DisjunctiveFact { members: d.members, at_least: d.at_least, class: d.class, certificate });
        Ok(())
    }

    fn refine(&mut self, e: &Expr, old: &Fact, v: Verdict, cert: Certificate, iteration: usize) -> Result<(), EngineError> {
        let merged = old
            .verdict
            .meet(&v)
            .ok_or_else(|| EngineError::Contradiction(format!("{} at {}", cert.rule, render(e))))?;
        if merged == old.verdict {
            return Ok(());
        }
        self.refinements.push(Refinement {
            iteration,
            subject: e.clone(),
            before: old.verdict.natures,
            after: merged.natures,
        });
        let certificate = if old.certificate.rule == "TOP" {
            cert
        } else {
            Certificate::single(e, merged.clone(), "MEET", Map::new(), vec![old.certificate.clone(), cert])
        };
        self.facts.insert(e.clone(), Fact { subject: e.clone(), verdict: merged, certificate });
        Ok(())
    }

    /// Applies disjunctive facts until nothing changes.
    fn propagate(&mut self) -> Result<(), EngineError> {
        let mut iteration = 0;
        loop {
            iteration += 1;
            let mut changed = false;
            for i in 0..self.disjunctive.len() {
                let d = self.disjunctive[i].clone();
                let class = d.class.natures();
                let mut excluded = Vec::new();
                let mut remaining = Vec::new();
                for m in &d.members {
                    let f = &self.facts[m];
                    if f.verdict.natures.intersect(class).is_empty() {
                        excluded.push(f.certificate.clone());
                    } else {
                        remaining.push(m.clone());
                    }
                }
                if remaining.len() < d.at_least {
                    return Err(EngineError::Contradiction(format!("fewer than {} members left in {}", d.at_least, d.phrase())));
                }
                if remaining.len() > d.at_least {
                    continue;
                }
                for m in remaining {
                    let old = self.facts[&m].clone();
                    if old.verdict.natures.is_subset(class) {
                        continue;
                    }
                    let mut ps = vec![d.certificate.clone()];
                    ps.extend(excluded.iter().cloned());
                    let v = Verdict::with(class);
                    let cert = Certificate::single(&m, v.clone(), "DISJ-PROP", Map::new(), ps);
                    self.refine(&m, &old, v, cert, iteration)?;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        self.last_iterations = iteration;
        Ok(())
    }
}

/// Classifies a single expression in a fresh knowledge base.
pub fn classify(e: &Expr) -> Result<Fact, EngineError> {
    KnowledgeBase::new().classify(e)
}
