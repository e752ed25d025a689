//! Python bindings: `import arithmos` after copying the built library to `arithmos.so`.

use arithmos::certificate::{self, render_certificate, Certificate, Format, Validity};
use arithmos::engine::{self, catalog, EngineConfig, EngineError, Fact};
use arithmos::grammar::{self, render, Expr, GrammarError};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

pyo3::create_exception!(arithmos, ParseError, PyValueError, "Malformed expression text.");
pyo3::create_exception!(arithmos, DomainError, PyValueError, "Expression is undefined (pole, ln(0), 0^0, ...).");
pyo3::create_exception!(arithmos, ContradictionError, PyValueError, "Rules derived an empty set of natures.");

fn grammar_err(e: GrammarError) -> PyErr {
    match e {
        GrammarError::Domain(_) => DomainError::new_err(e.to_string()),
        other => ParseError::new_err(other.to_string()),
    }
}

fn engine_err(e: EngineError) -> PyErr {
    match e {
        EngineError::Contradiction(_) => ContradictionError::new_err(e.to_string()),
        EngineError::Domain(_) => DomainError::new_err(e.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn parse(text: &str) -> PyResult<Expr> {
    grammar::parse(text).map_err(grammar_err)
}

/// Classification of one constant.
#[pyclass(name = "Verdict", module = "arithmos", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyVerdict {
    inner: engine::Verdict,
    subject: String,
}

#[pymethods]
impl PyVerdict {
    /// Canonical rendering of the classified expression.
    #[getter]
    fn subject(&self) -> &str {
        &self.subject
    }

    /// Possible natures, a subset of `["RAT", "ALGIRR", "TRANS"]`.
    #[getter]
    fn natures(&self) -> Vec<&'static str> {
        self.inner.natures.tags()
    }

    #[getter]
    fn nonzero(&self) -> &'static str {
        self.inner.nonzero.tag()
    }

    /// Exact value as `"p/q"` when the verdict is rational.
    #[getter]
    fn value(&self) -> Option<String> {
        self.inner.value.as_ref().map(|q| q.to_string())
    }

    #[getter]
    fn label(&self) -> String {
        self.inner.label()
    }

    fn is_transcendental(&self) -> bool {
        self.inner.is_trans()
    }

    fn __repr__(&self) -> String {
        format!("Verdict({:?}, {})", self.subject, self.inner.label())
    }
}

impl PyVerdict {
    fn from_fact(f: &Fact) -> Self {
        PyVerdict { inner: f.verdict.clone(), subject: render(&f.subject) }
    }
}

/// A derivation tree that can be rendered and independently replayed.
#[pyclass(name = "Certificate", module = "arithmos", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyCertificate {
    inner: Certificate,
}

#[pymethods]
impl PyCertificate {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Certificate::parse_json(text)
            .map(|inner| PyCertificate { inner })
            .map_err(|e| PyValueError::new_err(e.to_string()))
    }

    #[getter]
    fn rule(&self) -> &str {
        &self.inner.rule
    }

    #[getter]
    fn anchor(&self) -> &str {
        &self.inner.anchor
    }

    /// Rule ids, premises before conclusions.
    fn chain(&self) -> Vec<String> {
        self.inner.chain()
    }

    fn json(&self) -> String {
        render_certificate(&self.inner, Format::Json)
    }

    fn text(&self) -> String {
        render_certificate(&self.inner, Format::Text)
    }

    /// `(True, None)` or `(False, reason)`.
    fn replay(&self) -> (bool, Option<String>) {
        replay_result(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!("Certificate(rule={:?}, nodes={})", self.inner.rule, self.inner.size())
    }
}

pub fn replay_result(c: &Certificate) -> (bool, Option<String>) {
    match certificate::replay(c) {
        Validity::Valid => (true, None),
        Validity::Invalid(r) => (false, Some(r)),
    }
}

/// A shared fact store; classifying several expressions in one base lets
/// cross-expression facts fire.
#[pyclass(name = "KnowledgeBase", module = "arithmos")]
pub struct PyKnowledgeBase {
    inner: engine::KnowledgeBase,
}

#[pymethods]
impl PyKnowledgeBase {
    #[new]
    #[pyo3(signature = (precision = 64, max_degree = 24))]
    fn new(precision: u64, max_degree: usize) -> PyResult<Self> {
        let cfg = config(precision, max_degree)?;
        Ok(PyKnowledgeBase { inner: engine::KnowledgeBase::with_config(cfg) })
    }

    fn classify(&mut self, text: &str) -> PyResult<PyVerdict> {
        let e = parse(text)?;
        self.inner.classify(&e).map(|f| PyVerdict::from_fact(&f)).map_err(engine_err)
    }

    /// Classifies every expression, then returns the final verdicts and the
    /// disjunctive facts as `(members, at_least, class)` tuples.
    fn classify_set(&mut self, texts: Vec<String>) -> PyResult<(Vec<PyVerdict>, Vec<(Vec<String>, usize, String)>)> {
        let es = texts.iter().map(|t| parse(t)).collect::<PyResult<Vec<_>>>()?;
        let (facts, disj) = self.inner.classify_set(&es).map_err(engine_err)?;
        let facts = facts.iter().map(PyVerdict::from_fact).collect();
        let disj = disj
            .iter()
            .map(|d| (d.members.iter().map(render).collect(), d.at_least, d.class.tag().to_string()))
            .collect();
        Ok((facts, disj))
    }

    /// Disjunctive facts mentioning the expression, as readable phrases.
    fn related(&self, text: &str) -> PyResult<Vec<String>> {
        let e = parse(text)?;
        Ok(self.inner.related(&e).iter().map(|d| d.phrase()).collect())
    }

    fn explain(&self, text: &str) -> PyResult<PyCertificate> {
        let e = parse(text)?;
        self.inner.explain(&e).map(|inner| PyCertificate { inner }).map_err(engine_err)
    }

    fn __len__(&self) -> usize {
        self.inner.facts().count()
    }
}

fn config(precision: u64, max_degree: usize) -> PyResult<EngineConfig> {
    let mut cfg = EngineConfig::default();
    if precision == 0 || precision > cfg.max_precision {
        return Err(PyValueError::new_err(format!("precision must be in 1..={}", cfg.max_precision)));
    }
    if max_degree < 2 {
        return Err(PyValueError::new_err("max_degree must be at least 2"));
    }
    cfg.start_precision = precision;
    cfg.caps.max_degree = max_degree;
    Ok(cfg)
}

/// Classifies one expression in a fresh knowledge base.
#[pyfunction]
fn classify(text: &str) -> PyResult<PyVerdict> {
    let e = parse(text)?;
    engine::classify(&e).map(|f| PyVerdict::from_fact(&f)).map_err(engine_err)
}

#[pyfunction]
fn explain(text: &str) -> PyResult<PyCertificate> {
    let e = parse(text)?;
    let mut kb = engine::KnowledgeBase::new();
    kb.classify(&e).map_err(engine_err)?;
    kb.explain(&e).map(|inner| PyCertificate { inner }).map_err(engine_err)
}

/// Replays a certificate given as JSON text.
#[pyfunction]
fn replay(json: &str) -> PyResult<(bool, Option<String>)> {
    let c = Certificate::parse_json(json).map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(replay_result(&c))
}

/// Canonical rendering of an expression.
#[pyfunction]
fn canonical(text: &str) -> PyResult<String> {
    parse(text).map(|e| render(&e))
}

/// The rule catalog as `(id, name, guard, anchor)` tuples.
#[pyfunction]
fn rules() -> Vec<(String, String, String, String)> {
    catalog::catalog()
        .iter()
        .map(|r| (r.id.to_string(), r.name.to_string(), r.guard.to_string(), r.anchor()))
        .collect()
}

#[pymodule]
#[pyo3(name = "arithmos")]
pub fn arithmos_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyVerdict>()?;
    m.add_class::<PyCertificate>()?;
    m.add_class::<PyKnowledgeBase>()?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(explain, m)?)?;
    m.add_function(wrap_pyfunction!(replay, m)?)?;
    m.add_function(wrap_pyfunction!(canonical, m)?)?;
    m.add_function(wrap_pyfunction!(rules, m)?)?;
    let py = m.py();
    m.add("ParseError", py.get_type::<ParseError>())?;
    m.add("DomainError", py.get_type::<DomainError>())?;
    m.add("ContradictionError", py.get_type::<ContradictionError>())?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
