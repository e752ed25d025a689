//! Rule catalog: identifiers, guard summaries and anchors.

use std::sync::OnceLock;

/// The checked-in anchor table, one `id<TAB>label<TAB>quote` row per rule.
pub const ANCHOR_TABLE: &str = include_str!("anchors.tsv");

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleInfo {
    pub id: &'static str,
    pub name: &'static str,
    pub guard: &'static str,
    pub label: &'static str,
    pub quote: &'static str,
}

impl RuleInfo {
    /// Label and quote joined by a dash; the string recorded in certificates.
    pub fn anchor(&self) -> String {
        format!("{} — {}", self.label, self.quote)
    }
}

const RULES: &[(&str, &str, &str)] = &[
    ("CL1", "rational literal", "rational literal ⇒ {RAT}"),
    ("CL2", "algebraic value", "e evaluates to an exact algebraic number ⇒ {RAT} or {ALGIRR}"),
    ("CL3", "closure", "t {TRANS}, α ALG: t+α, α·t (α ≠ 0), t^r (r rational ≠ 0) ⇒ {TRANS}"),
    ("CL4", "field closure", "all operands algebraic under +, ·, rational powers ⇒ {RAT, ALGIRR}"),
    ("B1", "Hermite", "e ⇒ {TRANS}"),
    ("B2", "Lindemann", "π ⇒ {TRANS}"),
    ("B3", "imaginary unit", "i ⇒ {ALGIRR}"),
    ("R-HL-EXP", "Hermite–Lindemann", "exp(u), u ALG ≠ 0 ⇒ {TRANS}"),
    ("R-HL-LN", "Hermite–Lindemann", "ln(u), u ALG ≠ 0, 1 ⇒ {TRANS}"),
    ("R-LW-SUM", "Lindemann–Weierstrass", "Σ βₖ·exp(αₖ), distinct nonzero ALG αₖ, ALG βₖ not all zero ⇒ {TRANS}"),
    ("R-LW-TRIG", "Lindemann–Weierstrass", "sin, cos, sinh, cosh of ALG u ≠ 0 ⇒ {TRANS}"),
    ("R-GS", "Gelfond–Schneider", "u^v, u ALG ≠ 0, 1, v ALG irrational ⇒ {TRANS}"),
    ("R-LOGRATIO", "logarithm ratio", "ln(u)/ln(v), u, v ALG nonzero, v ≠ 1 ⇒ {RAT, TRANS}; decided for positive rationals"),
    ("R-ARCTAN", "Niven", "arctan(x)/π, x rational ∉ {0, ±1} ⇒ {TRANS}"),
    ("R-ARCTRIG", "arc dichotomy", "arctrig(x)/π, x real ALG ⇒ {RAT, TRANS}; exact when z/|z| is a root of unity"),
    ("R-TRIGPI", "rational multiples of π", "trig(α·π), α rational ⇒ ALG; α ALG irrational ⇒ {TRANS}"),
    ("R-BAKER-LIN", "Baker", "Σ βₖ·ln(αₖ), ALG βₖ, ALG αₖ ≠ 0, 1 ⇒ {RAT, TRANS}, rational only if zero"),
    ("R-BAKER-PROD", "Baker", "exp(β₀)·Π αₖ^βₖ, all parameters ALG nonzero ⇒ {TRANS}"),
    ("R-BAKER-PROD2", "Baker", "Π αₖ^βₖ, αₖ ALG ≠ 0, 1, with 1, β₁, …, βₙ independent over ℚ ⇒ {TRANS}"),
    ("R-BAKER-EXP", "Baker", "exp(α + β·π), α, β ALG, α ≠ 0 or i·β irrational ⇒ {TRANS}"),
    ("R-ALNB-PI", "Baker", "(α + ln β)/π, α, β ALG nonzero ⇒ {TRANS}"),
    ("R-SUMPROD", "sum or product", "u, v {TRANS} ⇒ at least 1 of {u+v, u·v} is TRANS"),
    ("R-QUAD", "non-quadratic", "u {TRANS} or ALG of degree > 2 ⇒ at least 1 of {u+v, u·v} is irrational"),
    ("R-1OF3", "one of three", "t {TRANS}, t ≠ exp(-1) ⇒ at least 2 of {t+e, t·e, ln t} are TRANS"),
    ("R-INVT", "inverse sum", "t {TRANS}, α, β ALG not both zero ⇒ α·t + β/t and t·(α − t) are {TRANS}"),
    ("R-COSH", "hyperbolic of a logarithm", "cosh or sinh of r·ln(t), r rational ≠ 0, t {TRANS} ⇒ {TRANS}"),
    ("R-TANH", "hyperbolic of a logarithm", "tanh(r·ln(t)), r rational ≠ 0, t {TRANS} ⇒ {TRANS}"),
    ("R-COS-LN", "circular of a logarithm", "cos, sin, sec, csc of β·ln(α), α ALG ≠ 0, 1, i·β irrational ⇒ {TRANS}"),
    ("R-TAN-LN", "circular of a logarithm", "tan, cot of β·ln(α), same guards ⇒ {TRANS}"),
    ("R-LNPI", "Nesterenko", "q·ln(π) + ln(r) − p·√n·π, integers p, q ≥ 0 not both zero ⇒ nonzero"),
    ("R-LNPI-LI", "Nesterenko", "a·ln(π) + b·√n·π, rationals a, b not both zero ⇒ nonzero"),
    ("R-NZ-UPGRADE", "nonvanishing", "rational-only-if-zero verdict and a ball excluding zero ⇒ {TRANS}"),
    ("MEET", "intersection", "several conclusions about one value ⇒ their intersection"),
    ("DISJ-PROP", "disjunctive propagation", "k of S in class N, |S| − m = k members left ⇒ each is in N"),
    ("HYP", "hypothesis", "injected in hypothetical mode; never replays"),
    ("TOP", "no rule applies", "⇒ {RAT, ALGIRR, TRANS}"),
];

fn table_row(id: &str) -> (&'static str, &'static str) {
    for line in ANCHOR_TABLE.lines() {
        if line.starts_with('#') || line.trim().is_empty() {
            continue;
        }
        let mut cols = line.split('\t');
        if cols.next() == Some(id) {
            let label = cols.next().expect("label column");
            let quote = cols.next().expect("quote column");
            return (label, quote);
        }
    }
    panic!("rule {id} missing from the anchor table")
}

pub fn catalog() -> &'static [RuleInfo] {
    static CATALOG: OnceLock<Vec<RuleInfo>> = OnceLock::new();
    CATALOG.get_or_init(|| {
        RULES
            .iter()
            .map(|&(id, name, guard)| {
                let (label, quote) = table_row(id);
                RuleInfo { id, name, guard, label, quote }
            })
            .collect()
    })
}

pub fn rule(id: &str) -> Option<&'static RuleInfo> {
    catalog().iter().find(|r| r.id == id)
}

/// Ids of the rules that conclude disjunctive facts.
pub const DISJUNCTIVE_RULES: [&str; 3] = ["R-SUMPROD", "R-QUAD", "R-1OF3"];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_table_row_is_registered() {
        let rows = ANCHOR_TABLE.lines().filter(|l| !l.starts_with('#') && !l.is_empty()).count();
        assert_eq!(rows, catalog().len());
    }
}
