//! Inference rules as pure functions of an expression and a fact source.
//!
//! A rule looks at the shape of one canonical node, asks the fact source for
//! verdicts of the subexpressions it needs and decides its guards exactly
//! through the algebraic module. Every subexpression consulted is recorded
//! as a premise, so the same function re-fires during certificate replay
//! against verdicts read back from the premise certificates.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Map, Value};

use super::verdict::{NatureClass, Natures, Verdict};
use crate::algebraic::{
    log_coordinates, multiplicative_dependence, q_linear_independent_with_one,
    try_eval_algebraic_with, AlgebraicError, AlgebraicNumber, DegreeCapConfig, Independence,
    ZPoly,
};
use crate::grammar::{self, render, Constant, Expr, HypFn, TrigFn};
use crate::numeric::{certify_nonzero_from, nonzero_at, NonzeroOutcome};

/// Where rules get verdicts of subexpressions from.
pub trait Facts {
    fn verdict_of(&mut self, e: &Expr) -> Option<Verdict>;
}

pub struct Ctx<'a> {
    facts: &'a mut dyn Facts,
    pub cfg: DegreeCapConfig,
    pub start_precision: u64,
    pub max_precision: u64,
    /// Set during replay: nonvanishing is re-checked at exactly this precision.
    pub recorded_precision: Option<u64>,
    used: Vec<Expr>,
    pub domain: Option<String>,
}

impl<'a> Ctx<'a> {
    pub fn new(facts: &'a mut dyn Facts, cfg: DegreeCapConfig, start_precision: u64, max_precision: u64) -> Self {
        Ctx {
            facts,
            cfg,
            start_precision,
            max_precision,
            recorded_precision: None,
            used: Vec::new(),
            domain: None,
        }
    }

    fn record(&mut self, e: &Expr) {
        if !self.used.contains(e) {
            self.used.push(e.clone());
        }
    }

    fn take_used(&mut self) -> Vec<Expr> {
        std::mem::take(&mut self.used)
    }

    pub fn verdict(&mut self, e: &Expr) -> Option<Verdict> {
        self.record(e);
        self.facts.verdict_of(e)
    }

    fn is_trans(&mut self, e: &Expr) -> bool {
        self.verdict(e).is_some_and(|v| v.is_trans())
    }

    /// Exact value of `e` without recording it as a premise.
    fn alg_raw(&mut self, e: &Expr) -> Option<AlgebraicNumber> {
        match try_eval_algebraic_with(e, &self.cfg) {
            Ok(a) => a,
            Err(AlgebraicError::DivisionByZero) => {
                self.domain.get_or_insert_with(|| format!("division by zero in {}", render(e)));
                None
            }
            Err(AlgebraicError::Domain(m)) => {
                self.domain.get_or_insert(m);
                None
            }
            Err(_) => None,
        }
    }

    /// Exact value of a subexpression, recorded as a premise.
    pub fn alg(&mut self, e: &Expr) -> Option<AlgebraicNumber> {
        let a = self.alg_raw(e)?;
        self.record(e);
        Some(a)
    }

    fn certify(&self, e: &Expr) -> Option<u64> {
        match self.recorded_precision {
            Some(p) => nonzero_at(e, p).then_some(p),
            None => match certify_nonzero_from(e, self.start_precision, self.max_precision) {
                NonzeroOutcome::Nonzero { precision } => Some(precision),
                NonzeroOutcome::Inconclusive => None,
            },
        }
    }
}

/// One rule conclusion about a single expression.
#[derive(Clone, Debug)]
pub struct Derivation {
    pub rule: &'static str,
    pub verdict: Verdict,
    pub evidence: Map<String, Value>,
    pub premises: Vec<Expr>,
}

/// One rule conclusion about a set of expressions.
#[derive(Clone, Debug)]
pub struct DisjDerivation {
    pub rule: &'static str,
    pub members: Vec<Expr>,
    pub at_least: usize,
    pub class: NatureClass,
    pub evidence: Map<String, Value>,
    pub premises: Vec<Expr>,
}

type Out = Option<(Verdict, Value)>;
type RuleFn = fn(&Expr, &mut Ctx) -> Out;

const NODE_RULES: &[(&str, RuleFn)] = &[
    ("CL1", cl1),
    ("CL2", cl2),
    ("B1", b1),
    ("B2", b2),
    ("B3", b3),
    ("CL3", cl3),
    ("CL4", cl4),
    ("R-HL-EXP", hl_exp),
    ("R-HL-LN", hl_ln),
    ("R-LW-SUM", lw_sum),
    ("R-LW-TRIG", lw_trig),
    ("R-GS", gelfond_schneider),
    ("R-LOGRATIO", log_ratio),
    ("R-ARCTAN", arctan_pi),
    ("R-ARCTRIG", arctrig_pi),
    ("R-TRIGPI", trig_pi),
    ("R-BAKER-LIN", baker_lin),
    ("R-NZ-UPGRADE", nz_upgrade),
    ("R-BAKER-PROD", baker_prod),
    ("R-BAKER-PROD2", baker_prod2),
    ("R-BAKER-EXP", baker_exp),
    ("R-ALNB-PI", alnb_pi),
    ("R-INVT", inv_t),
    ("R-COSH", cosh_ln),
    ("R-TANH", tanh_ln),
    ("R-COS-LN", cos_ln),
    ("R-TAN-LN", tan_ln),
    ("R-LNPI", lnpi),
    ("R-LNPI-LI", lnpi_li),
];

/// Ids of the rules that conclude about a single node.
pub fn node_rule_ids() -> impl Iterator<Item = &'static str> {
    NODE_RULES.iter().map(|(id, _)| *id)
}

fn obj(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m,
        _ => Map::new(),
    }
}

fn run(id: &'static str, f: RuleFn, e: &Expr, ctx: &mut Ctx) -> Option<Derivation> {
    ctx.used.clear();
    let out = f(e, ctx);
    let premises = ctx.take_used();
    let (verdict, ev) = out?;
    Some(Derivation { rule: id, verdict: verdict.normalized(), evidence: obj(ev), premises })
}

/// Every node rule that fires at `e`.
pub fn fire_all(e: &Expr, ctx: &mut Ctx) -> Vec<Derivation> {
    NODE_RULES.iter().filter_map(|&(id, f)| run(id, f, e, ctx)).collect()
}

/// Re-fires one node rule by id.
pub fn fire(id: &str, e: &Expr, ctx: &mut Ctx) -> Option<Derivation> {
    let &(id, f) = NODE_RULES.iter().find(|(k, _)| *k == id)?;
    run(id, f, e, ctx)
}

// ---- evidence helpers ----

fn int_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => json!(v),
        None => json!(n.to_string()),
    }
}

pub fn poly_json(f: &ZPoly) -> Value {
    Value::Array(f.iter().map(int_json).collect())
}

fn q_text(q: &BigRational) -> String {
    q.to_string()
}

fn alg_json(a: &AlgebraicNumber) -> Value {
    match a.as_rational() {
        Some(q) => json!(q_text(&q)),
        None => json!({"minpoly": poly_json(a.minpoly()), "root": a.root_index()}),
    }
}

// ---- shape helpers ----

fn as_exp(e: &Expr) -> Option<&Expr> {
    match e {
        Expr::Exp(a) => Some(a),
        Expr::Pow(b, x) if b.is_const(Constant::E) => Some(x),
        _ => None,
    }
}

fn is_inv_pi(e: &Expr) -> bool {
    matches!(e, Expr::Pow(b, x) if b.is_const(Constant::Pi) && x.is_rational_value(-1))
}

/// For `x/π` as a two-factor product, returns `x`.
fn over_pi(e: &Expr) -> Option<&Expr> {
    match e {
        Expr::Mul(fs) if fs.len() == 2 => {
            if is_inv_pi(&fs[0]) {
                Some(&fs[1])
            } else if is_inv_pi(&fs[1]) {
                Some(&fs[0])
            } else {
                None
            }
        }
        _ => None,
    }
}

/// Splits the factors of `e` into the one matching `pick` and the product of
/// the rest.
fn split_factor<'e, T>(e: &'e Expr, pick: impl Fn(&'e Expr) -> Option<T>) -> Option<(T, Expr)> {
    let fs = e.factors();
    let mut found = None;
    let mut rest = Vec::new();
    for f in fs {
        match pick(f) {
            Some(t) if found.is_none() => found = Some(t),
            Some(_) => return None,
            None => rest.push(f.clone()),
        }
    }
    found.map(|t| (t, grammar::mul(rest)))
}

/// `κ·π` with π as a plain factor; returns κ.
fn pi_coefficient(e: &Expr) -> Option<Expr> {
    split_factor(e, |f| f.is_const(Constant::Pi).then_some(())).map(|(_, k)| k)
}

fn ln_arg(e: &Expr) -> Option<&Expr> {
    match e {
        Expr::Ln(a) => Some(a),
        _ => None,
    }
}

fn rat_of(a: &AlgebraicNumber) -> Option<BigRational> {
    a.as_rational()
}

fn times_i(a: &AlgebraicNumber, cfg: &DegreeCapConfig) -> Option<AlgebraicNumber> {
    a.mul(&AlgebraicNumber::i(), cfg).ok()
}

// ---- closure and base rules ----

fn cl1(e: &Expr, _: &mut Ctx) -> Out {
    let q = e.as_rational()?;
    Some((Verdict::rational(q.clone()), json!({})))
}

fn cl2(e: &Expr, ctx: &mut Ctx) -> Out {
    if matches!(e, Expr::Rational(_)) {
        return None;
    }
    let a = ctx.alg_raw(e)?;
    let v = match a.as_rational() {
        Some(q) => Verdict::rational(q),
        None => Verdict::with(Natures::ALGIRR),
    };
    Some((v, json!({"minpoly": poly_json(a.minpoly()), "degree": a.degree()})))
}

fn b1(e: &Expr, _: &mut Ctx) -> Out {
    e.is_const(Constant::E).then(|| (Verdict::trans(), json!({})))
}

fn b2(e: &Expr, _: &mut Ctx) -> Out {
    e.is_const(Constant::Pi).then(|| (Verdict::trans(), json!({})))
}

fn b3(e: &Expr, _: &mut Ctx) -> Out {
    e.is_const(Constant::I)
        .then(|| (Verdict::with(Natures::ALGIRR), json!({"minpoly": [1, 0, 1]})))
}

/// Splits the operands of a sum or product into an algebraic part and the rest.
fn split_alg(xs: &[Expr], ctx: &mut Ctx) -> (Vec<Expr>, Vec<Expr>) {
    let mut alg = Vec::new();
    let mut rest = Vec::new();
    for x in xs {
        if try_eval_algebraic_with(x, &ctx.cfg).ok().flatten().is_some() {
            alg.push(x.clone());
        } else {
            rest.push(x.clone());
        }
    }
    (alg, rest)
}

fn cl3(e: &Expr, ctx: &mut Ctx) -> Out {
    match e {
        Expr::Add(xs) => {
            let (alg, rest) = split_alg(xs, ctx);
            if alg.is_empty() || rest.is_empty() {
                return None;
            }
            let alpha = grammar::add(alg);
            ctx.alg(&alpha)?;
            let t = grammar::add(rest);
            ctx.is_trans(&t)
                .then(|| (Verdict::trans(), json!({"form": "t+α", "t": render(&t), "alpha": render(&alpha)})))
        }
        Expr::Mul(xs) => {
            let (alg, rest) = split_alg(xs, ctx);
            if alg.is_empty() || rest.is_empty() {
                return None;
            }
            let alpha = grammar::mul(alg);
            if ctx.alg(&alpha)?.is_zero() {
                return None;
            }
            let t = grammar::mul(rest);
            ctx.is_trans(&t)
                .then(|| (Verdict::trans(), json!({"form": "α·t", "t": render(&t), "alpha": render(&alpha)})))
        }
        Expr::Pow(t, r) => {
            let q = r.as_rational()?;
            if q.is_zero() || !ctx.is_trans(t) {
                return None;
            }
            Some((Verdict::trans(), json!({"form": "t^r", "r": q_text(q)})))
        }
        Expr::Sqrt(t) => ctx
            .is_trans(t)
            .then(|| (Verdict::trans(), json!({"form": "t^r", "r": "1/2"}))),
        _ => None,
    }
}

fn cl4(e: &Expr, ctx: &mut Ctx) -> Out {
    let op = match e {
        Expr::Add(_) => "add",
        Expr::Mul(_) => "mul",
        Expr::Sqrt(_) => "sqrt",
        Expr::Pow(_, x) if x.as_rational().is_some_and(|q| !q.is_zero()) => "pow",
        _ => return None,
    };
    if try_eval_algebraic_with(e, &ctx.cfg).ok().flatten().is_some() {
        return None;
    }
    let operands: Vec<Expr> = match e {
        Expr::Pow(b, _) => vec![(**b).clone()],
        other => other.children().into_iter().cloned().collect(),
    };
    for x in &operands {
        let v = ctx.verdict(x)?;
        if !v.is_alg() {
            return None;
        }
        if let Expr::Pow(_, r) = e {
            if r.as_rational().is_some_and(|q| q.is_negative()) && v.nonzero != super::Nonzero::Yes {
                return None;
            }
        }
    }
    Some((Verdict::with(Natures::ALG), json!({"operation": op})))
}

// ---- classical rules for exponentials and powers ----

fn hl_exp(e: &Expr, ctx: &mut Ctx) -> Out {
    let u = as_exp(e)?;
    let a = ctx.alg(u)?;
    (!a.is_zero()).then(|| (Verdict::trans(), json!({"exponent": alg_json(&a)})))
}

fn hl_ln(e: &Expr, ctx: &mut Ctx) -> Out {
    let u = ln_arg(e)?;
    let a = ctx.alg(u)?;
    if a.is_zero() {
        ctx.domain.get_or_insert_with(|| format!("{} is undefined", render(e)));
        return None;
    }
    (!a.is_one()).then(|| (Verdict::trans(), json!({"argument": alg_json(&a)})))
}

fn lw_sum(e: &Expr, ctx: &mut Ctx) -> Out {
    let Expr::Add(terms) = e else { return None };
    let cfg = ctx.cfg;
    let mut groups: Vec<(AlgebraicNumber, AlgebraicNumber)> = Vec::new();
    for t in terms {
        let (arg, beta) = split_factor(t, as_exp)?;
        let alpha = ctx.alg(arg)?;
        if alpha.is_zero() {
            return None;
        }
        let b = ctx.alg(&beta)?;
        match groups.iter_mut().find(|(a, _)| *a == alpha) {
            Some((_, acc)) => *acc = acc.add(&b, &cfg).ok()?,
            None => groups.push((alpha, b)),
        }
    }
    if groups.iter().all(|(_, b)| b.is_zero()) {
        return None;
    }
    let exps: Vec<Value> = groups.iter().map(|(a, _)| alg_json(a)).collect();
    let coeffs: Vec<Value> = groups.iter().map(|(_, b)| alg_json(b)).collect();
    Some((Verdict::trans(), json!({"exponents": exps, "coefficients": coeffs})))
}

fn lw_trig(e: &Expr, ctx: &mut Ctx) -> Out {
    let u = match e {
        Expr::Trig(TrigFn::Sin | TrigFn::Cos, u) | Expr::Hyp(HypFn::Sinh | HypFn::Cosh, u) => u,
        _ => return None,
    };
    let a = ctx.alg(u)?;
    (!a.is_zero()).then(|| (Verdict::trans(), json!({"argument": alg_json(&a)})))
}

fn gelfond_schneider(e: &Expr, ctx: &mut Ctx) -> Out {
    let Expr::Pow(u, v) = e else { return None };
    let a = ctx.alg(u)?;
    if a.is_zero() || a.is_one() {
        return None;
    }
    let b = ctx.alg(v)?;
    if b.as_rational().is_some() {
        return None;
    }
    Some((Verdict::trans(), json!({"exponent_degree": b.degree()})))
}

fn log_ratio(e: &Expr, ctx: &mut Ctx) -> Out {
    let Expr::Mul(fs) = e else { return None };
    if fs.len() != 2 {
        return None;
    }
    let inv_ln = |f: &Expr| match f {
        Expr::Pow(b, x) if x.is_rational_value(-1) => ln_arg(b).cloned(),
        _ => None,
    };
    let (u, v) = match (ln_arg(&fs[0]), inv_ln(&fs[1]), ln_arg(&fs[1]), inv_ln(&fs[0])) {
        (Some(u), Some(v), _, _) | (_, _, Some(u), Some(v)) => (u.clone(), v),
        _ => return None,
    };
    let a = ctx.alg(&u)?;
    let b = ctx.alg(&v)?;
    if a.is_zero() || b.is_zero() || b.is_one() {
        return None;
    }
    let (p, q) = (rat_of(&a), rat_of(&b));
    match (p, q) {
        (Some(p), Some(q)) if p.is_positive() && q.is_positive() => match multiplicative_dependence(&p, &q) {
            Some((m, n)) => {
                let r = BigRational::new(n.clone(), m.clone());
                Some((Verdict::rational(r), json!({"witness": [int_json(&m), int_json(&n)]})))
            }
            None => Some((Verdict::trans(), json!({"witness": null}))),
        },
        _ if a == b => Some((Verdict::rational(BigRational::one()), json!({"equal": true}))),
        _ => Some((Verdict::with(Natures::RAT_OR_TRANS), json!({}))),
    }
}

// ---- arcs and trig of rational multiples of π ----

fn arctan_pi(e: &Expr, ctx: &mut Ctx) -> Out {
    let Expr::ArcTrig(TrigFn::Tan, x) = over_pi(e)? else { return None };
    let q = x.as_rational()?;
    if q.is_zero() || q.abs().is_one() {
        return None;
    }
    ctx.verdict(x);
    Some((Verdict::trans(), json!({"x": q_text(q)})))
}

/// The point z with arg z equal to the principal arc, as (re, im).
fn arc_point(
    kind: TrigFn,
    x: &AlgebraicNumber,
    cfg: &DegreeCapConfig,
) -> Option<(AlgebraicNumber, AlgebraicNumber, &'static str)> {
    let one = AlgebraicNumber::one();
    let s = x.real_sign()?;
    let sign = AlgebraicNumber::from_integer(if s < 0 { -1 } else { 1 });
    let x2 = x.mul(x, cfg).ok()?;
    // 1 - x^2 and x^2 - 1
    let w_in = one.sub(&x2, cfg).ok()?;
    let w_out = x2.sub(&one, cfg).ok()?;
    Some(match kind {
        TrigFn::Cos => {
            if w_in.real_sign()? < 0 {
                return None;
            }
            (x.clone(), w_in.sqrt_principal(cfg).ok()?, "z = x + sqrt(1-x^2) i")
        }
        TrigFn::Sin => {
            if w_in.real_sign()? < 0 {
                return None;
            }
            (w_in.sqrt_principal(cfg).ok()?, x.clone(), "z = sqrt(1-x^2) + x i")
        }
        TrigFn::Tan => (one, x.clone(), "z = 1 + x i"),
        TrigFn::Cot => {
            if s == 0 {
                (AlgebraicNumber::zero(), one, "z = i")
            } else {
                (x.mul(&sign, cfg).ok()?, sign, "z = sgn(x) (x + i)")
            }
        }
        TrigFn::Sec => {
            if w_out.real_sign()? < 0 {
                return None;
            }
            (sign, w_out.sqrt_principal(cfg).ok()?, "z = sgn(x) + sqrt(x^2-1) i")
        }
        TrigFn::Csc => {
            if w_out.real_sign()? < 0 {
                return None;
            }
            (w_out.sqrt_principal(cfg).ok()?, sign, "z = sqrt(x^2-1) + sgn(x) i")
        }
    })
}

fn arctrig_pi(e: &Expr, ctx: &mut Ctx) -> Out {
    let Expr::ArcTrig(kind, x) = over_pi(e)? else { return None };
    let kind = *kind;
    let a = ctx.alg(x)?;
    if !a.is_real() {
        return None;
    }
    let cfg = ctx.cfg;
    let mut ev = json!({"kind": kind.arc_name(), "quotient": "ln(z/|z|)/ln(-1)"});
    let Some((re, im, construction)) = arc_point(kind, &a, &cfg) else {
        return None;
    };
    ev["z"] = json!(construction);
    let unit = (|| {
        let n2 = re.mul(&re, &cfg).ok()?.add(&im.mul(&im, &cfg).ok()?, &cfg).ok()?;
        let n = n2.sqrt_principal(&cfg).ok()?;
        let z = re.add(&im.mul(&AlgebraicNumber::i(), &cfg).ok()?, &cfg).ok()?;
        z.div(&n, &cfg).ok()
    })();
    let Some(u) = unit else {
        ev["root_of_unity"] = Value::Null;
        return Some((Verdict::with(Natures::RAT_OR_TRANS), ev));
    };
    ev["unit_minpoly"] = poly_json(u.minpoly());
    match u.as_root_of_unity() {
        Some((k, m)) => {
            // arg = 2πk/m, folded into (-π, π]
            let mut r = BigRational::new(BigInt::from(2 * k), BigInt::from(m));
            if r > BigRational::one() {
                r -= BigRational::from_integer(2.into());
            }
            ev["root_of_unity"] = json!([k, m]);
            Some((Verdict::rational(r), ev))
        }
        None => {
            ev["root_of_unity"] = Value::Null;
            Some((Verdict::with(Natures::RAT_OR_TRANS), ev))
        }
    }
}

fn trig_of_unit(kind: TrigFn, z: &AlgebraicNumber, cfg: &DegreeCapConfig) -> Result<AlgebraicNumber, AlgebraicError> {
    let zi = z.inv()?;
    let two = AlgebraicNumber::from_integer(2);
    let cos = z.add(&zi, cfg)?.div(&two, cfg)?;
    let two_i = two.mul(&AlgebraicNumber::i(), cfg)?;
    let sin = z.sub(&zi, cfg)?.div(&two_i, cfg)?;
    match kind {
        TrigFn::Cos => Ok(cos),
        TrigFn::Sin => Ok(sin),
        TrigFn::Tan => sin.div(&cos, cfg),
        TrigFn::Sec => cos.inv(),
        TrigFn::Csc => sin.inv(),
        TrigFn::Cot => cos.div(&sin, cfg),
    }
}

fn trig_pi(e: &Expr, ctx: &mut Ctx) -> Out {
    let Expr::Trig(kind, arg) = e else { return None };
    let alpha = pi_coefficient(arg)?;
    let a = ctx.alg(&alpha)?;
    let cfg = ctx.cfg;
    let Some(r) = a.as_rational() else {
        return Some((Verdict::trans(), json!({"alpha": alg_json(&a)})));
    };
    // e^{iπr} with r folded into (-1, 1]
    let two = BigRational::from_integer(2.into());
    let mut rr = &r - (&r / &two).floor() * &two;
    if rr > BigRational::one() {
        rr -= &two;
    }
    let generic = (Verdict::with(Natures::ALG), json!({"alpha": q_text(&r)}));
    let Ok(z) = AlgebraicNumber::from_integer(-1).pow_rational(&rr, &cfg) else {
        return Some(generic);
    };
    match trig_of_unit(*kind, &z, &cfg) {
        Ok(v) => {
            let verdict = match v.as_rational() {
                Some(q) => Verdict::rational(q),
                None => Verdict::with(Natures::ALGIRR),
            };
            Some((verdict, json!({"alpha": q_text(&r), "minpoly": poly_json(v.minpoly())})))
        }
        Err(AlgebraicError::DivisionByZero) => {
            ctx.domain.get_or_insert_with(|| format!("{} is a pole", render(e)));
            None
        }
        Err(_) => Some(generic),
    }
}

// ---- Baker ----

/// `β·ln(α)` terms of a sum as (β, α) values.
fn log_terms(e: &Expr, ctx: &mut Ctx) -> Option<Vec<(AlgebraicNumber, AlgebraicNumber)>> {
    let Expr::Add(terms) = e else { return None };
    let mut out = Vec::new();
    for t in terms {
        let (arg, beta) = split_factor(t, ln_arg)?;
        let a = ctx.alg(arg)?;
        if a.is_zero() || a.is_one() {
            return None;
        }
        let b = ctx.alg(&beta)?;
        out.push((b, a));
    }
    Some(out)
}

fn baker_lin(e: &Expr, ctx: &mut Ctx) -> Out {
    let terms = log_terms(e, ctx)?;
    let cfg = ctx.cfg;
    let mut ev = json!({"rat_only_if_zero": true});
    let positive: Option<Vec<BigRational>> = terms
        .iter()
        .map(|(_, a)| a.as_rational().filter(|q| q.is_positive()))
        .collect();
    let Some(args) = positive else {
        return Some((Verdict::with(Natures::RAT_OR_TRANS), ev));
    };
    // Σ βk ln αk = Σj γj ln bj over a coprime base, with ln bj independent
    let (base, vecs) = log_coordinates(&args);
    let mut gammas = Vec::with_capacity(base.len());
    for j in 0..base.len() {
        let mut g = AlgebraicNumber::zero();
        for ((b, _), v) in terms.iter().zip(&vecs) {
            if v[j] != 0 {
                let c = b.mul(&AlgebraicNumber::from_integer(v[j]), &cfg).ok()?;
                g = g.add(&c, &cfg).ok()?;
            }
        }
        gammas.push(g);
    }
    ev["base"] = Value::Array(base.iter().map(int_json).collect());
    ev["exponents"] = json!(vecs);
    ev["combined"] = Value::Array(gammas.iter().map(alg_json).collect());
    if gammas.iter().all(|g| g.is_zero()) {
        Some((Verdict::rational(BigRational::zero()), ev))
    } else {
        Some((Verdict::trans(), ev))
    }
}

fn nz_upgrade(e: &Expr, ctx: &mut Ctx) -> Out {
    let (v, _) = baker_lin(e, ctx)?;
    if v.natures != Natures::RAT_OR_TRANS {
        return None;
    }
    let p = ctx.certify(e)?;
    Some((Verdict::trans(), json!({"precision": p, "rat_only_if_zero": true})))
}

/// `α^β` views of a factor: powers, square roots and bare algebraic factors.
fn power_view(f: &Expr, ctx: &mut Ctx) -> Option<(AlgebraicNumber, AlgebraicNumber)> {
    match f {
        Expr::Pow(b, x) => Some((ctx.alg(b)?, ctx.alg(x)?)),
        Expr::Sqrt(b) => Some((ctx.alg(b)?, AlgebraicNumber::from_ratio(1, 2))),
        other => Some((ctx.alg(other)?, AlgebraicNumber::one())),
    }
}

fn baker_prod(e: &Expr, ctx: &mut Ctx) -> Out {
    let Expr::Mul(_) = e else { return None };
    let (arg, rest) = split_factor(e, as_exp)?;
    let b0 = ctx.alg(arg)?;
    if b0.is_zero() {
        return None;
    }
    let mut bases = Vec::new();
    let mut exps = Vec::new();
    for f in rest.factors() {
        let (a, b) = power_view(f, ctx)?;
        if a.is_zero() || b.is_zero() {
            return None;
        }
        bases.push(alg_json(&a));
        exps.push(alg_json(&b));
    }
    Some((Verdict::trans(), json!({"beta0": alg_json(&b0), "bases": bases, "exponents": exps})))
}

fn baker_prod2(e: &Expr, ctx: &mut Ctx) -> Out {
    let Expr::Mul(fs) = e else { return None };
    let mut betas = Vec::new();
    for f in fs {
        let (a, b) = power_view(f, ctx)?;
        if a.is_zero() || a.is_one() {
            return None;
        }
        betas.push(b);
    }
    match q_linear_independent_with_one(&betas, &ctx.cfg) {
        Independence::True => Some((
            Verdict::trans(),
            json!({"exponents": betas.iter().map(alg_json).collect::<Vec<_>>(), "independence": "TRUE"}),
        )),
        _ => None,
    }
}

fn baker_exp(e: &Expr, ctx: &mut Ctx) -> Out {
    let u = as_exp(e)?;
    let mut alpha_terms = Vec::new();
    let mut beta_terms = Vec::new();
    for t in u.terms() {
        if try_eval_algebraic_with(t, &ctx.cfg).ok().flatten().is_some() {
            alpha_terms.push(t.clone());
        } else {
            beta_terms.push(pi_coefficient(t)?);
        }
    }
    if beta_terms.is_empty() {
        return None;
    }
    let alpha = grammar::add(alpha_terms);
    let beta = grammar::add(beta_terms);
    let a = ctx.alg(&alpha)?;
    let b = ctx.alg(&beta)?;
    let ev = |case: &str| json!({"alpha": alg_json(&a), "beta": alg_json(&b), "case": case});
    if !a.is_zero() {
        return Some((Verdict::trans(), ev("alpha nonzero")));
    }
    let ib = times_i(&b, &ctx.cfg)?;
    ib.as_rational().is_none().then(|| (Verdict::trans(), ev("i·beta irrational")))
}

fn alnb_pi(e: &Expr, ctx: &mut Ctx) -> Out {
    let Expr::Add(terms) = over_pi(e)? else { return None };
    let mut ln_term = None;
    let mut alpha_terms = Vec::new();
    for t in terms {
        match t {
            Expr::Ln(b) if ln_term.is_none() => ln_term = Some((**b).clone()),
            other => alpha_terms.push(other.clone()),
        }
    }
    let beta = ln_term?;
    let alpha = grammar::add(alpha_terms);
    let a = ctx.alg(&alpha)?;
    let b = ctx.alg(&beta)?;
    if a.is_zero() || b.is_zero() {
        return None;
    }
    Some((Verdict::trans(), json!({"alpha": alg_json(&a), "beta": alg_json(&b)})))
}

// ---- rules about a transcendental t ----

fn inv_t(e: &Expr, ctx: &mut Ctx) -> Out {
    match e {
        Expr::Add(terms) if terms.len() == 2 => {
            // α·t + β·t^-1 in either order
            for (x, y) in [(&terms[0], &terms[1]), (&terms[1], &terms[0])] {
                let (xa, xt) = split_alg(x.factors(), ctx);
                let (ya, yt) = split_alg(y.factors(), ctx);
                let t = grammar::mul(xt);
                let inv = match grammar::pow(t.clone(), Expr::int(-1)) {
                    Ok(i) => i,
                    Err(_) => continue,
                };
                if grammar::mul(yt) != inv || t.is_one() {
                    continue;
                }
                let alpha = grammar::mul(xa);
                let beta = grammar::mul(ya);
                if !ctx.is_trans(&t) {
                    return None;
                }
                let a = ctx.alg(&alpha)?;
                let b = ctx.alg(&beta)?;
                if a.is_zero() && b.is_zero() {
                    return None;
                }
                return Some((
                    Verdict::trans(),
                    json!({"form": "α·t + β/t", "t": render(&t), "alpha": alg_json(&a), "beta": alg_json(&b)}),
                ));
            }
            None
        }
        Expr::Mul(fs) if fs.len() == 2 => {
            // t·(α − t)
            for (t, s) in [(&fs[0], &fs[1]), (&fs[1], &fs[0])] {
                let Expr::Add(parts) = s else { continue };
                let minus_t = grammar::neg(t.clone());
                let Some(pos) = parts.iter().position(|p| *p == minus_t) else { continue };
                let mut rest = parts.clone();
                rest.remove(pos);
                let alpha = grammar::add(rest);
                if !ctx.is_trans(t) {
                    return None;
                }
                let a = ctx.alg(&alpha)?;
                return Some((Verdict::trans(), json!({"form": "t·(α − t)", "t": render(t), "alpha": alg_json(&a)})));
            }
            None
        }
        _ => None,
    }
}

/// `r·ln(t)` with rational r ≠ 0; returns (r, t).
fn rational_log(arg: &Expr) -> Option<(BigRational, Expr)> {
    let (t, rest) = split_factor(arg, ln_arg)?;
    let r = match rest {
        Expr::Rational(q) => q,
        _ => return None,
    };
    (!r.is_zero()).then(|| (r, t.clone()))
}

fn cosh_ln(e: &Expr, ctx: &mut Ctx) -> Out {
    let Expr::Hyp(HypFn::Cosh | HypFn::Sinh, arg) = e else { return None };
    let (r, t) = rational_log(arg)?;
    ctx.is_trans(&t).then(|| {
        (
            Verdict::trans(),
            json!({"r": q_text(&r), "t": render(&t), "stronger": "1, cosh(r ln t), sinh(r ln t) are linearly independent over the algebraic numbers"}),
        )
    })
}

fn tanh_ln(e: &Expr, ctx: &mut Ctx) -> Out {
    let Expr::Hyp(HypFn::Tanh, arg) = e else { return None };
    let (r, t) = rational_log(arg)?;
    ctx.is_trans(&t).then(|| (Verdict::trans(), json!({"r": q_text(&r), "t": render(&t)})))
}

fn trig_of_log(arg: &Expr, ctx: &mut Ctx) -> Out {
    let (alpha, beta) = split_factor(arg, ln_arg)?;
    let alpha = alpha.clone();
    let a = ctx.alg(&alpha)?;
    if a.is_zero() || a.is_one() {
        return None;
    }
    let b = ctx.alg(&beta)?;
    let ib = times_i(&b, &ctx.cfg)?;
    if ib.as_rational().is_some() {
        return None;
    }
    Some((Verdict::trans(), json!({"alpha": alg_json(&a), "beta": alg_json(&b)})))
}

fn cos_ln(e: &Expr, ctx: &mut Ctx) -> Out {
    let Expr::Trig(TrigFn::Cos | TrigFn::Sin | TrigFn::Sec | TrigFn::Csc, arg) = e else { return None };
    trig_of_log(arg, ctx)
}

fn tan_ln(e: &Expr, ctx: &mut Ctx) -> Out {
    let Expr::Trig(TrigFn::Tan | TrigFn::Cot, arg) = e else { return None };
    trig_of_log(arg, ctx)
}

// ---- ln π against multiples of π ----

struct LnPiForm {
    ln_pi: BigRational,
    ln_rational: Option<BigRational>,
    kappa: Option<AlgebraicNumber>,
}

fn is_ln_pi(e: &Expr) -> bool {
    matches!(e, Expr::Ln(a) if a.is_const(Constant::Pi))
}

fn lnpi_form(e: &Expr, ctx: &mut Ctx) -> Option<LnPiForm> {
    let Expr::Add(terms) = e else { return None };
    let mut ln_pi = BigRational::zero();
    let mut ln_rational: Option<BigRational> = None;
    let mut kappa_terms = Vec::new();
    for t in terms {
        if let Some(((), c)) = split_factor(t, |f| is_ln_pi(f).then_some(())) {
            ln_pi += c.as_rational()?.clone();
        } else if let Some((arg, c)) = split_factor(t, ln_arg) {
            // c·ln(r) = ln(r^c) for r > 0 and integer c
            let r = arg.as_rational()?;
            let c = c.as_rational()?;
            if !c.is_integer() || (!c.is_one() && !r.is_positive()) {
                return None;
            }
            let k = c.to_integer().to_i32()?;
            let rc = num_traits::pow::Pow::pow(r, k);
            ln_rational = Some(ln_rational.map_or(rc.clone(), |acc| acc * rc));
        } else {
            kappa_terms.push(pi_coefficient(t)?);
        }
    }
    let kappa = if kappa_terms.is_empty() {
        None
    } else {
        let k = ctx.alg(&grammar::add(kappa_terms))?;
        if !k.is_real() {
            return None;
        }
        Some(k)
    };
    Some(LnPiForm { ln_pi, ln_rational, kappa })
}

/// n = p²·m with p as large as trial division below 10⁴ finds.
fn square_split(n: &BigInt) -> (BigInt, BigInt) {
    let mut p = BigInt::one();
    let mut m = n.clone();
    let mut d = BigInt::from(2);
    while d < BigInt::from(10_000) && &d * &d <= m {
        let dd = &d * &d;
        while (&m % &dd).is_zero() {
            m /= &dd;
            p *= &d;
        }
        d += 1;
    }
    (p, m)
}

fn lnpi(e: &Expr, ctx: &mut Ctx) -> Out {
    let f = lnpi_form(e, ctx)?;
    let q = &f.ln_pi;
    if !q.is_integer() || q.is_negative() {
        return None;
    }
    let r = f.ln_rational.clone().unwrap_or_else(BigRational::one);
    // κ = −p·√n with p ≥ 0, so κ ≤ 0 and κ² an integer
    let (p, n) = match &f.kappa {
        None => (BigInt::zero(), BigInt::one()),
        Some(k) if k.is_zero() => (BigInt::zero(), BigInt::one()),
        Some(k) => {
            if k.real_sign()? > 0 {
                return None;
            }
            let k2 = k.mul(k, &ctx.cfg).ok()?.as_rational()?;
            if !k2.is_integer() {
                return None;
            }
            square_split(&k2.to_integer())
        }
    };
    if q.is_zero() && p.is_zero() {
        return None;
    }
    Some((
        Verdict::nonzero_only(),
        json!({"q": int_json(&q.to_integer()), "p": int_json(&p), "n": int_json(&n), "r": q_text(&r)}),
    ))
}

fn lnpi_li(e: &Expr, ctx: &mut Ctx) -> Out {
    let f = lnpi_form(e, ctx)?;
    if f.ln_rational.is_some() {
        return None;
    }
    let a = f.ln_pi.clone();
    let (b, n) = match &f.kappa {
        None => (BigRational::zero(), BigInt::one()),
        Some(k) if k.is_zero() => (BigRational::zero(), BigInt::one()),
        Some(k) => {
            let k2 = k.mul(k, &ctx.cfg).ok()?.as_rational()?;
            // κ = ±√(num/den) = ±(1/den)·√(num·den)
            let (p, n) = square_split(&(k2.numer() * k2.denom()));
            let mag = BigRational::new(p, k2.denom().clone());
            (if k.real_sign()? < 0 { -mag } else { mag }, n)
        }
    };
    if a.is_zero() && b.is_zero() {
        return None;
    }
    Some((Verdict::nonzero_only(), json!({"a": q_text(&a), "b": q_text(&b), "n": int_json(&n)})))
}

// ---- disjunctive rules ----

fn binary_operands(e: &Expr) -> Option<(&Expr, &Expr)> {
    match e {
        Expr::Add(xs) | Expr::Mul(xs) if xs.len() == 2 => Some((&xs[0], &xs[1])),
        _ => None,
    }
}

fn sum_and_product(u: &Expr, v: &Expr) -> Vec<Expr> {
    let mut m = vec![grammar::add(vec![u.clone(), v.clone()]), grammar::mul(vec![u.clone(), v.clone()])];
    m.sort();
    m
}

fn disj(
    rule: &'static str,
    members: Vec<Expr>,
    at_least: usize,
    class: NatureClass,
    ev: Value,
    ctx: &mut Ctx,
) -> DisjDerivation {
    DisjDerivation { rule, members, at_least, class, evidence: obj(ev), premises: ctx.take_used() }
}

pub fn sumprod(u: &Expr, v: &Expr, ctx: &mut Ctx) -> Option<DisjDerivation> {
    ctx.used.clear();
    if !(ctx.is_trans(u) && ctx.is_trans(v)) {
        return None;
    }
    let members = sum_and_product(u, v);
    let ev = json!({"u": render(u), "v": render(v)});
    Some(disj("R-SUMPROD", members, 1, NatureClass::Trans, ev, ctx))
}

pub fn quad(u: &Expr, v: &Expr, ctx: &mut Ctx) -> Option<DisjDerivation> {
    ctx.used.clear();
    let vv = ctx.verdict(v)?;
    if vv.is_alg() || vv.is_trans() {
        return None;
    }
    let reason = if ctx.is_trans(u) {
        json!("TRANS")
    } else {
        let a = ctx.alg(u)?;
        if a.degree() <= 2 {
            return None;
        }
        json!({"degree": a.degree()})
    };
    let ev = json!({"u": render(u), "v": render(v), "u_nature": reason});
    let members = sum_and_product(u, v);
    Some(disj("R-QUAD", members, 1, NatureClass::Irrational, ev, ctx))
}

/// The disjunctive rules that fire at a binary sum or product.
pub fn disjunctive_at(e: &Expr, ctx: &mut Ctx) -> Vec<DisjDerivation> {
    let Some((u, v)) = binary_operands(e) else { return Vec::new() };
    if let Some(d) = sumprod(u, v, ctx) {
        return vec![d];
    }
    [(u, v), (v, u)].into_iter().filter_map(|(a, b)| quad(a, b, ctx)).collect()
}

/// Members of the one-of-three triple at `t`.
pub fn triple(t: &Expr) -> Option<Vec<Expr>> {
    let mut m = vec![
        grammar::add(vec![t.clone(), Expr::e()]),
        grammar::mul(vec![t.clone(), Expr::e()]),
        grammar::ln(t.clone()).ok()?,
    ];
    m.sort();
    Some(m)
}

fn is_inverse_e_shape(t: &Expr) -> bool {
    let minus_one = Expr::int(-1);
    matches!(t, Expr::Exp(a) if **a == minus_one)
        || matches!(t, Expr::Pow(b, x) if b.is_const(Constant::E) && **x == minus_one)
}

pub fn one_of_three(t: &Expr, ctx: &mut Ctx) -> Option<DisjDerivation> {
    ctx.used.clear();
    if is_inverse_e_shape(t) || !ctx.is_trans(t) {
        return None;
    }
    // t ≠ 1/e, certified numerically beyond the structural check
    let gap = grammar::sub(t.clone(), grammar::exp(Expr::int(-1)));
    let p = ctx.certify(&gap)?;
    let members = triple(t)?;
    Some(disj("R-1OF3", members, 2, NatureClass::Trans, json!({"t": render(t), "precision": p}), ctx))
}
