use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::factor;
use super::poly::{self, QPoly, ZPoly};
use super::roots::{self, RootBox};
use super::{poly_to_string, AlgebraicError, DegreeCapConfig};
use crate::grammar::{Constant, Expr};
use crate::numeric::{elementary, ComplexBall, NumericError, RealBall};

/// An algebraic number: its minimal polynomial and the position of the root
/// in the canonical isolation of that polynomial.
#[derive(Clone)]
pub struct AlgebraicNumber {
    minpoly: ZPoly,
    index: usize,
    rbox: RootBox,
}

impl PartialEq for AlgebraicNumber {
    fn eq(&self, o: &Self) -> bool {
        self.minpoly == o.minpoly && self.index == o.index
    }
}

impl Eq for AlgebraicNumber {}

impl Hash for AlgebraicNumber {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.minpoly.hash(h);
        self.index.hash(h);
    }
}

impl fmt::Debug for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgebraicNumber({self})")
    }
}

impl fmt::Display for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.as_rational() {
            return write!(f, "{q}");
        }
        let (re, im) = self.approx();
        if im == 0.0 && self.rbox.is_real() {
            write!(f, "root of {} near {re:.12}", poly_to_string(&self.minpoly))
        } else {
            write!(f, "root of {} near {re:.12}{im:+.12}i", poly_to_string(&self.minpoly))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Mul,
    Neg,
    Inv,
}

/// Applies a field operation; `b` is required for `Add` and `Mul`.
pub fn field_op(
    op: FieldOp,
    a: &AlgebraicNumber,
    b: Option<&AlgebraicNumber>,
    cfg: &DegreeCapConfig,
) -> Result<AlgebraicNumber, AlgebraicError> {
    let need = || b.ok_or_else(|| AlgebraicError::Domain("binary operation needs two operands".into()));
    match op {
        FieldOp::Add => a.add(need()?, cfg),
        FieldOp::Mul => a.mul(need()?, cfg),
        FieldOp::Neg => a.neg(),
        FieldOp::Inv => a.inv(),
    }
}

thread_local! {
    static REFINED: RefCell<HashMap<(ZPoly, usize), RootBox>> = RefCell::new(HashMap::new());
    static EVALUATED: RefCell<HashMap<(Expr, DegreeCapConfig), Result<Option<AlgebraicNumber>, AlgebraicError>>> =
        RefCell::new(HashMap::new());
}

const SELECT_MAX_BITS: u64 = 1 << 14;
const MAX_INT_EXPONENT: u64 = 1024;
// neg and inv preserve degree and coefficient size
const UNCAPPED: DegreeCapConfig = DegreeCapConfig { max_degree: 1 << 20, max_coeff_bits: 1 << 40 };

fn numeric(e: NumericError) -> AlgebraicError {
    AlgebraicError::Inconclusive(e.to_string())
}

/// Candidate root during selection.
struct Cand {
    poly: ZPoly,
    index: usize,
    iso: RootBox,
    cur: RootBox,
}

/// Picks the unique root of `f` whose refined box keeps meeting `target`.
fn select(
    f: &ZPoly,
    known_irreducible: bool,
    cfg: &DegreeCapConfig,
    target: &dyn Fn(u64) -> Result<ComplexBall, AlgebraicError>,
) -> Result<AlgebraicNumber, AlgebraicError> {
    let f = poly::primitive(f);
    if poly::deg(&f) > cfg.intermediate_degree() || poly::max_coeff_bits(&f) > 4 * cfg.max_coeff_bits {
        return Err(AlgebraicError::DegreeCapExceeded(format!(
            "intermediate polynomial of degree {} with {}-bit coefficients",
            poly::deg(&f),
            poly::max_coeff_bits(&f)
        )));
    }
    let factors = if known_irreducible { vec![f] } else { factor::irreducible_factors(&f) };
    let mut cands = Vec::new();
    for g in factors {
        for (index, b) in roots::isolate(&g)?.into_iter().enumerate() {
            cands.push(Cand { poly: g.clone(), index, iso: b.clone(), cur: b });
        }
    }
    let mut bits = 8u64;
    loop {
        if cands.len() > 1 {
            match target(bits + 8) {
                Ok(t) => {
                    for c in cands.iter_mut() {
                        c.cur = roots::refine(&c.poly, &c.cur, bits)?;
                    }
                    cands.retain(|c| c.cur.overlaps_ball(&t));
                }
                Err(AlgebraicError::Inconclusive(_)) => {}
                Err(e) => return Err(e),
            }
        }
        match cands.len() {
            0 => return Err(AlgebraicError::Inconclusive("no candidate root matches".into())),
            1 => {
                let c = cands.pop().unwrap();
                cfg.check(&c.poly)?;
                remember(&c.poly, c.index, &c.cur);
                return Ok(AlgebraicNumber { minpoly: c.poly, index: c.index, rbox: c.iso });
            }
            _ => {}
        }
        bits *= 2;
        if bits > SELECT_MAX_BITS {
            return Err(AlgebraicError::Inconclusive("roots too close to separate".into()));
        }
    }
}

fn remember(f: &ZPoly, index: usize, b: &RootBox) {
    REFINED.with(|c| {
        let mut c = c.borrow_mut();
        if c.len() > 8192 {
            c.clear();
        }
        let key = (f.clone(), index);
        let better = c.get(&key).is_none_or(|old| b.width() < old.width());
        if better {
            c.insert(key, b.clone());
        }
    });
}

/// f(x - r) as a primitive integer polynomial.
fn shift(f: &ZPoly, r: &BigRational) -> ZPoly {
    let lin: QPoly = vec![-r.clone(), BigRational::one()];
    let mut acc: QPoly = vec![BigRational::zero()];
    for c in f.iter().rev() {
        acc = poly::mul_q(&acc, &lin);
        acc[0] += BigRational::from_integer(c.clone());
    }
    poly::primitive_from_q(&acc)
}

/// Minimal polynomial of r * alpha from that of alpha, r != 0.
fn scale(f: &ZPoly, r: &BigRational) -> ZPoly {
    let d = poly::deg(f);
    let (u, v) = (r.numer(), r.denom());
    let out: ZPoly = f
        .iter()
        .enumerate()
        .map(|(i, c)| c * v.pow(i as u32) * u.pow((d - i) as u32))
        .collect();
    poly::primitive(&out)
}

impl AlgebraicNumber {
    pub fn from_rational(q: &BigRational) -> Self {
        let minpoly = poly::primitive(&vec![-q.numer().clone(), q.denom().clone()]);
        AlgebraicNumber { minpoly, index: 0, rbox: RootBox::point(q.clone()) }
    }

    /// p/q for integers with q != 0.
    pub fn from_ratio(p: i64, q: i64) -> Self {
        Self::from_rational(&BigRational::new(p.into(), q.into()))
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_ratio(n, 1)
    }

    pub fn zero() -> Self {
        Self::from_integer(0)
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        let f = poly::zpoly_from_i64(&[1, 0, 1]);
        let boxes = roots::isolate(&f).expect("x^2 + 1 isolates");
        let index = boxes.iter().position(|b| b.im_lo.is_positive()).expect("upper root");
        AlgebraicNumber { minpoly: f, index, rbox: boxes[index].clone() }
    }

    /// The root of the irreducible `f` selected by `index` in its canonical
    /// isolation (real roots ascending, then complex roots).
    pub fn from_root_index(f: &ZPoly, index: usize) -> Result<Self, AlgebraicError> {
        let f = poly::primitive(f);
        if !factor::is_irreducible(&f) {
            return Err(AlgebraicError::Domain("polynomial is not irreducible".into()));
        }
        let boxes = roots::isolate(&f)?;
        let rbox = boxes
            .get(index)
            .cloned()
            .ok_or_else(|| AlgebraicError::Domain(format!("root index {index} out of range")))?;
        Ok(AlgebraicNumber { minpoly: f, index, rbox })
    }

    /// The root of `f` (any nonzero integer polynomial) nearest to `(re, im)`,
    /// provided exactly one root is that close.
    pub fn root_near(f: &ZPoly, re: f64, im: f64, cfg: &DegreeCapConfig) -> Result<Self, AlgebraicError> {
        let target = ComplexBall::new(
            RealBall::new(crate::numeric::Dyadic::from_f64(re), crate::numeric::Dyadic::pow2(-20)),
            RealBall::new(crate::numeric::Dyadic::from_f64(im), crate::numeric::Dyadic::pow2(-20)),
        );
        let mut hits = Vec::new();
        for g in factor::irreducible_factors(f) {
            for (index, b) in roots::isolate(&g)?.into_iter().enumerate() {
                let r = roots::refine(&g, &b, 24)?;
                if r.overlaps_ball(&target) {
                    hits.push(AlgebraicNumber { minpoly: g.clone(), index, rbox: b });
                }
            }
        }
        if hits.len() != 1 {
            return Err(AlgebraicError::Inconclusive(format!("{} roots near the given point", hits.len())));
        }
        let a = hits.pop().unwrap();
        cfg.check(&a.minpoly)?;
        Ok(a)
    }

    pub fn minpoly(&self) -> &ZPoly {
        &self.minpoly
    }

    pub fn root_index(&self) -> usize {
        self.index
    }

    pub fn isolating_box(&self) -> &RootBox {
        &self.rbox
    }

    pub fn degree(&self) -> usize {
        poly::deg(&self.minpoly)
    }

    pub fn is_quadratic(&self) -> bool {
        self.degree() <= 2
    }

    pub fn is_zero(&self) -> bool {
        self.minpoly.len() == 2 && self.minpoly[0].is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|q| q.is_one())
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        (self.degree() == 1).then(|| BigRational::new(-self.minpoly[0].clone(), self.minpoly[1].clone()))
    }

    pub fn is_real(&self) -> bool {
        self.rbox.is_real()
    }

    /// Sign of a real number, None for non-real values.
    pub fn real_sign(&self) -> Option<i32> {
        if let Some(q) = self.as_rational() {
            return Some(if q.is_positive() {
                1
            } else if q.is_negative() {
                -1
            } else {
                0
            });
        }
        if !self.is_real() {
            return None;
        }
        let mut bits = 8;
        loop {
            let b = self.refined_box(bits).ok()?;
            if b.re_lo.is_positive() {
                return Some(1);
            }
            if b.re_hi.is_negative() {
                return Some(-1);
            }
            bits *= 2;
            if bits > SELECT_MAX_BITS {
                return None;
            }
        }
    }

    /// Isolating box shrunk to width at most 2^-bits.
    pub fn refined_box(&self, bits: u64) -> Result<RootBox, AlgebraicError> {
        if self.degree() == 1 {
            return Ok(self.rbox.clone());
        }
        let key = (self.minpoly.clone(), self.index);
        let start = REFINED
            .with(|c| c.borrow().get(&key).cloned())
            .unwrap_or_else(|| self.rbox.clone());
        let r = roots::refine(&self.minpoly, &start, bits)?;
        remember(&self.minpoly, self.index, &r);
        Ok(r)
    }

    /// Ball around the value with radius at most about 2^-prec.
    pub fn to_ball(&self, prec: u64) -> Result<ComplexBall, AlgebraicError> {
        if let Some(q) = self.as_rational() {
            return Ok(ComplexBall::real(RealBall::from_rational(&q, prec + 64)));
        }
        let b = self.refined_box(prec + 2)?;
        Ok(b.to_ball(prec + 64))
    }

    /// Floating-point approximation (re, im).
    pub fn approx(&self) -> (f64, f64) {
        match self.to_ball(60) {
            Ok(b) => (b.re.to_f64(), b.im.to_f64()),
            Err(_) => (f64::NAN, f64::NAN),
        }
    }

    pub fn neg(&self) -> Result<Self, AlgebraicError> {
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_rational(&-q));
        }
        let f = poly::negate_var(&self.minpoly);
        select(&f, true, &UNCAPPED, &|p| {
            Ok(self.to_ball(p)?.neg())
        })
    }

    pub fn inv(&self) -> Result<Self, AlgebraicError> {
        if self.is_zero() {
            return Err(AlgebraicError::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_rational(&q.recip()));
        }
        let f = poly::reverse(&self.minpoly);
        select(&f, true, &UNCAPPED, &|p| {
            self.to_ball(p + 8)?.recip(p + 32).map_err(numeric)
        })
    }

    pub fn add(&self, o: &Self, cfg: &DegreeCapConfig) -> Result<Self, AlgebraicError> {
        match (self.as_rational(), o.as_rational()) {
            (Some(a), Some(b)) => return Ok(Self::from_rational(&(a + b))),
            (None, Some(r)) => return self.add_rational(&r, cfg),
            (Some(r), None) => return o.add_rational(&r, cfg),
            _ => {}
        }
        if self == o {
            return self.mul_rational(&BigRational::from_integer(2.into()), cfg);
        }
        let (da, db) = (self.degree(), o.degree());
        if da * db > cfg.intermediate_degree() {
            return Err(AlgebraicError::DegreeCapExceeded(format!("sum of degrees {da} and {db}")));
        }
        let a = poly::companion(&self.minpoly);
        let b = poly::companion(&o.minpoly);
        let m = poly::mat_add(&poly::kron(&a, &poly::identity(db)), &poly::kron(&poly::identity(da), &b));
        let f = poly::primitive_from_q(&poly::charpoly(&m));
        select(&f, false, cfg, &|p| {
            let x = self.to_ball(p + 4)?;
            let y = o.to_ball(p + 4)?;
            Ok(x.add(&y, p + 32))
        })
    }

    pub fn sub(&self, o: &Self, cfg: &DegreeCapConfig) -> Result<Self, AlgebraicError> {
        self.add(&o.neg()?, cfg)
    }

    pub fn mul(&self, o: &Self, cfg: &DegreeCapConfig) -> Result<Self, AlgebraicError> {
        match (self.as_rational(), o.as_rational()) {
            (Some(a), Some(b)) => return Ok(Self::from_rational(&(a * b))),
            (None, Some(r)) => return self.mul_rational(&r, cfg),
            (Some(r), None) => return o.mul_rational(&r, cfg),
            _ => {}
        }
        if self == o {
            return self.pow_int(&BigInt::from(2), cfg);
        }
        let (da, db) = (self.degree(), o.degree());
        if da * db > cfg.intermediate_degree() {
            return Err(AlgebraicError::DegreeCapExceeded(format!("product of degrees {da} and {db}")));
        }
        let m = poly::kron(&poly::companion(&self.minpoly), &poly::companion(&o.minpoly));
        let f = poly::primitive_from_q(&poly::charpoly(&m));
        select(&f, false, cfg, &|p| {
            let x = self.to_ball(p + 8)?;
            let y = o.to_ball(p + 8)?;
            let mag = 4 + x.re.abs_upper().mag().max(x.im.abs_upper().mag()).max(0)
                + y.re.abs_upper().mag().max(y.im.abs_upper().mag()).max(0);
            let x = self.to_ball(p + mag as u64)?;
            let y = o.to_ball(p + mag as u64)?;
            Ok(x.mul(&y, p + mag as u64 + 32))
        })
    }

    pub fn div(&self, o: &Self, cfg: &DegreeCapConfig) -> Result<Self, AlgebraicError> {
        self.mul(&o.inv()?, cfg)
    }

    fn add_rational(&self, r: &BigRational, cfg: &DegreeCapConfig) -> Result<Self, AlgebraicError> {
        if r.is_zero() {
            return Ok(self.clone());
        }
        let f = shift(&self.minpoly, r);
        cfg.check(&f)?;
        select(&f, true, cfg, &|p| {
            let x = self.to_ball(p)?;
            Ok(x.add(&ComplexBall::real(RealBall::from_rational(r, p + 64)), p + 32))
        })
    }

    fn mul_rational(&self, r: &BigRational, cfg: &DegreeCapConfig) -> Result<Self, AlgebraicError> {
        if r.is_zero() {
            return Ok(Self::zero());
        }
        if r.is_one() {
            return Ok(self.clone());
        }
        let f = scale(&self.minpoly, r);
        cfg.check(&f)?;
        let extra = r.numer().bits() as u64 + 4;
        select(&f, true, cfg, &|p| {
            let x = self.to_ball(p + extra)?;
            Ok(x.mul_real(&RealBall::from_rational(r, p + extra + 64), p + extra + 32))
        })
    }

    pub fn pow_int(&self, n: &BigInt, cfg: &DegreeCapConfig) -> Result<Self, AlgebraicError> {
        if n.is_zero() {
            if self.is_zero() {
                return Err(AlgebraicError::Domain("0^0 is undefined".into()));
            }
            return Ok(Self::one());
        }
        if n.is_negative() {
            return self.inv()?.pow_int(&-n, cfg);
        }
        if n.is_one() {
            return Ok(self.clone());
        }
        let e = n.to_u64().filter(|&e| e <= MAX_INT_EXPONENT * 64);
        if let Some(q) = self.as_rational() {
            let bits = q.numer().bits().max(q.denom().bits());
            let Some(e) = e.filter(|&e| e.saturating_mul(bits) <= cfg.max_coeff_bits) else {
                return Err(AlgebraicError::DegreeCapExceeded("rational power too large".into()));
            };
            return Ok(Self::from_rational(&num_traits::pow(q, e as usize)));
        }
        let Some(e) = e.filter(|&e| e <= MAX_INT_EXPONENT) else {
            return Err(AlgebraicError::DegreeCapExceeded(format!("exponent {n} too large")));
        };
        let m = poly::mat_pow(&poly::companion(&self.minpoly), e);
        let f = poly::primitive_from_q(&poly::charpoly(&m));
        if poly::max_coeff_bits(&f) > 4 * cfg.max_coeff_bits {
            return Err(AlgebraicError::DegreeCapExceeded("power has oversized coefficients".into()));
        }
        let ne = n.clone();
        select(&f, false, cfg, &move |p| {
            let x = self.to_ball(16)?;
            let mag = x.re.abs_upper().mag().max(x.im.abs_upper().mag()).max(0) as u64;
            let extra = e * (mag + 1) + 16;
            let x = self.to_ball(p + extra)?;
            x.powi(&ne, p + extra + 32).map_err(numeric)
        })
    }

    /// Principal q-th root, q >= 1.
    pub fn root(&self, q: u64, cfg: &DegreeCapConfig) -> Result<Self, AlgebraicError> {
        if q == 0 {
            return Err(AlgebraicError::Domain("zeroth root".into()));
        }
        if q == 1 || self.is_zero() || self.is_one() {
            return Ok(self.clone());
        }
        if let Some(r) = self.as_rational() {
            if r.is_positive() {
                let qu = q as u32;
                let (n, d) = (r.numer().nth_root(qu), r.denom().nth_root(qu));
                if n.pow(qu) == *r.numer() && d.pow(qu) == *r.denom() {
                    return Ok(Self::from_rational(&BigRational::new(n, d)));
                }
            }
        }
        let qd = q as usize;
        if self.degree().saturating_mul(qd) > cfg.intermediate_degree() {
            return Err(AlgebraicError::DegreeCapExceeded(format!(
                "root of order {q} of a degree {} number",
                self.degree()
            )));
        }
        let f = poly::compose_power(&self.minpoly, qd);
        let sign = self.real_sign();
        select(&f, false, cfg, &|p| self.principal_root_ball(q, sign, p))
    }

    pub fn sqrt_principal(&self, cfg: &DegreeCapConfig) -> Result<Self, AlgebraicError> {
        self.root(2, cfg)
    }

    /// a^(p/q) on the principal branch.
    pub fn pow_rational(&self, e: &BigRational, cfg: &DegreeCapConfig) -> Result<Self, AlgebraicError> {
        if self.is_zero() && !e.is_positive() {
            return Err(AlgebraicError::Domain("zero to a non-positive power".into()));
        }
        let q = e.denom().to_u64().ok_or_else(|| AlgebraicError::DegreeCapExceeded("root order".into()))?;
        self.root(q, cfg)?.pow_int(e.numer(), cfg)
    }

    fn principal_root_ball(&self, q: u64, sign: Option<i32>, p: u64) -> Result<ComplexBall, AlgebraicError> {
        // |a|^(1/q) loses nothing in absolute terms, but ln near zero does
        let w = p + 32 + self.log_inverse_magnitude();
        let x = self.to_ball(w)?;
        let qb = RealBall::from_int(q as i64);
        match sign {
            Some(s) => {
                let m = elementary::ln(&x.re.abs(), w).map_err(numeric)?;
                let r = elementary::exp(&m.div(&qb, w).map_err(numeric)?, w).map_err(numeric)?;
                if s > 0 {
                    Ok(ComplexBall::real(r))
                } else {
                    let t = elementary::pi(w).div(&qb, w).map_err(numeric)?;
                    let (sn, cs) = elementary::sin_cos(&t, w).map_err(numeric)?;
                    Ok(ComplexBall::new(r.mul(&cs, w), r.mul(&sn, w)))
                }
            }
            None => {
                let l = elementary::cln(&x, w).map_err(numeric)?;
                let l = ComplexBall::new(l.re.div(&qb, w).map_err(numeric)?, l.im.div(&qb, w).map_err(numeric)?);
                elementary::cexp(&l, w).map_err(numeric)
            }
        }
    }

    /// Rough bound on -log2 |a| for nonzero a, 0 when |a| >= 1.
    fn log_inverse_magnitude(&self) -> u64 {
        let b = match self.to_ball(24) {
            Ok(b) => b,
            Err(_) => return 64,
        };
        let m = b.re.abs_upper().mag().max(b.im.abs_upper().mag());
        if m >= 0 {
            0
        } else {
            (-m) as u64 + 8
        }
    }

    /// Some((k, m)) with gcd(k, m) = 1 and 0 <= k < m when the value is
    /// exp(2 pi i k / m).
    pub fn as_root_of_unity(&self) -> Option<(u64, u64)> {
        let d = self.degree();
        let lead_ok = self.minpoly.last().is_some_and(|c| c.is_one()) && self.minpoly[0].abs().is_one();
        if !lead_ok {
            return None;
        }
        let bound = (2 * d * d).max(6) as u64;
        let m = (1..=bound).find(|&m| euler_phi(m) == d as u64 && cyclotomic(m) == self.minpoly)?;
        if m == 1 {
            return Some((0, 1));
        }
        if m == 2 {
            return Some((1, 2));
        }
        let (re, im) = self.approx();
        let turn = im.atan2(re) / (2.0 * std::f64::consts::PI);
        let k = ((turn * m as f64).round() as i64).rem_euclid(m as i64) as u64;
        if k.gcd(&m) != 1 {
            return None;
        }
        // roots of unity of order m are at least 4/m apart
        let bits = 2 * (64 - m.leading_zeros() as u64) + 8;
        let b = self.refined_box(bits).ok()?;
        let w = bits + 32;
        let t = elementary::pi(w).mul_int(2 * k as i64, w).div_int(m as i64, w);
        let (s, c) = elementary::sin_cos(&t, w).ok()?;
        b.overlaps_ball(&ComplexBall::new(c, s)).then_some((k, m))
    }
}

fn euler_phi(mut n: u64) -> u64 {
    let mut r = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            r -= r / p;
        }
        p += 1;
    }
    if n > 1 {
        r -= r / n;
    }
    r
}

/// The m-th cyclotomic polynomial.
pub(crate) fn cyclotomic(m: u64) -> ZPoly {
    let mut f = vec![BigInt::zero(); m as usize + 1];
    f[0] = BigInt::from(-1);
    f[m as usize] = BigInt::one();
    for d in 1..m {
        if m % d == 0 {
            f = poly::exact_div_z(&f, &cyclotomic(d)).expect("cyclotomic division is exact");
        }
    }
    f
}

/// Evaluates expressions built from rationals, i, +, *, sqrt and rational
/// powers. `Ok(None)` means the expression is not of that shape.
pub fn try_eval_algebraic(e: &Expr) -> Result<Option<AlgebraicNumber>, AlgebraicError> {
    try_eval_algebraic_with(e, &DegreeCapConfig::default())
}

pub fn try_eval_algebraic_with(
    e: &Expr,
    cfg: &DegreeCapConfig,
) -> Result<Option<AlgebraicNumber>, AlgebraicError> {
    let key = (e.clone(), *cfg);
    if let Some(r) = EVALUATED.with(|c| c.borrow().get(&key).cloned()) {
        return r;
    }
    let r = eval_uncached(e, cfg);
    EVALUATED.with(|c| {
        let mut c = c.borrow_mut();
        if c.len() > 8192 {
            c.clear();
        }
        c.insert(key, r.clone());
    });
    r
}

fn eval_uncached(e: &Expr, cfg: &DegreeCapConfig) -> Result<Option<AlgebraicNumber>, AlgebraicError> {
    macro_rules! sub {
        ($x:expr) => {
            match try_eval_algebraic_with($x, cfg)? {
                Some(v) => v,
                None => return Ok(None),
            }
        };
    }
    Ok(Some(match e {
        Expr::Rational(q) => AlgebraicNumber::from_rational(q),
        Expr::Const(Constant::I) => AlgebraicNumber::i(),
        Expr::Const(_) => return Ok(None),
        Expr::Add(xs) => {
            // structural shape first, so ineligible sums fail fast
            let mut vals = Vec::with_capacity(xs.len());
            for x in xs {
                vals.push(sub!(x));
            }
            let mut acc = vals[0].clone();
            for v in &vals[1..] {
                acc = acc.add(v, cfg)?;
            }
            acc
        }
        Expr::Mul(xs) => {
            let mut vals = Vec::with_capacity(xs.len());
            for x in xs {
                vals.push(sub!(x));
            }
            let mut acc = vals[0].clone();
            for v in &vals[1..] {
                acc = acc.mul(v, cfg)?;
            }
            acc
        }
        Expr::Pow(b, x) => {
            let ex = match x.as_rational() {
                Some(q) => q.clone(),
                None => match try_eval_algebraic_with(x, cfg)?.and_then(|v| v.as_rational()) {
                    Some(q) => q,
                    None => return Ok(None),
                },
            };
            let base = sub!(b);
            base.pow_rational(&ex, cfg)?
        }
        Expr::Sqrt(x) => sub!(x).sqrt_principal(cfg)?,
        Expr::Exp(_) | Expr::Ln(_) | Expr::Trig(..) | Expr::ArcTrig(..) | Expr::Hyp(..) => return Ok(None),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebraic::poly::zpoly_from_i64;
    use crate::grammar::parse;

    fn cfg() -> DegreeCapConfig {
        DegreeCapConfig::default()
    }

    fn eval(s: &str) -> AlgebraicNumber {
        try_eval_algebraic(&parse(s).unwrap()).unwrap().unwrap()
    }

    #[test]
    fn rationals_reduce() {
        assert_eq!(AlgebraicNumber::from_ratio(-2, 6).minpoly(), &zpoly_from_i64(&[1, 3]));
        assert!(AlgebraicNumber::zero().is_zero());
    }

    #[test]
    fn sum_of_square_roots() {
        let a = eval("sqrt(2)+sqrt(3)");
        assert_eq!(a.minpoly(), &zpoly_from_i64(&[1, 0, -10, 0, 1]));
        assert!((a.approx().0 - (2f64.sqrt() + 3f64.sqrt())).abs() < 1e-12);
    }

    #[test]
    fn golden_ratio_and_inverse() {
        let g = eval("(1+sqrt(5))/2");
        assert_eq!(g.minpoly(), &zpoly_from_i64(&[-1, -1, 1]));
        assert_eq!(g.inv().unwrap().minpoly(), &zpoly_from_i64(&[-1, 1, 1]));
    }

    #[test]
    fn cancellation_is_exact() {
        let s = eval("sqrt(2)");
        assert!(s.add(&s.neg().unwrap(), &cfg()).unwrap().is_zero());
        assert_eq!(s.mul(&s, &cfg()).unwrap().as_rational(), Some(BigRational::from_integer(2.into())));
    }

    #[test]
    fn principal_square_roots() {
        let i = eval("sqrt(-1)");
        assert_eq!(i, AlgebraicNumber::i());
        let r = eval("sqrt(3+2*sqrt(2))");
        assert_eq!(r.minpoly(), &zpoly_from_i64(&[-1, -2, 1]));
        assert!(r.approx().0 > 2.0);
    }

    #[test]
    fn cube_root_degree() {
        let c = eval("2^(1/3)");
        assert_eq!(c.degree(), 3);
        assert!(!c.is_quadratic());
        assert!(c.is_real());
    }

    #[test]
    fn roots_of_unity() {
        assert_eq!(AlgebraicNumber::i().as_root_of_unity(), Some((1, 4)));
        let w = eval("(-1+sqrt(-3))/2");
        assert_eq!(w.as_root_of_unity(), Some((1, 3)));
        assert_eq!(eval("sqrt(2)").as_root_of_unity(), None);
    }

    #[test]
    fn transcendental_shapes_are_ineligible() {
        assert!(try_eval_algebraic(&parse("exp(1)").unwrap()).unwrap().is_none());
        assert!(try_eval_algebraic(&parse("pi+1").unwrap()).unwrap().is_none());
    }
}
