//! Smart constructors producing canonical nodes, and `canonicalize`.
//!
//! Each constructor assumes canonical children and returns a canonical node,
//! which is what makes `canonicalize` idempotent.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::expr::{Constant, Expr, HypFn, TrigFn};
use super::GrammarError;

/// Largest result size (in bits) for which `q^n` is folded.
const MAX_FOLD_BITS: u64 = 1 << 16;

fn rat(q: BigRational) -> Expr {
    Expr::Rational(q)
}

pub fn add(terms: Vec<Expr>) -> Expr {
    let mut flat = Vec::with_capacity(terms.len());
    let mut constant = BigRational::zero();
    for t in terms {
        match t {
            Expr::Add(inner) => {
                for x in inner {
                    match x {
                        Expr::Rational(q) => constant += q,
                        other => flat.push(other),
                    }
                }
            }
            Expr::Rational(q) => constant += q,
            other => flat.push(other),
        }
    }
    if !constant.is_zero() {
        flat.push(rat(constant));
    }
    flat.sort();
    match flat.len() {
        0 => Expr::int(0),
        1 => flat.pop().unwrap(),
        _ => Expr::Add(flat),
    }
}

pub fn mul(factors: Vec<Expr>) -> Expr {
    let mut flat = Vec::with_capacity(factors.len());
    let mut coeff = BigRational::one();
    for f in factors {
        match f {
            Expr::Mul(inner) => {
                for x in inner {
                    match x {
                        Expr::Rational(q) => coeff *= q,
                        other => flat.push(other),
                    }
                }
            }
            Expr::Rational(q) => coeff *= q,
            other => flat.push(other),
        }
    }
    if coeff.is_zero() {
        return Expr::int(0);
    }
    if !coeff.is_one() {
        flat.push(rat(coeff));
    }
    flat.sort();
    match flat.len() {
        0 => Expr::int(1),
        1 => flat.pop().unwrap(),
        _ => Expr::Mul(flat),
    }
}

pub fn neg(e: Expr) -> Expr {
    mul(vec![Expr::int(-1), e])
}

pub fn sub(a: Expr, b: Expr) -> Expr {
    add(vec![a, neg(b)])
}

pub fn div(a: Expr, b: Expr) -> Result<Expr, GrammarError> {
    Ok(mul(vec![a, pow(b, Expr::int(-1))?]))
}

/// Exact `k`-th root of a nonnegative integer, if it exists.
fn exact_int_root(n: &BigInt, k: u32) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.nth_root(k);
    if num_traits::pow(r.clone(), k as usize) == *n {
        Some(r)
    } else {
        None
    }
}

fn exact_rational_root(q: &BigRational, k: u32) -> Option<BigRational> {
    let n = exact_int_root(q.numer(), k)?;
    let d = exact_int_root(q.denom(), k)?;
    Some(BigRational::new(n, d))
}

fn rational_int_pow(q: &BigRational, n: &BigInt) -> Result<Option<BigRational>, GrammarError> {
    if q.is_zero() {
        if n.is_negative() {
            return Err(GrammarError::Domain("division by zero".into()));
        }
        if n.is_zero() {
            return Err(GrammarError::Domain("0^0 is undefined".into()));
        }
        return Ok(Some(BigRational::zero()));
    }
    let bits = q.numer().bits().max(q.denom().bits());
    let e = match n.abs().to_u64() {
        Some(e) if e.saturating_mul(bits) <= MAX_FOLD_BITS => e,
        _ => return Ok(None),
    };
    let p = num_traits::pow(q.clone(), e as usize);
    Ok(Some(if n.is_negative() { p.recip() } else { p }))
}

pub fn pow(base: Expr, exponent: Expr) -> Result<Expr, GrammarError> {
    if let Expr::Rational(x) = &exponent {
        if x.is_one() {
            return Ok(base);
        }
        if x.is_zero() {
            return match &base {
                Expr::Rational(b) if b.is_zero() => {
                    Err(GrammarError::Domain("0^0 is undefined".into()))
                }
                Expr::Rational(_) => Ok(Expr::int(1)),
                _ => Ok(Expr::Pow(Box::new(base), Box::new(exponent))),
            };
        }
        if let Expr::Rational(b) = &base {
            if x.is_integer() {
                if let Some(v) = rational_int_pow(b, x.numer())? {
                    return Ok(rat(v));
                }
            } else if b.is_zero() {
                if x.is_negative() {
                    return Err(GrammarError::Domain("division by zero".into()));
                }
                return Ok(Expr::int(0));
            } else if b.is_positive() {
                if let Some(k) = x.denom().to_u32() {
                    if let Some(root) = exact_rational_root(b, k) {
                        if let Some(v) = rational_int_pow(&root, x.numer())? {
                            return Ok(rat(v));
                        }
                    }
                }
            }
        }
        if *x == BigRational::new(BigInt::one(), BigInt::from(2)) {
            return Ok(sqrt(base));
        }
    }
    Ok(Expr::Pow(Box::new(base), Box::new(exponent)))
}

pub fn sqrt(arg: Expr) -> Expr {
    if let Expr::Rational(q) = &arg {
        if !q.is_negative() {
            if let Some(r) = exact_rational_root(q, 2) {
                return rat(r);
            }
        }
    }
    Expr::Sqrt(Box::new(arg))
}

pub fn exp(arg: Expr) -> Expr {
    if arg.is_zero() {
        return Expr::int(1);
    }
    Expr::Exp(Box::new(arg))
}

pub fn ln(arg: Expr) -> Result<Expr, GrammarError> {
    if arg.is_zero() {
        return Err(GrammarError::Domain("ln(0) is undefined".into()));
    }
    if arg.is_one() {
        return Ok(Expr::int(0));
    }
    Ok(Expr::Ln(Box::new(arg)))
}

pub fn trig(kind: TrigFn, arg: Expr) -> Result<Expr, GrammarError> {
    if arg.is_zero() {
        return match kind {
            TrigFn::Sin | TrigFn::Tan => Ok(Expr::int(0)),
            TrigFn::Cos | TrigFn::Sec => Ok(Expr::int(1)),
            TrigFn::Csc | TrigFn::Cot => Err(GrammarError::Domain(format!(
                "{}(0) is a pole",
                kind.name()
            ))),
        };
    }
    Ok(Expr::Trig(kind, Box::new(arg)))
}

pub fn arctrig(kind: TrigFn, arg: Expr) -> Result<Expr, GrammarError> {
    if arg.is_zero() && matches!(kind, TrigFn::Sec | TrigFn::Csc) {
        return Err(GrammarError::Domain(format!(
            "{}(0) is undefined",
            kind.arc_name()
        )));
    }
    Ok(Expr::ArcTrig(kind, Box::new(arg)))
}

pub fn hyp(kind: HypFn, arg: Expr) -> Expr {
    if arg.is_zero() {
        return match kind {
            HypFn::Sinh | HypFn::Tanh => Expr::int(0),
            HypFn::Cosh => Expr::int(1),
        };
    }
    Expr::Hyp(kind, Box::new(arg))
}

pub fn constant(c: Constant) -> Expr {
    Expr::Const(c)
}

/// Rebuilds `e` bottom-up through the smart constructors.
pub fn canonicalize(e: &Expr) -> Result<Expr, GrammarError> {
    Ok(match e {
        Expr::Rational(q) => rat(q.clone()),
        Expr::Const(c) => Expr::Const(*c),
        Expr::Add(xs) => add(xs.iter().map(canonicalize).collect::<Result<_, _>>()?),
        Expr::Mul(xs) => mul(xs.iter().map(canonicalize).collect::<Result<_, _>>()?),
        Expr::Pow(b, x) => pow(canonicalize(b)?, canonicalize(x)?)?,
        Expr::Exp(a) => exp(canonicalize(a)?),
        Expr::Ln(a) => ln(canonicalize(a)?)?,
        Expr::Sqrt(a) => sqrt(canonicalize(a)?),
        Expr::Trig(k, a) => trig(*k, canonicalize(a)?)?,
        Expr::ArcTrig(k, a) => arctrig(*k, canonicalize(a)?)?,
        Expr::Hyp(k, a) => hyp(*k, canonicalize(a)?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn folds_rational_sum() {
        let e = Expr::Add(vec![Expr::int(1), Expr::int(1)]);
        assert_eq!(canonicalize(&e).unwrap(), Expr::int(2));
    }

    #[test]
    fn exp_of_zero_is_one() {
        let e = Expr::Exp(Box::new(Expr::int(0)));
        assert_eq!(canonicalize(&e).unwrap(), Expr::int(1));
    }

    #[test]
    fn products_commute() {
        let a = Expr::Mul(vec![Expr::e(), Expr::pi()]);
        let b = Expr::Mul(vec![Expr::pi(), Expr::e()]);
        assert_eq!(canonicalize(&a).unwrap(), canonicalize(&b).unwrap());
    }

    #[test]
    fn domain_errors() {
        assert!(canonicalize(&Expr::Ln(Box::new(Expr::int(0)))).is_err());
        let inv0 = Expr::Pow(Box::new(Expr::int(0)), Box::new(Expr::int(-2)));
        assert!(canonicalize(&inv0).is_err());
        let half = Expr::Pow(Box::new(Expr::int(0)), Box::new(Expr::ratio(-1, 2)));
        assert!(canonicalize(&half).is_err());
    }

    #[test]
    fn zeroth_power_of_symbol_is_kept() {
        let e = Expr::Pow(Box::new(Expr::pi()), Box::new(Expr::int(0)));
        assert_eq!(canonicalize(&e).unwrap(), e);
        let q = Expr::Pow(Box::new(Expr::int(7)), Box::new(Expr::int(0)));
        assert_eq!(canonicalize(&q).unwrap(), Expr::int(1));
    }

    #[test]
    fn half_power_becomes_sqrt() {
        let e = Expr::Pow(Box::new(Expr::int(2)), Box::new(Expr::ratio(1, 2)));
        assert_eq!(canonicalize(&e).unwrap(), Expr::Sqrt(Box::new(Expr::int(2))));
        let f = Expr::Pow(Box::new(Expr::int(8)), Box::new(Expr::ratio(2, 3)));
        assert_eq!(canonicalize(&f).unwrap(), Expr::int(4));
    }

    #[test]
    fn trig_at_zero() {
        assert_eq!(trig(TrigFn::Cos, Expr::int(0)).unwrap(), Expr::int(1));
        assert!(trig(TrigFn::Cot, Expr::int(0)).is_err());
        assert_eq!(hyp(HypFn::Tanh, Expr::int(0)), Expr::int(0));
    }
}
