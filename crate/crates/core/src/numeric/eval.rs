//! Ball evaluation of expressions, principal branches throughout.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::ball::{ComplexBall, RealBall};
use super::elementary as el;
use super::NumericError;
use crate::grammar::{Constant, Expr, HypFn, TrigFn};

/// Encloses the value of `e` in a ball, working at `precision` bits.
pub fn eval_ball(e: &Expr, precision: u64) -> Result<ComplexBall, NumericError> {
    let w = precision.max(8) + 16 + 4 * e.depth().min(64) as u64;
    eval(e, w)
}

fn rational(q: &BigRational, w: u64) -> ComplexBall {
    ComplexBall::real(RealBall::from_rational(q, w))
}

fn eval(e: &Expr, w: u64) -> Result<ComplexBall, NumericError> {
    match e {
        Expr::Rational(q) => Ok(rational(q, w)),
        Expr::Const(Constant::Pi) => Ok(ComplexBall::real(el::pi(w))),
        Expr::Const(Constant::E) => Ok(ComplexBall::real(el::exp(&RealBall::one(), w)?)),
        Expr::Const(Constant::I) => Ok(ComplexBall::i()),
        Expr::Add(xs) => {
            let mut acc = eval(&xs[0], w)?;
            for x in &xs[1..] {
                acc = acc.add(&eval(x, w)?, w);
            }
            Ok(acc)
        }
        Expr::Mul(xs) => {
            let mut acc = eval(&xs[0], w)?;
            for x in &xs[1..] {
                acc = acc.mul(&eval(x, w)?, w);
            }
            Ok(acc)
        }
        Expr::Pow(b, x) => pow(b, x, w),
        Expr::Exp(a) => el::cexp(&eval(a, w)?, w),
        Expr::Ln(a) => el::cln(&eval(a, w)?, w),
        Expr::Sqrt(a) => el::csqrt(&eval(a, w)?, w),
        Expr::Trig(k, a) => trig(*k, &eval(a, w)?, w),
        Expr::ArcTrig(k, a) => arctrig(*k, &eval(a, w)?, w),
        Expr::Hyp(k, a) => {
            let z = eval(a, w)?;
            let (s, c) = el::csinh_cosh(&z, w + 8)?;
            match k {
                HypFn::Sinh => Ok(s),
                HypFn::Cosh => Ok(c),
                HypFn::Tanh => s.div(&c, w),
            }
        }
    }
}

fn pow(b: &Expr, x: &Expr, w: u64) -> Result<ComplexBall, NumericError> {
    if b.is_const(Constant::E) {
        return el::cexp(&eval(x, w)?, w);
    }
    let base = eval(b, w)?;
    if let Expr::Rational(q) = x {
        if q.is_integer() {
            if base.is_exact_zero() {
                return if q.is_positive() {
                    Ok(ComplexBall::zero())
                } else {
                    Err(NumericError::Domain("zero to a nonpositive power".into()))
                };
            }
            return base.powi(q.numer(), w);
        }
    }
    let y = eval(x, w)?;
    if base.is_exact_zero() {
        if y.re.is_positive() {
            return Ok(ComplexBall::zero());
        }
        return Err(NumericError::PrecisionExhausted(
            "zero base with undecided exponent".into(),
        ));
    }
    let extra = y.re.abs_upper().mag().clamp(0, 4096) as u64;
    let l = el::cln(&base, w + extra + 8)?;
    el::cexp(&l.mul(&y, w + extra + 8), w)
}

fn trig(k: TrigFn, z: &ComplexBall, w: u64) -> Result<ComplexBall, NumericError> {
    let (s, c) = el::csin_cos(z, w + 8)?;
    match k {
        TrigFn::Sin => Ok(s),
        TrigFn::Cos => Ok(c),
        TrigFn::Tan => s.div(&c, w),
        TrigFn::Sec => c.recip(w),
        TrigFn::Csc => s.recip(w),
        TrigFn::Cot => c.div(&s, w),
    }
}

fn arctrig(k: TrigFn, z: &ComplexBall, w: u64) -> Result<ComplexBall, NumericError> {
    match k {
        TrigFn::Sin => el::casin(z, w),
        TrigFn::Cos => el::cacos(z, w),
        TrigFn::Tan => el::catan(z, w),
        TrigFn::Sec => el::cacos(&z.recip(w + 8)?, w),
        TrigFn::Csc => el::casin(&z.recip(w + 8)?, w),
        TrigFn::Cot => {
            if z.is_exact_zero() {
                return Ok(ComplexBall::real(el::pi(w).mul_2exp(-1)));
            }
            el::catan(&z.recip(w + 8)?, w)
        }
    }
}

/// True when the ball is exactly the rational `q` or encloses it.
pub fn ball_contains_rational(b: &ComplexBall, q: &BigRational) -> bool {
    if q.is_zero() {
        return b.contains_zero();
    }
    b.contains_rational(q)
}
