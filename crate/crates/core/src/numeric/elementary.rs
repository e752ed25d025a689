//! Elementary functions on balls.
//!
//! Point values are computed with fixed-point series on `BigInt`s, counting
//! truncation errors in units of the last place; argument reduction and the
//! propagation of input radii go through ball arithmetic.

use std::cell::RefCell;
use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::ball::{ComplexBall, RealBall};
use super::dyadic::{Dyadic, MAG_BITS};
use super::NumericError;

const GUARD: u64 = 24;

fn exhausted(msg: &str) -> NumericError {
    NumericError::PrecisionExhausted(msg.to_string())
}

/// Fixed-point value `v * 2^-w` with an error of `ulps * 2^-w`.
fn fixed_ball(v: BigInt, ulps: u64, w: u64) -> RealBall {
    RealBall::new(
        Dyadic::new(v, -(w as i64)),
        Dyadic::new(BigInt::from(ulps), -(w as i64)),
    )
}

/// Shift right rounding toward zero, so repeated products decay to zero.
fn shr(x: BigInt, w: u64) -> BigInt {
    if x.sign() == num_bigint::Sign::Minus {
        -((-x) >> w)
    } else {
        x >> w
    }
}

/// `x` as a fixed-point integer `floor(x * 2^w)`.
fn to_fixed(x: &Dyadic, w: u64) -> BigInt {
    x.mul_2exp(w as i64).floor()
}

/// `sum_k s^k / ((2k+1) n^(2k+1))` with `s = -1` (arctan) or `s = 1` (artanh),
/// evaluated at `1/n`.
fn arc_series_inv(n: u64, alternating: bool, w: u64) -> RealBall {
    let one = BigInt::one() << w;
    let n2 = BigInt::from(n * n);
    let mut p = one / n;
    let mut sum = BigInt::zero();
    let mut k: u64 = 0;
    while !p.is_zero() {
        let t = &p / (2 * k + 1);
        if alternating && k % 2 == 1 {
            sum -= t;
        } else {
            sum += t;
        }
        p /= &n2;
        k += 1;
    }
    fixed_ball(sum, 2 * k + 4, w)
}

thread_local! {
    static CONSTANTS: RefCell<HashMap<(u8, u64), RealBall>> = RefCell::new(HashMap::new());
}

fn cached(kind: u8, prec: u64, f: impl FnOnce() -> RealBall) -> RealBall {
    if let Some(v) = CONSTANTS.with(|c| c.borrow().get(&(kind, prec)).cloned()) {
        return v;
    }
    let v = f();
    CONSTANTS.with(|c| c.borrow_mut().insert((kind, prec), v.clone()));
    v
}

/// Pi via Machin's formula.
pub fn pi(prec: u64) -> RealBall {
    cached(0, prec, || {
        let w = prec + GUARD;
        let a = arc_series_inv(5, true, w).mul_int(16, w);
        let b = arc_series_inv(239, true, w).mul_int(4, w);
        a.sub(&b, prec)
    })
}

/// ln 2 = 2 artanh(1/3).
pub fn ln2(prec: u64) -> RealBall {
    cached(1, prec, || {
        let w = prec + GUARD;
        arc_series_inv(3, false, w).mul_2exp(1).add(&RealBall::zero(), prec)
    })
}

/// Number of argument halvings used before a series.
fn halvings(w: u64, cap: u64) -> u64 {
    (((w as f64).sqrt() / 2.0) as u64).min(cap)
}

/// exp(d) for |d| <= 1.
fn exp_point(d: &Dyadic, prec: u64) -> RealBall {
    let t = halvings(prec, 48);
    let w = prec + t + GUARD;
    let r = to_fixed(&d.mul_2exp(-(t as i64)), w);
    let one = BigInt::one() << w;
    let mut sum = one.clone();
    let mut term = one;
    let mut n: u64 = 1;
    while !term.is_zero() {
        term = shr(&term * &r, w);
        term /= n;
        sum += &term;
        n += 1;
    }
    let mut y = fixed_ball(sum, 4 * n + 12, w);
    for _ in 0..t {
        y = y.sqr(w);
    }
    y
}

pub fn exp(x: &RealBall, prec: u64) -> Result<RealBall, NumericError> {
    if x.is_exact_zero() {
        return Ok(RealBall::one());
    }
    if x.rad() > &Dyadic::one() {
        return Err(exhausted("exp argument too wide"));
    }
    let m = x.mid();
    if m.mag() > 40 {
        return Err(exhausted("exp argument too large"));
    }
    let w = prec + GUARD;
    let k = (m.to_f64() / std::f64::consts::LN_2).round() as i64;
    let (d, rad) = if k == 0 {
        (m.clone(), x.rad().clone())
    } else {
        let l = ln2(w + 64);
        let y = RealBall::exact(m.clone()).sub(&l.mul_int(k, w + 64), w + 64);
        (y.mid().clone(), x.rad().add(y.rad()))
    };
    let e = exp_point(&d, w);
    // exp(d + h) = exp(d) (1 + (exp(h) - 1)), |exp(h) - 1| <= 2|h| for |h| <= 1
    let out = if rad.is_zero() {
        e
    } else {
        e.mul(&RealBall::new(Dyadic::one(), rad.mul_2exp(1)), w)
    };
    Ok(out.mul_2exp(k).add(&RealBall::zero(), prec))
}

/// ln(f) for a fixed-point `f` in `[1/2, 1]`.
fn ln_unit(f: BigInt, w: u64) -> RealBall {
    let j = halvings(w, 64);
    let big_w = w + j + GUARD;
    let one = BigInt::one() << big_w;
    let mut f = f << (big_w - w);
    for _ in 0..j {
        f = (f << big_w).sqrt();
    }
    let z = ((&f - &one) << big_w) / (&f + &one);
    let z2 = shr(&z * &z, big_w);
    let mut p = z;
    let mut sum = BigInt::zero();
    let mut k: u64 = 0;
    while !p.is_zero() {
        sum += &p / (2 * k + 1);
        p = shr(&p * &z2, big_w);
        k += 1;
    }
    let ulps = 8 * k + 64;
    fixed_ball(sum, ulps, big_w).mul_2exp(1 + j as i64)
}

pub fn ln(x: &RealBall, prec: u64) -> Result<RealBall, NumericError> {
    if x.is_exact_zero() {
        return Err(NumericError::Domain("logarithm of zero".into()));
    }
    if !x.is_positive() {
        if x.is_negative() {
            return Err(NumericError::Domain("real logarithm of negative".into()));
        }
        return Err(exhausted("logarithm argument contains zero"));
    }
    let m = x.mid();
    if *m == Dyadic::one() && x.is_exact() {
        return Ok(RealBall::zero());
    }
    let w = prec + GUARD;
    let b = m.mantissa().bits();
    let e = m.exponent() + b as i64;
    // m = f * 2^e with f = man / 2^b in [1/2, 1)
    let f = if b <= w {
        m.mantissa() << (w - b)
    } else {
        m.mantissa() >> (b - w)
    };
    let mut out = ln_unit(f, w);
    if e != 0 {
        let extra = 64 - e.unsigned_abs().leading_zeros() as u64;
        let lw = w + extra + 8;
        out = out.add(&ln2(lw).mul_int(e, lw), w);
    }
    if !x.rad().is_zero() {
        let l = x.abs_lower();
        let (r, err) = x.rad().div(&l, MAG_BITS);
        out = out.add_error(&r.add(&err));
    }
    Ok(out.add(&RealBall::zero(), prec))
}

/// atan(d) for |d| <= 1.
fn atan_point(d: &Dyadic, prec: u64) -> RealBall {
    let j = halvings(prec, 48).max(2);
    let w = prec + j + GUARD;
    let one = BigInt::one() << w;
    let mut x = to_fixed(d, w);
    for _ in 0..j {
        let s = ((&x * &x) + (&one << w)).sqrt();
        x = (&x << w) / (&one + s);
    }
    let x2 = shr(&x * &x, w);
    let mut p = x;
    let mut sum = BigInt::zero();
    let mut k: u64 = 0;
    while !p.is_zero() {
        let t = &p / (2 * k + 1);
        if k % 2 == 1 {
            sum -= t;
        } else {
            sum += t;
        }
        p = shr(&p * &x2, w);
        k += 1;
    }
    fixed_ball(sum, 4 * k + 16, w).mul_2exp(j as i64)
}

pub fn atan(x: &RealBall, prec: u64) -> Result<RealBall, NumericError> {
    if x.is_exact_zero() {
        return Ok(RealBall::zero());
    }
    let w = prec + GUARD;
    let m = x.mid();
    let out = if m.abs() <= Dyadic::one() {
        atan_point(m, w).add_error(x.rad())
    } else {
        // atan(m) = sign(m) pi/2 - atan(1/m)
        let inv = RealBall::exact(m.clone()).recip(w)?;
        let a = atan_point(inv.mid(), w).add_error(inv.rad());
        let half_pi = pi(w).mul_2exp(-1);
        let base = if m.is_negative() { half_pi.neg() } else { half_pi };
        base.sub(&a, w).add_error(x.rad())
    };
    Ok(out.add(&RealBall::zero(), prec))
}

/// atan2(y, x), the argument of `x + iy`.
pub fn atan2(y: &RealBall, x: &RealBall, prec: u64) -> Result<RealBall, NumericError> {
    let w = prec + 8;
    if y.is_exact_zero() {
        if x.is_positive() {
            return Ok(RealBall::zero());
        }
        if x.is_negative() {
            return Ok(pi(prec));
        }
        if x.is_exact_zero() {
            return Err(NumericError::Domain("argument of zero".into()));
        }
        return Err(exhausted("argument undecided near zero"));
    }
    if x.is_positive() {
        return atan(&y.div(x, w)?, prec);
    }
    if y.is_positive() || y.is_negative() {
        let half_pi = pi(w).mul_2exp(-1);
        let a = atan(&x.div(y, w)?, w)?;
        let base = if y.is_positive() { half_pi } else { half_pi.neg() };
        return Ok(base.sub(&a, prec));
    }
    Err(exhausted("argument undecided at the branch cut"))
}

/// sin and cos of d for |d| <= 1.
fn sin_cos_point(d: &Dyadic, prec: u64) -> (RealBall, RealBall) {
    let t = halvings(prec, 40);
    let w = prec + 2 * t + GUARD;
    let r = to_fixed(&d.mul_2exp(-(t as i64)), w);
    let one = BigInt::one() << w;
    let mut s = BigInt::zero();
    let mut c = BigInt::zero();
    let mut term = one;
    let mut n: u64 = 0;
    while !term.is_zero() {
        match n % 4 {
            0 => c += &term,
            1 => s += &term,
            2 => c -= &term,
            _ => s -= &term,
        }
        n += 1;
        term = shr(&term * &r, w);
        term /= n;
    }
    let ulps = 4 * n + 12;
    let mut sb = fixed_ball(s, ulps, w);
    let mut cb = fixed_ball(c, ulps, w);
    for _ in 0..t {
        let s2 = sb.mul(&cb, w).mul_2exp(1);
        let c2 = cb.sqr(w).sub(&sb.sqr(w), w);
        sb = s2;
        cb = c2;
    }
    (sb, cb)
}

pub fn sin_cos(x: &RealBall, prec: u64) -> Result<(RealBall, RealBall), NumericError> {
    if x.is_exact_zero() {
        return Ok((RealBall::zero(), RealBall::one()));
    }
    let m = x.mid();
    if m.mag() > 40 {
        return Err(exhausted("trigonometric argument too large"));
    }
    let w = prec + GUARD;
    let k = (m.to_f64() / std::f64::consts::FRAC_PI_2).round() as i64;
    let (d, rad) = if k == 0 {
        (m.clone(), x.rad().clone())
    } else {
        let extra = 64 + m.mag().max(0) as u64;
        let hp = pi(w + extra).mul_2exp(-1);
        let y = RealBall::exact(m.clone()).sub(&hp.mul_int(k, w + extra), w + extra);
        (y.mid().clone(), x.rad().add(y.rad()))
    };
    let (s, c) = sin_cos_point(&d, w);
    let (s, c) = match k.rem_euclid(4) {
        0 => (s, c),
        1 => (c, s.neg()),
        2 => (s.neg(), c.neg()),
        _ => (c.neg(), s),
    };
    Ok((
        s.add_error(&rad).add(&RealBall::zero(), prec),
        c.add_error(&rad).add(&RealBall::zero(), prec),
    ))
}

/// (sinh x, cosh x).
pub fn sinh_cosh(x: &RealBall, prec: u64) -> Result<(RealBall, RealBall), NumericError> {
    if x.is_exact_zero() {
        return Ok((RealBall::zero(), RealBall::one()));
    }
    // cancellation in sinh near zero costs roughly -mag(x) bits
    let loss = if x.mid().is_zero() { 0 } else { (-x.mid().mag()).clamp(0, 1 << 20) as u64 };
    let w = prec + GUARD + loss;
    let e = exp(x, w)?;
    let inv = e.recip(w)?;
    let s = e.sub(&inv, w).mul_2exp(-1);
    let c = e.add(&inv, w).mul_2exp(-1);
    Ok((s.add(&RealBall::zero(), prec), c.add(&RealBall::zero(), prec)))
}

pub fn sqrt(x: &RealBall, prec: u64) -> Result<RealBall, NumericError> {
    x.sqrt(prec)
}

// ---------------------------------------------------------------------------
// Complex functions, principal branches.

pub fn cexp(z: &ComplexBall, prec: u64) -> Result<ComplexBall, NumericError> {
    let w = prec + 8;
    let r = exp(&z.re, w)?;
    if z.is_real() {
        return Ok(ComplexBall::real(r.add(&RealBall::zero(), prec)));
    }
    let (s, c) = sin_cos(&z.im, w)?;
    Ok(ComplexBall::new(r.mul(&c, prec), r.mul(&s, prec)))
}

/// Principal logarithm, imaginary part in (-pi, pi].
pub fn cln(z: &ComplexBall, prec: u64) -> Result<ComplexBall, NumericError> {
    if z.is_exact_zero() {
        return Err(NumericError::Domain("logarithm of zero".into()));
    }
    let w = prec + 8;
    if z.is_real() {
        if z.re.is_positive() {
            return Ok(ComplexBall::real(ln(&z.re, prec)?));
        }
        if z.re.is_negative() {
            return Ok(ComplexBall::new(ln(&z.re.neg(), prec)?, pi(prec)));
        }
        return Err(exhausted("logarithm argument contains zero"));
    }
    if z.contains_zero() {
        return Err(exhausted("logarithm argument contains zero"));
    }
    let n = z.norm_sqr(w + 8);
    let re = ln(&n, w)?.mul_2exp(-1);
    let im = atan2(&z.im, &z.re, w)?;
    Ok(ComplexBall::new(
        re.add(&RealBall::zero(), prec),
        im.add(&RealBall::zero(), prec),
    ))
}

/// Principal square root: nonnegative real part, and nonnegative imaginary
/// part on the negative real axis.
pub fn csqrt(z: &ComplexBall, prec: u64) -> Result<ComplexBall, NumericError> {
    let w = prec + 8;
    if z.is_real() {
        if z.re.is_nonnegative() || z.re.is_exact_zero() {
            return Ok(ComplexBall::real(z.re.sqrt(prec)?));
        }
        if z.re.is_negative() {
            return Ok(ComplexBall::new(RealBall::zero(), z.re.neg().sqrt(prec)?));
        }
        // straddles zero: both parts lie in [0, sqrt(|x|)]
        let s = z.re.abs_upper().sqrt_ceil(MAG_BITS).mul_2exp(-1);
        let half = RealBall::new(s.clone(), s);
        return Ok(ComplexBall::new(half.clone(), half));
    }
    let t = z.norm_sqr(w + 8).sqrt(w + 8)?;
    if z.re.is_positive() {
        let u = t.add(&z.re, w).mul_2exp(-1).sqrt(w)?;
        let v = z.im.div(&u.mul_2exp(1), w)?;
        return Ok(ComplexBall::new(
            u.add(&RealBall::zero(), prec),
            v.add(&RealBall::zero(), prec),
        ));
    }
    if z.im.excludes_zero() {
        let mut v = t.sub(&z.re, w).mul_2exp(-1).sqrt(w)?;
        if z.im.is_negative() {
            v = v.neg();
        }
        let u = z.im.div(&v.mul_2exp(1), w)?;
        return Ok(ComplexBall::new(
            u.add(&RealBall::zero(), prec),
            v.add(&RealBall::zero(), prec),
        ));
    }
    if z.re.contains_zero() {
        // near the origin the root lies in a disc of radius sqrt(|z|)
        let s = t.abs_upper().sqrt_ceil(MAG_BITS);
        let re = RealBall::new(s.mul_2exp(-1), s.mul_2exp(-1));
        let im = RealBall::new(Dyadic::zero(), s);
        return Ok(ComplexBall::new(re, im));
    }
    Err(exhausted("square root undecided at the branch cut"))
}

pub fn csin_cos(z: &ComplexBall, prec: u64) -> Result<(ComplexBall, ComplexBall), NumericError> {
    let w = prec + 8;
    let (s, c) = sin_cos(&z.re, w)?;
    if z.is_real() {
        return Ok((ComplexBall::real(s), ComplexBall::real(c)));
    }
    let (sh, ch) = sinh_cosh(&z.im, w)?;
    let sin = ComplexBall::new(s.mul(&ch, prec), c.mul(&sh, prec));
    let cos = ComplexBall::new(c.mul(&ch, prec), s.mul(&sh, prec).neg());
    Ok((sin, cos))
}

pub fn csinh_cosh(z: &ComplexBall, prec: u64) -> Result<(ComplexBall, ComplexBall), NumericError> {
    if z.is_real() {
        let (s, c) = sinh_cosh(&z.re, prec)?;
        return Ok((ComplexBall::real(s), ComplexBall::real(c)));
    }
    let top = z.re.mid().mag().max(z.im.mid().mag());
    let loss = if top == i64::MIN { 0 } else { (-top).clamp(0, 1 << 20) as u64 };
    let w = prec + 8 + loss;
    let e = cexp(z, w)?;
    let inv = e.recip(w)?;
    let s = e.sub(&inv, w).mul_2exp(-1);
    let c = e.add(&inv, w).mul_2exp(-1);
    Ok((s, c))
}

/// asin(z) = -i ln(iz + sqrt(1 - z^2)).
pub fn casin(z: &ComplexBall, prec: u64) -> Result<ComplexBall, NumericError> {
    let w = prec + 16;
    if z.is_real() {
        let x = &z.re;
        let inside = x.abs_upper() <= Dyadic::one();
        if inside {
            let one_minus = RealBall::one().sub(&x.sqr(w), w);
            let s = one_minus.sqrt(w)?;
            return Ok(ComplexBall::real(atan2(x, &s, prec)?));
        }
        if x.abs_lower() <= Dyadic::one() {
            return Err(exhausted("arcsine argument straddles the branch point"));
        }
    }
    let one_minus = ComplexBall::one().sub(&z.mul(z, w), w);
    let s = csqrt(&one_minus, w)?;
    let l = cln(&z.mul_i().add(&s, w), w)?;
    let r = l.mul_i().neg();
    Ok(ComplexBall::new(
        r.re.add(&RealBall::zero(), prec),
        r.im.add(&RealBall::zero(), prec),
    ))
}

/// acos(z) = pi/2 - asin(z).
pub fn cacos(z: &ComplexBall, prec: u64) -> Result<ComplexBall, NumericError> {
    let w = prec + 8;
    let a = casin(z, w)?;
    let hp = ComplexBall::real(pi(w).mul_2exp(-1));
    Ok(hp.sub(&a, prec))
}

/// atan(z) = (i/2) (ln(1 - iz) - ln(1 + iz)).
pub fn catan(z: &ComplexBall, prec: u64) -> Result<ComplexBall, NumericError> {
    if z.is_real() {
        return Ok(ComplexBall::real(atan(&z.re, prec)?));
    }
    let w = prec + 16;
    let iz = z.mul_i();
    let a = cln(&ComplexBall::one().sub(&iz, w), w)?;
    let b = cln(&ComplexBall::one().add(&iz, w), w)?;
    let d = a.sub(&b, w).mul_i().mul_2exp(-1);
    Ok(ComplexBall::new(
        d.re.add(&RealBall::zero(), prec),
        d.im.add(&RealBall::zero(), prec),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use num_traits::Signed;

    /// Independent oracle: e as the sum of 1/k! with exact rationals and the
    /// tail bound 2/(n+1)!.
    fn e_rational(n: u64) -> (BigRational, BigRational) {
        let mut sum = BigRational::zero();
        let mut fact = BigInt::one();
        for k in 0..=n {
            if k > 0 {
                fact *= k;
            }
            sum += BigRational::new(BigInt::one(), fact.clone());
        }
        let tail = BigRational::new(BigInt::from(2), fact * (n + 1));
        (sum, tail)
    }

    #[test]
    fn exp_one_matches_series_oracle() {
        let b = exp(&RealBall::one(), 128).unwrap();
        let (v, tail) = e_rational(60);
        let diff = (b.mid().to_rational() - &v).abs();
        assert!(diff <= b.rad().to_rational() + tail);
        assert!(b.rad().mag() < -100);
    }

    #[test]
    fn pi_digits() {
        let p = pi(200);
        // 3.14159265358979323846264338327950288419716939937510 scaled by 10^50
        let digits: BigInt = "314159265358979323846264338327950288419716939937510"
            .parse()
            .unwrap();
        let approx = BigRational::new(digits, BigInt::from(10).pow(50));
        let diff = (p.mid().to_rational() - approx).abs();
        assert!(diff < BigRational::new(BigInt::one(), BigInt::from(10).pow(49)));
        assert!(p.rad().mag() < -190);
    }

    #[test]
    fn log_of_two_and_six() {
        let l2 = ln(&RealBall::from_int(2), 120).unwrap();
        let c = ln2(120);
        assert!(l2.overlaps(&c));
        let l6 = ln(&RealBall::from_int(6), 120).unwrap();
        let l3 = ln(&RealBall::from_int(3), 120).unwrap();
        let d = l2.add(&l3, 120).sub(&l6, 120);
        assert!(d.contains(&Dyadic::zero()));
        assert!(d.rad().mag() < -100);
        assert!((l6.to_f64() - 6f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn exp_ln_round_trip() {
        for v in [-50i64, -3, 1, 7, 1000] {
            let x = RealBall::from_int(v);
            let y = exp(&x, 100).unwrap();
            let back = ln(&y, 100).unwrap();
            assert!(back.contains(&Dyadic::from_int(v)), "{v}");
            assert!(back.rad().mag() < -80, "{v}: {back:?}");
        }
    }

    #[test]
    fn trig_values() {
        let (s, c) = sin_cos(&RealBall::one(), 100).unwrap();
        assert!((s.to_f64() - 1f64.sin()).abs() < 1e-15);
        assert!((c.to_f64() - 1f64.cos()).abs() < 1e-15);
        let id = s.sqr(100).add(&c.sqr(100), 100);
        assert!(id.contains(&Dyadic::one()));
        let (s, c) = sin_cos(&RealBall::from_int(100), 100).unwrap();
        assert!((s.to_f64() - 100f64.sin()).abs() < 1e-13);
        assert!((c.to_f64() - 100f64.cos()).abs() < 1e-13);
        let p = pi(120);
        let (s, _) = sin_cos(&p, 100).unwrap();
        assert!(s.contains(&Dyadic::zero()));
    }

    #[test]
    fn arctangent() {
        let a = atan(&RealBall::one(), 120).unwrap();
        let q = pi(120).mul_2exp(-2);
        assert!(a.overlaps(&q));
        let a = atan(&RealBall::from_int(-7), 100).unwrap();
        assert!((a.to_f64() - (-7f64).atan()).abs() < 1e-15);
        let h = atan(&RealBall::from_rational(&BigRational::new(1.into(), 2.into()), 100), 100)
            .unwrap();
        assert!((h.to_f64() - 0.5f64.atan()).abs() < 1e-15);
    }

    #[test]
    fn principal_log_of_minus_one() {
        let z = ComplexBall::real(RealBall::from_int(-1));
        let l = cln(&z, 100).unwrap();
        assert!(l.re.contains(&Dyadic::zero()));
        assert!(l.im.overlaps(&pi(100)));
    }

    #[test]
    fn complex_sqrt_and_arcs() {
        let z = ComplexBall::real(RealBall::from_int(-4));
        let r = csqrt(&z, 64).unwrap();
        assert!(r.im.contains(&Dyadic::from_int(2)));
        let w = ComplexBall::new(RealBall::from_int(3), RealBall::from_int(4));
        let r = csqrt(&w, 64).unwrap();
        assert!(r.re.contains(&Dyadic::from_int(2)) && r.im.contains(&Dyadic::one()));
        let w = ComplexBall::new(RealBall::from_int(-3), RealBall::from_int(-4));
        let r = csqrt(&w, 64).unwrap();
        assert!(r.re.contains(&Dyadic::one()) && r.im.contains(&Dyadic::from_int(-2)));
        // asin(2) = pi/2 - i ln(2 + sqrt 3), principal value
        let a = casin(&ComplexBall::real(RealBall::from_int(2)), 80).unwrap();
        assert!((a.re.to_f64() - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
        assert!((a.im.to_f64().abs() - (2f64 + 3f64.sqrt()).ln()).abs() < 1e-12);
        let a = cacos(&ComplexBall::real(RealBall::from_rational(
            &BigRational::new(1.into(), 3.into()),
            80,
        )), 80)
        .unwrap();
        assert!((a.re.to_f64() - (1f64 / 3.0).acos()).abs() < 1e-14);
    }

    #[test]
    fn hyperbolic() {
        let (s, c) = sinh_cosh(&RealBall::one(), 80).unwrap();
        assert!((s.to_f64() - 1f64.sinh()).abs() < 1e-14);
        assert!((c.to_f64() - 1f64.cosh()).abs() < 1e-14);
        let tiny = RealBall::exact(Dyadic::pow2(-60));
        let (s, _) = sinh_cosh(&tiny, 64).unwrap();
        assert!(s.is_positive());
    }
}
