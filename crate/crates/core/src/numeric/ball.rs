//! Real and complex balls with rigorous radius bounds.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::dyadic::{mag_up, Dyadic, MAG_BITS};
use super::NumericError;

/// Closed interval `[mid - rad, mid + rad]`.
#[derive(Clone, PartialEq, Eq)]
pub struct RealBall {
    mid: Dyadic,
    rad: Dyadic,
}

impl RealBall {
    pub fn new(mid: Dyadic, rad: Dyadic) -> Self {
        RealBall { mid, rad: mag_up(&rad) }
    }

    pub fn exact(mid: Dyadic) -> Self {
        RealBall { mid, rad: Dyadic::zero() }
    }

    pub fn zero() -> Self {
        RealBall::exact(Dyadic::zero())
    }

    pub fn one() -> Self {
        RealBall::exact(Dyadic::one())
    }

    pub fn from_int(n: i64) -> Self {
        RealBall::exact(Dyadic::from_int(n))
    }

    pub fn from_bigint(n: &BigInt) -> Self {
        RealBall::exact(Dyadic::new(n.clone(), 0))
    }

    pub fn from_rational(q: &BigRational, prec: u64) -> Self {
        if let Some(d) = Dyadic::from_rational_exact(q) {
            return RealBall::exact(d);
        }
        let (mid, err) = Dyadic::from_rational(q, prec);
        RealBall::new(mid, err)
    }

    /// Ball from a rounded value and the pre-existing error, rounding the
    /// midpoint to `prec` bits.
    fn rounded(value: Dyadic, rad: Dyadic, prec: u64) -> Self {
        let (mid, err) = value.round(prec);
        RealBall::new(mid, rad.add(&err))
    }

    pub fn mid(&self) -> &Dyadic {
        &self.mid
    }

    pub fn rad(&self) -> &Dyadic {
        &self.rad
    }

    pub fn is_exact(&self) -> bool {
        self.rad.is_zero()
    }

    pub fn is_exact_zero(&self) -> bool {
        self.rad.is_zero() && self.mid.is_zero()
    }

    pub fn lower(&self) -> Dyadic {
        self.mid.sub(&self.rad)
    }

    pub fn upper(&self) -> Dyadic {
        self.mid.add(&self.rad)
    }

    pub fn is_positive(&self) -> bool {
        self.lower().is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.upper().is_negative()
    }

    pub fn is_nonnegative(&self) -> bool {
        !self.lower().is_negative()
    }

    pub fn excludes_zero(&self) -> bool {
        self.is_positive() || self.is_negative()
    }

    pub fn contains_zero(&self) -> bool {
        !self.excludes_zero()
    }

    pub fn contains(&self, x: &Dyadic) -> bool {
        self.mid.sub(x).abs() <= self.rad
    }

    pub fn contains_rational(&self, q: &BigRational) -> bool {
        let d = self.mid.to_rational() - q;
        let d = if d < BigRational::from_integer(0.into()) { -d } else { d };
        d <= self.rad.to_rational()
    }

    pub fn overlaps(&self, o: &RealBall) -> bool {
        self.mid.sub(&o.mid).abs() <= self.rad.add(&o.rad)
    }

    /// Largest absolute value in the ball.
    pub fn abs_upper(&self) -> Dyadic {
        mag_up(&self.mid.abs().add(&self.rad))
    }

    /// Smallest absolute value in the ball, or zero if it contains zero.
    pub fn abs_lower(&self) -> Dyadic {
        let l = self.mid.abs().sub(&self.rad);
        if l.is_positive() {
            l.round_down(MAG_BITS)
        } else {
            Dyadic::zero()
        }
    }

    pub fn neg(&self) -> Self {
        RealBall { mid: self.mid.neg(), rad: self.rad.clone() }
    }

    pub fn abs(&self) -> Self {
        if self.mid.is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    pub fn add_error(&self, e: &Dyadic) -> Self {
        RealBall::new(self.mid.clone(), self.rad.add(e))
    }

    pub fn add(&self, o: &RealBall, prec: u64) -> Self {
        RealBall::rounded(self.mid.add(&o.mid), self.rad.add(&o.rad), prec)
    }

    pub fn sub(&self, o: &RealBall, prec: u64) -> Self {
        self.add(&o.neg(), prec)
    }

    pub fn mul(&self, o: &RealBall, prec: u64) -> Self {
        let am = mag_up(&self.mid);
        let bm = mag_up(&o.mid);
        let rad = am
            .mul(&o.rad)
            .add(&bm.mul(&self.rad))
            .add(&self.rad.mul(&o.rad));
        RealBall::rounded(self.mid.mul(&o.mid), rad, prec)
    }

    pub fn sqr(&self, prec: u64) -> Self {
        self.mul(self, prec)
    }

    pub fn mul_2exp(&self, k: i64) -> Self {
        RealBall { mid: self.mid.mul_2exp(k), rad: self.rad.mul_2exp(k) }
    }

    pub fn mul_int(&self, n: i64, prec: u64) -> Self {
        self.mul(&RealBall::from_int(n), prec)
    }

    pub fn div_int(&self, n: i64, prec: u64) -> Self {
        let d = Dyadic::from_int(n);
        let (q, err) = self.mid.div(&d, prec);
        let (r, rerr) = self.rad.div(&d.abs(), MAG_BITS);
        RealBall::new(q, err.add(&r).add(&rerr))
    }

    /// Reciprocal; fails when the ball contains zero.
    pub fn recip(&self, prec: u64) -> Result<Self, NumericError> {
        if self.is_exact_zero() {
            return Err(NumericError::Domain("division by zero".into()));
        }
        if self.contains_zero() {
            return Err(NumericError::PrecisionExhausted(
                "divisor ball contains zero".into(),
            ));
        }
        let (q, err) = Dyadic::one().div(&self.mid, prec);
        if self.rad.is_zero() {
            return Ok(RealBall::new(q, err));
        }
        let m = self.mid.abs().round_down(MAG_BITS);
        let l = self.abs_lower();
        let (r, rerr) = self.rad.div(&m.mul(&l), MAG_BITS);
        Ok(RealBall::new(q, err.add(&r).add(&rerr)))
    }

    pub fn div(&self, o: &RealBall, prec: u64) -> Result<Self, NumericError> {
        Ok(self.mul(&o.recip(prec + 8)?, prec))
    }

    /// Square root of a ball lying in `[0, inf)`. A ball straddling zero is
    /// treated as its nonnegative part.
    pub fn sqrt(&self, prec: u64) -> Result<Self, NumericError> {
        if self.is_negative() {
            return Err(NumericError::Domain("square root of negative real".into()));
        }
        if self.is_exact_zero() {
            return Ok(RealBall::zero());
        }
        if !self.is_positive() {
            let hi = self.upper().round_up(MAG_BITS).sqrt_ceil(MAG_BITS);
            let half = hi.mul_2exp(-1);
            return Ok(RealBall::new(half.clone(), half));
        }
        let s = self.mid.sqrt_floor(prec);
        let mut err = Dyadic::pow2(s.mag() - prec as i64);
        if !self.rad.is_zero() {
            let lo = s.round_down(MAG_BITS);
            let (r, rerr) = self.rad.div(&lo, MAG_BITS);
            err = err.add(&r).add(&rerr);
        }
        Ok(RealBall::new(s, err))
    }

    pub fn to_f64(&self) -> f64 {
        self.mid.to_f64()
    }

    /// Working-precision estimate: how many correct leading bits the ball has.
    pub fn rel_accuracy_bits(&self) -> i64 {
        if self.rad.is_zero() {
            return i64::MAX;
        }
        if self.mid.is_zero() {
            return i64::MIN;
        }
        self.mid.mag() - self.rad.mag()
    }
}

impl fmt::Debug for RealBall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} +/- {}]", self.mid, self.rad)
    }
}

impl fmt::Display for RealBall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A complex enclosure stored as a pair of real balls (a rectangle). Real
/// values keep an exactly-zero imaginary part so branch decisions stay exact.
#[derive(Clone, PartialEq, Eq)]
pub struct ComplexBall {
    pub re: RealBall,
    pub im: RealBall,
}

impl ComplexBall {
    pub fn new(re: RealBall, im: RealBall) -> Self {
        ComplexBall { re, im }
    }

    pub fn real(re: RealBall) -> Self {
        ComplexBall { re, im: RealBall::zero() }
    }

    pub fn zero() -> Self {
        ComplexBall::real(RealBall::zero())
    }

    pub fn one() -> Self {
        ComplexBall::real(RealBall::one())
    }

    pub fn i() -> Self {
        ComplexBall::new(RealBall::zero(), RealBall::one())
    }

    /// True when the imaginary part is exactly zero.
    pub fn is_real(&self) -> bool {
        self.im.is_exact_zero()
    }

    pub fn is_exact_zero(&self) -> bool {
        self.re.is_exact_zero() && self.im.is_exact_zero()
    }

    pub fn center(&self) -> (Dyadic, Dyadic) {
        (self.re.mid().clone(), self.im.mid().clone())
    }

    /// Upper bound on the distance from the center to any enclosed point.
    pub fn radius(&self) -> Dyadic {
        mag_up(&self.re.rad().add(self.im.rad()))
    }

    pub fn excludes_zero(&self) -> bool {
        self.re.excludes_zero() || self.im.excludes_zero()
    }

    pub fn contains_zero(&self) -> bool {
        !self.excludes_zero()
    }

    pub fn overlaps(&self, o: &ComplexBall) -> bool {
        self.re.overlaps(&o.re) && self.im.overlaps(&o.im)
    }

    pub fn contains_rational(&self, q: &BigRational) -> bool {
        self.re.contains_rational(q) && self.im.contains(&Dyadic::zero())
    }

    pub fn neg(&self) -> Self {
        ComplexBall::new(self.re.neg(), self.im.neg())
    }

    pub fn conj(&self) -> Self {
        ComplexBall::new(self.re.clone(), self.im.neg())
    }

    pub fn add(&self, o: &ComplexBall, prec: u64) -> Self {
        ComplexBall::new(self.re.add(&o.re, prec), self.im.add(&o.im, prec))
    }

    pub fn sub(&self, o: &ComplexBall, prec: u64) -> Self {
        self.add(&o.neg(), prec)
    }

    pub fn mul(&self, o: &ComplexBall, prec: u64) -> Self {
        if self.is_real() && o.is_real() {
            return ComplexBall::real(self.re.mul(&o.re, prec));
        }
        if o.is_real() {
            return ComplexBall::new(self.re.mul(&o.re, prec), self.im.mul(&o.re, prec));
        }
        if self.is_real() {
            return o.mul(self, prec);
        }
        let re = self.re.mul(&o.re, prec).sub(&self.im.mul(&o.im, prec), prec);
        let im = self.re.mul(&o.im, prec).add(&self.im.mul(&o.re, prec), prec);
        ComplexBall::new(re, im)
    }

    pub fn mul_real(&self, r: &RealBall, prec: u64) -> Self {
        ComplexBall::new(self.re.mul(r, prec), self.im.mul(r, prec))
    }

    /// Multiplication by `i`.
    pub fn mul_i(&self) -> Self {
        ComplexBall::new(self.im.neg(), self.re.clone())
    }

    pub fn mul_2exp(&self, k: i64) -> Self {
        ComplexBall::new(self.re.mul_2exp(k), self.im.mul_2exp(k))
    }

    pub fn norm_sqr(&self, prec: u64) -> RealBall {
        self.re.sqr(prec).add(&self.im.sqr(prec), prec)
    }

    pub fn recip(&self, prec: u64) -> Result<Self, NumericError> {
        if self.is_real() {
            return Ok(ComplexBall::real(self.re.recip(prec)?));
        }
        if self.is_exact_zero() {
            return Err(NumericError::Domain("division by zero".into()));
        }
        let d = self.norm_sqr(prec + 8);
        let inv = d.recip(prec + 8)?;
        Ok(self.conj().mul_real(&inv, prec))
    }

    pub fn div(&self, o: &ComplexBall, prec: u64) -> Result<Self, NumericError> {
        Ok(self.mul(&o.recip(prec + 8)?, prec))
    }

    /// `self^n` for an integer `n`.
    pub fn powi(&self, n: &BigInt, prec: u64) -> Result<Self, NumericError> {
        use num_traits::{Signed, Zero};
        if n.is_zero() {
            return Ok(ComplexBall::one());
        }
        let bits = n.bits();
        if bits > 32 {
            return Err(NumericError::PrecisionExhausted("exponent too large".into()));
        }
        let w = prec + bits + 4;
        let mut base = if n.is_negative() { self.recip(w)? } else { self.clone() };
        let mut e: u64 = n.abs().try_into().unwrap_or(0);
        let mut acc = ComplexBall::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, w);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, w);
            }
        }
        Ok(acc)
    }
}

impl fmt::Debug for ComplexBall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_real() {
            write!(f, "{:?}", self.re)
        } else {
            write!(f, "{:?} + {:?}*i", self.re, self.im)
        }
    }
}

impl fmt::Display for ComplexBall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}
