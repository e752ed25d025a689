//! Binary floating-point values `man * 2^exp` with exact add/mul and
//! directed rounding.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    man: BigInt,
    exp: i64,
}

/// Radius arithmetic keeps this many bits and always rounds up.
pub(crate) const MAG_BITS: u64 = 40;

fn pow2(k: u64) -> BigInt {
    BigInt::one() << k
}

impl Dyadic {
    pub fn zero() -> Self {
        Dyadic { man: BigInt::zero(), exp: 0 }
    }

    pub fn one() -> Self {
        Dyadic::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Dyadic::new(BigInt::from(n), 0)
    }

    pub fn new(man: BigInt, exp: i64) -> Self {
        let mut d = Dyadic { man, exp };
        d.normalize();
        d
    }

    /// `2^k`.
    pub fn pow2(k: i64) -> Self {
        Dyadic { man: BigInt::one(), exp: k }
    }

    fn normalize(&mut self) {
        if self.man.is_zero() {
            self.exp = 0;
            return;
        }
        let tz = self.man.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            self.man >>= tz;
            self.exp += tz as i64;
        }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.man
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.man.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.man.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.man.is_positive()
    }

    pub fn signum(&self) -> i32 {
        match self.man.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Self {
        Dyadic { man: self.man.abs(), exp: self.exp }
    }

    /// Position of the leading bit plus one: `2^(mag-1) <= |x| < 2^mag`.
    /// Zero maps to `i64::MIN`.
    pub fn mag(&self) -> i64 {
        if self.is_zero() {
            i64::MIN
        } else {
            self.exp + self.man.bits() as i64
        }
    }

    pub fn mul_2exp(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        Dyadic { man: self.man.clone(), exp: self.exp + k }
    }

    pub fn add(&self, o: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(o.exp);
        let a = &self.man << (self.exp - e) as u64;
        let b = &o.man << (o.exp - e) as u64;
        Dyadic::new(a + b, e)
    }

    pub fn sub(&self, o: &Dyadic) -> Dyadic {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Dyadic {
        Dyadic { man: -&self.man, exp: self.exp }
    }

    pub fn mul(&self, o: &Dyadic) -> Dyadic {
        if self.is_zero() || o.is_zero() {
            return Dyadic::zero();
        }
        Dyadic { man: &self.man * &o.man, exp: self.exp + o.exp }
    }

    /// Rounds to at most `prec` significant bits toward +infinity.
    pub fn round_up(&self, prec: u64) -> Dyadic {
        self.round_dir(prec, true)
    }

    /// Rounds to at most `prec` significant bits toward -infinity.
    pub fn round_down(&self, prec: u64) -> Dyadic {
        self.round_dir(prec, false)
    }

    fn round_dir(&self, prec: u64, up: bool) -> Dyadic {
        let bits = self.man.bits();
        if bits <= prec {
            return self.clone();
        }
        let shift = bits - prec;
        // floor division by 2^shift
        let q = self.man.clone() >> shift;
        let q = if up { q + 1 } else { q };
        Dyadic::new(q, self.exp + shift as i64)
    }

    /// Rounds to nearest with `prec` bits; returns the rounded value and an
    /// upper bound on the absolute rounding error (zero when exact).
    pub fn round(&self, prec: u64) -> (Dyadic, Dyadic) {
        let bits = self.man.bits();
        if bits <= prec {
            return (self.clone(), Dyadic::zero());
        }
        let shift = bits - prec;
        let q = (self.man.clone() + (BigInt::one() << (shift - 1))) >> shift;
        let r = Dyadic::new(q, self.exp + shift as i64);
        let err = Dyadic::pow2(self.exp + shift as i64 - 1);
        (r, err)
    }

    /// Quotient rounded to `prec` bits, with an error bound.
    pub fn div(&self, o: &Dyadic, prec: u64) -> (Dyadic, Dyadic) {
        assert!(!o.is_zero(), "dyadic division by zero");
        if self.is_zero() {
            return (Dyadic::zero(), Dyadic::zero());
        }
        let extra = prec as i64 + 2 + o.man.bits() as i64 - self.man.bits() as i64;
        let s = extra.max(0) as u64;
        let num = &self.man << s;
        let (q, r) = num.div_rem(&o.man);
        let exp = self.exp - o.exp - s as i64;
        let err = if r.is_zero() { Dyadic::zero() } else { Dyadic::pow2(exp) };
        let (rq, rerr) = Dyadic::new(q, exp).round(prec);
        (rq, err.add(&rerr))
    }

    /// Square root of a nonnegative value rounded down to `prec` bits.
    pub fn sqrt_floor(&self, prec: u64) -> Dyadic {
        assert!(!self.is_negative(), "sqrt of negative dyadic");
        if self.is_zero() {
            return Dyadic::zero();
        }
        // want man * 2^exp = M * 2^(2k) with M having >= 2*prec bits
        let mut shift = 2 * prec as i64 + 2 - self.man.bits() as i64;
        shift = shift.max(0);
        if (self.exp - shift).rem_euclid(2) != 0 {
            shift += 1;
        }
        let m = &self.man << shift as u64;
        let r = m.sqrt();
        Dyadic::new(r, (self.exp - shift) / 2)
    }

    /// Square root rounded up.
    pub fn sqrt_ceil(&self, prec: u64) -> Dyadic {
        let f = self.sqrt_floor(prec);
        if f.mul(&f) == *self {
            f
        } else {
            f.add(&Dyadic::pow2(f.exp.min(f.mag() - prec as i64)))
        }
    }

    /// Exact conversion of a finite double.
    pub fn from_f64(x: f64) -> Dyadic {
        if x == 0.0 || !x.is_finite() {
            return Dyadic::zero();
        }
        let bits = x.to_bits();
        let sign = if bits >> 63 == 1 { -1i64 } else { 1 };
        let exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = (bits & ((1u64 << 52) - 1)) as i64;
        let (m, e) = if exp == 0 {
            (frac, -1074)
        } else {
            (frac | (1i64 << 52), exp - 1075)
        };
        Dyadic::new(BigInt::from(sign * m), e)
    }

    pub fn from_rational(q: &BigRational, prec: u64) -> (Dyadic, Dyadic) {
        let n = Dyadic::new(q.numer().clone(), 0);
        let d = Dyadic::new(q.denom().clone(), 0);
        n.div(&d, prec)
    }

    pub fn from_rational_exact(q: &BigRational) -> Option<Dyadic> {
        let d = q.denom();
        if d.is_one() {
            return Some(Dyadic::new(q.numer().clone(), 0));
        }
        let tz = d.trailing_zeros()?;
        if (d >> tz).is_one() {
            Some(Dyadic::new(q.numer().clone(), -(tz as i64)))
        } else {
            None
        }
    }

    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.man << self.exp as u64)
        } else {
            BigRational::new(self.man.clone(), pow2((-self.exp) as u64))
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.man.bits() as i64;
        let keep = 60i64;
        let (m, e) = if bits > keep {
            (&self.man >> (bits - keep) as u64, self.exp + bits - keep)
        } else {
            (self.man.clone(), self.exp)
        };
        let mf = m.to_f64().unwrap_or(0.0);
        if e > 2000 {
            return mf.signum() * f64::INFINITY;
        }
        if e < -2000 {
            return 0.0;
        }
        // Split the scaling so the first step stays in the normal range and only the last one rounds.
        let e = e as i32;
        let first = e.clamp(-1000, 1000);
        mf * 2f64.powi(first) * 2f64.powi(e - first)
    }

    /// Floor of the value as an integer.
    pub fn floor(&self) -> BigInt {
        if self.exp >= 0 {
            &self.man << self.exp as u64
        } else {
            self.man.clone() >> (-self.exp) as u64
        }
    }
}

impl Ord for Dyadic {
    fn cmp(&self, o: &Self) -> Ordering {
        let d = self.sub(o);
        d.man.sign().cmp(&Sign::NoSign)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*2^{}", self.man, self.exp)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}", self.to_f64())
    }
}

/// Upper bound rounding used for radii.
pub(crate) fn mag_up(d: &Dyadic) -> Dyadic {
    d.abs().round_up(MAG_BITS)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_brackets_value() {
        let x = Dyadic::new(BigInt::from(0b1011_0111), -3);
        let up = x.round_up(3);
        let down = x.round_down(3);
        assert!(down <= x && x <= up);
        let (n, err) = x.round(3);
        assert!(n.sub(&x).abs() <= err);
    }

    #[test]
    fn division_error_bound() {
        let one = Dyadic::one();
        let three = Dyadic::from_int(3);
        let (q, err) = one.div(&three, 64);
        let exact = BigRational::new(1.into(), 3.into());
        let diff = (q.to_rational() - exact).abs();
        assert!(diff <= err.to_rational());
        assert!(err.to_rational() < BigRational::new(1.into(), pow2(60)));
    }

    #[test]
    fn doubles_convert_exactly() {
        for x in [0.5, -3.25, 1e-300, 123456.789] {
            assert_eq!(Dyadic::from_f64(x).to_f64(), x);
        }
    }

    #[test]
    fn square_roots() {
        let two = Dyadic::from_int(2);
        let lo = two.sqrt_floor(80);
        let hi = two.sqrt_ceil(80);
        assert!(lo.mul(&lo) <= two && two <= hi.mul(&hi));
        assert_eq!(Dyadic::from_int(9).sqrt_floor(10), Dyadic::from_int(3));
    }
}
