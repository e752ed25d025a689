//! Complex root isolation with certified inclusion boxes.
//!
//! Approximations come from simultaneous (Aberth) iteration on dyadic
//! floats. Every box is then certified: a disc of radius n|f(z)|/|f'(z)|
//! around any z contains a root, so n pairwise disjoint such squares hold
//! exactly one root each. A square meeting the real axis is shrunk to a real
//! interval when f changes sign across it.

use std::cell::RefCell;
use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::poly::{self, ZPoly};
use super::AlgebraicError;
use crate::numeric::{ComplexBall, Dyadic, RealBall};

/// Axis-aligned rectangle with rational corners. Real roots have the
/// degenerate imaginary range `[0, 0]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RootBox {
    pub re_lo: BigRational,
    pub re_hi: BigRational,
    pub im_lo: BigRational,
    pub im_hi: BigRational,
}

impl RootBox {
    pub fn point(q: BigRational) -> Self {
        RootBox {
            re_lo: q.clone(),
            re_hi: q,
            im_lo: BigRational::zero(),
            im_hi: BigRational::zero(),
        }
    }

    pub fn is_real(&self) -> bool {
        self.im_lo.is_zero() && self.im_hi.is_zero()
    }

    pub fn width(&self) -> BigRational {
        let w = &self.re_hi - &self.re_lo;
        let h = &self.im_hi - &self.im_lo;
        if w > h {
            w
        } else {
            h
        }
    }

    pub fn overlaps(&self, o: &RootBox) -> bool {
        self.re_lo <= o.re_hi && o.re_lo <= self.re_hi && self.im_lo <= o.im_hi && o.im_lo <= self.im_hi
    }

    pub fn contains_box(&self, o: &RootBox) -> bool {
        self.re_lo <= o.re_lo && o.re_hi <= self.re_hi && self.im_lo <= o.im_lo && o.im_hi <= self.im_hi
    }

    /// Enclosing ball at `prec` bits.
    pub fn to_ball(&self, prec: u64) -> ComplexBall {
        let two = BigRational::from_integer(2.into());
        let re = interval_ball(&self.re_lo, &self.re_hi, &two, prec);
        let im = if self.is_real() {
            RealBall::zero()
        } else {
            interval_ball(&self.im_lo, &self.im_hi, &two, prec)
        };
        ComplexBall::new(re, im)
    }

    pub fn overlaps_ball(&self, b: &ComplexBall) -> bool {
        let lo = |x: &RealBall| x.lower().to_rational();
        let hi = |x: &RealBall| x.upper().to_rational();
        self.re_lo <= hi(&b.re)
            && lo(&b.re) <= self.re_hi
            && self.im_lo <= hi(&b.im)
            && lo(&b.im) <= self.im_hi
    }
}

fn interval_ball(lo: &BigRational, hi: &BigRational, two: &BigRational, prec: u64) -> RealBall {
    let mid = (lo + hi) / two;
    let half = (hi - lo) / two;
    let m = RealBall::from_rational(&mid, prec);
    let (h, err) = Dyadic::from_rational(&half, 64);
    m.add_error(&h.abs().add(&err))
}

/// Complex dyadic float used for the (uncertified) iterations.
#[derive(Clone, Debug)]
struct Cf {
    re: Dyadic,
    im: Dyadic,
}

impl Cf {
    fn new(re: Dyadic, im: Dyadic) -> Self {
        Cf { re, im }
    }
    fn zero() -> Self {
        Cf::new(Dyadic::zero(), Dyadic::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn add(&self, o: &Cf, p: u64) -> Cf {
        Cf::new(self.re.add(&o.re).round(p).0, self.im.add(&o.im).round(p).0)
    }
    fn sub(&self, o: &Cf, p: u64) -> Cf {
        Cf::new(self.re.sub(&o.re).round(p).0, self.im.sub(&o.im).round(p).0)
    }
    fn mul(&self, o: &Cf, p: u64) -> Cf {
        let re = self.re.mul(&o.re).sub(&self.im.mul(&o.im));
        let im = self.re.mul(&o.im).add(&self.im.mul(&o.re));
        Cf::new(re.round(p).0, im.round(p).0)
    }
    fn div(&self, o: &Cf, p: u64) -> Option<Cf> {
        let d = o.re.mul(&o.re).add(&o.im.mul(&o.im));
        if d.is_zero() {
            return None;
        }
        let re = self.re.mul(&o.re).add(&self.im.mul(&o.im));
        let im = self.im.mul(&o.re).sub(&self.re.mul(&o.im));
        Some(Cf::new(re.div(&d, p).0, im.div(&d, p).0))
    }
    fn mag(&self) -> i64 {
        self.re.mag().max(self.im.mag())
    }
}

fn horner_cf(f: &[Dyadic], z: &Cf, p: u64) -> (Cf, Cf) {
    let mut v = Cf::zero();
    let mut d = Cf::zero();
    for c in f.iter().rev() {
        d = d.mul(z, p).add(&v, p);
        v = v.mul(z, p).add(&Cf::new(c.clone(), Dyadic::zero()), p);
    }
    (v, d)
}

/// Rigorous enclosure of f(z) and f'(z) at an exact point.
fn horner_ball(f: &ZPoly, z: &Cf, p: u64) -> (ComplexBall, ComplexBall) {
    let zb = ComplexBall::new(RealBall::exact(z.re.clone()), RealBall::exact(z.im.clone()));
    let mut v = ComplexBall::zero();
    let mut d = ComplexBall::zero();
    for c in f.iter().rev() {
        d = d.mul(&zb, p).add(&v, p);
        v = v.mul(&zb, p).add(&ComplexBall::real(RealBall::from_bigint(c)), p);
    }
    (v, d)
}

/// Radius of a disc around z guaranteed to contain a root, or None.
fn inclusion_radius(f: &ZPoly, z: &Cf, p: u64) -> Option<Dyadic> {
    let n = poly::deg(f) as i64;
    let (v, d) = horner_ball(f, z, p);
    let num = v.re.abs_upper().add(&v.im.abs_upper());
    if num.is_zero() {
        return Some(Dyadic::zero());
    }
    let den = {
        let a = d.re.abs_lower();
        let b = d.im.abs_lower();
        if a > b {
            a
        } else {
            b
        }
    };
    if den.is_zero() {
        return None;
    }
    let (q, err) = num.mul(&Dyadic::from_int(n)).div(&den, 40);
    Some(q.add(&err).round_up(40))
}

fn initial_guesses(f: &ZPoly) -> Vec<Cf> {
    let n = poly::deg(f);
    let lead = f[n].bits() as f64;
    let mut e = f64::MIN;
    for k in 1..=n {
        let c = &f[n - k];
        if c.is_zero() {
            continue;
        }
        e = e.max((c.bits() as f64 - lead + 1.0) / k as f64);
    }
    let r = 2f64.powf(e.clamp(-60.0, 900.0));
    (0..n)
        .map(|k| {
            let th = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.7;
            Cf::new(Dyadic::from_f64(r * th.cos()), Dyadic::from_f64(r * th.sin()))
        })
        .collect()
}

fn aberth(f: &ZPoly, zs: &mut [Cf], p: u64) {
    let fd: Vec<Dyadic> = f.iter().map(|c| Dyadic::new(c.clone(), 0).round(p).0).collect();
    let n = zs.len();
    let one = Cf::new(Dyadic::one(), Dyadic::zero());
    for _ in 0..(200 + 20 * n) {
        let mut done = true;
        for k in 0..n {
            let (v, d) = horner_cf(&fd, &zs[k], p);
            if v.is_zero() {
                continue;
            }
            let Some(nk) = v.div(&d, p) else {
                // nudge off a critical point
                zs[k].re = zs[k].re.add(&Dyadic::pow2(zs[k].mag().max(0) - 20));
                done = false;
                continue;
            };
            let mut s = Cf::zero();
            for j in 0..n {
                if j != k {
                    if let Some(t) = one.div(&zs[k].sub(&zs[j], p), p) {
                        s = s.add(&t, p);
                    }
                }
            }
            let denom = one.sub(&nk.mul(&s, p), p);
            let w = nk.div(&denom, p).unwrap_or(nk);
            let scale = zs[k].mag().max(0);
            if w.mag() > scale - (p as i64 - 12) {
                done = false;
            }
            zs[k] = zs[k].sub(&w, p);
        }
        if done {
            break;
        }
    }
}

fn dyadic_q(d: &Dyadic) -> BigRational {
    d.to_rational()
}

/// Attempts certification of the approximations; None asks for more precision.
fn certify(f: &ZPoly, zs: &[Cf], p: u64) -> Option<Vec<RootBox>> {
    let n = zs.len();
    let eval_prec = p + 64;
    let mut squares: Vec<(Cf, Dyadic, bool)> = Vec::with_capacity(n);
    for z in zs {
        let scale = z.mag().max(0);
        let near_axis = z.im.is_zero() || z.im.mag() < scale - (p as i64) / 2;
        let mut chosen = None;
        if near_axis {
            let zr = Cf::new(z.re.clone(), Dyadic::zero());
            if let Some(r) = inclusion_radius(f, &zr, eval_prec) {
                let lo = dyadic_q(&zr.re.sub(&r));
                let hi = dyadic_q(&zr.re.add(&r));
                let sl = poly::sign_at(f, &lo);
                let sh = poly::sign_at(f, &hi);
                if r.is_zero() || (sl * sh < 0) {
                    chosen = Some((zr, r, true));
                }
            }
        }
        if chosen.is_none() {
            let r = inclusion_radius(f, z, eval_prec)?;
            if z.im.abs() <= r {
                return None;
            }
            chosen = Some((z.clone(), r, false));
        }
        squares.push(chosen.unwrap());
    }
    for j in 0..n {
        for k in j + 1..n {
            let (a, ra, _) = &squares[j];
            let (b, rb, _) = &squares[k];
            let sep = ra.add(rb);
            let apart = a.re.sub(&b.re).abs() > sep || a.im.sub(&b.im).abs() > sep;
            if !apart {
                return None;
            }
        }
    }
    let mut boxes: Vec<RootBox> = squares
        .iter()
        .map(|(z, r, real)| {
            let re_lo = dyadic_q(&z.re.sub(r));
            let re_hi = dyadic_q(&z.re.add(r));
            if *real {
                RootBox { re_lo, re_hi, im_lo: BigRational::zero(), im_hi: BigRational::zero() }
            } else {
                RootBox {
                    re_lo,
                    re_hi,
                    im_lo: dyadic_q(&z.im.sub(r)),
                    im_hi: dyadic_q(&z.im.add(r)),
                }
            }
        })
        .collect();
    boxes.sort_by(|a, b| {
        b.is_real()
            .cmp(&a.is_real())
            .then_with(|| a.re_lo.cmp(&b.re_lo))
            .then_with(|| a.im_lo.cmp(&b.im_lo))
    });
    Some(boxes)
}

const MAX_ISOLATION_PREC: u64 = 1 << 15;

fn isolate_uncached(f: &ZPoly) -> Result<Vec<RootBox>, AlgebraicError> {
    let n = poly::deg(f);
    if n == 0 {
        return Ok(Vec::new());
    }
    if n == 1 {
        return Ok(vec![RootBox::point(BigRational::new(-f[0].clone(), f[1].clone()))]);
    }
    let mut zs = initial_guesses(f);
    let mut p = 96u64.max(poly::max_coeff_bits(f) / 2 + 64);
    while p <= MAX_ISOLATION_PREC {
        aberth(f, &mut zs, p);
        if let Some(b) = certify(f, &zs, p) {
            return Ok(b);
        }
        p *= 2;
    }
    Err(AlgebraicError::Inconclusive("root isolation did not converge".into()))
}

thread_local! {
    static ISOLATED: RefCell<HashMap<ZPoly, Vec<RootBox>>> = RefCell::new(HashMap::new());
}

/// Isolating boxes for all roots of a squarefree polynomial, real roots
/// first in increasing order. Deterministic for a given polynomial.
pub fn isolate(f: &ZPoly) -> Result<Vec<RootBox>, AlgebraicError> {
    if let Some(v) = ISOLATED.with(|c| c.borrow().get(f).cloned()) {
        return Ok(v);
    }
    let v = isolate_uncached(f)?;
    ISOLATED.with(|c| {
        let mut c = c.borrow_mut();
        if c.len() > 4096 {
            c.clear();
        }
        c.insert(f.clone(), v.clone());
    });
    Ok(v)
}

fn center(b: &RootBox, p: u64) -> Cf {
    let two = BigRational::from_integer(2.into());
    let re = Dyadic::from_rational(&((&b.re_lo + &b.re_hi) / &two), p).0;
    let im = if b.is_real() {
        Dyadic::zero()
    } else {
        Dyadic::from_rational(&((&b.im_lo + &b.im_hi) / &two), p).0
    };
    Cf::new(re, im)
}

fn newton(f: &ZPoly, z: &mut Cf, p: u64, steps: usize) {
    let fd: Vec<Dyadic> = f.iter().map(|c| Dyadic::new(c.clone(), 0).round(p).0).collect();
    for _ in 0..steps {
        let (v, d) = horner_cf(&fd, z, p);
        match v.div(&d, p) {
            Some(w) if !w.is_zero() => *z = z.sub(&w, p),
            _ => break,
        }
    }
}

/// Shrinks an isolating box of a root of the squarefree `f` until its width
/// is at most `2^-bits`.
pub fn refine(f: &ZPoly, b: &RootBox, bits: u64) -> Result<RootBox, AlgebraicError> {
    let target = BigRational::new(1.into(), BigInt::from(1) << bits);
    if b.width() <= target {
        return Ok(b.clone());
    }
    if b.is_real() {
        return refine_real(f, b, bits, &target);
    }
    let mut p = bits + 64;
    let mut z = center(b, p);
    for _ in 0..8 {
        newton(f, &mut z, p, 8 + (p as f64).log2() as usize);
        if let Some(r) = inclusion_radius(f, &z, p + 64) {
            let nb = RootBox {
                re_lo: dyadic_q(&z.re.sub(&r)),
                re_hi: dyadic_q(&z.re.add(&r)),
                im_lo: dyadic_q(&z.im.sub(&r)),
                im_hi: dyadic_q(&z.im.add(&r)),
            };
            if b.contains_box(&nb) && nb.width() <= target {
                return Ok(nb);
            }
        }
        p *= 2;
        z = center(b, p);
    }
    Err(AlgebraicError::Inconclusive("complex root refinement failed".into()))
}

fn refine_real(
    f: &ZPoly,
    b: &RootBox,
    bits: u64,
    target: &BigRational,
) -> Result<RootBox, AlgebraicError> {
    let mut lo = b.re_lo.clone();
    let mut hi = b.re_hi.clone();
    let slo = poly::sign_at(f, &lo);
    if slo == 0 {
        return Ok(RootBox::point(lo));
    }
    if poly::sign_at(f, &hi) == 0 {
        return Ok(RootBox::point(hi));
    }
    // Newton first, certified by a sign change inside the current interval
    let p = bits + 64;
    let mut z = center(b, p);
    newton(f, &mut z, p, 8 + (p as f64).log2() as usize);
    if let Some(r) = inclusion_radius(f, &z, p + 64) {
        let nlo = dyadic_q(&z.re.sub(&r));
        let nhi = dyadic_q(&z.re.add(&r));
        if nlo >= lo && nhi <= hi {
            let sl = poly::sign_at(f, &nlo);
            let sh = poly::sign_at(f, &nhi);
            if sl * sh < 0 || r.is_zero() {
                lo = nlo;
                hi = nhi;
            }
        }
    }
    let two = BigRational::from_integer(2.into());
    let slo = poly::sign_at(f, &lo);
    while &hi - &lo > *target {
        let mid = (&lo + &hi) / &two;
        let sm = poly::sign_at(f, &mid);
        if sm == 0 {
            return Ok(RootBox::point(mid));
        }
        if sm == slo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(RootBox { re_lo: lo, re_hi: hi, im_lo: BigRational::zero(), im_hi: BigRational::zero() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebraic::poly::zpoly_from_i64;

    #[test]
    fn isolates_sqrt_two_and_i() {
        let b = isolate(&zpoly_from_i64(&[-2, 0, 1])).unwrap();
        assert_eq!(b.len(), 2);
        assert!(b.iter().all(|x| x.is_real()));
        assert!(b[0].re_hi < BigRational::zero() && b[1].re_lo > BigRational::zero());
        let c = isolate(&zpoly_from_i64(&[1, 0, 1])).unwrap();
        assert_eq!(c.len(), 2);
        assert!(c.iter().all(|x| !x.is_real()));
    }

    #[test]
    fn refinement_reaches_width() {
        let f = zpoly_from_i64(&[-2, 0, 1]);
        let b = isolate(&f).unwrap();
        let r = refine(&f, &b[1], 200).unwrap();
        let s = r.to_ball(220);
        assert!((s.re.to_f64() - 2f64.sqrt()).abs() < 1e-15);
        assert!(s.re.rad().mag() < -195);
        let g = zpoly_from_i64(&[1, 1, 1]);
        let roots = isolate(&g).unwrap();
        let r = refine(&g, &roots[0], 100).unwrap();
        assert!(r.width() <= BigRational::new(1.into(), BigInt::from(1) << 100));
    }

    #[test]
    fn mixed_roots_of_a_quintic() {
        // x^5 - x - 1: one real root, two conjugate pairs
        let f = zpoly_from_i64(&[-1, -1, 0, 0, 0, 1]);
        let b = isolate(&f).unwrap();
        assert_eq!(b.iter().filter(|x| x.is_real()).count(), 1);
        assert_eq!(b.len(), 5);
    }
}
