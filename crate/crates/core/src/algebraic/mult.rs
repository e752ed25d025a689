//! Multiplicative relations among positive rationals.
//!
//! Integers are split over a coprime base (gcd refinement) instead of being
//! factored into primes; pairwise coprime integers above 1 are
//! multiplicatively independent, so exponent vectors over the base behave
//! like prime exponent vectors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Pairwise coprime integers > 1 generating every input multiplicatively.
pub fn coprime_base(nums: &[BigInt]) -> Vec<BigInt> {
    let mut base: Vec<BigInt> = Vec::new();
    for n in nums {
        let n = n.abs();
        if n > BigInt::one() {
            insert(&mut base, n);
        }
    }
    base.sort();
    base
}

fn insert(base: &mut Vec<BigInt>, n: BigInt) {
    let mut pending = vec![n];
    while let Some(x) = pending.pop() {
        if x <= BigInt::one() {
            continue;
        }
        match base.iter().position(|b| !b.gcd(&x).is_one()) {
            None => base.push(x),
            Some(i) => {
                let b = base.swap_remove(i);
                let g = b.gcd(&x);
                // b = g * b', x = g * x'; keep refining the three parts
                pending.push(&b / &g);
                pending.push(&x / &g);
                pending.push(g);
            }
        }
        dedup_powers(base);
    }
}

fn dedup_powers(base: &mut Vec<BigInt>) {
    base.sort();
    base.dedup();
}

/// Exponents of `n` over the base; None if `n` is not a product of base powers.
pub fn exponent_vector(n: &BigInt, base: &[BigInt]) -> Option<Vec<i64>> {
    let mut n = n.abs();
    let mut out = vec![0i64; base.len()];
    for (i, b) in base.iter().enumerate() {
        while (&n % b).is_zero() {
            n /= b;
            out[i] += 1;
        }
    }
    n.is_one().then_some(out)
}

/// A common coprime base for positive rationals and each rational's
/// exponent vector over it (numerator minus denominator exponents).
pub fn log_coordinates(values: &[BigRational]) -> (Vec<BigInt>, Vec<Vec<i64>>) {
    let mut all = Vec::new();
    for v in values {
        all.push(v.numer().clone());
        all.push(v.denom().clone());
    }
    let base = coprime_base(&all);
    let vecs = values
        .iter()
        .map(|v| {
            let a = exponent_vector(v.numer(), &base).expect("numerator splits over the base");
            let b = exponent_vector(v.denom(), &base).expect("denominator splits over the base");
            a.iter().zip(&b).map(|(x, y)| x - y).collect()
        })
        .collect();
    (base, vecs)
}

/// Some((m, n)) with (m, n) != (0, 0), m >= 0 and p^m = q^n; None when p
/// and q are multiplicatively independent.
pub fn multiplicative_dependence(p: &BigRational, q: &BigRational) -> Option<(BigInt, BigInt)> {
    assert!(p.is_positive() && q.is_positive(), "arguments must be positive");
    let (_, v) = log_coordinates(&[p.clone(), q.clone()]);
    let (vp, vq) = (&v[0], &v[1]);
    if vp.iter().all(|x| *x == 0) {
        return Some((BigInt::one(), BigInt::zero()));
    }
    if vq.iter().all(|x| *x == 0) {
        return Some((BigInt::zero(), BigInt::one()));
    }
    let i = vp.iter().position(|x| *x != 0)?;
    if vq[i] == 0 {
        return None;
    }
    // m vp = n vq
    let g = vp[i].gcd(&vq[i]);
    let (mut m, mut n) = (vq[i] / g, vp[i] / g);
    if m < 0 {
        m = -m;
        n = -n;
    }
    let parallel = vp.iter().zip(vq).all(|(a, b)| m * a == n * b);
    parallel.then(|| (BigInt::from(m), BigInt::from(n)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn worked_pairs() {
        assert_eq!(multiplicative_dependence(&q(4, 1), &q(8, 1)), Some((3.into(), 2.into())));
        assert_eq!(multiplicative_dependence(&q(2, 1), &q(3, 1)), None);
        assert_eq!(multiplicative_dependence(&q(1, 1), &q(5, 1)), Some((1.into(), 0.into())));
        assert_eq!(multiplicative_dependence(&q(1, 2), &q(4, 1)), Some((2.into(), (-1).into())));
        assert_eq!(multiplicative_dependence(&q(6, 1), &q(12, 1)), None);
    }

    #[test]
    fn base_is_coprime_and_generating() {
        let nums: Vec<BigInt> = [12, 18, 35, 1000].iter().map(|&x| BigInt::from(x)).collect();
        let base = coprime_base(&nums);
        for (i, a) in base.iter().enumerate() {
            for b in &base[i + 1..] {
                assert!(a.gcd(b).is_one());
            }
        }
        for n in &nums {
            assert!(exponent_vector(n, &base).is_some());
        }
    }
}
