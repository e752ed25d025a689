//! Polynomials over a small prime field and their factorization.

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Coefficients in `[0, p)`, lowest degree first, no trailing zeros
/// (the zero polynomial is empty).
pub type Fp = Vec<u64>;

pub fn trim(a: &mut Fp) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub fn reduce(f: &[BigInt], p: u64) -> Fp {
    let pb = BigInt::from(p);
    let mut out: Fp = f
        .iter()
        .map(|c| {
            let r = c % &pb;
            let r = if r < BigInt::zero() { r + &pb } else { r };
            r.to_u64().unwrap()
        })
        .collect();
    trim(&mut out);
    out
}

fn inv(a: u64, p: u64) -> u64 {
    pow_u(a, p - 2, p)
}

fn pow_u(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

pub fn deg(a: &Fp) -> isize {
    a.len() as isize - 1
}

pub fn sub(a: &Fp, b: &Fp, p: u64) -> Fp {
    let n = a.len().max(b.len());
    let mut out: Fp = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(&mut out);
    out
}

pub fn mul(a: &Fp, b: &Fp, p: u64) -> Fp {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(&mut out);
    out
}

pub fn divrem(a: &Fp, b: &Fp, p: u64) -> (Fp, Fp) {
    assert!(!b.is_empty(), "division by zero polynomial mod p");
    let mut r = a.clone();
    trim(&mut r);
    let db = b.len() - 1;
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let li = inv(*b.last().unwrap(), p);
    let mut q = vec![0u64; r.len() - db];
    while r.len() >= b.len() {
        let dr = r.len() - 1;
        let c = r[dr] * li % p;
        let s = dr - db;
        for (i, &bc) in b.iter().enumerate() {
            r[i + s] = (r[i + s] + p - c * bc % p) % p;
        }
        q[s] = c;
        trim(&mut r);
        if r.len() > dr {
            r.truncate(dr);
            trim(&mut r);
        }
    }
    trim(&mut q);
    (q, r)
}

pub fn rem(a: &Fp, b: &Fp, p: u64) -> Fp {
    divrem(a, b, p).1
}

pub fn monic(a: &Fp, p: u64) -> Fp {
    if a.is_empty() {
        return Vec::new();
    }
    let li = inv(*a.last().unwrap(), p);
    a.iter().map(|&c| c * li % p).collect()
}

pub fn gcd(a: &Fp, b: &Fp, p: u64) -> Fp {
    let mut x = a.clone();
    let mut y = b.clone();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    monic(&x, p)
}

/// Returns (g, s, t) with s a + t b = g monic.
pub fn xgcd(a: &Fp, b: &Fp, p: u64) -> (Fp, Fp, Fp) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1): (Fp, Fp) = (vec![1], Vec::new());
    let (mut t0, mut t1): (Fp, Fp) = (Vec::new(), vec![1]);
    trim(&mut r0);
    trim(&mut r1);
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1, p);
        let s2 = sub(&s0, &mul(&q, &s1, p), p);
        let t2 = sub(&t0, &mul(&q, &t1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    let li = inv(*r0.last().unwrap(), p);
    let sc = |v: &Fp| -> Fp {
        let mut o: Fp = v.iter().map(|&c| c * li % p).collect();
        trim(&mut o);
        o
    };
    (sc(&r0), sc(&s0), sc(&t0))
}

pub fn derivative(a: &Fp, p: u64) -> Fp {
    let mut out: Fp = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| c * (i as u64 % p) % p)
        .collect();
    trim(&mut out);
    out
}

pub fn powmod(base: &Fp, e: &BigUint, m: &Fp, p: u64) -> Fp {
    let mut result: Fp = vec![1];
    let b = rem(base, m, p);
    for i in (0..e.bits()).rev() {
        result = rem(&mul(&result, &result, p), m, p);
        if e.bit(i) {
            result = rem(&mul(&result, &b, p), m, p);
        }
    }
    result
}

pub fn is_squarefree(f: &Fp, p: u64) -> bool {
    let d = derivative(f, p);
    if d.is_empty() {
        return false;
    }
    gcd(f, &d, p).len() == 1
}

/// Distinct-degree factorization of a monic squarefree polynomial:
/// pairs (d, product of all irreducible factors of degree d).
pub fn distinct_degree(f: &Fp, p: u64) -> Vec<(usize, Fp)> {
    let mut out = Vec::new();
    let mut f = f.clone();
    let x: Fp = vec![0, 1];
    let mut h = x.clone();
    let pe = BigUint::from(p);
    let mut d = 0;
    while f.len() > 1 {
        d += 1;
        if 2 * d > f.len() - 1 {
            let n = f.len() - 1;
            out.push((n, f.clone()));
            break;
        }
        h = powmod(&h, &pe, &f, p);
        let g = gcd(&sub(&h, &x, p), &f, p);
        if g.len() > 1 {
            out.push((d, g.clone()));
            f = divrem(&f, &g, p).0;
            h = rem(&h, &f, p);
        }
    }
    out
}

/// Splits a product of irreducible factors of equal degree `d` (odd p).
pub fn equal_degree(f: &Fp, d: usize, p: u64, rng: &mut ChaCha8Rng) -> Vec<Fp> {
    let n = f.len() - 1;
    if n == d {
        return vec![f.clone()];
    }
    let e = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
    loop {
        let mut a: Fp = (0..n).map(|_| rng.gen_range(0..p)).collect();
        trim(&mut a);
        if a.len() < 2 {
            continue;
        }
        let b = powmod(&a, &e, f, p);
        let g = gcd(&sub(&b, &vec![1], p), f, p);
        if g.len() > 1 && g.len() < f.len() {
            let h = monic(&divrem(f, &g, p).0, p);
            let mut out = equal_degree(&g, d, p, rng);
            out.extend(equal_degree(&h, d, p, rng));
            return out;
        }
    }
}

/// Complete factorization of a monic squarefree polynomial into monic irreducibles.
pub fn factor_monic(f: &Fp, p: u64) -> Vec<Fp> {
    let mut rng = ChaCha8Rng::seed_from_u64(p ^ 0x5eed);
    let mut out = Vec::new();
    for (d, g) in distinct_degree(f, p) {
        out.extend(equal_degree(&g, d, p, &mut rng));
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factors_x4_minus_1_mod_5() {
        let f: Fp = vec![4, 0, 0, 0, 1];
        let fs = factor_monic(&f, 5);
        assert_eq!(fs.len(), 4);
        let mut prod: Fp = vec![1];
        for g in &fs {
            prod = mul(&prod, g, 5);
        }
        assert_eq!(prod, f);
    }

    #[test]
    fn irreducible_quadratic_stays() {
        // x^2 + 2 is irreducible mod 5 (-2 = 3 is a non-residue)
        let fs = factor_monic(&vec![2, 0, 1], 5);
        assert_eq!(fs, vec![vec![2, 0, 1]]);
    }

    #[test]
    fn bezout_mod_p() {
        let a: Fp = vec![1, 1];
        let b: Fp = vec![2, 0, 1];
        let (g, s, t) = xgcd(&a, &b, 7);
        assert_eq!(g, vec![1]);
        let lhs = sub(&mul(&s, &a, 7), &sub(&vec![], &mul(&t, &b, 7), 7), 7);
        assert_eq!(lhs, vec![1]);
    }
}
