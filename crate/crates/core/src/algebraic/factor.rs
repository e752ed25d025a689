//! Factorization over Z: modular factorization, Hensel lifting and
//! recombination of lifted factors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::modp::{self, Fp};
use super::poly::{self, ZPoly};

fn smallish_primes() -> impl Iterator<Item = u64> {
    (3u64..2000).filter(|n| (2..).take_while(|d| d * d <= *n).all(|d| n % d != 0))
}

fn sym_mod(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

fn reduce_mod(a: &ZPoly, m: &BigInt) -> ZPoly {
    let mut out: ZPoly = a.iter().map(|c| c.mod_floor(m)).collect();
    poly::trim_z(&mut out);
    out
}

fn mul_mod(a: &ZPoly, b: &ZPoly, m: &BigInt) -> ZPoly {
    reduce_mod(&poly::mul_z(a, b), m)
}

fn add_mod(a: &ZPoly, b: &ZPoly, m: &BigInt) -> ZPoly {
    let n = a.len().max(b.len());
    let v: ZPoly = (0..n)
        .map(|i| {
            a.get(i).cloned().unwrap_or_default() + b.get(i).cloned().unwrap_or_default()
        })
        .collect();
    reduce_mod(&v, m)
}

fn sub_mod(a: &ZPoly, b: &ZPoly, m: &BigInt) -> ZPoly {
    let nb: ZPoly = b.iter().map(|c| -c).collect();
    add_mod(a, &nb, m)
}

/// Division by a monic polynomial modulo m.
fn divrem_monic(a: &ZPoly, h: &ZPoly, m: &BigInt) -> (ZPoly, ZPoly) {
    let mut r = reduce_mod(a, m);
    let dh = poly::deg(h);
    if poly::deg(&r) < dh || (r.len() == 1 && r[0].is_zero()) {
        return (vec![BigInt::zero()], r);
    }
    let mut q = vec![BigInt::zero(); poly::deg(&r) - dh + 1];
    while r.len() > dh && !(r.len() == 1 && r[0].is_zero()) {
        let dr = r.len() - 1;
        if dr < dh {
            break;
        }
        let c = r[dr].clone();
        let s = dr - dh;
        for (i, hc) in h.iter().enumerate() {
            r[i + s] = (&r[i + s] - &c * hc).mod_floor(m);
        }
        q[s] = c;
        r.pop();
        poly::trim_z(&mut r);
    }
    (reduce_mod(&q, m), r)
}

fn from_fp(a: &Fp) -> ZPoly {
    if a.is_empty() {
        return vec![BigInt::zero()];
    }
    a.iter().map(|&c| BigInt::from(c)).collect()
}

/// One quadratic Hensel step from modulus m to m^2.
#[allow(clippy::too_many_arguments)]
fn hensel_step(
    f: &ZPoly,
    g: &ZPoly,
    h: &ZPoly,
    s: &ZPoly,
    t: &ZPoly,
    m2: &BigInt,
) -> (ZPoly, ZPoly, ZPoly, ZPoly) {
    let e = sub_mod(f, &poly::mul_z(g, h), m2);
    let (q, r) = divrem_monic(&poly::mul_z(s, &e), h, m2);
    let g2 = add_mod(&add_mod(g, &poly::mul_z(t, &e), m2), &poly::mul_z(&q, g), m2);
    let h2 = add_mod(h, &r, m2);
    let b = sub_mod(
        &add_mod(&poly::mul_z(s, &g2), &poly::mul_z(t, &h2), m2),
        &vec![BigInt::one()],
        m2,
    );
    let (c, d) = divrem_monic(&poly::mul_z(s, &b), &h2, m2);
    let s2 = sub_mod(s, &d, m2);
    let t2 = sub_mod(&sub_mod(t, &poly::mul_z(t, &b), m2), &poly::mul_z(&c, &g2), m2);
    (g2, h2, s2, t2)
}

/// Lifts the monic modular factors of `f` (leading coefficient `lc`) to
/// monic factors modulo `big_m`.
fn lift_all(f: &ZPoly, factors: &[Fp], p: u64, big_m: &BigInt) -> Vec<ZPoly> {
    let lc = f.last().unwrap().clone();
    if factors.len() == 1 {
        let inv = lc.extended_gcd(big_m).x.mod_floor(big_m);
        return vec![reduce_mod(&f.iter().map(|c| c * &inv).collect(), big_m)];
    }
    let mid = factors.len() / 2;
    let (left, right) = factors.split_at(mid);
    let lcp = modp::reduce(std::slice::from_ref(&lc), p);
    let mut g0: Fp = lcp;
    for x in left {
        g0 = modp::mul(&g0, x, p);
    }
    let mut h0: Fp = vec![1];
    for x in right {
        h0 = modp::mul(&h0, x, p);
    }
    let (_, s0, t0) = modp::xgcd(&g0, &h0, p);
    let (mut g, mut h, mut s, mut t) = (from_fp(&g0), from_fp(&h0), from_fp(&s0), from_fp(&t0));
    let mut m = BigInt::from(p);
    while m < *big_m {
        m = &m * &m;
        let (g2, h2, s2, t2) = hensel_step(f, &g, &h, &s, &t, &m);
        g = g2;
        h = h2;
        s = s2;
        t = t2;
    }
    let g = reduce_mod(&g, big_m);
    let h = reduce_mod(&h, big_m);
    let mut out = lift_all(&g, left, p, big_m);
    out.extend(lift_all(&h, right, p, big_m));
    out
}

/// Subset sums of factor degrees, as a bitmask over 0..=n.
fn degree_set(degrees: &[usize], n: usize) -> Vec<bool> {
    let mut can = vec![false; n + 1];
    can[0] = true;
    for &d in degrees {
        for s in (d..=n).rev() {
            if can[s - d] {
                can[s] = true;
            }
        }
    }
    can
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Irreducible factors of a primitive squarefree polynomial of degree >= 1
/// with nonzero constant term.
fn zassenhaus(f: &ZPoly) -> Vec<ZPoly> {
    let n = poly::deg(f);
    if n <= 1 {
        return vec![f.clone()];
    }
    let lc = f.last().unwrap().clone();
    let mut possible = vec![true; n + 1];
    let mut best: Option<(u64, Vec<Fp>)> = None;
    let mut tried = 0;
    for p in smallish_primes() {
        if (&lc % p).is_zero() {
            continue;
        }
        let fp = modp::reduce(f, p);
        if modp::deg(&fp) != n as isize || !modp::is_squarefree(&fp, p) {
            continue;
        }
        let fm = modp::monic(&fp, p);
        let ddf = modp::distinct_degree(&fm, p);
        let mut degrees = Vec::new();
        for (d, g) in &ddf {
            for _ in 0..(g.len() - 1) / d {
                degrees.push(*d);
            }
        }
        let ds = degree_set(&degrees, n);
        for (i, slot) in possible.iter_mut().enumerate() {
            *slot = *slot && ds[i];
        }
        if (1..n).all(|i| !possible[i]) {
            return vec![f.clone()];
        }
        let count = degrees.len();
        if best.as_ref().is_none_or(|(_, fs)| count < fs.len()) {
            best = Some((p, modp::factor_monic(&fm, p)));
        }
        tried += 1;
        if tried >= 6 {
            break;
        }
    }
    let (p, mod_factors) = best.expect("some prime is good for a squarefree polynomial");
    // coefficient bound for lc-scaled factors
    let norm_bits = (poly::norm2_sq(f).bits() / 2 + 1) as u64;
    let bound_bits = lc.bits() + n as u64 + norm_bits + 2;
    let mut big_m = BigInt::from(p);
    while big_m.bits() <= bound_bits + 1 {
        big_m *= p;
    }
    let lifted = lift_all(&reduce_mod(f, &big_m), &mod_factors, p, &big_m);

    let mut remaining: Vec<ZPoly> = lifted;
    let mut f_cur = f.clone();
    let mut out = Vec::new();
    let mut s = 1;
    while 2 * s <= remaining.len() {
        let mut found = None;
        for subset in combinations(remaining.len(), s) {
            let d: usize = subset.iter().map(|&i| poly::deg(&remaining[i])).sum();
            if d == 0 || !possible[d] {
                continue;
            }
            let b = f_cur.last().unwrap().clone();
            let mut g: ZPoly = vec![b];
            for &i in &subset {
                g = mul_mod(&g, &remaining[i], &big_m);
            }
            let g: ZPoly = g.iter().map(|c| sym_mod(c, &big_m)).collect();
            let g = poly::primitive(&g);
            if let Some(q) = poly::exact_div_z(&f_cur, &g) {
                found = Some((subset, g, q));
                break;
            }
        }
        match found {
            Some((subset, g, q)) => {
                out.push(g);
                f_cur = poly::primitive(&q);
                let keep: Vec<ZPoly> = remaining
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, x)| x.clone())
                    .collect();
                remaining = keep;
            }
            None => s += 1,
        }
    }
    if poly::deg(&f_cur) > 0 {
        out.push(f_cur);
    }
    out
}

/// Distinct irreducible factors (primitive, positive leading coefficient)
/// of a nonzero integer polynomial.
pub fn irreducible_factors(f: &ZPoly) -> Vec<ZPoly> {
    let mut f = poly::squarefree_part(f);
    let mut out = Vec::new();
    if poly::deg(&f) == 0 {
        return out;
    }
    if f[0].is_zero() {
        out.push(vec![BigInt::zero(), BigInt::one()]);
        f.remove(0);
        f = poly::primitive(&f);
    }
    if poly::deg(&f) >= 1 {
        out.extend(zassenhaus(&f));
    }
    for g in out.iter_mut() {
        *g = poly::primitive(g);
        if g.last().is_some_and(|c| c.is_negative()) {
            *g = g.iter().map(|c| -c).collect();
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

pub fn is_irreducible(f: &ZPoly) -> bool {
    let g = poly::primitive(f);
    if poly::deg(&g) == 0 {
        return false;
    }
    let fs = irreducible_factors(&g);
    fs.len() == 1 && fs[0] == g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebraic::poly::zpoly_from_i64;

    fn product(fs: &[ZPoly]) -> ZPoly {
        fs.iter().fold(vec![BigInt::one()], |acc, f| poly::mul_z(&acc, f))
    }

    #[test]
    fn swinnerton_dyer_quartic_is_irreducible() {
        let f = zpoly_from_i64(&[1, 0, -10, 0, 1]);
        assert_eq!(irreducible_factors(&f), vec![f.clone()]);
    }

    #[test]
    fn splits_products() {
        let a = zpoly_from_i64(&[-2, 0, 1]);
        let b = zpoly_from_i64(&[1, 1, 1]);
        let c = zpoly_from_i64(&[-5, 3]);
        let d = zpoly_from_i64(&[7, 0, 0, 2]);
        let f = product(&[a.clone(), b.clone(), c.clone(), d.clone()]);
        let mut got = irreducible_factors(&f);
        got.sort();
        let mut want = vec![a, b, c, d];
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn factors_minus_sign_and_zero_root() {
        // x (x^2 - 2)(x - 1)^2
        let f = product(&[
            zpoly_from_i64(&[0, 1]),
            zpoly_from_i64(&[-2, 0, 1]),
            zpoly_from_i64(&[-1, 1]),
            zpoly_from_i64(&[-1, 1]),
        ]);
        assert_eq!(irreducible_factors(&f).len(), 3);
    }

    #[test]
    fn charpoly_of_square_factors() {
        // (x^2 - 2)^2 - from MUL(sqrt2, sqrt2) style tensors: x^4 - 4x^2 + 4 -> x^2 - 2
        let f = zpoly_from_i64(&[4, 0, -4, 0, 1]);
        assert_eq!(irreducible_factors(&f), vec![zpoly_from_i64(&[-2, 0, 1])]);
        // (x - 2)^2 (x + 2)^2
        let g = zpoly_from_i64(&[16, 0, -8, 0, 1]);
        assert_eq!(irreducible_factors(&g).len(), 2);
    }
}
