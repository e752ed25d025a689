//! Dense univariate polynomials over Z and Q, coefficients lowest degree first.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type ZPoly = Vec<BigInt>;
pub type QPoly = Vec<BigRational>;

pub fn trim_z(p: &mut ZPoly) {
    while p.len() > 1 && p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    if p.is_empty() {
        p.push(BigInt::zero());
    }
}

pub fn trim_q(p: &mut QPoly) {
    while p.len() > 1 && p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    if p.is_empty() {
        p.push(BigRational::zero());
    }
}

/// Degree, with the zero polynomial reported as 0.
pub fn deg<T>(p: &[T]) -> usize {
    p.len().saturating_sub(1)
}

pub fn is_zero_q(p: &QPoly) -> bool {
    p.iter().all(|c| c.is_zero())
}

pub fn to_q(p: &ZPoly) -> QPoly {
    p.iter().map(|c| BigRational::from_integer(c.clone())).collect()
}

/// Primitive integer polynomial with positive leading coefficient, proportional to `p`.
pub fn primitive_from_q(p: &QPoly) -> ZPoly {
    let mut l = BigInt::one();
    for c in p {
        l = l.lcm(c.denom());
    }
    let z: ZPoly = p.iter().map(|c| (c * BigRational::from_integer(l.clone())).to_integer()).collect();
    primitive(&z)
}

pub fn content(p: &ZPoly) -> BigInt {
    let mut g = BigInt::zero();
    for c in p {
        g = g.gcd(c);
    }
    g
}

pub fn primitive(p: &ZPoly) -> ZPoly {
    let mut p = p.clone();
    trim_z(&mut p);
    let g = content(&p);
    if g.is_zero() {
        return p;
    }
    let neg = p.last().unwrap().is_negative();
    for c in p.iter_mut() {
        *c = &*c / &g;
        if neg {
            *c = -&*c;
        }
    }
    p
}

pub fn eval_q(p: &QPoly, x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Sign of `p(x)` for an integer polynomial at a rational point.
pub fn sign_at(p: &ZPoly, x: &BigRational) -> i32 {
    // homogenized Horner: sum a_i n^i d^(deg-i)
    let n = x.numer();
    let d = x.denom();
    let mut acc = BigInt::zero();
    let mut dpow = BigInt::one();
    for c in p.iter().rev() {
        acc = acc * n + c * &dpow;
        dpow *= d;
    }
    // acc = p(x) * d^deg, d > 0
    let _ = dpow;
    match acc.sign() {
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
        num_bigint::Sign::Plus => 1,
    }
}

pub fn derivative_z(p: &ZPoly) -> ZPoly {
    if p.len() <= 1 {
        return vec![BigInt::zero()];
    }
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect()
}

pub fn mul_z(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim_z(&mut out);
    out
}

pub fn mul_q(a: &QPoly, b: &QPoly) -> QPoly {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim_q(&mut out);
    out
}

pub fn sub_q(a: &QPoly, b: &QPoly) -> QPoly {
    let n = a.len().max(b.len());
    let mut out: QPoly = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
            x - y
        })
        .collect();
    trim_q(&mut out);
    out
}

pub fn divrem_q(a: &QPoly, b: &QPoly) -> (QPoly, QPoly) {
    let mut r = a.clone();
    trim_q(&mut r);
    let mut b = b.clone();
    trim_q(&mut b);
    assert!(!is_zero_q(&b), "polynomial division by zero");
    let db = deg(&b);
    let lb = b[db].clone();
    if deg(&r) < db || is_zero_q(&r) {
        return (vec![BigRational::zero()], r);
    }
    let mut q = vec![BigRational::zero(); deg(&r) - db + 1];
    while !is_zero_q(&r) && deg(&r) >= db {
        let dr = deg(&r);
        let c = &r[dr] / &lb;
        let shift = dr - db;
        for (i, bc) in b.iter().enumerate() {
            r[i + shift] -= &c * bc;
        }
        q[shift] = c;
        r.pop();
        trim_q(&mut r);
    }
    trim_q(&mut q);
    (q, r)
}

pub fn monic_q(p: &QPoly) -> QPoly {
    let l = p.last().unwrap().clone();
    p.iter().map(|c| c / &l).collect()
}

pub fn gcd_q(a: &QPoly, b: &QPoly) -> QPoly {
    let mut x = a.clone();
    let mut y = b.clone();
    trim_q(&mut x);
    trim_q(&mut y);
    while !is_zero_q(&y) {
        let (_, r) = divrem_q(&x, &y);
        x = y;
        y = r;
    }
    if is_zero_q(&x) {
        return x;
    }
    monic_q(&x)
}

/// Exact quotient in Z[x] if `b` divides `a`.
pub fn exact_div_z(a: &ZPoly, b: &ZPoly) -> Option<ZPoly> {
    let (q, r) = divrem_q(&to_q(a), &to_q(b));
    if !is_zero_q(&r) {
        return None;
    }
    if q.iter().all(|c| c.is_integer()) {
        Some(q.iter().map(|c| c.to_integer()).collect())
    } else {
        None
    }
}

/// Squarefree part of a nonzero integer polynomial, primitive.
pub fn squarefree_part(p: &ZPoly) -> ZPoly {
    let q = to_q(p);
    let d = to_q(&derivative_z(p));
    if deg(p) == 0 {
        return primitive(p);
    }
    let g = gcd_q(&q, &d);
    let (s, _) = divrem_q(&q, &g);
    primitive_from_q(&s)
}

/// p(-x), normalized primitive.
pub fn negate_var(p: &ZPoly) -> ZPoly {
    let q: ZPoly = p
        .iter()
        .enumerate()
        .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
        .collect();
    primitive(&q)
}

/// x^deg p(1/x), normalized primitive.
pub fn reverse(p: &ZPoly) -> ZPoly {
    let mut q = p.clone();
    trim_z(&mut q);
    q.reverse();
    primitive(&q)
}

/// p(x^k).
pub fn compose_power(p: &ZPoly, k: usize) -> ZPoly {
    let mut out = vec![BigInt::zero(); deg(p) * k + 1];
    for (i, c) in p.iter().enumerate() {
        out[i * k] = c.clone();
    }
    out
}

pub fn max_coeff_bits(p: &ZPoly) -> u64 {
    p.iter().map(|c| c.bits()).max().unwrap_or(0)
}

/// Euclidean norm squared.
pub fn norm2_sq(p: &ZPoly) -> BigInt {
    p.iter().map(|c| c * c).sum()
}

// ---------------------------------------------------------------------------
// Matrices over Q for characteristic polynomials.

pub type QMat = Vec<Vec<BigRational>>;

/// Companion matrix of `p` (any nonzero leading coefficient).
pub fn companion(p: &ZPoly) -> QMat {
    let n = deg(p);
    let lc = BigRational::from_integer(p[n].clone());
    let mut m = vec![vec![BigRational::zero(); n]; n];
    for i in 1..n {
        m[i][i - 1] = BigRational::one();
    }
    for (i, row) in m.iter_mut().enumerate() {
        row[n - 1] = -BigRational::from_integer(p[i].clone()) / &lc;
    }
    m
}

pub fn identity(n: usize) -> QMat {
    let mut m = vec![vec![BigRational::zero(); n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = BigRational::one();
    }
    m
}

pub fn kron(a: &QMat, b: &QMat) -> QMat {
    let (n, m) = (a.len(), b.len());
    let mut out = vec![vec![BigRational::zero(); n * m]; n * m];
    for i in 0..n {
        for j in 0..n {
            if a[i][j].is_zero() {
                continue;
            }
            for k in 0..m {
                for l in 0..m {
                    if !b[k][l].is_zero() {
                        out[i * m + k][j * m + l] = &a[i][j] * &b[k][l];
                    }
                }
            }
        }
    }
    out
}

pub fn mat_add(a: &QMat, b: &QMat) -> QMat {
    a.iter()
        .zip(b)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect())
        .collect()
}

pub fn mat_mul(a: &QMat, b: &QMat) -> QMat {
    let n = a.len();
    let mut out = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[k][j].is_zero() {
                    out[i][j] += &a[i][k] * &b[k][j];
                }
            }
        }
    }
    out
}

pub fn mat_pow(a: &QMat, mut e: u64) -> QMat {
    let mut base = a.clone();
    let mut acc = identity(a.len());
    while e > 0 {
        if e & 1 == 1 {
            acc = mat_mul(&acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = mat_mul(&base, &base);
        }
    }
    acc
}

/// Characteristic polynomial det(xI - M) by reduction to Hessenberg form.
pub fn charpoly(m: &QMat) -> QPoly {
    let n = m.len();
    let mut h = m.clone();
    for c in 1..n {
        // pivot for column c-1 at row c
        let piv = (c..n).find(|&i| !h[i][c - 1].is_zero());
        let Some(i) = piv else { continue };
        if i != c {
            h.swap(i, c);
            for row in h.iter_mut() {
                row.swap(i, c);
            }
        }
        let t = h[c][c - 1].clone();
        for i in c + 1..n {
            if h[i][c - 1].is_zero() {
                continue;
            }
            let u = &h[i][c - 1] / &t;
            for j in 0..n {
                let v = &u * &h[c][j];
                h[i][j] -= v;
            }
            for row in h.iter_mut() {
                let v = &u * &row[i];
                row[c] += v;
            }
        }
    }
    // p[k] is the characteristic polynomial of the leading k x k block
    let mut p: Vec<QPoly> = vec![vec![BigRational::one()]];
    for k in 1..=n {
        let hk = &h[k - 1][k - 1];
        let prev = &p[k - 1];
        let mut next = mul_q(prev, &vec![-hk.clone(), BigRational::one()]);
        let mut t = BigRational::one();
        for i in (1..k).rev() {
            t *= &h[i][i - 1];
            if t.is_zero() {
                break;
            }
            let coeff = &h[i - 1][k - 1] * &t;
            if coeff.is_zero() {
                continue;
            }
            let scaled: QPoly = p[i - 1].iter().map(|c| c * &coeff).collect();
            next = sub_q(&next, &scaled);
        }
        while next.len() < k + 1 {
            next.push(BigRational::zero());
        }
        p.push(next);
    }
    p.pop().unwrap()
}

pub fn zpoly_from_i64(c: &[i64]) -> ZPoly {
    c.iter().map(|&x| BigInt::from(x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn charpoly_of_companion_recovers_poly() {
        let f = zpoly_from_i64(&[1, 0, -10, 0, 1]);
        let cp = charpoly(&companion(&f));
        assert_eq!(primitive_from_q(&cp), f);
        let g = zpoly_from_i64(&[-3, 4]);
        assert_eq!(primitive_from_q(&charpoly(&companion(&g))), g);
    }

    #[test]
    fn tensor_sum_gives_sum_of_roots() {
        // sqrt 2 + sqrt 3
        let a = companion(&zpoly_from_i64(&[-2, 0, 1]));
        let b = companion(&zpoly_from_i64(&[-3, 0, 1]));
        let m = mat_add(&kron(&a, &identity(2)), &kron(&identity(2), &b));
        assert_eq!(primitive_from_q(&charpoly(&m)), zpoly_from_i64(&[1, 0, -10, 0, 1]));
    }

    #[test]
    fn squarefree_and_gcd() {
        // (x-1)^2 (x+2)
        let p = zpoly_from_i64(&[2, -3, 0, 1]);
        assert_eq!(squarefree_part(&p), zpoly_from_i64(&[-2, 1, 1]));
        assert_eq!(exact_div_z(&p, &zpoly_from_i64(&[-1, 1])), Some(zpoly_from_i64(&[-2, 1, 1])));
        assert_eq!(exact_div_z(&p, &zpoly_from_i64(&[-3, 1])), None);
    }

    #[test]
    fn signs_at_rationals() {
        let p = zpoly_from_i64(&[-2, 0, 1]);
        assert_eq!(sign_at(&p, &BigRational::new(3.into(), 2.into())), 1);
        assert_eq!(sign_at(&p, &BigRational::new(7.into(), 5.into())), -1);
    }
}
