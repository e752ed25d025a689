//! Q-linear independence of algebraic numbers via a primitive element.
//!
//! The numbers are adjoined one at a time: for theta' = theta + c*beta, beta
//! is the unique common root of its minimal polynomial and M(theta' - c*y)
//! over Q(theta') exactly when that gcd is linear, which then expresses beta
//! (and theta) as polynomials in theta'. Once every number has coordinates
//! in one field, independence is a rank computation over Q.

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::number::AlgebraicNumber;
use super::poly::{self, QPoly};
use super::DegreeCapConfig;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Independence {
    True,
    False,
    Inconclusive,
}

type KPoly = Vec<QPoly>;

fn kred(a: &QPoly, m: &QPoly) -> QPoly {
    let mut r = poly::divrem_q(a, m).1;
    poly::trim_q(&mut r);
    r
}

fn kmul(a: &QPoly, b: &QPoly, m: &QPoly) -> QPoly {
    kred(&poly::mul_q(a, b), m)
}

fn kadd(a: &QPoly, b: &QPoly) -> QPoly {
    let n = a.len().max(b.len());
    let mut out: QPoly = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
            x + y
        })
        .collect();
    poly::trim_q(&mut out);
    out
}

fn kneg(a: &QPoly) -> QPoly {
    a.iter().map(|c| -c).collect()
}

fn kconst(q: BigRational) -> QPoly {
    vec![q]
}

/// Inverse in Q[x]/(m) for irreducible m and nonzero a.
fn kinv(a: &QPoly, m: &QPoly) -> QPoly {
    let (mut r0, mut r1) = (m.clone(), a.clone());
    let (mut t0, mut t1): (QPoly, QPoly) = (vec![BigRational::zero()], vec![BigRational::one()]);
    while !poly::is_zero_q(&r1) {
        let (q, r) = poly::divrem_q(&r0, &r1);
        let t2 = poly::sub_q(&t0, &poly::mul_q(&q, &t1));
        r0 = r1;
        r1 = r;
        poly::trim_q(&mut r1);
        t0 = t1;
        t1 = t2;
    }
    // r0 is a nonzero constant
    let c = r0[0].clone();
    kred(&t0.iter().map(|x| x / &c).collect(), m)
}

fn ktrim(p: &mut KPoly) {
    while p.len() > 1 && p.last().is_some_and(poly::is_zero_q) {
        p.pop();
    }
}

fn kpoly_is_zero(p: &KPoly) -> bool {
    p.iter().all(poly::is_zero_q)
}

fn kpoly_rem(a: &KPoly, b: &KPoly, m: &QPoly) -> KPoly {
    let mut r = a.clone();
    ktrim(&mut r);
    let db = b.len() - 1;
    let li = kinv(b.last().unwrap(), m);
    while r.len() > db && !kpoly_is_zero(&r) {
        let dr = r.len() - 1;
        let c = kmul(&r[dr], &li, m);
        for (i, bc) in b.iter().enumerate() {
            let t = kmul(&c, bc, m);
            r[dr - db + i] = kadd(&r[dr - db + i], &kneg(&t));
        }
        r.pop();
        ktrim(&mut r);
    }
    r
}

fn kpoly_gcd(a: &KPoly, b: &KPoly, m: &QPoly) -> KPoly {
    let (mut x, mut y) = (a.clone(), b.clone());
    ktrim(&mut x);
    ktrim(&mut y);
    while !kpoly_is_zero(&y) {
        let r = kpoly_rem(&x, &y, m);
        x = y;
        y = r;
    }
    let li = kinv(x.last().unwrap(), m);
    x.iter().map(|c| kmul(c, &li, m)).collect()
}

/// Evaluates a rational polynomial at an element of Q[x]/(m).
fn compose(r: &QPoly, at: &QPoly, m: &QPoly) -> QPoly {
    let mut acc = vec![BigRational::zero()];
    for c in r.iter().rev() {
        acc = kadd(&kmul(&acc, at, m), &kconst(c.clone()));
    }
    acc
}

/// Tries to write beta in Q(theta'), theta' = theta + c*beta, given theta's
/// minimal polynomial `mth` and the monic minimal polynomial `mnew` of
/// theta'. Returns (coordinates of beta, coordinates of theta).
fn express(
    beta: &AlgebraicNumber,
    mth: &QPoly,
    c: i64,
    mnew: &QPoly,
) -> Option<(QPoly, QPoly)> {
    let t: QPoly = vec![BigRational::zero(), BigRational::one()];
    let cq = BigRational::from_integer(c.into());
    // theta' - c y as a polynomial in y
    let lin: KPoly = vec![kred(&t, mnew), kconst(-cq.clone())];
    let mut acc: KPoly = vec![vec![BigRational::zero()]];
    for coef in mth.iter().rev() {
        let mut next: KPoly = vec![vec![BigRational::zero()]; acc.len() + 1];
        for (i, a) in acc.iter().enumerate() {
            for (j, l) in lin.iter().enumerate() {
                next[i + j] = kadd(&next[i + j], &kmul(a, l, mnew));
            }
        }
        next[0] = kadd(&next[0], &kconst(coef.clone()));
        ktrim(&mut next);
        acc = next;
    }
    let mb: KPoly = beta
        .minpoly()
        .iter()
        .map(|x| kconst(BigRational::from_integer(x.clone())))
        .collect();
    let g = kpoly_gcd(&mb, &acc, mnew);
    if g.len() != 2 {
        return None;
    }
    let b = kneg(&g[0]);
    let th = kadd(&kred(&t, mnew), &kneg(&b.iter().map(|x| x * &cq).collect()));
    Some((b, th))
}

fn rank(rows: &[QPoly], n: usize) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| (0..n).map(|i| r.get(i).cloned().unwrap_or_else(BigRational::zero)).collect())
        .collect();
    let mut rank = 0;
    for col in 0..n {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][col].is_zero()) else { continue };
        m.swap(rank, p);
        let pv = m[rank][col].clone();
        for i in 0..m.len() {
            if i != rank && !m[i][col].is_zero() {
                let f = &m[i][col] / &pv;
                for j in col..n {
                    let v = &f * &m[rank][j];
                    m[i][j] -= v;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Decides whether 1, beta_1, ..., beta_n are linearly independent over Q.
pub fn q_linear_independent_with_one(betas: &[AlgebraicNumber], cfg: &DegreeCapConfig) -> Independence {
    if betas.is_empty() || betas.iter().any(|b| b.degree() == 1) {
        return if betas.is_empty() { Independence::True } else { Independence::False };
    }
    let mut theta = betas[0].clone();
    let mut mth = poly::monic_q(&poly::to_q(theta.minpoly()));
    let mut reps: Vec<QPoly> = vec![vec![BigRational::zero(), BigRational::one()]];
    for beta in &betas[1..] {
        let mut done = false;
        for c in 1..=8i64 {
            let shifted = beta
                .mul(&AlgebraicNumber::from_integer(c), cfg)
                .and_then(|cb| theta.add(&cb, cfg));
            let Ok(cand) = shifted else { continue };
            if cand.degree() > cfg.max_degree {
                return Independence::Inconclusive;
            }
            let mnew = poly::monic_q(&poly::to_q(cand.minpoly()));
            if let Some((b, th)) = express(beta, &mth, c, &mnew) {
                reps = reps.iter().map(|r| compose(r, &th, &mnew)).collect();
                reps.push(b);
                theta = cand;
                mth = mnew;
                done = true;
                break;
            }
        }
        if !done {
            return Independence::Inconclusive;
        }
    }
    let d = theta.degree();
    let mut rows = vec![vec![BigRational::one()]];
    rows.extend(reps);
    if rank(&rows, d) == rows.len() {
        Independence::True
    } else {
        Independence::False
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebraic::try_eval_algebraic;
    use crate::grammar::parse;

    fn alg(s: &str) -> AlgebraicNumber {
        try_eval_algebraic(&parse(s).unwrap()).unwrap().unwrap()
    }

    #[test]
    fn worked_cases() {
        let cfg = DegreeCapConfig::default();
        assert_eq!(q_linear_independent_with_one(&[alg("sqrt(2)")], &cfg), Independence::True);
        assert_eq!(q_linear_independent_with_one(&[alg("1/2")], &cfg), Independence::False);
        assert_eq!(
            q_linear_independent_with_one(&[alg("sqrt(2)"), alg("1+sqrt(2)")], &cfg),
            Independence::False
        );
        assert_eq!(
            q_linear_independent_with_one(&[alg("sqrt(2)"), alg("sqrt(3)")], &cfg),
            Independence::True
        );
        assert_eq!(
            q_linear_independent_with_one(&[alg("sqrt(2)"), alg("sqrt(3)"), alg("sqrt(2)+sqrt(3)")], &cfg),
            Independence::False
        );
    }
}
