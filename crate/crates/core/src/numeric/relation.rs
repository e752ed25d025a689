//! Integer relation search by integral LLL reduction.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::ball::RealBall;
use super::dyadic::Dyadic;
use super::NumericError;

/// Integral LLL with parameter 3/4 on linearly independent integer rows.
pub fn lll_reduce(basis: &mut [Vec<BigInt>]) {
    let n = basis.len();
    if n < 2 {
        return;
    }
    let dot = |a: &[BigInt], b: &[BigInt]| -> BigInt { a.iter().zip(b).map(|(x, y)| x * y).sum() };
    // d[i] is d_i with d[0] = 1; lambda[k][j] for j < k (0-based rows)
    let mut d = vec![BigInt::zero(); n + 1];
    let mut lambda = vec![vec![BigInt::zero(); n]; n];
    d[0] = BigInt::one();
    d[1] = dot(&basis[0], &basis[0]);
    let mut k = 1usize;
    let mut kmax = 0usize;

    fn red(
        k: usize,
        l: usize,
        basis: &mut [Vec<BigInt>],
        d: &[BigInt],
        lambda: &mut [Vec<BigInt>],
    ) {
        let two_l: BigInt = &lambda[k][l] * 2;
        if two_l.abs() > d[l + 1] {
            let q = round_div(&lambda[k][l], &d[l + 1]);
            let bl = basis[l].clone();
            for (x, y) in basis[k].iter_mut().zip(bl.iter()) {
                *x -= &q * y;
            }
            lambda[k][l] -= &q * &d[l + 1];
            for i in 0..l {
                let t = &q * &lambda[l][i];
                lambda[k][i] -= t;
            }
        }
    }

    while k < n {
        if k > kmax {
            kmax = k;
            for j in 0..=k {
                let mut u = dot(&basis[k], &basis[j]);
                for i in 0..j {
                    u = (&d[i + 1] * &u - &lambda[k][i] * &lambda[j][i]) / &d[i];
                }
                if j < k {
                    lambda[k][j] = u;
                } else {
                    d[k + 1] = u;
                }
            }
        }
        loop {
            red(k, k - 1, basis, &d, &mut lambda);
            let lhs = &d[k + 1] * &d[k - 1] * 4;
            let rhs = &d[k] * &d[k] * 3 - &lambda[k][k - 1] * &lambda[k][k - 1] * 4;
            if lhs < rhs {
                // swap rows k and k-1
                basis.swap(k, k - 1);
                for j in 0..k - 1 {
                    let t = lambda[k][j].clone();
                    lambda[k][j] = lambda[k - 1][j].clone();
                    lambda[k - 1][j] = t;
                }
                let lam = lambda[k][k - 1].clone();
                let b = (&d[k - 1] * &d[k + 1] + &lam * &lam) / &d[k];
                for i in k + 1..=kmax {
                    let t = lambda[i][k].clone();
                    lambda[i][k] = (&d[k + 1] * &lambda[i][k - 1] - &lam * &t) / &d[k];
                    lambda[i][k - 1] = (&b * &t + &lam * &lambda[i][k]) / &d[k + 1];
                }
                d[k] = b;
                if k > 1 {
                    k -= 1;
                }
            } else {
                for l in (0..k - 1).rev() {
                    red(k, l, basis, &d, &mut lambda);
                }
                k += 1;
                break;
            }
        }
    }
}

fn round_div(a: &BigInt, b: &BigInt) -> BigInt {
    // nearest integer to a/b for b > 0
    let two = BigInt::from(2);
    (a * &two + b).div_floor(&(b * two))
}

/// Searches for a nonzero integer vector `c` with `|c_i| <= max_coeff` and
/// `sum c_i v_i = 0` within the balls. `None` means no such relation was
/// found, not that none exists.
pub fn integer_relation(
    values: &[RealBall],
    max_coeff: &BigInt,
) -> Result<Option<Vec<BigInt>>, NumericError> {
    let n = values.len();
    if n == 0 {
        return Ok(None);
    }
    // absolute precision available from the balls
    let mut bits = i64::MAX;
    for v in values {
        let b = if v.rad().is_zero() {
            1024 + v.mid().mag().max(0)
        } else {
            -v.rad().mag()
        };
        bits = bits.min(b);
    }
    let need = (n as i64) * max_coeff.bits() as i64 + 16;
    if bits < need {
        return Err(NumericError::PrecisionExhausted(format!(
            "relation search needs {need} bits, balls carry {bits}"
        )));
    }
    let scale = (bits - 4) as u64;
    let mut basis: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let mut row = vec![BigInt::zero(); n + 1];
            row[i] = BigInt::one();
            row[n] = v_scaled(&values[i], scale);
            row
        })
        .collect();
    lll_reduce(&mut basis);
    let mut best: Option<Vec<BigInt>> = None;
    for row in &basis {
        let c: Vec<BigInt> = row[..n].to_vec();
        if c.iter().all(|x| x.is_zero()) || c.iter().any(|x| x.abs() > *max_coeff) {
            continue;
        }
        if !residual_vanishes(values, &c) {
            continue;
        }
        let c = normalize_sign(c);
        let better = match &best {
            None => true,
            Some(b) => norm1(&c) < norm1(b),
        };
        if better {
            best = Some(c);
        }
    }
    Ok(best)
}

fn v_scaled(v: &RealBall, scale: u64) -> BigInt {
    v.mid().mul_2exp(scale as i64).floor()
}

fn norm1(c: &[BigInt]) -> BigInt {
    c.iter().map(|x| x.abs()).sum()
}

fn normalize_sign(c: Vec<BigInt>) -> Vec<BigInt> {
    match c.iter().rev().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => c.into_iter().map(|x| -x).collect(),
        _ => c,
    }
}

fn residual_vanishes(values: &[RealBall], c: &[BigInt]) -> bool {
    let prec = values
        .iter()
        .map(|v| {
            if v.rad().is_zero() {
                1024
            } else {
                (v.mid().mag().max(0) - v.rad().mag()).clamp(64, 1 << 20) as u64
            }
        })
        .max()
        .unwrap_or(64)
        + 64;
    let mut acc = RealBall::zero();
    for (v, ci) in values.iter().zip(c) {
        acc = acc.add(&v.mul(&RealBall::from_bigint(ci), prec), prec);
    }
    acc.contains(&Dyadic::zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_classic_basis() {
        let mut b = vec![
            vec![BigInt::from(1), BigInt::from(1), BigInt::from(1)],
            vec![BigInt::from(-1), BigInt::from(0), BigInt::from(2)],
            vec![BigInt::from(3), BigInt::from(5), BigInt::from(6)],
        ];
        lll_reduce(&mut b);
        let norms: Vec<BigInt> = b
            .iter()
            .map(|r| r.iter().map(|x| x * x).sum::<BigInt>())
            .collect();
        // known reduced basis: (0,1,0), (1,0,1), (-1,0,2)
        assert_eq!(norms.iter().min().unwrap(), &BigInt::from(1));
        assert!(norms.iter().all(|x| *x <= BigInt::from(5)));
    }

    #[test]
    fn planted_rational_relation() {
        let vals = vec![
            RealBall::from_int(1),
            RealBall::from_rational(&num_rational::BigRational::new(7.into(), 3.into()), 300),
        ];
        let r = integer_relation(&vals, &BigInt::from(100)).unwrap().unwrap();
        assert_eq!(r, vec![BigInt::from(-7), BigInt::from(3)]);
    }
}
