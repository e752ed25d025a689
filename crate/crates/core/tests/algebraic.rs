mod common;

use arithmos::algebraic::{
    factor, field_op, multiplicative_dependence, q_linear_independent_with_one, try_eval_algebraic,
    AlgebraicError, AlgebraicNumber, DegreeCapConfig, FieldOp, Independence,
};
use arithmos::grammar::parse;
use arithmos::numeric::eval_ball;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn alg(s: &str) -> AlgebraicNumber {
    try_eval_algebraic(&parse(s).unwrap()).unwrap().unwrap()
}

fn coeffs(a: &AlgebraicNumber) -> Vec<i64> {
    a.minpoly().iter().map(|c| c.to_i64().unwrap()).collect()
}

fn cfg() -> DegreeCapConfig {
    DegreeCapConfig::default()
}

/// Expands prod (x - r) over the given complex roots in floating point.
fn expand(roots: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let mut p = vec![(1.0, 0.0)];
    for &(a, b) in roots {
        let mut next = vec![(0.0, 0.0); p.len() + 1];
        for (i, &(c, d)) in p.iter().enumerate() {
            next[i + 1].0 += c;
            next[i + 1].1 += d;
            next[i].0 -= a * c - b * d;
            next[i].1 -= a * d + b * c;
        }
        p = next;
    }
    p
}

#[test]
fn sum_of_roots_matches_conjugate_expansion() {
    let (s2, s3) = (2f64.sqrt(), 3f64.sqrt());
    let conj = [(s2 + s3, 0.0), (s2 - s3, 0.0), (-s2 + s3, 0.0), (-s2 - s3, 0.0)];
    let oracle: Vec<i64> = expand(&conj).iter().map(|c| c.0.round() as i64).collect();
    assert_eq!(oracle, vec![1, 0, -10, 0, 1]);
    let a = field_op(FieldOp::Add, &alg("sqrt(2)"), Some(&alg("sqrt(3)")), &cfg()).unwrap();
    assert_eq!(coeffs(&a), oracle);
    assert_eq!(coeffs(&alg("sqrt(2)+sqrt(3)")), oracle);
}

#[test]
fn inverse_of_golden_ratio() {
    let g = alg("(1+sqrt(5))/2");
    assert_eq!(coeffs(&g), vec![-1, -1, 1]);
    // x -> 1/x reverses coefficients; then make the leading one positive
    let mut rev: Vec<i64> = coeffs(&g).into_iter().rev().collect();
    if *rev.last().unwrap() < 0 {
        rev.iter_mut().for_each(|c| *c = -*c);
    }
    let inv = field_op(FieldOp::Inv, &g, None, &cfg()).unwrap();
    assert_eq!(coeffs(&inv), rev);
    assert_eq!(coeffs(&inv), vec![-1, 1, 1]);
}

#[test]
fn spec_examples() {
    assert_eq!(coeffs(&AlgebraicNumber::from_ratio(3, 4)), vec![-3, 4]);
    assert_eq!(coeffs(&AlgebraicNumber::from_ratio(0, 1)), vec![0, 1]);
    assert_eq!(coeffs(&AlgebraicNumber::from_ratio(-2, 6)), vec![1, 3]);
    let s2 = alg("sqrt(2)");
    assert_eq!(s2.mul(&s2, &cfg()).unwrap().as_rational(), Some(BigRational::from_integer(2.into())));
    assert!(s2.add(&s2.neg().unwrap(), &cfg()).unwrap().is_zero());
    assert!(!s2.is_zero());
    assert_eq!(s2.as_rational(), None);
    assert_eq!(alg("5/2").as_rational(), Some(BigRational::new(5.into(), 2.into())));
    assert_eq!(AlgebraicNumber::i().as_rational(), None);
    let cube = alg("2^(1/3)");
    assert_eq!((cube.degree(), cube.is_quadratic()), (3, false));
    assert_eq!((s2.degree(), s2.is_quadratic()), (2, true));
    assert!(AlgebraicNumber::from_ratio(5, 7).is_quadratic());
    assert!(try_eval_algebraic(&parse("exp(1)").unwrap()).unwrap().is_none());
    assert_eq!(coeffs(&alg("sqrt(3+2*sqrt(2))")), vec![-1, -2, 1]);
}

#[test]
fn sqrt_boxes() {
    let r = alg("sqrt(2)");
    let b = r.isolating_box();
    assert!(b.is_real());
    assert!(b.re_lo >= BigRational::from_integer(1.into()) && b.re_hi <= BigRational::from_integer(2.into()));
    let i = alg("sqrt(-1)");
    assert_eq!(coeffs(&i), vec![1, 0, 1]);
    assert!(i.isolating_box().im_lo.is_positive());
}

#[test]
fn rational_log_dependence() {
    let q = |n: i64| BigRational::from_integer(n.into());
    assert_eq!(multiplicative_dependence(&q(4), &q(8)), Some((3.into(), 2.into())));
    assert_eq!(multiplicative_dependence(&q(2), &q(3)), None);
    assert_eq!(multiplicative_dependence(&q(1), &q(5)), Some((1.into(), 0.into())));
    // independent oracle: trial-division prime exponents
    let primes = [2i64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59];
    let expo = |mut n: i64| -> Vec<i64> {
        primes
            .iter()
            .map(|&p| {
                let mut e = 0;
                while n % p == 0 {
                    n /= p;
                    e += 1;
                }
                e
            })
            .collect()
    };
    for a in 2..60i64 {
        for b in 2..60i64 {
            let (va, vb) = (expo(a), expo(b));
            let parallel = (0..primes.len())
                .all(|i| (0..primes.len()).all(|j| va[i] * vb[j] == va[j] * vb[i]));
            let got = multiplicative_dependence(&q(a), &q(b));
            assert_eq!(got.is_some(), parallel, "{a} {b}");
            if let Some((m, n)) = got {
                assert!(m.is_positive());
                assert_eq!(BigInt::from(a).pow(m.to_u32().unwrap()), BigInt::from(b).pow(n.to_u32().unwrap()));
            }
        }
    }
}

#[test]
fn linear_independence_examples() {
    let c = cfg();
    assert_eq!(q_linear_independent_with_one(&[alg("sqrt(2)")], &c), Independence::True);
    assert_eq!(q_linear_independent_with_one(&[alg("1/2")], &c), Independence::False);
    assert_eq!(
        q_linear_independent_with_one(&[alg("sqrt(2)"), alg("1+sqrt(2)")], &c),
        Independence::False
    );
    assert_eq!(
        q_linear_independent_with_one(&[alg("2^(1/3)"), alg("4^(1/3)")], &c),
        Independence::True
    );
    assert_eq!(
        q_linear_independent_with_one(&[alg("i"), alg("sqrt(2)"), alg("sqrt(2)*i")], &c),
        Independence::True
    );
}

#[test]
fn caps_are_reported() {
    let tiny = DegreeCapConfig::new(4, 4096).unwrap();
    let e = parse("2^(1/3)+3^(1/3)").unwrap();
    let r = arithmos::algebraic::try_eval_algebraic_with(&e, &tiny);
    assert!(matches!(r, Err(AlgebraicError::DegreeCapExceeded(_))));
    assert!(matches!(AlgebraicNumber::zero().inv(), Err(AlgebraicError::DivisionByZero)));
}

// --- random radical towers checked against direct ball evaluation

#[test]
fn random_towers_agree_with_ball_evaluation() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checked = 0;
    let mut tries = 0;
    while checked < 1000 {
        tries += 1;
        assert!(tries < 5000, "generator rarely produces usable towers");
        let (text, _) = common::tower(&mut rng, 4);
        let Ok(e) = parse(&text) else { continue };
        let a = match try_eval_algebraic(&e) {
            Ok(Some(a)) => a,
            Err(AlgebraicError::DivisionByZero) | Err(AlgebraicError::Domain(_)) => continue,
            other => panic!("{text}: {other:?}"),
        };
        assert!(a.degree() <= 8, "{text}");
        let exact = a.to_ball(240).unwrap();
        let direct = eval_ball(&e, 320).unwrap();
        // 10^-60 < 2^-199
        assert!(common::distance_ok(&exact, &direct, 199), "{text}: {exact:?} vs {direct:?}");
        checked += 1;
    }
}

#[test]
fn zero_test_agrees_with_high_precision_numerics() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for k in 0..200 {
        let base = common::zero_instance(&mut rng);
        let text = if k % 2 == 0 { base } else { format!("{base}+1/10^50") };
        let e = parse(&text).unwrap();
        let a = try_eval_algebraic(&e).unwrap().unwrap();
        // 10^-200 needs about 665 bits
        let ball = eval_ball(&e, 720).unwrap();
        let numerically_zero = ball.contains_zero();
        assert!(ball.radius().mag() < -665, "{text}");
        assert_eq!(a.is_zero(), numerically_zero, "{text}");
        assert_eq!(a.is_zero(), k % 2 == 0, "{text}");
    }
}

#[test]
fn produced_minimal_polynomials_have_no_rational_roots() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut n = 0;
    while n < 60 {
        let (text, _) = common::tower(&mut rng, 3);
        let Ok(e) = parse(&text) else { continue };
        let Ok(Some(a)) = try_eval_algebraic(&e) else { continue };
        n += 1;
        let f = a.minpoly();
        assert!(f.last().unwrap().is_positive());
        if a.degree() > 1 {
            assert!(factor::is_irreducible(f), "{text}");
            let small = f.iter().all(|c| c.abs() < BigInt::from(5000));
            if small {
                // rational root test by exhaustive divisor search
                let a0 = f[0].to_i64().unwrap().abs();
                let an = f.last().unwrap().to_i64().unwrap();
                for p in (1..=a0.max(1)).filter(|p| a0 == 0 || a0 % p == 0) {
                    for q in (1..=an).filter(|q| an % q == 0) {
                        for s in [-1, 1] {
                            let x = BigRational::new((s * p).into(), q.into());
                            let v = f.iter().rev().fold(BigRational::zero(), |acc, c| {
                                acc * &x + BigRational::from_integer(c.clone())
                            });
                            assert!(!v.is_zero(), "{text} has rational root {x}");
                        }
                    }
                }
            }
        }
    }
}

fn pool() -> Vec<&'static str> {
    vec!["sqrt(2)", "sqrt(3)", "i", "(1+sqrt(5))/2", "2^(1/3)", "1/3", "-2", "sqrt(-3)", "1+sqrt(2)"]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn field_axioms(i in 0usize..9, j in 0usize..9, k in 0usize..9) {
        let p = pool();
        let (a, b, c) = (alg(p[i]), alg(p[j]), alg(p[k]));
        let cf = cfg();
        prop_assert_eq!(a.add(&b, &cf).unwrap(), b.add(&a, &cf).unwrap());
        prop_assert_eq!(a.mul(&b, &cf).unwrap(), b.mul(&a, &cf).unwrap());
        let l = a.add(&b, &cf).unwrap().add(&c, &cf).unwrap();
        let r = a.add(&b.add(&c, &cf).unwrap(), &cf).unwrap();
        prop_assert_eq!(l, r);
        let l = a.mul(&b.add(&c, &cf).unwrap(), &cf).unwrap();
        let r = a.mul(&b, &cf).unwrap().add(&a.mul(&c, &cf).unwrap(), &cf).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn negation_cancels_and_inverse_keeps_degree(i in 0usize..9) {
        let a = alg(pool()[i]);
        prop_assert!(a.add(&a.neg().unwrap(), &cfg()).unwrap().is_zero());
        if !a.is_zero() {
            prop_assert_eq!(a.inv().unwrap().degree(), a.degree());
        }
    }
}
