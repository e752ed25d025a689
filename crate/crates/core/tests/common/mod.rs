//! Random expression trees shared by the property tests.
#![allow(dead_code)]

use arithmos::grammar::{Expr, HypFn, TrigFn};
use arithmos::numeric::{ComplexBall, Dyadic};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn leaf(rng: &mut ChaCha8Rng) -> Expr {
    match rng.gen_range(0..6) {
        0 => Expr::pi(),
        1 => Expr::e(),
        2 => Expr::i(),
        3 => Expr::int(rng.gen_range(-9..10)),
        _ => Expr::ratio(rng.gen_range(-40..41), rng.gen_range(1..13)),
    }
}

/// A raw (not yet canonical) tree of at most the given depth.
pub fn raw_tree(rng: &mut ChaCha8Rng, depth: u32) -> Expr {
    if depth == 0 || rng.gen_bool(0.25) {
        return leaf(rng);
    }
    let sub = |rng: &mut ChaCha8Rng| Box::new(raw_tree(rng, depth - 1));
    match rng.gen_range(0..10) {
        0 | 1 => {
            let n = rng.gen_range(2..4);
            Expr::Add((0..n).map(|_| *sub(rng)).collect())
        }
        2 | 3 => {
            let n = rng.gen_range(2..4);
            Expr::Mul((0..n).map(|_| *sub(rng)).collect())
        }
        4 => Expr::Pow(sub(rng), Box::new(leaf(rng))),
        5 => Expr::Sqrt(sub(rng)),
        6 => {
            let a = sub(rng);
            if rng.gen_bool(0.5) { Expr::Exp(a) } else { Expr::Ln(a) }
        }
        7 => Expr::Trig(TrigFn::ALL[rng.gen_range(0..6)], sub(rng)),
        8 => Expr::ArcTrig(TrigFn::ALL[rng.gen_range(0..6)], sub(rng)),
        _ => {
            let f = [HypFn::Sinh, HypFn::Cosh, HypFn::Tanh][rng.gen_range(0..3)];
            Expr::Hyp(f, sub(rng))
        }
    }
}

// radical towers of degree at most 8, as text with a degree bound

pub fn radical_leaf(rng: &mut ChaCha8Rng) -> (String, usize) {
    match rng.gen_range(0..6) {
        0 => (format!("{}", rng.gen_range(-6..=6)), 1),
        1 => (format!("{}/{}", rng.gen_range(-9..=9), rng.gen_range(1..=7)), 1),
        2 | 3 => (format!("sqrt({})", rng.gen_range(2..=15)), 2),
        4 => ("i".into(), 2),
        _ => (format!("{}^(1/3)", rng.gen_range(2..=7)), 3),
    }
}

pub fn tower(rng: &mut ChaCha8Rng, depth: usize) -> (String, usize) {
    if depth == 0 || rng.gen_bool(0.25) {
        return radical_leaf(rng);
    }
    let (a, da) = tower(rng, depth - 1);
    match rng.gen_range(0..5) {
        0 | 1 => {
            let (b, db) = tower(rng, depth - 1);
            if da * db > 8 {
                return (a, da);
            }
            let op = if rng.gen_bool(0.5) { "+" } else { "*" };
            (format!("({a}){op}({b})"), da * db)
        }
        2 if 2 * da <= 8 => (format!("sqrt({a})"), 2 * da),
        3 => (format!("-({a})"), da),
        _ => (format!("1/({a})"), da),
    }
}

pub fn distance_ok(x: &ComplexBall, y: &ComplexBall, bits: i64) -> bool {
    let close = |a: &arithmos::numeric::RealBall, b: &arithmos::numeric::RealBall| {
        let d = a.mid().sub(b.mid()).abs();
        d.sub(a.rad()).sub(b.rad()) <= Dyadic::pow2(-bits) && a.rad().mag() < -bits && b.rad().mag() < -bits
    };
    close(&x.re, &y.re) && close(&x.im, &y.im)
}

/// An algebraic expression whose exact value is zero.
pub fn zero_instance(rng: &mut ChaCha8Rng) -> String {
    let a = rng.gen_range(2..30);
    let b = rng.gen_range(2..30);
    match rng.gen_range(0..5) {
        0 => format!("(sqrt({a})+sqrt({b}))^2-{}-2*sqrt({})", a + b, a * b),
        1 => format!("({a}^(1/3))^3-{a}"),
        2 => format!("(sqrt({a})+i*sqrt({b}))*(sqrt({a})-i*sqrt({b}))-{}", a + b),
        3 => {
            let b = if a == b { b + 1 } else { b };
            format!("1/(sqrt({a})+sqrt({b}))-(sqrt({a})-sqrt({b}))/({a}-{b})")
        }
        _ => format!("(({a}+sqrt({}))/2)^2-{a}*({a}+sqrt({}))/2-{b}", a * a + 4 * b, a * a + 4 * b),
    }
}

