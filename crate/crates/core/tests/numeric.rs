use arithmos::grammar::parse;
use arithmos::numeric::{
    certify_nonzero, eval_ball, integer_relation, nonzero_at, Dyadic, RealBall, MAX_PRECISION,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

/// Reference values to 55 digits, computed independently with mpmath at 70 digits.
const ORACLE: &[(&str, &str, &str)] = &[
    ("pi", "3.141592653589793238462643383279502884197169399375105821", "0"),
    ("e", "2.718281828459045235360287471352662497757247093699959575", "0"),
    ("ln(2)", "0.6931471805599453094172321214581765680755001343602552541", "0"),
    ("2^sqrt(2)", "2.665144142690225188650297249873139848274211313714659493", "0"),
    ("exp(pi)", "23.14069263277926900572908636794854738026610624260021199", "0"),
    ("sin(1)", "0.8414709848078965066525023216302989996225630607983710657", "0"),
    ("cos(1)", "0.5403023058681397174009366074429766037323104206179222277", "0"),
    ("sinh(1)", "1.175201193643801456882381850595600815155717981334095870", "0"),
    ("cosh(1)", "1.543080634815243778477905620757061682601529112365863705", "0"),
    ("atan(1/2)/pi", "0.1475836176504332741754010762247405259511345238869178946", "0"),
    ("acos(1/3)/pi", "0.3918265520306072701708555592224309113166286494394002873", "0"),
    ("cos(sqrt(2)*pi)", "-0.2662553420414154886089326069173222888736451804767962507", "0"),
    ("tan(sqrt(2)*pi)", "3.620218567107450597030469761198019695781926719927344935", "0"),
    ("tan(ln(2))", "0.8306408778607839470304590233006621122265435930965995359", "0"),
    ("tanh(ln(pi))", "0.8160006632992495350883967770233587734257659010235857834", "0"),
    ("(1 + ln(2))/pi", "0.5389454863364422649342239588630264150516090402105683680", "0"),
    ("ln(pi) - 3/2*sqrt(2)*pi", "-5.519594521388149196380394133737981836274637721148223763", "0"),
    ("sec(1/3)", "1.058249271461441901459521777640631636569892752090768460", "0"),
    ("cot(2)", "-0.4576575543602857637502774104320472764284863292316743296", "0"),
    ("acot(-2)", "-0.4636476090008061162142562314612144020285370542861202638", "0"),
    ("asec(3)", "1.230959417340774682134929178247987375710340009355094839", "0"),
    ("asin(1/3)", "0.3398369094541219370963925133917640663882446903324580714", "0"),
    ("i^i", "0.2078795763507619085469556198349787700338778416317696081", "0"),
    ("ln(-1)", "0", "3.141592653589793238462643383279502884197169399375105821"),
    ("sqrt(-3)", "0", "1.732050807568877293527446341505872366942805253810380628"),
    ("(-8)^(1/3)", "1", "1.732050807568877293527446341505872366942805253810380628"),
    ("exp(i*pi/3)", "0.5", "0.8660254037844386467637231707529361834714026269051903140"),
    ("ln(1 + i)", "0.3465735902799726547086160607290882840377500671801276271", "0.7853981633974483096156608458198757210492923498437764552"),
    ("sin(1 + i)", "1.298457581415977294826042365807815620313436561635208073", "0.6349639147847361082550822029915097815170819514193794105"),
];

fn decimal(s: &str) -> BigRational {
    let (neg, s) = s.strip_prefix('-').map_or((false, s), |r| (true, r));
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    let digits: BigInt = format!("{int}{frac}").parse().unwrap();
    let q = BigRational::new(digits, BigInt::from(10).pow(frac.len() as u32));
    if neg { -q } else { q }
}

fn tol(exp10: u32) -> BigRational {
    BigRational::new(BigInt::from(1), BigInt::from(10).pow(exp10))
}

fn near(b: &RealBall, v: &BigRational, slack: &BigRational) -> bool {
    (b.mid().to_rational() - v).abs() <= b.rad().to_rational() + slack
}

#[test]
fn balls_enclose_reference_values() {
    for &(s, re, im) in ORACLE {
        let e = parse(s).unwrap();
        for prec in [64u64, 200] {
            let b = eval_ball(&e, prec).unwrap_or_else(|err| panic!("{s}: {err}"));
            let slack = tol(50);
            assert!(near(&b.re, &decimal(re), &slack), "{s} real part at {prec} bits");
            assert!(near(&b.im, &decimal(im), &slack), "{s} imaginary part at {prec} bits");
        }
        let tight = eval_ball(&e, 200).unwrap();
        assert!(tight.radius().to_rational() < tol(45), "{s} is loose at 200 bits");
    }
}

#[test]
fn exact_inputs_stay_exact() {
    let b = eval_ball(&parse("3/4").unwrap(), 64).unwrap();
    assert!(b.is_real());
    assert!(b.re.contains_rational(&BigRational::new(3.into(), 4.into())));
    assert!(eval_ball(&parse("1 - 1").unwrap(), 64).unwrap().is_exact_zero());
}

#[test]
fn poles_are_not_evaluated_to_a_finite_ball() {
    for s in ["tan(pi/2)", "cot(pi)", "sec(pi/2)"] {
        let e = parse(s).unwrap();
        for prec in [64, 512] {
            assert!(eval_ball(&e, prec).is_err(), "{s} at {prec} bits");
        }
    }
}

#[test]
fn certify_nonzero_escalates_and_never_claims_zero() {
    let tiny = parse("exp(pi*sqrt(163)) - 262537412640768744").unwrap();
    match certify_nonzero(&tiny, MAX_PRECISION) {
        arithmos::numeric::NonzeroOutcome::Nonzero { precision } => assert!(precision >= 64),
        other => panic!("{other:?}"),
    }
    for z in ["sqrt(2)^2 - 2", "ln(6) - ln(2) - ln(3)", "sin(pi/6) - 1/2", "exp(ln(3)) - 3", "cos(pi) + 1"] {
        let e = parse(z).unwrap();
        assert!(!certify_nonzero(&e, 2048).is_nonzero(), "{z}");
        assert!(!nonzero_at(&e, 512), "{z}");
    }
}

fn ball(e: &str, prec: u64) -> RealBall {
    eval_ball(&parse(e).unwrap(), prec).unwrap().re
}

#[test]
fn relation_search_finds_planted_relations() {
    let x = ball("sqrt(2)", 512);
    let vals = [RealBall::one(), x.clone(), x.sqr(512)];
    let rel = integer_relation(&vals, &BigInt::from(1000)).unwrap().expect("relation");
    let r: Vec<i64> = rel.iter().map(|c| i64::try_from(c).unwrap()).collect();
    assert!(r == vec![2, 0, -1] || r == vec![-2, 0, 1], "{r:?}");

    let phi = ball("(1 + sqrt(5))/2", 512);
    let vals = [RealBall::one(), phi.clone(), phi.sqr(512)];
    assert!(integer_relation(&vals, &BigInt::from(1000)).unwrap().is_some());
}

#[test]
fn relation_search_finds_nothing_for_transcendentals() {
    for s in ["ln(pi)", "tanh(ln(pi))", "atan(1/2)/pi"] {
        let x = ball(s, 512);
        let vals = [RealBall::one(), x.clone(), x.sqr(512), x.sqr(512).mul(&x, 512)];
        assert_eq!(integer_relation(&vals, &BigInt::from(1000)).unwrap(), None, "{s}");
    }
}

#[test]
fn relation_search_reports_missing_precision() {
    let x = ball("pi", 16);
    assert!(integer_relation(&[RealBall::one(), x], &BigInt::from(1_000_000)).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ball_arithmetic_encloses_rational_arithmetic(
        a in -10_000i64..10_000, b in 1i64..1000, c in -10_000i64..10_000, d in 1i64..1000
    ) {
        let p = BigRational::new(a.into(), b.into());
        let q = BigRational::new(c.into(), d.into());
        let (x, y) = (RealBall::from_rational(&p, 80), RealBall::from_rational(&q, 80));
        prop_assert!(x.add(&y, 80).contains_rational(&(&p + &q)));
        prop_assert!(x.sub(&y, 80).contains_rational(&(&p - &q)));
        prop_assert!(x.mul(&y, 80).contains_rational(&(&p * &q)));
        if !q.is_zero() {
            prop_assert!(x.div(&y, 80).unwrap().contains_rational(&(&p / &q)));
        }
    }

    #[test]
    fn refinement_keeps_balls_overlapping(n in 2u32..60, k in 1u32..7) {
        let s = format!("ln({n}) + sin({k}/{n}) + exp(1/{k})");
        let e = parse(&s).unwrap();
        let lo = eval_ball(&e, 64).unwrap().re;
        let hi = eval_ball(&e, 256).unwrap().re;
        prop_assert!(lo.overlaps(&hi));
        prop_assert!(hi.rad().to_rational() <= lo.rad().to_rational());
    }

    #[test]
    fn dyadic_rational_round_trip(m in -1_000_000i64..1_000_000, k in -40i64..40) {
        let d = Dyadic::new(BigInt::from(m), k);
        prop_assert_eq!(Dyadic::from_rational_exact(&d.to_rational()), Some(d));
    }
}
