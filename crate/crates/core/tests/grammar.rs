mod common;

use arithmos::grammar::{canonicalize, parse, render, render_compact, Expr, GrammarError};
use arithmos::numeric::eval_ball;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn canonical_forms_of_equal_inputs_agree() {
    let same = [
        ("pi + e", "e + pi"),
        ("2*pi*3", "6*pi"),
        ("arctan(1/2)/pi", "atan(1/2)*pi^(-1)"),
        ("2^(1/2)", "sqrt(2)"),
        ("(pi*e)*ln(2)", "pi*(e*ln(2))"),
        ("--3", "3"),
    ];
    for (a, b) in same {
        assert_eq!(parse(a).unwrap(), parse(b).unwrap(), "{a} vs {b}");
    }
}

#[test]
fn compact_rendering_drops_spaces() {
    assert_eq!(render_compact(&parse("pi + e").unwrap()), "pi+e");
    assert_eq!(render_compact(&parse("pi*e").unwrap()), "pi*e");
}

#[test]
fn error_kinds() {
    assert!(matches!(parse("ln(0)"), Err(GrammarError::Domain(_))));
    assert!(matches!(parse("0^0"), Err(GrammarError::Domain(_))));
    assert!(matches!(parse("1/(0)"), Err(GrammarError::Domain(_))));
    assert!(matches!(parse("x + 1"), Err(GrammarError::UnknownIdentifier { .. })));
    assert!(matches!(parse("2 +"), Err(GrammarError::Parse { .. })));
    assert!(matches!(parse("sin(1"), Err(GrammarError::Parse { .. })));
}

#[test]
fn deep_nesting_parses() {
    let s = format!("{}1{}", "sqrt(".repeat(200), ")".repeat(200));
    assert_eq!(parse(&s).unwrap(), Expr::int(1));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn render_parse_round_trip(seed in any::<u64>(), depth in 1u32..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let raw = common::raw_tree(&mut rng, depth);
        if let Ok(c) = canonicalize(&raw) {
            prop_assert_eq!(canonicalize(&c).unwrap(), c.clone());
            let text = render(&c);
            prop_assert_eq!(parse(&text).unwrap(), c.clone(), "{}", text);
            prop_assert_eq!(parse(&render_compact(&c)).unwrap(), c);
        }
    }

    #[test]
    fn canonicalization_preserves_value(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let raw = common::raw_tree(&mut rng, 3);
        let Ok(c) = canonicalize(&raw) else { return Ok(()) };
        for prec in [64u64, 160] {
            if let (Ok(a), Ok(b)) = (eval_ball(&raw, prec), eval_ball(&c, prec)) {
                prop_assert!(a.re.overlaps(&b.re) && a.im.overlaps(&b.im), "{}", render(&c));
            }
        }
    }

    #[test]
    fn garbage_never_panics(s in "[-+*/^()0-9a-z ]{0,24}") {
        let _ = parse(&s);
    }
}
