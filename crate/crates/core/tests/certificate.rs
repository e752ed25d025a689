use arithmos::certificate::{
    render_certificate, replay, replay_with, Certificate, Conclusion, Format, ReplayConfig, Validity,
};
use arithmos::engine::catalog::{catalog, ANCHOR_TABLE};
use arithmos::engine::{EngineConfig, KnowledgeBase, Natures, Verdict};
use arithmos::grammar::parse;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

const CORPUS: &[&str] = &[
    "2^sqrt(2)",
    "3/4",
    "exp(pi)",
    "sin(1)",
    "cosh(1)",
    "ln(2)",
    "atan(1/2)/pi",
    "atan(1)/pi",
    "acos(1/3)/pi",
    "cos(sqrt(2)*pi)",
    "tan(ln(2))",
    "tanh(ln(pi))",
    "exp(1 + pi)",
    "(1 + ln(2))/pi",
    "ln(2) + ln(3) - ln(5)",
    "ln(2) + ln(3) - ln(6)",
    "ln(pi) - pi",
    "ln(pi) - 3/2*sqrt(2)*pi",
    "pi + e",
    "ln(2)/ln(3)",
];

fn cert(s: &str) -> Certificate {
    let mut kb = KnowledgeBase::new();
    let e = parse(s).unwrap();
    kb.classify(&e).unwrap();
    kb.explain(&e).unwrap()
}

fn anchors() -> Vec<String> {
    ANCHOR_TABLE
        .lines()
        .filter(|l| !l.starts_with('#') && !l.is_empty())
        .map(|l| {
            let cols: Vec<&str> = l.split('\t').collect();
            format!("{} — {}", cols[1], cols[2])
        })
        .collect()
}

#[test]
fn corpus_certificates_replay_valid() {
    for s in CORPUS {
        let c = cert(s);
        assert_eq!(replay(&c), Validity::Valid, "{s}");
    }
}

#[test]
fn rational_literal_is_a_single_step() {
    let c = cert("3/4");
    assert_eq!(c.chain(), vec!["CL1"]);
    assert!(replay(&c).is_valid());
}

#[test]
fn json_round_trip_is_bit_stable() {
    for s in CORPUS {
        let c = cert(s);
        let text = render_certificate(&c, Format::Json);
        let back = Certificate::parse_json(&text).unwrap();
        assert_eq!(back, c, "{s}");
        assert_eq!(render_certificate(&back, Format::Json), text, "{s}");
        assert_eq!(render_certificate(&cert(s), Format::Json), text, "{s}");
    }
}

#[test]
fn json_schema_field_names() {
    let v = cert("2^sqrt(2)").to_json();
    for k in ["subject", "verdict", "rule", "anchor", "evidence", "premises"] {
        assert!(v.get(k).is_some(), "{k}");
    }
    assert_eq!(v["verdict"]["natures"], json!(["TRANS"]));
    assert_eq!(v["verdict"]["nonzero"], "YES");
}

#[test]
fn disjunctive_certificate_json() {
    let c = cert("pi + e");
    let mut found = false;
    c.walk(&mut |n| {
        if n.rule == "R-SUMPROD" {
            let v = n.to_json();
            assert_eq!(v["at_least"], 1);
            assert_eq!(v["class"], "TRANS");
            assert_eq!(v["members"], json!(["pi + e", "pi*e"]));
            found = true;
        }
    });
    assert!(found);
}

#[test]
fn every_anchor_comes_from_the_table() {
    let table = anchors();
    for r in catalog() {
        assert!(table.contains(&r.anchor()), "{}", r.id);
    }
    for s in CORPUS {
        cert(s).walk(&mut |n| assert!(table.contains(&n.anchor), "{} in {s}", n.anchor));
    }
}

#[test]
fn tampered_premise_is_caught() {
    let mut c = cert("2^sqrt(2)");
    let sqrt2 = c.premises.iter_mut().find(|p| p.subject() == Some("sqrt(2)")).unwrap();
    if let Conclusion::Single { verdict, .. } = &mut sqrt2.conclusion {
        *verdict = Verdict::with(Natures::RAT);
    }
    assert_eq!(replay(&c), Validity::Invalid("premise mismatch at R-GS".into()));
}

#[test]
fn wrong_anchor_and_unknown_rule_are_caught() {
    let mut c = cert("ln(2)");
    c.anchor = "somewhere — something else".into();
    assert!(!replay(&c).is_valid());
    let mut c = cert("ln(2)");
    c.rule = "R-NOPE".into();
    assert!(!replay(&c).is_valid());
}

#[test]
fn hypothetical_facts_never_replay() {
    let mut kb = KnowledgeBase::with_config(EngineConfig { hypothetical: true, ..EngineConfig::default() });
    let s = parse("pi + e").unwrap();
    kb.assume(&s, Verdict::with(Natures::RAT)).unwrap();
    let c = kb.explain(&s).unwrap();
    assert!(!replay(&c).is_valid());
}

#[test]
fn nonzero_upgrade_records_precision() {
    let c = cert("ln(1 + sqrt(2)) - ln(3)");
    assert!(replay_with(&c, &ReplayConfig::default()).is_valid());
    let mut up = None;
    c.walk(&mut |n| {
        if n.rule == "R-NZ-UPGRADE" {
            up = Some(n.clone());
        }
    });
    let up = up.expect("upgrade step");
    assert!(up.evidence["precision"].as_u64().unwrap() >= 64);
    assert!(replay(&up).is_valid());

    // the same step cannot be pasted onto a vanishing form
    let zero = cert("ln(2) + ln(3) - ln(6)");
    assert_eq!(zero.verdict().unwrap().value, Some(num_rational::BigRational::from_integer(0.into())));
    let mut forged = up.clone();
    forged.conclusion = Conclusion::Single { subject: zero.subject().unwrap().into(), verdict: Verdict::trans() };
    forged.premises = zero.premises.clone();
    assert!(!replay(&forged).is_valid());
}

fn mutate(c: &mut Certificate, rng: &mut ChaCha8Rng) {
    let n = c.size();
    let target = rng.gen_range(0..n);
    let mut i = 0;
    mutate_at(c, target, &mut i, rng);
}

fn mutate_at(c: &mut Certificate, target: usize, i: &mut usize, rng: &mut ChaCha8Rng) -> bool {
    for p in &mut c.premises {
        if mutate_at(p, target, i, rng) {
            return true;
        }
    }
    if *i != target {
        *i += 1;
        return false;
    }
    match &mut c.conclusion {
        Conclusion::Single { subject, verdict } => {
            // a bare TOP claim holds for any subject, so only its verdict is tampered
            if rng.gen_bool(0.5) || (c.rule == "TOP" && c.premises.is_empty()) {
                let options = [Natures::RAT, Natures::ALGIRR, Natures::TRANS, Natures::RAT_OR_TRANS, Natures::ALL];
                let other: Vec<_> = options.iter().filter(|n| **n != verdict.natures).collect();
                *verdict = Verdict::with(**other.choose(rng).unwrap());
            } else {
                subject.push_str(" + 1");
            }
        }
        Conclusion::Disjunctive { at_least, .. } => *at_least += 1,
    }
    true
}

#[test]
fn twenty_mutations_all_fail() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let base: Vec<Certificate> = CORPUS.iter().map(|s| cert(s)).collect();
    for k in 0..20 {
        let mut c = base[k % base.len()].clone();
        mutate(&mut c, &mut rng);
        assert!(c != base[k % base.len()]);
        assert!(!replay(&c).is_valid(), "mutation {k} of {} survived", CORPUS[k % CORPUS.len()]);
    }
}

#[test]
fn unknown_verdicts_cannot_be_moved_to_another_subject() {
    let c = cert("pi + e");
    assert_eq!(c.rule, "TOP");
    let mut moved = c.clone();
    if let Conclusion::Single { subject, .. } = &mut moved.conclusion {
        *subject = "ln(pi)".into();
    }
    assert_eq!(replay(&moved), Validity::Invalid("premise mismatch at TOP".into()));
    let mut raw = c.clone();
    if let Conclusion::Single { subject, .. } = &mut raw.conclusion {
        *subject = "e + pi".into();
    }
    assert_eq!(replay(&raw), Validity::Invalid("conclusion mismatch at TOP".into()));
}
