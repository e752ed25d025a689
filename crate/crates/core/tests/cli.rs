use arithmos::cli::{run, EXIT_DOMAIN, EXIT_OK, EXIT_PARSE};
use arithmos::engine::catalog;
use serde_json::Value;
use std::io::Write;

fn arithmos(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("arithmos").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn temp_file(name: &str, body: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("arithmos-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    let mut f = std::fs::File::create(&path).unwrap();
    f.write_all(body.as_bytes()).unwrap();
    path
}

fn json_lines(s: &str) -> Vec<Value> {
    s.lines().map(|l| serde_json::from_str(l).expect("json line")).collect()
}

#[test]
fn classify_prints_the_label() {
    let (code, out, _) = arithmos(&["classify", "2^sqrt(2)"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.trim(), "TRANSCENDENTAL");

    let (code, out, _) = arithmos(&["classify", "pi + e"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(
        out.trim(),
        "UNKNOWN (rational, algebraic-irrational, or transcendental); related fact: at least 1 of {pi+e, pi*e} transcendental"
    );

    let (_, out, _) = arithmos(&["classify", "atan(1)/pi"]);
    assert_eq!(out.trim(), "RATIONAL (= 1/4)");
}

#[test]
fn explain_appends_the_derivation() {
    let (code, out, _) = arithmos(&["classify", "--explain", "2^sqrt(2)"]);
    assert_eq!(code, EXIT_OK);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "TRANSCENDENTAL");
    assert!(lines.last().unwrap().ends_with("R-GS (Gelfond–Schneider): transcendental"));
    assert_eq!(lines.len(), 4);
}

#[test]
fn exit_code_matrix() {
    let cases: &[(&[&str], i32)] = &[
        (&["classify", "3/4"], EXIT_OK),
        (&["classify", "ln(0)"], EXIT_DOMAIN),
        (&["classify", "1/(0)"], EXIT_DOMAIN),
        (&["classify", "tan(pi/2)"], EXIT_DOMAIN),
        (&["classify", "0^0"], EXIT_DOMAIN),
        (&["classify", "1 +"], EXIT_PARSE),
        (&["classify", "foo(2)"], EXIT_PARSE),
        (&["classify", "(pi"], EXIT_PARSE),
        (&["classify", "pi", "--precision", "0"], EXIT_PARSE),
        (&["classify", "pi", "--precision", "65537"], EXIT_PARSE),
        (&["classify", "pi", "--max-degree", "1"], EXIT_PARSE),
        (&["classify", "pi", "--precision", "128", "--max-degree", "8"], EXIT_OK),
        (&["frobnicate"], EXIT_PARSE),
        (&["rules"], EXIT_OK),
        (&["batch", "/nonexistent/arithmos/input.txt"], EXIT_PARSE),
    ];
    for (args, want) in cases {
        let (code, _, _) = arithmos(args);
        assert_eq!(code, *want, "{args:?}");
    }
}

#[test]
fn errors_go_to_stderr_and_json_errors_stay_json() {
    let (code, out, err) = arithmos(&["classify", "ln(0)"]);
    assert_eq!(code, EXIT_DOMAIN);
    assert!(out.is_empty());
    assert!(err.contains("ln(0)"));

    let (code, out, _) = arithmos(&["--json", "classify", "1 +"]);
    assert_eq!(code, EXIT_PARSE);
    let v = &json_lines(&out)[0];
    assert_eq!(v["kind"], "parse");
    assert_eq!(v["input"], "1 +");
}

#[test]
fn json_classify_with_certificate() {
    let (code, out, _) = arithmos(&["--json", "--explain", "classify", "2^sqrt(2)"]);
    assert_eq!(code, EXIT_OK);
    let v = &json_lines(&out)[0];
    assert_eq!(v["verdict"]["natures"], serde_json::json!(["TRANS"]));
    assert_eq!(v["certificate"]["rule"], "R-GS");
    let cert = arithmos::certificate::Certificate::from_json(&v["certificate"]).unwrap();
    assert!(arithmos::certificate::replay(&cert).is_valid());
}

#[test]
fn batch_shares_one_knowledge_base() {
    let path = temp_file("three.txt", "# one of three at t = pi\npi+e\n\npi*e\nln(pi)\n");
    let (code, out, _) = arithmos(&["--json", "batch", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    let recs = json_lines(&out);
    let verdicts: Vec<&Value> = recs.iter().filter(|r| r.get("verdict").is_some()).collect();
    assert_eq!(verdicts.len(), 3);
    assert_eq!(verdicts[0]["line"], 2);
    assert_eq!(verdicts[2]["input"], "ln(pi)");
    let disj: Vec<&Value> = recs.iter().filter_map(|r| r.get("disjunctive")).collect();
    assert!(disj.iter().any(|d| d["at_least"] == 2 && d["class"] == "TRANS"));
    assert!(disj.iter().any(|d| d["at_least"] == 1 && d["rule"] == "R-SUMPROD"));
}

#[test]
fn batch_reports_bad_lines_and_continues() {
    let path = temp_file("mixed.txt", "2^sqrt(2)\nsin(\nln(2)\n");
    let (code, out, err) = arithmos(&["--json", "batch", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    let recs = json_lines(&out);
    assert_eq!(recs.iter().filter(|r| r.get("verdict").is_some()).count(), 2);
    let errors: Vec<&Value> = recs.iter().filter(|r| r.get("error").is_some()).collect();
    assert_eq!(errors.len(), 1);
    assert_eq!(errors[0]["line"], 2);
    assert!(err.contains("line 2"));

    let (code, out, _) = arithmos(&["batch", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("1: 2^sqrt(2) => TRANSCENDENTAL"));
}

#[test]
fn empty_batch_is_silent() {
    let path = temp_file("empty.txt", "");
    let (code, out, err) = arithmos(&["batch", path.to_str().unwrap()]);
    assert_eq!((code, out.as_str(), err.as_str()), (EXIT_OK, "", ""));
    let path = temp_file("comments.txt", "# nothing here\n\n");
    let (code, out, _) = arithmos(&["--json", "batch", path.to_str().unwrap()]);
    assert_eq!((code, out.as_str()), (EXIT_OK, ""));
}

#[test]
fn rules_lists_the_catalog() {
    let (code, out, _) = arithmos(&["rules"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("R-GS — Lemma 3 — any value of α^β is transcendental"));
    assert!(out.contains("R-LNPI — Theorem 9 — holds for all non-negative integers"));
    let heads = out.lines().filter(|l| !l.starts_with(' ')).count();
    assert_eq!(heads, catalog().len());

    let (_, out, _) = arithmos(&["--json", "rules"]);
    let recs = json_lines(&out);
    assert_eq!(recs.len(), catalog().len());
    assert!(recs.iter().all(|r| r["id"].is_string() && r["anchor"].is_string()));
}
