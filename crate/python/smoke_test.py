"""Smoke test for the arithmos extension module.

Build first:
    cargo build -p arithmos-py --release --features extension-module
then run:
    python3 python/smoke_test.py
"""

import importlib.util
import json
import shutil
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def load():
    for profile in ("release", "debug"):
        lib = ROOT / "target" / profile / "libarithmos_py.so"
        if lib.exists():
            break
    else:
        sys.exit("libarithmos_py.so not found; build the arithmos-py crate first")
    target = Path(tempfile.mkdtemp()) / "arithmos.so"
    shutil.copy(lib, target)
    spec = importlib.util.spec_from_file_location("arithmos", target)
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    return module


def main():
    ar = load()

    v = ar.classify("2^sqrt(2)")
    assert v.label == "TRANSCENDENTAL", v
    assert v.natures == ["TRANS"] and v.nonzero == "YES"

    q = ar.classify("atan(1)/pi")
    assert q.value == "1/4", q

    assert ar.classify("acos(1/3)/pi").natures == ["RAT", "TRANS"]
    assert ar.canonical("arctan(1/2)/pi") == "atan(1/2)/pi"

    kb = ar.KnowledgeBase()
    facts, disjunctive = kb.classify_set(["pi + e", "pi*e", "ln(pi)"])
    assert len(facts) == 3
    assert any(k == 2 and cls == "TRANS" for _, k, cls in disjunctive), disjunctive
    assert kb.related("pi + e")

    cert = ar.explain("2^sqrt(2)")
    assert cert.chain() == ["CL1", "CL2", "R-GS"]
    assert cert.text().endswith("R-GS (Gelfond–Schneider): transcendental")
    assert cert.replay() == (True, None)
    assert ar.replay(cert.json()) == (True, None)

    doc = json.loads(cert.json())
    doc["premises"][1]["verdict"]["natures"] = ["RAT"]
    ok, reason = ar.replay(json.dumps(doc))
    assert not ok and reason == "premise mismatch at R-GS", reason

    for bad, exc in [("ln(0)", ar.DomainError), ("1 +", ar.ParseError), ("sin x", ar.ParseError)]:
        try:
            ar.classify(bad)
        except exc:
            pass
        else:
            raise AssertionError(f"{bad} did not raise {exc.__name__}")

    ids = [r[0] for r in ar.rules()]
    assert "R-GS" in ids and "R-LNPI" in ids
    gs = next(r for r in ar.rules() if r[0] == "R-GS")
    assert gs[3] == "Lemma 3 — any value of α^β is transcendental"

    print(f"arithmos {ar.__version__}: smoke test passed ({len(ids)} rules)")


if __name__ == "__main__":
    main()
