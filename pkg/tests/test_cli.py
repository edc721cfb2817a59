import json

import pytest

from linlat.claims import REGISTRY, Claim, Outcome
from linlat.cli import main
from linlat.corpus import m2, n_c1, pentagon
from linlat.textio import format_lattice


@pytest.fixture
def files(tmp_path):
    out = {}
    for L in (m2(), n_c1(), pentagon()):
        p = tmp_path / f"{L.name}.lat"
        p.write_text(format_lattice(L))
        out[L.name] = str(p)
    p = tmp_path / "cycle.lat"
    p.write_text("lattice c\nelements 0 a b 1\ncover 0 a\ncover a b\ncover b a\ncover b 1\n")
    out["cycle"] = str(p)
    p = tmp_path / "typo.lat"
    p.write_text("lattice t\nelemnts 0 1\n")
    out["typo"] = str(p)
    p = tmp_path / "gens.txt"
    p.write_text("morphism phi : m2 {0->0, a->a, b->0, 1->a}\nmorphism psi : m2 {0->0, a->0, b->b, 1->b}\n")
    out["gens"] = str(p)
    return out


def run(capsys, *argv):
    code = main(list(argv))
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def test_validate(capsys, files):
    code, out, _ = run(capsys, "validate", files["m2"])
    assert code == 0 and "ok m2" in out
    code, _, err = run(capsys, "validate", files["cycle"])
    assert code == 2 and "CycleDetected" in err
    code, _, err = run(capsys, "validate", "--require-modular", files["n5"])
    assert code == 2 and "not modular" in err
    code, _, err = run(capsys, "validate", files["typo"])
    assert code == 1 and "line 2" in err


def test_usage_errors_exit_one(capsys):
    with pytest.raises(SystemExit) as e:
        main(["bogus"])
    assert e.value.code == 1
    code, _, _ = run(capsys, "check", "named:nope")
    assert code == 1
    code, _, _ = run(capsys, "check", "named:m2", "--claims", "not_a_claim")
    assert code == 1


def test_analyze(capsys, files):
    code, out, _ = run(capsys, "analyze", files["m2"])
    assert code == 0
    lines = {ln.split()[0]: ln.split()[1] for ln in out.splitlines()[1:] if ln.strip()}
    assert lines["m_endoregular"] == "true" and lines["m_abelian_endoregular"] == "false"
    _, out, _ = run(capsys, "analyze", files["n_c1"])
    lines = {ln.split()[0]: ln.split()[1] for ln in out.splitlines()[1:] if ln.strip()}
    assert lines["k_extending"] == "true" and lines["m_rickart"] == "false"
    code, _, _ = run(capsys, "analyze", files["n5"])
    assert code == 2


def test_analyze_with_monoid_file(capsys, files):
    code, out, _ = run(capsys, "analyze", files["m2"], "--monoid", "file:" + files["gens"])
    assert code == 0
    assert any(ln.split()[:2] == ["m_abelian_endoregular", "true"] for ln in out.splitlines())


@pytest.mark.parametrize("name, count", [("m2", 7), ("n_c1", 5), ("chain2", 2)])
def test_endos(capsys, name, count):
    code, out, _ = run(capsys, "endos", "named:" + name)
    assert code == 0 and f"count {count}" in out


def test_endos_records(capsys):
    code, out, _ = run(capsys, "endos", "named:m2", "--format", "records")
    recs = [json.loads(ln) for ln in out.splitlines()]
    assert len(recs) == 7 and all(r["schema"] == 1 for r in recs)


@pytest.mark.parametrize("name, rel, classes", [("n_c1", "delta", 3), ("n_c1", "nabla", 2), ("m2", "delta", 7)])
def test_quotient(capsys, name, rel, classes):
    code, out, _ = run(capsys, "quotient", "named:" + name, "--rel", rel)
    assert code == 0
    assert f"classes {classes}" in out
    assert "regular true" in out


def test_check(capsys):
    code, out, _ = run(capsys, "check", "named:m2")
    assert code == 0 and " fail" not in out
    code, out, _ = run(capsys, "check", "named:m2", "--format", "records")
    assert all(json.loads(ln)["verdict"] != "fail" for ln in out.splitlines())


def test_check_non_modular_is_gated(capsys, files):
    code, out, _ = run(capsys, "check", files["n5"])
    assert code == 0 and "hypotheses_not_met (modular)" in out


def test_sweep(capsys):
    code, out, _ = run(capsys, "sweep", "--max-n", "6", "--modular")
    assert code == 0 and "failures=0" in out
    code, out, _ = run(capsys, "sweep", "--max-n", "5")
    assert code == 0 and "failures=0" in out


def test_sweep_output_does_not_depend_on_jobs(capsys):
    _, one, _ = run(capsys, "sweep", "--max-n", "5", "--monoid", "generated:1", "--jobs", "1")
    _, two, _ = run(capsys, "sweep", "--max-n", "5", "--monoid", "generated:1", "--jobs", "2")
    assert one == two


def test_theorem_violation_exit_status(capsys):
    REGISTRY["always_false"] = Claim("always_false", "t", "t", ("modular",), lambda c: Outcome(False, "w"))
    try:
        code, out, _ = run(capsys, "check", "named:m2", "--claims", "always_false")
        assert code == 3 and "fail" in out
    finally:
        del REGISTRY["always_false"]


def test_corpus(capsys, tmp_path):
    path = tmp_path / "c.txt"
    code, out, _ = run(capsys, "corpus", "--max-n", "5", "--out", str(path))
    assert code == 0 and "10 lattices" in out
    assert path.read_text().startswith("# corpus n=5 modular=false count=10")
    code, out, _ = run(capsys, "corpus", "--max-n", "5", "--min-n", "5", "--modular")
    assert "count=4" in out.splitlines()[0]
    code, out, _ = run(capsys, "sweep", "--max-n", "1", "--corpus", str(path))
    assert code == 0


def test_claims_list_and_describe(capsys):
    code, out, _ = run(capsys, "claims", "list")
    assert code == 0 and "thm_delta" in out
    code, out, _ = run(capsys, "claims", "describe", "thm_delta")
    assert code == 0 and "hypotheses:" in out
    code, _, _ = run(capsys, "claims", "describe", "nope")
    assert code == 1
