import math

from shapeinv import verify
from shapeinv.family import build_family
from shapeinv.tilde import make_tilde


def _opts(**kw):
    return verify.Options(quick=True, **kw)


def test_check_pass_logic():
    assert verify.Check("a", 1e-12, 1e-10).passed
    assert not verify.Check("a", 1e-9, 1e-10).passed
    assert not verify.Check("a", math.nan, 1e-10).passed
    assert verify.Check("a", 0.0, 0.0).as_dict() == {"check": "a", "value": 0.0,
                                                      "tolerance": 0.0, "pass": True}


def test_single_family_suites():
    opts = _opts(families=[build_family("one", -2, 0)], tilde_families=[])
    for suite in ("oracle", "ladder", "factorization", "orthogonality", "schrodinger"):
        report = verify.run(suite, opts)
        assert report["suite"] == suite
        assert report["passed"], report["checks"]
        assert all({"check", "value", "tolerance", "pass"} <= set(c) for c in report["checks"])


def test_tilde_suite_reports_non_normalizable_states():
    tf = make_tilde(build_family("s2-minus-1", -10, 0, mode="tilde"), "1/2")
    report = verify.run("tilde", _opts(families=[], tilde_families=[tf]))
    assert report["passed"], report["checks"]
    assert {n["l"] for n in report["non_normalizable"]} == {0, 1, 2}


def test_tightened_tolerance_fails():
    opts = _opts(families=[build_family("s", -1, 1)], tilde_families=[])
    opts.tolerances["residual"] = 0.0
    assert not verify.run("schrodinger", opts)["passed"]


def test_runs_are_reproducible():
    opts = _opts(families=[build_family("s2", -10, 1)], tilde_families=[])
    assert verify.run("schrodinger", opts) == verify.run("schrodinger", opts)
