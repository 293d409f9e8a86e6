"""Exit criteria. Run ``pytest tests/test_acceptance.py`` for one line per criterion."""

import io
import json
import sys
import time
from pathlib import Path

import pytest

import tables
from praaf import (
    GroundTruth,
    PrAAF,
    check_equivalence,
    enumerate_worlds,
    extension_distribution,
    from_normal_form,
    parse_praaf,
    to_normal_form,
)
from praaf.cli import main
from praaf.constellation import total
from praaf.corpus import random_corpus

DATA = Path(__file__).resolve().parent.parent / "data"
FIG2, FIG3 = str(DATA / "fig2.praaf"), str(DATA / "fig3.praaf")
TOL = 1e-9
CORPUS_SIZE = 500
COROLLARY = ["admissible", "complete", "grounded", "preferred", "stable"]


@pytest.fixture(scope="module")
def corpus():
    c = random_corpus(CORPUS_SIZE, seed=20181)
    assert all(len(p.p_args) <= 4 and len(p.p_atts) <= 5 for p in c)
    return c


def cli_jsonl(*argv):
    out = io.StringIO()
    assert main([*argv, "--output", "jsonl"], out=out) == 0
    return [json.loads(line) for line in out.getvalue().splitlines()]


def transform_target(p: PrAAF) -> PrAAF:
    """The normal form, or ``p`` plus an isolated ground truth when nothing moved."""
    cert = to_normal_form(p)
    if cert.mapping:
        return cert.transformed
    return PrAAF({**p.p_args, "eta": 1}, p.p_atts)


def test_criterion_1_table_one(record_property):
    record_property("criterion", "1 Table 1 reproduction")
    start = time.perf_counter()
    rows = cli_jsonl("worlds", FIG2, "--extensions", "--semantics", "admissible")
    elapsed = time.perf_counter() - start
    worlds, totals = rows[:-1], rows[-1]
    assert len(worlds) == 8
    for got, paper, shaded in zip(worlds, tables.TABLE_1, tables.SHADED):
        ac, bc, c, prob, sets = paper
        literals = ["(a->c)" if ac else "!(a->c)", "(b->c)" if bc else "!(b->c)", "c" if c else "!c"]
        assert got["world"] == " & ".join(literals)
        assert abs(got["probability"] - prob) <= TOL
        assert got["proper"] is not shaded
        assert {frozenset(s) for s in got["extensions"]} == tables.as_sets(sets)
    assert abs(totals["total"] - 1) <= TOL
    assert elapsed < 1.0


def test_criterion_2_table_two(tmp_path, record_property):
    record_property("criterion", "2 Table 2 reproduction")
    start = time.perf_counter()
    out_file = tmp_path / "fig2_nf.praaf"
    assert main(["transform", FIG2, "-o", str(out_file)], out=io.StringIO()) == 0
    transformed = parse_praaf(out_file.read_text())
    assert transformed == parse_praaf(Path(FIG3).read_text())
    assert transformed.p_atts[("eta", "c")] == pytest.approx(0.6, abs=TOL)
    assert set(transformed.p_args.values()) == {1}
    rows = cli_jsonl("worlds", str(out_file), "--extensions")[:-1]
    elapsed = time.perf_counter() - start
    assert len(rows) == 8
    by_world = {r["world"]: r for r in rows}
    for ac, bc, eta_c, prob, sets in tables.TABLE_2:
        key = " & ".join([
            "(a->c)" if ac else "!(a->c)",
            "(b->c)" if bc else "!(b->c)",
            "(eta->c)" if eta_c else "!(eta->c)",
        ])
        got = by_world.pop(key)
        assert abs(got["probability"] - prob) <= TOL
        assert got["proper"]
        acceptable = {frozenset(s) for s in got["extensions"] if "eta" in s}
        assert acceptable == tables.as_sets(sets, extra={"eta"})
    assert not by_world
    assert elapsed < 1.0


def test_criterion_3_theorem_on_worked_example(record_property):
    record_property("criterion", "3 Theorem check on the worked example")
    out = io.StringIO()
    assert main(["equiv", FIG2, FIG3, "--semantics", "admissible", "--tol", "1e-9"], out=out) == 0
    assert out.getvalue().startswith("PASS")
    fig2 = parse_praaf(Path(FIG2).read_text())
    fig3 = parse_praaf(Path(FIG3).read_text())
    report = check_equivalence(fig2, fig3, GroundTruth(), "admissible", TOL)
    assert report.passed
    expected = tables.table_sum(tables.TABLE_1, lambda s: frozenset("abd") in s)
    assert abs(expected - 0.916) <= TOL
    assert abs(report.left[{"a", "b", "d"}] - expected) <= TOL
    assert abs(report.right[{"a", "b", "d"}] - expected) <= TOL


def test_criterion_4_corollary_suite(corpus, record_property):
    record_property("criterion", "4 Corollary property suite")
    start = time.perf_counter()
    failures = []
    for i, p in enumerate(corpus):
        target = transform_target(p)
        for sigma in COROLLARY:
            if not check_equivalence(p, target, GroundTruth(), sigma, TOL).passed:
                failures.append((i, sigma))
    elapsed = time.perf_counter() - start
    print(f"corollary suite: {len(corpus)} PrAAFs x {len(COROLLARY)} semantics in {elapsed:.1f}s")
    assert failures == []
    assert elapsed < 60.0


def test_criterion_5_reversibility(corpus, record_property):
    record_property("criterion", "5 Reversibility")
    restored = 0
    for p in corpus:
        cert = to_normal_form(p)
        back = from_normal_form(cert.transformed) if cert.mapping else cert.transformed
        restored += back == p
    assert restored == len(corpus)


def test_criterion_6_probability_conservation(corpus, record_property):
    record_property("criterion", "6 Probability conservation")
    for p in corpus:
        for mode in ("raw", "induced"):
            assert abs(total(w.probability for w in enumerate_worlds(p, mode)) - 1) <= TOL
        for sigma in ["conflict-free"] + COROLLARY:
            raw = extension_distribution(p, sigma, "raw")
            induced = extension_distribution(p, sigma, "induced")
            assert raw.entries.keys() == induced.entries.keys()
            assert all(abs(raw[k] - induced[k]) <= TOL for k in raw.entries)


def test_criterion_7_transformation_growth(corpus, record_property):
    record_property("criterion", "7 Complexity proposition (growth)")
    for p in corpus:
        n = sum(1 for v in p.p_args.values() if v < 1)
        t = to_normal_form(p).transformed
        assert len(t.p_args) - len(p.p_args) == (1 if n else 0)
        assert len(t.p_atts) - len(p.p_atts) == n


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
