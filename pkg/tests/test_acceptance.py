"""Acceptance suite: one test (and one printed pass/fail line) per
top-level criterion.  Run with -s or -v to see the lines."""

import random
import time

from fpverify import (
    Derivation,
    Word,
    derive_by_collapse,
    enumerate_cosets,
    free_reduce,
    homology_h1,
    run_scenario,
    simplify,
    smith_normal_form,
    verify_derivation,
)
from fpverify.corpus import load_corpus_presentation, load_scenario
from fpverify.presentation import Presentation
from fpverify.words import CONVENTION_DEFAULT, CONVENTION_GAP

from conftest import FINITE_BATTERY, random_letters
from test_snf import minor_gcd_invariants


def report(name: str, ok: bool, detail: str = "") -> None:
    line = f"{name}: {'PASS' if ok else 'FAIL'}"
    if detail:
        line += f"  ({detail})"
    print(line)
    assert ok, line


def _triviality(filename: str, label: str) -> None:
    t0 = time.monotonic()
    p = load_corpus_presentation(filename, convention=CONVENTION_DEFAULT)
    result = enumerate_cosets(p, (), strategy="hlt-lookahead",
                              max_cosets=1_000_000)
    elapsed = time.monotonic() - t0
    # the alternate commutator convention is inferred, not stated in the
    # source; run under it too and record the outcome either way
    p_gap = load_corpus_presentation(filename, convention=CONVENTION_GAP)
    gap = enumerate_cosets(p_gap, (), strategy="hlt-lookahead",
                           max_cosets=200_000)
    gap_note = (f"gap-convention: index {gap.index}" if gap.completed
                else "gap-convention: inconclusive within limit")
    report(label,
           result.completed and result.index == 1 and elapsed < 120.0,
           f"strategy={result.strategy} convention=default "
           f"index={result.index} live_max={result.cosets_live_max} "
           f"defined={result.cosets_defined_total} "
           f"elapsed={elapsed:.2f}s; {gap_note}")


def test_criterion_1_triviality_reduced():
    _triviality("pi1-N-reduced.grp", "triviality-reduced-presentation")


def test_criterion_2_triviality_full():
    _triviality("pi1-N-full.grp", "triviality-full-presentation")


def test_criterion_3_elimination_chain():
    r = run_scenario("elimination-y-w")
    report("elimination-chain-equivalence", r.status == "pass",
           "; ".join(f"{s.name}={s.status}" for s in r.steps))


def test_criterion_4_derivation_certificates():
    outcomes = []
    ok = True
    for sid in ("derive-qc-commute", "derive-cx-commute", "derive-gx2",
                "conjugacy-x"):
        r = run_scenario(sid)
        outcomes.append(f"{sid}={r.status}")
        ok = ok and r.status == "pass"
    report("derivation-certificates", ok, "; ".join(outcomes))


def test_criterion_5_redundancy():
    r = run_scenario("redundancy-nine")
    count_step = next(s for s in r.steps if s.name == "count")
    certified = count_step.detail.get("certified", 0)
    # additionally re-discover one witness from scratch with the bounded
    # search to show the frozen chains are reproducible
    s = load_scenario("redundancy-nine")
    full = s.presentation()
    i = 15
    rest = full.with_relators(
        [x for j, x in enumerate(full.relators) if j != i])
    fresh = derive_by_collapse(rest, full.relators[i])
    fresh_ok = (verify_derivation(rest, fresh)
                and Derivation.from_json(fresh.to_json()) == fresh)
    report("redundancy-at-least-nine",
           r.status == "pass" and certified >= 9 and fresh_ok,
           f"certified={certified} fresh-rediscovery steps={len(fresh.steps)}")


def test_criterion_6_homology_cross_checks():
    e0 = homology_h1(load_corpus_presentation("pi1-E0-tilde.grp"))
    full = homology_h1(load_corpus_presentation("pi1-N-full.grp"))
    reduced = homology_h1(load_corpus_presentation("pi1-N-reduced.grp"))
    # every Trivial verdict in the scenario pipelines is accompanied by an
    # independent H1 cross-check step
    accompanied = True
    for sid in ("pi1-N-full", "pi1-N-reduced"):
        r = run_scenario(sid)
        steps = {s.name: s.status for s in r.steps}
        accompanied = accompanied and steps.get("triviality") == "pass" \
            and steps.get("h1-cross-check") == "pass"
    ok = ((e0.free_rank, e0.torsion) == (2, ())
          and full.is_trivial() and reduced.is_trivial() and accompanied)
    report("homology-cross-checks", ok,
           f"E0: Z^{e0.free_rank}; full trivial={full.is_trivial()}; "
           f"reduced trivial={reduced.is_trivial()}; "
           f"verdicts accompanied={accompanied}")


def test_criterion_7_property_suites():
    rng = random.Random(20260823)

    # free-reduction laws on 10,000 random words
    for _ in range(10_000):
        s = random_letters(rng)
        t = random_letters(rng)
        w = free_reduce(s)
        assert free_reduce(w.letters) == w
        assert (w * w.inverse()).is_identity()
        assert free_reduce(s + t) == w * free_reduce(t)

    # Smith form vs minor-gcd brute-force oracle on 1,000 random matrices
    for _ in range(1_000):
        rows = rng.randrange(1, 6)
        cols = rng.randrange(1, 6)
        m = [[rng.randint(-4, 4) for _ in range(cols)] for _ in range(rows)]
        assert smith_normal_form(m).diagonal == \
            minor_gcd_invariants(m, rows, cols)

    # Tietze moves preserve H1: corpus presentations and 100 random ones
    for name in ("pi1-E0-tilde.grp", "eleven-new-relators.grp",
                 "pi1-N-raw.grp", "pi1-N-full.grp", "pi1-N-reduced.grp"):
        p = load_corpus_presentation(name)
        out, _ = simplify(p)
        assert homology_h1(out) == homology_h1(p)
    for _ in range(100):
        gens = list("abcd")[: rng.randrange(1, 5)]
        rels = [Word((rng.choice(gens), rng.choice((1, -1)))
                     for _ in range(rng.randrange(1, 7)))
                for _ in range(rng.randrange(5))]
        p = Presentation(gens, rels)
        out, _ = simplify(p)
        assert homology_h1(out) == homology_h1(p)

    # finite battery enumerates to the known orders under both strategies
    for _, text, order in FINITE_BATTERY:
        from fpverify import parse_presentation
        p = parse_presentation(text)
        for strategy in ("hlt-lookahead", "felsch"):
            result = enumerate_cosets(p, (), strategy=strategy)
            assert result.completed and result.index == order, (text, strategy)

    report("property-suites", True,
           "10000 words; 1000 matrices; H1-invariance corpus+100; "
           f"battery x {len(FINITE_BATTERY)} groups x 2 strategies")
