"""Acceptance criteria 1 to 12.

Each test prints one ``criterion N: pass|FAIL ...`` line; the lines are also
repeated in the terminal summary so they show up without ``-s``.
"""
import time

import pytest

from sotl.fixtures import (build_kt2, connectivity_instances, goal_formula, labelled_fixtures, model_fixtures,
                           run_suite)
from sotl.hilbert import BANK, accepts as hilbert_accepts, default_params, derive_lemma, lemma_statement, \
    lift_kt2_proof
from sotl.labelled import accepts, bottom_derivation, multi_to_single, parse_sequent
from sotl.search import Exhausted, Proved, SearchConfig, branch_report_check, prove_classical, prove_intuitionistic
from sotl.semantics import (Evaluator, PredicateModel, RelationalModel, birel_collapse, collapse_discrepancies,
                            persistence_violations)
from sotl.syntax import BOT, negative_translate
from sotl.translate import labelled_to_hilbert

RESULTS = {}

FIXTURES = labelled_fixtures()
MODELS = model_fixtures()
NON_THEOREMS = ["=> v: P or not P", "=> v: not not P -> P", "v: forall X X => w: P"]


def report(n, ok, detail):
    line = f"criterion {n}: {'pass' if ok else 'FAIL'}  {detail}"
    RESULTS[n] = line
    print(line)
    assert ok, line


def _search(fx, trace=False):
    if fx.calculus == "LKt2":
        return prove_classical(fx.proof.seq, SearchConfig(fuel=400, trace=trace))
    return prove_intuitionistic(fx.proof.seq, SearchConfig(fuel=200, trace=trace))


_SEARCH = {}


def search_results():
    if not _SEARCH:
        for fx in FIXTURES:
            _SEARCH[fx.name] = _search(fx)
    return _SEARCH


def test_criterion_1_axiomatic_lemmas():
    t = time.perf_counter()
    bad = []
    for name, lem in BANK.items():
        pr = derive_lemma(name)
        if pr.conclusion != lemma_statement(name, default_params(name)) or not hilbert_accepts(pr, lem.system):
            bad.append(name)
    dt = time.perf_counter() - t
    report(1, not bad and dt < 10, f"{len(BANK) - len(bad)}/{len(BANK)} lemmas accepted in {dt:.2f}s"
           + (f"; failed {bad}" if bad else ""))


def test_criterion_2_labelled_fixtures():
    rows = run_suite("labelled")[:-1]
    names = {fx.name for fx in FIXTURES}
    dist = next(fx for fx in FIXTURES if fx.name == "or_forall_dist")
    strict = not accepts(dist.proof, "LIKt2")
    bad = [str(r) for r in rows if not r.ok]
    report(2, len(rows) == len(names) == 7 and not bad and strict,
           f"{len(rows) - len(bad)}/{len(rows)} fixtures accepted by their calculus, "
           f"disjunction proof rejected by LIKt2: {strict}")


def test_criterion_3_search_reproduction():
    t = time.perf_counter()
    _SEARCH.clear()
    res = search_results()
    dt = time.perf_counter() - t
    bad = []
    for fx in FIXTURES:
        r = res[fx.name]
        calc = "LKt2" if fx.calculus == "LKt2" else "MLIKt2"
        if not (isinstance(r, Proved) and r.proof.seq == fx.proof.seq and accepts(r.proof, calc, cut=False)):
            bad.append(fx.name)
    report(3, not bad and dt < 60, f"{len(FIXTURES) - len(bad)}/{len(FIXTURES)} goals re-proved cut-free "
           f"in {dt:.2f}s" + (f"; failed {bad}" if bad else ""))


def test_criterion_4_connectivity():
    cases = connectivity_instances(seed=0, count=50, max_rel=6)
    ok = 0
    for rel, lhs, v, w, a in cases:
        assert len(rel) <= 6
        p = bottom_derivation(rel, lhs, v, w, a)
        if p.seq.lhs == lhs | {(v, BOT)} and p.seq.rhs == {(w, a)} and accepts(p, "LIKt2", cut=False):
            ok += 1
    report(4, ok == len(cases) == 50, f"{ok}/{len(cases)} bottom derivations accepted by LIKt2 cut-free")


def test_criterion_5_multi_to_single():
    res = search_results()
    done = bad = 0
    for fx in FIXTURES:
        r = res[fx.name]
        if fx.calculus == "LKt2":
            continue
        done += 1
        chosen, q = multi_to_single(r.proof)
        if not (chosen in r.proof.seq.rhs and q.seq.rhs == {chosen} and accepts(q, "LIKt2", cut=False)):
            bad += 1
    report(5, done > 0 and bad == 0, f"{done - bad}/{done} search proofs reduced to accepted LIKt2 proofs")


def _compile_and_check(proof, classical):
    seq = proof.seq
    root = min(seq.labels())
    if classical:
        h, system = labelled_to_hilbert(proof, root, "classical"), "Kt2"
    else:
        if not accepts(proof, "LIKt2"):
            _, proof = multi_to_single(proof)
        h, system = labelled_to_hilbert(proof, root), "IKt2"
    goal = goal_formula(seq)
    return hilbert_accepts(h, system) and (goal is None or h.conclusion == goal)


def test_criterion_6_translation():
    res = search_results()
    total = bad = 0
    for fx in FIXTURES:
        classical = fx.calculus == "LKt2"
        for proof in (fx.proof, res[fx.name].proof):
            total += 1
            if not _compile_and_check(proof, classical):
                bad += 1
    report(6, bad == 0, f"{total - bad}/{total} fixture and search proofs compiled and accepted")


def test_criterion_7_semantics():
    t = time.perf_counter()
    rows = run_suite("semantics")
    dt = time.perf_counter() - t
    kinds = {type(m).__name__ for m in MODELS.values()}
    bad = [str(r) for r in rows if not r.ok]
    report(7, len(rows) >= 6 and len(kinds) == 3 and not bad and dt < 30,
           f"{len(rows) - len(bad)}/{len(rows)} models valid, comprehensive and satisfy every lemma "
           f"in {dt:.2f}s")


def test_criterion_8_collapse():
    preds = [m for m in MODELS.values() if isinstance(m, PredicateModel)]
    classes = disc = 0
    for m in preds:
        c, bad = collapse_discrepancies(m, max_size=9)
        classes += c
        disc += len(bad)
    report(8, preds and disc == 0, f"{len(preds)} predicate models, {classes} value classes up to size 9, "
           f"{disc} discrepancies")


def test_criterion_9_persistence():
    models = [m for m in MODELS.values() if not isinstance(m, (RelationalModel, PredicateModel))]
    models += [birel_collapse(m) for m in MODELS.values() if isinstance(m, PredicateModel)]
    viol = sum(len(persistence_violations(m, max_size=9)[1]) for m in models)
    report(9, models and viol == 0, f"{len(models)} birelational models up to size 9, {viol} violations")


def test_criterion_10_negative_translation():
    proofs = build_kt2()
    evs = [Evaluator(m) for m in MODELS.values()]
    bad = []
    for name, pr in proofs.items():
        want = negative_translate(pr.conclusion)
        lifted = lift_kt2_proof(pr)
        if not (lifted.conclusion == want and hilbert_accepts(lifted, "IKt2") and all(e.valid(want) for e in evs)):
            bad.append(name)
    dne = sum(1 for pr in proofs.values() if any(getattr(ln.just, "tag", None) == "dne" for ln in pr.lines))
    report(10, len(proofs) == 20 and dne > 0 and not bad,
           f"{len(proofs) - len(bad)}/{len(proofs)} lifts accepted by IKt2 and valid on {len(evs)} models "
           f"({dne} use DNE)" + (f"; failed {bad}" if bad else ""))


def _non_theorem(text, trace=False):
    return prove_intuitionistic(parse_sequent(text), SearchConfig(fuel=500, trace=trace))


def test_criterion_11_non_theorems():
    out = []
    for text in NON_THEOREMS:
        r = _non_theorem(text)
        out.append(isinstance(r, Exhausted) and branch_report_check(r.report).all_pass)
    report(11, all(out), f"{sum(out)}/{len(out)} non-theorems exhausted at fuel 500 with passing reports")


def test_criterion_12_determinism():
    runs = []
    for _ in range(2):
        traces = [("\n".join(_search(fx, True).trace)).encode() for fx in FIXTURES]
        traces += [("\n".join(_non_theorem(t, True).trace)).encode() for t in NON_THEOREMS]
        runs.append(traces)
    same = runs[0] == runs[1] and all(runs[0])
    report(12, same, f"{len(runs[0])} traces byte-identical across two runs")


@pytest.fixture(scope="module", autouse=True)
def _summary():
    yield
    for n in sorted(RESULTS):
        print(RESULTS[n])
