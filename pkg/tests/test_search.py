import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sotl.fixtures import labelled_fixtures
from sotl.labelled import accepts, is_polytree, parse_sequent
from sotl.search import (Activity, BranchReport, Exhausted, Proved, SearchConfig, apply_macro, branch_report_check,
                         prove_classical, prove_intuitionistic, schedule, witness_candidates)
from sotl.syntax import BBox, Prop, parse, subformulas

P, Q = Prop("P"), Prop("Q")


def lf(text):
    v, _, f = text.partition(":")
    return v.strip(), parse(f)


def test_box_left_macro_keeps_principal():
    s = parse_sequent("vRw | v: box P => v: Q")
    prem, = apply_macro(s, Activity("L", "box_l", lf("v: box P"), "w"))
    assert prem.lhs == s.lhs | {("w", P)}
    assert prem.rhs == s.rhs and prem.rel == s.rel


def test_forall_right_macro_keeps_principal():
    s = parse_sequent("=> v: forall X (X -> Q)")
    prem, = apply_macro(s, Activity("R", "forall_r", lf("v: forall X (X -> Q)"), "P0"))
    assert prem.rhs == s.rhs | {("v", parse("P0 -> Q"))}


def test_forall_right_needs_fresh_symbol():
    s = parse_sequent("=> v: forall X (X -> Q)")
    assert apply_macro(s, Activity("R", "forall_r", lf("v: forall X (X -> Q)"), "Q")) is None


def test_absent_principal_is_inapplicable():
    s = parse_sequent("v: P => v: Q")
    assert apply_macro(s, Activity("L", "impl_l", lf("v: P -> Q"))) is None
    assert apply_macro(s, Activity("R", "impl_r", lf("v: P"))) is None


def test_schedule_alternates_principals():
    s = parse_sequent("v: forall X (X -> P), v: forall X (X -> Q) => v: P")
    acts = list(itertools.islice(schedule(s), 10))
    ps = [a.principal for a in acts]
    assert all(a.rule == "forall_l" for a in acts)
    assert ps[0::2] == [ps[0]] * 5 and ps[1::2] == [ps[1]] * 5 and ps[0] != ps[1]


def test_schedule_offers_each_witness_once():
    s = parse_sequent("v: forall X (X -> P) => v: Q")
    acts = list(schedule(s))
    offered = [a.aux for a in acts]
    assert len(offered) == len(set(offered))
    assert set(offered) == witness_candidates(s, SearchConfig())


def test_witness_pool_contents():
    s = parse_sequent("v: forall X (X -> P) => v: Q")
    pool = witness_candidates(s, SearchConfig(hints=("box box P",)))
    assert parse("box box P") in pool
    assert {parse("bot"), parse("top"), Q, BBox(Q)} <= pool
    assert all(f in pool for f in subformulas(parse("forall X (X -> P)")) if not f.depth)


def test_config_rejects_zero_fuel():
    with pytest.raises(ValueError):
        SearchConfig(fuel=0)


def test_classical_identity_implication():
    r = prove_classical(parse_sequent("=> v: P -> P"), SearchConfig(fuel=3))
    assert isinstance(r, Proved)
    assert accepts(r.proof, "LKt2", cut=False)


def test_classical_distribution():
    r = prove_classical(parse_sequent("=> v: (forall X (P or X)) -> P or forall X X"), SearchConfig(fuel=400))
    assert isinstance(r, Proved)
    assert r.proof.uses("impl_l")
    assert not accepts(r.proof, "LIKt2")


def test_disconnected_bottom_is_not_proved():
    for fuel in (5, 50):
        r = prove_classical(parse_sequent("v: bot => w: P"), SearchConfig(fuel=fuel))
        assert isinstance(r, Exhausted)


def test_intuitionistic_forall_box():
    r = prove_intuitionistic(parse_sequent("=> w: (forall X box (X -> P)) -> box forall X (X -> P)"))
    assert isinstance(r, Proved)
    assert accepts(r.proof, "MLIKt2", cut=False)


def test_negated_box_needs_past_box_witness():
    r = prove_intuitionistic(parse_sequent("v: not not box bot => v: box bot"))
    assert isinstance(r, Proved)
    witnesses = [n.arg for n in r.proof.nodes() if n.rule == "forall_l"]
    assert any(BBox in {type(g) for g in subformulas(w)} for w in witnesses)


@pytest.mark.parametrize("goal", ["=> v: P or not P", "=> v: not not P -> P"])
def test_intuitionistic_non_theorems_exhaust(goal):
    r = prove_intuitionistic(parse_sequent(goal), SearchConfig(fuel=200))
    assert isinstance(r, Exhausted)
    assert branch_report_check(r.report).all_pass


def test_classical_excluded_middle_is_proved():
    assert isinstance(prove_classical(parse_sequent("=> v: P or not P")), Proved)


def test_box_left_clause_in_report():
    r = prove_classical(parse_sequent("vRw | v: box P => w: Q"), SearchConfig(fuel=50))
    assert isinstance(r, Exhausted) and r.saturated
    names = {c.name: c.ok for c in branch_report_check(r.report).clauses}
    assert names["box left"]


def test_empty_report_passes():
    assert branch_report_check(BranchReport()).all_pass


def test_overlapping_cedents_flagged():
    s = parse_sequent("v: P => v: P")
    summary = branch_report_check(BranchReport((s,)))
    assert not summary.all_pass
    assert summary.failures[0].name == "disjoint"


FIXTURES = labelled_fixtures()


def _run(fx, trace=False):
    if fx.calculus == "LKt2":
        return prove_classical(fx.proof.seq, SearchConfig(fuel=400, trace=trace))
    return prove_intuitionistic(fx.proof.seq, SearchConfig(fuel=200, trace=trace))


@pytest.mark.parametrize("fx", FIXTURES, ids=lambda f: f.name)
def test_search_output_checks_and_stays_polytree(fx):
    r = _run(fx)
    assert isinstance(r, Proved)
    calc = "LKt2" if fx.calculus == "LKt2" else "MLIKt2"
    assert accepts(r.proof, calc, cut=False)
    if is_polytree(fx.proof.seq.rel, fx.proof.seq):
        assert all(is_polytree(n.seq.rel, n.seq) for n in r.proof.nodes())


@pytest.mark.parametrize("fx", FIXTURES, ids=lambda f: f.name)
def test_search_is_deterministic(fx):
    a, b = _run(fx, True), _run(fx, True)
    assert a.trace and a.trace == b.trace and a.fuel_used == b.fuel_used


_GOALS = st.sampled_from([
    "vRw | v: box (P -> Q), v: box P => w: Q",
    "v: forall X (X -> P), v: Q -> P => v: P",
    "wRv | v: bbox P, w: P -> Q => w: Q, v: P",
    "=> v: box (P -> P)",
    "v: P -> Q => v: Q -> P",
])


@settings(max_examples=40, deadline=None)
@given(_GOALS, st.integers(0, 30))
def test_macro_steps_are_monotone(goal, k):
    s = parse_sequent(goal)
    acts = list(itertools.islice(schedule(s), k + 1))
    if not acts:
        return
    act = acts[-1]
    if act.rule == "forall_r":
        act = Activity(act.side, act.rule, act.principal, "P9")
    elif act.rule in ("box_r", "bbox_r"):
        act = Activity(act.side, act.rule, act.principal, "w9")
    prems = apply_macro(s, act)
    assert prems is not None
    for p in prems:
        assert s.rel <= p.rel and s.lhs <= p.lhs and s.rhs <= p.rhs
    for p in apply_macro(s, act, single=True) or ():
        assert s.rel <= p.rel and s.lhs <= p.lhs
