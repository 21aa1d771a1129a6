import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from conftest import small_closed
from sotl.fixtures import model_fixtures
from sotl.labelled import parse_sequent
from sotl.semantics import (BirelPoint, BirelationalModel, Evaluator, ModelError, PredPoint, PredicateModel, RelPoint,
                            RelationalModel, as_birelational, birel_collapse, birelational, closed_formulas,
                            closure_comprehensive, collapse_discrepancies, countermodel_check, evaluate, format_model,
                            parse_model, persistence_violations, points, predicate, relational, validate_model,
                            value_classes)
from sotl.semantics.evaluate import algebra
from sotl.syntax import parse

MODELS = model_fixtures()


def one_world(p=(), sets=None):
    return relational(["w"], [], {"P": list(p)}, sets)


def test_one_world_model_is_valid():
    m = relational(["w"], [], {}, sets={"E": [], "A": ["w"]})
    assert validate_model(m).ok


def test_forward_bisimulation_failure():
    # v <= v2 and vRw, but v2 sees nothing above w
    m = birelational(["v", "v2", "w"], [("v", "v2")], [("v", "w")], {})
    assert validate_model(m).names() == {"bisimulation-forward"}


def test_backward_bisimulation_failure():
    # vRw <= w2, but nothing above v sees w2
    m = birelational(["v", "w", "w2"], [("w", "w2")], [("v", "w")], {})
    assert "bisimulation-backward" in validate_model(m).names()


def test_predicate_monotonicity_failure():
    m = predicate(["a", "b"], [("a", "b")], ["v"], {}, {"P": {"a": ["v"]}})
    assert "monotonicity" in validate_model(m).names()


def test_order_and_upset_failures():
    bad = BirelationalModel(("x", "y"), frozenset({(0, 0), (1, 1), (0, 1)}), {"S": 0b01}, {}, frozenset())
    assert "upward-closure" in validate_model(bad).names()
    cyc = BirelationalModel(("x", "y"), frozenset({(0, 0), (1, 1), (0, 1), (1, 0)}), {}, {}, frozenset())
    assert "antisymmetry" in validate_model(cyc).names()


def test_vacuous_box():
    m = one_world()
    for text in ("box (forall X X)", "box P", "bbox bot"):
        assert evaluate(m, RelPoint("w"), parse(text))


def test_empty_set_refutes_bottom():
    m = relational(["w"], [], {}, sets={"E": [], "A": ["w"]})
    assert not evaluate(m, RelPoint("w"), parse("bot"))
    assert evaluate(m, RelPoint("w"), parse("top"))


def test_unknown_symbol():
    with pytest.raises(ModelError, match="unknown propositional symbol"):
        evaluate(one_world(), RelPoint("w"), parse("R"))
    with pytest.raises(ModelError, match="not closed"):
        evaluate(one_world(), RelPoint("w"), parse("Z1"))


def test_set_names_are_symbols():
    m = relational(["w"], [], {}, sets={"E": [], "A": ["w"]})
    assert evaluate(m, RelPoint("w"), parse("A"))
    assert not evaluate(m, RelPoint("w"), parse("E"))


def test_kripke_excluded_middle():
    k2 = MODELS["birel_kripke2"]
    em = parse("P or not P")
    assert not evaluate(k2, BirelPoint("r"), em)
    assert evaluate(k2, BirelPoint("t"), em)
    assert not evaluate(k2, BirelPoint("r"), parse("not not P -> P"))


@pytest.mark.parametrize("name", sorted(MODELS))
def test_k_axiom_everywhere(name):
    assert Evaluator(MODELS[name]).valid(parse("box (P -> Q) -> box P -> box Q"))


def test_single_state_collapse_is_relational():
    pm = MODELS["pred_single2"]
    c = birel_collapse(pm)
    assert validate_model(c).ok
    assert c.order == frozenset((i, i) for i in range(len(c.worlds)))


def test_chain_collapse():
    pm = predicate(["a", "b"], [("a", "b")], ["v"], {}, {"P": {"b": ["v"]}})
    c = birel_collapse(pm)
    assert c.worlds == ("a.v", "b.v")
    assert c.order == frozenset({(0, 0), (1, 1), (0, 1)})
    assert c.sets["P"] == 0b10
    assert validate_model(c).ok


def test_collapse_rejects_invalid_model():
    pm = predicate(["a", "b"], [("a", "b")], ["v"], {}, {"P": {"a": ["v"]}})
    with pytest.raises(ModelError):
        birel_collapse(pm)


def test_full_powerset_is_comprehensive():
    m = relational(["x", "y"], [("x", "y")], {"P": ["x"]})
    assert closure_comprehensive(m, [parse("forall X (box X -> bbox P)"), parse("dia P")]).ok


def test_missing_extension_reported():
    m = relational(["w"], [], {}, sets={"E": []})
    rep = closure_comprehensive(m, [parse("E -> E")])
    assert not rep.ok
    assert [x.extension for x in rep.missing] == ["{w}"]


def test_countermodels():
    ow = relational(["w"], [], {"P": ["w"], "Q": []})
    assert not countermodel_check(ow, parse_sequent("v: P => v: P"), {"v": "w"})
    assert countermodel_check(ow, parse_sequent("v: P => v: Q"), {"v": "w"})
    k2 = MODELS["birel_kripke2"]
    assert countermodel_check(k2, parse_sequent("=> v: P or not P"), {"v": "r"})
    with pytest.raises(ModelError):
        countermodel_check(ow, parse_sequent("v: P => u: Q"), {"v": "w"})


def test_countermodel_needs_relation():
    m = relational(["x", "y"], [("x", "y")], {"P": ["y"]})
    seq = parse_sequent("vRu | v: box P => u: P")
    assert not countermodel_check(m, seq, {"v": "x", "u": "y"})
    assert not countermodel_check(m, parse_sequent("uRv | v: P => u: P"), {"v": "y", "u": "y"})


def test_predicate_points():
    pm = MODELS["pred_chain2x2"]
    assert evaluate(pm, PredPoint("b", "v"), parse("P"))
    assert not evaluate(pm, PredPoint("a", "v"), parse("P"))
    assert len(points(pm)) == 4


def test_value_classes_match_enumeration():
    pm = MODELS["pred_chain2x2"]
    c = birel_collapse(pm)
    for m in (pm, c):
        ev = Evaluator(m)
        alg = algebra(m)
        by_value = {ext for ext, _ in value_classes(alg, 6).items()}
        direct = {ev.ext(f) for f in closed_formulas(6)}
        assert by_value == direct


def test_value_class_representatives_evaluate_to_their_value():
    m = MODELS["birel_square"]
    ev = Evaluator(m)
    for ext, f in value_classes(algebra(m), 7).items():
        assert ev.ext(f) == ext


@pytest.mark.parametrize("name", sorted(MODELS))
def test_model_files_round_trip(name):
    m = MODELS[name]
    text = format_model(m)
    assert parse_model(text) == m
    assert format_model(parse_model(text)) == text


def test_model_file_errors():
    with pytest.raises(ModelError):
        parse_model("model relational\nWORLDS w\nACCESS\nw nowhere\n")
    with pytest.raises(ModelError):
        parse_model("model nonsense\n")


# ---------------------------------------------------------------------------
# generated models


@st.composite
def predicate_models(draw):
    n_states = draw(st.integers(1, 2))
    states = ["a", "b"][:n_states]
    order = [("a", "b")] if n_states == 2 and draw(st.booleans()) else []
    worlds = ["v", "w"][:draw(st.integers(1, 2))]
    pairs = [(x, y) for x in worlds for y in worlds]
    acc_a = draw(st.sets(st.sampled_from(pairs)))
    access = {"a": sorted(acc_a)}
    if n_states == 2:
        extra = draw(st.sets(st.sampled_from(pairs)))
        access["b"] = sorted(acc_a | extra if order else extra)
    props = {}
    for p in ("P", "Q"):
        ext_a = draw(st.sets(st.sampled_from(worlds)))
        ext = {"a": sorted(ext_a)}
        if n_states == 2:
            more = draw(st.sets(st.sampled_from(worlds)))
            ext["b"] = sorted(ext_a | more if order else more)
        props[p] = ext
    m = predicate(states, order, worlds, access, props)
    assert validate_model(m).ok
    return m


@st.composite
def birelational_models(draw):
    n = draw(st.integers(1, 3))
    worlds = ["x", "y", "z"][:n]
    above = [(worlds[i], worlds[j]) for i in range(n) for j in range(i + 1, n)]
    order = [pair for pair in above if draw(st.booleans())]
    access = draw(st.sets(st.sampled_from([(v, w) for v in worlds for w in worlds])))
    m = birelational(worlds, order, access, {})
    assume(validate_model(m).ok)
    up = list(m.sets)
    props = {"P": draw(st.sampled_from(up)), "Q": draw(st.sampled_from(up))}
    return BirelationalModel(m.worlds, m.order, m.sets, props, m.access)


@st.composite
def relational_models(draw):
    n = draw(st.integers(1, 3))
    worlds = ["x", "y", "z"][:n]
    access = draw(st.sets(st.sampled_from([(v, w) for v in worlds for w in worlds])))
    props = {p: sorted(draw(st.sets(st.sampled_from(worlds)))) for p in ("P", "Q")}
    return relational(worlds, access, props)


@settings(max_examples=25, deadline=None)
@given(predicate_models())
def test_collapse_agrees_on_random_models(m):
    classes, bad = collapse_discrepancies(m, max_size=6)
    assert classes > 0 and bad == []


@settings(max_examples=25, deadline=None)
@given(birelational_models())
def test_persistence_on_random_models(m):
    _, bad = persistence_violations(m, max_size=6)
    assert bad == []


@settings(max_examples=50, deadline=None)
@given(relational_models(), small_closed)
def test_discrete_order_is_classical(m, f):
    b = as_birelational(m)
    assert validate_model(b).ok
    assert Evaluator(m).ext(f) == Evaluator(b).ext(f)
    dne = parse("not not P -> P")
    assert Evaluator(b).valid(dne)


@settings(max_examples=30, deadline=None)
@given(st.one_of(predicate_models(), birelational_models(), relational_models()))
def test_model_format_round_trip(m):
    assert parse_model(format_model(m)) == m


@settings(max_examples=30, deadline=None)
@given(birelational_models(), small_closed)
def test_evaluation_is_total(m, f):
    ev = Evaluator(m)
    assert all(ev.holds(p, f) in (True, False) for p in points(m))


def test_kinds():
    assert isinstance(MODELS["one_world"], RelationalModel)
    assert isinstance(MODELS["pred_chain2x2"], PredicateModel)
