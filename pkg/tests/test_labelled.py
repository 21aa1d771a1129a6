import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sotl.fixtures import connectivity_instances, labelled_fixtures
from sotl.labelled import (LabelledProofError, Node, Sequent, accepts, bottom_derivation, check_labelled_proof,
                           classical_to_negneg, dumps, identity, is_polytree, loads, multi_to_single, parse_sequent,
                           show_sequent)
from sotl.labelled.sequent import connected
from sotl.labelled.transforms import TransformError, negate
from sotl.search import Proved, SearchConfig, prove_intuitionistic
from sotl.syntax import BOT, Prop, parse

P = Prop("P")
FIXTURES = {fx.name: fx for fx in labelled_fixtures()}


def test_identity_accepted_everywhere():
    p = identity(frozenset(), ("v", P))
    assert p.seq == parse_sequent("v: P => v: P")
    for calc in ("LKt2", "LIKt2", "MLIKt2"):
        check_labelled_proof(p, calc, cut=False)


def test_bad_identity_rejected():
    p = Node(parse_sequent("v: P => w: P"), "id", ("v", P))
    with pytest.raises(LabelledProofError):
        check_labelled_proof(p, "LKt2")


def test_forall_box_fixture_is_intuitionistic():
    p = FIXTURES["forall_box"].proof
    assert p.seq == parse_sequent("=> w: (forall X box (X -> P)) -> box forall X (X -> P)")
    assert accepts(p, "LIKt2", cut=False)
    assert not p.uses("cut")


def test_classical_distribution_needs_multiple_succedents():
    p = FIXTURES["or_forall_dist"].proof
    assert accepts(p, "LKt2", cut=False)
    assert not accepts(p, "LIKt2")
    assert p.uses("cr") and p.uses("wr")


def test_cut_flag():
    ax = identity(frozenset(), ("v", P))
    p = Node(ax.seq, "cut", ("v", P), None, (ax, ax))
    assert accepts(p, "LIKt2")
    assert not accepts(p, "LIKt2", cut=False)


def test_connected():
    assert connected(frozenset(), "v", "v")
    assert connected(frozenset({("v", "u")}), "u", "v")
    assert not connected(frozenset({("a", "b")}), "v", "w")


def test_polytree():
    assert is_polytree(frozenset({("v", "w")}), parse_sequent("vRw | v: P => w: Q"))
    assert not is_polytree(frozenset({("v", "w"), ("w", "v")}))
    assert not is_polytree(frozenset(), parse_sequent("v: P => w: Q"))
    assert is_polytree(frozenset(), parse_sequent("v: P => v: Q"))


def test_sequent_text_round_trip():
    s = parse_sequent("vRw, wRu | v: box P, w: Q => u: P -> Q")
    assert parse_sequent(show_sequent(s)) == s
    assert s.rel == frozenset({("v", "w"), ("w", "u")})


def test_bottom_derivation_base_case():
    p = bottom_derivation(frozenset(), frozenset(), "v", "v", P)
    assert p.rules() == ["forall_l", "id"]
    assert p.seq == Sequent.of((), {("v", BOT)}, {("v", P)})
    check_labelled_proof(p, "LIKt2", cut=False)


@pytest.mark.parametrize("edge, modal", [(("v", "w"), "box_l"), (("w", "v"), "bbox_l")])
def test_bottom_derivation_one_edge(edge, modal):
    p = bottom_derivation(frozenset({edge}), frozenset(), "v", "w", P)
    check_labelled_proof(p, "LIKt2", cut=False)
    assert modal in p.rules()


def test_bottom_derivation_needs_connection():
    with pytest.raises(TransformError):
        bottom_derivation(frozenset({("a", "b")}), frozenset(), "v", "w", P)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000))
def test_bottom_derivations_check(seed):
    for rel, lhs, v, w, a in connectivity_instances(seed, count=3):
        p = bottom_derivation(rel, lhs, v, w, a)
        assert p.seq == Sequent(rel, lhs | {(v, BOT)}, frozenset({(w, a)}))
        check_labelled_proof(p, "LIKt2", cut=False)


def _search_proof(text):
    r = prove_intuitionistic(parse_sequent(text), SearchConfig(fuel=200))
    assert isinstance(r, Proved)
    return r.proof


def test_multi_to_single_on_search_output():
    p = _search_proof("=> v: P -> P")
    chosen, q = multi_to_single(p)
    assert chosen in p.seq.rhs
    check_labelled_proof(q, "LIKt2", cut=False)
    assert q.seq.rhs == frozenset({chosen})


def test_multi_to_single_drops_weakened_formula():
    # the right-weakened Q is never the chosen formula
    p = _search_proof("=> v: P -> P, v: Q")
    chosen, q = multi_to_single(p)
    assert chosen == ("v", parse("P -> P"))
    check_labelled_proof(q, "LIKt2", cut=False)


def test_multi_to_single_rejects_classical_proof():
    with pytest.raises(LabelledProofError, match="single formula"):
        multi_to_single(FIXTURES["or_forall_dist"].proof)


def test_negneg_identity_case():
    p = identity(frozenset(), ("v", P))
    q = classical_to_negneg(p, "v")
    assert q.seq == Sequent.of((), {("v", P)} | negate({("v", P)}), {("v", BOT)})
    check_labelled_proof(q, "LIKt2", cut=False, extended=True)


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_negneg_on_fixtures(name):
    p = FIXTURES[name].proof
    for x in sorted(p.seq.labels()):
        q = classical_to_negneg(p, x)
        assert q.seq.rhs == frozenset({(x, BOT)})
        assert q.seq.lhs == p.seq.lhs | negate(p.seq.rhs)
        check_labelled_proof(q, "LIKt2", cut=True, extended=True)
        assert not accepts(q, "LIKt2") or not q.uses("negneg")


def test_negneg_needs_label_of_conclusion():
    with pytest.raises(TransformError):
        classical_to_negneg(identity(frozenset(), ("v", P)), "nowhere")


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_fixture_file_round_trip(name):
    # nodes compare by identity, so compare the serialised trees
    text = dumps(FIXTURES[name].proof)
    q = loads(text)
    assert dumps(q) == text
    assert q.seq == FIXTURES[name].proof.seq


def _connected_over_labels(seq):
    labels = sorted(seq.labels())
    return all(connected(seq.rel, labels[0], x) for x in labels)


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_connectivity_is_preserved(name):
    p = FIXTURES[name].proof
    if _connected_over_labels(p.seq):
        assert all(_connected_over_labels(n.seq) for n in p.nodes())


def test_no_empty_succedent_in_multi_succedent_proofs():
    for fx in FIXTURES.values():
        if accepts(fx.proof, "MLIKt2"):
            assert all(n.seq.rhs for n in fx.proof.nodes())


def test_loads_reports_line():
    with pytest.raises(ValueError, match="line 2: .*column"):
        loads("# labelled proof\n0\tv: P -> => v: P\tid\t\t\n")
    with pytest.raises(ValueError, match="line 2: unknown rule"):
        loads("# labelled proof\n0\tv: P => v: P\tax\t\t\n")
