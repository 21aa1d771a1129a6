import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import small_closed
from sotl.fixtures import goal_formula, labelled_fixtures
from sotl.hilbert import accepts, check_proof, derive_lemma
from sotl.labelled import identity, multi_to_single, parse_sequent
from sotl.search import Proved, SearchConfig, prove_intuitionistic
from sotl.translate import (AndCtx, BBoxCtx, BDiaCtx, BoxCtx, DiaCtx, Hole, ImpCtx, TranslateError, context_lemma,
                            decompose, interp, labelled_to_hilbert, left_interp, plug, right_interp, swap)
from sotl.syntax import BOT, TOP, BBox, Box, Imp, Prop, Var, bdia, conj, dia, disj, parse
from sotl.translate.trees import ltree

A, B, C = Prop("A"), Prop("B"), Prop("C")
E = frozenset()


def test_left_interpretation():
    assert left_interp("u", E, {("u", A)}) == A
    assert left_interp("u", {("u", "v")}, {("u", A), ("v", B)}) == conj(A, dia(B))
    assert left_interp("u", {("v", "u")}, {("v", B)}) == bdia(B)
    assert left_interp("u", E, E) == TOP


def test_right_interpretation():
    assert right_interp("u", E, {("u", B)}) == B
    assert right_interp("u", {("u", "v")}, {("v", B)}) == Box(B)
    assert right_interp("u", E, E) == BOT


def test_disconnected_label_rejected():
    with pytest.raises(TranslateError):
        left_interp("u", E, {("v", A)})


def test_intuitionistic_interpretation():
    assert interp("intuitionistic", "w", parse_sequent("=> w: A")) == A
    assert interp("intuitionistic", "u", parse_sequent("uRw | => w: A")) == Box(A)
    assert interp("intuitionistic", "u", parse_sequent("wRu | u: B => w: A")) == Imp(B, BBox(A))
    with pytest.raises(TranslateError):
        interp("intuitionistic", "v", parse_sequent("=> v: A, v: B"))


def test_classical_interpretation():
    s = parse_sequent("vRw | v: box bbox A => v: A, w: bot")
    want = Imp(conj(parse("box bbox A"), dia(TOP)), disj(A, Box(BOT)))
    assert interp("classical", "v", s) == want


def test_single_left_context():
    d = decompose("v", parse_sequent("v: A => v: B"), ("v", A))
    ctx, = d.contexts
    assert ctx == AndCtx(TOP, Hole())
    assert d.plugged == conj(TOP, A)


def test_forward_left_context():
    s = parse_sequent("uRv | u: C, v: A => u: B")
    d = decompose("u", s, ("v", A))
    ctx, = d.contexts
    assert isinstance(ctx, AndCtx) and isinstance(ctx.inner, DiaCtx)
    if d.equivalence is not None:
        check_proof(d.equivalence, "IKt2")
    assert d.target == left_interp("u", s.rel, s.lhs)


@pytest.mark.parametrize("u", ["v", "w"])
def test_pair_contexts_replug(u):
    s = parse_sequent("wRv | v: A => w: B")
    d = decompose(u, s, (("v", A), ("w", B)))
    f1, f2, f3 = d.contexts
    assert f1 == Hole()
    assert d.plugged == plug(f1, Imp(plug(f2, A), plug(f3, B)))
    assert d.target == interp("intuitionistic", u, s)
    if d.plugged != d.target:
        check_proof(d.equivalence, "IKt2")


def test_right_context_replugs():
    s = parse_sequent("uRv, wRu | w: C => v: A")
    d = decompose("w", s, ("v", A))
    ctx, = d.contexts
    assert plug(ctx, A) == d.plugged == d.target


_CTX = st.recursive(
    st.just(Hole()),
    lambda c: st.one_of(st.builds(AndCtx, small_closed, c), st.builds(DiaCtx, c), st.builds(BDiaCtx, c),
                        st.builds(ImpCtx, small_closed, c), st.builds(BoxCtx, c), st.builds(BBoxCtx, c)),
    max_leaves=5)


@given(_CTX)
def test_swap_is_an_involution(ctx):
    assert swap(swap(ctx)) == ctx


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(["uRv | u: A, v: B => u: C", "vRu | v: box A => u: A", "u: A => u: B"]),
       st.sampled_from(["y", "z"]), small_closed)
def test_left_interp_ignores_unrelated_labels(text, v, f):
    seq = parse_sequent(text)
    base = left_interp("u", seq.rel, seq.lhs)
    assert ltree(seq.rel, seq.lhs | {(v, f)}, "u", check=False).formula == base
    with pytest.raises(TranslateError):
        left_interp("u", seq.rel, seq.lhs | {(v, f)})


def test_nec_context_returns_input():
    pr = derive_lemma("ik-thm-1")
    out = context_lemma("nec", Hole(), pr)
    assert out.conclusion == pr.conclusion
    check_proof(out, "IKt2")


def test_kbox_is_box_distribution():
    out = context_lemma("kbox", BoxCtx(Hole()), A, B)
    assert out.conclusion == parse("box (A -> B) -> box A -> box B")


def test_gen_context():
    out = context_lemma("gen", ImpCtx(C, Hole()), "X", parse("X -> A"))
    assert out.conclusion == parse("(forall X (C -> X -> A)) -> C -> forall X (X -> A)")


def test_gen_side_condition():
    with pytest.raises(TranslateError):
        context_lemma("gen", ImpCtx(Var("X"), Hole()), "X", A)


@pytest.mark.parametrize("kind", ["kdia", "fs", "inter"])
@pytest.mark.parametrize("ctx", [Hole(), BoxCtx(ImpCtx(C, Hole())), BBoxCtx(BoxCtx(Hole()))], ids=str)
def test_context_lemmas_check(kind, ctx):
    check_proof(context_lemma(kind, ctx, A, B), "IKt2")


def test_identity_compiles_to_self_implication():
    h = labelled_to_hilbert(identity(E, ("v", A)), "v")
    assert h.conclusion == Imp(A, A)
    check_proof(h, "IKt2")


FIXTURES = labelled_fixtures()


@pytest.mark.parametrize("fx", [f for f in FIXTURES if f.calculus == "LIKt2"], ids=lambda f: f.name)
def test_intuitionistic_fixtures_compile_at_every_label(fx):
    for u in sorted(fx.proof.seq.labels()):
        h = labelled_to_hilbert(fx.proof, u)
        assert h.conclusion == interp("intuitionistic", u, fx.proof.seq)
        assert accepts(h, "IKt2")
    goal = goal_formula(fx.proof.seq)
    if goal is not None:
        assert labelled_to_hilbert(fx.proof).conclusion == goal


@pytest.mark.parametrize("fx", [f for f in FIXTURES if f.calculus == "LKt2"], ids=lambda f: f.name)
def test_classical_fixtures_compile(fx):
    h = labelled_to_hilbert(fx.proof, "v", "classical")
    assert h.conclusion == interp("classical", "v", fx.proof.seq)
    assert accepts(h, "Kt2")
    assert not accepts(h, "IKt2")


def test_classical_compilation_needs_one_world():
    p = identity(frozenset({("v", "w")}), ("w", A))
    with pytest.raises(TranslateError):
        labelled_to_hilbert(p, "v", "classical")


def test_search_output_compiles():
    r = prove_intuitionistic(parse_sequent("=> w: (forall X box (X -> P)) -> box forall X (X -> P)"),
                             SearchConfig(fuel=200))
    assert isinstance(r, Proved)
    _, q = multi_to_single(r.proof)
    h = labelled_to_hilbert(q, "w")
    assert h.conclusion == parse("(forall X box (X -> P)) -> box forall X (X -> P)")
    check_proof(h, "IKt2")


def test_unknown_label():
    with pytest.raises(TranslateError):
        labelled_to_hilbert(identity(E, ("v", A)), "q")

