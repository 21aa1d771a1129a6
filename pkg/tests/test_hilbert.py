import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from conftest import small_closed
from sotl.fixtures import build_axiomatic, build_kt2, hilbert_fixtures
from sotl.hilbert import (BANK, HilbertProof, Line, ProofError, accepts, check_proof, default_params, derive_lemma,
                          dumps, lemma_statement, lift_kt2_proof, loads)
from sotl.hilbert.axioms import AxiomMismatch, match_axiom
from sotl.hilbert.proof import MP, Axiom, Gen, NecBox
from sotl.syntax import BOT, Box, Forall, Imp, ParseError, Prop, Var, dia, neg, negative_translate, parse

P, Q = Prop("P"), Prop("Q")


def k_line(a, b):
    return Line(Imp(a, Imp(b, a)), Axiom("K", {"A": a, "B": b}))


def test_comprehension_gives_ex_falso():
    b = match_axiom("comp", parse("(forall X X) -> forall X X"))
    assert b["C"] == BOT


def test_k_matches():
    b = match_axiom("K", parse("P -> Q -> P"))
    assert (b["A"], b["B"]) == (P, Q)


def test_vacuous_quantifier_side_condition():
    with pytest.raises(AxiomMismatch):
        match_axiom("V", Imp(Var("X"), BOT))


def test_axiom_and_necessitation_accepted():
    k = k_line(P, Q)
    proof = HilbertProof([k, Line(Box(k.formula), NecBox(0))])
    check_proof(proof, "IKt2")


def test_modus_ponens():
    s = Line(parse("(P -> (Q -> P) -> P) -> (P -> Q -> P) -> P -> P"),
             Axiom("S", {"A": P, "B": Imp(Q, P), "C": P}))
    lines = [s, k_line(P, Imp(Q, P)), Line(parse("(P -> Q -> P) -> P -> P"), MP(0, 1)), k_line(P, Q),
             Line(parse("P -> P"), MP(2, 3))]
    assert accepts(HilbertProof(lines), "IKt2")


def test_dne_rejected_without_classical_axiom():
    dne = Line(Imp(neg(neg(P)), P), Axiom("dne", {"A": P}))
    proof = HilbertProof([dne])
    assert accepts(proof, "Kt2")
    with pytest.raises(ProofError) as e:
        check_proof(proof, "IKt2")
    assert e.value.line == 0


def test_native_diamond_schema_only_in_native_system():
    f = Imp(Box(Imp(P, Q)), Imp(dia(P), dia(Q)))
    enc = HilbertProof([Line(f, Axiom("fun-dia", {"A": P, "B": Q}))])
    assert accepts(enc, "IKt2")
    nat = loads("0\tbox (P -> Q) -> dia P -> dia Q\tAX fun-dia\tA=P; B=Q\n", native_diamonds=True)
    assert accepts(nat, "IKt2Dia")
    assert not accepts(nat, "IKt2")


def test_generalisation_needs_fresh_symbol():
    k = k_line(P, Q)
    gen = Line(parse("forall X (X -> Q -> X)"), Gen(0, "P"))
    assert accepts(HilbertProof([k, gen]), "IKt2")
    bad = Line(parse("forall X (P -> Q -> X)"), Gen(0, "P"))
    assert not accepts(HilbertProof([k, bad]), "IKt2")


def test_forward_reference_rejected():
    proof = HilbertProof([Line(P, MP(1, 2)), k_line(P, Q)])
    assert not accepts(proof, "Kt2")


@pytest.mark.parametrize("name", sorted(BANK))
def test_every_lemma_checks(name):
    lem = BANK[name]
    pr = derive_lemma(name)
    assert pr.conclusion == lemma_statement(name, default_params(name))
    check_proof(pr, lem.system)


def test_lemma_examples():
    a = Prop("A")
    assert derive_lemma("dia-iff-fwd", [a]).conclusion == parse("dia A -> forall X (box (A -> bbox X) -> X)",
                                                                    native_diamonds=True)
    assert derive_lemma("n-dia-bot").conclusion == parse("dia bot -> bot")
    assert derive_lemma("box-dist-forall", [parse("forall X (X -> A)")]).conclusion == parse(
        "box (forall X (X -> A)) -> forall X box (X -> A)")


def test_unknown_lemma_and_arity():
    with pytest.raises(KeyError):
        derive_lemma("no-such-lemma")
    with pytest.raises(ValueError):
        derive_lemma("ik-thm-1", [P])


_PARAMETRIC = [n for n in sorted(BANK) if BANK[n].arity]


@settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(st.sampled_from(_PARAMETRIC), st.data())
def test_lemmas_sound_at_random_parameters(name, data):
    lem = BANK[name]
    params = []
    for kind in lem.arity:
        f = data.draw(small_closed)
        if kind == "q":
            f = f if isinstance(f, Forall) else Forall.bind("X", Imp(Var("X"), f))
        params.append(f)
    try:
        pr = derive_lemma(name, params)
    except ValueError:
        return           # parameter shape rejected up front, e.g. a quantifier was required
    assert pr.conclusion == lemma_statement(name, params)
    check_proof(pr, lem.system)


def test_systems_are_monotone():
    for pr in build_axiomatic().values():
        if accepts(pr, "IKt2"):
            assert accepts(pr, "Kt2")


def test_proof_file_round_trip():
    pr = derive_lemma("ik-thm-3")
    assert loads(dumps(pr)).lines == pr.lines


def test_proof_file_errors_name_the_line():
    with pytest.raises(ParseError, match="line 2: unexpected end of input at column 5"):
        loads("# hilbert proof\n0\tP ->\tAX K\tA=P; B=P\n")
    with pytest.raises(ParseError):
        loads("")


def test_stored_fixtures_match_builders():
    stored = hilbert_fixtures("axiomatic")
    built = build_axiomatic()
    assert stored.keys() == {k.replace("-", "_") for k in built}
    for name, pr in built.items():
        assert dumps(stored[name.replace("-", "_")]) == dumps(pr)
    stored_kt2 = hilbert_fixtures("kt2")
    built_kt2 = build_kt2()
    assert len(built_kt2) == 20
    assert {dumps(p) for p in stored_kt2.values()} == {dumps(p) for p in built_kt2.values()}


def test_lift_single_axiom():
    k = HilbertProof([k_line(P, Q)])
    lifted = lift_kt2_proof(k)
    assert len(lifted) == 1
    assert lifted.conclusion == negative_translate(k.conclusion)
    check_proof(lifted, "IKt2")


def test_lift_double_negation_instance():
    dne = HilbertProof([Line(Imp(neg(neg(P)), P), Axiom("dne", {"A": P}))])
    lifted = lift_kt2_proof(dne)
    assert lifted.conclusion == negative_translate(dne.conclusion)
    check_proof(lifted, "IKt2")


def test_lift_rejects_unchecked_input():
    with pytest.raises(ValueError):
        lift_kt2_proof(HilbertProof([Line(P, MP(0, 0))]))


def test_lift_of_intuitionistic_lemma():
    pr = derive_lemma("i-dia-box")
    lifted = lift_kt2_proof(pr)
    check_proof(lifted, "IKt2")
    assert lifted.conclusion == negative_translate(pr.conclusion)
