"""Catalogue of derived theorems.

Each entry pairs the statement (a function of its parameters) with a proof term.
``derive_lemma`` compiles the term and checks that the compiled conclusion is
the statement, so a catalogue entry can never silently prove something else.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from ..syntax import (BBox, BDia, BOT, Box, Dia, Forall, Formula, Imp, Prop, Var, bdia, conj, dia, disj, iff,
                      instantiate, neg, negative_translate, parse)
from .ipl import (box_lift2, box_map, cases, dia_body, dia_elim, dia_intro, dia_map, dia_push, dni, efq,
                  fst, ident, inl, inr, pair, snd)
from .proof import HilbertProof, check_proof
from .terms import EIGEN, App, Ax, Builder, Inst, Nec, Term, TermError, app, gen, lam, lams


@dataclass(frozen=True)
class Lemma:
    name: str
    system: str
    arity: tuple[str, ...]          # "f" for a formula, "q" for a universal formula
    statement: Callable[..., Formula]
    term: Callable[..., Term]
    defaults: tuple[str, ...]


BANK: dict[str, Lemma] = {}


def _register(name, system, arity, defaults, statement):
    def deco(fn):
        BANK[name] = Lemma(name, system, arity, statement, fn, defaults)
        return fn
    return deco


def _body(q: Formula) -> Formula:
    if not isinstance(q, Forall):
        raise TermError(f"expected a universal formula, got {q}")
    return q.body


# ---------------------------------------------------------------------------
# native diamonds versus their encodings


@_register("dia-iff-fwd", "IKt2Dia", ("f",), ("P",), lambda a: Imp(Dia(a), dia(a)))
def dia_iff_fwd(a):
    def outer(d):
        def body(p, h):
            step = app(Ax("fun-dia", native=True, A=a, B=BBox(p)), h, d)
            return App(Ax("dia-bbox", native=True, A=p), step)
        return dia_intro(a, body)
    return lam(Dia(a), outer)


@_register("dia-iff-bwd", "IKt2Dia", ("f",), ("P",), lambda a: Imp(dia(a), Dia(a)))
def dia_iff_bwd(a):
    return lam(dia(a), lambda e: App(Inst(e, Dia(a)), Nec(Ax("bbox-dia", native=True, A=a))))


@_register("bdia-iff-fwd", "IKt2Dia", ("f",), ("P",), lambda a: Imp(BDia(a), bdia(a)))
def bdia_iff_fwd(a):
    def outer(d):
        def body(p, h):
            step = app(Ax("fun-bdia", native=True, A=a, B=Box(p)), h, d)
            return App(Ax("bdia-box", native=True, A=p), step)
        return dia_intro(a, body, past=True)
    return lam(BDia(a), outer)


@_register("bdia-iff-bwd", "IKt2Dia", ("f",), ("P",), lambda a: Imp(bdia(a), BDia(a)))
def bdia_iff_bwd(a):
    return lam(bdia(a), lambda e: App(Inst(e, BDia(a)), Nec(Ax("box-bdia", native=True, A=a), True)))


# ---------------------------------------------------------------------------
# quantifiers and boxes


def _box_dist(q, past):
    m = BBox if past else Box
    return lam(m(q), lambda b: gen(lambda p: box_map(lam(q, lambda x: Inst(x, p)), b, past), q))


@_register("box-dist-forall", "IKt2", ("q",), ("forall X (X -> P)",),
           lambda q: Imp(Box(q), Forall(Box(_body(q)))))
def box_dist_forall(q):
    return _box_dist(q, False)


@_register("bbox-dist-forall", "IKt2", ("q",), ("forall X (X -> P)",),
           lambda q: Imp(BBox(q), Forall(BBox(_body(q)))))
def bbox_dist_forall(q):
    return _box_dist(q, True)


def _barcan(q, past):
    m = BBox if past else Box
    boxed = Forall(m(_body(q)))
    # bdia (forall X box A) -> forall X A, then necessitate and use the tense axiom
    inner = lam(bdia(boxed) if not past else dia(boxed), lambda e: gen(
        lambda p: App(Ax("dia-bbox" if past else "bdia-box", A=instantiate(_body(q), p)),
                      dia_map(lam(boxed, lambda x: Inst(x, p)), e, past=not past)), q))
    back = "bbox-dia" if past else "box-bdia"
    return lam(boxed, lambda h: box_map(inner, App(Ax(back, A=boxed), h), past))


@_register("barcan-box", "IKt2", ("q",), ("forall X (X -> P)",),
           lambda q: Imp(Forall(Box(_body(q))), Box(q)))
def barcan_box(q):
    return _barcan(q, False)


@_register("barcan-bbox", "IKt2", ("q",), ("forall X (X -> P)",),
           lambda q: Imp(Forall(BBox(_body(q))), BBox(q)))
def barcan_bbox(q):
    return _barcan(q, True)


# ---------------------------------------------------------------------------
# redundant diamond axioms


@_register("funct-dia-derived", "IKt2", ("f", "f"), ("P", "Q"),
           lambda a, b: Imp(Box(Imp(a, b)), Imp(dia(a), dia(b))))
def funct_dia_derived(a, b):
    return lams([Box(Imp(a, b)), dia(a)], lambda f, d: dia_push(f, d))


@_register("tense-dia-bbox-derived", "IKt2", ("f",), ("P",), lambda a: Imp(dia(BBox(a)), a))
def tense_dia_bbox_derived(a):
    return lam(dia(BBox(a)), lambda d: dia_elim(d, a, Nec(ident(BBox(a)))))


# ---------------------------------------------------------------------------
# the intuitionistic modal logic IK inside


def _n_dia_bot(past=False):
    inner = Box if past else BBox
    return lam(bdia(BOT) if past else dia(BOT),
               lambda d: dia_elim(d, BOT, Nec(lam(BOT, lambda x: Inst(x, inner(BOT))), past), past))


@_register("n-dia-bot", "IKt2", (), (), lambda: Imp(dia(BOT), BOT))
def n_dia_bot():
    return _n_dia_bot()


@_register("n-bdia-bot", "IKt2", (), (), lambda: Imp(bdia(BOT), BOT))
def n_bdia_bot():
    return _n_dia_bot(True)


@_register("n-dia-or", "IKt2", ("f", "f"), ("P", "Q"),
           lambda a0, a1: Imp(dia(disj(a0, a1)), disj(dia(a0), dia(a1))))
def n_dia_or(a0, a1):
    goal = disj(dia(a0), dia(a1))
    da0, da1 = dia(a0), dia(a1)

    def to_bbox(a, inj):
        # a -> bbox goal, through a -> bbox dia a
        return lam(a, lambda x: box_map(lam(dia(a), inj), App(Ax("bbox-dia", A=a), x), True))

    left = to_bbox(a0, lambda y: inl(y, da1))
    right = to_bbox(a1, lambda y: inr(da0, y))
    step = lam(disj(a0, a1), lambda o: cases(o, BBox(goal), left, right))
    return lam(dia(disj(a0, a1)), lambda d: dia_elim(d, goal, Nec(step)))


def _bdia_apply(e: Term, c: Term, past_of_past: bool = False) -> Term:
    """``e: bdia (C -> D)`` and ``c: bbox C`` give ``bdia D`` (mirror with ``past_of_past``)."""
    past = not past_of_past
    cd = dia_body(e.type, past)
    C, D = cd.left, cd.right
    inner = BBox if past_of_past else Box

    def body(p, h):
        g = lams([C, Imp(D, inner(p))], lambda x, y: lam(cd, lambda f: App(y, App(f, x))))
        return dia_elim(e, p, box_lift2(g, c, h, past), past)

    return dia_intro(D, body, past, (cd,))


def _i_dia_box(a, b, past=False):
    # (dia A -> box B) -> box (A -> B); mirrored when past
    m, mm = (BBox, Box) if past else (Box, BBox)
    d_, bd_ = (bdia, dia) if past else (dia, bdia)
    h_ty = Imp(d_(a), m(b))
    back = "bbox-dia" if past else "box-bdia"
    to_mm = "box-bdia" if past else "bbox-dia"
    collapse = "dia-bbox" if past else "bdia-box"

    def core(e):
        # e: bd_(h_ty), a  |-  b
        return lam(a, lambda x: App(Ax(collapse, A=b),
                                    _bdia_apply(e, App(Ax(to_mm, A=a), x), past_of_past=past)))

    inner = lam(bd_(h_ty), core)
    return lam(h_ty, lambda h: box_map(inner, App(Ax(back, A=h_ty), h), past))


@_register("i-dia-box", "IKt2", ("f", "f"), ("P", "Q"),
           lambda a, b: Imp(Imp(dia(a), Box(b)), Box(Imp(a, b))))
def i_dia_box(a, b):
    return _i_dia_box(a, b)


def _ik_1(a, b, past=False):
    m = BBox if past else Box
    d_ = bdia if past else dia
    inner = Box if past else BBox

    def body(c):
        ba, db = fst(c), snd(c)

        def step(p, h):
            g = lams([a, Imp(conj(a, b), inner(p))], lambda x, f: lam(b, lambda y: App(f, pair(x, y))))
            return dia_elim(db, p, box_lift2(g, ba, h, past), past)

        return dia_intro(conj(a, b), step, past, (a, b))

    return lam(conj(m(a), d_(b)), body)


@_register("ik-thm-1", "IKt2", ("f", "f"), ("P", "Q"),
           lambda a, b: Imp(conj(Box(a), dia(b)), dia(conj(a, b))))
def ik_thm_1(a, b):
    return _ik_1(a, b)


@_register("ik-thm-2", "IKt2", ("f", "f"), ("P", "Q"),
           lambda a, b: Imp(conj(BBox(a), bdia(b)), bdia(conj(a, b))))
def ik_thm_2(a, b):
    return _ik_1(a, b, True)


@_register("ik-thm-3", "IKt2", ("f", "f"), ("P", "Q"),
           lambda a, b: Imp(Imp(dia(a), Box(b)), Box(Imp(a, b))))
def ik_thm_3(a, b):
    return _i_dia_box(a, b)


@_register("ik-thm-4", "IKt2", ("f", "f"), ("P", "Q"),
           lambda a, b: Imp(Imp(bdia(a), BBox(b)), BBox(Imp(a, b))))
def ik_thm_4(a, b):
    return _i_dia_box(a, b, True)


def _ik_5(a, b, past=False):
    # dia (A -> B) -> box A -> dia B
    m = BBox if past else Box
    d_ = bdia if past else dia
    inner = Box if past else BBox

    def body(d, ba):
        def step(p, h):
            g = lams([a, Imp(b, inner(p))], lambda x, y: lam(Imp(a, b), lambda f: App(y, App(f, x))))
            return dia_elim(d, p, box_lift2(g, ba, h, past), past)
        return dia_intro(b, step, past, (a,))

    return lams([d_(Imp(a, b)), m(a)], body)


@_register("ik-thm-5", "IKt2", ("f", "f"), ("P", "Q"),
           lambda a, b: Imp(dia(Imp(a, b)), Imp(Box(a), dia(b))))
def ik_thm_5(a, b):
    return _ik_5(a, b)


@_register("ik-thm-6", "IKt2", ("f", "f"), ("P", "Q"),
           lambda a, b: Imp(bdia(Imp(a, b)), Imp(BBox(a), bdia(b))))
def ik_thm_6(a, b):
    return _ik_5(a, b, True)


# ---------------------------------------------------------------------------
# negativity


def _neg_box(a, past=False):
    m = BBox if past else Box
    d_ = bdia if past else dia
    na = neg(a)

    def core(n):
        # dia not A -> box bot, then i-dia-box at (not A, bot)
        def from_dia(d):
            refute = lam(m(a), lambda b: App(
                _n_dia_bot(past), dia_push(box_map(lams([a, na], lambda x, k: App(k, x)), b, past), d, past)))
            return efq(App(n, refute), m(BOT))
        return App(_i_dia_box(na, BOT, past), lam(d_(na), from_dia))

    return lam(neg(neg(m(a))), core)


@_register("neg-box", "IKt2", ("f",), ("P",), lambda a: Imp(neg(neg(Box(a))), Box(neg(neg(a)))))
def neg_box(a):
    return _neg_box(a)


@_register("neg-bbox", "IKt2", ("f",), ("P",), lambda a: Imp(neg(neg(BBox(a))), BBox(neg(neg(a)))))
def neg_bbox(a):
    return _neg_box(a, True)


@_register("neg-impl", "IKt2", ("f", "f"), ("P", "Q"),
           lambda a, b: Imp(neg(neg(Imp(a, b))), Imp(neg(neg(a)), neg(neg(b)))))
def neg_impl(a, b):
    return lams([neg(neg(Imp(a, b))), neg(neg(a)), neg(b)],
                lambda f, x, nb: App(f, lam(Imp(a, b), lambda g: App(x, lam(a, lambda y: App(nb, App(g, y)))))))


@_register("neg-forall", "IKt2", ("q",), ("forall X (X -> P)",),
           lambda q: Imp(neg(neg(q)), Forall(neg(neg(_body(q))))))
def neg_forall(q):
    return lam(neg(neg(q)), lambda n: gen(
        lambda p: lam(neg(instantiate(_body(q), p)), lambda k: App(n, lam(q, lambda x: App(k, Inst(x, p))))), q))


@_register("neg-triple", "IKt2", ("f",), ("P",), lambda a: Imp(neg(neg(neg(a))), neg(a)))
def neg_triple(a):
    return lams([neg(neg(neg(a))), a], lambda t, x: App(t, lam(neg(a), lambda k: App(k, x))))


# ---------------------------------------------------------------------------
# the negative translation


@_register("dne-of-translation", "IKt2", ("f",), ("P",),
           lambda a: Imp(neg(neg(negative_translate(a))), negative_translate(a)))
def dne_of_translation(a):
    return dne_n(a)


def _bot_n():
    return negative_translate(BOT)


@_register("bot-iff-botN", "IKt2", (), (), lambda: iff(BOT, _bot_n()))
def bot_iff_bot_n():
    fwd = lam(BOT, lambda x: Inst(x, _bot_n()))
    bwd = lam(_bot_n(), lambda n: App(Inst(n, BOT), ident(BOT)))
    return pair(fwd, bwd)


def dne_n(a: Formula) -> Term:
    """Closed term for not not A^N -> A^N, by induction on ``a``."""
    an = negative_translate(a)
    match a:
        case Prop() | Var():
            return neg_triple(neg(a))
        case Imp(l, r):
            ln, rn = negative_translate(l), negative_translate(r)
            return lams([neg(neg(an)), ln], lambda n, x: App(dne_n(r), app(neg_impl(ln, rn), n, dni(x))))
        case Box(b) | BBox(b):
            past = isinstance(a, BBox)
            bn = negative_translate(b)
            return lam(neg(neg(an)), lambda n: box_map(dne_n(b), App(_neg_box(bn, past), n), past))
        case Forall(b):
            return lam(neg(neg(an)), lambda n: gen(
                lambda p: App(dne_n(instantiate(b, p)), Inst(App(neg_forall(an), n), p)), an))
    raise ValueError(f"cannot handle {a}")


# ---------------------------------------------------------------------------


def lemma_statement(name: str, params: list[Formula]) -> Formula:
    lem = _lookup(name, params)
    return lem.statement(*params)


def _lookup(name: str, params: list[Formula]) -> Lemma:
    if name not in BANK:
        raise KeyError(f"unknown lemma {name!r}")
    lem = BANK[name]
    if len(params) != len(lem.arity):
        raise ValueError(f"{name} takes {len(lem.arity)} parameters, got {len(params)}")
    for kind, p in zip(lem.arity, params):
        if kind == "q" and not isinstance(p, Forall):
            raise ValueError(f"{name} expects a universal formula, got {p}")
        if p.depth:
            raise ValueError("parameters must be closed")
    return lem


def derive_lemma(name: str, params: list[Formula] | None = None, builder: Builder | None = None) -> HilbertProof:
    """Proof of the named lemma at the given parameters (defaults when omitted)."""
    if params is None:
        params = default_params(name)
    lem = _lookup(name, params)
    EIGEN.reset(*params)
    t = lem.term(*params)
    want = lem.statement(*params)
    if t.type != want:
        raise TermError(f"{name}: derived {t.type}, expected {want}")
    b = builder or Builder()
    proof = b.proof(b.prove(t))
    check_proof(proof, lem.system)
    return proof


def lemma_term(name: str, params: list[Formula]) -> Term:
    lem = _lookup(name, params)
    return lem.term(*params)


def default_params(name: str) -> list[Formula]:
    native = BANK[name].system == "IKt2Dia"
    return [parse(s, native) for s in BANK[name].defaults]
