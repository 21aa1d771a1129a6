"""One-hole formula contexts, their lemmas, and the decomposition of interpretations.

A conjunction context is built from ``C and F``, ``dia F`` and ``bdia F``; an
implication context from ``C -> F``, ``box F`` and ``bbox F``. The two are in
node-wise correspondence (``swap``).
"""
from __future__ import annotations

from dataclasses import dataclass

from ..hilbert.ipl import box_lift2, box_map, dia_push, fst, pair, snd
from ..hilbert.lemmas import lemma_term
from ..hilbert.proof import HilbertProof, check_proof
from ..hilbert.terms import EIGEN, App, Builder, Const, Inst, Nec, Term, app, gen, lam, lams
from ..labelled.sequent import Sequent, path
from ..syntax import BBox, Box, Forall, Formula, Imp, TOP, bdia, conj, dia, free_vars
from .trees import (Group, Kid, Leaf, LTree, Pool, TranslateError, build, destruct, goal_path, interp,
                    ltree, morph)


@dataclass(frozen=True)
class Hole:
    pass


@dataclass(frozen=True)
class AndCtx:
    formula: Formula
    inner: object


@dataclass(frozen=True)
class DiaCtx:
    inner: object


@dataclass(frozen=True)
class BDiaCtx:
    inner: object


@dataclass(frozen=True)
class ImpCtx:
    formula: Formula
    inner: object


@dataclass(frozen=True)
class BoxCtx:
    inner: object


@dataclass(frozen=True)
class BBoxCtx:
    inner: object


FormulaContext = Hole | AndCtx | DiaCtx | BDiaCtx | ImpCtx | BoxCtx | BBoxCtx

_SWAP = {AndCtx: ImpCtx, ImpCtx: AndCtx, DiaCtx: BoxCtx, BoxCtx: DiaCtx, BDiaCtx: BBoxCtx, BBoxCtx: BDiaCtx}


def plug(ctx, a: Formula | None) -> Formula:
    """Fill the hole with ``a``; ``None`` is the empty filling (top)."""
    a = TOP if a is None else a
    match ctx:
        case Hole():
            return a
        case AndCtx(c, f):
            return conj(c, plug(f, a))
        case ImpCtx(c, f):
            return Imp(c, plug(f, a))
        case DiaCtx(f):
            return dia(plug(f, a))
        case BDiaCtx(f):
            return bdia(plug(f, a))
        case BoxCtx(f):
            return Box(plug(f, a))
        case BBoxCtx(f):
            return BBox(plug(f, a))
    raise TypeError(f"not a formula context: {ctx!r}")


def swap(ctx):
    """The context of the other shape with the same skeleton."""
    if isinstance(ctx, Hole):
        return ctx
    cls = _SWAP[type(ctx)]
    if isinstance(ctx, (AndCtx, ImpCtx)):
        return cls(ctx.formula, swap(ctx.inner))
    return cls(swap(ctx.inner))


def is_conjunctive(ctx) -> bool:
    return isinstance(ctx, (Hole, AndCtx, DiaCtx, BDiaCtx)) and (
        isinstance(ctx, Hole) or is_conjunctive(ctx.inner))


def is_implicative(ctx) -> bool:
    return isinstance(ctx, (Hole, ImpCtx, BoxCtx, BBoxCtx)) and (
        isinstance(ctx, Hole) or is_implicative(ctx.inner))


def _as_imp(ctx):
    if is_implicative(ctx):
        return ctx
    if is_conjunctive(ctx):
        return swap(ctx)
    raise TranslateError("mixed formula context")


# ---------------------------------------------------------------------------
# context lemmas as proof terms

CONTEXT_LEMMAS = ("nec", "kbox", "kdia", "fs", "inter", "gen")


def _nec(f, proof: Term) -> Term:
    match f:
        case Hole():
            return proof
        case ImpCtx(c, g):
            inner = _nec(g, proof)
            return lam(c, lambda _: inner)
        case BoxCtx(g) | BBoxCtx(g):
            return Nec(_nec(g, proof), isinstance(f, BBoxCtx))
    raise TranslateError("nec needs an implication context")


def _kbox(f, a, b) -> Term:
    match f:
        case Hole():
            return lams([Imp(a, b), a], lambda x, y: App(x, y))
        case ImpCtx(c, g):
            r = _kbox(g, a, b)
            return lams([Imp(c, plug(g, Imp(a, b))), Imp(c, plug(g, a))],
                        lambda x, y: lam(c, lambda z: app(r, App(x, z), App(y, z))))
        case BoxCtx(g) | BBoxCtx(g):
            past = isinstance(f, BBoxCtx)
            r = _kbox(g, a, b)
            m = BBox if past else Box
            return lams([m(plug(g, Imp(a, b))), m(plug(g, a))], lambda x, y: box_lift2(r, x, y, past))
    raise TranslateError("kbox needs an implication context")


def _kdia(f, a, b) -> Term:
    # f is the implication context; the conjunction context is its swap
    match f:
        case Hole():
            return lams([Imp(a, b), a], lambda x, y: App(x, y))
        case ImpCtx(c, g):
            r = _kdia(g, a, b)
            return lams([Imp(c, plug(g, Imp(a, b))), conj(c, plug(swap(g), a))],
                        lambda x, p: pair(fst(p), app(r, App(x, fst(p)), snd(p))))
        case BoxCtx(g) | BBoxCtx(g):
            past = isinstance(f, BBoxCtx)
            r = _kdia(g, a, b)
            m, d = (BBox, bdia) if past else (Box, dia)
            return lams([m(plug(g, Imp(a, b))), d(plug(swap(g), a))],
                        lambda x, e: dia_push(box_map(r, x, past), e, past))
    raise TranslateError("kdia needs a context")


def _fs(f, a, b) -> Term:
    # f is the conjunction context
    match f:
        case Hole():
            return lams([Imp(a, b), a], lambda x, y: App(x, y))
        case AndCtx(c, g):
            r = _fs(g, a, b)
            return lams([conj(c, plug(g, Imp(a, b))), Imp(c, plug(swap(g), a))],
                        lambda p, y: pair(fst(p), app(r, snd(p), App(y, fst(p)))))
        case DiaCtx(g) | BDiaCtx(g):
            past = isinstance(f, BDiaCtx)
            r = _fs(g, a, b)
            m, d = (BBox, bdia) if past else (Box, dia)
            y, z = plug(swap(g), a), plug(g, b)
            k = lemma_term("ik-thm-6" if past else "ik-thm-5", [y, z])
            return lams([d(plug(g, Imp(a, b))), m(y)],
                        lambda e, x: app(k, dia_push(Nec(r, past), e, past), x))
    raise TranslateError("fs needs a conjunction context")


def _inter(f, a, b) -> Term:
    # f is the implication context
    match f:
        case Hole():
            return lam(Imp(a, b), lambda x: x)
        case ImpCtx(c, g):
            r = _inter(g, a, b)
            ga = plug(swap(g), a)
            return lam(Imp(conj(c, ga), Imp(c, plug(g, b))), lambda h: lam(c, lambda z: App(
                r, lam(ga, lambda x: app(h, pair(z, x), z)))))
        case BoxCtx(g) | BBoxCtx(g):
            past = isinstance(f, BBoxCtx)
            r = _inter(g, a, b)
            m, d = (BBox, bdia) if past else (Box, dia)
            x_, y_ = plug(swap(g), a), plug(g, b)
            k = lemma_term("ik-thm-4" if past else "ik-thm-3", [x_, y_])
            return lam(Imp(d(x_), m(y_)), lambda h: box_map(r, App(k, h), past))
    raise TranslateError("inter needs an implication context")


def _gen(f, x: str, a: Formula) -> Term:
    match f:
        case Hole():
            q = Forall.bind(x, a)
            return lam(q, lambda h: h)
        case ImpCtx(c, g):
            r = _gen(g, x, a)
            q = Forall.bind(x, Imp(c, plug(g, a)))
            return lam(q, lambda h: lam(c, lambda z: App(r, gen(lambda p: App(Inst(h, p), z), q, c))))
        case BoxCtx(g) | BBoxCtx(g):
            past = isinstance(f, BBoxCtx)
            r = _gen(g, x, a)
            body = Forall.bind(x, plug(g, a))
            barcan = lemma_term("barcan-bbox" if past else "barcan-box", [body])
            return lam(barcan.type.left, lambda h: box_map(r, App(barcan, h), past))
    raise TranslateError("gen needs an implication context")


def _mentions(ctx, name: str) -> bool:
    while not isinstance(ctx, Hole):
        if isinstance(ctx, (AndCtx, ImpCtx)) and name in free_vars(ctx.formula):
            return True
        ctx = ctx.inner
    return False


def context_lemma(kind: str, ctx, *payload) -> HilbertProof:
    """IKt2 proof of a context lemma instance.

    ``nec``: payload is a proof of ``A``; ``kbox``, ``kdia``, ``fs``, ``inter``: the
    formulas ``A`` and ``B``; ``gen``: a variable name and a formula ``A``.
    """
    if kind not in CONTEXT_LEMMAS:
        raise ValueError(f"unknown context lemma {kind!r}")
    forms = [p for p in payload if isinstance(p, Formula)]
    EIGEN.reset(*forms, *_ctx_formulas(ctx))
    match kind:
        case "nec":
            (proof,) = payload
            if not is_implicative(ctx):
                raise TranslateError("nec needs an implication context")
            t = _nec(ctx, Const(proof.conclusion, proof=proof))
        case "kbox":
            if not is_implicative(ctx):
                raise TranslateError("kbox needs an implication context")
            t = _kbox(ctx, *payload)
        case "kdia":
            t = _kdia(_as_imp(ctx), *payload)
        case "fs":
            t = _fs(swap(_as_imp(ctx)), *payload)
        case "inter":
            t = _inter(_as_imp(ctx), *payload)
        case "gen":
            x, a = payload
            if not is_implicative(ctx):
                raise TranslateError("gen needs an implication context")
            if _mentions(ctx, x):
                raise TranslateError(f"{x} occurs free in the context")
            t = _gen(ctx, x, a)
    b = Builder()
    out = b.proof(b.prove(t))
    check_proof(out, "IKt2")
    return out


def _ctx_formulas(ctx) -> list[Formula]:
    out = []
    while not isinstance(ctx, Hole):
        if isinstance(ctx, (AndCtx, ImpCtx)):
            out.append(ctx.formula)
        ctx = ctx.inner
    return out


# ---------------------------------------------------------------------------
# decomposing interpretations into contexts
#
# Alongside each context we keep the shape of what it produces, so that the
# reordering between a plugged context and the canonical interpretation can be
# proved by taking conjunctions apart and rebuilding them.


@dataclass(frozen=True)
class _Goal:
    formula: Formula


@dataclass(frozen=True)
class _Ante:
    tree: LTree
    rest: object

    @property
    def formula(self) -> Formula:
        return Imp(self.tree.formula, self.rest.formula)


@dataclass(frozen=True)
class _Modal:
    past: bool
    rest: object

    @property
    def formula(self) -> Formula:
        return (BBox if self.past else Box)(self.rest.formula)


def _convert(ys, xs, x: Term, pool: Pool) -> Term:
    """Proof of ``ys.formula`` from ``x: xs.formula`` when the two differ by regrouping antecedents."""
    if isinstance(ys, _Ante):
        return lam(ys.tree.formula, lambda l: _convert(ys.rest, xs, x, destruct(ys.tree, l, pool.copy())))
    if isinstance(xs, _Ante):
        return _convert(ys, xs.rest, App(x, build(xs.tree, pool)), pool)
    if isinstance(ys, _Goal) and isinstance(xs, _Goal) and ys.formula == xs.formula:
        return x
    if isinstance(ys, _Modal) and isinstance(xs, _Modal) and ys.past == xs.past:
        inner = lam(xs.rest.formula, lambda y: _convert(ys.rest, xs.rest, y, Pool()))
        return box_map(inner, x, ys.past)
    raise TranslateError("shapes do not match")


def _equivalence(xs, ys) -> Term:
    fwd = lam(xs.formula, lambda x: _convert(ys, xs, x, Pool()))
    bwd = lam(ys.formula, lambda y: _convert(xs, ys, y, Pool()))
    return pair(fwd, bwd)


def _conj_chain(rel, lhs, route: list[str], avoid_first: frozenset, a: Formula):
    """Conjunction context along ``route`` ending in ``a`` at its last world, and its shape."""
    ctx, shape = None, None
    for i in range(len(route) - 1, -1, -1):
        here = route[i]
        avoid = set(avoid_first) if i == 0 else {route[i - 1]}
        if i + 1 < len(route):
            avoid.add(route[i + 1])
        local = ltree(rel, lhs, here, avoid, check=False)
        if i == len(route) - 1:
            ctx, shape = AndCtx(local.formula, Hole()), LTree(here, (Group(local), Leaf(a)))
        else:
            past = (route[i + 1], here) in rel
            ctx = AndCtx(local.formula, (BDiaCtx if past else DiaCtx)(ctx))
            shape = LTree(here, (Group(local), Kid(past, shape)))
    return ctx, shape


def _imp_chain(rel, lhs, route: list[str], avoid_first: frozenset, b: Formula):
    """Implication context along ``route`` ending in ``b``, with units elided, and its shape."""
    ctx, shape = Hole(), _Goal(b)
    for i in range(len(route) - 1, -1, -1):
        here = route[i]
        avoid = set(avoid_first) if i == 0 else {route[i - 1]}
        if i + 1 < len(route):
            avoid.add(route[i + 1])
        if i + 1 < len(route):
            past = (route[i + 1], here) in rel
            ctx, shape = (BBoxCtx if past else BoxCtx)(ctx), _Modal(past, shape)
        local = ltree(rel, lhs, here, avoid, check=False)
        if local.items:
            ctx, shape = ImpCtx(local.formula, ctx), _Ante(local, shape)
    return ctx, shape


@dataclass
class Decomposition:
    contexts: tuple            # one context, or (F1, F2, F3)
    plugged: Formula
    target: Formula
    equivalence: HilbertProof | None    # proof of plugged <-> target when they differ


def decompose(u: str, seq: Sequent, occ, form: str | None = None) -> Decomposition:
    """Contexts for an occurrence in the interpretation of ``seq`` at ``u``.

    ``form`` is ``left`` (occ on the left, the left interpretation), ``right``
    (occ the right formula), ``pair`` (occ a pair of a left formula and the right
    formula) or ``swapped`` (the pair read with the designated formulas exchanged
    between the sides). It is inferred when omitted, except for ``swapped``.
    """
    if form is None:
        if isinstance(occ, tuple) and len(occ) == 2 and isinstance(occ[0], tuple):
            form = "pair"
        elif occ in seq.lhs:
            form = "left"
        else:
            form = "right"
    rel = seq.rel
    EIGEN.reset(*(f for _, f in seq.lhs | seq.rhs))
    if form == "left":
        v, a = occ
        if occ not in seq.lhs:
            raise TranslateError("the occurrence is not on the left")
        rest = seq.lhs - {occ}
        ltree(rel, seq.lhs, u)
        route = path(rel, u, v)
        ctx, shape = _conj_chain(rel, rest, route, frozenset(), a)
        target = ltree(rel, seq.lhs, u, check=False)
        plugged = plug(ctx, a)
        eq = None
        if plugged != target.formula:
            eq = _prove(pair(morph(shape, target), morph(target, shape)))
        return Decomposition((ctx,), plugged, target.formula, eq)
    if form == "right":
        if seq.rhs != {occ}:
            raise TranslateError("the occurrence must be the only formula on the right")
        route = goal_path(seq, u)
        ctx, _ = _imp_chain(rel, seq.lhs, route, frozenset(), occ[1])
        target = interp("intuitionistic", u, seq)
        return Decomposition((ctx,), plug(ctx, occ[1]), target, None)
    if form in ("pair", "swapped"):
        left_occ, right_occ = occ
        if form == "pair":
            base = Sequent(rel, seq.lhs, seq.rhs)
            if left_occ not in seq.lhs or seq.rhs != {right_occ}:
                raise TranslateError("expected a left occurrence and the right formula")
            (v, a), (w, b) = left_occ, right_occ
        else:
            # seq is R | G, w:B => v:A; contexts are those of R | G, v:A => w:B
            if left_occ not in seq.lhs or seq.rhs != {right_occ}:
                raise TranslateError("expected a left occurrence and the right formula")
            (w, b), (v, a) = left_occ, right_occ
            base = Sequent(rel, (seq.lhs - {left_occ}) | {(v, a)}, frozenset([(w, b)]))
        gamma = base.lhs - {(v, a)}
        ltree(rel, base.lhs | base.rhs, u)
        to_w, to_v = path(rel, u, w), path(rel, u, v)
        m = 0
        while m + 1 < min(len(to_w), len(to_v)) and to_w[m + 1] == to_v[m + 1]:
            m += 1
        f1, s1 = _strip_last(rel, base.lhs, to_w[:m + 1])
        prev = frozenset([to_w[m - 1]]) if m > 0 else frozenset()
        towards_w = frozenset([to_w[m + 1]]) if m + 1 < len(to_w) else frozenset()
        f2, shape2 = _conj_chain(rel, gamma, to_v[m:], prev | towards_w, a)
        if m + 1 < len(to_w):
            f3_inner, s3_inner = _imp_chain(rel, gamma, to_w[m + 1:], frozenset([to_w[m]]), b)
            past = (to_w[m + 1], to_w[m]) in rel
            f3 = (BBoxCtx if past else BoxCtx)(f3_inner)
            s3 = _Modal(past, s3_inner)
        else:
            f3, s3 = Hole(), _Goal(b)
        if form == "pair":
            plugged = plug(f1, Imp(plug(f2, a), plug(f3, b)))
            target = interp("intuitionistic", u, base)
            xs = s1(_Ante(shape2, s3))
            ys = _ifm_shape(rel, base.lhs, u, base)
        else:
            plugged = plug(f1, Imp(plug(swap(f3), b), plug(swap(f2), a)))
            target = interp("intuitionistic", u, seq)
            xs = s1(_Ante(_and_shape(f3, s3, to_w[m:], rel, gamma, b), _imp_shape_of(f2, to_v[m:], rel, gamma,
                                                                                       prev | towards_w, a)))
            ys = _ifm_shape(rel, seq.lhs, u, seq)
        if xs.formula != plugged:
            raise TranslateError("internal: shape does not match the plugged formula")
        eq = None if plugged == target else _prove(_equivalence(xs, ys))
        return Decomposition((f1, f2, f3), plugged, target, eq)
    raise ValueError(f"unknown form {form!r}")


def _strip_last(rel, lhs, route):
    """Implication context along ``route`` with the hole at the last world (no local part there)."""
    ctx_layers = []
    for i in range(len(route) - 1):
        here = route[i]
        avoid = {route[i + 1]} | ({route[i - 1]} if i > 0 else set())
        local = ltree(rel, lhs, here, avoid, check=False)
        past = (route[i + 1], here) in rel
        ctx_layers.append((local, past))

    def ctx_of(hole_ctx):
        c = hole_ctx
        for local, past in reversed(ctx_layers):
            c = (BBoxCtx if past else BoxCtx)(c)
            if local.items:
                c = ImpCtx(local.formula, c)
        return c

    def shape_of(inner):
        s = inner
        for local, past in reversed(ctx_layers):
            s = _Modal(past, s)
            if local.items:
                s = _Ante(local, s)
        return s

    return ctx_of(Hole()), shape_of


def _ifm_shape(rel, lhs, u, seq):
    route = goal_path(seq, u)
    (_, a), = seq.rhs
    _, shape = _imp_chain(rel, lhs, route, frozenset(), a)
    return shape


def _and_shape(f3, s3, route, rel, gamma, b):
    """Shape of ``swap(F3){B}`` as a conjunction tree at the meeting world."""
    if isinstance(s3, _Goal):
        return LTree(route[0], (Leaf(b),))

    def conv(s, i):
        # s is the implication shape below the box into route[i]
        here = route[i]
        items = []
        while isinstance(s, _Ante):
            items.append(Group(s.tree))
            s = s.rest
        if isinstance(s, _Goal):
            items.append(Leaf(s.formula))
        else:
            items.append(Kid(s.past, conv(s.rest, i + 1)))
        return LTree(here, tuple(items))

    return LTree(route[0], (Kid(s3.past, conv(s3.rest, 1)),))


def _imp_shape_of(f2, route, rel, gamma, avoid_first, a):
    """Shape of ``swap(F2){A}`` as an implication."""
    def go(ctx, i):
        match ctx:
            case Hole():
                return _Goal(a)
            case AndCtx(_, g):
                here = route[i]
                avoid = set(avoid_first) if i == 0 else {route[i - 1]}
                if i + 1 < len(route):
                    avoid.add(route[i + 1])
                return _Ante(ltree(rel, gamma, here, avoid, check=False), go(g, i))
            case DiaCtx(g) | BDiaCtx(g):
                return _Modal(isinstance(ctx, BDiaCtx), go(g, i + 1))
        raise TranslateError("unexpected context")
    return go(f2, 0)


def _prove(t: Term) -> HilbertProof:
    b = Builder()
    out = b.proof(b.prove(t))
    check_proof(out, "IKt2")
    return out


__all__ = ["Hole", "AndCtx", "DiaCtx", "BDiaCtx", "ImpCtx", "BoxCtx", "BBoxCtx", "plug", "swap",
           "context_lemma", "CONTEXT_LEMMAS", "decompose", "Decomposition"]
