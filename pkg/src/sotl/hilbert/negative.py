"""Lifting classical Kt2 proofs to IKt2 proofs of their negative translations.

Most lines carry over directly: the translation commutes with every connective,
so K, S, the box distribution laws, V and the three rules map to themselves.
Comprehension, the diamond schemas and double-negation elimination do not
translate to instances of themselves; each gets a small derivation instead.
"""
from __future__ import annotations

from ..syntax import (BOT, BBox, Bound, Box, Forall, Formula, Imp, Prop, Var, bdia, dia, instantiate,
                      negative_translate, neg, props, shift, show)
from .ipl import box_lift2, box_map, dni
from .lemmas import dne_n
from .proof import MP, Axiom, Gen, HilbertProof, NecBBox, NecBox, ProofError, check_proof
from .terms import EIGEN, App, Ax, Builder, Inst, Nec, Term, TermError, gen, lam, lams

__all__ = ["negative_translate", "lift_kt2_proof"]

_SAME = {"K", "S", "fun-all", "V", "fun-box", "fun-bbox"}


def _with_hole(a: Formula, hole: Prop, image: Formula) -> Formula:
    """Negative translation, except that ``hole`` becomes ``image`` (not double negated)."""
    match a:
        case Prop() if a == hole:
            return image
        case Prop() | Var() | Bound():
            return neg(neg(a))
        case Imp(l, r):
            return Imp(_with_hole(l, hole, image), _with_hole(r, hole, image))
        case Box(b):
            return Box(_with_hole(b, hole, image))
        case BBox(b):
            return BBox(_with_hole(b, hole, image))
        case Forall(b):
            return Forall(_with_hole(b, hole, image))
    raise ValueError(a)


def _convert(s: Formula, hole: Prop, c: Formula, forward: bool) -> Term:
    """Between ``s`` translated with ``not not C^N`` and with ``C^N`` at the hole.

    ``forward`` goes from the double negated version to the plain one.
    """
    cn = negative_translate(c)
    src, dst = _with_hole(s, hole, neg(neg(cn))), _with_hole(s, hole, cn)
    if not forward:
        src, dst = dst, src
    if hole.name not in props(s):
        return lam(src, lambda x: x)
    match s:
        case Prop():
            return dne_n(c) if forward else lam(cn, dni)
        case Imp(l, r):
            return lams([src, dst.left], lambda f, x: App(
                _convert(r, hole, c, forward), App(f, App(_convert(l, hole, c, not forward), x))))
        case Box(b) | BBox(b):
            return lam(src, lambda x: box_map(_convert(b, hole, c, forward), x, isinstance(s, BBox)))
        case Forall(b):
            return lam(src, lambda q: gen(
                lambda p: App(_convert(instantiate(b, p), hole, c, forward), Inst(q, p)), src, dst))
    raise TermError(f"cannot convert {show(s)}")


def _comp(b: dict) -> Term:
    x, a, c = b["X"], b["A"], b["C"]
    q = Forall.bind(x, a)
    hole = EIGEN.fresh(q, c)
    s = instantiate(q.body, hole)
    qn = negative_translate(q)
    return lam(qn, lambda h: App(_convert(s, hole, c, True), Inst(h, negative_translate(c))))


# translated diamonds keep the shape of the encoding with not not X in place of X


def _dia_to_n(b: Formula, past: bool) -> Term:
    """Encoded diamond of ``b`` into its translated form (``b`` already translated)."""
    d = bdia(b) if past else dia(b)
    return lam(d, lambda e: gen(lambda p: lam(
        _guard(b, neg(neg(p)), past), lambda h: App(Inst(e, neg(neg(p))), h)), b))


def _guard(b: Formula, target: Formula, past: bool) -> Formula:
    # box (B -> bbox T), or its mirror image
    return BBox(Imp(b, Box(target))) if past else Box(Imp(b, BBox(target)))


def _fun_dia_n(a: Formula, b: Formula, past: bool) -> Term:
    m = BBox if past else Box
    inner = Box if past else BBox
    f_ty = m(Imp(a, b))

    def dia_n(x):
        return Forall(Imp(m(Imp(shift(x), inner(neg(neg(Bound(0)))))), neg(neg(Bound(0)))))

    def body(f, d):
        def at(p):
            nnp = neg(neg(p))
            comp = lams([Imp(a, b), Imp(b, inner(nnp))], lambda u, v: lam(a, lambda y: App(v, App(u, y))))
            return lam(m(Imp(b, inner(nnp))), lambda h: App(Inst(d, p), box_lift2(comp, f, h, past)))
        return gen(at, a, b)

    return lams([f_ty, dia_n(a)], body)


def _enc(x: Formula, past: bool) -> Formula:
    return bdia(x) if past else dia(x)


def _tense_collapse(a: Formula, past: bool) -> Term:
    """Translated ``bdia box A -> A`` (``dia bbox A -> A`` when past)."""
    an = negative_translate(a)
    m = BBox if past else Box          # the box under the diamond
    dn = negative_translate(Imp(_enc(m(a), not past), a)).left
    lift = Nec(lam(m(an), lambda x: box_map(lam(an, dni), x, past)), not past)
    return lam(dn, lambda e: App(dne_n(a), App(Inst(e, an), lift)))


def _tense_unit(a: Formula, past: bool) -> Term:
    """Translated ``A -> box bdia A`` (``A -> bbox dia A`` when past)."""
    an = negative_translate(a)
    tag = "bbox-dia" if past else "box-bdia"
    return lam(an, lambda x: box_map(_dia_to_n(an, not past), App(Ax(tag, A=an), x), past))


def _dne_line(a: Formula) -> Term:
    an = negative_translate(a)
    bn = negative_translate(BOT)
    to_bn = lam(BOT, lambda x: Inst(x, bn))
    from_bn = lam(bn, lambda n: App(Inst(n, BOT), lam(BOT, lambda x: x)))
    src = Imp(Imp(an, bn), bn)
    return lam(src, lambda t: App(dne_n(a), lam(neg(an), lambda k: App(
        from_bn, App(t, lam(an, lambda y: App(to_bn, App(k, y))))))))


def _axiom_term(tag: str, b: dict) -> Term:
    n = {k: (v if k == "X" else negative_translate(v)) for k, v in b.items()}
    if tag in _SAME:
        return Ax(tag, **n)
    match tag:
        case "comp":
            return _comp(b)
        case "fun-dia" | "fun-bdia":
            return _fun_dia_n(n["A"], n["B"], tag == "fun-bdia")
        case "bdia-box" | "dia-bbox":
            return _tense_collapse(b["A"], tag == "dia-bbox")
        case "box-bdia" | "bbox-dia":
            return _tense_unit(b["A"], tag == "bbox-dia")
        case "dne":
            return _dne_line(b["A"])
    raise TermError(f"unknown schema {tag}")


def lift_kt2_proof(proof: HilbertProof) -> HilbertProof:
    """IKt2 proof of the negative translation of the conclusion of a Kt2 proof."""
    check_proof(proof, "Kt2")
    EIGEN.reset(*(ln.formula for ln in proof.lines))
    b = Builder()
    at: list[int] = []
    for i, ln in enumerate(proof.lines):
        want = negative_translate(ln.formula)
        match ln.just:
            case Axiom(tag, bind):
                j = b.prove(_axiom_term(tag, bind))
            case MP(major, minor):
                j = b.mp(at[major], at[minor])
            case Gen(p, e):
                j = b.gen(at[p], Prop(e))
            case NecBox(p):
                j = b.nec(at[p])
            case NecBBox(p):
                j = b.nec(at[p], True)
        if b.lines[j].formula != want:
            raise ProofError(i, f"lifted line proves {show(b.lines[j].formula)}, expected {show(want)}")
        at.append(j)
    out = b.proof(at[-1])
    check_proof(out, "IKt2")
    return out
