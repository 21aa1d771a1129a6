"""Small library of proof-term building blocks over the encoded connectives."""
from __future__ import annotations

from ..syntax import (BOT, BBox, Box, Forall, Formula, Imp, instantiate, match_bdia, match_conj, match_dia,
                      match_disj, neg)
from .terms import App, Ax, Inst, Nec, Term, TermError, app, gen, lam, lams


def ident(a: Formula) -> Term:
    return lam(a, lambda x: x)


def compose(f: Term, g: Term) -> Term:
    """``g . f`` for closed or open ``f: A -> B`` and ``g: B -> C``."""
    return lam(f.type.left, lambda x: App(g, App(f, x)))


def truth() -> Term:
    return ident(BOT)


def efq(t: Term, c: Formula) -> Term:
    if t.type != BOT:
        raise TermError("ex falso needs a proof of bot")
    return Inst(t, c)


def dni(t: Term) -> Term:
    """A  ~>  not not A."""
    return lam(neg(t.type), lambda k: App(k, t))


def pair(a: Term, b: Term) -> Term:
    A, B = a.type, b.type
    return gen(lambda p: lam(Imp(A, Imp(B, p)), lambda k: app(k, a, b)), A, B)


def fst(t: Term) -> Term:
    A, B = _conj_parts(t.type)
    return App(Inst(t, A), lams([A, B], lambda x, y: x))


def snd(t: Term) -> Term:
    A, B = _conj_parts(t.type)
    return App(Inst(t, B), lams([A, B], lambda x, y: y))


def _conj_parts(f: Formula) -> tuple[Formula, Formula]:
    p = match_conj(f)
    if p is None:
        raise TermError(f"not a conjunction: {f}")
    return p


def inl(a: Term, b: Formula) -> Term:
    A = a.type
    return gen(lambda p: lams([Imp(A, p), Imp(b, p)], lambda f, g: App(f, a)), A, b)


def inr(a: Formula, b: Term) -> Term:
    B = b.type
    return gen(lambda p: lams([Imp(a, p), Imp(B, p)], lambda f, g: App(g, b)), a, B)


def cases(t: Term, c: Formula, left: Term, right: Term) -> Term:
    """Eliminate ``t: A or B`` into ``c`` with ``left: A -> c`` and ``right: B -> c``."""
    if match_disj(t.type) is None:
        raise TermError(f"not a disjunction: {t.type}")
    return app(Inst(t, c), left, right)


def tuple_(items: list[Term]) -> Term:
    """Right-nested conjunction of the given proofs (``truth`` when empty)."""
    if not items:
        return truth()
    out = items[-1]
    for t in reversed(items[:-1]):
        out = pair(t, out)
    return out


def project(t: Term, i: int, n: int) -> Term:
    """Component ``i`` of a right-nested ``n``-fold conjunction."""
    for _ in range(i):
        t = snd(t)
    return t if i == n - 1 else fst(t)


# ---------------------------------------------------------------------------
# modal steps (diamonds are the encoded ones unless native is set)


def box_map(f: Term, t: Term, past: bool = False) -> Term:
    """From closed ``f: A -> B`` and ``t: box A`` get ``box B``."""
    A, B = f.type.left, f.type.right
    tag = "fun-bbox" if past else "fun-box"
    return app(Ax(tag, A=A, B=B), Nec(f, past), t)


def dia_map(f: Term, t: Term, past: bool = False, native: bool = False) -> Term:
    A, B = f.type.left, f.type.right
    tag = "fun-bdia" if past else "fun-dia"
    return app(Ax(tag, native=native, A=A, B=B), Nec(f, past), t)


def box_apply(f: Term, t: Term, past: bool = False) -> Term:
    """From ``f: box (A -> B)`` and ``t: box A`` get ``box B``."""
    ab = f.type.body
    tag = "fun-bbox" if past else "fun-box"
    return app(Ax(tag, A=ab.left, B=ab.right), f, t)


def box_lift2(g: Term, a: Term, b: Term, past: bool = False) -> Term:
    """From closed ``g: A -> B -> C``, ``a: box A``, ``b: box B`` get ``box C``."""
    return box_apply(box_map(g, a, past), b, past)


def dia_body(f: Formula, past: bool = False) -> Formula:
    m = (match_bdia if past else match_dia)(f)
    if m is None:
        raise TermError(f"not a {'past ' if past else ''}diamond: {f}")
    return m


def dia_elim(d: Term, c: Formula, h: Term, past: bool = False) -> Term:
    """``d: dia A`` and ``h: box (A -> bbox c)`` give ``c`` (mirror image when ``past``)."""
    dia_body(d.type, past)
    return App(Inst(d, c), h)


def dia_intro(a: Formula, fn, past: bool = False, context: tuple = ()) -> Term:
    """Build ``dia a`` from ``fn(p, h)`` proving ``p`` given ``h: box (a -> bbox p)``."""
    inner, outer = (Box, BBox) if past else (BBox, Box)
    return gen(lambda p: lam(outer(Imp(a, inner(p))), lambda h: fn(p, h)), a, *context)


def dia_push(f: Term, d: Term, past: bool = False) -> Term:
    """``f: box (A -> B)`` (``bbox`` when past) with ``d: dia A`` gives ``dia B`` (no diamond axiom)."""
    A = dia_body(d.type, past)
    ab = f.type.body
    B = ab.right
    inner = Box if past else BBox

    def body(p, h):
        # h: box (B -> bbox p); want box (A -> bbox p)
        comp = lams([Imp(A, B), Imp(B, inner(p))], lambda x, y: lam(A, lambda a: App(y, App(x, a))))
        return dia_elim(d, p, box_lift2(comp, f, h, past), past)

    return dia_intro(B, body, past, (A,))


def forall_elim(t: Term, c: Formula) -> Term:
    return Inst(t, c)


def strip_forall(q: Formula) -> Formula:
    if not isinstance(q, Forall):
        raise TermError(f"not universal: {q}")
    return q.body


def open_at(q: Formula, c: Formula) -> Formula:
    return instantiate(strip_forall(q), c)

