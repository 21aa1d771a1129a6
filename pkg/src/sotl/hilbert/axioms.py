"""Axiom schemas and the systems that admit them."""
from __future__ import annotations

from ..syntax import (BBox, BDia, Bound, Box, Dia, Forall, Formula, Imp, Var, bdia, dia, free_vars,
                      instantiate, lower, neg, substitute)

SYSTEMS = ("IKt2Dia", "IKt2", "Kt2")

# tag -> metavariables in binding order ("X" names a variable)
SCHEMAS: dict[str, tuple[str, ...]] = {
    "K": ("A", "B"),                 # A -> B -> A
    "S": ("A", "B", "C"),            # (A -> B -> C) -> (A -> B) -> A -> C
    "fun-all": ("X", "A", "B"),      # forall X (A -> B) -> forall X A -> forall X B
    "V": ("X", "A"),                 # A -> forall X A, X not free in A
    "comp": ("X", "A", "C"),         # forall X A -> A[C/X]
    "fun-box": ("A", "B"),           # box (A -> B) -> box A -> box B
    "fun-dia": ("A", "B"),           # box (A -> B) -> dia A -> dia B
    "fun-bbox": ("A", "B"),
    "fun-bdia": ("A", "B"),          # bbox (A -> B) -> bdia A -> bdia B
    "bdia-box": ("A",),              # bdia box A -> A
    "box-bdia": ("A",),              # A -> box bdia A
    "dia-bbox": ("A",),              # dia bbox A -> A
    "bbox-dia": ("A",),              # A -> bbox dia A
    "dne": ("A",),                   # not not A -> A
}

_DIAMOND_SCHEMAS = {"fun-dia", "fun-bdia", "bdia-box", "box-bdia", "dia-bbox", "bbox-dia"}


class AxiomMismatch(ValueError):
    pass


def admits(system: str, tag: str) -> bool:
    if system not in SYSTEMS:
        raise ValueError(f"unknown system {system!r}")
    return tag in SCHEMAS and (tag != "dne" or system == "Kt2")


def _diamonds(native: bool):
    if native:
        return Dia, BDia
    return dia, bdia


def instance(tag: str, b: dict, native: bool = False) -> Formula:
    """The instance of schema ``tag`` under bindings ``b``.

    ``native`` selects primitive diamonds instead of their encodings.
    """
    d, bd = _diamonds(native)
    A, B, C = b.get("A"), b.get("B"), b.get("C")
    match tag:
        case "K":
            return Imp(A, Imp(B, A))
        case "S":
            return Imp(Imp(A, Imp(B, C)), Imp(Imp(A, B), Imp(A, C)))
        case "fun-all":
            x = b["X"]
            return Imp(Forall.bind(x, Imp(A, B)), Imp(Forall.bind(x, A), Forall.bind(x, B)))
        case "V":
            if b["X"] in free_vars(A):
                raise AxiomMismatch(f"side condition: {b['X']} occurs free in {A}")
            return Imp(A, Forall.bind(b["X"], A))
        case "comp":
            if C.depth:
                raise AxiomMismatch("witness is not closed")
            return Imp(Forall.bind(b["X"], A), substitute(A, b["X"], C))
        case "fun-box":
            return Imp(Box(Imp(A, B)), Imp(Box(A), Box(B)))
        case "fun-bbox":
            return Imp(BBox(Imp(A, B)), Imp(BBox(A), BBox(B)))
        case "fun-dia":
            return Imp(Box(Imp(A, B)), Imp(d(A), d(B)))
        case "fun-bdia":
            return Imp(BBox(Imp(A, B)), Imp(bd(A), bd(B)))
        case "bdia-box":
            return Imp(bd(Box(A)), A)
        case "box-bdia":
            return Imp(A, Box(bd(A)))
        case "dia-bbox":
            return Imp(d(BBox(A)), A)
        case "bbox-dia":
            return Imp(A, BBox(d(A)))
        case "dne":
            return Imp(neg(neg(A)), A)
    raise AxiomMismatch(f"unknown schema {tag!r}")


def _fresh_var(f: Formula) -> str:
    used = free_vars(f)
    k = 0
    while (name := "X" if k == 0 else f"X{k}") in used:
        k += 1
    return name


def find_witness(body: Formula, target: Formula, k: int = 0) -> Formula | None:
    """Some ``c`` with ``instantiate(body, c) == target``, or None.

    Returns ``Bound(-1)`` as a marker when ``body`` does not use its variable.
    """
    if body.depth <= k:
        return Bound(-1) if body == target else None
    match body:
        case Bound(i) if i == k:
            # the witness sits under k binders of body; it must not refer to them
            try:
                c = target
                for j in range(k):
                    c = lower(c, 0)
                return c
            except ValueError:
                return None
        case Imp(l, r):
            if type(target) is not Imp:
                return None
            a = find_witness(l, target.left, k)
            if a is None:
                return None
            c = find_witness(r, target.right, k)
            if c is None:
                return None
            if a == Bound(-1):
                return c
            if c == Bound(-1) or a == c:
                return a
            return None
        case Forall(bb):
            if type(target) is not Forall:
                return None
            return find_witness(bb, target.body, k + 1)
        case Bound():
            return Bound(-1) if body == target else None
        case _:
            if type(target) is not type(body):
                return None
            return find_witness(body.body, target.body, k)


def match_axiom(tag: str, f: Formula, native: bool = False) -> dict:
    """Bindings under which ``f`` is an instance of ``tag``; raises ``AxiomMismatch``."""
    b = _match(tag, f, native)
    if b is None:
        raise AxiomMismatch(f"not an instance of {tag}")
    if instance(tag, b, native) != f:
        raise AxiomMismatch(f"not an instance of {tag}")
    return b


def _match(tag: str, f: Formula, native: bool) -> dict | None:
    d, bd = _diamonds(native)

    def un(kind, g):
        # unwrap one modal layer, encoded or native
        if kind in (Box, BBox, Dia, BDia):
            return g.body if type(g) is kind else None
        return _undia(kind, g)

    match tag:
        case "K":
            if isinstance(f, Imp) and isinstance(f.right, Imp):
                return {"A": f.left, "B": f.right.left}
        case "S":
            match f:
                case Imp(Imp(a, Imp(b, c)), _):
                    return {"A": a, "B": b, "C": c}
        case "fun-box" | "fun-bbox" | "fun-dia" | "fun-bdia":
            match f:
                case Imp(Box(Imp(a, b)) | BBox(Imp(a, b)), _):
                    return {"A": a, "B": b}
        case "bdia-box" | "dia-bbox":
            if isinstance(f, Imp):
                outer = bd if tag == "bdia-box" else d
                inner = Box if tag == "bdia-box" else BBox
                g = un(outer, f.left)
                if g is not None and type(g) is inner:
                    return {"A": g.body}
        case "box-bdia" | "bbox-dia":
            if isinstance(f, Imp):
                return {"A": f.left}
        case "dne":
            match f:
                case Imp(Imp(Imp(a, _), _), _):
                    return {"A": a}
        case "fun-all":
            match f:
                case Imp(Forall(Imp(a, b)), _):
                    x = _fresh_var(f)
                    return {"X": x, "A": instantiate(a, Var(x)), "B": instantiate(b, Var(x))}
        case "V":
            match f:
                case Imp(a, Forall(body)):
                    w = find_witness(body, a)
                    if w is None:
                        return None
                    if w != Bound(-1) and isinstance(w, Var):
                        raise AxiomMismatch(f"side condition: {w.name} occurs free in {a}")
                    return {"X": _fresh_var(f), "A": a}
        case "comp":
            match f:
                case Imp(Forall(body), target):
                    w = find_witness(body, target)
                    if w is None:
                        return None
                    x = _fresh_var(f)
                    if w == Bound(-1):
                        w = Var(x)
                    return {"X": x, "A": instantiate(body, Var(x)), "C": w}
        case _:
            raise AxiomMismatch(f"unknown schema {tag!r}")
    return None


def _undia(kind, g: Formula) -> Formula | None:
    from ..syntax import match_bdia, match_dia
    if kind is dia:
        return match_dia(g)
    if kind is bdia:
        return match_bdia(g)
    return None


def which_axiom(f: Formula, system: str) -> tuple[str, dict] | None:
    """First schema of ``system`` that ``f`` instantiates."""
    native = system == "IKt2Dia"
    for tag in SCHEMAS:
        if not admits(system, tag):
            continue
        try:
            return tag, match_axiom(tag, f, native)
        except AxiomMismatch:
            continue
    return None


def diamond_schema(tag: str) -> bool:
    return tag in _DIAMOND_SCHEMAS
