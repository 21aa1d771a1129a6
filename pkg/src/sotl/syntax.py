"""Formulas of second-order tense logic.

Bound variables are stored as de Bruijn indices (``Bound``), free variables and
propositional symbols by name. Two formulas that differ only in the names of
their bound variables are therefore equal as Python values. Names for bound
variables only exist at the text boundary (``parse`` / ``show``).
"""
from __future__ import annotations

import functools
import re
from dataclasses import dataclass, field
from typing import Iterator


class Formula:
    __slots__ = ()

    # cached on every subclass by __post_init__
    _hash: int
    depth: int
    size: int

    def __hash__(self) -> int:
        return self._hash

    def __str__(self) -> str:
        return show(self)

    def __repr__(self) -> str:
        return f"<{show(self)}>"


def _init(obj, key: tuple, depth: int, size: int) -> None:
    object.__setattr__(obj, "_hash", hash(key))
    object.__setattr__(obj, "depth", depth)
    object.__setattr__(obj, "size", size)


@dataclass(frozen=True, eq=False, repr=False, slots=True)
class Prop(Formula):
    name: str
    _hash: int = field(init=False, compare=False)
    depth: int = field(init=False, compare=False)
    size: int = field(init=False, compare=False)

    def __post_init__(self):
        _init(self, ("P", self.name), 0, 1)

    __hash__ = Formula.__hash__

    def __eq__(self, other):
        return self is other or (type(other) is Prop and other.name == self.name)


@dataclass(frozen=True, eq=False, repr=False, slots=True)
class Var(Formula):
    """A free second-order variable."""
    name: str
    _hash: int = field(init=False, compare=False)
    depth: int = field(init=False, compare=False)
    size: int = field(init=False, compare=False)

    def __post_init__(self):
        _init(self, ("V", self.name), 0, 1)

    __hash__ = Formula.__hash__

    def __eq__(self, other):
        return self is other or (type(other) is Var and other.name == self.name)


@dataclass(frozen=True, eq=False, repr=False, slots=True)
class Bound(Formula):
    """Occurrence of the variable bound by the ``index``-th enclosing quantifier."""
    index: int
    _hash: int = field(init=False, compare=False)
    depth: int = field(init=False, compare=False)
    size: int = field(init=False, compare=False)

    def __post_init__(self):
        _init(self, ("B", self.index), self.index + 1, 1)

    __hash__ = Formula.__hash__

    def __eq__(self, other):
        return self is other or (type(other) is Bound and other.index == self.index)


@dataclass(frozen=True, eq=False, repr=False, slots=True)
class Imp(Formula):
    left: Formula
    right: Formula
    _hash: int = field(init=False, compare=False)
    depth: int = field(init=False, compare=False)
    size: int = field(init=False, compare=False)

    def __post_init__(self):
        _init(self, ("I", self.left._hash, self.right._hash),
              max(self.left.depth, self.right.depth), self.left.size + self.right.size + 1)

    __hash__ = Formula.__hash__

    def __eq__(self, other):
        return self is other or (
            type(other) is Imp and other._hash == self._hash
            and self.left == other.left and self.right == other.right)


def _unary(tag: str):
    @dataclass(frozen=True, eq=False, repr=False, slots=True)
    class Unary(Formula):
        body: Formula
        _hash: int = field(init=False, compare=False)
        depth: int = field(init=False, compare=False)
        size: int = field(init=False, compare=False)

        def __post_init__(self):
            _init(self, (tag, self.body._hash), self.body.depth, self.body.size + 1)

        __hash__ = Formula.__hash__

        def __eq__(self, other):
            return self is other or (
                type(other) is type(self) and other._hash == self._hash and self.body == other.body)

    return Unary


class Box(_unary("box")):
    """Future necessity."""
    __slots__ = ()


class BBox(_unary("bbox")):
    """Past necessity."""
    __slots__ = ()


class Dia(_unary("dia")):
    """Primitive future possibility, only meaningful in the system with native diamonds."""
    __slots__ = ()


class BDia(_unary("bdia")):
    __slots__ = ()


@dataclass(frozen=True, eq=False, repr=False, slots=True)
class Forall(Formula):
    """Universal quantifier; its variable is ``Bound(0)`` inside ``body``."""
    body: Formula
    _hash: int = field(init=False, compare=False)
    depth: int = field(init=False, compare=False)
    size: int = field(init=False, compare=False)

    def __post_init__(self):
        _init(self, ("A", self.body._hash), max(self.body.depth - 1, 0), self.body.size + 1)

    __hash__ = Formula.__hash__

    def __eq__(self, other):
        return self is other or (
            type(other) is Forall and other._hash == self._hash and self.body == other.body)

    @staticmethod
    def bind(name: str, body: Formula) -> "Forall":
        """Quantify the free variable ``name`` of ``body``."""
        return Forall(abstract(body, Var(name)))


MODAL = (Box, BBox, Dia, BDia)


# ---------------------------------------------------------------------------
# index manipulation


def shift(a: Formula, by: int = 1, cutoff: int = 0) -> Formula:
    """Add ``by`` to every bound index at or above ``cutoff``."""
    if a.depth <= cutoff:
        return a
    match a:
        case Bound(i):
            return Bound(i + by)
        case Imp(l, r):
            return Imp(shift(l, by, cutoff), shift(r, by, cutoff))
        case Forall(b):
            return Forall(shift(b, by, cutoff + 1))
        case _:
            return type(a)(shift(a.body, by, cutoff))


def lower(a: Formula, cutoff: int = 0) -> Formula:
    """Inverse of ``shift(a, 1, cutoff)``; the caller guarantees ``Bound(cutoff)`` is unused."""
    if a.depth <= cutoff:
        return a
    match a:
        case Bound(i):
            if i == cutoff:
                raise ValueError("bound variable escapes its scope")
            return Bound(i - 1)
        case Imp(l, r):
            return Imp(lower(l, cutoff), lower(r, cutoff))
        case Forall(b):
            return Forall(lower(b, cutoff + 1))
        case _:
            return type(a)(lower(a.body, cutoff))


def uses_index(a: Formula, k: int = 0) -> bool:
    if a.depth <= k:
        return False
    match a:
        case Bound(i):
            return i == k
        case Imp(l, r):
            return uses_index(l, k) or uses_index(r, k)
        case Forall(b):
            return uses_index(b, k + 1)
        case _:
            return uses_index(a.body, k)


def instantiate(body: Formula, c: Formula, k: int = 0) -> Formula:
    """Replace ``Bound(k)`` in ``body`` by ``c`` (opening one binder).

    ``c`` may itself mention indices below the binder being opened; they are
    shifted as the replacement moves under further quantifiers.
    """
    if body.depth <= k:
        return body
    match body:
        case Bound(i):
            if i == k:
                return shift(c, k) if c.depth else c
            return Bound(i - 1) if i > k else body
        case Imp(l, r):
            return Imp(instantiate(l, c, k), instantiate(r, c, k))
        case Forall(b):
            return Forall(instantiate(b, c, k + 1))
        case _:
            return type(body)(instantiate(body.body, c, k))


def abstract(a: Formula, atom: Formula, k: int = 0) -> Formula:
    """Replace every occurrence of the atom ``atom`` (a ``Var`` or ``Prop``) by ``Bound(k)``."""
    match a:
        case Prop() | Var():
            return Bound(k) if a == atom else a
        case Bound():
            return a
        case Imp(l, r):
            return Imp(abstract(l, atom, k), abstract(r, atom, k))
        case Forall(b):
            return Forall(abstract(b, atom, k + 1))
        case _:
            return type(a)(abstract(a.body, atom, k))


def open_with(q: Forall, c: Formula) -> Formula:
    """The instance ``A[c/X]`` of ``q = forall X A``."""
    return instantiate(q.body, c)


# ---------------------------------------------------------------------------
# traversals


def subformulas(a: Formula) -> Iterator[Formula]:
    """All locally closed subformulas (bodies under a binder that use it are skipped)."""
    seen: set[Formula] = set()
    stack = [a]
    while stack:
        f = stack.pop()
        if f.depth == 0:
            if f in seen:
                continue
            seen.add(f)
            yield f
        match f:
            case Imp(l, r):
                stack += [r, l]
            case Forall(b):
                stack.append(b)
            case Prop() | Var() | Bound():
                pass
            case _:
                stack.append(f.body)


def _atoms(a: Formula, kind: type, out: set[str]) -> set[str]:
    match a:
        case Imp(l, r):
            _atoms(l, kind, out)
            _atoms(r, kind, out)
        case Forall(b):
            _atoms(b, kind, out)
        case Bound():
            pass
        case Prop(n) | Var(n):
            if type(a) is kind:
                out.add(n)
        case _:
            _atoms(a.body, kind, out)
    return out


def free_vars(a: Formula) -> set[str]:
    return _atoms(a, Var, set())


def props(a: Formula) -> set[str]:
    return _atoms(a, Prop, set())


def size(a: Formula) -> int:
    return a.size


def substitute(a: Formula, name: str, c: Formula) -> Formula:
    """Capture-avoiding ``a[c/name]`` for the free variable ``name``."""
    if c.depth:
        raise ValueError("substituted formula must not contain dangling bound indices")

    def go(f: Formula) -> Formula:
        match f:
            case Var(n):
                return c if n == name else f
            case Prop() | Bound():
                return f
            case Imp(l, r):
                return Imp(go(l), go(r))
            case Forall(b):
                return Forall(go(b))
            case _:
                return type(f)(go(f.body))

    return go(a)


def replace_atom(a: Formula, atom: Formula, c: Formula) -> Formula:
    """Replace a ``Prop`` or ``Var`` atom everywhere by ``c``."""
    return instantiate(abstract(shift(a), atom), c)


@functools.lru_cache(maxsize=1 << 16)
def has_native_diamond(a: Formula) -> bool:
    match a:
        case Dia() | BDia():
            return True
        case Imp(l, r):
            return has_native_diamond(l) or has_native_diamond(r)
        case Forall(b) | Box(b) | BBox(b):
            return has_native_diamond(b)
        case _:
            return False


# ---------------------------------------------------------------------------
# encoded connectives


BOT = Forall(Bound(0))


def bot() -> Formula:
    return BOT


def neg(a: Formula) -> Formula:
    return Imp(a, BOT)


TOP = neg(BOT)


def top() -> Formula:
    return TOP


def conj(a: Formula, b: Formula) -> Formula:
    # forall X ((A -> B -> X) -> X)
    return Forall(Imp(Imp(shift(a), Imp(shift(b), Bound(0))), Bound(0)))


def disj(a: Formula, b: Formula) -> Formula:
    # forall X ((A -> X) -> (B -> X) -> X)
    return Forall(Imp(Imp(shift(a), Bound(0)), Imp(Imp(shift(b), Bound(0)), Bound(0))))


def iff(a: Formula, b: Formula) -> Formula:
    return conj(Imp(a, b), Imp(b, a))


def exists_body(body: Formula) -> Formula:
    """``exists Y A`` where ``body`` is ``A`` with ``Y`` as ``Bound(0)``."""
    # forall X (forall Y (A -> X) -> X): inside, Y is index 0 and X index 1
    inner = Forall(Imp(shift(body, 1, 1), Bound(1)))
    return Forall(Imp(inner, Bound(0)))


def exists(name: str, a: Formula) -> Formula:
    return exists_body(abstract(a, Var(name)))


def dia(a: Formula) -> Formula:
    # forall X (box (A -> bbox X) -> X)
    return Forall(Imp(Box(Imp(shift(a), BBox(Bound(0)))), Bound(0)))


def bdia(a: Formula) -> Formula:
    # forall X (bbox (A -> box X) -> X)
    return Forall(Imp(BBox(Imp(shift(a), Box(Bound(0)))), Bound(0)))


def big_conj(items: list[Formula]) -> Formula:
    """Right-nested conjunction; empty is top and a singleton is itself."""
    if not items:
        return TOP
    out = items[-1]
    for f in reversed(items[:-1]):
        out = conj(f, out)
    return out


def big_disj(items: list[Formula]) -> Formula:
    if not items:
        return BOT
    out = items[-1]
    for f in reversed(items[:-1]):
        out = disj(f, out)
    return out


def expand_diamonds(a: Formula) -> Formula:
    """Replace native diamonds by their encodings."""
    match a:
        case Dia(b):
            return dia(expand_diamonds(b))
        case BDia(b):
            return bdia(expand_diamonds(b))
        case Imp(l, r):
            return Imp(expand_diamonds(l), expand_diamonds(r))
        case Forall(b):
            return Forall(expand_diamonds(b))
        case Box(b):
            return Box(expand_diamonds(b))
        case BBox(b):
            return BBox(expand_diamonds(b))
        case _:
            return a


def negative_translate(a: Formula) -> Formula:
    """Double-negate atoms and variables; commute with every connective."""
    match a:
        case Prop() | Var() | Bound():
            return neg(neg(a))
        case Imp(l, r):
            return Imp(negative_translate(l), negative_translate(r))
        case Box(b):
            return Box(negative_translate(b))
        case BBox(b):
            return BBox(negative_translate(b))
        case Forall(b):
            return Forall(negative_translate(b))
    raise ValueError(f"no negative translation for primitive diamonds: {a}")


def match_conj(a: Formula) -> tuple[Formula, Formula] | None:
    match a:
        case Forall(Imp(Imp(l, Imp(r, Bound(0))), Bound(0))) if not (uses_index(l) or uses_index(r)):
            return lower(l), lower(r)
    return None


def match_disj(a: Formula) -> tuple[Formula, Formula] | None:
    match a:
        case Forall(Imp(Imp(l, Bound(0)), Imp(Imp(r, Bound(0)), Bound(0)))) if not (
                uses_index(l) or uses_index(r)):
            return lower(l), lower(r)
    return None


def match_dia(a: Formula) -> Formula | None:
    match a:
        case Forall(Imp(Box(Imp(l, BBox(Bound(0)))), Bound(0))) if not uses_index(l):
            return lower(l)
    return None


def match_bdia(a: Formula) -> Formula | None:
    match a:
        case Forall(Imp(BBox(Imp(l, Box(Bound(0)))), Bound(0))) if not uses_index(l):
            return lower(l)
    return None


def match_exists(a: Formula) -> Formula | None:
    """Body of an encoded existential (with its variable as ``Bound(0)``)."""
    match a:
        case Forall(Imp(Forall(Imp(b, Bound(1))), Bound(0))) if not uses_index(b, 1):
            return lower(b, 1)
    return None


def match_neg(a: Formula) -> Formula | None:
    match a:
        case Imp(l, r) if r == BOT:
            return l
    return None


# ---------------------------------------------------------------------------
# fresh names


class Fresh:
    """Session-local supply of fresh propositional symbols and world labels."""

    def __init__(self, avoid: set[str] | None = None):
        self.avoid = set(avoid or ())
        self.counters: dict[str, int] = {}

    def name(self, prefix: str) -> str:
        k = self.counters.get(prefix, 0)
        while f"{prefix}{k}" in self.avoid:
            k += 1
        self.counters[prefix] = k + 1
        n = f"{prefix}{k}"
        self.avoid.add(n)
        return n

    def prop(self) -> Prop:
        return Prop(self.name("P"))

    def world(self) -> str:
        return self.name("w")


# ---------------------------------------------------------------------------
# text


class ParseError(ValueError):
    pass


KEYWORDS = {"forall", "exists", "box", "bbox", "dia", "bdia", "not", "and", "or", "iff", "bot", "top"}
_UNICODE = {"→": "->", "□": "box", "■": "bbox", "◇": "dia", "◆": "bdia", "∀": "forall",
            "∃": "exists", "¬": "not", "∧": "and", "∨": "or", "↔": "iff", "⊥": "bot", "⊤": "top"}
_TOKEN = re.compile(r"\s*(?:(->)|([()\.])|([A-Za-z_][A-Za-z0-9_']*)|(\S))")


def is_variable_name(name: str) -> bool:
    """Free identifiers starting with X, Y or Z denote variables, others propositional symbols."""
    return name[:1] in ("X", "Y", "Z")


def tokenize(text: str) -> list[str]:
    return [t for t, _ in _tokens(text)]


def _tokens(text: str) -> list[tuple[str, int]]:
    """Tokens with their column in ``text``."""
    out = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        if m.group(4):
            if m.group(4) not in _UNICODE:
                raise ParseError(f"unexpected character {m.group(4)!r} at column {m.start(4) + 1}")
            out.append((_UNICODE[m.group(4)], m.start(4)))
        else:
            start = m.start(1) if m.group(1) else m.start(2) if m.group(2) else m.start(3)
            out.append((m.group(1) or m.group(2) or m.group(3), start))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, tokens: list[tuple[str, int]], native: bool, length: int = 0):
        self.toks = [t for t, _ in tokens]
        self.cols = [c for _, c in tokens] + [length]
        self.i = 0
        self.native = native
        self.scope: list[str] = []

    def peek(self) -> str | None:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def error(self, msg: str) -> ParseError:
        return ParseError(f"{msg} at column {self.cols[self.i] + 1}")

    def take(self, expected: str | None = None) -> str:
        t = self.peek()
        if t is None:
            raise self.error("unexpected end of input")
        if expected is not None and t != expected:
            raise self.error(f"expected {expected!r}, found {t!r}")
        self.i += 1
        return t

    def formula(self) -> Formula:
        left = self.implication()
        if self.peek() == "iff":
            self.take()
            return iff(left, self.implication())
        return left

    def implication(self) -> Formula:
        left = self.disjunction()
        if self.peek() == "->":
            self.take()
            return Imp(left, self.implication())
        return left

    def disjunction(self) -> Formula:
        out = self.conjunction()
        while self.peek() == "or":
            self.take()
            out = disj(out, self.conjunction())
        return out

    def conjunction(self) -> Formula:
        out = self.unary()
        while self.peek() == "and":
            self.take()
            out = conj(out, self.unary())
        return out

    def unary(self) -> Formula:
        t = self.peek()
        if t == "not":
            self.take()
            return neg(self.unary())
        if t == "box":
            self.take()
            return Box(self.unary())
        if t == "bbox":
            self.take()
            return BBox(self.unary())
        if t == "dia":
            self.take()
            b = self.unary()
            return Dia(b) if self.native else dia(b)
        if t == "bdia":
            self.take()
            b = self.unary()
            return BDia(b) if self.native else bdia(b)
        if t in ("forall", "exists"):
            self.take()
            name = self.take()
            if not _is_ident(name):
                self.i -= 1
                raise self.error(f"expected a variable after {t}, found {name!r}")
            if self.peek() == ".":
                self.take()
            self.scope.append(name)
            try:
                body = self.formula()
            finally:
                self.scope.pop()
            return Forall(body) if t == "forall" else exists_body(body)
        return self.atom()

    def atom(self) -> Formula:
        t = self.take()
        if t == "(":
            f = self.formula()
            self.take(")")
            return f
        if t == "bot":
            return BOT
        if t == "top":
            return TOP
        if not _is_ident(t):
            self.i -= 1
            raise self.error(f"unexpected token {t!r}")
        for depth, name in enumerate(reversed(self.scope)):
            if name == t:
                return Bound(depth)
        return Var(t) if is_variable_name(t) else Prop(t)


def _is_ident(t: str) -> bool:
    return bool(re.fullmatch(r"[A-Za-z_][A-Za-z0-9_']*", t)) and t not in KEYWORDS


def parse(text: str, native_diamonds: bool = False) -> Formula:
    """Parse a formula. ``dia``/``bdia`` are encoded unless ``native_diamonds`` is set."""
    p = _Parser(_tokens(text), native_diamonds, len(text.rstrip()))
    f = p.formula()
    if p.peek() is not None:
        raise p.error(f"trailing input {p.peek()!r}")
    return f


# precedence levels used by the printer
_P_IFF, _P_IMP, _P_OR, _P_AND, _P_UNARY = range(5)


def show(a: Formula, sugar: bool = False) -> str:
    """Render ``a`` so that ``parse`` gives it back.

    With ``sugar`` the encoded connectives are printed with their keywords;
    ``parse`` then still returns the same formula.
    """
    taken = free_vars(a) | props(a)
    return _show(a, [], taken, sugar)


def _fresh_bound(scope: list[str], taken: set[str]) -> str:
    k = 0
    while True:
        for base in ("X", "Y", "Z"):
            n = base if k == 0 else f"{base}{k}"
            if n not in taken and n not in scope:
                return n
        k += 1


def _wrap(s: str, inner: int, outer: int) -> str:
    return f"({s})" if inner < outer else s


def _show(a: Formula, scope: list[str], taken: set[str], sugar: bool, ctx: int = _P_IFF,
          tail: bool = True) -> str:
    # ctx: minimum precedence required; tail: position extends to the right end
    def sub(f, c, t):
        return _show(f, scope, taken, sugar, c, t)

    if sugar:
        s = _show_sugar(a, scope, taken, ctx, tail)
        if s is not None:
            return s
    match a:
        case Prop(n) | Var(n):
            return n
        case Bound(i):
            return scope[-1 - i] if i < len(scope) else f"?{i}"
        case Imp(l, r):
            s = f"{sub(l, _P_OR, False)} -> {sub(r, _P_IMP, tail or ctx > _P_IMP)}"
            return _wrap(s, _P_IMP, ctx)
        case Forall(b):
            name = _fresh_bound(scope, taken)
            body = _show(b, scope + [name], taken, sugar, _P_IFF, True)
            s = f"forall {name} {body}"
            return s if tail else f"({s})"
        case _:
            kw = {Box: "box", BBox: "bbox", Dia: "dia", BDia: "bdia"}[type(a)]
            return f"{kw} {sub(a.body, _P_UNARY, False)}"


def _show_sugar(a: Formula, scope, taken, ctx, tail) -> str | None:
    if not isinstance(a, (Forall, Imp)):
        return None

    def sub(f, c, t):
        return _show(f, scope, taken, True, c, t)

    if a == BOT:
        return "bot"
    if a == TOP:
        return "top"
    n = match_neg(a)
    if n is not None:
        return f"not {sub(n, _P_UNARY, False)}"
    if isinstance(a, Imp):
        return None
    p = match_conj(a)
    if p is not None:
        s = f"{sub(p[0], _P_AND, False)} and {sub(p[1], _P_UNARY, False)}"
        return _wrap(s, _P_AND, ctx)
    p = match_disj(a)
    if p is not None:
        s = f"{sub(p[0], _P_OR, False)} or {sub(p[1], _P_AND, False)}"
        return _wrap(s, _P_OR, ctx)
    d = match_dia(a)
    if d is not None:
        return f"dia {sub(d, _P_UNARY, False)}"
    d = match_bdia(a)
    if d is not None:
        return f"bdia {sub(d, _P_UNARY, False)}"
    e = match_exists(a)
    if e is not None:
        name = _fresh_bound(scope, taken)
        s = f"exists {name} {_show(e, scope + [name], taken, True, _P_IFF, True)}"
        return s if tail else f"({s})"
    return None
