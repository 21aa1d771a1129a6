"""Evaluation of closed formulas in finite models.

Each semantics is an algebra on extensions: a bit mask of worlds for relational
and birelational models, a tuple of per-state masks for predicate models.
Quantifiers range over the model's finite set family, whose names are also
admitted as propositional symbols.
"""
from __future__ import annotations

from dataclasses import dataclass

from ..labelled.sequent import Sequent
from ..syntax import BBox, BDia, Bound, Box, Dia, Forall, Formula, Imp, Prop, Var, instantiate, show
from .models import (BirelPoint, BirelationalModel, Frame, Model, ModelError, PredPoint, PredicateModel, RelPoint,
                     RelationalModel, members, validate_model)


def _box(frame_succ, a: int, n: int) -> int:
    out = 0
    for v in range(n):
        if frame_succ[v] & ~a == 0:
            out |= 1 << v
    return out


def _dia(frame_succ, a: int, n: int) -> int:
    out = 0
    for v in range(n):
        if frame_succ[v] & a:
            out |= 1 << v
    return out


class RelationalAlgebra:
    def __init__(self, m: RelationalModel):
        self.n = len(m.worlds)
        self.full = (1 << self.n) - 1
        self.frame = Frame.of(self.n, m.access)
        self.domain = list(m.sets.values())
        self.symbols = _symbols(m)

    def imp(self, a, b):
        return (~a | b) & self.full

    def box(self, a):
        return _box(self.frame.succ, a, self.n)

    def bbox(self, a):
        return _box(self.frame.pred, a, self.n)

    def dia(self, a):
        return _dia(self.frame.succ, a, self.n)

    def bdia(self, a):
        return _dia(self.frame.pred, a, self.n)

    def forall(self, values):
        out = self.full
        for v in values:
            out &= v
        return out


class BirelationalAlgebra(RelationalAlgebra):
    """Relational clauses followed by the largest upset inside, except for the diamonds."""

    def __init__(self, m: BirelationalModel):
        super().__init__(m)
        self.frame = Frame.of(self.n, m.access, m.order)

    def interior(self, a: int) -> int:
        out = 0
        for v, up in enumerate(self.frame.up):
            if up & ~a == 0:
                out |= 1 << v
        return out

    def imp(self, a, b):
        return self.interior(super().imp(a, b))

    def box(self, a):
        return self.interior(super().box(a))

    def bbox(self, a):
        return self.interior(super().bbox(a))

    def forall(self, values):
        return self.interior(super().forall(values))


class PredicateAlgebra:
    """Clauses of predicate models, state by state."""

    def __init__(self, m: PredicateModel):
        self.n = len(m.worlds)
        self.full = (1 << self.n) - 1
        self.states = range(len(m.states))
        self.above = [[b for b in self.states if (a, b) in m.order] for a in self.states]
        self.frames = [Frame.of(self.n, rel) for rel in m.access]
        self.domain = list(m.sets.values())
        self.symbols = _symbols(m)

    def _every_later(self, per_state):
        return tuple(_meet([per_state[b] for b in self.above[a]], self.full) for a in self.states)

    def imp(self, a, b):
        return self._every_later([(~a[s] | b[s]) & self.full for s in self.states])

    def box(self, a):
        return self._every_later([_box(self.frames[s].succ, a[s], self.n) for s in self.states])

    def bbox(self, a):
        return self._every_later([_box(self.frames[s].pred, a[s], self.n) for s in self.states])

    def dia(self, a):
        return tuple(_dia(self.frames[s].succ, a[s], self.n) for s in self.states)

    def bdia(self, a):
        return tuple(_dia(self.frames[s].pred, a[s], self.n) for s in self.states)

    def forall(self, values):
        return self._every_later([_meet([v[s] for v in values], self.full) for s in self.states])


def _meet(masks, full: int) -> int:
    out = full
    for m in masks:
        out &= m
    return out


def _symbols(m: Model) -> dict:
    out = dict(m.sets)
    for p, s in m.props.items():
        if s in m.sets:
            out[p] = m.sets[s]
    return out


def algebra(m: Model):
    match m:
        case RelationalModel():
            return RelationalAlgebra(m)
        case BirelationalModel():
            return BirelationalAlgebra(m)
        case PredicateModel():
            return PredicateAlgebra(m)
    raise TypeError(f"not a model: {type(m).__name__}")


class Evaluator:
    """Memoised extensions of closed formulas in one model."""

    def __init__(self, m: Model):
        self.model = m
        self.alg = algebra(m)
        self.memo: dict = {}

    def ext(self, f: Formula, env: tuple = ()):
        key = (f, env)
        got = self.memo.get(key)
        if got is None:
            got = self.memo[key] = self._ext(f, env)
        return got

    def _ext(self, f: Formula, env: tuple):
        alg = self.alg
        match f:
            case Prop(name):
                if name not in alg.symbols:
                    raise ModelError(f"unknown propositional symbol {name!r}")
                return alg.symbols[name]
            case Bound(i):
                if i >= len(env):
                    raise ModelError("formula is not closed")
                return env[i]
            case Var(name):
                raise ModelError(f"formula is not closed: free variable {name}")
            case Imp(a, b):
                return alg.imp(self.ext(a, env), self.ext(b, env))
            case Box(a):
                return alg.box(self.ext(a, env))
            case BBox(a):
                return alg.bbox(self.ext(a, env))
            case Dia(a):
                return alg.dia(self.ext(a, env))
            case BDia(a):
                return alg.bdia(self.ext(a, env))
            case Forall(a):
                return alg.forall([self.ext(a, (v,) + env) for v in alg.domain])
        raise TypeError(f"not a formula: {f!r}")

    def holds(self, pt, f: Formula) -> bool:
        return _bit(self.model, self.ext(f), pt)

    def valid(self, f: Formula) -> bool:
        """True at every point."""
        e = self.ext(f)
        if isinstance(self.model, PredicateModel):
            return all(x == self.alg.full for x in e)
        return e == self.alg.full


def _bit(m: Model, ext, pt) -> bool:
    match m, pt:
        case (RelationalModel(), RelPoint(w)) | (BirelationalModel(), BirelPoint(w)):
            if w not in m.worlds:
                raise ModelError(f"unknown world {w!r}")
            return bool(ext >> m.worlds.index(w) & 1)
        case PredicateModel(), PredPoint(a, w):
            if a not in m.states or w not in m.worlds:
                raise ModelError(f"unknown point {a},{w}")
            return bool(ext[m.states.index(a)] >> m.worlds.index(w) & 1)
    raise ModelError(f"{type(pt).__name__} is not a point of a {m.kind} model")


def evaluate(m: Model, pt, f: Formula) -> bool:
    return Evaluator(m).holds(pt, f)


# ---------------------------------------------------------------------------
# birelational collapse


def collapse_world(state: str, world: str) -> str:
    return f"{state}.{world}"


def birel_collapse(m: PredicateModel) -> BirelationalModel:
    """Birelational model on states x worlds; ``(a, v)`` is named ``a.v``."""
    rep = validate_model(m)
    if not rep.ok:
        raise ModelError("collapse of an invalid predicate model: " + "; ".join(map(str, rep.violations)))
    n = len(m.worlds)
    worlds = tuple(collapse_world(a, v) for a in m.states for v in m.worlds)

    def pt(a, v):
        return a * n + v

    order = frozenset((pt(a, v), pt(b, v)) for a, b in m.order for v in range(n))
    sets = {s: sum(1 << pt(a, v) for a in range(len(m.states)) for v in range(n) if ext[a] >> v & 1)
            for s, ext in m.sets.items()}
    access = frozenset((pt(a, v), pt(a, w)) for a, rel in enumerate(m.access) for v, w in rel)
    return BirelationalModel(worlds, order, sets, dict(m.props), access)


def as_birelational(m: RelationalModel) -> BirelationalModel:
    """The same data with the discrete order."""
    return BirelationalModel(m.worlds, frozenset((i, i) for i in range(len(m.worlds))), dict(m.sets),
                             dict(m.props), m.access)


# ---------------------------------------------------------------------------
# relative comprehensivity


@dataclass(frozen=True)
class MissingExtension:
    formula: Formula
    extension: str

    def __str__(self) -> str:
        return f"{show(self.formula)}\t{self.extension}"


@dataclass(frozen=True)
class ComprehensivityReport:
    checked: int
    missing: tuple[MissingExtension, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.missing


def closure(fams, symbols) -> list[Formula]:
    """Subformula closure of ``fams``, quantifier bodies instantiated with each symbol."""
    atoms = [Prop(s) for s in symbols]
    seen: dict[Formula, None] = {}
    stack = list(reversed(list(fams)))
    while stack:
        f = stack.pop()
        if f in seen:
            continue
        seen[f] = None
        match f:
            case Imp(a, b):
                stack += [b, a]
            case Box(a) | BBox(a) | Dia(a) | BDia(a):
                stack.append(a)
            case Forall(a):
                stack += [instantiate(a, c) for c in reversed(atoms)]
    return list(seen)


def _describe(m: Model, ext) -> str:
    if isinstance(m, PredicateModel):
        return " ".join(f"{a}:{{{','.join(members(e, m.worlds))}}}" for a, e in zip(m.states, ext))
    return "{" + ",".join(members(ext, m.worlds)) + "}"


def closure_comprehensive(m: Model, fams) -> ComprehensivityReport:
    """Check that every formula of the closure of ``fams`` has its extension in the set family."""
    ev = Evaluator(m)
    family = set(m.sets.values())
    missing = []
    forms = closure(fams, sorted(m.sets))
    for f in forms:
        e = ev.ext(f)
        if e not in family:
            missing.append(MissingExtension(f, _describe(m, e)))
    return ComprehensivityReport(len(forms), tuple(missing))


# ---------------------------------------------------------------------------
# countermodels


def _point_of(m: Model, p):
    if isinstance(p, str):
        if isinstance(m, PredicateModel):
            raise ModelError("predicate model points are (state, world) pairs")
        p = RelPoint(p) if isinstance(m, RelationalModel) else BirelPoint(p)
    return p


def countermodel_check(m: Model, seq: Sequent, assignment: dict) -> bool:
    """Whether ``assignment`` maps ``seq`` into ``m`` with the left true and the right false."""
    pts = {}
    for x in seq.labels():
        if x not in assignment:
            raise ModelError(f"label {x} is not assigned a point")
        pts[x] = _point_of(m, assignment[x])
    for x, y in seq.rel:
        if not _related(m, pts[x], pts[y]):
            return False
    ev = Evaluator(m)
    return (all(ev.holds(pts[x], a) for x, a in seq.lhs)
            and not any(ev.holds(pts[x], a) for x, a in seq.rhs))


def _related(m: Model, p, q) -> bool:
    if isinstance(m, PredicateModel):
        if p.state != q.state:
            return False
        a = m.states.index(p.state)
        return (m.worlds.index(p.world), m.worlds.index(q.world)) in m.access[a]
    return (m.worlds.index(p.world), m.worlds.index(q.world)) in m.access
