"""Exhaustive checks over all closed formulas up to a size bound.

Enumerating formulas one by one is hopeless beyond size 7 or so: quantifier
bodies must be evaluated under every assignment of sets to their bound
variables. Instead the search runs over *values*. The value of a formula
sitting under ``k`` binders is its extension as a function of the sets bound
to the variables it depends on, and the value of a compound formula depends
only on the values of its parts. So the set of values realised by formulas of
size at most ``s`` can be built up size by size, keeping one representative
formula per value, and a property of closed extensions holds of all formulas
iff it holds of all realised closed values.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from ..syntax import BBox, BDia, Bound, Box, Dia, Forall, Formula, Imp, Prop
from .evaluate import algebra
from .models import Model


class ProductAlgebra:
    """Several algebras over aligned set families, run side by side."""

    def __init__(self, algs):
        self.algs = list(algs)
        if len({len(a.domain) for a in self.algs}) != 1:
            raise ValueError("set families of different sizes cannot be aligned")
        self.domain = list(zip(*(a.domain for a in self.algs)))
        names = set.intersection(*(set(a.symbols) for a in self.algs))
        self.symbols = {s: tuple(a.symbols[s] for a in self.algs) for s in names}

    def _lift(name):
        def op(self, *args):
            return tuple(getattr(alg, name)(*(x[i] for x in args)) for i, alg in enumerate(self.algs))
        return op

    imp = _lift("imp")
    box = _lift("box")
    bbox = _lift("bbox")
    dia = _lift("dia")
    bdia = _lift("bdia")
    del _lift

    def forall(self, values):
        return tuple(alg.forall([v[i] for v in values]) for i, alg in enumerate(self.algs))


# A value is (support, table): ``support`` lists the bound indices it depends on in
# increasing order and ``table`` its extension for each assignment of family members
# to them, the first index varying fastest.


@lru_cache(maxsize=None)
def _reindex(sub: tuple, sup: tuple, d: int) -> tuple[int, ...]:
    """Position in a table over ``sub`` for each assignment over ``sup``."""
    where = [sup.index(i) for i in sub]
    out = []
    for env in itertools.product(range(d), repeat=len(sup)):
        digits = env[::-1]                 # product varies the last digit fastest
        pos = 0
        for j in reversed(range(len(sub))):
            pos = pos * d + digits[where[j]]
        out.append(pos)
    return tuple(out)


def _normal(alg, supp: tuple, table: tuple):
    """Drop the indices the table does not depend on."""
    d = len(alg.domain)
    j = 0
    while j < len(supp):
        stride = d ** j
        block = stride * d
        if all(table[b + r + stride * t] == table[b + r]
               for b in range(0, len(table), block) for r in range(stride) for t in range(1, d)):
            table = tuple(table[b + r] for b in range(0, len(table), block) for r in range(stride))
            supp = supp[:j] + supp[j + 1:]
        else:
            j += 1
    return supp, table


class _Values:
    def __init__(self, alg, natives: bool):
        self.alg = alg
        self.d = len(alg.domain)
        self.natives = natives

    def atom(self, ext):
        return (), (ext,)

    def bound(self, i: int):
        return _normal(self.alg, (i,), tuple(self.alg.domain))

    def unary(self, op, v):
        supp, table = v
        return _normal(self.alg, supp, tuple(op(x) for x in table))

    def imp(self, v, w):
        (s1, t1), (s2, t2) = v, w
        sup = tuple(sorted(set(s1) | set(s2)))
        i1, i2 = _reindex(s1, sup, self.d), _reindex(s2, sup, self.d)
        imp = self.alg.imp
        return _normal(self.alg, sup, tuple(imp(t1[a], t2[b]) for a, b in zip(i1, i2)))

    def forall(self, v):
        supp, table = v
        d = self.d
        if not supp or supp[0] != 0:
            out = tuple(self.alg.forall([x]) for x in table)
            return _normal(self.alg, tuple(i - 1 for i in supp), out)
        out = tuple(self.alg.forall(table[p:p + d]) for p in range(0, len(table), d))
        return _normal(self.alg, tuple(i - 1 for i in supp[1:]), out)


@dataclass
class ValueClasses:
    """Closed values realised by formulas of size at most ``max_size``, one representative each."""
    max_size: int
    closed: dict

    def __len__(self) -> int:
        return len(self.closed)

    def items(self):
        for (_, table), f in self.closed.items():
            yield table[0], f


def value_classes(alg, max_size: int, props=("P", "Q"), natives: bool = False) -> ValueClasses:
    """All closed values of formulas up to ``max_size`` over ``props``.

    Connectives are implication, the two boxes and the quantifier, plus the
    native diamonds when ``natives`` is set.
    """
    vals = _Values(alg, natives)
    unary = [(Box, alg.box), (BBox, alg.bbox)] + ([(Dia, alg.dia), (BDia, alg.bdia)] if natives else [])
    # table[k][s]: value -> representative for formulas of size exactly s at depth k (new values only)
    seen = [dict() for _ in range(max_size + 1)]
    by_size = [[dict() for _ in range(max_size + 1)] for _ in range(max_size + 1)]

    def add(k, s, v, f):
        if v not in seen[k]:
            seen[k][v] = f
            by_size[k][s][v] = f

    for s in range(1, max_size + 1):
        for k in range(max_size - s, -1, -1):
            if s == 1:
                for p in props:
                    add(k, 1, vals.atom(alg.symbols[p]), Prop(p))
                for i in range(k):
                    add(k, 1, vals.bound(i), Bound(i))
                continue
            for v, f in list(by_size[k][s - 1].items()):
                for cons, op in unary:
                    add(k, s, vals.unary(op, v), cons(f))
            if k + 1 <= max_size - (s - 1):
                for v, f in list(by_size[k + 1][s - 1].items()):
                    add(k, s, vals.forall(v), Forall(f))
            for i in range(1, s - 1):
                left, right = list(by_size[k][i].items()), list(by_size[k][s - 1 - i].items())
                for v, f in left:
                    for w, g in right:
                        add(k, s, vals.imp(v, w), Imp(f, g))
    return ValueClasses(max_size, seen[0])


def closed_formulas(max_size: int, props=("P", "Q"), natives: bool = False, depth: int = 0):
    """Every closed formula up to ``max_size``, by plain enumeration (small sizes only)."""
    for s in range(1, max_size + 1):
        yield from _exact(s, depth, tuple(props), natives)


@lru_cache(maxsize=None)
def _exact(s: int, k: int, props: tuple, natives: bool) -> tuple[Formula, ...]:
    if s == 1:
        return tuple(Prop(p) for p in props) + tuple(Bound(i) for i in range(k))
    out = []
    cons = (Box, BBox, Dia, BDia) if natives else (Box, BBox)
    for f in _exact(s - 1, k, props, natives):
        out += [c(f) for c in cons]
    out += [Forall(f) for f in _exact(s - 1, k + 1, props, natives)]
    for i in range(1, s - 1):
        for f in _exact(i, k, props, natives):
            out += [Imp(f, g) for g in _exact(s - 1 - i, k, props, natives)]
    return tuple(out)


# ---------------------------------------------------------------------------
# the two exhaustive properties


@dataclass(frozen=True)
class Discrepancy:
    formula: Formula
    detail: str


def collapse_discrepancies(m, max_size: int = 9, props=("P", "Q"), natives: bool = False) -> tuple[int, list[Discrepancy]]:
    """Compare a predicate model with its collapse on every closed formula up to ``max_size``.

    Returns the number of value classes checked and the formulas on which the two disagree.
    """
    from .evaluate import birel_collapse
    c = birel_collapse(m)
    prod = ProductAlgebra([algebra(m), algebra(c)])
    n = len(m.worlds)
    out = []
    classes = value_classes(prod, max_size, props, natives)
    for (p, q), f in classes.items():
        flat = sum(1 << (a * n + v) for a, e in enumerate(p) for v in range(n) if e >> v & 1)
        if flat != q:
            out.append(Discrepancy(f, f"predicate {p} vs collapse {q:b}"))
    return len(classes), out


def persistence_violations(m: Model, max_size: int = 9, props=("P", "Q"), natives: bool = False):
    """Closed formulas up to ``max_size`` true at some world and false above it."""
    alg = algebra(m)
    classes = value_classes(alg, max_size, props, natives)
    out = []
    for ext, f in classes.items():
        for i, j in sorted(m.order):
            if ext >> i & 1 and not ext >> j & 1:
                out.append(Discrepancy(f, f"{m.worlds[i]} <= {m.worlds[j]}"))
                break
    return len(classes), out
