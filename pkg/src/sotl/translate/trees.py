"""Formula interpretations of labelled polytree sequents.

The left interpretation at a world is a conjunction of the formulas labelled
there and of one diamond per neighbouring world; we keep it as an ``LTree`` so
that proof terms can take it apart and put it back together by position. Root
formulas come first, sorted by their printed form, then neighbours sorted by
world name.

Proof terms over these trees work with a ``Pool``: the pieces available at one
world after destructuring a conjunction (formula proofs keyed by formula, and
diamond proofs keyed by the neighbouring world).
"""
from __future__ import annotations

from dataclasses import dataclass, field

from ..hilbert.ipl import dia_push, project, truth, tuple_
from ..hilbert.terms import Nec, Term, lam
from ..labelled.sequent import Sequent, is_polytree, path
from ..syntax import (BBox, Box, Formula, Imp, TOP, bdia, big_conj, big_disj, dia, show)


class TranslateError(ValueError):
    pass


# ---------------------------------------------------------------------------
# shapes


@dataclass(frozen=True)
class Leaf:
    formula: Formula


@dataclass(frozen=True)
class Group:
    tree: "LTree"

    @property
    def formula(self) -> Formula:
        return self.tree.formula


@dataclass(frozen=True)
class Kid:
    past: bool           # True when the edge points into the parent (a backward diamond)
    tree: "LTree"

    @property
    def formula(self) -> Formula:
        return (bdia if self.past else dia)(self.tree.formula)


@dataclass(frozen=True)
class LTree:
    world: str
    items: tuple = ()
    formula: Formula = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "formula", big_conj([i.formula for i in self.items]))


def _neighbours(rel, u: str) -> list[tuple[str, bool]]:
    """Neighbours of ``u`` with True for those reached against an edge (``vRu``)."""
    out = [(w, False) for v, w in rel if v == u] + [(v, True) for v, w in rel if w == u]
    return sorted(out)


def _check_tree(rel, labels: set[str], root: str) -> None:
    rel = frozenset(rel)
    seq = Sequent(rel, frozenset((x, TOP) for x in labels | {root}), frozenset())
    if not is_polytree(rel, seq):
        raise TranslateError("not a polytree sequent")


def ltree(rel, lhs, u: str, avoid=frozenset(), check: bool = True) -> LTree:
    """Left interpretation of ``rel | lhs`` at ``u`` as a tree, leaving out the sides of ``avoid``."""
    rel = frozenset(rel)
    if check:
        _check_tree(rel, {v for v, _ in lhs}, u)
    return _ltree(rel, frozenset(lhs), u, frozenset(avoid))


def _ltree(rel, lhs, u, avoid) -> LTree:
    here = sorted((a for v, a in lhs if v == u), key=show)
    kids = [Kid(past, _ltree(rel, lhs, w, frozenset([u])))
            for w, past in _neighbours(rel, u) if w not in avoid]
    return LTree(u, tuple([Leaf(a) for a in here] + kids))


def rtree_formula(rel, rhs, u: str, avoid=frozenset()) -> Formula:
    here = sorted((a for v, a in rhs if v == u), key=show)
    kids = [(BBox if past else Box)(rtree_formula(rel, rhs, w, frozenset([u])))
            for w, past in _neighbours(rel, u) if w not in avoid]
    return big_disj(here + kids)


# ---------------------------------------------------------------------------
# interpretations


def left_interp(u: str, rel, lhs) -> Formula:
    return ltree(rel, lhs, u).formula


def right_interp(u: str, rel, rhs) -> Formula:
    rel = frozenset(rel)
    _check_tree(rel, {v for v, _ in rhs}, u)
    return rtree_formula(rel, frozenset(rhs), u)


def elide(tree: LTree, consequent: Formula) -> Formula:
    """``L -> C``, or just ``C`` when the left part is empty."""
    return consequent if not tree.items else Imp(tree.formula, consequent)


def classical_interp(u: str, seq: Sequent) -> Formula:
    _check_tree(seq.rel, seq.labels(), u)
    left = ltree(seq.rel, seq.lhs, u, check=False)
    return elide(left, rtree_formula(seq.rel, seq.rhs, u))


def goal_path(seq: Sequent, u: str) -> list[str]:
    if len(seq.rhs) != 1:
        raise TranslateError("the intuitionistic interpretation needs exactly one formula on the right")
    (w, _), = seq.rhs
    _check_tree(seq.rel, seq.labels() | {u}, u)
    route = path(seq.rel, u, w)
    if route is None:
        raise TranslateError(f"{u} is not connected to {w}")
    return route


def intuitionistic_interp(u: str, seq: Sequent) -> Formula:
    route = goal_path(seq, u)
    (_, a), = seq.rhs
    out = a
    for i in range(len(route) - 1, -1, -1):
        avoid = {route[j] for j in (i - 1, i + 1) if 0 <= j < len(route)}
        if i < len(route) - 1:
            out = (Box if (route[i], route[i + 1]) in seq.rel else BBox)(out)
        out = elide(ltree(seq.rel, seq.lhs, route[i], avoid, check=False), out)
    return out


INTERPRETATIONS = ("left", "right", "classical", "intuitionistic")


def interp(kind: str, u: str, seq: Sequent) -> Formula:
    match kind:
        case "left":
            return left_interp(u, seq.rel, seq.lhs)
        case "right":
            return right_interp(u, seq.rel, seq.rhs)
        case "classical":
            return classical_interp(u, seq)
        case "intuitionistic":
            return intuitionistic_interp(u, seq)
    raise ValueError(f"unknown interpretation {kind!r}")


# ---------------------------------------------------------------------------
# pools: taking conjunction trees apart and building them again


@dataclass
class Pool:
    leaves: dict = field(default_factory=dict)      # formula -> Term
    kids: dict = field(default_factory=dict)        # world -> (Kid, Term proving its diamond)

    def copy(self) -> "Pool":
        return Pool(dict(self.leaves), dict(self.kids))


def destruct(tree: LTree, t: Term, pool: Pool | None = None) -> Pool:
    pool = Pool() if pool is None else pool
    n = len(tree.items)
    for i, item in enumerate(tree.items):
        part = t if n == 1 else project(t, i, n)
        match item:
            case Leaf(f):
                pool.leaves.setdefault(f, part)
            case Group(g):
                destruct(g, part, pool)
            case Kid():
                pool.kids.setdefault(item.tree.world, (item, part))
    return pool


def build(tree: LTree, pool: Pool, need=None, override: dict | None = None) -> Term:
    """Proof of ``tree.formula`` from the pieces in ``pool``.

    ``need(world, formula, pool)`` supplies a formula missing from the pool;
    ``override`` maps a neighbour to a ready-made proof of its diamond.
    """
    parts = []
    for item in tree.items:
        match item:
            case Leaf(f):
                t = pool.leaves.get(f)
                if t is None and need is not None:
                    t = need(tree.world, f, pool)
                if t is None and f == TOP:
                    t = truth()
                if t is None:
                    raise TranslateError(f"no proof of {show(f)} at {tree.world}")
                parts.append(t)
            case Group(g):
                parts.append(build(g, pool, need, override))
            case Kid(past, sub):
                if override and sub.world in override:
                    parts.append(override[sub.world])
                    continue
                src = pool.kids.get(sub.world)
                if src is None:
                    raise TranslateError(f"no diamond towards {sub.world} at {tree.world}")
                kid, d = src
                if kid.past != past:
                    raise TranslateError(f"edge direction to {sub.world} differs")
                parts.append(d if kid.tree == sub else dia_push(Nec(morph(kid.tree, sub), past), d, past))
    return tuple_(parts)


def morph(src: LTree, tgt: LTree) -> Term:
    """Closed proof of ``src.formula -> tgt.formula`` when ``tgt`` keeps a part of ``src``."""
    if src == tgt:
        return lam(src.formula, lambda s: s)
    return lam(src.formula, lambda s: build(tgt, destruct(src, s)))


def with_tree(tree: LTree, fn) -> Term:
    """``lam`` over the tree's formula handing ``fn`` the pool, or ``fn`` of an empty pool."""
    if not tree.items:
        return fn(Pool())
    return lam(tree.formula, lambda s: fn(destruct(tree, s)))


def unit_to(past: bool) -> str:
    """Axiom taking ``A`` to a box of the mirrored diamond of ``A``."""
    return "bbox-dia" if past else "box-bdia"


__all__ = ["TranslateError", "Leaf", "Group", "Kid", "LTree", "ltree", "left_interp", "right_interp",
           "classical_interp", "intuitionistic_interp", "interp", "INTERPRETATIONS", "Pool", "destruct",
           "build", "morph", "with_tree", "elide"]
