"""Activities, the monotone macro rules, witness pools and the step schedule."""
from __future__ import annotations

import functools
from dataclasses import dataclass, replace

from ..labelled.sequent import LF, Sequent, canon, show_lf
from ..syntax import (BBox, BOT, Box, Forall, Formula, Imp, Prop, TOP, free_vars, instantiate, parse, props, show,
                      subformulas)

RIGHT_RULE = {Imp: "impl_r", Forall: "forall_r", Box: "box_r", BBox: "bbox_r"}
POOL_POLICIES = ("shifts", "subformulas")


@dataclass(frozen=True)
class Activity:
    """Side, rule and principal formula of one step, plus its auxiliary datum.

    ``aux`` is the witness of ``forall_l``, the eigen symbol of ``forall_r``, the
    target world of ``box_l``/``bbox_l`` and the fresh world of ``box_r``/``bbox_r``.
    """
    side: str
    rule: str
    principal: LF
    aux: Formula | str | None = None

    def __str__(self) -> str:
        aux = "" if self.aux is None else f" [{self.aux if isinstance(self.aux, str) else show(self.aux)}]"
        return f"{self.side} {self.rule} {show_lf(self.principal)}{aux}"


@dataclass(frozen=True)
class SearchConfig:
    fuel: int = 200
    pool_policy: str = "shifts"
    hints: tuple = ()
    trace: bool = False

    def __post_init__(self):
        if self.fuel < 1:
            raise ValueError("fuel must be at least 1")
        if self.pool_policy not in POOL_POLICIES:
            raise ValueError(f"unknown witness pool policy {self.pool_policy!r}")
        object.__setattr__(self, "hints", tuple(parse(h) if isinstance(h, str) else h for h in self.hints))


# ---------------------------------------------------------------------------
# macro rules


def _instance(q: Forall, c: Formula) -> Formula:
    return instantiate(q.body, c)


def apply_macro(seq: Sequent, act: Activity, single: bool = False) -> list[Sequent] | None:
    """Premisses of the macro step ``act`` on ``seq``, or None when it does not apply.

    Principal formulas stay in the premisses. With ``single`` a right step
    keeps only its auxiliary formula on the right (the intuitionistic right phase).
    """
    v, a = act.principal
    side = seq.lhs if act.side == "L" else seq.rhs
    if act.principal not in side:
        return None
    rel, lhs, rhs = seq.rel, seq.lhs, seq.rhs
    match act.rule:
        case "impl_l" if isinstance(a, Imp):
            return [seq.with_(rhs=rhs | {(v, a.left)}), seq.with_(lhs=lhs | {(v, a.right)})]
        case "forall_l" if isinstance(a, Forall) and isinstance(act.aux, Formula):
            if act.aux.depth or free_vars(act.aux):
                return None
            return [seq.with_(lhs=lhs | {(v, _instance(a, act.aux))})]
        case "box_l" if isinstance(a, Box) and (v, act.aux) in rel:
            return [seq.with_(lhs=lhs | {(act.aux, a.body)})]
        case "bbox_l" if isinstance(a, BBox) and (act.aux, v) in rel:
            return [seq.with_(lhs=lhs | {(act.aux, a.body)})]
    if act.side != "R":
        return None
    keep = frozenset() if single else rhs
    match act.rule:
        case "impl_r" if isinstance(a, Imp):
            return [Sequent(rel, lhs | {(v, a.left)}, keep | {(v, a.right)})]
        case "forall_r" if isinstance(a, Forall) and isinstance(act.aux, str):
            if act.aux in seq.props():
                return None
            return [Sequent(rel, lhs, keep | {(v, _instance(a, Prop(act.aux)))})]
        case "box_r" | "bbox_r" if isinstance(a, Box if act.rule == "box_r" else BBox) and isinstance(act.aux, str):
            if act.aux in seq.labels():
                return None
            edge = (v, act.aux) if act.rule == "box_r" else (act.aux, v)
            return [Sequent(rel | {edge}, lhs, keep | {(act.aux, a.body)})]
    return None


# ---------------------------------------------------------------------------
# witness pools


@functools.lru_cache(maxsize=1 << 14)
def _closed_subformulas(a: Formula) -> frozenset:
    return frozenset(f for f in subformulas(a) if not free_vars(f))


def _pool_key(f: Formula):
    return (f.size, show(f))


def witness_candidates(seq: Sequent, cfg: SearchConfig) -> set[Formula]:
    """Closed subformulas of the sequent, the right formulas, the two units, the hints,
    and (``shifts`` policy) a box and a past box of every right formula."""
    out = {BOT, TOP, *cfg.hints}
    for _, f in seq.lhs | seq.rhs:
        out |= _closed_subformulas(f)
    if cfg.pool_policy == "shifts":
        for _, f in seq.rhs:
            out.add(Box(f))
            out.add(BBox(f))
    return out


def extend_pool(pool: tuple, seq: Sequent, cfg: SearchConfig) -> tuple:
    """Append new candidates in (size, text) order; older entries keep their place."""
    have = set(pool)
    new = [f for f in witness_candidates(seq, cfg) if f not in have]
    return pool + tuple(sorted(new, key=_pool_key))


def initial_pool(seq: Sequent, cfg: SearchConfig) -> tuple:
    hints = tuple(dict.fromkeys(cfg.hints))
    return extend_pool(hints, seq, cfg)


# ---------------------------------------------------------------------------
# branch state and schedule


@dataclass(frozen=True)
class Branch:
    """Sequent plus what this branch has already done."""
    seq: Sequent
    pool: tuple = ()
    done: frozenset = frozenset()                 # activity keys applied once and for all
    used: tuple = ()                              # (principal, witness) pairs of forall_l
    counter: int = 0                              # fresh symbol counter
    chosen: frozenset = frozenset()               # right choices with the context sizes they were made in
    eigens: frozenset = frozenset()               # eigen symbols introduced on this branch

    def used_for(self, p: LF) -> set[Formula]:
        return {c for q, c in self.used if q == p}


def fresh_eigen(b: Branch) -> tuple[str, int]:
    names = b.seq.props() | {n for f in b.pool for n in _props_of(f)}
    k = b.counter
    while f"P{k}" in names:
        k += 1
    return f"P{k}", k + 1


def fresh_world(b: Branch) -> tuple[str, int]:
    labels = b.seq.labels()
    k = b.counter
    while f"w{k}" in labels:
        k += 1
    return f"w{k}", k + 1


@functools.lru_cache(maxsize=1 << 14)
def _props_of(f: Formula) -> frozenset:
    return frozenset(props(f))


def _key(act: Activity):
    return (act.rule, act.principal, act.aux if act.rule in ("box_l", "bbox_l") else None)


def left_cheap(b: Branch) -> list[Activity]:
    """Box and past-box left steps not yet taken, in canonical order."""
    s = b.seq
    out = []
    for p in canon(s.lhs):
        v, a = p
        if isinstance(a, Box):
            out += [Activity("L", "box_l", p, w) for x, w in sorted(s.rel) if x == v]
        elif isinstance(a, BBox):
            out += [Activity("L", "bbox_l", p, u) for u, x in sorted(s.rel) if x == v]
    return [a for a in out if _key(a) not in b.done]


def right_steps(b: Branch, classical: bool) -> list[Activity]:
    """Right steps on non-atomic right formulas (classical: those not yet taken)."""
    out = []
    for p in canon(b.seq.rhs):
        rule = RIGHT_RULE.get(type(p[1]))
        if rule is None:
            continue
        act = Activity("R", rule, p)
        if classical and _key(act) in b.done:
            continue
        out.append(act)
    return out


def impl_lefts(b: Branch) -> list[Activity]:
    s = b.seq
    out = []
    for p in canon(s.lhs):
        v, a = p
        if isinstance(a, Imp) and (v, a.left) not in s.rhs and (v, a.right) not in s.lhs:
            act = Activity("L", "impl_l", p)
            if _key(act) not in b.done:
                out.append(act)
    return out


def _rank(f: Formula, x: str, b: Branch) -> int:
    """0 for eigen symbols, 1 for right formulas carried to the principal's world ``x``, 2 for
    other atoms and right formulas or shifts, 3 for the rest."""
    seq = b.seq
    if isinstance(f, Prop) and f.name in b.eigens:
        return 0
    for y, g in seq.rhs:
        if (y == x and f == g) or ((y, x) in seq.rel and f == BBox(g)) or ((x, y) in seq.rel and f == Box(g)):
            return 1
    if isinstance(f, Prop) or any(f == g or f == Box(g) or f == BBox(g) for _, g in seq.rhs):
        return 2
    return 3


def next_witness(b: Branch, p: LF) -> Formula | None:
    """Alternate between the best-ranked unused witness and the oldest unused one.

    Eigen symbols rank first, then right formulas moved to the principal's world,
    then atoms and other right formulas (see ``_rank``), newest first within a rank. Taking the
    oldest every other time keeps the enumeration fair: the ``k``-th pool
    entry is tried within ``2k`` instances of ``p``.
    """
    v, a = p
    used = b.used_for(p)
    fresh = [(i, c) for i, c in enumerate(b.pool) if c not in used and (v, _instance(a, c)) not in b.seq.lhs]
    if not fresh:
        return None
    if len(used) % 2:
        return fresh[0][1]
    return min(fresh, key=lambda ic: (_rank(ic[1], v, b), -ic[0]))[1]


def forall_lefts(b: Branch) -> list[Activity]:
    """Next witness for each universal on the left, least-used principal first."""
    ranked = []
    for p in canon(b.seq.lhs):
        if isinstance(p[1], Forall):
            c = next_witness(b, p)
            if c is not None:
                ranked.append((len(b.used_for(p)), len(ranked), Activity("L", "forall_l", p, c)))
    return [act for *_, act in sorted(ranked, key=lambda t: (t[0], t[1]))]


def schedule(seq: Sequent, cfg: SearchConfig | None = None, classical: bool = True):
    """Activities for ``seq`` in the order the engine tries them on a fresh branch.

    Box-left steps come first, then right steps (classical), then implication-left
    steps, then universal-left steps dovetailed over rounds: each round offers
    every universal principal its next witness (see ``next_witness``).
    """
    cfg = cfg or SearchConfig()
    b = Branch(seq, initial_pool(seq, cfg))
    yield from left_cheap(b)
    if classical:
        yield from right_steps(b, True)
    yield from impl_lefts(b)
    principals = [p for p in canon(seq.lhs) if isinstance(p[1], Forall)]
    used = b.used
    while True:
        emitted = False
        for p in principals:
            c = next_witness(replace(b, used=used), p)
            if c is not None:
                used += ((p, c),)
                emitted = True
                yield Activity("L", "forall_l", p, c)
        if not emitted:
            return


def record(b: Branch, act: Activity, seq: Sequent, cfg: SearchConfig, counter: int | None = None,
           reset_impl: bool = False) -> Branch:
    """The branch after ``act`` produced the premiss ``seq``."""
    done = b.done
    if reset_impl:
        done = frozenset(k for k in done if k[0] != "impl_l")
    if act.rule != "forall_l":
        done = done | {_key(act)}
    used = b.used + ((act.principal, act.aux),) if act.rule == "forall_l" else b.used
    chosen = b.chosen | {choice_key(b, act)} if reset_impl else b.chosen
    eigens = b.eigens | {act.aux} if act.rule == "forall_r" else b.eigens
    return replace(b, seq=seq, pool=extend_pool(b.pool, seq, cfg), done=done, used=used,
                   counter=b.counter if counter is None else counter, chosen=chosen, eigens=eigens)


def choice_key(b: Branch, act: Activity):
    """A right choice repeated without the left side or the relations growing goes nowhere new."""
    return (act.principal, len(b.seq.lhs), len(b.seq.rel))
