"""Labelled sequents ``R | Gamma => Delta`` with set-valued cedents."""
from __future__ import annotations

import re
from collections import defaultdict, deque
from dataclasses import dataclass

from ..syntax import Formula, ParseError, parse, props, show

LF = tuple[str, Formula]            # labelled formula  v : A
Rel = frozenset[tuple[str, str]]    # relational atoms  vRw

_WORLD = re.compile(r"[a-z][a-z0-9_']*")
_ATOM = re.compile(r"([a-z][a-z0-9_']*)R([a-z][a-z0-9_']*)")


def lf_key(x: LF) -> tuple[str, str]:
    return (show(x[1]), x[0])


def canon(cedent) -> list[LF]:
    """Deterministic order of a cedent: by formula text, then label."""
    return sorted(cedent, key=lf_key)


@dataclass(frozen=True)
class Sequent:
    rel: Rel
    lhs: frozenset
    rhs: frozenset

    @staticmethod
    def of(rel=(), lhs=(), rhs=()) -> "Sequent":
        return Sequent(frozenset(rel), frozenset(lhs), frozenset(rhs))

    def labels(self) -> set[str]:
        out = {v for e in self.rel for v in e}
        out.update(v for v, _ in self.lhs)
        out.update(v for v, _ in self.rhs)
        return out

    def props(self) -> set[str]:
        out: set[str] = set()
        for _, f in self.lhs | self.rhs:
            out |= props(f)
        return out

    def with_(self, rel=None, lhs=None, rhs=None) -> "Sequent":
        return Sequent(frozenset(self.rel if rel is None else rel),
                       frozenset(self.lhs if lhs is None else lhs),
                       frozenset(self.rhs if rhs is None else rhs))

    def __str__(self) -> str:
        return show_sequent(self)


def show_lf(x: LF, sugar: bool = False) -> str:
    return f"{x[0]}: {show(x[1], sugar)}"


def show_sequent(s: Sequent, sugar: bool = False) -> str:
    rel = ", ".join(f"{v}R{w}" for v, w in sorted(s.rel)) or "·"
    lhs = ", ".join(show_lf(x, sugar) for x in canon(s.lhs)) or "·"
    rhs = ", ".join(show_lf(x, sugar) for x in canon(s.rhs)) or "·"
    return f"{rel} | {lhs} => {rhs}"


def parse_lf(text: str) -> LF:
    label, sep, body = text.partition(":")
    label = label.strip()
    if not sep or not _WORLD.fullmatch(label):
        raise ParseError(f"expected 'label: formula', got {text.strip()!r}")
    return label, parse(body)


def _items(text: str) -> list[str]:
    text = text.strip()
    if text in ("", "·", "."):
        return []
    return [t for t in (p.strip() for p in text.split(",")) if t]


def parse_sequent(text: str) -> Sequent:
    """Read ``vRw, wRu | v: A, w: B => u: C``; the relational part is optional."""
    text = text.replace("⇒", "=>")
    if "=>" not in text:
        raise ParseError("missing '=>'")
    left, right = text.split("=>", 1)
    rel_text, bar, lhs_text = left.partition("|")
    if not bar:
        rel_text, lhs_text = "", left
    rel = []
    for a in _items(rel_text):
        m = _ATOM.fullmatch(a)
        if m is None:
            raise ParseError(f"bad relational atom {a!r}")
        rel.append((m.group(1), m.group(2)))
    return Sequent.of(rel, [parse_lf(t) for t in _items(lhs_text)], [parse_lf(t) for t in _items(right)])


# ---------------------------------------------------------------------------
# graph properties of relational contexts


def _undirected(rel) -> dict[str, set[str]]:
    adj: dict[str, set[str]] = defaultdict(set)
    for v, w in rel:
        adj[v].add(w)
        adj[w].add(v)
    return adj


def path(rel, v: str, w: str) -> list[str] | None:
    """Shortest undirected path from ``v`` to ``w`` (deterministic), or None."""
    if v == w:
        return [v]
    adj = _undirected(rel)
    prev = {v: None}
    queue = deque([v])
    while queue:
        x = queue.popleft()
        for y in sorted(adj[x]):
            if y in prev:
                continue
            prev[y] = x
            if y == w:
                out = [w]
                while prev[out[-1]] is not None:
                    out.append(prev[out[-1]])
                return out[::-1]
            queue.append(y)
    return None


def connected(rel, v: str, w: str) -> bool:
    return path(rel, v, w) is not None


def is_polytree(rel, seq: Sequent | None = None) -> bool:
    """Undirected skeleton of ``rel`` is a tree and all cedent labels hang off it."""
    rel = frozenset(rel)
    if any((w, v) in rel for v, w in rel):
        return False            # a pair of opposite edges is an undirected cycle
    nodes = {x for e in rel for x in e}
    if seq is not None:
        nodes |= seq.labels()
    if not nodes:
        return True
    # a forest has |E| = |V| - components; a tree has exactly one component
    if len(rel) != len(nodes) - 1:
        return False
    start = min(nodes)
    return all(connected(rel, start, x) for x in nodes)


def all_connected(seq: Sequent, extra: tuple[str, ...] = ()) -> bool:
    nodes = sorted(seq.labels() | set(extra))
    return all(connected(seq.rel, nodes[0], x) for x in nodes[1:])
