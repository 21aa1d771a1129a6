"""Finite relational, birelational and predicate models, their validation and file format.

Worlds and states are named; internally a subset of worlds is a bit mask whose
bit ``i`` stands for the ``i``-th world in declaration order. A model's set
family is an ordered mapping from set names to extents. Set names double as
propositional symbols when evaluating formulas, and ``props`` maps the
ordinary propositional symbols onto set names.

Model file grammar (``#`` starts a comment, tokens are whitespace separated)::

    model relational | birelational | predicate
    WORLDS w1 w2 ...
    STATES a b ...             predicate models only
    ORDER                      one "x y" pair per line, meaning x <= y
    SETS                       "name: w ..." or, for predicate models, "name@a: w ..."
    PROPS                      "P = name" per line
    ACCESS                     "v w" for vRw or, for predicate models, "a: v w"

The order of a model read from a file is the reflexive transitive closure of
its ORDER pairs; ORDER ranges over worlds (birelational) or states (predicate).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from ..syntax import is_variable_name


class ModelError(ValueError):
    pass


def _mask(names, index: dict[str, int]) -> int:
    m = 0
    for n in names:
        if n not in index:
            raise ModelError(f"unknown world {n!r}")
        m |= 1 << index[n]
    return m


def members(mask: int, names) -> list[str]:
    return [n for i, n in enumerate(names) if mask >> i & 1]


def powerset(n: int) -> list[int]:
    return list(range(1 << n))


@dataclass(frozen=True)
class RelationalModel:
    worlds: tuple[str, ...]
    sets: dict[str, int]
    props: dict[str, str]
    access: frozenset[tuple[int, int]]

    kind = "relational"

    @property
    def index(self) -> dict[str, int]:
        return {w: i for i, w in enumerate(self.worlds)}

    @property
    def full(self) -> int:
        return (1 << len(self.worlds)) - 1


@dataclass(frozen=True)
class BirelationalModel:
    worlds: tuple[str, ...]
    order: frozenset[tuple[int, int]]
    sets: dict[str, int]
    props: dict[str, str]
    access: frozenset[tuple[int, int]]

    kind = "birelational"

    @property
    def index(self) -> dict[str, int]:
        return {w: i for i, w in enumerate(self.worlds)}

    @property
    def full(self) -> int:
        return (1 << len(self.worlds)) - 1


@dataclass(frozen=True)
class PredicateModel:
    """States with a partial order over a fixed carrier of modal worlds.

    ``sets[name][a]`` is the extent of ``name`` at the ``a``-th state and
    ``access[a]`` the accessibility relation at that state.
    """
    states: tuple[str, ...]
    order: frozenset[tuple[int, int]]
    worlds: tuple[str, ...]
    sets: dict[str, tuple[int, ...]]
    props: dict[str, str]
    access: tuple[frozenset[tuple[int, int]], ...]

    kind = "predicate"

    @property
    def index(self) -> dict[str, int]:
        return {w: i for i, w in enumerate(self.worlds)}

    @property
    def state_index(self) -> dict[str, int]:
        return {a: i for i, a in enumerate(self.states)}


Model = RelationalModel | BirelationalModel | PredicateModel


@dataclass(frozen=True)
class RelPoint:
    world: str


@dataclass(frozen=True)
class BirelPoint:
    world: str


@dataclass(frozen=True)
class PredPoint:
    state: str
    world: str


EvalPoint = RelPoint | BirelPoint | PredPoint


def points(m: Model) -> list[EvalPoint]:
    match m:
        case RelationalModel():
            return [RelPoint(w) for w in m.worlds]
        case BirelationalModel():
            return [BirelPoint(w) for w in m.worlds]
    return [PredPoint(a, w) for a in m.states for w in m.worlds]


# ---------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class Violation:
    name: str
    witness: tuple[str, ...]

    def __str__(self) -> str:
        return f"{self.name}\t{' '.join(self.witness)}"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def names(self) -> set[str]:
        return {v.name for v in self.violations}


def _order_violations(order, names) -> list[Violation]:
    out = []
    n = len(names)
    for i in range(n):
        if (i, i) not in order:
            out.append(Violation("reflexivity", (names[i],)))
    for i, j in sorted(order):
        if i != j and (j, i) in order and i < j:
            out.append(Violation("antisymmetry", (names[i], names[j])))
    for i, j in sorted(order):
        for k in range(n):
            if (j, k) in order and (i, k) not in order:
                out.append(Violation("transitivity", (names[i], names[j], names[k])))
    return out


def _prop_violations(m: Model) -> list[Violation]:
    out = []
    for p, s in sorted(m.props.items()):
        if s not in m.sets:
            out.append(Violation("prop-not-in-sets", (p, s)))
        if p in m.sets and m.sets[p] != m.sets.get(s):
            out.append(Violation("name-clash", (p,)))
        if is_variable_name(p):
            out.append(Violation("variable-name", (p,)))
    out += [Violation("variable-name", (s,)) for s in sorted(m.sets) if is_variable_name(s)]
    return out


def _upward_closed(mask: int, order) -> tuple[int, int] | None:
    for i, j in sorted(order):
        if mask >> i & 1 and not mask >> j & 1:
            return i, j
    return None


def validate_model(m: Model) -> ValidationReport:
    """Every violated invariant of ``m``, each with the worlds or states witnessing it."""
    out = _prop_violations(m)
    w = m.worlds
    if isinstance(m, RelationalModel):
        out += [Violation("range", (str(s),)) for s in sorted(m.sets) if m.sets[s] >> len(w)]
        return ValidationReport(tuple(out))
    if isinstance(m, BirelationalModel):
        le, acc = m.order, m.access
        out += _order_violations(le, w)
        for s, mask in m.sets.items():
            bad = _upward_closed(mask, le)
            if bad:
                out.append(Violation("upward-closure", (s, w[bad[0]], w[bad[1]])))
        n = len(w)
        # vRw <= w' needs some v' >= v with v'Rw'
        for (v, x), x2 in product(sorted(acc), range(n)):
            if (x, x2) in le and not any((v, v2) in le and (v2, x2) in acc for v2 in range(n)):
                out.append(Violation("bisimulation-backward", (w[v], w[x], w[x2])))
        # v <= v' with vRw needs some w' >= w with v'Rw'
        for (v, v2), x in product(sorted(le), range(n)):
            if (v, x) in acc and not any((x, x2) in le and (v2, x2) in acc for x2 in range(n)):
                out.append(Violation("bisimulation-forward", (w[v], w[v2], w[x])))
        return ValidationReport(tuple(out))
    st = m.states
    out += _order_violations(m.order, st)
    for (a, b) in sorted(m.order):
        for s, ext in m.sets.items():
            if ext[a] & ~ext[b]:
                out.append(Violation("monotonicity", (s, st[a], st[b])))
        if not m.access[a] <= m.access[b]:
            out.append(Violation("monotonicity", ("R", st[a], st[b])))
    return ValidationReport(tuple(out))


# ---------------------------------------------------------------------------
# constructors


def reflexive_transitive(pairs, n: int) -> frozenset[tuple[int, int]]:
    le = {(i, i) for i in range(n)} | set(pairs)
    for k, i, j in product(range(n), repeat=3):
        if (i, k) in le and (k, j) in le:
            le.add((i, j))
    return frozenset(le)


def upsets(order, n: int) -> list[int]:
    return [m for m in range(1 << n) if _upward_closed(m, order) is None]


def set_name(mask: int, worlds) -> str:
    return "S_" + "_".join(members(mask, worlds)) if mask else "S_empty"


def relational(worlds, access, props: dict[str, list[str]], sets: dict[str, list[str]] | None = None) -> RelationalModel:
    """Relational model; without ``sets`` the family is the full powerset, one name per subset."""
    worlds = tuple(worlds)
    ix = {w: i for i, w in enumerate(worlds)}
    fam = ({set_name(m, worlds): m for m in powerset(len(worlds))} if sets is None
           else {s: _mask(ws, ix) for s, ws in sets.items()})
    return RelationalModel(worlds, fam, _name_props(props, fam, ix), frozenset((ix[v], ix[w]) for v, w in access))


def birelational(worlds, order, access, props: dict[str, list[str]],
                 sets: dict[str, list[str]] | None = None) -> BirelationalModel:
    """Birelational model; ``order`` lists generating pairs, ``sets`` defaults to all upsets."""
    worlds = tuple(worlds)
    ix = {w: i for i, w in enumerate(worlds)}
    le = reflexive_transitive({(ix[v], ix[w]) for v, w in order}, len(worlds))
    fam = ({set_name(m, worlds): m for m in upsets(le, len(worlds))} if sets is None
           else {s: _mask(ws, ix) for s, ws in sets.items()})
    return BirelationalModel(worlds, le, fam, _name_props(props, fam, ix),
                             frozenset((ix[v], ix[w]) for v, w in access))


def _name_props(props, fam, ix) -> dict[str, str]:
    out = {}
    for p, ws in props.items():
        if isinstance(ws, str):
            out[p] = ws
            continue
        m = _mask(ws, ix)
        names = [s for s, v in fam.items() if v == m]
        if not names:
            raise ModelError(f"no set for the extent of {p}")
        out[p] = names[0]
    return out


def monotone_families(order, n_states: int, n_worlds: int) -> list[tuple[int, ...]]:
    """All state-indexed extents that grow along the order."""
    out = []
    for ext in product(range(1 << n_worlds), repeat=n_states):
        if all(ext[a] & ~ext[b] == 0 for a, b in order):
            out.append(ext)
    return out


def predicate(states, order, worlds, access: dict[str, list[tuple[str, str]]], props: dict[str, dict[str, list[str]]],
              sets: dict[str, dict[str, list[str]]] | None = None) -> PredicateModel:
    """Predicate model. ``props`` and ``sets`` give per-state extents; without ``sets`` the
    family is every monotone extent plus the props."""
    states, worlds = tuple(states), tuple(worlds)
    si = {a: i for i, a in enumerate(states)}
    ix = {w: i for i, w in enumerate(worlds)}
    le = reflexive_transitive({(si[a], si[b]) for a, b in order}, len(states))

    def ext(per_state):
        return tuple(_mask(per_state.get(a, ()), ix) for a in states)

    if sets is None:
        fam = {f"S{k}": e for k, e in enumerate(monotone_families(le, len(states), len(worlds)))}
    else:
        fam = {s: ext(v) for s, v in sets.items()}
    for p, v in props.items():
        fam[p] = ext(v)
    acc = tuple(frozenset((ix[v], ix[w]) for v, w in access.get(a, ())) for a in states)
    return PredicateModel(states, le, worlds, fam, {p: p for p in props}, acc)


# ---------------------------------------------------------------------------
# text format


_SECTIONS = ("WORLDS", "STATES", "ORDER", "SETS", "PROPS", "ACCESS")


def parse_model(text: str) -> Model:
    kind = None
    header: dict[str, list[str]] = {}
    body: dict[str, list[tuple[int, list[str]]]] = {s: [] for s in _SECTIONS}
    section = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        if toks[0] == "model":
            if len(toks) != 2 or toks[1] not in ("relational", "birelational", "predicate"):
                raise ModelError(f"line {lineno}: expected 'model relational|birelational|predicate'")
            kind = toks[1]
        elif toks[0] in _SECTIONS:
            section = toks[0]
            if toks[0] in ("WORLDS", "STATES"):
                header[section] = toks[1:]
                section = None
            elif len(toks) > 1:
                raise ModelError(f"line {lineno}: {toks[0]} takes its entries on the following lines")
        elif section is None:
            raise ModelError(f"line {lineno}: entry outside a section: {line!r}")
        else:
            body[section].append((lineno, toks))
    if kind is None:
        raise ModelError("missing 'model' line")
    worlds = tuple(header.get("WORLDS", ()))
    if not worlds or len(set(worlds)) != len(worlds):
        raise ModelError("WORLDS must list distinct worlds")
    ix = {w: i for i, w in enumerate(worlds)}
    states = tuple(header.get("STATES", ()))
    if (kind == "predicate") != bool(states):
        raise ModelError("STATES is required for predicate models and only for them")
    si = {a: i for i, a in enumerate(states)}

    def look(table, name, lineno):
        if name not in table:
            raise ModelError(f"line {lineno}: unknown name {name!r}")
        return table[name]

    carrier = si if kind == "predicate" else ix
    order = []
    for lineno, toks in body["ORDER"]:
        if len(toks) != 2:
            raise ModelError(f"line {lineno}: ORDER entries are 'x y'")
        order.append((look(carrier, toks[0], lineno), look(carrier, toks[1], lineno)))
    props = {}
    for lineno, toks in body["PROPS"]:
        if len(toks) != 3 or toks[1] != "=":
            raise ModelError(f"line {lineno}: PROPS entries are 'P = name'")
        props[toks[0]] = toks[2]

    def split_colon(toks, lineno):
        head, _, rest = " ".join(toks).partition(":")
        if not _:
            raise ModelError(f"line {lineno}: expected 'name: ...'")
        return head.strip(), rest.split()

    if kind != "predicate":
        sets = {}
        for lineno, toks in body["SETS"]:
            name, ws = split_colon(toks, lineno)
            sets[name] = sum(1 << look(ix, w, lineno) for w in set(ws))
        access = set()
        for lineno, toks in body["ACCESS"]:
            if len(toks) != 2:
                raise ModelError(f"line {lineno}: ACCESS entries are 'v w'")
            access.add((look(ix, toks[0], lineno), look(ix, toks[1], lineno)))
        if kind == "relational":
            if order:
                raise ModelError("relational models have no ORDER")
            return RelationalModel(worlds, sets, props, frozenset(access))
        le = reflexive_transitive(order, len(worlds))
        return BirelationalModel(worlds, le, sets, props, frozenset(access))
    le = reflexive_transitive(order, len(states))
    psets: dict[str, list[int]] = {}
    for lineno, toks in body["SETS"]:
        head, ws = split_colon(toks, lineno)
        name, at, a = head.partition("@")
        if not at:
            raise ModelError(f"line {lineno}: predicate SETS entries are 'name@state: ...'")
        ext = psets.setdefault(name, [0] * len(states))
        ext[look(si, a, lineno)] |= sum(1 << look(ix, w, lineno) for w in set(ws))
    acc = [set() for _ in states]
    for lineno, toks in body["ACCESS"]:
        head, ws = split_colon(toks, lineno)
        if len(ws) != 2:
            raise ModelError(f"line {lineno}: predicate ACCESS entries are 'a: v w'")
        acc[look(si, head, lineno)].add((look(ix, ws[0], lineno), look(ix, ws[1], lineno)))
    return PredicateModel(states, le, worlds, {s: tuple(e) for s, e in psets.items()}, props,
                          tuple(frozenset(a) for a in acc))


def _covers(order, n: int) -> list[tuple[int, int]]:
    """Pairs of the order not implied by reflexivity and transitivity of the others."""
    strict = {(i, j) for i, j in order if i != j}
    return sorted((i, j) for i, j in strict
                  if not any((i, k) in strict and (k, j) in strict for k in range(n)))


def format_model(m: Model) -> str:
    """Canonical text of ``m``; equal models print identically."""
    out = [f"model {m.kind}", "WORLDS " + " ".join(m.worlds)]
    w = m.worlds
    if isinstance(m, PredicateModel):
        out.append("STATES " + " ".join(m.states))
    names = m.states if isinstance(m, PredicateModel) else w
    if not isinstance(m, RelationalModel):
        out.append("ORDER")
        out += [f"{names[i]} {names[j]}" for i, j in _covers(m.order, len(names))]
    out.append("SETS")
    for s in sorted(m.sets):
        if isinstance(m, PredicateModel):
            out += [f"{s}@{a}: " + " ".join(members(e, w)) for a, e in zip(m.states, m.sets[s])]
        else:
            out.append(f"{s}: " + " ".join(members(m.sets[s], w)))
    out.append("PROPS")
    out += [f"{p} = {s}" for p, s in sorted(m.props.items())]
    out.append("ACCESS")
    if isinstance(m, PredicateModel):
        for a, rel in zip(m.states, m.access):
            out += [f"{a}: {w[i]} {w[j]}" for i, j in sorted(rel)]
    else:
        out += [f"{w[i]} {w[j]}" for i, j in sorted(m.access)]
    return "\n".join(line.rstrip() for line in out) + "\n"


def load_model(path) -> Model:
    with open(path, encoding="utf-8") as fh:
        return parse_model(fh.read())


@dataclass(frozen=True)
class Frame:
    """Successor and predecessor masks of an accessibility relation, per world."""
    succ: tuple[int, ...]
    pred: tuple[int, ...]
    up: tuple[int, ...] = field(default=())

    @staticmethod
    def of(n: int, rel, order=None) -> "Frame":
        succ = [0] * n
        pred = [0] * n
        for i, j in rel:
            succ[i] |= 1 << j
            pred[j] |= 1 << i
        up = [0] * n
        for i, j in order or ():
            up[i] |= 1 << j
        return Frame(tuple(succ), tuple(pred), tuple(up))
