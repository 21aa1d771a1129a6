"""Branch reports from failed searches and their partial-valuation clause checks.

The checks are diagnostics over the finitely explored branch: a failed search
never certifies that a countermodel exists.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from ..labelled.sequent import Sequent, show_lf, show_sequent
from ..syntax import Forall, Prop, instantiate
from .activities import Activity


@dataclass(frozen=True)
class Clause:
    name: str
    where: str
    ok: bool

    def __str__(self) -> str:
        return f"{'pass' if self.ok else 'FAIL'}\t{self.name}\t{self.where}"


@dataclass(frozen=True)
class BranchReport:
    """The nodes of one open branch, root first, and the steps taken between them.

    ``steps`` pairs the index of a node with the activity applied there; the
    next node is the premiss the branch continued with.
    """
    nodes: tuple[Sequent, ...] = ()
    steps: tuple[tuple[int, Activity], ...] = ()
    intuitionistic: bool = False
    clauses: tuple[Clause, ...] = field(default=(), compare=False)

    @property
    def final(self) -> Sequent | None:
        return self.nodes[-1] if self.nodes else None

    def lines(self) -> list[str]:
        out = [f"node {i}\t{show_sequent(s)}" for i, s in enumerate(self.nodes)]
        out += [f"step {i}\t{act}" for i, act in self.steps]
        out += [str(c) for c in self.clauses]
        return out


@dataclass(frozen=True)
class ClauseSummary:
    clauses: tuple[Clause, ...]

    @property
    def all_pass(self) -> bool:
        return all(c.ok for c in self.clauses)

    @property
    def failures(self) -> list[Clause]:
        return [c for c in self.clauses if not c.ok]


def _clause(rep: BranchReport, i: int, act: Activity) -> Clause:
    nodes = rep.nodes
    nxt = nodes[i + 1] if i + 1 < len(nodes) else nodes[i]
    leaf = nodes[-1]
    v, a = act.principal
    where = show_lf(act.principal)
    # right formulas only persist in the classical engine; otherwise look at the next node
    right = nxt if rep.intuitionistic else leaf
    match act.rule:
        case "impl_l":
            ok = (v, a.left) in nxt.rhs or (v, a.right) in nxt.lhs
            return Clause("-> left", where, ok)
        case "impl_r":
            ok = (v, a.left) in right.lhs and (v, a.right) in right.rhs
            return Clause("-> right", where, ok)
        case "forall_l":
            return Clause("forall left", where, (v, instantiate(a.body, act.aux)) in leaf.lhs)
        case "forall_r":
            ok = any(x == v and _instance_of(a, f, right) for x, f in right.rhs)
            return Clause("forall right", where, ok)
        case "box_l" | "bbox_l":
            edge = (v, act.aux) if act.rule == "box_l" else (act.aux, v)
            ok = edge in leaf.rel and (act.aux, a.body) in leaf.lhs
            return Clause("box left" if act.rule == "box_l" else "bbox left", where, ok)
        case "box_r" | "bbox_r":
            past = act.rule == "bbox_r"
            ok = any((w, a.body) in right.rhs for w in _neighbours(right, v, past))
            return Clause("bbox right" if past else "box right", where, ok)
    return Clause(act.rule, where, False)


def _instance_of(q: Forall, f, seq: Sequent) -> bool:
    return any(instantiate(q.body, Prop(p)) == f for p in seq.props())


def _neighbours(seq: Sequent, v: str, past: bool) -> list[str]:
    return [u for u, x in seq.rel if x == v] if past else [w for x, w in seq.rel if x == v]


def branch_report_check(rep: BranchReport) -> ClauseSummary:
    """Check the partial-valuation clause of every formula the branch decomposed."""
    if not rep.nodes:
        return ClauseSummary(())
    out = []
    for i, s in enumerate(rep.nodes):
        clash = s.lhs & s.rhs
        out.append(Clause("disjoint", f"node {i}", not clash))
    out += [_clause(rep, i, act) for i, act in rep.steps]
    return ClauseSummary(tuple(out))

