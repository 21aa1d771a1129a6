"""Cut-free proof search for LKt2 and MLIKt2 over the macro rules.

Both engines spend one unit of a global fuel budget per macro step, across
all branches and backtracking. The classical macro rules are invertible, so
the classical engine just follows the schedule on every branch. The
intuitionistic engine has a real choice whenever several formulas sit on the
right; it explores those choices by iterative deepening on branch length.
"""
from __future__ import annotations

import hashlib
import itertools
from dataclasses import dataclass, field, replace

from ..labelled.proof import Node, check_labelled_proof
from ..labelled.sequent import LF, Sequent, canon, show_sequent
from ..labelled.transforms import identity, weaken_right
from .activities import (Activity, Branch, SearchConfig, apply_macro, choice_key, forall_lefts, fresh_eigen, fresh_world,
                         impl_lefts, initial_pool, left_cheap, record, right_steps)
from .report import BranchReport, branch_report_check


@dataclass(frozen=True)
class Proved:
    proof: Node
    fuel_used: int
    trace: tuple[str, ...] = field(default=(), repr=False)


@dataclass(frozen=True)
class Exhausted:
    """No proof within the budget.

    ``saturated`` means the schedule ran out of activities before the fuel ran
    out; even then this is not a certificate of unprovability.
    """
    fuel: int
    fuel_used: int
    frontier: tuple[Sequent, ...]
    report: BranchReport
    saturated: bool = False
    trace: tuple[str, ...] = field(default=(), repr=False)


SearchResult = Proved | Exhausted


@dataclass
class _Closed:
    branch: Branch
    via: LF


@dataclass
class _Step:
    branch: Branch
    act: Activity
    single: bool
    kids: list


class _OutOfFuel(Exception):
    pass


def _digest(seqs: list[Sequent]) -> str:
    text = "\n".join(show_sequent(s) for s in seqs)
    return hashlib.sha256(text.encode()).hexdigest()[:12]


class _Run:
    def __init__(self, cfg: SearchConfig):
        self.cfg = cfg
        self.spent = 0
        self.trace: list[str] = []
        self.path: list[tuple[Branch, Activity | None, list[Branch]]] = []
        self.frontier: list[Sequent] = []
        self.last_path: list = []
        self.open: list[Sequent] = []
        self.cutoff = False
        self.cutoffs = 0
        self.solved: dict = {}          # branch -> derivation, kept across deepening rounds
        self.failed: set = set()        # branches that failed without touching the depth bound
        self.expanded: dict = {}

    def instantiate(self, b: Branch, act: Activity) -> tuple[Activity, int | None]:
        if act.rule == "forall_r":
            name, k = fresh_eigen(b)
            return replace(act, aux=name), k
        if act.rule in ("box_r", "bbox_r"):
            name, k = fresh_world(b)
            return replace(act, aux=name), k
        return act, None

    def apply(self, b: Branch, act: Activity, single: bool = False) -> tuple[Activity, list[Branch]] | None:
        """Premiss branches of ``act``; None (and no fuel spent) when it changes nothing.

        A step already expanded in an earlier deepening round is replayed for free.
        """
        key = (b, act, single)
        if key in self.expanded:
            return self.expanded[key]
        out = self._apply(b, act, single)
        self.expanded[key] = out
        return out

    def _apply(self, b: Branch, act: Activity, single: bool):
        act, counter = self.instantiate(b, act)
        prems = apply_macro(b.seq, act, single)
        if prems is None:
            raise AssertionError(f"scheduled an inapplicable activity {act}")
        kids = [record(b, act, p, self.cfg, counter, reset_impl=single) for p in prems]
        if not single and all(p == b.seq for p in prems):
            return None
        if self.spent >= self.cfg.fuel:
            self.snapshot(b)
            self.open = [b.seq] + [k.seq for _, _, ks in self.path for k in ks]
            raise _OutOfFuel
        self.spent += 1
        self.trace.append(f"{self.spent}\t{act}\t{_digest(prems)}")
        return act, kids

    def skip(self, b: Branch, act: Activity) -> Branch:
        return record(b, act, b.seq, self.cfg)

    def snapshot(self, leaf: Branch) -> None:
        self.last_path = [(b, a) for b, a, _ in self.path] + [(leaf, None)]


def _closing(seq: Sequent) -> LF | None:
    both = seq.lhs & seq.rhs
    return canon(both)[0] if both else None


# ---------------------------------------------------------------------------
# classical engine


def _next_classical(b: Branch) -> Activity | None:
    for group in (left_cheap(b), right_steps(b, True), impl_lefts(b), forall_lefts(b)):
        if group:
            return group[0]
    return None


def _classical(run: _Run, b: Branch):
    while True:
        x = _closing(b.seq)
        if x is not None:
            return _Closed(b, x)
        act = _next_classical(b)
        if act is None:
            run.snapshot(b)
            return None
        got = run.apply(b, act)
        if got is None:
            b = run.skip(b, act)
            continue
        act, kids = got
        frame = (b, act, list(kids))
        run.path.append(frame)
        done = []
        while frame[2]:
            t = _classical(run, frame[2].pop(0))
            if t is None:
                run.path.pop()
                return None
            done.append(t)
        run.path.pop()
        return _Step(b, act, False, done)


# ---------------------------------------------------------------------------
# intuitionistic engine


def _commit(run: _Run, b: Branch, act: Activity, depth: int, single: bool, cost: int = 0):
    got = run.apply(b, act, single)
    if got is None:
        return _intuitionistic(run, run.skip(b, act), depth)
    act, kids = got
    depth -= cost
    frame = (b, act, list(kids))
    run.path.append(frame)
    done = []
    try:
        while frame[2]:
            t = _intuitionistic(run, frame[2].pop(0), depth)
            if t is None:
                return None
            done.append(t)
    finally:
        run.path.pop()
    return _Step(b, act, single, done)


def _intuitionistic(run: _Run, b: Branch, depth: int):
    if b in run.solved:
        return run.solved[b]
    if b in run.failed:
        return None
    before = run.cutoffs
    t = _search_node(run, b, depth)
    if t is not None:
        run.solved[b] = t
    elif run.cutoffs == before:
        run.failed.add(b)
    return t


def _search_node(run: _Run, b: Branch, depth: int):
    x = _closing(b.seq)
    if x is not None:
        return _Closed(b, x)
    cheap = left_cheap(b)
    if cheap:
        return _commit(run, b, cheap[0], depth, False)
    rights = right_steps(b, False)
    if len(b.seq.rhs) == 1 and rights:
        return _commit(run, b, rights[0], depth, True)
    lefts = impl_lefts(b)
    if lefts:
        return _commit(run, b, lefts[0], depth, False)
    options = [(act, True) for act in rights if choice_key(b, act) not in b.chosen]
    options += [(act, False) for act in forall_lefts(b)[:1]]
    if not options:
        run.snapshot(b)
        return None
    if depth <= 0:
        run.cutoff = True
        run.cutoffs += 1
        run.frontier.append(b.seq)
        run.snapshot(b)
        return None
    for act, single in options:
        t = _commit(run, b, act, depth, single, 1)
        if t is not None:
            return t
    return None


# ---------------------------------------------------------------------------
# turning macro derivations into primitive proofs


def _expand(t) -> Node:
    seq = t.branch.seq
    if isinstance(t, _Closed):
        return weaken_right(identity(seq.rel, t.via, seq.lhs), seq.rhs)
    kids = tuple(_expand(k) for k in t.kids)
    act = t.act
    if not t.single:
        return Node(seq, act.rule, act.principal, act.aux, kids)
    n = Node(seq.with_(rhs={act.principal}), act.rule, act.principal, act.aux, kids)
    return weaken_right(n, seq.rhs)


def _report(run: _Run, intuitionistic: bool) -> BranchReport:
    path = run.last_path
    nodes = tuple(b.seq for b, _ in path)
    steps = tuple((i, a) for i, (_, a) in enumerate(path) if a is not None)
    rep = BranchReport(nodes, steps, intuitionistic)
    return replace(rep, clauses=branch_report_check(rep).clauses)


def prove_classical(goal: Sequent, cfg: SearchConfig | None = None) -> SearchResult:
    """Cut-free LKt2 proof of ``goal`` within ``cfg.fuel`` macro steps."""
    cfg = cfg or SearchConfig()
    run = _Run(cfg)
    root = Branch(goal, initial_pool(goal, cfg))
    try:
        t = _classical(run, root)
    except _OutOfFuel:
        return Exhausted(cfg.fuel, run.spent, tuple(run.open), _report(run, False), False, tuple(run.trace))
    if t is None:
        leaf = run.last_path[-1][0].seq
        return Exhausted(cfg.fuel, run.spent, (leaf,), _report(run, False), True, tuple(run.trace))
    proof = _expand(t)
    check_labelled_proof(proof, "LKt2", cut=False)
    return Proved(proof, run.spent, tuple(run.trace))


def prove_intuitionistic(goal: Sequent, cfg: SearchConfig | None = None) -> SearchResult:
    """Cut-free MLIKt2 proof of ``goal``, deepening the bound on choice points per branch one at a time."""
    cfg = cfg or SearchConfig()
    run = _Run(cfg)
    root = Branch(goal, initial_pool(goal, cfg))
    try:
        for depth in itertools.count(0):
            run.cutoff = False
            run.frontier = []
            run.trace.append(f"#\tdepth {depth}")
            t = _intuitionistic(run, root, depth)
            if t is not None:
                proof = _expand(t)
                check_labelled_proof(proof, "MLIKt2", cut=False)
                return Proved(proof, run.spent, tuple(run.trace))
            if not run.cutoff:
                return Exhausted(cfg.fuel, run.spent, tuple(run.frontier) or (goal,), _report(run, True), True,
                                 tuple(run.trace))
    except _OutOfFuel:
        frontier = tuple(dict.fromkeys(run.frontier + run.open))
        return Exhausted(cfg.fuel, run.spent, frontier, _report(run, True), False, tuple(run.trace))
