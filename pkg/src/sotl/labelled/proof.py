"""Labelled proof trees, the rule checker for the three calculi, and the proof file format.

Cedents are sets, so a rule whose principal formula is still present in a
premiss (an implicit contraction) is accepted, and weakening or contraction by
a formula already present is a no-op step. ``id`` is taken exactly as printed:
one formula on each side.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

from ..syntax import BBox, Box, Forall, Formula, Imp, ParseError, Prop, instantiate, neg, parse, show
from .sequent import LF, Sequent, canon, parse_lf, parse_sequent, show_lf, show_sequent

CALCULI = ("LKt2", "LIKt2", "MLIKt2")

ARITY = {
    "id": 0, "cut": 2, "wl": 1, "wr": 1, "cl": 1, "cr": 1, "impl_l": 2, "impl_r": 1,
    "forall_l": 1, "forall_r": 1, "box_l": 1, "box_r": 1, "bbox_l": 1, "bbox_r": 1, "negneg": 1,
}
RIGHT_LOGICAL = {"impl_r", "forall_r", "box_r", "bbox_r"}


@dataclass(frozen=True, eq=False)
class Node:
    """One inference: the conclusion, the rule, its parameters and the premiss subproofs.

    ``principal`` is the principal labelled formula (the cut formula for ``cut``);
    ``arg`` is the witness formula of ``forall_l``, the eigen symbol name of
    ``forall_r``, or the other world of the modal rules.
    """
    seq: Sequent
    rule: str
    principal: LF | None = None
    arg: Formula | str | None = None
    children: tuple["Node", ...] = field(default=())

    def nodes(self) -> Iterator["Node"]:
        """Post-order traversal."""
        stack = [(self, False)]
        while stack:
            n, done = stack.pop()
            if done:
                yield n
                continue
            stack.append((n, True))
            for c in reversed(n.children):
                stack.append((c, False))

    def size(self) -> int:
        return sum(1 for _ in self.nodes())

    def rules(self) -> list[str]:
        """Rule names in pre-order, a coarse skeleton for comparisons."""
        out = []
        stack = [self]
        while stack:
            n = stack.pop()
            out.append(n.rule)
            stack.extend(reversed(n.children))
        return out

    def uses(self, rule: str) -> bool:
        return any(n.rule == rule for n in self.nodes())


class LabelledProofError(ValueError):
    def __init__(self, node: Node, reason: str):
        super().__init__(f"{node.rule} at {show_sequent(node.seq)}: {reason}")
        self.node = node
        self.reason = reason


def _bases(cedent: frozenset, p: LF | None) -> list[frozenset]:
    # what the premiss side may look like before adding the auxiliary formula
    if p is None or p not in cedent:
        return [cedent]
    return [cedent - {p}, cedent]


def _added(prem: frozenset, concl: frozenset, p: LF | None, aux: LF) -> bool:
    return any(prem == b | {aux} for b in _bases(concl, p))


def check_node(n: Node, calc: str, cut: bool = True, extended: bool = False) -> None:
    """Raise ``LabelledProofError`` if ``n`` is not a correct inference (premisses not inspected)."""
    if calc not in CALCULI:
        raise ValueError(f"unknown calculus {calc!r}")
    rule, s, p, arg = n.rule, n.seq, n.principal, n.arg

    def bad(reason: str):
        raise LabelledProofError(n, reason)

    if rule not in ARITY:
        bad("unknown rule")
    if len(n.children) != ARITY[rule]:
        bad(f"expects {ARITY[rule]} premisses, has {len(n.children)}")
    if calc == "LIKt2" and len(s.rhs) != 1:
        bad("LIKt2 sequents have exactly one formula on the right")
    if calc == "LIKt2" and rule in ("wr", "cr"):
        bad("no right structural rules in LIKt2")
    if rule == "cut" and not cut:
        bad("cut is not allowed here")
    if rule == "negneg" and not extended:
        bad("the double negation rule needs the extended checker")
    if rule == "negneg" and calc == "LKt2":
        bad("the double negation rule extends the intuitionistic calculus only")
    prem = [c.seq for c in n.children]
    for q in prem:
        if q.rel != s.rel and rule not in ("box_r", "bbox_r"):
            bad("relational context changed")

    if rule == "id":
        if len(s.lhs) != 1 or s.lhs != s.rhs:
            bad("identity needs R | v:A => v:A")
        return
    if rule not in ("cut",) and (p is None or p not in (s.rhs if _right(rule) else s.lhs)):
        bad("principal formula is not in the conclusion")
    if rule in RIGHT_LOGICAL and calc == "MLIKt2":
        if len(prem[0].rhs) != 1:
            bad("MLIKt2 right logical rules have a single formula on the right of the premiss")
        if s.rhs != {p}:
            bad("MLIKt2 right logical rules have no side formulas on the right")

    v, a = p if p is not None else (None, None)
    match rule:
        case "wl":
            if prem[0].rhs != s.rhs or prem[0].lhs not in _bases(s.lhs, p):
                bad("not a left weakening")
        case "wr":
            if prem[0].lhs != s.lhs or prem[0].rhs not in _bases(s.rhs, p):
                bad("not a right weakening")
        case "cl" | "cr":
            if prem[0] != s:
                bad("contraction premiss must equal the conclusion as sets")
        case "impl_l":
            if not isinstance(a, Imp):
                bad("principal is not an implication")
            _check_split(n, s, prem, p, (v, a.left), (v, a.right))
        case "cut":
            if p is None:
                bad("cut formula missing")
            _check_split(n, s, prem, None, p, p)
        case "impl_r":
            if not isinstance(a, Imp):
                bad("principal is not an implication")
            if prem[0].lhs != s.lhs | {(v, a.left)} or not _added(prem[0].rhs, s.rhs, p, (v, a.right)):
                bad("premiss does not match")
        case "forall_l":
            if not isinstance(a, Forall):
                bad("principal is not universal")
            if not isinstance(arg, Formula) or arg.depth:
                bad("witness must be a closed formula")
            if prem[0].rhs != s.rhs or not _added(prem[0].lhs, s.lhs, p, (v, instantiate(a.body, arg))):
                bad("premiss does not match")
        case "forall_r":
            if not isinstance(a, Forall):
                bad("principal is not universal")
            if not isinstance(arg, str):
                bad("eigen symbol missing")
            if arg in s.props():
                bad(f"eigen symbol {arg} is not fresh")
            if prem[0].lhs != s.lhs or not _added(prem[0].rhs, s.rhs, p, (v, instantiate(a.body, Prop(arg)))):
                bad("premiss does not match")
        case "box_l" | "bbox_l":
            past = rule == "bbox_l"
            if not isinstance(a, BBox if past else Box):
                bad("principal has the wrong modality")
            edge = (arg, v) if past else (v, arg)
            if edge not in s.rel:
                bad(f"relational atom {edge[0]}R{edge[1]} missing")
            if prem[0].rhs != s.rhs or not _added(prem[0].lhs, s.lhs, p, (arg, a.body)):
                bad("premiss does not match")
        case "box_r" | "bbox_r":
            past = rule == "bbox_r"
            if not isinstance(a, BBox if past else Box):
                bad("principal has the wrong modality")
            if not isinstance(arg, str) or arg in s.labels():
                bad(f"world {arg} is not fresh")
            edge = (arg, v) if past else (v, arg)
            q = prem[0]
            if q.rel != s.rel | {edge} or q.lhs != s.lhs or not _added(q.rhs, s.rhs, p, (arg, a.body)):
                bad("premiss does not match")
        case "negneg":
            if prem[0].lhs != s.lhs or not _added(prem[0].rhs, s.rhs, p, (v, neg(neg(a)))):
                bad("premiss does not match")


def _right(rule: str) -> bool:
    return rule in RIGHT_LOGICAL or rule in ("wr", "cr", "negneg")


def _check_split(n: Node, s: Sequent, prem: list[Sequent], p: LF | None, left_aux: LF, right_aux: LF) -> None:
    q1, q2 = prem
    if left_aux not in q1.rhs or right_aux not in q2.lhs:
        raise LabelledProofError(n, "premisses lack the auxiliary formulas")
    extra = {p} if p is not None else set()
    for g2 in _bases(q2.lhs, right_aux) if right_aux in s.lhs else [q2.lhs - {right_aux}]:
        for d1 in _bases(q1.rhs, left_aux) if left_aux in s.rhs else [q1.rhs - {left_aux}]:
            if s.lhs == q1.lhs | g2 | extra and s.rhs == d1 | q2.rhs:
                return
    raise LabelledProofError(n, "conclusion is not the union of the premiss contexts")


def check_labelled_proof(proof: Node, calc: str, cut: bool = True, extended: bool = False) -> None:
    """Raise ``LabelledProofError`` at the first (post-order) incorrect inference."""
    for n in proof.nodes():
        check_node(n, calc, cut, extended)


def accepts(proof: Node, calc: str, cut: bool = True, extended: bool = False) -> bool:
    try:
        check_labelled_proof(proof, calc, cut, extended)
    except LabelledProofError:
        return False
    return True


# ---------------------------------------------------------------------------
# file format: post-order, one node per line, tab separated
#   index  sequent  rule  parameters  children
# parameters: "p=<label>: <formula>" and "arg=<formula or name>", joined by "; "


def dumps(proof: Node) -> str:
    index: dict[int, int] = {}
    out = ["# labelled proof"]
    for k, n in enumerate(proof.nodes()):
        index[id(n)] = k
        params = []
        if n.principal is not None:
            params.append(f"p={show_lf(n.principal)}")
        if n.arg is not None:
            params.append(f"arg={n.arg if isinstance(n.arg, str) else show(n.arg)}")
        kids = " ".join(str(index[id(c)]) for c in n.children)
        out.append(f"{k}\t{show_sequent(n.seq)}\t{n.rule}\t{'; '.join(params)}\t{kids}")
    return "\n".join(out) + "\n"


def loads(text: str) -> Node:
    nodes: list[Node] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        if not raw.strip() or raw.lstrip().startswith("#"):
            continue
        try:
            nodes.append(_load_node(raw, nodes))
        except (ValueError, IndexError) as e:
            raise ParseError(f"line {lineno}: {e}") from e
    if not nodes:
        raise ParseError("empty proof file")
    return nodes[-1]


def _load_node(raw: str, nodes: list[Node]) -> Node:
    cols = raw.split("\t")
    while len(cols) < 5:
        cols.append("")
    idx, seq_text, rule, params, kids = (c.strip() for c in cols[:5])
    if int(idx) != len(nodes):
        raise ParseError(f"node index {idx} out of sequence")
    if rule not in ARITY:
        raise ParseError(f"unknown rule {rule!r}")
    principal, arg = None, None
    for item in filter(None, (x.strip() for x in params.split(";"))):
        key, _, val = item.partition("=")
        if key == "p":
            principal = parse_lf(val)
        elif key == "arg":
            arg = val.strip() if rule in ("forall_r", "box_l", "box_r", "bbox_l", "bbox_r") else parse(val)
        else:
            raise ParseError(f"unknown parameter {key!r}")
    children = tuple(nodes[int(c)] for c in kids.split())
    return Node(parse_sequent(seq_text), rule, principal, arg, children)


__all__ = ["CALCULI", "Node", "LabelledProofError", "check_node", "check_labelled_proof", "accepts",
           "dumps", "loads", "canon"]
