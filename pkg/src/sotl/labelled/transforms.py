"""Proof transformations: falsity along a path, multi- to single-succedent, and the
classical-to-intuitionistic reduction through the double negation rule."""
from __future__ import annotations

from ..syntax import BOT, BBox, Box, Formula, Prop, instantiate, neg
from .proof import RIGHT_LOGICAL, Node, check_labelled_proof
from .sequent import LF, Sequent, all_connected, canon, path


class TransformError(ValueError):
    pass


def weaken_left(proof: Node, target: frozenset) -> Node:
    """Add the missing formulas of ``target`` to the left of ``proof`` by left weakenings."""
    s = proof.seq
    if not s.lhs <= target:
        raise TransformError("cannot weaken to a smaller cedent")
    for x in canon(target - s.lhs):
        s = s.with_(lhs=s.lhs | {x})
        proof = Node(s, "wl", x, None, (proof,))
    return proof


def weaken_right(proof: Node, target: frozenset) -> Node:
    s = proof.seq
    if not s.rhs <= target:
        raise TransformError("cannot weaken to a smaller cedent")
    for x in canon(target - s.rhs):
        s = s.with_(rhs=s.rhs | {x})
        proof = Node(s, "wr", x, None, (proof,))
    return proof


def identity(rel, x: LF, lhs=frozenset()) -> Node:
    """``R | lhs, x => x`` by ``id`` and left weakenings."""
    return weaken_left(Node(Sequent.of(rel, [x], [x]), "id"), frozenset(lhs) | {x})


# ---------------------------------------------------------------------------
# falsity at v proves anything at a connected w


def bottom_derivation(rel, lhs, v: str, w: str, a: Formula) -> Node:
    """Cut-free LIKt2 proof of ``rel | lhs, v: bot => w: a`` for ``v`` connected to ``w``."""
    rel = frozenset(rel)
    route = path(rel, v, w)
    if route is None:
        raise TransformError(f"{v} and {w} are not connected")
    return _bot_along(rel, frozenset(lhs), route, a)


def _bot_along(rel, lhs: frozenset, route: list[str], a: Formula) -> Node:
    v = route[0]
    here = (v, BOT)
    concl = Sequent(rel, lhs | {here}, frozenset([(route[-1], a)]))
    rest = lhs - {here}
    if len(route) == 1:
        inner = identity(rel, (v, a), rest)
        return Node(concl, "forall_l", here, a, (inner,))
    nxt = route[1]
    forward = (v, nxt) in rel
    m = Box if forward else BBox
    boxed = (v, m(BOT))
    up = _bot_along(rel, rest, route[1:], a)          # rel | rest, nxt: bot => w: a
    mid_seq = Sequent(rel, rest | {boxed}, concl.rhs)
    mid = Node(mid_seq, "box_l" if forward else "bbox_l", boxed, nxt, (up,))
    return Node(concl, "forall_l", here, m(BOT), (mid,))


# ---------------------------------------------------------------------------
# MLIKt2 to LIKt2


def multi_to_single(proof: Node, check: bool = True) -> tuple[LF, Node]:
    """Pick one right formula of the conclusion and an LIKt2 proof with it alone on the right."""
    if check:
        check_labelled_proof(proof, "MLIKt2")
    chosen, out = _single(proof)
    if check:
        check_labelled_proof(out, "LIKt2", cut=proof.uses("cut"))
    return chosen, out


def _single(n: Node) -> tuple[LF, Node]:
    s = n.seq
    match n.rule:
        case "id":
            return next(iter(s.rhs)), n
        case "wr" | "cr" | "cl":
            return _single(n.children[0])
        case "wl":
            c, q = _single(n.children[0])
            return c, weaken_left(q, s.lhs)
        case _ if n.rule in RIGHT_LOGICAL:
            c, q = _single(n.children[0])
            return n.principal, Node(s.with_(rhs={n.principal}), n.rule, n.principal, n.arg, (q,))
        case "forall_l" | "box_l" | "bbox_l":
            c, q = _single(n.children[0])
            return c, Node(s.with_(rhs={c}), n.rule, n.principal, n.arg, (q,))
        case "impl_l" | "cut":
            left, right = n.children
            aux = (n.principal[0], n.principal[1].left) if n.rule == "impl_l" else n.principal
            c1, q1 = _single(left)
            if c1 != aux:
                return c1, weaken_left(q1, s.lhs)
            c2, q2 = _single(right)
            return c2, Node(s.with_(rhs={c2}), n.rule, n.principal, n.arg, (q1, q2))
    raise TransformError(f"rule {n.rule} does not occur in MLIKt2 proofs")


# ---------------------------------------------------------------------------
# LKt2 to LIKt2 with the double negation rule


def negate(cedent) -> frozenset:
    return frozenset((v, neg(a)) for v, a in cedent)


def classical_to_negneg(proof: Node, x: str, check: bool = True) -> Node:
    """Proof of ``R | Gamma, not Delta => x: bot`` in LIKt2 plus the double negation rule."""
    if check:
        check_labelled_proof(proof, "LKt2")
    if x not in proof.seq.labels():
        raise TransformError(f"{x} does not occur in the conclusion")
    if not all_connected(proof.seq):
        raise TransformError("the labels of the conclusion are not connected")
    out = _nn(proof, x)
    if check:
        check_labelled_proof(out, "LIKt2", cut=proof.uses("cut"), extended=True)
    return out


def _nn(n: Node, x: str) -> Node:
    s = n.seq
    target = s.lhs | negate(s.rhs)
    rel = s.rel
    goal = frozenset([(x, BOT)])

    def finish(q: Node) -> Node:
        return weaken_left(q, target)

    def refute(p: LF, q: Node) -> Node:
        # q proves R | L => v:C; use v: not C on the left against it
        v, c = p
        neg_p = (v, neg(c))
        bot = bottom_derivation(rel, frozenset(), v, x, BOT)
        lhs = q.seq.lhs | {neg_p}
        return finish(Node(Sequent(rel, lhs, goal), "impl_l", neg_p, None, (q, bot)))

    def reintroduce(sub: Node, v: str, c: Formula, rel_up=None) -> Node:
        # sub proves R' | L, v: not c => v: bot; give R' | L => v: c via ->r and the rule
        r = sub.seq.rel if rel_up is None else rel_up
        nc = (v, neg(c))
        base = sub.seq.lhs - {nc} if nc not in target else sub.seq.lhs
        nn = Node(Sequent(r, base, frozenset([(v, neg(neg(c)))])), "impl_r", (v, neg(neg(c))), None, (sub,))
        return Node(Sequent(r, base, frozenset([(v, c)])), "negneg", (v, c), None, (nn,))

    match n.rule:
        case "id":
            (p,) = s.lhs
            q = Node(Sequent(rel, frozenset([p]), frozenset([p])), "id")
            return refute(p, q)
        case "wl" | "wr" | "cl" | "cr":
            return finish(_nn(n.children[0], x))
        case "forall_l" | "box_l" | "bbox_l":
            q = _nn(n.children[0], x)
            return Node(Sequent(rel, target, goal), n.rule, n.principal, n.arg, (q,))
        case "impl_l" | "cut":
            left, right = n.children
            v = n.principal[0]
            aux = (v, n.principal[1].left) if n.rule == "impl_l" else n.principal
            q1 = reintroduce(_nn(left, v), v, aux[1])
            q2 = _nn(right, x)
            raux = (v, n.principal[1].right) if n.rule == "impl_l" else n.principal
            g2 = q2.seq.lhs if raux in target else q2.seq.lhs - {raux}
            lhs = q1.seq.lhs | g2 | ({n.principal} if n.rule == "impl_l" else set())
            return finish(Node(Sequent(rel, lhs, goal), n.rule, n.principal, None, (q1, q2)))
        case "impl_r":
            v, a = n.principal
            sub = _nn(n.children[0], v)
            body = reintroduce(sub, v, a.right)
            la = (v, a.left)
            base = body.seq.lhs - {la} if la not in target else body.seq.lhs
            q = Node(Sequent(rel, base, frozenset([n.principal])), "impl_r", n.principal, None, (body,))
            return refute(n.principal, q)
        case "forall_r" | "box_r" | "bbox_r":
            v, a = n.principal
            up = n.children[0].seq
            aux = _aux(n)
            sub = _nn(n.children[0], aux[0])
            body = reintroduce(sub, aux[0], aux[1], up.rel)
            q = Node(Sequent(rel, body.seq.lhs, frozenset([n.principal])), n.rule, n.principal, n.arg, (body,))
            return refute(n.principal, q)
    raise TransformError(f"rule {n.rule} does not occur in LKt2 proofs")


def _aux(n: Node) -> LF:
    v, a = n.principal
    match n.rule:
        case "forall_r":
            return v, instantiate(a.body, Prop(n.arg))
        case _:
            return n.arg, a.body
