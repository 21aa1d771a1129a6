"""Compiling labelled proofs into Hilbert proofs.

Every node is first proved at the world of its right-hand formula, as
``L -> A`` with ``L`` the left interpretation there. Left rules become maps
between left interpretations; the one formula a left rule adds is produced at
its world from everything the conjunction knows, which is carried down the
path from the root through the tense axioms ``A -> box bdia A`` and
``A -> bbox dia A``. The finished implication is then moved to the requested
world along the path between the two.
"""
from __future__ import annotations

from ..hilbert.ipl import box_map, dia_push, inl, inr
from ..hilbert.proof import HilbertProof, check_proof
from ..hilbert.terms import EIGEN, App, Ax, Builder, Const, ForallIntro, Inst, Nec, Term, lam
from ..labelled.proof import Node, check_labelled_proof
from ..labelled.sequent import Sequent, path
from ..labelled.transforms import classical_to_negneg, negate
from ..syntax import Formula, Prop, big_disj, instantiate, neg, show
from .trees import (Kid, LTree, Pool, TranslateError, build, classical_interp, destruct, goal_path,
                    intuitionistic_interp, ltree, morph, with_tree)


def _kid(tree: LTree, world: str) -> Kid:
    for item in tree.items:
        if isinstance(item, Kid) and item.tree.world == world:
            return item
    raise TranslateError(f"{world} is not next to {tree.world}")


def _carry(rel, u_tree: LTree, u_term: Term, here: str, nxt: str, inner) -> tuple[Kid, Term]:
    """Push ``u_term`` (what is known at ``here``) to ``nxt`` under the box towards it.

    ``inner(kid, e)`` builds a closed term from the carried diamond ``e``.
    Returns the mirrored diamond kid and ``box (diamond U -> ...)``.
    """
    forward = (here, nxt) in rel
    up = Kid(forward, u_tree)
    g = lam(up.formula, lambda e: inner(up, e))
    tag = "box-bdia" if forward else "bbox-dia"
    return up, box_map(g, App(Ax(tag, A=u_tree.formula), u_term), not forward)


def _left_step(rel, src, tgt, w: str, x: str | None, produce) -> Term:
    """Closed ``L_w(src) -> L_w(tgt)``; the formula of ``tgt`` missing from ``src`` sits at ``x``."""
    s_root = ltree(rel, src, w, check=False)
    t_root = ltree(rel, tgt, w, check=False)
    if x is None:
        return morph(s_root, t_root)
    route = path(rel, w, x)

    def go(i: int, s_tree: LTree, t_tree: LTree, s: Term, up) -> Term:
        pool = destruct(s_tree, s)
        if up is not None:
            pool.kids[up[0]] = (up[1], up[2])
        here = route[i]
        if i == len(route) - 1:
            return build(t_tree, pool, lambda world, f, p: produce(f, p))
        nxt = route[i + 1]
        s_kid, t_kid = _kid(s_tree, nxt), _kid(t_tree, nxt)
        u_tree = ltree(rel, src, here, {nxt}, check=False)

        def inner(kid, e):
            return lam(s_kid.tree.formula, lambda s2: go(i + 1, s_kid.tree, t_kid.tree, s2, (here, kid, e)))

        _, boxed = _carry(rel, u_tree, build(u_tree, pool), here, nxt, inner)
        d = dia_push(boxed, pool.kids[nxt][1], s_kid.past)
        return build(t_tree, pool, override={nxt: d})

    return lam(s_root.formula, lambda s: go(0, s_root, t_root, s, None))


class _Compiler:
    def __init__(self, system: str):
        self.system = system
        self.b = Builder()
        self.memo: dict[int, Const] = {}

    def const(self, t: Term) -> Const:
        return Const(t.type, line=self.b.prove(t))

    def node(self, n: Node) -> Const:
        """Closed proof of ``L_w(R | lhs) -> A`` for the conclusion ``R | lhs => w: A``."""
        key = id(n)
        if key not in self.memo:
            self.memo[key] = self.const(self._node(n))
        return self.memo[key]

    def _node(self, n: Node) -> Term:
        s = n.seq
        if len(s.rhs) != 1:
            raise TranslateError(f"{n.rule}: expected a single formula on the right of {s}")
        (w, a), = s.rhs
        rel = s.rel
        root = ltree(rel, s.lhs, w)
        match n.rule:
            case "id":
                return lam(root.formula, lambda x: destruct(root, x).leaves[a])
            case "wl" | "cl" | "cr":
                prem = self.node(n.children[0])
                return _then(_left_step(rel, s.lhs, n.children[0].seq.lhs, w, None, None), prem)
            case "forall_l" | "box_l" | "bbox_l":
                child = n.children[0]
                x, f = _added_left(n)
                produce = _left_producer(n, x, f)
                return _then(_left_step(rel, s.lhs, child.seq.lhs, w, x, produce), self.node(child))
            case "impl_l" | "cut":
                left, right = n.children
                (x, c), = left.seq.rhs
                p1 = self.node(left)
                view = ltree(rel, left.seq.lhs, x, check=False)
                major = n.principal if n.rule == "impl_l" else None
                new = major[1].right if major else c

                def produce(f: Formula, pool: Pool) -> Term:
                    if f != new:
                        raise TranslateError(f"{n.rule}: unexpected formula {show(f)}")
                    got = App(p1, build(view, pool))
                    return App(pool.leaves[major[1]], got) if major else got

                step = _left_step(rel, s.lhs, right.seq.lhs, w, x, produce)
                return _then(step, self.node(right))
            case "impl_r":
                prem = self.node(n.children[0])
                t = ltree(rel, n.children[0].seq.lhs, w, check=False)

                def body(pool):
                    return lam(a.left, lambda h: App(prem, build(t, _with_leaf(pool, a.left, h))))
                return lam(root.formula, lambda x: body(destruct(root, x)))
            case "forall_r":
                prem = self.node(n.children[0])
                return lam(root.formula, lambda x: ForallIntro(Prop(n.arg), App(prem, x)))
            case "box_r" | "bbox_r":
                prem = self.node(n.children[0])
                past = n.rule == "bbox_r"
                tag = "bbox-dia" if past else "box-bdia"
                return lam(root.formula, lambda x: box_map(prem, App(Ax(tag, A=root.formula), x), past))
            case "negneg":
                if self.system != "Kt2":
                    raise TranslateError("the double negation rule only compiles into Kt2")
                prem = self.node(n.children[0])
                return lam(root.formula, lambda x: App(Ax("dne", A=a), App(prem, x)))
        raise TranslateError(f"rule {n.rule} cannot be compiled here")


def _then(step: Term, prem: Term) -> Term:
    return lam(step.type.left, lambda x: App(prem, App(step, x)))


def _with_leaf(pool: Pool, f: Formula, t: Term) -> Pool:
    out = pool.copy()
    out.leaves.setdefault(f, t)
    return out


def _added_left(n: Node) -> tuple[str, Formula]:
    v, a = n.principal
    match n.rule:
        case "forall_l":
            return v, instantiate(a.body, n.arg)
        case _:
            return n.arg, a.body


def _left_producer(n: Node, x: str, f: Formula):
    v, a = n.principal

    def produce(g: Formula, pool: Pool) -> Term:
        if g != f:
            raise TranslateError(f"{n.rule}: unexpected formula {show(g)}")
        if n.rule == "forall_l":
            return Inst(pool.leaves[a], n.arg)
        # box_l: v is behind x (vRx), so its conjunction sits under a past diamond; bbox_l mirrors
        past = n.rule == "box_l"
        kid, d = pool.kids[v]
        proj = lam(kid.tree.formula, lambda l: destruct(kid.tree, l).leaves[a])
        boxed = dia_push(Nec(proj, past), d, past)
        return App(Ax("bdia-box" if past else "dia-bbox", A=f), boxed)

    return produce


# ---------------------------------------------------------------------------
# moving the implication to another world


def _reroot(c: _Compiler, seq: Sequent, u: str, h: Term) -> Term:
    """From ``h: L_w -> A`` (``w`` the goal world) to the intuitionistic interpretation at ``u``."""
    rel = seq.rel
    route = goal_path(seq, u)
    k = len(route) - 1

    def local(i):
        avoid = {route[j] for j in (i - 1, i + 1) if 0 <= j <= k}
        return ltree(rel, seq.lhs, route[i], avoid, check=False)

    def step(i: int, pool: Pool) -> Term:
        # proof of the consequent at route[i] given the local pool (with the carried kid)
        if i == k:
            return App(h, build(ltree(rel, seq.lhs, route[k], check=False), pool))
        here, nxt = route[i], route[i + 1]
        u_tree = ltree(rel, seq.lhs, here, {nxt}, check=False)

        def inner(kid, e):
            loc = local(i + 1)

            def go(p):
                p = p.copy()
                p.kids[here] = (kid, e)
                return step(i + 1, p)
            return with_tree(loc, go)

        _, boxed = _carry(rel, u_tree, build(u_tree, pool), here, nxt, inner)
        return boxed

    return with_tree(local(0), lambda p: step(0, p))


# ---------------------------------------------------------------------------
# public entry point


def labelled_to_hilbert(proof: Node, u: str | None = None, mode: str = "intuitionistic",
                        check: bool = True) -> HilbertProof:
    """Hilbert proof of the interpretation of the conclusion of ``proof`` at ``u``.

    ``mode`` is ``intuitionistic`` (an LIKt2 proof, IKt2 output) or ``classical``
    (an LKt2 proof, Kt2 output, single-world conclusions only).
    """
    seq = proof.seq
    if u is None:
        u = next(iter(seq.rhs))[0] if len(seq.rhs) == 1 else min(seq.labels())
    if u not in seq.labels():
        raise TranslateError(f"{u} does not occur in the conclusion")
    EIGEN.reset(*(f for n in proof.nodes() for _, f in n.seq.lhs | n.seq.rhs))
    if mode == "intuitionistic":
        if check:
            check_labelled_proof(proof, "LIKt2")
        c = _Compiler("IKt2")
        h = c.node(proof)
        want = intuitionistic_interp(u, seq)
        t = _reroot(c, seq, u, h)
        system = "IKt2"
    elif mode == "classical":
        if check:
            check_labelled_proof(proof, "LKt2")
        if seq.rel or len(seq.labels()) != 1:
            raise TranslateError("classical compilation needs a conclusion with a single world and no relational atoms")
        nn = classical_to_negneg(proof, u, check=check)
        c = _Compiler("Kt2")
        h = c.node(nn)
        want = classical_interp(u, seq)
        t = _classical_wrap(seq, u, h)
        system = "Kt2"
    else:
        raise ValueError(f"unknown mode {mode!r}")
    if t.type != want:
        raise TranslateError(f"compiled {show(t.type)}, expected {show(want)}")
    out = c.b.proof(c.b.prove(t))
    if check:
        check_proof(out, system)
    return out


def _classical_wrap(seq: Sequent, u: str, h: Term) -> Term:
    """From ``L(Gamma, not Delta) -> bot`` to ``L(Gamma) -> Delta`` read as a disjunction."""
    gamma = ltree(seq.rel, seq.lhs, u, check=False)
    full = ltree(seq.rel, seq.lhs | negate(seq.rhs), u, check=False)
    deltas = sorted((a for _, a in seq.rhs), key=show)
    d = big_disj(deltas)

    def injections():
        # proof of B -> D for each disjunct B of the right-nested disjunction D
        out = []
        for i, b in enumerate(deltas):
            def inj(x, i=i):
                t = x
                if i < len(deltas) - 1:
                    t = inl(t, big_disj(deltas[i + 1:]))
                for j in range(i - 1, -1, -1):
                    t = inr(deltas[j], t)
                return t
            out.append((b, inj))
        return out

    def body(pool: Pool) -> Term:
        if not deltas:
            return App(h, build(full, pool))

        def refute(k: Term) -> Term:
            p = pool.copy()
            for b, inj in injections():
                p.leaves.setdefault(neg(b), lam(b, lambda y, inj=inj: App(k, inj(y))))
            return App(h, build(full, p))
        return App(Ax("dne", A=d), lam(neg(d), refute))

    return with_tree(gamma, body)


__all__ = ["labelled_to_hilbert", "TranslateError"]
