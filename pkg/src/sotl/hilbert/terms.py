"""Typed proof terms compiled to Hilbert proofs.

Reasoning that is routine in intuitionistic logic is written as a lambda term
(hypotheses, application, abstraction, instantiation and introduction of
second-order quantifiers, necessitation). ``Builder.prove`` turns a closed term
into proof lines by bracket abstraction over the K and S axioms, using derived
B, C and I combinators to keep the output small.
"""
from __future__ import annotations

import itertools

from ..syntax import (BBox, Box, Forall, Formula, Imp, Prop, Var, abstract, free_vars, instantiate, props,
                      show)
from .axioms import instance
from .proof import MP, Axiom, Gen, HilbertProof, Line, NecBBox, NecBox, prune


class TermError(TypeError):
    pass


class Term:
    __slots__ = ("type", "hyps")
    type: Formula
    hyps: frozenset  # free hypotheses


class Hyp(Term):
    __slots__ = ("name",)
    _ids = itertools.count()

    def __init__(self, formula: Formula, name: str | None = None):
        self.type = formula
        self.name = name or f"h{next(Hyp._ids)}"
        self.hyps = frozenset([self])

    def __repr__(self):
        return f"{self.name}:{show(self.type)}"


class Ax(Term):
    __slots__ = ("tag", "bindings")

    def __init__(self, tag: str, native: bool = False, **bindings):
        self.tag = tag
        self.bindings = bindings
        self.type = instance(tag, bindings, native)
        self.hyps = frozenset()


class Const(Term):
    """A formula already proved by a line of some builder (or a finished proof)."""
    __slots__ = ("line", "proof")

    def __init__(self, formula: Formula, line: int | None = None, proof: HilbertProof | None = None):
        self.type = formula
        self.line = line
        self.proof = proof
        self.hyps = frozenset()


class App(Term):
    __slots__ = ("fn", "arg")

    def __init__(self, fn: Term, arg: Term):
        ft = fn.type
        if not isinstance(ft, Imp):
            raise TermError(f"applying a proof of {show(ft)}, which is not an implication")
        if ft.left != arg.type:
            raise TermError(f"argument mismatch: expected {show(ft.left)}, got {show(arg.type)}")
        self.fn, self.arg = fn, arg
        self.type = ft.right
        self.hyps = fn.hyps | arg.hyps


class Lam(Term):
    __slots__ = ("var", "body")

    def __init__(self, var: Hyp, body: Term):
        self.var, self.body = var, body
        self.type = Imp(var.type, body.type)
        self.hyps = body.hyps - {var}


class Inst(Term):
    """Instantiate a universal proof at a closed witness."""
    __slots__ = ("of", "witness")

    def __init__(self, of: Term, witness: Formula):
        if not isinstance(of.type, Forall):
            raise TermError(f"instantiating {show(of.type)}, which is not universal")
        if witness.depth:
            raise TermError("witness must be closed")
        self.of, self.witness = of, witness
        self.type = instantiate(of.type.body, witness)
        self.hyps = of.hyps


class ForallIntro(Term):
    """Universal introduction: abstract the eigen symbol of ``body``."""
    __slots__ = ("eigen", "body")

    def __init__(self, eigen: Prop, body: Term):
        for h in body.hyps:
            if eigen.name in props(h.type):
                raise TermError(f"eigen symbol {eigen.name} occurs in hypothesis {show(h.type)}")
        self.eigen, self.body = eigen, body
        self.type = Forall(abstract(body.type, eigen))
        self.hyps = body.hyps


class Nec(Term):
    __slots__ = ("body", "past")

    def __init__(self, body: Term, past: bool = False):
        if body.hyps:
            raise TermError("necessitation needs a closed proof")
        self.body, self.past = body, past
        self.type = BBox(body.type) if past else Box(body.type)
        self.hyps = frozenset()


# ---------------------------------------------------------------------------
# convenience constructors


def lam(formula: Formula, fn) -> Lam:
    h = Hyp(formula)
    return Lam(h, fn(h))


def lams(formulas: list[Formula], fn) -> Term:
    hs = [Hyp(f) for f in formulas]
    t = fn(*hs)
    for h in reversed(hs):
        t = Lam(h, t)
    return t


def app(fn: Term, *args: Term) -> Term:
    for a in args:
        fn = App(fn, a)
    return fn


class _Eigen:
    """Deterministic supply of eigen symbols, restarted per top-level derivation."""

    def __init__(self):
        self.k = 0
        self.avoid: set[str] = set()

    def reset(self, *formulas: Formula) -> None:
        self.k = 0
        self.avoid = set().union(*(props(f) for f in formulas)) if formulas else set()

    def fresh(self, *formulas: Formula) -> Prop:
        avoid = self.avoid.union(*(props(f) for f in formulas)) if formulas else self.avoid
        while f"E{self.k}" in avoid:
            self.k += 1
        p = Prop(f"E{self.k}")
        self.k += 1
        return p


EIGEN = _Eigen()


def gen(fn, *context: Formula) -> ForallIntro:
    """``ForallIntro`` over a fresh eigen symbol ``p``; ``fn(p)`` builds the body."""
    p = EIGEN.fresh(*context)
    return ForallIntro(p, fn(p))


# ---------------------------------------------------------------------------
# compilation


class _C:
    """Combinatory term: a proved line, a hypothesis, or an application."""
    __slots__ = ("line", "hyp", "fn", "arg", "type", "hyps")

    def __init__(self, type_, line=None, hyp=None, fn=None, arg=None):
        self.type = type_
        self.line, self.hyp, self.fn, self.arg = line, hyp, fn, arg
        if hyp is not None:
            self.hyps = frozenset([hyp])
        elif fn is not None:
            self.hyps = fn.hyps | arg.hyps
        else:
            self.hyps = frozenset()


def _capp(f: _C, a: _C) -> _C:
    return _C(f.type.right, fn=f, arg=a)


class Builder:
    """Accumulates proof lines, sharing every formula proved once."""

    def __init__(self):
        self.lines: list[Line] = []
        self.index: dict[Formula, int] = {}
        self._comb: dict[tuple, int] = {}

    # primitive steps ------------------------------------------------------

    def _add(self, f: Formula, just) -> int:
        i = self.index.get(f)
        if i is not None:
            return i
        self.lines.append(Line(f, just))
        i = len(self.lines) - 1
        self.index[f] = i
        return i

    def axiom(self, tag: str, **b) -> int:
        return self._add(instance(tag, b), Axiom(tag, b))

    def mp(self, major: int, minor: int) -> int:
        imp = self.lines[major].formula
        if not (isinstance(imp, Imp) and imp.left == self.lines[minor].formula):
            raise TermError("modus ponens mismatch")
        return self._add(imp.right, MP(major, minor))

    def gen(self, premiss: int, eigen: Prop) -> int:
        f = Forall(abstract(self.lines[premiss].formula, eigen))
        return self._add(f, Gen(premiss, eigen.name))

    def nec(self, premiss: int, past: bool = False) -> int:
        f = self.lines[premiss].formula
        return self._add(BBox(f) if past else Box(f), NecBBox(premiss) if past else NecBox(premiss))

    def include(self, proof: HilbertProof) -> int:
        """Copy a finished proof in; returns the line of its conclusion."""
        i = self.index.get(proof.conclusion)
        if i is not None:
            return i
        new: dict[int, int] = {}
        for k, ln in enumerate(proof.lines):
            j = ln.just
            match j:
                case MP(a, b):
                    new[k] = self.mp(new[a], new[b])
                case Gen(p, e):
                    new[k] = self._add(ln.formula, Gen(new[p], e))
                case NecBox(p):
                    new[k] = self._add(ln.formula, NecBox(new[p]))
                case NecBBox(p):
                    new[k] = self._add(ln.formula, NecBBox(new[p]))
                case _:
                    new[k] = self._add(ln.formula, j)
        return new[len(proof.lines) - 1]

    # combinators ----------------------------------------------------------

    def _k(self, a: Formula, b: Formula) -> _C:
        f = Imp(a, Imp(b, a))
        return _C(f, line=self._add(f, Axiom("K", {"A": a, "B": b})))

    def _s(self, a, b, c) -> _C:
        b_ = {"A": a, "B": b, "C": c}
        f = instance("S", b_)
        return _C(f, line=self._add(f, Axiom("S", b_)))

    def _i(self, a: Formula) -> _C:
        key = ("I", a)
        if key not in self._comb:
            aa = Imp(a, a)
            s = self.axiom("S", A=a, B=aa, C=a)
            k1 = self.axiom("K", A=a, B=aa)
            k2 = self.axiom("K", A=a, B=a)
            self._comb[key] = self.mp(self.mp(s, k1), k2)
        return _C(Imp(a, a), line=self._comb[key])

    def _b(self, a, b, c) -> _C:
        # (b -> c) -> (a -> b) -> a -> c
        key = ("B", a, b, c)
        if key not in self._comb:
            bc = Imp(b, c)
            s1 = self.axiom("S", A=a, B=b, C=c)
            s1f = self.lines[s1].formula
            ks = self.mp(self.axiom("K", A=s1f, B=bc), s1)
            k1 = self.axiom("K", A=bc, B=a)
            s2 = self.axiom("S", A=bc, B=Imp(a, bc), C=s1f.right)
            self._comb[key] = self.mp(self.mp(s2, ks), k1)
        return _C(Imp(Imp(b, c), Imp(Imp(a, b), Imp(a, c))), line=self._comb[key])

    def _cc(self, a, b, c) -> _C:
        # (a -> b -> c) -> b -> a -> c
        key = ("C", a, b, c)
        if key not in self._comb:
            t = lams([Imp(a, Imp(b, c)), b, a], lambda f, y, x: app(f, x, y))
            self._comb[key] = self._emit(self._translate(t, plain=True))
        return _C(Imp(Imp(a, Imp(b, c)), Imp(b, Imp(a, c))), line=self._comb[key])

    def _abs(self, h: Hyp, c: _C, plain: bool = False) -> _C:
        a = h.type
        if h not in c.hyps:
            return _capp(self._k(c.type, a), c)
        if c.hyp is h:
            return self._i(a)
        f, x = c.fn, c.arg
        if x.hyp is h and h not in f.hyps:
            return f
        tx, t = x.type, c.type
        if not plain and h not in f.hyps:
            return _capp(_capp(self._b(a, tx, t), f), self._abs(h, x))
        if not plain and h not in x.hyps:
            return _capp(_capp(self._cc(a, tx, t), self._abs(h, f)), x)
        return _capp(_capp(self._s(a, tx, t), self._abs(h, f, plain)), self._abs(h, x, plain))

    def _translate(self, t: Term, plain: bool = False) -> _C:
        match t:
            case Hyp():
                return _C(t.type, hyp=t)
            case Ax():
                return _C(t.type, line=self._add(t.type, Axiom(t.tag, dict(t.bindings))))
            case Const():
                if t.line is not None:
                    return _C(t.type, line=t.line)
                return _C(t.type, line=self.include(t.proof))
            case App():
                return _capp(self._translate(t.fn, plain), self._translate(t.arg, plain))
            case Lam():
                return self._abs(t.var, self._translate(t.body, plain), plain)
            case Inst():
                q = t.of.type
                x = _fresh_var_name(q, t.witness)
                b = {"X": x, "A": instantiate(q.body, Var(x)), "C": t.witness}
                comp = _C(Imp(q, t.type), line=self._add(Imp(q, t.type), Axiom("comp", b)))
                return _capp(comp, self._translate(t.of, plain))
            case ForallIntro():
                return self._gen(t)
            case Nec():
                line = self._emit(self._translate(t.body))
                return _C(t.type, line=self.nec(line, t.past))
        raise TermError(f"cannot compile {t!r}")

    def _gen(self, t: ForallIntro) -> _C:
        c = self._translate(t.body)
        hyps = sorted(c.hyps, key=lambda h: h.name)
        closed = c
        for h in reversed(hyps):
            closed = self._abs(h, closed)
        g = _C(Forall(abstract(closed.type, t.eigen)), line=self.gen(self._emit(closed), t.eigen))
        for h in hyps:
            # forall X (H -> R)  ~>  H -> forall X R, using fun-all and V
            q = g.type
            dist = self._distribute(q)
            g = _capp(_capp(dist, g), _C(h.type, hyp=h))
        return g

    def _distribute(self, q: Forall) -> _C:
        key = ("dist", q)
        if key not in self._comb:
            h_ty = q.body.left
            from ..syntax import lower
            h_closed = lower(h_ty)
            r_body = q.body.right
            x = _fresh_var_name(q)
            a_named = Var(x)
            fa = Ax("fun-all", X=x, A=h_closed, B=instantiate(r_body, a_named))
            v = Ax("V", X=x, A=h_closed)
            t = lams([q, h_closed], lambda f, h: app(fa, f, App(v, h)))
            self._comb[key] = self._emit(self._translate(t))
        line = self._comb[key]
        return _C(self.lines[line].formula, line=line)

    def _emit(self, c: _C) -> int:
        if c.hyps:
            raise TermError("open term left after compilation")
        if c.line is not None:
            return c.line
        return self.mp(self._emit(c.fn), self._emit(c.arg))

    # public ---------------------------------------------------------------

    def prove(self, t: Term) -> int:
        if t.hyps:
            raise TermError(f"term has open hypotheses: {sorted(h.name for h in t.hyps)}")
        return self._emit(self._translate(t))

    def proof(self, line: int) -> HilbertProof:
        return prune(self.lines, line)


def _fresh_var_name(*fs: Formula) -> str:
    used = set().union(*(free_vars(f) for f in fs))
    k = 0
    while (n := "X" if k == 0 else f"X{k}") in used:
        k += 1
    return n


def compile_term(t: Term) -> HilbertProof:
    b = Builder()
    return b.proof(b.prove(t))


def const(proof: HilbertProof) -> Const:
    return Const(proof.conclusion, proof=proof)
