"""Bundled fixtures and the regression suites run over them.

The data directory holds labelled proofs (``labelled/*.lpf``, first line
``# calculus NAME``), Hilbert proofs (``hilbert/axiomatic/*.hpf`` for the
lemma bank, ``hilbert/kt2/*.hpf`` for classical proofs) and finite models
(``models/*.model``). The Hilbert files are generated by ``build_axiomatic``
and ``build_kt2``; the test suite checks that they are up to date.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .hilbert.ipl import box_map, dni, efq, inl, inr
from .hilbert.lemmas import BANK, derive_lemma, lemma_statement, default_params
from .hilbert.negative import lift_kt2_proof
from .hilbert.proof import HilbertProof, accepts as hilbert_accepts, check_proof, loads as load_hilbert
from .hilbert.terms import EIGEN, App, Ax, Builder, Nec, gen, lam
from .labelled.proof import Node, accepts as labelled_accepts, loads as load_labelled
from .syntax import Formula, Imp, disj, neg, negative_translate, parse, show

SUITES = ("axiomatic", "labelled", "search", "translate", "semantics", "negneg")

# the calculus a labelled fixture must be rejected by, when one is stricter
STRICTER = {"LKt2": "LIKt2", "LIKt2": None, "MLIKt2": "LIKt2"}


def data_dir() -> Path:
    return Path(str(resources.files("sotl") / "data"))


def file_stem(lemma: str) -> str:
    return lemma.replace("-", "_")


# ---------------------------------------------------------------------------
# loading


@dataclass(frozen=True)
class LabelledFixture:
    name: str
    calculus: str
    proof: Node


def load_labelled_fixture(path) -> LabelledFixture:
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    calc = None
    for line in text.splitlines():
        if line.startswith("# calculus"):
            calc = line.split()[-1]
            break
    if calc is None:
        raise ValueError(f"{path.name}: missing '# calculus' line")
    return LabelledFixture(path.stem, calc, load_labelled(text))


def labelled_fixtures(root=None) -> list[LabelledFixture]:
    root = Path(root) if root else data_dir() / "labelled"
    return [load_labelled_fixture(p) for p in sorted(root.glob("*.lpf"))]


def hilbert_fixtures(kind: str, root=None) -> dict[str, HilbertProof]:
    root = Path(root) if root else data_dir() / "hilbert" / kind
    native = kind == "axiomatic"
    return {p.stem: load_hilbert(p.read_text(encoding="utf-8"), native_diamonds=native)
            for p in sorted(root.glob("*.hpf"))}


def model_fixtures(root=None) -> dict:
    from .semantics import load_model
    root = Path(root) if root else data_dir() / "models"
    return {p.stem: load_model(p) for p in sorted(root.glob("*.model"))}


# ---------------------------------------------------------------------------
# generated Hilbert fixtures


def build_axiomatic() -> dict[str, HilbertProof]:
    """A proof of every bank lemma at its default parameters."""
    return {file_stem(name): derive_lemma(name) for name in BANK}


def _dne(a: Formula):
    return Ax("dne", A=a)


def _classical_terms() -> dict[str, object]:
    p, q = parse("P"), parse("Q")
    out = {}
    # ((P -> Q) -> P) -> P
    h_t = Imp(Imp(p, q), p)
    out["peirce"] = lam(h_t, lambda h: App(_dne(p), lam(neg(p), lambda k: App(k, App(h, lam(
        p, lambda x: efq(App(k, x), q)))))))
    # P or not P
    em = disj(p, neg(p))
    out["excluded_middle"] = App(_dne(em), lam(neg(em), lambda k: App(k, inr(p, lam(
        p, lambda x: App(k, inl(x, neg(p))))))))
    # box not not P -> box P
    out["box_dne"] = lam(parse("box not not P"), lambda h: box_map(_dne(p), h))
    out["bbox_dne"] = lam(parse("bbox not not P"), lambda h: box_map(_dne(p), h, True))
    # (not Q -> not P) -> P -> Q
    out["contrapose"] = lam(Imp(neg(q), neg(p)), lambda h: lam(p, lambda x: App(_dne(q), lam(
        neg(q), lambda k: App(App(h, k), x)))))
    # (not P -> Q) -> (Q -> P) -> P
    out["case_split"] = lam(Imp(neg(p), q), lambda h: lam(Imp(q, p), lambda g: App(_dne(p), lam(
        neg(p), lambda k: App(k, App(g, App(h, k)))))))
    # forall X (not not X -> X)
    out["forall_dne"] = gen(lambda x: _dne(x))
    # (not not P -> not not Q) -> P -> Q
    out["dn_shift"] = lam(Imp(neg(neg(p)), neg(neg(q))), lambda h: lam(p, lambda x: App(_dne(q), App(h, dni(x)))))
    out["box_excluded_middle"] = Nec(out["excluded_middle"])
    return out


KT2_DNE_INSTANCES = ("P", "box P", "bbox P", "forall X X", "P -> Q", "forall X (X -> P)")
KT2_LEMMAS = ("box-dist-forall", "barcan-box", "barcan-bbox", "i-dia-box", "neg-box")


def build_kt2() -> dict[str, HilbertProof]:
    """Twenty Kt2 proofs: DNE instances, classical tautologies and a few intuitionistic lemmas."""
    out = {}
    for k, text in enumerate(KT2_DNE_INSTANCES):
        b = Builder()
        out[f"dne_{k}"] = b.proof(b.prove(_dne(parse(text))))
    EIGEN.reset()
    for name, t in _classical_terms().items():
        b = Builder()
        out[name] = b.proof(b.prove(t))
    for name in KT2_LEMMAS:
        out[file_stem(name)] = derive_lemma(name)
    for name, pr in out.items():
        check_proof(pr, "Kt2")
    return out


def write_hilbert_fixtures(root=None) -> None:
    root = Path(root) if root else data_dir() / "hilbert"
    for kind, proofs in (("axiomatic", build_axiomatic()), ("kt2", build_kt2())):
        (root / kind).mkdir(parents=True, exist_ok=True)
        for name, pr in proofs.items():
            (root / kind / f"{name}.hpf").write_text(pr.dumps(), encoding="utf-8")


# ---------------------------------------------------------------------------
# suites


@dataclass(frozen=True)
class Row:
    name: str
    ok: bool
    detail: str = ""

    def __str__(self) -> str:
        return f"{'pass' if self.ok else 'FAIL'}\t{self.name}\t{self.detail}".rstrip()


class SuiteError(ValueError):
    pass


def _need(items, what: str):
    if not items:
        raise SuiteError(f"unknown suite content: no {what} found")
    return items


def _axiomatic(root) -> list[Row]:
    rows = []
    proofs = _need(hilbert_fixtures("axiomatic", root), "Hilbert proofs")
    for stem, pr in proofs.items():
        name = stem.replace("_", "-")
        lem = BANK.get(name) or BANK.get(name.replace("botn", "botN"))
        if lem is None:
            rows.append(Row(stem, False, "no such lemma"))
            continue
        want = lemma_statement(lem.name, default_params(lem.name))
        ok = pr.conclusion == want and hilbert_accepts(pr, lem.system)
        rows.append(Row(stem, ok, lem.system))
    return rows


def _labelled(root) -> list[Row]:
    rows = []
    for fx in _need(labelled_fixtures(root), "labelled proofs"):
        ok = labelled_accepts(fx.proof, fx.calculus)
        detail = f"accepted by {fx.calculus}" if ok else f"rejected by {fx.calculus}"
        strict = STRICTER.get(fx.calculus)
        if strict is not None:
            rejected = not labelled_accepts(fx.proof, strict)
            ok = ok and rejected
            detail += f", {'rejected' if rejected else 'accepted'} by {strict}"
        rows.append(Row(fx.name, ok, detail))
    return rows


def connectivity_instances(seed: int = 0, count: int = 50, max_rel: int = 6):
    """Random ``(rel, lhs, v, w, a)`` with ``rel`` a polytree on at most ``max_rel`` edges."""
    rng = random.Random(seed)
    lefts = [parse(t) for t in ("P", "box Q", "bbox P -> Q", "forall X (X -> P)")]
    goals = [parse(t) for t in ("P", "Q -> P", "box bbox Q", "forall X X", "P -> box Q")]
    out = []
    for _ in range(count):
        n = rng.randint(1, max_rel + 1)
        worlds = [f"u{i}" for i in range(n)]
        rel = set()
        for i in range(1, n):
            j = rng.randrange(i)
            rel.add((worlds[i], worlds[j]) if rng.random() < 0.5 else (worlds[j], worlds[i]))
        lhs = {(rng.choice(worlds), rng.choice(lefts)) for _ in range(rng.randint(0, 2))}
        out.append((frozenset(rel), frozenset(lhs), rng.choice(worlds), rng.choice(worlds), rng.choice(goals)))
    return out


def _connectivity(seed: int) -> Row:
    from .labelled.transforms import bottom_derivation
    from .syntax import BOT
    bad = 0
    cases = connectivity_instances(seed)
    for rel, lhs, v, w, a in cases:
        p = bottom_derivation(rel, lhs, v, w, a)
        want = (rel, lhs | {(v, BOT)}, frozenset({(w, a)}))
        if (p.seq.rel, p.seq.lhs, p.seq.rhs) != want or not labelled_accepts(p, "LIKt2", cut=False):
            bad += 1
    return Row(f"connectivity seed={seed}", bad == 0, f"{len(cases) - bad}/{len(cases)} bottom derivations accepted")


def _search(root) -> list[Row]:
    from .search import Proved, SearchConfig, prove_classical, prove_intuitionistic
    rows = []
    for fx in _need(labelled_fixtures(root), "labelled proofs"):
        if fx.calculus == "LKt2":
            r = prove_classical(fx.proof.seq, SearchConfig(fuel=400))
            calc = "LKt2"
        else:
            r = prove_intuitionistic(fx.proof.seq, SearchConfig(fuel=200))
            calc = "MLIKt2"
        ok = isinstance(r, Proved) and labelled_accepts(r.proof, calc, cut=False)
        rows.append(Row(fx.name, ok, f"{type(r).__name__} with {r.fuel_used} fuel"))
    return rows


def _translate(root) -> list[Row]:
    from .translate import labelled_to_hilbert
    rows = []
    for fx in _need(labelled_fixtures(root), "labelled proofs"):
        s = fx.proof.seq
        if fx.calculus == "LKt2":
            if s.rel or len(s.labels()) != 1:
                rows.append(Row(fx.name, True, "skipped: classical compilation needs one world"))
                continue
            mode, system = "classical", "Kt2"
        else:
            mode, system = "intuitionistic", "IKt2"
        root_label = min(s.labels())
        try:
            h = labelled_to_hilbert(fx.proof, root_label, mode)
        except Exception as e:       # any failure is a failed row
            rows.append(Row(fx.name, False, f"{type(e).__name__}: {e}"))
            continue
        ok = hilbert_accepts(h, system)
        goal = goal_formula(s)
        if goal is not None:
            ok = ok and h.conclusion == goal
        rows.append(Row(fx.name, ok, f"{system}, {len(h)} lines"))
    return rows


def goal_formula(seq) -> Formula | None:
    """The formula a relation-free sequent with one formula on each side (or none on the left) states."""
    if seq.rel or len(seq.labels()) != 1 or len(seq.rhs) != 1 or len(seq.lhs) > 1:
        return None
    (_, a), = seq.rhs
    if not seq.lhs:
        return a
    (_, g), = seq.lhs
    return Imp(g, a)


def _semantics(root) -> list[Row]:
    from .semantics import Evaluator, closure_comprehensive, validate_model
    models = _need(model_fixtures(root), "models")
    stmts = [lemma_statement(n, default_params(n)) for n in BANK]
    rows = []
    for name, m in models.items():
        rep = validate_model(m)
        if not rep.ok:
            rows.append(Row(name, False, "; ".join(map(str, rep.violations))))
            continue
        comp = closure_comprehensive(m, stmts)
        ev = Evaluator(m)
        false = [n for n, f in zip(BANK, stmts) if not ev.valid(f)]
        ok = comp.ok and not false
        detail = f"{comp.checked} extensions, {len(comp.missing)} missing"
        if false:
            detail += ", fails " + " ".join(false)
        rows.append(Row(name, ok, detail))
    return rows


def _negneg(root) -> list[Row]:
    from .semantics import Evaluator, RelationalModel
    proofs = _need(hilbert_fixtures("kt2", root), "Kt2 proofs")
    models = [m for m in model_fixtures().values() if not isinstance(m, RelationalModel)]
    rows = []
    for name, pr in proofs.items():
        try:
            lifted = lift_kt2_proof(pr)
        except Exception as e:
            rows.append(Row(name, False, f"{type(e).__name__}: {e}"))
            continue
        want = negative_translate(pr.conclusion)
        ok = lifted.conclusion == want and hilbert_accepts(lifted, "IKt2")
        true_everywhere = all(Evaluator(m).valid(want) for m in models)
        rows.append(Row(name, ok and true_everywhere, f"{len(lifted)} lines, {show(want)[:60]}"))
    return rows


_RUNNERS = {"axiomatic": _axiomatic, "labelled": _labelled, "search": _search, "translate": _translate,
            "semantics": _semantics, "negneg": _negneg}


def run_suite(name: str, root=None, seed: int = 0) -> list[Row]:
    """Rows of one regression suite; ``root`` overrides the bundled fixture directory."""
    if name not in _RUNNERS:
        raise SuiteError(f"unknown suite {name!r}; expected one of {', '.join(SUITES)}")
    if name == "labelled":
        return _labelled(root) + [_connectivity(seed)]
    return _RUNNERS[name](root)
