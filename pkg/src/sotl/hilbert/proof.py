"""Hilbert-style proof objects, their checker and their text format.

A proof is a list of lines; each line carries its formula and a justification
that refers to earlier lines by index, so a line can be used many times.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from ..syntax import BBox, Box, Forall, Formula, Imp, ParseError, Prop, has_native_diamond, instantiate, parse, props, show
from .axioms import SCHEMAS, AxiomMismatch, admits, instance


@dataclass(frozen=True)
class Axiom:
    tag: str
    bindings: dict = field(hash=False)


@dataclass(frozen=True)
class MP:
    major: int   # A -> B
    minor: int   # A


@dataclass(frozen=True)
class Gen:
    premiss: int
    eigen: str   # propositional symbol replaced by the bound variable


@dataclass(frozen=True)
class NecBox:
    premiss: int


@dataclass(frozen=True)
class NecBBox:
    premiss: int


Justification = Axiom | MP | Gen | NecBox | NecBBox


@dataclass(frozen=True)
class Line:
    formula: Formula
    just: Justification


@dataclass
class HilbertProof:
    lines: list[Line]

    @property
    def conclusion(self) -> Formula:
        return self.lines[-1].formula

    def __len__(self) -> int:
        return len(self.lines)

    def dumps(self) -> str:
        return dumps(self)


class ProofError(ValueError):
    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


def check_line(lines: list[Line], i: int, system: str) -> None:
    ln = lines[i]
    f = ln.formula
    native = system == "IKt2Dia"
    if not native and has_native_diamond(f):
        raise ProofError(i, f"{system} has no primitive diamonds")

    def earlier(j: int) -> Formula:
        if not 0 <= j < i:
            raise ProofError(i, f"reference {j} is not an earlier line")
        return lines[j].formula

    match ln.just:
        case Axiom(tag, b):
            if not admits(system, tag):
                raise ProofError(i, f"{tag} is not an axiom of {system}")
            try:
                inst = instance(tag, b, native)
            except (AxiomMismatch, KeyError, TypeError, AttributeError) as e:
                raise ProofError(i, f"bad bindings for {tag}: {e}") from None
            if inst != f:
                raise ProofError(i, f"formula is not the {tag} instance {show(inst)}")
        case MP(major, minor):
            imp, arg = earlier(major), earlier(minor)
            if not (isinstance(imp, Imp) and imp.left == arg and imp.right == f):
                raise ProofError(i, f"modus ponens does not apply to lines {major}, {minor}")
        case Gen(j, eigen):
            prem = earlier(j)
            if not isinstance(f, Forall):
                raise ProofError(i, "generalisation must conclude a universal formula")
            if eigen in props(f):
                raise ProofError(i, f"eigen symbol {eigen} occurs in the conclusion")
            if instantiate(f.body, Prop(eigen)) != prem:
                raise ProofError(i, f"premiss is not the instance at {eigen}")
        case NecBox(j):
            if f != Box(earlier(j)):
                raise ProofError(i, "necessitation mismatch")
        case NecBBox(j):
            if f != BBox(earlier(j)):
                raise ProofError(i, "necessitation mismatch")
        case _:
            raise ProofError(i, f"unknown justification {ln.just!r}")


def check_proof(proof: HilbertProof, system: str) -> None:
    """Raise ``ProofError`` at the first line that is not justified in ``system``."""
    if not proof.lines:
        raise ProofError(0, "empty proof")
    for i in range(len(proof.lines)):
        check_line(proof.lines, i, system)


def accepts(proof: HilbertProof, system: str) -> bool:
    try:
        check_proof(proof, system)
    except ProofError:
        return False
    return True


def prune(lines: list[Line], target: int) -> HilbertProof:
    """Keep the lines ``target`` depends on, renumbered, with ``target`` last."""
    need = set()
    stack = [target]
    while stack:
        i = stack.pop()
        if i in need:
            continue
        need.add(i)
        stack.extend(_refs(lines[i].just))
    order = sorted(need)
    new = {old: k for k, old in enumerate(order)}
    out = [Line(lines[i].formula, _renumber(lines[i].just, new)) for i in order]
    return HilbertProof(out)


def _refs(j: Justification) -> list[int]:
    match j:
        case MP(a, b):
            return [a, b]
        case Gen(p, _) | NecBox(p) | NecBBox(p):
            return [p]
    return []


def _renumber(j: Justification, new: dict[int, int]) -> Justification:
    match j:
        case MP(a, b):
            return MP(new[a], new[b])
        case Gen(p, e):
            return Gen(new[p], e)
        case NecBox(p):
            return NecBox(new[p])
        case NecBBox(p):
            return NecBBox(new[p])
    return j


# ---------------------------------------------------------------------------
# text format: one line per proof line, tab separated
#   index  formula  RULE  operands
# Axiom operands are "key=value" pairs separated by ";".


def dumps(proof: HilbertProof) -> str:
    out = ["# hilbert proof"]
    for i, ln in enumerate(proof.lines):
        out.append(f"{i}\t{show(ln.formula)}\t{_just_text(ln.just)}")
    return "\n".join(out) + "\n"


def _just_text(j: Justification) -> str:
    match j:
        case Axiom(tag, b):
            ops = "; ".join(f"{k}={v if isinstance(v, str) else show(v)}"
                            for k, v in sorted(b.items()))
            return f"AX {tag}\t{ops}"
        case MP(a, b):
            return f"MP\t{a} {b}"
        case Gen(p, e):
            return f"GEN\t{p} {e}"
        case NecBox(p):
            return f"NEC_BOX\t{p}"
        case NecBBox(p):
            return f"NEC_BBOX\t{p}"
    raise ValueError(j)


def loads(text: str, native_diamonds: bool = False) -> HilbertProof:
    lines = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        if not raw.strip() or raw.lstrip().startswith("#"):
            continue
        try:
            lines.append(_load_line(raw, len(lines), native_diamonds))
        except (ValueError, IndexError) as e:
            raise ParseError(f"line {lineno}: {e}") from e
    if not lines:
        raise ParseError("empty proof file")
    return HilbertProof(lines)


def _load_line(raw: str, expect: int, native: bool) -> Line:
    cols = raw.split("\t")
    if len(cols) < 3:
        raise ValueError(f"malformed proof line: {raw!r}")
    idx, ftext, rule = cols[0], cols[1], cols[2]
    ops = cols[3] if len(cols) > 3 else ""
    if int(idx) != expect:
        raise ValueError(f"line index {idx} out of sequence")
    return Line(parse(ftext, native), _parse_just(rule, ops, native))


def _parse_just(rule: str, ops: str, native: bool) -> Justification:
    parts = rule.split()
    if parts[0] == "AX":
        tag = parts[1]
        if tag not in SCHEMAS:
            raise ValueError(f"unknown schema {tag!r}")
        b: dict = {}
        for item in filter(None, (s.strip() for s in ops.split(";"))):
            k, _, v = item.partition("=")
            k = k.strip()
            b[k] = v.strip() if k == "X" else parse(v, native)
        return Axiom(tag, b)
    nums = ops.split()
    match parts[0]:
        case "MP":
            return MP(int(nums[0]), int(nums[1]))
        case "GEN":
            return Gen(int(nums[0]), nums[1])
        case "NEC_BOX":
            return NecBox(int(nums[0]))
        case "NEC_BBOX":
            return NecBBox(int(nums[0]))
    raise ValueError(f"unknown rule {rule!r}")
