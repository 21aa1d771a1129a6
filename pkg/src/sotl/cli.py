"""Command-line interface.

Exit status 0 means accepted, proved or true; 1 means rejected, exhausted or
false; 2 means the input could not be read or parsed. With ``--format
structured`` every command prints one JSON object whose text fields use the
same file formats as the plain output.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .syntax import ParseError, parse, show

CALC = {"lkt2": "LKt2", "likt2": "LIKt2", "mlikt2": "MLIKt2"}
SYSTEM = {"ikt2": "IKt2", "ikt2dia": "IKt2Dia", "kt2": "Kt2"}


class InputError(Exception):
    pass


def _text(arg: str) -> str:
    """An argument naming an existing file stands for its contents."""
    p = Path(arg)
    if len(arg) < 256 and "\n" not in arg and p.is_file():
        return p.read_text(encoding="utf-8")
    return arg


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"{path}: {e.strerror}") from e


def _sequent(text: str):
    from .labelled.sequent import parse_sequent
    return parse_sequent(_text(text).strip())


def _labelled(path: str):
    from .labelled.proof import loads
    return loads(_read(path))


# ---------------------------------------------------------------------------
# commands; each returns (status, plain text, structured payload)


def cmd_parse(a):
    if a.sequent:
        from .labelled.sequent import show_sequent
        s = _sequent(a.text)
        out = show_sequent(s, a.sugar)
        return 0, out, {"sequent": out}
    f = parse(_text(a.text), native_diamonds=a.native)
    out = show(f, a.sugar)
    return 0, out, {"formula": out, "size": f.size}


def cmd_check_hilbert(a):
    from .hilbert.proof import ProofError, check_proof, loads
    system = SYSTEM[a.sys]
    proof = loads(_read(a.file), native_diamonds=system == "IKt2Dia")
    try:
        check_proof(proof, system)
    except ProofError as e:
        return 1, f"rejected by {system}: {e}", {"accepted": False, "system": system, "error": str(e)}
    return 0, f"accepted by {system}: {show(proof.conclusion)}", {
        "accepted": True, "system": system, "conclusion": show(proof.conclusion), "lines": len(proof)}


def cmd_check_labelled(a):
    from .labelled.proof import LabelledProofError, check_labelled_proof
    from .labelled.sequent import show_sequent
    calc = CALC[a.calc]
    proof = _labelled(a.file)
    try:
        check_labelled_proof(proof, calc, cut=a.cut)
    except LabelledProofError as e:
        return 1, f"rejected by {calc}: {e}", {"accepted": False, "calculus": calc, "error": str(e)}
    concl = show_sequent(proof.seq)
    return 0, f"accepted by {calc}: {concl}", {"accepted": True, "calculus": calc, "conclusion": concl}


def cmd_prove(a):
    from .labelled.proof import dumps
    from .labelled.sequent import show_sequent
    from .search import Proved, SearchConfig, prove_classical, prove_intuitionistic
    cfg = SearchConfig(fuel=a.fuel, pool_policy=a.pool, hints=tuple(a.hint), trace=a.trace)
    goal = _sequent(a.sequent)
    r = prove_classical(goal, cfg) if a.calc == "lkt2" else prove_intuitionistic(goal, cfg)
    trace = "\n".join(r.trace) + "\n" if a.trace else ""
    if isinstance(r, Proved):
        text = dumps(r.proof)
        if a.output:
            Path(a.output).write_text(text, encoding="utf-8")
        payload = {"result": "proved", "fuel_used": r.fuel_used, "proof": text}
        if a.trace:
            payload["trace"] = list(r.trace)
        return 0, trace + (f"proved with {r.fuel_used} fuel" if a.output else text.rstrip()), payload
    lines = [f"exhausted after {r.fuel_used} of {r.fuel} fuel{' (saturated)' if r.saturated else ''}"]
    lines += ["open\t" + show_sequent(s) for s in r.frontier]
    lines += r.report.lines()
    payload = {"result": "exhausted", "fuel": r.fuel, "fuel_used": r.fuel_used, "saturated": r.saturated,
               "frontier": [show_sequent(s) for s in r.frontier], "report": r.report.lines()}
    if a.trace:
        payload["trace"] = list(r.trace)
    return 1, trace + "\n".join(lines), payload


def cmd_interpret(a):
    from .translate import interp
    f = interp(a.kind, a.label, _sequent(a.sequent))
    out = show(f, a.sugar)
    return 0, out, {"formula": out}


def cmd_compile(a):
    from .translate import labelled_to_hilbert
    h = labelled_to_hilbert(_labelled(a.file), a.label, a.mode)
    text = h.dumps()
    return 0, text.rstrip(), {"conclusion": show(h.conclusion), "proof": text}


def cmd_multi_to_single(a):
    from .labelled.proof import dumps
    from .labelled.sequent import show_lf
    from .labelled.transforms import multi_to_single
    chosen, proof = _transform(lambda: multi_to_single(_labelled(a.file)))
    text = dumps(proof)
    return 0, f"# chosen {show_lf(chosen)}\n" + text.rstrip(), {"chosen": show_lf(chosen), "proof": text}


def cmd_negneg(a):
    from .labelled.proof import dumps
    from .labelled.transforms import classical_to_negneg
    proof = _transform(lambda: classical_to_negneg(_labelled(a.file), a.label))
    text = dumps(proof)
    return 0, text.rstrip(), {"proof": text}


def _transform(fn):
    from .labelled.proof import LabelledProofError
    from .labelled.transforms import TransformError
    try:
        return fn()
    except (LabelledProofError, TransformError) as e:
        raise _Rejected(str(e)) from e


class _Rejected(Exception):
    pass


def cmd_lemma(a):
    from .hilbert.lemmas import BANK, derive_lemma
    if a.list or not a.name:
        rows = [f"{n}\t{lem.system}\t{' '.join(lem.arity)}" for n, lem in BANK.items()]
        return 0, "\n".join(rows), {"lemmas": [{"name": n, "system": lem.system, "arity": list(lem.arity)}
                                              for n, lem in BANK.items()]}
    if a.name not in BANK:
        raise InputError(f"unknown lemma {a.name!r}")
    native = BANK[a.name].system == "IKt2Dia"
    params = [parse(p, native_diamonds=native) for p in a.params] or None
    h = derive_lemma(a.name, params)
    text = h.dumps()
    if a.output:
        Path(a.output).write_text(text, encoding="utf-8")
        return 0, f"{a.name}: {show(h.conclusion)}", {"conclusion": show(h.conclusion), "proof": text}
    return 0, text.rstrip(), {"conclusion": show(h.conclusion), "proof": text}


def _model(path: str):
    from .semantics import parse_model
    return parse_model(_read(path))


def cmd_model_validate(a):
    from .semantics import validate_model
    rep = validate_model(_model(a.file))
    lines = [str(v) for v in rep.violations]
    return (0 if rep.ok else 1), ("ok" if rep.ok else "\n".join(lines)), {
        "ok": rep.ok, "violations": [{"name": v.name, "witness": list(v.witness)} for v in rep.violations]}


def _point(m, text: str):
    from .semantics import BirelPoint, PredPoint, PredicateModel, RelPoint, RelationalModel
    if isinstance(m, PredicateModel):
        state, sep, world = text.partition(",")
        if not sep:
            raise InputError("points of predicate models are written 'state,world'")
        return PredPoint(state.strip(), world.strip())
    return RelPoint(text) if isinstance(m, RelationalModel) else BirelPoint(text)


def cmd_model_eval(a):
    from .semantics import evaluate, validate_model
    m = _model(a.file)
    rep = validate_model(m)
    if not rep.ok:
        raise InputError("model is not well formed: " + "; ".join(map(str, rep.violations)))
    f = parse(_text(a.formula), native_diamonds=True)
    val = evaluate(m, _point(m, a.point), f)
    return (0 if val else 1), str(val).lower(), {"value": val}


def cmd_model_comprehensive(a):
    from .semantics import closure_comprehensive
    m = _model(a.file)
    fams = [parse(line, native_diamonds=True) for line in _read(a.family).splitlines()
            if line.strip() and not line.lstrip().startswith("#")]
    rep = closure_comprehensive(m, fams)
    text = "ok" if rep.ok else "\n".join("missing\t" + str(x) for x in rep.missing)
    return (0 if rep.ok else 1), text + f"\n# {rep.checked} formulas checked", {
        "ok": rep.ok, "checked": rep.checked,
        "missing": [{"formula": show(x.formula), "extension": x.extension} for x in rep.missing]}


def cmd_fixtures(a):
    from .fixtures import run_suite
    rows = run_suite(a.suite, a.dir, seed=a.seed)
    ok = all(r.ok for r in rows)
    return (0 if ok else 1), "\n".join(map(str, rows)), {
        "suite": a.suite, "ok": ok, "rows": [{"name": r.name, "ok": r.ok, "detail": r.detail} for r in rows]}


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="sotl", description="Proofs, proof search and finite models for second-order tense logic.")
    top.add_argument("--format", choices=("text", "structured"), default="text")
    top.add_argument("--config", help="JSON file of default option values")
    sub = top.add_subparsers(dest="command", required=True)
    top.commands = {}

    def cmd(name, fn, help_):
        p = top.commands[name] = sub.add_parser(name, help=help_)
        p.set_defaults(fn=fn)
        return p

    p = cmd("parse", cmd_parse, "parse and print a formula or sequent")
    p.add_argument("text")
    p.add_argument("--native", action="store_true", help="keep dia/bdia as primitive connectives")
    p.add_argument("--sequent", action="store_true")
    p.add_argument("--sugar", action="store_true", help="print derived connectives")

    p = cmd("check-hilbert", cmd_check_hilbert, "check a Hilbert proof file")
    p.add_argument("--sys", choices=sorted(SYSTEM), default="ikt2")
    p.add_argument("file")

    p = cmd("check-labelled", cmd_check_labelled, "check a labelled proof file")
    p.add_argument("--calc", choices=sorted(CALC), default="likt2")
    p.add_argument("--cut", action=argparse.BooleanOptionalAction, default=True, help="admit the cut rule")
    p.add_argument("file")

    p = cmd("prove", cmd_prove, "search for a cut-free proof of a sequent")
    p.add_argument("--calc", choices=("lkt2", "mlikt2"), default="mlikt2")
    p.add_argument("--fuel", type=int, default=200)
    p.add_argument("--pool", choices=("shifts", "subformulas"), default="shifts")
    p.add_argument("--hint", action="append", default=[], help="extra quantifier witness (repeatable)")
    p.add_argument("--trace", action="store_true")
    p.add_argument("-o", "--output", help="write the proof here")
    p.add_argument("sequent")

    p = cmd("interpret", cmd_interpret, "formula interpretation of a sequent at a label")
    p.add_argument("--kind", choices=("left", "right", "classical", "intuitionistic"), default="intuitionistic")
    p.add_argument("--label", required=True)
    p.add_argument("--sugar", action="store_true")
    p.add_argument("sequent")

    p = cmd("compile", cmd_compile, "compile a labelled proof into a Hilbert proof")
    p.add_argument("--label")
    p.add_argument("--mode", choices=("intuitionistic", "classical"), default="intuitionistic")
    p.add_argument("file")

    p = cmd("multi-to-single", cmd_multi_to_single, "MLIKt2 proof to an LIKt2 proof")
    p.add_argument("file")

    p = cmd("negneg", cmd_negneg, "LKt2 proof to the double negation calculus")
    p.add_argument("--label", required=True)
    p.add_argument("file")

    p = cmd("lemma", cmd_lemma, "derive a lemma of the bank")
    p.add_argument("name", nargs="?")
    p.add_argument("params", nargs="*")
    p.add_argument("--list", action="store_true")
    p.add_argument("-o", "--output")

    p = cmd("model-validate", cmd_model_validate, "check the invariants of a model file")
    p.add_argument("file")

    p = cmd("model-eval", cmd_model_eval, "evaluate a closed formula at a point")
    p.add_argument("file")
    p.add_argument("point", help="a world, or 'state,world' for predicate models")
    p.add_argument("formula")

    p = cmd("model-comprehensive", cmd_model_comprehensive, "relative comprehensivity for a formula family")
    p.add_argument("file")
    p.add_argument("family", help="file with one formula per line")

    p = cmd("fixtures", cmd_fixtures, "run a regression suite over the bundled fixtures")
    p.add_argument("suite")
    p.add_argument("--dir", help="fixture directory to use instead of the bundled one")
    p.add_argument("--seed", type=int, default=0, help="seed of the randomised checks")
    return top


def _parse_args(parser, argv):
    args = parser.parse_args(argv)
    if args.config:
        try:
            defaults = json.loads(_read(args.config))
        except json.JSONDecodeError as e:
            raise InputError(f"{args.config}: {e}") from e
        if not isinstance(defaults, dict):
            raise InputError(f"{args.config}: expected a JSON object")
        defaults.pop("fn", None)
        # command-line flags win over the file
        parser.set_defaults(**defaults)
        for p in parser.commands.values():
            p.set_defaults(**defaults)
        args = parser.parse_args(argv)
    return args


def main(argv=None) -> int:
    parser = build_parser()
    structured = False
    try:
        args = _parse_args(parser, argv)
        structured = args.format == "structured"
        status, text, payload = args.fn(args)
    except _Rejected as e:
        status, text, payload = 1, f"rejected: {e}", {"error": str(e)}
    except (InputError, ParseError, ValueError, KeyError, OSError) as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else str(e)
        if structured:
            print(json.dumps({"status": 2, "error": msg}, ensure_ascii=False))
        else:
            print(f"error: {msg}", file=sys.stderr)
        return 2
    if structured:
        print(json.dumps({"status": status, **payload}, indent=1, ensure_ascii=False))
    else:
        print(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
