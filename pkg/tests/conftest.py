import sys
from hypothesis import strategies as st

from sotl.syntax import BBox, Box, Forall, Imp, Prop, Var

VAR_NAMES = ("X", "Y", "Z")


def _extend(children):
    return st.one_of(
        st.builds(Imp, children, children),
        st.builds(Box, children),
        st.builds(BBox, children),
        st.builds(Forall.bind, st.sampled_from(VAR_NAMES), children),
    )


atoms = st.one_of(st.sampled_from([Prop("P"), Prop("Q"), Prop("R")]), st.sampled_from([Var(n) for n in VAR_NAMES]))
formulas = st.recursive(atoms, _extend, max_leaves=8)
closed_atoms = st.sampled_from([Prop("P"), Prop("Q")])


def _close(f):
    for n in sorted(f_vars(f)):
        f = Forall.bind(n, f)
    return f


def f_vars(f):
    from sotl.syntax import free_vars
    return free_vars(f)


closed_formulas = formulas.map(_close)
small_closed = st.recursive(closed_atoms, _extend, max_leaves=4).map(_close)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in range(1, 13):
            terminalreporter.write_line(results.get(n, f"criterion {n}: FAIL  not run to completion"))
