import random

import pytest
from hypothesis import settings, strategies as st

from nnfcalc.corpus import random_psi
from nnfcalc.formula import And, Atom, Exists, Forall, Not, Or, Var
from nnfcalc.syntax import parse

settings.register_profile("default", deadline=None, max_examples=150)
settings.load_profile("default")

PREDICATES = {"P": 1, "Q": 2}


@st.composite
def closed_formulas(draw, max_depth=4, predicates=None, negations=True):
    """Closed formulas over small predicates; binder names may repeat, so
    shadowing occurs."""
    predicates = predicates or PREDICATES
    names = [Var("v", i) for i in range(1, 4)]

    def build(depth, env):
        choices = ["atom"] if env else []
        if depth > 0:
            choices += ["and", "or", "forall", "exists"] + (["not"] if negations else [])
        if not choices:
            choices = ["forall", "exists"]
        kind = draw(st.sampled_from(choices))
        if kind == "atom":
            pred = draw(st.sampled_from(sorted(predicates)))
            args = tuple(draw(st.sampled_from(env)) for _ in range(predicates[pred]))
            return Atom(pred, args)
        if kind == "not":
            return Not(build(depth - 1, env))
        if kind in ("and", "or"):
            cls = And if kind == "and" else Or
            return cls(build(depth - 1, env), build(depth - 1, env))
        v = draw(st.sampled_from(names))
        cls = Forall if kind == "forall" else Exists
        return cls(v, build(depth - 1, env + [v]))

    return build(max_depth, [])


def psis(max_quantifiers=8, max_arity=5, pred="F"):
    """Rectified two-literal formulas with a connected pair."""
    return st.integers(0, 2 ** 32).map(
        lambda seed: random_psi(random.Random(seed), max_quantifiers, max_arity, pred)
    )


@pytest.fixture
def dead_pair_host():
    return parse("A x1 E y2 (~G(y2,y2) & E y1 (A x3 F(y1,x1,x3) & A x2 ~F(x2,y1,y1)) & G(x1,y2))")


@pytest.fixture
def refutable_psi():
    return parse("A x1 E y1 (A x3 F(y1,x1,x3) & A x2 ~F(x2,y1,y1))")


DISJUNCTIVE_EXAMPLE = (
    "A x1 (A x2 A x6 F(x1,x2,x6) | A x3 A x7 ~F(x3,x1,x7)) & "
    "E y1 A x4 E y3 ~F(y1,x4,y3) & E y2 A x5 E y4 F(x5,y2,y4)"
)


# the acceptance suite appends "name: PASS|FAIL (detail)" lines here
ACCEPTANCE_REPORT = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_REPORT:
        terminalreporter.section("acceptance")
        for line in sorted(ACCEPTANCE_REPORT):
            terminalreporter.write_line(line)
