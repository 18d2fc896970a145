from itertools import groupby

import pytest
from hypothesis import given

from nnfcalc.calculus import Derivation
from nnfcalc.formula import Y0, quantifier_count, var
from nnfcalc.oracle import equivalent_on
from nnfcalc.pipeline import em_optimize, psi_pair
from nnfcalc.prenex import (
    PrenexForm, SubstitutionList, enumerate_optimized_prenexes, optimal_prenexes,
    pull_in_order, substitution_list,
)
from nnfcalc.syntax import parse, to_text

from conftest import psis

TWO_PRENEX_PSI = "E y1 A x1 E y2 A x2 F(y1,x1,y2,x2) & A x3 E y3 A x4 A x5 ~F(x3,y3,x4,x5)"
MULTIPLIED_PSI = "A x1 E y1_1 A x3 F(y1_1,x1,x3) & E y1_2 A x2 ~F(x2,y1_2,y1_2)"


def sigma_of(text):
    return substitution_list(psi_pair(parse(text)))


def blocks(prefix):
    """Prefix with the order inside runs of one quantifier kind forgotten."""
    return [(kind, frozenset(v for _, v in run)) for kind, run in groupby(prefix, key=lambda q: q[0])]


def prefix_of(text):
    return [(token[0], var(token[1:])) for token in text.split()]


def test_sigma_with_unaligned_universal():
    s = sigma_of("A x1 A x2 A x3 A x4 E y2 (F(x1,x2,x2,x4) & ~F(y2,x1,x3,x4))")
    assert str(s) == "{{x1,y2}, {x2,y2}, {x3,y2}, {x4,y0}}"
    assert not s.ambiguous


def test_sigma_ambiguous_examples():
    s = sigma_of("E y1 E y2 A x1 E y3 (F(y1,x1,y3) & ~F(x1,y2,y3))")
    assert str(s) == "{{x1,y1,y2}}" and s.ambiguous
    s = sigma_of("E y1 A x1 F(x1,x1,y1) & E y2 A x2 ~F(x2,y2,x2)")
    assert str(s) == "{{x1,y1,y2}, {x2,y1,y2}}"


def test_sigma_target():
    s = sigma_of("A x1 E y1 (A x3 F(y1,x1,x3) & A x2 ~F(x2,y1,y1))")
    assert s.target(var("x1")) == var("y1")
    with pytest.raises(ValueError):
        sigma_of("E y1 E y2 A x1 E y3 (F(y1,x1,y3) & ~F(x1,y2,y3))").target(var("x1"))


def test_enumerate_two_prenex_forms():
    forms = enumerate_optimized_prenexes(em_optimize(parse(TWO_PRENEX_PSI)))
    assert [f.prefix_text() for f in forms] == [
        "E y1 A x1 E y2 A x3 E y3 A x4 A x5 A x2",
        "E y1 A x3 E y3 A x1 E y2 A x4 A x5 A x2",
    ]


def test_optimal_prenex_is_the_second_form():
    psi2 = em_optimize(parse(TWO_PRENEX_PSI))
    sigma = substitution_list(psi_pair(psi2))
    assert str(sigma) == "{{x1,y3}, {x2,y0}, {x3,y1}, {x4,y2}, {x5,y0}}"
    forms = enumerate_optimized_prenexes(psi2)
    assert optimal_prenexes(forms, sigma) == [forms[1]]


def test_multiplied_psi_has_one_optimal_prenex():
    psi2 = parse(MULTIPLIED_PSI)
    forms = enumerate_optimized_prenexes(psi2)
    assert len(forms) == 1
    assert blocks(forms[0].prefix) == blocks(prefix_of("Ey1_2 Ax1 Ey1_1 Ax3 Ax2"))
    assert optimal_prenexes(forms, substitution_list(psi_pair(psi2))) == forms


def test_prenex_input_is_returned_unchanged():
    f = parse("E y1 A x1 (F(y1,x1) & ~F(y1,y1))")
    forms = enumerate_optimized_prenexes(f)
    assert [g.formula for g in forms] == [f] and forms[0].steps == []


def test_empty_sigma_keeps_every_form():
    forms = enumerate_optimized_prenexes(em_optimize(parse(TWO_PRENEX_PSI)))
    assert optimal_prenexes(forms, SubstitutionList(())) == forms


def test_no_optimal_prenex_for_successor_formula():
    psi2 = em_optimize(parse("A x1 E y1 F(x1,y1) & A x2 ~F(x2,x2)"))
    forms = enumerate_optimized_prenexes(psi2)
    assert [f.prefix_text() for f in forms] == ["A x1 E y1 A x2"]
    assert optimal_prenexes(forms, substitution_list(psi_pair(psi2))) == []
    listed = SubstitutionList(((var("x1"), (var("y1"),)), (var("x2"), (Y0,))))
    assert optimal_prenexes(forms, listed) == []


def test_prenex_form_accessors():
    form = PrenexForm(parse("E y1 A x1 (F(y1,x1) & ~F(y1,y1))"))
    assert form.prefix == [("E", var("y1")), ("A", var("x1"))]
    assert to_text(form.matrix) == "F(y1,x1) & ~F(y1,y1)"


def test_pull_in_order_lifts_over_conjunction():
    d = Derivation(parse("A x1 (E y1 F(x1,y1) & G(x1))"))
    pull_in_order(d, [var("y1")])
    assert to_text(d.current) == "A x1 E y1 (F(x1,y1) & G(x1))"
    assert [s.rule for s in d.steps] == ["PN6"]


def test_pull_in_order_rejects_binder_below_inner_quantifier():
    d = Derivation(parse("A x1 (E y1 A x2 F(x1,y1,x2) & G(x1))"))
    with pytest.raises(ValueError):
        pull_in_order(d, [var("x2")])


# --- properties -----------------------------------------------------------------


def literal_sigma(l1_args, l2_args):
    """The substitution list built by growing and pruning aligned-pair lists,
    as a second route to sigma."""
    def xs(lst):
        return {v for v in lst if v.is_universal}

    def ys(lst):
        return {v for v in lst if v.is_existential}

    lists = [set(p) for p in zip(l1_args, l2_args) if any(v.is_universal for v in p)]
    changed = True
    while changed:
        changed = False
        for own in lists:
            if len(ys(own)) != 1:
                continue
            for nu1 in list(xs(own)):
                for other in lists:
                    if other is not own and nu1 in other:
                        extra = xs(other) - own
                        if extra:
                            own |= extra
                            changed = True
        linked = set().union(*[xs(lst) for lst in lists if ys(lst)])
        kept = [lst for lst in lists if ys(lst) or not xs(lst) <= linked]
        if len(kept) != len(lists):
            lists, changed = kept, True
    out = {}
    for nu in set().union(*[xs(lst) for lst in lists]) if lists else ():
        found = set().union(*[ys(lst) for lst in lists if nu in lst])
        out[nu] = tuple(sorted(found or {Y0}))
    return out


@given(psis())
def test_sigma_matches_worklist_route(psi):
    pair = psi_pair(em_optimize(psi))
    assert substitution_list(pair).as_dict() == literal_sigma(pair.l1.args, pair.l2.args)


@given(psis())
def test_sigma_is_total(psi):
    pair = psi_pair(em_optimize(psi))
    sigma = substitution_list(pair)
    xs = [x for x, _ in sigma.entries]
    assert len(xs) == len(set(xs))
    assert set(xs) == {a for a in pair.l1.args + pair.l2.args if a.is_universal}
    assert all(ys for _, ys in sigma.entries)


@given(psis(max_arity=3))
def test_prenex_forms_are_equivalent_to_input(psi):
    psi2 = em_optimize(psi)
    for form in enumerate_optimized_prenexes(psi2):
        assert equivalent_on(psi2, form.formula)


@given(psis())
def test_prenex_forms_share_quantifiers_and_matrix(psi):
    psi2 = em_optimize(psi)
    forms = enumerate_optimized_prenexes(psi2)
    assert forms
    assert 1 <= len(forms) <= 2 ** quantifier_count(psi2)
    first = forms[0]
    for form in forms:
        assert sorted(form.prefix) == sorted(first.prefix)
        assert form.matrix == first.matrix
        assert len({v for _, v in form.prefix}) == len(form.prefix)


@given(psis())
def test_prenex_steps_replay(psi):
    psi2 = em_optimize(psi)
    for form in enumerate_optimized_prenexes(psi2):
        d = Derivation(psi2)
        d.extend(form.steps)
        assert d.current == form.formula
