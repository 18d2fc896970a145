"""Acceptance suite; every check adds a PASS/FAIL line to the terminal summary."""

import random
import time
from dataclasses import dataclass

import pytest

from nnfcalc.calculus import Certificate, DerivationStep, RULES, verify_certificate
from nnfcalc.corpus import corpus
from nnfcalc.decision import C1, C2, Verdict, analyse_psi, decide_psi
from nnfcalc.formula import Y0, alpha_equal, quantifier_count, var
from nnfcalc.oracle import BudgetExceeded, equivalent_on, satisfiable_on, skolem_decide
from nnfcalc.pipeline import Derivation, em_free_route, em_optimize, minimize_scopes, pn_count, psi_pair
from nnfcalc.prenex import (
    SubstitutionList, enumerate_optimized_prenexes, optimal_prenexes, substitution_list,
)
from nnfcalc.pruner import c1u1, c2u1, c3u1, prune, unifiable_pairs
from nnfcalc.syntax import parse, to_text

from conftest import ACCEPTANCE_REPORT
from recipes import disjunctive_certificate

pytestmark = pytest.mark.acceptance

CORPUS_SIZE = 10_000
CORPUS_SEED = 2026
AUDIT_SIZE = 1_000
MUTATIONS = 100


def report(name, ok, detail):
    ACCEPTANCE_REPORT.append(f"{name}: {'PASS' if ok else 'FAIL'} ({detail})")


@dataclass
class Record:
    psi: object
    decision: object
    skolem: bool
    pair_result: object


@pytest.fixture(scope="module")
def decided_corpus():
    start = time.perf_counter()
    records = [Record(psi, decide_psi(psi), skolem_decide(psi), None)
               for psi in corpus(CORPUS_SIZE, seed=CORPUS_SEED)]
    elapsed = time.perf_counter() - start
    for r in records:
        (r.pair_result,) = unifiable_pairs(r.psi)
    return records, elapsed


# --- golden examples --------------------------------------------------------------

REFUTABLE_PSI = "A x1 E y1 (A x3 F(y1,x1,x3) & A x2 ~F(x2,y1,y1))"
SUCCESSOR_PSI = "A x1 E y1 F(x1,y1) & A x2 ~F(x2,x2)"
C1_EXAMPLES = [
    "E y1 E y2 F(y1,y2) & A x1 ~F(x1,x1)",
    "E y1 A x1 F(x1,x1,y1) & E y2 A x2 ~F(x2,y2,x2)",
    "E y1 E y2 A x1 E y3 (F(y1,x1,y3) & ~F(x1,y2,y3))",
]
C2_EXAMPLES = [
    "A x1 E y1 (E y2 F(y1,y2) & ~F(y1,x1))",
    "A x1 E y1 F(x1,y1) & A x2 ~F(x2,x2)",
    "A x1 E y1 (F(x1,y1) & E y2 ~F(y2,y1))",
    "A x1 E y1 F(x1,y1) & A x2 E y2 ~F(y2,x2)",
]
INDIRECT_CASE_PSI = "E y1 (A x1 A x2 F(y1,x1,x1,x2,x2) & A x3 A x4 ~F(x3,x3,x4,x4,y1))"
DEAD_PAIR_HOST = "A x1 E y2 (~G(y2,y2) & E y1 (A x3 F(y1,x1,x3) & A x2 ~F(x2,y1,y1)) & G(x1,y2))"


def golden_checks():
    yield "scope minimization table", to_text(minimize_scopes(parse(
        "E y1 A x1 E y2 A x2 E y3 (F(x1,x2,y1,y1) & ~F(y2,y3,x1,y1))"
    ))) == "E y1 (A x1 A x2 F(x1,x2,y1,y1) & A x3 E y2 E y3 ~F(y2,y3,x3,y1))"

    refutable = parse(REFUTABLE_PSI)
    optimized = em_optimize(refutable)
    yield "multiplication of refutable psi", alpha_equal(
        optimized, parse("A x1 E y1_1 A x3 F(y1_1,x1,x3) & E y1_2 A x2 ~F(x2,y1_2,y1_2)"))
    yield "multiplication-free route", alpha_equal(em_free_route(refutable), optimized)

    sigma_unaligned = substitution_list(psi_pair(parse("A x1 A x2 A x3 A x4 E y2 (F(x1,x2,x2,x4) & ~F(y2,x1,x3,x4))")))
    yield "sigma with unaligned universal", str(sigma_unaligned) == "{{x1,y2}, {x2,y2}, {x3,y2}, {x4,y0}}"

    two_prenex = em_optimize(parse("E y1 A x1 E y2 A x2 F(y1,x1,y2,x2) & A x3 E y3 A x4 A x5 ~F(x3,y3,x4,x5)"))
    forms = enumerate_optimized_prenexes(two_prenex)
    yield "two prenex forms", [f.prefix_text() for f in forms] == [
        "E y1 A x1 E y2 A x3 E y3 A x4 A x5 A x2", "E y1 A x3 E y3 A x1 E y2 A x4 A x5 A x2"]
    yield "optimal second prenex", optimal_prenexes(forms, substitution_list(psi_pair(two_prenex))) == forms[1:]

    d = decide_psi(refutable)
    yield "final contradiction", d.contradictory and to_text(d.certificate.final) == (
        "E y1_1 E y1_2 (F(y1_1,y1_2,y1_2) & ~F(y1_1,y1_2,y1_2))")
    successor = decide_psi(parse(SUCCESSOR_PSI))
    yield "successor verdict", (successor.verdict, successor.witness) == (Verdict.SATISFIABLE, C2)
    yield "C1 examples", all(decide_psi(parse(t)).witness == C1 for t in C1_EXAMPLES)
    yield "C2 examples", all(decide_psi(parse(t)).witness == C2 for t in C2_EXAMPLES)
    yield "repeated universals", decide_psi(parse(INDIRECT_CASE_PSI)).contradictory

    yield "prune dead pair", alpha_equal(prune(parse(DEAD_PAIR_HOST)), refutable)
    yield "disjunctive certificate", verify_certificate(disjunctive_certificate()).verified


def test_golden_examples():
    start = time.perf_counter()
    results = list(golden_checks())
    elapsed = time.perf_counter() - start
    failed = [name for name, ok in results if not ok]
    ok = not failed and elapsed < 1.0
    report("golden examples", ok, f"{len(results) - len(failed)}/{len(results)} goldens in {elapsed:.2f} s")
    assert not failed
    assert elapsed < 1.0


def test_successor_psi_with_listed_sigma():
    psi2 = em_optimize(parse(SUCCESSOR_PSI))
    forms = enumerate_optimized_prenexes(psi2)
    listed = SubstitutionList(((var("x1"), (var("y1"),)), (var("x2"), (Y0,))))
    assert [f.prefix_text() for f in forms] == ["A x1 E y1 A x2"]
    assert optimal_prenexes(forms, listed) == []


# --- oracle equivalence -----------------------------------------------------------


def test_oracle_equivalence(decided_corpus):
    records, elapsed = decided_corpus
    wrong = [r for r in records if r.decision.contradictory != r.skolem]
    ok = not wrong and elapsed < 60
    report("oracle equivalence", ok, f"{len(records) - len(wrong)}/{len(records)} agree, {elapsed:.1f} s")
    assert not wrong, to_text(wrong[0].psi)
    assert elapsed < 60


# --- stage audit ------------------------------------------------------------------


def test_stage_audit():
    start = time.perf_counter()
    violations = {"psi~psi1": [], "psi1 equisat psi2": [], "psi2~psi3": []}
    skipped = 0
    for psi in corpus(AUDIT_SIZE, seed=CORPUS_SEED + 1, max_arity=3):
        st = analyse_psi(psi)
        try:
            if not equivalent_on(st.psi, st.psi1):
                violations["psi~psi1"].append(psi)
            if satisfiable_on(st.psi1) != satisfiable_on(st.psi2):
                violations["psi1 equisat psi2"].append(psi)
            if not all(equivalent_on(st.psi2, f.formula) for f in st.prenexes):
                violations["psi2~psi3"].append(psi)
        except BudgetExceeded:
            skipped += 1
    elapsed = time.perf_counter() - start
    total = sum(len(v) for v in violations.values())
    counts = ", ".join(f"{k}: {len(v)}" for k, v in violations.items())
    report("stage audit", total == 0 and elapsed < 120,
           f"{AUDIT_SIZE} formulas, {skipped} over budget, violations {counts}, {elapsed:.1f} s")
    assert total == 0, "; ".join(f"{k}: {to_text(v[0])}" for k, v in violations.items() if v)
    assert elapsed < 120


# --- filter exactness -------------------------------------------------------------


def test_filter_exactness(decided_corpus):
    records, _ = decided_corpus
    false_positives = []
    disagreements = []
    for r in records:
        pair = psi_pair(r.psi)
        if (c1u1(pair) or c2u1(pair) or c3u1(pair)) and r.decision.contradictory:
            false_positives.append(r)
        if r.pair_result.unifiable != r.decision.contradictory:
            disagreements.append(r)
    ok = not false_positives and not disagreements
    report("filter exactness", ok, f"{len(false_positives)} false positives, {len(disagreements)} disagreements "
                  f"over {len(records)} formulas")
    assert not false_positives
    assert not disagreements


# --- soundness gate ---------------------------------------------------------------


def mutate(step, rng, formulas):
    """A copy of ``step`` differing in exactly one field."""
    while True:
        choice = rng.randrange(4)
        if choice == 0:
            bad = DerivationStep(rng.choice(RULES), step.position, step.payload, step.result)
        elif choice == 1:
            position = step.position + (0,) if rng.random() < 0.5 or not step.position else step.position[:-1]
            bad = DerivationStep(step.rule, position, step.payload, step.result)
        elif choice == 2 and step.payload:
            key = rng.choice(sorted(step.payload))
            value = step.payload[key]
            if key == "dir":
                new = "lr" if value == "rl" else "rl"
            else:
                new = rng.choice([Y0, var("y1"), var("y2"), var("x1"), var("x2")])
            bad = DerivationStep(step.rule, step.position, {**step.payload, key: new}, step.result)
        else:
            bad = DerivationStep(step.rule, step.position, step.payload, rng.choice(formulas))
        if bad != step:
            return bad


def test_soundness_gate(decided_corpus):
    records, _ = decided_corpus
    certs = [r.decision.certificate for r in records if r.decision.contradictory]
    certs += [decide_psi(parse(REFUTABLE_PSI)).certificate, disjunctive_certificate()]
    rejected_valid = [c for c in certs if not verify_certificate(c).verified]

    rng = random.Random(CORPUS_SEED)
    pool = [c for c in certs if c.steps]
    formulas = [c.initial for c in pool]
    survivors = 0
    for _ in range(MUTATIONS):
        cert = rng.choice(pool)
        k = rng.randrange(len(cert.steps))
        steps = list(cert.steps)
        steps[k] = mutate(steps[k], rng, formulas)
        if verify_certificate(Certificate(cert.initial, steps, cert.final)).verified:
            survivors += 1
    ok = not rejected_valid and survivors == 0
    report("soundness gate", ok, f"{len(certs) - len(rejected_valid)}/{len(certs)} certificates verified, "
                  f"{MUTATIONS - survivors}/{MUTATIONS} mutants rejected")
    assert not rejected_valid
    assert survivors == 0


# --- termination bounds -----------------------------------------------------------


def test_termination_bounds(decided_corpus):
    records, _ = decided_corpus
    pn_over = enum_over = 0
    for r in records:
        d = Derivation(r.psi)
        minimize_scopes(r.psi, d)
        if pn_count(d) > quantifier_count(r.psi):
            pn_over += 1
        stages = r.decision.stages
        if stages and len(stages.prenexes) > 2 ** quantifier_count(stages.psi2):
            enum_over += 1
    report("termination bounds", pn_over == 0 and enum_over == 0,
           f"PN bound exceeded {pn_over}x, enumeration bound exceeded {enum_over}x")
    assert pn_over == 0
    assert enum_over == 0
