"""Refutability verdicts for two-literal formulas, conjunctive NNFs and
FOLDNF disjunct lists."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional

from .calculus import Certificate, Derivation, is_explicit_contradiction
from .formula import (
    Y0, Formula, binder_paths, contains_or, sort_quantifier_blocks,
)
from .pipeline import (
    ConnectedPair, connected_pairs, em_optimize_detail, extract_subformula,
    is_connected, psi_pair,
)
from .prenex import (
    PrenexForm, SubstitutionList, enumerate_optimized_prenexes, optimal_prenexes,
    substitution_list,
)


class Verdict(Enum):
    CONTRADICTORY = "CONTRADICTORY"
    SATISFIABLE = "SATISFIABLE"
    UNKNOWN = "UNKNOWN"


# witness tags
NO_CONNECTED_PAIR = "no connected pair"
C1 = "C1: ambiguous substitution list"
C2 = "C2: no optimal prenex"
ALL_PAIRS_FAIL = "every connected pair fails"
NO_UNIFIABLE_ROW = "a DNF matrix row has no unifiable pair"
UNDECIDED_DISJUNCTION = "contains a disjunction, undecided"


class InputContainsDisjunction(ValueError):
    pass


@dataclass
class PsiStages:
    psi: Formula
    psi1: Formula
    psi2: Formula
    sigma: SubstitutionList
    prenexes: List[PrenexForm]
    optimal: List[PrenexForm]

    @property
    def chosen(self) -> Optional[PrenexForm]:
        return self.optimal[0] if self.optimal else None


@dataclass
class Decision:
    verdict: Verdict
    witness: Optional[str] = None
    certificate: Optional[Certificate] = None
    stages: Optional[PsiStages] = None
    pairs: List["PairDecision"] = field(default_factory=list)
    parts: List["Decision"] = field(default_factory=list)
    formula: Optional[Formula] = None

    @property
    def contradictory(self) -> bool:
        return self.verdict is Verdict.CONTRADICTORY


@dataclass
class PairDecision:
    pair: ConnectedPair
    psi: Formula
    decision: Decision


def analyse_psi(psi: Formula, derivation: Optional[Derivation] = None) -> PsiStages:
    detail = em_optimize_detail(psi, derivation)
    sigma = substitution_list(psi_pair(detail.psi2))
    forms = enumerate_optimized_prenexes(detail.psi2)
    return PsiStages(psi, detail.psi1, detail.psi2, sigma, forms, optimal_prenexes(forms, sigma))


def decide_psi(psi: Formula) -> Decision:
    try:
        pair = psi_pair(psi)
    except ValueError:
        return Decision(Verdict.SATISFIABLE, NO_CONNECTED_PAIR, formula=psi)
    if not is_connected(pair.l1, pair.l2):
        return Decision(Verdict.SATISFIABLE, NO_CONNECTED_PAIR, formula=psi)

    d = Derivation(psi)
    stages = analyse_psi(psi, d)
    if stages.sigma.ambiguous:
        return Decision(Verdict.SATISFIABLE, C1, stages=stages, formula=psi)
    chosen = stages.chosen
    if chosen is None:
        return Decision(Verdict.SATISFIABLE, C2, stages=stages, formula=psi)

    d.extend(chosen.steps)
    eliminate_universals(d, stages.sigma)
    final = sort_quantifier_blocks(d.current)
    cert = d.certificate(final)
    if not is_explicit_contradiction(final):
        raise AssertionError(f"derivation for {psi} did not end in an explicit contradiction")
    return Decision(Verdict.CONTRADICTORY, certificate=cert, stages=stages, formula=psi)


def eliminate_universals(d: Derivation, sigma: SubstitutionList) -> None:
    """Apply universal elimination left to right along the prefix."""
    targets = sigma.as_dict()
    while True:
        paths = binder_paths(d.current)
        universals = [(p, v) for v, p in paths.items() if v.is_universal]
        if not universals:
            return
        path, v = min(universals, key=lambda item: item[0])
        by = targets[v][0] if v in targets else Y0
        d.apply("ForallE", path, var=v, by=by)


def decide_wedge_nnf(f: Formula) -> Decision:
    if contains_or(f):
        raise InputContainsDisjunction("formula contains a disjunction")
    pairs = connected_pairs(f)
    if not pairs:
        return Decision(Verdict.SATISFIABLE, NO_CONNECTED_PAIR, formula=f)
    results = []
    for pair in pairs:
        psi = extract_subformula(f, pair)
        results.append(PairDecision(pair, psi, decide_psi(psi)))
    for r in results:
        if r.decision.contradictory:
            return Decision(
                Verdict.CONTRADICTORY, certificate=r.decision.certificate,
                stages=r.decision.stages, pairs=results, formula=f,
            )
    return Decision(Verdict.SATISFIABLE, ALL_PAIRS_FAIL, pairs=results, formula=f)


def decide_disjunct(d: Formula) -> Decision:
    if not contains_or(d):
        return decide_wedge_nnf(d)
    from .pruner import DINONWID_SATISFIABLE, dinonwid_check

    if dinonwid_check(d) == DINONWID_SATISFIABLE:
        return Decision(Verdict.SATISFIABLE, NO_UNIFIABLE_ROW, formula=d)
    return Decision(Verdict.UNKNOWN, UNDECIDED_DISJUNCTION, formula=d)


def decide_foldnf(disjuncts: List[Formula]) -> Decision:
    parts = [decide_disjunct(d) for d in disjuncts]
    if any(p.verdict is Verdict.SATISFIABLE for p in parts):
        return Decision(Verdict.SATISFIABLE, parts=parts)
    if any(p.verdict is Verdict.UNKNOWN for p in parts):
        return Decision(Verdict.UNKNOWN, UNDECIDED_DISJUNCTION, parts=parts)
    return Decision(Verdict.CONTRADICTORY, parts=parts)
