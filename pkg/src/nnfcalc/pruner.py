"""Syntactic unifiability filters and the literal pruner."""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple

from .formula import (
    SAT, Y0, And, Formula, Or, Quantifier, Sat, children, free_vars, in_scope,
    literals, replace_at, with_children,
)
from .normal import dnf_matrix
from .pipeline import ConnectedPair, connected_pairs, em_optimize, extract_subformula, psi_pair
from .prenex import cluster_substitutions, substitution_list

FILTERS = ("C1U1", "C2U1", "C3U1", "C4U1", "C5U1")
DINONWID_SATISFIABLE = "DefinitelySatisfiable"
DINONWID_INCONCLUSIVE = "Inconclusive"


def _side_tagged(args, side):
    return [(a, side) if a.is_universal else a for a in args]


def _split_sigma(pair: ConnectedPair):
    """Substitution targets with the x variables of each literal kept apart,
    as multiplication would leave them."""
    return cluster_substitutions(
        _side_tagged(pair.l1.args, 1), _side_tagged(pair.l2.args, 2),
        lambda t: isinstance(t, tuple),
    )


def c1u1(pair: ConnectedPair) -> bool:
    return any(len(ys) > 1 for ys in _split_sigma(pair).values())


def _orientations(pair: ConnectedPair):
    yield pair.l1.args, pair.l2.args
    yield pair.l2.args, pair.l1.args


def c2u1(pair: ConnectedPair, host: Optional[Formula] = None) -> bool:
    host = host if host is not None else pair.host
    for own, other in _orientations(pair):
        for n, nu1 in enumerate(own):
            nu2 = other[n]
            if not (nu1.is_universal and nu2.is_universal):
                continue
            for m, mu in enumerate(own):
                if mu.is_existential and other[m] == nu2 and in_scope(host, mu, nu1):
                    return True
    return False


def c3u1(pair: ConnectedPair, host: Optional[Formula] = None) -> bool:
    host = host if host is not None else pair.host
    sigma = _split_sigma(pair)
    sides = ((pair.l1.args, 1, pair.l2.args, 2), (pair.l2.args, 2, pair.l1.args, 1))
    for own, own_side, other, other_side in sides:
        # an existential in both literals may be multiplied apart, undoing the crossing
        for nu1 in {a for a in own if a.is_universal}:
            for mu1 in {a for a in own if a.is_existential and a not in other}:
                if not in_scope(host, mu1, nu1):
                    continue
                for nu2 in {a for a in other if a.is_universal}:
                    for mu2 in {a for a in other if a.is_existential and a not in own}:
                        if (
                            sigma.get((nu1, own_side)) == {mu2}
                            and sigma.get((nu2, other_side)) == {mu1}
                            and in_scope(host, mu2, nu2)
                        ):
                            return True
    return False


def optimized_pair(pair: ConnectedPair, host: Optional[Formula] = None) -> ConnectedPair:
    """The literal pair inside the multiplication-optimized subformula."""
    host = host if host is not None else pair.host
    return psi_pair(em_optimize(extract_subformula(host, pair)))


def c4u1_c5u1(pair: ConnectedPair, host: Optional[Formula] = None) -> Tuple[bool, bool]:
    return _ambiguous_or_trapped(optimized_pair(pair, host))


def _ambiguous_or_trapped(optimized: ConnectedPair) -> Tuple[bool, bool]:
    sigma = substitution_list(optimized)
    c5 = any(
        in_scope(optimized.host, mu, nu)
        for nu, ys in sigma.entries
        for mu in ys
        if mu != Y0
    )
    return sigma.ambiguous, c5


@dataclass
class PairFilterResult:
    pair: ConnectedPair
    failed: Tuple[str, ...]

    @property
    def unifiable(self) -> bool:
        return not self.failed


def unifiable_pairs(f: Formula) -> List[PairFilterResult]:
    out = []
    for pair in connected_pairs(f):
        failed = [name for name, fires in (
            ("C1U1", c1u1(pair)), ("C2U1", c2u1(pair)), ("C3U1", c3u1(pair)),
        ) if fires]
        if not failed:
            # splitting a shared universal can create the C3U1 crossing only in the optimized form
            optimized = optimized_pair(pair)
            c4, c5 = _ambiguous_or_trapped(optimized)
            failed += [name for name, fires in (
                ("C3U1", c3u1(optimized)), ("C4U1", c4), ("C5U1", c5),
            ) if fires]
        out.append(PairFilterResult(pair, tuple(failed)))
    return out


def _drop_unused_quantifiers(f: Formula) -> Formula:
    if isinstance(f, Quantifier):
        body = _drop_unused_quantifiers(f.body)
        return type(f)(f.var, body) if f.var in free_vars(body) else body
    kids = children(f)
    if not kids:
        return f
    return with_children(f, tuple(_drop_unused_quantifiers(k) for k in kids))


def _absorb_sat(f: Formula) -> Formula:
    if isinstance(f, (And, Or)):
        left, right = _absorb_sat(f.left), _absorb_sat(f.right)
        if isinstance(left, Sat) or isinstance(right, Sat):
            if isinstance(f, Or):
                return SAT
            return right if isinstance(left, Sat) else left
        return type(f)(left, right)
    if isinstance(f, Quantifier):
        return type(f)(f.var, _absorb_sat(f.body))
    return f


def prune(f: Formula) -> Formula:
    """Replace literals that belong to no unifiable pair by ``sat`` and
    simplify until the result is ``sat`` or free of the marker."""
    if isinstance(f, Sat):
        return f
    keep = set()
    for r in unifiable_pairs(f):
        if r.unifiable:
            keep.update((r.pair.l1.path, r.pair.l2.path))
    g = f
    for lit in literals(f):
        if lit.path not in keep:
            g = replace_at(g, lit.path, SAT)
    while True:
        h = _absorb_sat(_drop_unused_quantifiers(g))
        if h == g:
            return h
        g = h


def dinonwid_check(d: Formula) -> str:
    good = {
        frozenset((r.pair.l1.path, r.pair.l2.path))
        for r in unifiable_pairs(d) if r.unifiable
    }
    _, matrix = dnf_matrix(d)
    for row in matrix:
        paths = {lit.path for lit in row}
        if not any(pair <= paths for pair in good):
            return DINONWID_SATISFIABLE
    return DINONWID_INCONCLUSIVE
