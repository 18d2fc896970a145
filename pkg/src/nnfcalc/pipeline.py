"""From a formula to the existential-multiplication-optimized subformula of a
literal pair: pair detection, extraction, scope minimization and guarded
existential multiplication."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional, Tuple

from .calculus import Derivation, RuleError
from .formula import (
    And, Exists, Forall, Formula, LiteralOccurrence, Path,
    Quantifier, Var, binder_paths, children, free_vars, is_literal, literals,
    replace_at, subformula, walk, with_children,
)
from .normal import _duplicate_binders, rename_apart


@dataclass(frozen=True)
class ConnectedPair:
    l1: LiteralOccurrence
    l2: LiteralOccurrence
    host: Formula

    def __str__(self) -> str:
        return f"{{{literal_text(self.l1)}, {literal_text(self.l2)}}}"


def literal_text(l: LiteralOccurrence) -> str:
    body = f"{l.pred}({','.join(str(a) for a in l.args)})"
    return body if l.positive else "~" + body


def is_connected(l1: LiteralOccurrence, l2: LiteralOccurrence) -> bool:
    if not l1.positive or l2.positive or l1.pred != l2.pred or len(l1.args) != len(l2.args):
        return False
    return not any(a.is_existential and b.is_existential and a != b for a, b in zip(l1.args, l2.args))


def connected_pairs(f: Formula) -> List[ConnectedPair]:
    lits = literals(f)
    pos = [l for l in lits if l.positive]
    neg = [l for l in lits if not l.positive]
    pairs = [ConnectedPair(a, b, f) for a in pos for b in neg if is_connected(a, b)]
    pairs.sort(key=lambda p: tuple(sorted((p.l1.path, p.l2.path))))
    return pairs


def extract_subformula(f: Formula, pair: ConnectedPair) -> Formula:
    """Keep the two literals, the quantifiers binding their variables and the
    connective joining them; a joining disjunction becomes a conjunction."""
    keep = {pair.l1.path, pair.l2.path}
    used = set(pair.l1.args) | set(pair.l2.args)

    def build(node: Formula, path: Path) -> Optional[Formula]:
        if is_literal(node):
            return node if path in keep else None
        if isinstance(node, Quantifier):
            body = build(node.body, path + (0,))
            if body is None:
                return None
            return type(node)(node.var, body) if node.var in used else body
        kids = [build(k, path + (i,)) for i, k in enumerate(children(node))]
        present = [k for k in kids if k is not None]
        if not present:
            return None
        if len(present) == 2:
            return And(present[0], present[1])
        return present[0]

    return build(f, ())


def psi_pair(psi: Formula) -> ConnectedPair:
    """The literal pair of a two-literal formula, positive literal first."""
    lits = literals(psi)
    pos = [l for l in lits if l.positive]
    neg = [l for l in lits if not l.positive]
    if len(lits) != 2 or len(pos) != 1:
        raise ValueError("expected exactly one positive and one negative literal")
    return ConnectedPair(pos[0], neg[0], psi)


# --- scope minimization ------------------------------------------------------

_MINIMIZE_ORDER = ("PN1", "PN2", "PN5", "PN6", "PN9")


def _first_application(f: Formula, rule: str) -> Optional[Path]:
    for path, node in walk(f):
        if not isinstance(node, Quantifier) or not isinstance(node.body, And):
            continue
        if isinstance(node, Forall) != (rule in ("PN1", "PN2", "PN9")):
            continue
        in_left = node.var in free_vars(node.body.left)
        in_right = node.var in free_vars(node.body.right)
        if rule in ("PN1", "PN5") and not in_left:
            return path
        if rule in ("PN2", "PN6") and not in_right:
            return path
        if rule == "PN9" and in_left and in_right:
            return path
    return None


def minimize_scopes(psi: Formula, derivation: Optional[Derivation] = None) -> Formula:
    """Drive quantifiers inward over conjunctions, then rename copies apart.

    Rule priority is PN1, PN2, PN5, PN6, PN9, restarting from PN1 after every
    hit; each rule is tried at the leftmost-outermost matching node.
    """
    d = derivation or Derivation(psi)
    if d.current != psi:
        raise ValueError("derivation is not positioned at the input formula")
    while True:
        for rule in _MINIMIZE_ORDER:
            path = _first_application(d.current, rule)
            if path is not None:
                d.apply(rule, path, dir="lr")
                break
        else:
            break
    rename_copies(d)
    return d.current


def rename_copies(d: Derivation) -> None:
    """Record the substitution steps performed by ``rename_apart``."""
    before = d.current
    if not _duplicate_binders(before):
        return
    after = rename_apart(before)
    for path, node in walk(before):
        if isinstance(node, Quantifier):
            new = subformula(after, path).var
            if new != node.var:
                d.apply("SUB2" if isinstance(node, Forall) else "SUB1", path, new=new)
    assert d.current == after


def pn_count(d: Derivation) -> int:
    return sum(1 for s in d.steps if s.rule.startswith("PN"))


# --- guard machinery for existential multiplication ------------------------------


def xx_lists(pair: ConnectedPair) -> List[frozenset]:
    parent: Dict[Var, Var] = {}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for a, b in zip(pair.l1.args, pair.l2.args):
        if a.is_universal and b.is_universal:
            parent.setdefault(a, a)
            parent.setdefault(b, b)
            parent[find(a)] = find(b)
    groups: Dict[Var, set] = {}
    for v in parent:
        groups.setdefault(find(v), set()).add(v)
    return sorted((frozenset(g) for g in groups.values()), key=lambda g: min(g))


def xy_yx_pairs(pair: ConnectedPair) -> Tuple[List[Tuple[Var, Var]], List[Tuple[Var, Var]]]:
    xy, yx = [], []
    for a, b in zip(pair.l1.args, pair.l2.args):
        if a.is_universal and b.is_existential and (a, b) not in xy:
            xy.append((a, b))
        if a.is_existential and b.is_universal and (a, b) not in yx:
            yx.append((a, b))
    return xy, yx


class Guard(Enum):
    YES = "yes"
    DIRECT = "direct case"
    INDIRECT = "indirect case"


def em_applicable(f: Formula, position: Path) -> Guard:
    node = subformula(f, position)
    if not (isinstance(node, Exists) and isinstance(node.body, And)):
        raise RuleError("existential multiplication needs an existential quantifier over a conjunction")
    mu = node.var
    if mu not in free_vars(node.body.left) or mu not in free_vars(node.body.right):
        raise RuleError(f"{mu} must occur in both conjuncts")
    pair = psi_pair(f)
    if any(a == mu and b == mu for a, b in zip(pair.l1.args, pair.l2.args)):
        return Guard.DIRECT
    xy, yx = xy_yx_pairs(pair)
    paths = binder_paths(f)
    for group in xx_lists(pair):
        firsts = {x for x, y in xy if y == mu and x in group}
        seconds = {x for y, x in yx if y == mu and x in group}
        if not any(a != b for a in firsts for b in seconds):
            continue
        inside = all(
            len(paths[x]) > len(position) and paths[x][: len(position)] == position
            for x in group
        )
        if inside:
            return Guard.INDIRECT
    return Guard.YES


def em_candidate(f: Formula) -> Optional[Path]:
    """Outermost existential directly above a conjunction whose variable
    occurs in both conjuncts."""
    for path, node in walk(f):
        if isinstance(node, Exists) and isinstance(node.body, And):
            if node.var in free_vars(node.body.left) and node.var in free_vars(node.body.right):
                return path
    return None


@dataclass
class EmResult:
    psi1: Formula
    psi2: Formula
    multiplied: List[Var]
    blocked: Optional[Guard]


def em_optimize_detail(psi: Formula, derivation: Optional[Derivation] = None) -> EmResult:
    d = derivation or Derivation(psi)
    psi1 = minimize_scopes(psi, d)
    multiplied: List[Var] = []
    blocked = None
    while True:
        path = em_candidate(d.current)
        if path is None:
            break
        guard = em_applicable(d.current, path)
        if guard is not Guard.YES:
            blocked = guard
            break
        multiplied.append(subformula(d.current, path).var)
        d.apply("ExistsM", path)
        minimize_scopes(d.current, d)
    return EmResult(psi1, d.current, multiplied, blocked)


def em_optimize(psi: Formula, derivation: Optional[Derivation] = None) -> Formula:
    return em_optimize_detail(psi, derivation).psi2


def _delete_literal(f: Formula, drop: Formula) -> Formula:
    """Remove one literal from a conjunction tree together with the
    quantifiers left without a bound occurrence."""

    def build(node):
        if is_literal(node):
            return None if node == drop else node
        if isinstance(node, Quantifier):
            body = build(node.body)
            if body is None:
                return None
            return type(node)(node.var, body) if node.var in free_vars(body) else body
        kids = [build(k) for k in children(node)]
        present = [k for k in kids if k is not None]
        if not present:
            return None
        return with_children(node, tuple(present)) if len(present) == 2 else present[0]

    return build(f)


def em_free_route(psi: Formula) -> Formula:
    """Reach an equivalent of the optimized formula with a single conjunct
    multiplication instead of existential multiplication."""
    detail = em_optimize_detail(psi)
    psi1 = detail.psi1
    if not detail.multiplied:
        return psi1
    target = detail.multiplied[-1]
    path = binder_paths(psi1)[target]
    d = Derivation(psi1)
    d.apply("AndI", path)
    copies = subformula(d.current, path)
    left = _delete_literal(copies.left, _literal_with_sign(copies.left, positive=False))
    right = _delete_literal(copies.right, _literal_with_sign(copies.right, positive=True))
    trimmed = replace_at(d.current, path, And(left, right))
    return minimize_scopes(trimmed)


def _literal_with_sign(copy: Formula, positive: bool) -> Formula:
    return next(l.node for l in literals(copy) if l.positive == positive)
