"""Random two-literal formulas for property tests and oracle audits."""

from __future__ import annotations

import random
from typing import Iterator, List, Optional

from .formula import And, Atom, Exists, Forall, Formula, Not, Var
from .normal import rectify
from .pipeline import is_connected, psi_pair

PREFIX, LEFT, RIGHT = 0, 1, 2


def _nest(binders: List[Var], body: Formula) -> Formula:
    for v in reversed(binders):
        body = (Forall if v.is_universal else Exists)(v, body)
    return body


def random_psi(
    rng: random.Random,
    max_quantifiers: int = 8,
    max_arity: int = 5,
    pred: str = "F",
) -> Formula:
    """A rectified formula ``Q* (Q* L1 & Q* ~L2)`` whose two literals form a
    connected pair.

    The quantifier count, every quantifier's kind and its segment (shared
    prefix, left conjunct, right conjunct) are drawn uniformly; every
    quantifier binds at least one argument.  Draws that produce distinct
    existential variables at an aligned position are discarded.
    """
    while True:
        psi = _attempt(rng, max_quantifiers, max_arity, pred)
        if psi is not None:
            return psi


def _attempt(rng: random.Random, max_quantifiers: int, max_arity: int, pred: str) -> Optional[Formula]:
    count = rng.randint(0, max_quantifiers)
    counters = {"x": 0, "y": 0}
    segments = {PREFIX: [], LEFT: [], RIGHT: []}
    for _ in range(count):
        kind = rng.choice("xy")
        counters[kind] += 1
        segments[rng.choice((PREFIX, LEFT, RIGHT))].append(Var(kind, counters[kind]))

    need = {LEFT: list(segments[LEFT]), RIGHT: list(segments[RIGHT])}
    for v in segments[PREFIX]:
        side = rng.choice((LEFT, RIGHT, None))
        for s in (LEFT, RIGHT) if side is None else (side,):
            need[s].append(v)
    low = max(1, len(need[LEFT]), len(need[RIGHT]))
    if low > max_arity:
        return None
    arity = rng.randint(low, max_arity)

    args = {}
    for side in (LEFT, RIGHT):
        pool = segments[PREFIX] + segments[side]
        if not pool:
            return None
        chosen = need[side] + [rng.choice(pool) for _ in range(arity - len(need[side]))]
        rng.shuffle(chosen)
        args[side] = tuple(chosen)

    left = _nest(segments[LEFT], Atom(pred, args[LEFT]))
    right = _nest(segments[RIGHT], Not(Atom(pred, args[RIGHT])))
    psi = rectify(_nest(segments[PREFIX], And(left, right)))
    pair = psi_pair(psi)
    return psi if is_connected(pair.l1, pair.l2) else None


def corpus(
    size: int, seed: int = 0, max_quantifiers: int = 8, max_arity: int = 5
) -> Iterator[Formula]:
    rng = random.Random(seed)
    for _ in range(size):
        yield random_psi(rng, max_quantifiers, max_arity)
