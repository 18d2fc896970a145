"""Independent checks: skolemization with syntactic unification, and
exhaustive finite-model evaluation.

Model enumeration is vectorized with numpy: every predicate table is a slice
of the bits of a model index, so all models of one domain size are evaluated
in a handful of array operations.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Tuple

import numpy as np

from .formula import (
    And, Atom, Exists, Forall, Formula, Not, Or, Quantifier, Sat, Var, predicates,
)
from .pipeline import is_connected, psi_pair

DEFAULT_BUDGET = 2 ** 20
# cells per evaluation chunk: models times variable assignments
_CHUNK_CELLS = 2 ** 22


# --- skolemization and unification ---------------------------------------------


def _skolem_terms(psi: Formula) -> Dict[Var, tuple]:
    terms: Dict[Var, tuple] = {}

    def visit(f: Formula, universals: Tuple[Var, ...]):
        if isinstance(f, Forall):
            terms[f.var] = ("var", f.var)
            visit(f.body, universals + (f.var,))
        elif isinstance(f, Exists):
            terms[f.var] = ("fn", f.var, tuple(("var", u) for u in universals))
            visit(f.body, universals)
        elif isinstance(f, (And, Or)):
            visit(f.left, universals)
            visit(f.right, universals)

    visit(psi, ())
    return terms


def _rename(term: tuple, side: int) -> tuple:
    if term[0] == "var":
        return ("var", (term[1], side))
    return ("fn", term[1], tuple(_rename(a, side) for a in term[2]))


def _walk(term, subst):
    while term[0] == "var" and term[1] in subst:
        term = subst[term[1]]
    return term


def _occurs(name, term, subst) -> bool:
    term = _walk(term, subst)
    if term[0] == "var":
        return term[1] == name
    return any(_occurs(name, a, subst) for a in term[2])


def unify(pairs: List[Tuple[tuple, tuple]]) -> Optional[dict]:
    """Robinson unification with occurs check; terms are ("var", name) or
    ("fn", symbol, args).  Returns the substitution or None."""
    subst: dict = {}
    stack = list(pairs)
    while stack:
        a, b = stack.pop()
        a, b = _walk(a, subst), _walk(b, subst)
        if a == b:
            continue
        if a[0] == "var":
            if _occurs(a[1], b, subst):
                return None
            subst[a[1]] = b
        elif b[0] == "var":
            stack.append((b, a))
        elif a[1] != b[1] or len(a[2]) != len(b[2]):
            return None
        else:
            stack.extend(zip(a[2], b[2]))
    return subst


def skolem_decide(psi: Formula) -> bool:
    """True iff the two-literal formula is contradictory by resolution on its
    skolemized unit clauses."""
    pair = psi_pair(psi)
    if not is_connected(pair.l1, pair.l2):
        if pair.l1.pred != pair.l2.pred or len(pair.l1.args) != len(pair.l2.args):
            return False
    terms = _skolem_terms(psi)
    left = [_rename(terms[a], 1) for a in pair.l1.args]
    right = [_rename(terms[a], 2) for a in pair.l2.args]
    return unify(list(zip(left, right))) is not None


# --- finite models ----------------------------------------------------------------


class BudgetExceeded(RuntimeError):
    pass


@dataclass
class Model:
    size: int
    tables: Dict[str, np.ndarray]

    def __str__(self) -> str:
        parts = []
        for pred, table in sorted(self.tables.items()):
            true = [tuple(int(i) for i in t) for t in zip(*np.nonzero(table))]
            parts.append(f"{pred}={true}")
        return f"size {self.size}: " + "; ".join(parts)


Signature = Dict[str, int]


def signature(*formulas: Formula) -> Signature:
    sig: Signature = {}
    for f in formulas:
        for pred, arity in predicates(f).items():
            if sig.setdefault(pred, arity) != arity:
                raise ValueError(f"predicate {pred} used with two arities")
    return sig


def _layout(sig: Signature, size: int) -> Tuple[Dict[str, int], int]:
    offsets, bits = {}, 0
    for pred in sorted(sig):
        offsets[pred] = bits
        bits += size ** sig[pred]
    return offsets, bits


def model_count(sig: Signature, size: int) -> int:
    return 2 ** _layout(sig, size)[1]


def _eval(f: Formula, tables, size: int, env: List[Var]) -> np.ndarray:
    models = next(iter(tables.values())).shape[0] if tables else 1
    shape = (models,) + (size,) * len(env)
    if isinstance(f, Atom):
        index = []
        for a in f.args:
            if a not in env:
                raise ValueError(f"free variable {a}")
            # innermost binder wins when a name is shadowed
            axis = len(env) - 1 - env[::-1].index(a)
            grid = np.arange(size).reshape([size if i == axis else 1 for i in range(len(env))])
            index.append(grid)
        table = tables[f.pred]
        values = table[(slice(None),) + tuple(index)]
        return np.broadcast_to(values, shape)
    if isinstance(f, Not):
        return ~_eval(f.body, tables, size, env)
    if isinstance(f, Sat):
        return np.ones(shape, dtype=bool)
    if isinstance(f, And):
        return _eval(f.left, tables, size, env) & _eval(f.right, tables, size, env)
    if isinstance(f, Or):
        return _eval(f.left, tables, size, env) | _eval(f.right, tables, size, env)
    inner = env + [f.var]
    body = _eval(f.body, tables, size, inner)
    return body.all(axis=-1) if isinstance(f, Forall) else body.any(axis=-1)


def _depth(f: Formula) -> int:
    if isinstance(f, Quantifier):
        return 1 + _depth(f.body)
    if isinstance(f, (And, Or)):
        return max(_depth(f.left), _depth(f.right))
    if isinstance(f, Not):
        return _depth(f.body)
    return 0


def _tables_for(indices: np.ndarray, sig: Signature, size: int):
    offsets, _ = _layout(sig, size)
    tables = {}
    for pred, arity in sig.items():
        cells = size ** arity
        shifts = np.arange(offsets[pred], offsets[pred] + cells, dtype=np.int64)
        bits = (indices[:, None] >> shifts[None, :]) & 1
        tables[pred] = bits.astype(bool).reshape((len(indices),) + (size,) * arity)
    return tables


def truth_table(f: Formula, size: int, sig: Optional[Signature] = None,
                budget: int = DEFAULT_BUDGET) -> np.ndarray:
    """Truth value of closed ``f`` in every model of the given domain size,
    indexed by model number."""
    sig = sig if sig is not None else signature(f)
    total = model_count(sig, size)
    if total > budget:
        raise BudgetExceeded(f"{total} models at size {size} exceed the budget of {budget}")
    chunk = max(1, _CHUNK_CELLS // size ** max(_depth(f), 0))
    out = np.empty(total, dtype=bool)
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
        tables = _tables_for(idx, sig, size) if sig else {}
        value = _eval(f, tables, size, [])
        out[start:start + len(idx)] = np.broadcast_to(value, (len(idx),))
    return out


def model_at(sig: Signature, size: int, index: int) -> Model:
    tables = _tables_for(np.array([index], dtype=np.int64), sig, size)
    return Model(size, {p: t[0] for p, t in tables.items()})


def model_eval(f: Formula, m: Model) -> bool:
    tables = {p: t[None, ...] for p, t in m.tables.items()}
    missing = set(predicates(f)) - set(tables)
    if missing:
        raise ValueError(f"model lacks predicates {sorted(missing)}")
    return bool(_eval(f, tables, m.size, [])[0])


def find_model(f: Formula, max_size: int = 3, budget: int = DEFAULT_BUDGET) -> Optional[Model]:
    sig = signature(f)
    for size in range(1, max_size + 1):
        values = truth_table(f, size, sig, budget)
        hits = np.flatnonzero(values)
        if hits.size:
            return model_at(sig, size, int(hits[0]))
    return None


def _tables_by_size(f: Formula, g: Formula, sizes, budget) -> Iterator[Tuple[np.ndarray, np.ndarray]]:
    sig = signature(f, g)
    for size in sizes:
        yield truth_table(f, size, sig, budget), truth_table(g, size, sig, budget)


def equivalent_on(f: Formula, g: Formula, sizes=(1, 2), budget: int = DEFAULT_BUDGET) -> bool:
    return all(np.array_equal(a, b) for a, b in _tables_by_size(f, g, sizes, budget))


def implies_on(f: Formula, g: Formula, sizes=(1, 2), budget: int = DEFAULT_BUDGET) -> bool:
    return all(not np.any(a & ~b) for a, b in _tables_by_size(f, g, sizes, budget))


def satisfiable_on(f: Formula, sizes=(1, 2), budget: int = DEFAULT_BUDGET) -> bool:
    sig = signature(f)
    return any(truth_table(f, size, sig, budget).any() for size in sizes)
