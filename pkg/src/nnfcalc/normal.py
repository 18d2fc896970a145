"""Normal forms: NNF, rectification, subscripting of duplicated binders,
FOLDNF disjuncts and DNF matrices."""

from __future__ import annotations

from itertools import product
from typing import Callable, Dict, List, Optional, Tuple

from .formula import (
    EXISTENTIAL, UNIVERSAL, And, Atom, Binary, Exists, Forall, Formula,
    LiteralOccurrence, Not, Or, Path, Quantifier, Sat, Var, children, disj,
    free_vars, walk, with_children,
)


def to_nnf(f: Formula) -> Formula:
    return _nnf(f, False)


def _nnf(f: Formula, negate: bool) -> Formula:
    if isinstance(f, Atom):
        return Not(f) if negate else f
    if isinstance(f, Not):
        return _nnf(f.body, not negate)
    if isinstance(f, And):
        cls = Or if negate else And
        return cls(_nnf(f.left, negate), _nnf(f.right, negate))
    if isinstance(f, Or):
        cls = And if negate else Or
        return cls(_nnf(f.left, negate), _nnf(f.right, negate))
    if isinstance(f, Forall):
        return (Exists if negate else Forall)(f.var, _nnf(f.body, negate))
    if isinstance(f, Exists):
        return (Forall if negate else Exists)(f.var, _nnf(f.body, negate))
    return f


def rebind(f: Formula, namer: Callable[[Path, Formula], Var],
           env: Optional[Dict[Var, Var]] = None, path: Path = ()) -> Formula:
    """Rebuild ``f`` giving each binder the variable chosen by ``namer``.

    Occurrences follow their own binder, so shadowed names are handled and no
    capture can happen as long as ``namer`` hands out distinct variables.
    """
    env = env or {}
    if isinstance(f, Atom):
        return Atom(f.pred, tuple(env.get(a, a) for a in f.args))
    if isinstance(f, Quantifier):
        new = namer(path, f)
        inner = dict(env)
        inner[f.var] = new
        return type(f)(new, rebind(f.body, namer, inner, path + (0,)))
    kids = children(f)
    if not kids:
        return f
    return with_children(f, tuple(rebind(k, namer, env, path + (i,)) for i, k in enumerate(kids)))


def rectify(f: Formula) -> Formula:
    """Rename universals to x1, x2, ... and existentials to y1, y2, ... in
    left-to-right binder order."""
    counters = {UNIVERSAL: 0, EXISTENTIAL: 0}

    def namer(_path, node):
        kind = UNIVERSAL if isinstance(node, Forall) else EXISTENTIAL
        counters[kind] += 1
        return Var(kind, counters[kind])

    return rebind(f, namer)


def _duplicate_binders(f: Formula) -> Dict[Var, List[Path]]:
    seen: Dict[Var, List[Path]] = {}
    for path, node in walk(f):
        if isinstance(node, Quantifier):
            seen.setdefault(node.var, []).append(path)
    return {v: ps for v, ps in seen.items() if len(ps) > 1}


def max_subscript(f: Formula) -> Formula:
    """Give binders that share a variable distinct copies by appending a new
    deepest sub-index: 1 for the leftmost copy, 2 for the next, and so on."""
    dups = _duplicate_binders(f)
    if not dups:
        return f
    index = {p: i + 1 for ps in dups.values() for i, p in enumerate(ps)}

    def namer(path, node):
        return node.var.sub(index[path]) if path in index else node.var

    return rebind(f, namer)


def rename_apart(f: Formula) -> Formula:
    """Rectify by renaming only repeated binders.

    The leftmost binder of a variable keeps its name; later binders of the
    same variable receive the next unused base index of their kind.
    """
    dups = _duplicate_binders(f)
    if not dups:
        return f
    top = {UNIVERSAL: 0, EXISTENTIAL: 0}
    for _, node in walk(f):
        if isinstance(node, Quantifier):
            top[node.var.kind] = max(top.get(node.var.kind, 0), node.var.base)
    fresh: Dict[Path, Var] = {}
    for path in sorted(p for ps in dups.values() for p in ps[1:]):
        node_var = _binder_var_at(f, path)
        top[node_var.kind] += 1
        fresh[path] = Var(node_var.kind, top[node_var.kind])

    def namer(path, node):
        return fresh.get(path, node.var)

    return rebind(f, namer)


def _binder_var_at(f: Formula, path: Path) -> Var:
    for step in path:
        f = children(f)[step]
    return f.var


# --- FOLDNF -------------------------------------------------------------------


def _split(f: Formula) -> List[Formula]:
    """Disjuncts with quantifiers pushed inward and disjunction pulled outward."""
    if isinstance(f, Or):
        return _split(f.left) + _split(f.right)
    if isinstance(f, And):
        return [And(a, b) for a, b in product(_split(f.left), _split(f.right))]
    if isinstance(f, Exists):
        return [Exists(f.var, d) if f.var in free_vars(d) else d for d in _split(f.body)]
    if isinstance(f, Forall):
        parts = _split(f.body)
        outside = [d for d in parts if f.var not in free_vars(d)]
        inside = [d for d in parts if f.var in free_vars(d)]
        if inside:
            outside.append(Forall(f.var, anti_prenex(disj(inside))))
        return outside
    return [f]


def anti_prenex(f: Formula) -> Formula:
    """Drive quantifiers inward with all ten PN laws until none applies."""
    if isinstance(f, Quantifier):
        body = anti_prenex(f.body)
        v = f.var
        if v not in free_vars(body):
            return body
        if isinstance(body, Binary):
            in_left = v in free_vars(body.left)
            in_right = v in free_vars(body.right)
            cls = type(body)
            if in_left and not in_right:
                return cls(anti_prenex(type(f)(v, body.left)), body.right)
            if in_right and not in_left:
                return cls(body.left, anti_prenex(type(f)(v, body.right)))
            if (isinstance(f, Forall) and cls is And) or (isinstance(f, Exists) and cls is Or):
                return cls(anti_prenex(type(f)(v, body.left)), anti_prenex(type(f)(v, body.right)))
        return type(f)(v, body)
    kids = children(f)
    if not kids:
        return f
    return with_children(f, tuple(anti_prenex(k) for k in kids))


def to_foldnf(f: Formula) -> List[Formula]:
    """Disjuncts D1, ..., Dn of an equivalent disjunction of conjunctions of
    anti-prenex formulas; each disjunct is rectified."""
    parts = [anti_prenex(d) for d in _split(f)]
    # renaming runs over the whole disjunction so copies split by PN10 differ
    node = rename_apart(disj(parts))
    stack = []
    for _ in range(len(parts) - 1):
        stack.append(node.right)
        node = node.left
    stack.append(node)
    return [rename_apart(g) for g in reversed(stack)]


# --- DNF matrix -----------------------------------------------------------------


def prenex_prefix(f: Formula) -> List[Tuple[str, Var]]:
    """Quantifiers of a prenex form obtained by pulling every quantifier out,
    outermost and leftmost first."""
    out = []
    for _, node in walk(f):
        if isinstance(node, Quantifier):
            out.append(("A" if isinstance(node, Forall) else "E", node.var))
    return out


def dnf_matrix(f: Formula) -> Tuple[List[Tuple[str, Var]], List[List[LiteralOccurrence]]]:
    """Prefix of a prenex form of ``f`` and the DNF of its quantifier-free scope.

    Each matrix disjunct lists literal occurrences of ``f`` (paths into ``f``).
    """
    return prenex_prefix(f), _dnf(f, ())


def _dnf(f: Formula, path: Path) -> List[List[LiteralOccurrence]]:
    if isinstance(f, Atom):
        return [[LiteralOccurrence(path, True, f.pred, f.args)]]
    if isinstance(f, Not):
        return [[LiteralOccurrence(path, False, f.body.pred, f.body.args)]]
    if isinstance(f, Sat):
        return [[]]
    if isinstance(f, Quantifier):
        return _dnf(f.body, path + (0,))
    left = _dnf(f.left, path + (0,))
    right = _dnf(f.right, path + (1,))
    if isinstance(f, Or):
        return left + right
    return [a + b for a in left for b in right]
