"""Formula syntax tree for pure first-order logic without function symbols.

Nodes are immutable; every transformation returns a new tree.  Children are
addressed by integer selectors so that any subformula can be located by a
path from the root: binary connectives use 0 (left) and 1 (right),
quantifiers and negation use 0 for their single child.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, Iterator, List, Optional, Tuple, Union

UNIVERSAL = "x"
EXISTENTIAL = "y"

Path = Tuple[int, ...]


@dataclass(frozen=True, order=True)
class Var:
    kind: str
    base: int
    subs: Tuple[int, ...] = ()

    @property
    def depth(self) -> int:
        return 1 + len(self.subs)

    @property
    def is_universal(self) -> bool:
        return self.kind == UNIVERSAL

    @property
    def is_existential(self) -> bool:
        return self.kind == EXISTENTIAL

    def sub(self, index: int) -> "Var":
        return Var(self.kind, self.base, self.subs + (index,))

    def __str__(self) -> str:
        return self.kind + str(self.base) + "".join("_" + str(s) for s in self.subs)

    def __repr__(self) -> str:
        return f"Var({str(self)!r})"


Y0 = Var(EXISTENTIAL, 0)


def var(name: str) -> Var:
    head, *subs = name.split("_")
    return Var(head[0], int(head[1:]), tuple(int(s) for s in subs))


@dataclass(frozen=True)
class Atom:
    pred: str
    args: Tuple[Var, ...]


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Forall:
    var: Var
    body: "Formula"


@dataclass(frozen=True)
class Exists:
    var: Var
    body: "Formula"


@dataclass(frozen=True)
class Sat:
    """Placeholder left behind by the literal pruner for a deleted literal."""


SAT = Sat()

Formula = Union[Atom, Not, And, Or, Forall, Exists, Sat]
Quantifier = (Forall, Exists)
Binary = (And, Or)


@dataclass(frozen=True)
class LiteralOccurrence:
    path: Path
    positive: bool
    pred: str
    args: Tuple[Var, ...]

    @property
    def node(self) -> Formula:
        atom = Atom(self.pred, self.args)
        return atom if self.positive else Not(atom)


# --- structural helpers -----------------------------------------------------


def children(f: Formula) -> Tuple[Formula, ...]:
    if isinstance(f, Binary):
        return (f.left, f.right)
    if isinstance(f, Quantifier) or isinstance(f, Not):
        return (f.body,)
    return ()


def with_children(f: Formula, kids: Tuple[Formula, ...]) -> Formula:
    if isinstance(f, Binary):
        return type(f)(kids[0], kids[1])
    if isinstance(f, Quantifier):
        return type(f)(f.var, kids[0])
    if isinstance(f, Not):
        return Not(kids[0])
    return f


def subformula(f: Formula, path: Path) -> Formula:
    for step in path:
        kids = children(f)
        if step < 0 or step >= len(kids):
            raise IndexError(f"path step {step} does not exist")
        f = kids[step]
    return f


def replace_at(f: Formula, path: Path, new: Formula) -> Formula:
    if not path:
        return new
    kids = list(children(f))
    if path[0] >= len(kids):
        raise IndexError(f"path step {path[0]} does not exist")
    kids[path[0]] = replace_at(kids[path[0]], path[1:], new)
    return with_children(f, tuple(kids))


def walk(f: Formula, path: Path = ()) -> Iterator[Tuple[Path, Formula]]:
    """Pre-order traversal, left to right."""
    yield path, f
    for i, kid in enumerate(children(f)):
        yield from walk(kid, path + (i,))


def is_literal(f: Formula) -> bool:
    return isinstance(f, Atom) or (isinstance(f, Not) and isinstance(f.body, Atom))


def literals(f: Formula, path: Path = ()) -> List[LiteralOccurrence]:
    """Literal occurrences in left-to-right order."""
    if isinstance(f, Atom):
        return [LiteralOccurrence(path, True, f.pred, f.args)]
    if isinstance(f, Not) and isinstance(f.body, Atom):
        return [LiteralOccurrence(path, False, f.body.pred, f.body.args)]
    out: List[LiteralOccurrence] = []
    for i, kid in enumerate(children(f)):
        out.extend(literals(kid, path + (i,)))
    return out


def free_vars(f: Formula) -> frozenset:
    if isinstance(f, Atom):
        return frozenset(f.args)
    if isinstance(f, Quantifier):
        return free_vars(f.body) - {f.var}
    out: frozenset = frozenset()
    for kid in children(f):
        out |= free_vars(kid)
    return out


def all_vars(f: Formula) -> set:
    out = set()
    for _, node in walk(f):
        if isinstance(node, Atom):
            out.update(node.args)
        elif isinstance(node, Quantifier):
            out.add(node.var)
    return out


def binders(f: Formula) -> List[Tuple[Path, Formula]]:
    return [(p, n) for p, n in walk(f) if isinstance(n, Quantifier)]


def binder_paths(f: Formula) -> Dict[Var, Path]:
    """Path of the quantifier binding each variable (rectified input)."""
    return {n.var: p for p, n in binders(f)}


def in_scope(f: Formula, inner: Var, outer: Var) -> bool:
    """True if the quantifier binding ``inner`` lies inside the scope of the one binding ``outer``."""
    paths = binder_paths(f)
    if inner not in paths or outer not in paths:
        return False
    p, q = paths[inner], paths[outer]
    return len(p) > len(q) and p[: len(q)] == q


def substitute(f: Formula, mapping: Dict[Var, Var]) -> Formula:
    """Replace free occurrences of variables; bound occurrences are left alone."""
    if not mapping:
        return f
    if isinstance(f, Atom):
        return Atom(f.pred, tuple(mapping.get(a, a) for a in f.args))
    if isinstance(f, Quantifier):
        if f.var in mapping:
            mapping = {k: v for k, v in mapping.items() if k != f.var}
        return type(f)(f.var, substitute(f.body, mapping))
    if isinstance(f, Sat):
        return f
    return with_children(f, tuple(substitute(k, mapping) for k in children(f)))


def rename_bound(f: Formula, fn: Callable[[Path, Var], Optional[Var]], path: Path = ()) -> Formula:
    """Rename binders; ``fn`` returns the new variable for the binder at ``path`` or None."""
    if isinstance(f, Quantifier):
        new = fn(path, f.var)
        body = rename_bound(f.body, fn, path + (0,))
        if new is not None and new != f.var:
            body = substitute(body, {f.var: new})
            return type(f)(new, body)
        return type(f)(f.var, body)
    kids = children(f)
    if not kids:
        return f
    return with_children(f, tuple(rename_bound(k, fn, path + (i,)) for i, k in enumerate(kids)))


def contains_or(f: Formula) -> bool:
    return any(isinstance(n, Or) for _, n in walk(f))


def contains_forall(f: Formula) -> bool:
    return any(isinstance(n, Forall) for _, n in walk(f))


def quantifier_count(f: Formula) -> int:
    return sum(1 for _, n in walk(f) if isinstance(n, Quantifier))


def predicates(f: Formula) -> Dict[str, int]:
    out: Dict[str, int] = {}
    for _, n in walk(f):
        if isinstance(n, Atom) and out.setdefault(n.pred, len(n.args)) != len(n.args):
            raise ValueError(f"predicate {n.pred} used with two arities")
    return out


# --- invariants ---------------------------------------------------------------


def is_nnf(f: Formula) -> bool:
    return all(isinstance(n.body, Atom) for _, n in walk(f) if isinstance(n, Not))


def is_closed(f: Formula) -> bool:
    return not free_vars(f)


def is_rectified(f: Formula) -> bool:
    seen = set()
    for _, n in walk(f):
        if isinstance(n, Quantifier):
            if n.var in seen:
                return False
            seen.add(n.var)
            if isinstance(n, Forall) and not n.var.is_universal:
                return False
            if isinstance(n, Exists) and not n.var.is_existential:
                return False
    return True


# --- canonical comparison ------------------------------------------------------


def _flatten(f: Formula, cls) -> List[Formula]:
    if isinstance(f, cls):
        return _flatten(f.left, cls) + _flatten(f.right, cls)
    return [f]


def canonical_key(f: Formula) -> tuple:
    """Key equal for formulas that differ only by associativity and commutativity
    of the connectives and by the order inside blocks of like quantifiers."""
    if isinstance(f, Atom):
        return ("A", f.pred, tuple(str(a) for a in f.args))
    if isinstance(f, Not):
        return ("N", canonical_key(f.body))
    if isinstance(f, Sat):
        return ("S",)
    if isinstance(f, Binary):
        cls = type(f)
        return (cls.__name__, tuple(sorted(canonical_key(k) for k in _flatten(f, cls))))
    block = []
    cls = type(f)
    while isinstance(f, cls):
        block.append(str(f.var))
        f = f.body
    return (cls.__name__, tuple(sorted(block)), canonical_key(f))


def alpha_key(f: Formula, env: Optional[Dict[Var, int]] = None, depth: int = 0) -> tuple:
    """Key equal for formulas that differ by bound-variable names and by
    associativity/commutativity of the connectives."""
    env = env or {}
    if isinstance(f, Atom):
        return ("A", f.pred, tuple(depth - env[a] if a in env else str(a) for a in f.args))
    if isinstance(f, Not):
        return ("N", alpha_key(f.body, env, depth))
    if isinstance(f, Sat):
        return ("S",)
    if isinstance(f, Binary):
        cls = type(f)
        return (cls.__name__, tuple(sorted(alpha_key(k, env, depth) for k in _flatten(f, cls))))
    inner = dict(env)
    inner[f.var] = depth + 1
    return (type(f).__name__, f.var.kind, alpha_key(f.body, inner, depth + 1))


def alpha_equal(f: Formula, g: Formula) -> bool:
    return alpha_key(f) == alpha_key(g)


def sort_quantifier_blocks(f: Formula) -> Formula:
    """Order each maximal run of like quantifiers by variable."""
    if isinstance(f, Quantifier):
        cls = type(f)
        block = []
        while isinstance(f, cls):
            block.append(f.var)
            f = f.body
        body = sort_quantifier_blocks(f)
        for v in sorted(block, reverse=True):
            body = cls(v, body)
        return body
    kids = children(f)
    if not kids:
        return f
    return with_children(f, tuple(sort_quantifier_blocks(k) for k in kids))


def conj(items: List[Formula]) -> Formula:
    out = items[0]
    for item in items[1:]:
        out = And(out, item)
    return out


def disj(items: List[Formula]) -> Formula:
    out = items[0]
    for item in items[1:]:
        out = Or(out, item)
    return out
