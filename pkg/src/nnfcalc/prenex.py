"""Substitution lists and optimized prenex forms of a two-literal formula."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, Hashable, Iterable, List, Sequence, Tuple

from .calculus import Derivation, DerivationStep, apply_rule
from .formula import (
    Y0, And, Exists, Forall, Formula, Quantifier, Var, binder_paths, subformula, walk,
)
from .pipeline import ConnectedPair


def _has_quantifier(f: Formula) -> bool:
    return any(isinstance(n, Quantifier) for _, n in walk(f))


def cluster_substitutions(
    left: Sequence[Hashable], right: Sequence[Hashable], is_x: Callable[[Hashable], bool]
) -> Dict[Hashable, set]:
    """Map every x token to the y tokens it has to take when the two argument
    lists are unified position by position.

    x tokens aligned with each other end up in one cluster and share every y
    token aligned with a member; clusters that meet no y token map to y0.
    """
    parent: Dict[Hashable, Hashable] = {}

    def find(t):
        while parent[t] != t:
            parent[t] = parent[parent[t]]
            t = parent[t]
        return t

    links: List[Tuple[Hashable, Hashable]] = []
    for a, b in zip(left, right):
        for t in (a, b):
            if is_x(t):
                parent.setdefault(t, t)
        if is_x(a) and is_x(b):
            parent[find(a)] = find(b)
        elif is_x(a) or is_x(b):
            links.append((a, b) if is_x(a) else (b, a))
    ys: Dict[Hashable, set] = {}
    for x, y in links:
        ys.setdefault(find(x), set()).add(y)
    return {x: set(ys.get(find(x), {Y0})) for x in parent}


@dataclass(frozen=True)
class SubstitutionList:
    entries: Tuple[Tuple[Var, Tuple[Var, ...]], ...]

    @property
    def ambiguous(self) -> bool:
        return any(len(ys) != 1 for _, ys in self.entries)

    def as_dict(self) -> Dict[Var, Tuple[Var, ...]]:
        return dict(self.entries)

    def target(self, x: Var) -> Var:
        ys = self.as_dict()[x]
        if len(ys) != 1:
            raise ValueError(f"{x} has no single substitution")
        return ys[0]

    def __str__(self) -> str:
        return "{" + ", ".join(
            "{" + ",".join(str(v) for v in (x,) + ys) + "}" for x, ys in self.entries
        ) + "}"


def substitution_list(pair: ConnectedPair) -> SubstitutionList:
    mapping = cluster_substitutions(pair.l1.args, pair.l2.args, lambda v: v.is_universal)
    return SubstitutionList(tuple(sorted((x, tuple(sorted(ys))) for x, ys in mapping.items())))


# --- optimized prenex forms -----------------------------------------------------


@dataclass
class PrenexForm:
    formula: Formula
    steps: List[DerivationStep] = field(default_factory=list)

    @property
    def prefix(self) -> List[Tuple[str, Var]]:
        out = []
        f = self.formula
        while isinstance(f, Quantifier):
            out.append(("A" if isinstance(f, Forall) else "E", f.var))
            f = f.body
        return out

    @property
    def matrix(self) -> Formula:
        f = self.formula
        while isinstance(f, Quantifier):
            f = f.body
        return f

    def prefix_text(self) -> str:
        return " ".join(f"{q} {v}" for q, v in self.prefix)


def _split_prefix(f: Formula) -> Tuple[Tuple[int, ...], Formula]:
    path: Tuple[int, ...] = ()
    while isinstance(f, Quantifier):
        f = f.body
        path += (0,)
    return path, f


def _pull(form: PrenexForm, rule: str, path: Tuple[int, ...]) -> PrenexForm:
    new = apply_rule(form.formula, rule, path, {"dir": "rl"})
    step = DerivationStep(rule, path, {"dir": "rl"}, new)
    return PrenexForm(new, form.steps + [step])


def enumerate_optimized_prenexes(psi2: Formula) -> List[PrenexForm]:
    """All prenex forms that pull existential quantifiers out first, branching
    only when both conjuncts lead with a universal quantifier and still hold
    existential ones."""
    pending = [PrenexForm(psi2)]
    done: List[PrenexForm] = []
    seen = set()
    while pending:
        form = pending.pop(0)
        while True:
            path, core = _split_prefix(form.formula)
            if not isinstance(core, And) or not (
                _has_quantifier(core.left) or _has_quantifier(core.right)
            ):
                key = tuple(form.prefix)
                if key not in seen:
                    seen.add(key)
                    done.append(form)
                break
            a, b = core.left, core.right
            if isinstance(a, Exists):
                form = _pull(form, "PN6", path)
            elif isinstance(b, Exists):
                form = _pull(form, "PN5", path)
            elif _only_universal(a) and isinstance(b, Forall):
                form = _pull(form, "PN1", path)
            elif _only_universal(b):
                form = _pull(form, "PN2", path)
            else:
                pending[:0] = [_pull(form, "PN2", path), _pull(form, "PN1", path)]
                break
    return done


def _only_universal(f: Formula) -> bool:
    return not any(isinstance(n, Exists) for _, n in walk(f))


def optimal_prenexes(forms: Iterable[PrenexForm], sigma: SubstitutionList) -> List[PrenexForm]:
    out = []
    for form in forms:
        order = {v: i for i, (_, v) in enumerate(form.prefix)}
        ok = all(
            order[y] < order[x]
            for x, ys in sigma.entries
            for y in ys
            if y != Y0
        )
        if ok:
            out.append(form)
    return out


_PULL_RULE = {
    (Forall, "And", 1): "PN1", (Forall, "And", 0): "PN2",
    (Forall, "Or", 1): "PN3", (Forall, "Or", 0): "PN4",
    (Exists, "And", 1): "PN5", (Exists, "And", 0): "PN6",
    (Exists, "Or", 1): "PN7", (Exists, "Or", 0): "PN8",
}


def pull_in_order(d: Derivation, order: Sequence[Var]) -> None:
    """Move the binders of ``order`` to the front of the formula, in that
    order, by right-to-left PN steps recorded on ``d``.

    Each binder is lifted over the connectives above it until its parent is
    a quantifier; binders listed earlier are then already outside.
    """
    for v in order:
        while True:
            path = binder_paths(d.current)[v]
            if not path:
                break
            parent = subformula(d.current, path[:-1])
            if isinstance(parent, Quantifier):
                if any(not isinstance(subformula(d.current, path[:i]), Quantifier)
                       for i in range(len(path))):
                    raise ValueError(f"{v} sits below a binder that is not yet outside")
                break
            node = subformula(d.current, path)
            rule = _PULL_RULE[(type(node), type(parent).__name__, path[-1])]
            d.apply(rule, path[:-1], dir="rl")
