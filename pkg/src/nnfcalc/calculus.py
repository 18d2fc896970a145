"""Checked rewrite rules of the NNF calculus, derivations and certificates.

Every rule is applied at an explicit path.  ``apply_rule`` either returns the
rewritten formula or raises ``PatternMismatch`` / ``SideConditionViolated``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from .formula import (
    Y0, And, Exists, Forall, Formula, Not, Or, Path, Quantifier, SAT,
    Sat, Var, all_vars, canonical_key, contains_forall, free_vars, replace_at,
    subformula, substitute,
)
from .normal import dnf_matrix, rebind
from .syntax import ParseError, _parse_var, parse, to_text

PN_RULES = tuple(f"PN{i}" for i in range(1, 11))
RULES = PN_RULES + ("SUB1", "SUB2", "ForallE", "AndI", "ExistsM", "SAT1", "SAT2")

# rule -> (quantifier, connective, side of the conjunct/disjunct that keeps the quantifier)
_PN_SHAPE = {
    "PN1": (Forall, And, 1), "PN2": (Forall, And, 0),
    "PN3": (Forall, Or, 1), "PN4": (Forall, Or, 0),
    "PN5": (Exists, And, 1), "PN6": (Exists, And, 0),
    "PN7": (Exists, Or, 1), "PN8": (Exists, Or, 0),
}


class RuleError(ValueError):
    pass


class PatternMismatch(RuleError):
    pass


class SideConditionViolated(RuleError):
    pass


def _at(f: Formula, path: Path) -> Formula:
    try:
        return subformula(f, path)
    except IndexError as exc:
        raise PatternMismatch(f"no subformula at path {format_path(path)}") from exc


def _pn(node: Formula, rule: str, direction: str) -> Formula:
    if rule in ("PN9", "PN10"):
        q, c = (Forall, And) if rule == "PN9" else (Exists, Or)
        if direction == "lr":
            if not (isinstance(node, q) and isinstance(node.body, c)):
                raise PatternMismatch(f"{rule} needs a {q.__name__} over {c.__name__}")
            return c(q(node.var, node.body.left), q(node.var, node.body.right))
        if not (isinstance(node, c) and isinstance(node.left, q) and isinstance(node.right, q)):
            raise PatternMismatch(f"{rule} needs two {q.__name__} operands")
        if node.left.var != node.right.var:
            raise SideConditionViolated(f"{rule} needs both quantifiers to bind the same variable")
        return q(node.left.var, c(node.left.body, node.right.body))

    q, c, keep = _PN_SHAPE[rule]
    if direction == "lr":
        if not (isinstance(node, q) and isinstance(node.body, c)):
            raise PatternMismatch(f"{rule} needs a {q.__name__} over {c.__name__}")
        parts = [node.body.left, node.body.right]
        other = parts[1 - keep]
        if node.var in free_vars(other):
            raise SideConditionViolated(f"{node.var} occurs in the part moved out of its scope")
        parts[keep] = q(node.var, parts[keep])
        return c(parts[0], parts[1])
    if not isinstance(node, c):
        raise PatternMismatch(f"{rule} right-to-left needs a {c.__name__}")
    parts = [node.left, node.right]
    inner = parts[keep]
    if not isinstance(inner, q):
        raise PatternMismatch(f"{rule} right-to-left needs a {q.__name__} on side {keep}")
    if inner.var in free_vars(parts[1 - keep]):
        raise SideConditionViolated(f"{inner.var} would capture an occurrence")
    parts[keep] = inner.body
    return q(inner.var, c(parts[0], parts[1]))


def apply_rule(f: Formula, rule: str, position: Path, payload: Optional[Dict] = None) -> Formula:
    payload = payload or {}
    position = tuple(position)
    if rule not in RULES:
        raise PatternMismatch(f"unknown rule {rule}")
    node = _at(f, position)

    if rule in PN_RULES:
        direction = payload.get("dir", "lr")
        if direction not in ("lr", "rl"):
            raise PatternMismatch(f"unknown direction {direction}")
        return replace_at(f, position, _pn(node, rule, direction))

    if rule in ("SUB1", "SUB2"):
        q = Exists if rule == "SUB1" else Forall
        if not isinstance(node, q):
            raise PatternMismatch(f"{rule} needs a {q.__name__} binder")
        new = payload["new"]
        if "old" in payload and payload["old"] != node.var:
            raise PatternMismatch(f"binder binds {node.var}, not {payload['old']}")
        if new in all_vars(node.body):
            raise SideConditionViolated(f"{new} already occurs in the scope")
        return replace_at(f, position, q(new, substitute(node.body, {node.var: new})))

    if rule == "ForallE":
        if not isinstance(node, Forall):
            raise PatternMismatch("ForallE needs a universal quantifier")
        if "var" in payload and payload["var"] != node.var:
            raise PatternMismatch(f"quantifier binds {node.var}, not {payload['var']}")
        by = payload["by"]
        if by in _bound_inside(node.body):
            raise SideConditionViolated(f"{by} is bound inside the eliminated scope")
        result = substitute(node.body, {node.var: by})
        binder = _enclosing_binder(f, position, by)
        if isinstance(binder, Exists):
            return replace_at(f, position, result)
        if binder is None and by == Y0 and Y0 not in all_vars(f):
            return Exists(Y0, replace_at(f, position, result))
        if binder is None and by == Y0:
            raise SideConditionViolated("y0 already occurs in the formula")
        raise SideConditionViolated(f"the universal quantifier is not in the scope of an existential binding {by}")

    if rule == "AndI":
        left = rebind(node, lambda _p, n: n.var.sub(1))
        right = rebind(node, lambda _p, n: n.var.sub(2))
        return replace_at(f, position, And(left, right))

    if rule == "ExistsM":
        if not (isinstance(node, Exists) and isinstance(node.body, And)):
            raise PatternMismatch("ExistsM needs an existential quantifier over a conjunction")
        mu = node.var
        m1, m2 = mu.sub(1), mu.sub(2)
        if {m1, m2} & all_vars(node):
            raise SideConditionViolated(f"{m1} or {m2} already occurs")
        left = Exists(m1, substitute(node.body.left, {mu: m1}))
        right = Exists(m2, substitute(node.body.right, {mu: m2}))
        return replace_at(f, position, And(left, right))

    if rule == "SAT1":
        if not isinstance(node, And) or not (isinstance(node.left, Sat) or isinstance(node.right, Sat)):
            raise PatternMismatch("SAT1 needs a conjunction with a sat operand")
        return replace_at(f, position, node.right if isinstance(node.left, Sat) else node.left)

    if not isinstance(node, Or) or not (isinstance(node.left, Sat) or isinstance(node.right, Sat)):
        raise PatternMismatch("SAT2 needs a disjunction with a sat operand")
    return replace_at(f, position, SAT)


def _bound_inside(f: Formula) -> set:
    out = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, Quantifier):
            out.add(g.var)
            stack.append(g.body)
        elif isinstance(g, (And, Or)):
            stack.extend((g.left, g.right))
    return out


def _enclosing_binder(f: Formula, path: Path, v: Var) -> Optional[Formula]:
    found = None
    node = f
    for step in path:
        if isinstance(node, Quantifier) and node.var == v:
            found = node
        node = subformula(node, (step,))
    return found


# --- explicit contradictions ------------------------------------------------------


def is_explicit_contradiction(f: Formula) -> bool:
    if contains_forall(f) or any(isinstance(n, Sat) for n in _nodes(f)):
        return False
    _, matrix = dnf_matrix(f)
    for row in matrix:
        pos = {(l.pred, l.args) for l in row if l.positive}
        if not any((l.pred, l.args) in pos for l in row if not l.positive):
            return False
    return True


def _nodes(f: Formula):
    stack = [f]
    while stack:
        g = stack.pop()
        yield g
        if isinstance(g, (And, Or)):
            stack.extend((g.left, g.right))
        elif isinstance(g, (Forall, Exists, Not)):
            stack.append(g.body)


# --- certificates ---------------------------------------------------------------


@dataclass(frozen=True)
class DerivationStep:
    rule: str
    position: Path
    payload: Dict = field(default_factory=dict, hash=False, compare=True)
    result: Optional[Formula] = None


@dataclass
class Certificate:
    initial: Formula
    steps: List[DerivationStep]
    final: Formula
    refutation: bool = True


@dataclass(frozen=True)
class Verification:
    verified: bool
    step: int = 0
    reason: str = ""

    def __str__(self) -> str:
        return "VERIFIED" if self.verified else f"REJECTED step {self.step}: {self.reason}"


class Derivation:
    """Accumulates rule applications starting from a formula."""

    def __init__(self, start: Formula):
        self.initial = start
        self.current = start
        self.steps: List[DerivationStep] = []

    def apply(self, rule: str, position: Path, **payload) -> Formula:
        self.current = apply_rule(self.current, rule, position, payload)
        self.steps.append(DerivationStep(rule, tuple(position), payload, self.current))
        return self.current

    def extend(self, steps: List[DerivationStep]) -> Formula:
        for s in steps:
            self.apply(s.rule, s.position, **s.payload)
        return self.current

    def certificate(self, final: Optional[Formula] = None, refutation: bool = True) -> Certificate:
        return Certificate(self.initial, list(self.steps), final or self.current, refutation)


def verify_certificate(c: Certificate) -> Verification:
    current = c.initial
    for k, step in enumerate(c.steps, start=1):
        try:
            current = apply_rule(current, step.rule, step.position, step.payload)
        except (RuleError, KeyError, TypeError) as exc:
            return Verification(False, k, f"{step.rule} does not apply: {exc}")
        if step.result is not None and canonical_key(step.result) != canonical_key(current):
            return Verification(False, k, "recorded result differs from the re-derived formula")
    last = len(c.steps)
    if canonical_key(current) != canonical_key(c.final):
        return Verification(False, last, "final formula differs from the derived formula")
    if c.refutation and not is_explicit_contradiction(c.final):
        return Verification(False, last, "final formula is not an explicit contradiction")
    return Verification(True)


# --- serialization ----------------------------------------------------------------


def format_path(path: Path) -> str:
    return ".".join(str(i) for i in path) if path else "-"


def _parse_path(text: str) -> Path:
    if text == "-":
        return ()
    return tuple(int(p) for p in text.split("."))


def _payload_text(payload: Dict) -> Dict[str, str]:
    return {k: str(v) for k, v in sorted(payload.items())}


def _payload_value(key: str, value: str):
    return value if key == "dir" else _parse_var(value)


def step_line(step: DerivationStep) -> str:
    parts = [step.rule, "@", format_path(step.position)]
    parts += [f"{k}={v}" for k, v in _payload_text(step.payload).items()]
    return " ".join(parts)


def certificate_to_text(c: Certificate) -> str:
    lines = [f"initial: {to_text(c.initial)}"]
    lines.append(f"claim: {'refutation' if c.refutation else 'none'}")
    lines += [step_line(s) for s in c.steps]
    lines.append(f"final: {to_text(c.final)}")
    return "\n".join(lines) + "\n"


def certificate_from_text(text: str) -> Certificate:
    initial = final = None
    refutation = True
    steps = []
    for n, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("initial:"):
            initial = parse(line[8:], allow_y0=True)
        elif line.startswith("final:"):
            final = parse(line[6:], allow_y0=True)
        elif line.startswith("claim:"):
            refutation = line[6:].strip() == "refutation"
        else:
            fields = line.split()
            if len(fields) < 3 or fields[1] != "@":
                raise ParseError("malformed certificate step", n, 1)
            payload = {}
            for item in fields[3:]:
                key, _, value = item.partition("=")
                payload[key] = _payload_value(key, value)
            try:
                path = _parse_path(fields[2])
            except ValueError as exc:
                raise ParseError("malformed path", n, 1) from exc
            steps.append(DerivationStep(fields[0], path, payload))
    if initial is None or final is None:
        raise ParseError("certificate needs initial and final lines")
    return Certificate(initial, steps, final, refutation)


def certificate_to_json(c: Certificate) -> dict:
    return {
        "initial": to_text(c.initial),
        "claim": "refutation" if c.refutation else None,
        "steps": [
            {
                "rule": s.rule,
                "path": list(s.position),
                "payload": _payload_text(s.payload),
                "result": to_text(s.result) if s.result is not None else None,
            }
            for s in c.steps
        ],
        "final": to_text(c.final),
    }


def certificate_from_json(doc: dict) -> Certificate:
    steps = []
    for s in doc["steps"]:
        payload = {k: _payload_value(k, v) for k, v in s.get("payload", {}).items()}
        result = parse(s["result"], allow_y0=True) if s.get("result") else None
        steps.append(DerivationStep(s["rule"], tuple(s["path"]), payload, result))
    return Certificate(
        parse(doc["initial"], allow_y0=True), steps,
        parse(doc["final"], allow_y0=True), doc.get("claim") == "refutation",
    )


def load_certificate(text: str) -> Certificate:
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return certificate_from_json(json.loads(text))
    return certificate_from_text(text)
