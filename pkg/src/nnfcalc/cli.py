"""Command-line front end: ``nnfcalc decide|prune|verify|pipeline-dump|oracle-check``."""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional, TextIO

from .calculus import (
    certificate_to_json, certificate_to_text, load_certificate, step_line, verify_certificate,
)
from .decision import Decision, PairDecision, Verdict, analyse_psi, decide_foldnf
from .formula import Formula, disj
from .normal import rectify, to_foldnf, to_nnf
from .oracle import BudgetExceeded, equivalent_on, skolem_decide
from .pipeline import connected_pairs, extract_subformula, literal_text
from .pruner import prune, unifiable_pairs
from .syntax import ParseError, parse, to_text

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CODES = {Verdict.CONTRADICTORY: 10, Verdict.SATISFIABLE: 20, Verdict.UNKNOWN: 30}
EXIT_ORACLE_MISMATCH = 40


class OracleMismatch(Exception):
    pass


def _strip_comments(text: str) -> str:
    return "\n".join(line for line in text.splitlines() if not line.lstrip().startswith("#"))


def _read_formula(text: str) -> Formula:
    return rectify(to_nnf(parse(_strip_comments(text))))


def _pair_decisions(d: Decision) -> List[PairDecision]:
    return [p for part in d.parts for p in part.pairs]


def _decisive(part: Decision) -> Optional[PairDecision]:
    for p in part.pairs:
        if p.decision.contradictory:
            return p
    return part.pairs[0] if part.pairs else None


# --- decide ------------------------------------------------------------------------


def _disjunct_json(part: Decision) -> dict:
    best = _decisive(part)
    stages = best.decision.stages if best else None
    chosen = stages.chosen if stages else None
    return {
        "formula": to_text(part.formula),
        "verdict": part.verdict.value,
        "witness": part.witness,
        "pairs": [
            {"l1": literal_text(r.pair.l1), "l2": literal_text(r.pair.l2),
             "unifiable": r.unifiable, "failed": list(r.failed)}
            for r in unifiable_pairs(part.formula)
        ],
        "sigma": str(stages.sigma) if stages else None,
        "optimal_prenex": to_text(chosen.formula) if chosen else None,
        "certificate": certificate_to_json(part.certificate) if part.certificate else None,
    }


def _write_decision(d: Decision, out: TextIO, emit_certificate: bool) -> None:
    out.write(d.verdict.value + "\n")
    for i, part in enumerate(d.parts, 1):
        line = f"disjunct {i}: {part.verdict.value}"
        if part.witness:
            line += f" ({part.witness})"
        out.write(line + "\n")
        for p in part.pairs:
            tag = p.decision.verdict.value
            if p.decision.witness:
                tag += f" ({p.decision.witness})"
            out.write(f"  pair {p.pair}: {tag}\n")
        if emit_certificate and part.certificate:
            out.write(certificate_to_text(part.certificate))


def _oracle_check(f: Formula, disjuncts: List[Formula], d: Decision, max_size: int, err: TextIO) -> None:
    sizes = tuple(range(1, max_size + 1))

    def equivalent(a, b, what):
        try:
            if not equivalent_on(a, b, sizes):
                raise OracleMismatch(f"{what} is not model-equivalent: {to_text(a)} vs {to_text(b)}")
        except BudgetExceeded as exc:
            err.write(f"oracle: skipped {what} ({exc})\n")

    if disjuncts:
        equivalent(f, disj(disjuncts), "disjunct split")
    for p in _pair_decisions(d):
        if skolem_decide(p.psi) != p.decision.contradictory:
            raise OracleMismatch(f"skolem unification disagrees on {to_text(p.psi)}")
        stages = p.decision.stages
        if stages is None:
            continue
        equivalent(stages.psi, stages.psi1, "scope minimization")
        for form in stages.prenexes:
            equivalent(stages.psi2, form.formula, "prenex form")
        if p.decision.certificate and not verify_certificate(p.decision.certificate).verified:
            raise OracleMismatch(f"certificate for {to_text(p.psi)} rejected")


def _decide(args, text: str, out: TextIO, err: TextIO) -> int:
    f = _read_formula(text)
    disjuncts = to_foldnf(f)
    d = decide_foldnf(disjuncts)
    if args.trace:
        for p in _pair_decisions(d):
            err.write(f"psi {to_text(p.psi)}\n")
            cert = p.decision.certificate
            for step in cert.steps if cert else ():
                err.write(f"  {step_line(step)}\n")
    if args.oracle:
        _oracle_check(f, disjuncts, d, args.max_model_size, err)
    if args.json:
        doc = {"status": d.verdict.value, "disjuncts": [_disjunct_json(p) for p in d.parts]}
        out.write(json.dumps(doc, indent=2) + "\n")
    else:
        _write_decision(d, out, args.emit_certificate)
    return EXIT_CODES[d.verdict]


# --- other commands ------------------------------------------------------------------


def _prune(args, text: str, out: TextIO, err: TextIO) -> int:
    out.write(to_text(prune(_read_formula(text))) + "\n")
    return EXIT_OK


def _verify(args, text: str, out: TextIO, err: TextIO) -> int:
    result = verify_certificate(load_certificate(text))
    if args.json:
        out.write(json.dumps({"verified": result.verified, "step": result.step, "reason": result.reason}) + "\n")
    else:
        out.write(str(result) + "\n")
    return EXIT_OK if result.verified else EXIT_USAGE


def _pipeline_dump(args, text: str, out: TextIO, err: TextIO) -> int:
    f = _read_formula(text)
    docs = []
    for k, disjunct in enumerate(to_foldnf(f), 1):
        if not args.json:
            out.write(f"disjunct {k}: {to_text(disjunct)}\n")
        for pair in connected_pairs(disjunct):
            st = analyse_psi(extract_subformula(disjunct, pair))
            doc = {
                "disjunct": k,
                "pair": str(pair),
                "psi": to_text(st.psi),
                "psi1": to_text(st.psi1),
                "psi2": to_text(st.psi2),
                "sigma": str(st.sigma),
                "prenexes": [to_text(p.formula) for p in st.prenexes],
                "optimal": to_text(st.chosen.formula) if st.chosen else None,
            }
            docs.append(doc)
            if not args.json:
                for name in ("pair", "psi", "psi1", "psi2", "sigma"):
                    out.write(f"  {name}: {doc[name]}\n")
                for prenex in doc["prenexes"]:
                    out.write(f"  prenex: {prenex}\n")
                out.write(f"  optimal: {doc['optimal'] or 'none'}\n")
    if args.json:
        out.write(json.dumps(docs, indent=2) + "\n")
    return EXIT_OK


def _oracle_only(args, text: str, out: TextIO, err: TextIO) -> int:
    args.oracle = True
    f = _read_formula(text)
    disjuncts = to_foldnf(f)
    d = decide_foldnf(disjuncts)
    _oracle_check(f, disjuncts, d, args.max_model_size, err)
    out.write(f"oracle agrees: {d.verdict.value}\n")
    return EXIT_OK


COMMANDS = {
    "decide": _decide,
    "prune": _prune,
    "verify": _verify,
    "pipeline-dump": _pipeline_dump,
    "oracle-check": _oracle_only,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nnfcalc", description=__doc__)
    parser.add_argument("command", choices=list(COMMANDS))
    parser.add_argument("file", nargs="?", help="input file; stdin when absent")
    parser.add_argument("--json", action="store_true")
    parser.add_argument("--emit-certificate", action="store_true")
    parser.add_argument("--oracle", action="store_true")
    parser.add_argument("--max-model-size", type=int, default=2, choices=(1, 2, 3))
    parser.add_argument("--trace", action="store_true")
    return parser


def run(argv: List[str], stdin: TextIO = sys.stdin, out: TextIO = sys.stdout, err: TextIO = sys.stderr) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        if args.file:
            with open(args.file, encoding="utf-8") as fh:
                text = fh.read()
        else:
            text = stdin.read()
        return COMMANDS[args.command](args, text, out, err)
    except ParseError as exc:
        err.write(f"parse error: {exc}\n")
        return EXIT_USAGE
    except (OSError, ValueError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    except OracleMismatch as exc:
        err.write(f"oracle mismatch: {exc}\n")
        return EXIT_ORACLE_MISMATCH


def main() -> None:
    sys.exit(run(sys.argv[1:]))
