"""Command line interface: ``qmtoeplitz <command> [options]``.

Commands: ``validate``, ``chain``, ``colimit``, ``decompose``, ``eval`` and
``oracle``.  ``--format structured`` prints one JSON object per line with a
fixed key order; ``text`` (the default) is for people.

Exit codes: 0 success, 1 input error, 2 validation failure, 3 check failure.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from typing import List, Optional

from . import __version__
from .algebra import T, V, Vstar, unit
from .colimit import build_descriptor, check_cocone, exhaustion_check
from .config import load_config
from .decomposition import product_descriptor
from .errors import (
    ConfigError,
    CycleDetected,
    FactorizationViolation,
    LabelError,
    NotDirected,
    ParseError,
    PathInconsistency,
    UnknownElement,
    UnrepresentableExponent,
)
from .expr import evaluate
from .rational import DenomSequence
from .sampling import random_element, random_integer_element
from .system import FactorSystem, extract_chain
from .truncation import TruncationGrid, interior_product_check, isometry_certificate

EXIT_OK, EXIT_INPUT, EXIT_INVALID, EXIT_CHECK = 0, 1, 2, 3

DEFAULT_SEED = 0
DEFAULT_SAMPLES = 20
DEFAULT_L = 128


class _Out:
    """Collects output records; text lines or JSON lines depending on the format."""

    def __init__(self, fmt: str, stream):
        self.structured = fmt == "structured"
        self.stream = stream

    def emit(self, record: dict, text: Optional[str] = None):
        if self.structured:
            self.stream.write(json.dumps(record) + "\n")
        elif text is not None:
            self.stream.write(text + "\n")


def _frac(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class _Fail(Exception):
    def __init__(self, code, message, record=None):
        super().__init__(message)
        self.code = code
        self.record = record or {}


_INVALID = (PathInconsistency, FactorizationViolation, CycleDetected, LabelError)


def _load(args) -> FactorSystem:
    if not args.input:
        raise _Fail(EXIT_INPUT, "--input is required for this command")
    try:
        cfg = load_config(args.input)
    except OSError as exc:
        raise _Fail(EXIT_INPUT, f"cannot read {args.input}: {exc.strerror or exc}")
    except ConfigError as exc:
        raise _Fail(EXIT_INPUT, f"{args.input}: {exc}", {"line": exc.line, "column": exc.column})
    except UnicodeDecodeError as exc:
        raise _Fail(EXIT_INPUT, f"{args.input}: not valid UTF-8 ({exc.reason})")
    try:
        return cfg.system()
    except UnknownElement as exc:
        raise _Fail(EXIT_INPUT, str(exc))
    except _INVALID as exc:
        record = {}
        triple = getattr(exc, "triple", None)
        if triple is not None:
            record["triple"] = [str(t) for t in triple]
        raise _Fail(EXIT_INVALID, str(exc), record)


def _base(args, system: FactorSystem):
    base = args.base or system.meta.get("base")
    if base is None:
        least = system.poset.minimum()
        base = least if least is not None else system.elements[0]
    if base not in system.poset:
        raise _Fail(EXIT_INPUT, f"unknown base element {base!r}")
    return base


def _depth(args, system: FactorSystem) -> Optional[int]:
    if args.depth is not None:
        return args.depth
    if "depth" in system.meta:
        return int(system.meta["depth"])
    return None


def cmd_validate(args, out: _Out) -> int:
    system = _load(args)
    pairs = sum(1 for _ in system.poset.comparable_pairs())
    out.emit(
        {"command": "validate", "status": "valid", "elements": len(system.elements), "comparable_pairs": pairs},
        f"valid: {len(system.elements)} elements, {pairs} comparable pairs",
    )
    for (a, b), n in sorted(system.labels.items()):
        if a != b:
            out.emit({"lower": str(a), "upper": str(b), "label": n}, f"  n[{b},{a}] = {n}")
    return EXIT_OK


def cmd_chain(args, out: _Out) -> int:
    system = _load(args)
    base = _base(args, system)
    try:
        chain = extract_chain(system, base, _depth(args, system))
    except NotDirected as exc:
        raise _Fail(EXIT_INVALID, str(exc), {"pair": [str(p) for p in exc.pair]})
    out.emit(
        {
            "command": "chain",
            "base": str(base),
            "chain": [str(c) for c in chain.members],
            "labels": list(chain.labels),
            "ladder": list(chain.ladder),
            "complete": chain.complete,
        },
        f"chain from {base}: {' <= '.join(map(str, chain.members))}\n"
        f"labels: {' < '.join(map(str, chain.labels))}\n"
        f"ladder: {', '.join(map(str, chain.ladder))}" + ("" if chain.complete else " (truncated)"),
    )
    for b in sorted(system.poset.up(base)):
        n = system.labels[(base, b)]
        if n not in chain.ladder:
            continue
        c, k = chain.witness(n)
        out.emit(
            {"element": str(b), "n_ba": n, "witness": str(c), "n_ca": system.labels[(base, c)], "k": k},
            f"  {b}: n = {n} divides n[{c}] = {system.labels[(base, c)]} (k = {k})",
        )
    return EXIT_OK


def _colimit_report(system: FactorSystem, base, depth, samples, out: _Out, component=None) -> bool:
    desc = build_descriptor(system, base, depth)
    plain = desc.is_plain_toeplitz()
    head = {"command": "colimit"} if component is None else {"command": "decompose", "component": component}
    head.update(desc.as_dict())
    head["plain_toeplitz"] = plain
    lines = [
        f"base: {base}",
        f"chain: {' <= '.join(map(str, desc.chain.members))}",
        f"M = ({', '.join(map(str, desc.M.terms))})",
        "group: " + ("Z, plain Toeplitz algebra" if plain else desc.describe_group()),
        "exponents: " + ", ".join(f"{b} -> {_frac(x)}" for b, x in sorted(desc.exponents.items())),
    ]
    out.emit(head, "\n".join(lines))
    cocone = check_cocone(desc, samples)
    exhaust = exhaustion_check(desc)
    for rec in cocone.records + exhaust.records:
        out.emit(rec.as_dict(), "  " + rec.text())
    ok = cocone.ok and exhaust.ok
    out.emit({"check": "summary", "cocone_ok": cocone.ok, "exhaustion_ok": exhaust.ok},
             f"cocone: {'ok' if cocone.ok else 'FAILED'}; exhaustion: {'ok' if exhaust.ok else 'FAILED'}")
    return ok


def _samples(args) -> list:
    rng = random.Random(args.seed)
    n = DEFAULT_SAMPLES if args.samples is None else args.samples
    return [random_integer_element(rng) for _ in range(n)]


def cmd_colimit(args, out: _Out) -> int:
    if args.decompose:
        return cmd_decompose(args, out)
    system = _load(args)
    base = _base(args, system)
    try:
        ok = _colimit_report(system, base, _depth(args, system), _samples(args), out)
    except NotDirected as exc:
        raise _Fail(EXIT_INVALID, f"{exc} (use --decompose for non-directed posets)",
                    {"pair": [str(p) for p in exc.pair]})
    return EXIT_OK if ok else EXIT_CHECK


def cmd_decompose(args, out: _Out) -> int:
    system = _load(args)
    prod = product_descriptor(system, _depth(args, system))
    out.emit(
        {"command": "decompose", "components": [[str(e) for e in c] for c in prod.components.as_lists()]},
        f"{len(prod)} maximal directed component(s)",
    )
    samples = _samples(args)
    ok = True
    for i, (comp, desc) in enumerate(zip(prod.components, prod.factors)):
        out.emit({"component": i, "members": [str(e) for e in sorted(comp)]},
                 f"\ncomponent {i}: {{{', '.join(map(str, sorted(comp)))}}}")
        ok &= _colimit_report(desc.system, desc.base, _depth(args, system), samples, out, component=i)
    return EXIT_OK if ok else EXIT_CHECK


def _parse_cone(text: str) -> DenomSequence:
    try:
        terms = [int(t) for t in text.replace(" ", "").split(",") if t]
        return DenomSequence(terms)
    except ValueError as exc:
        raise _Fail(EXIT_INPUT, f"bad --cone {text!r}: expected comma separated naturals ({exc})")


def cmd_eval(args, out: _Out) -> int:
    cone = _parse_cone(args.cone) if args.cone else None
    try:
        x = evaluate(args.expression, cone)
    except ParseError as exc:
        caret = " " * exc.position + "^"
        raise _Fail(EXIT_INPUT, f"parse error: {exc}\n  {args.expression}\n  {caret}", {"position": exc.position})
    except ValueError as exc:
        raise _Fail(EXIT_INPUT, str(exc))
    out.emit({"command": "eval", "input": args.expression, "result": str(x), "terms": len(x)}, str(x))
    return EXIT_OK


def cmd_oracle(args, out: _Out) -> int:
    tol = args.tol
    L = DEFAULT_L if args.L is None else args.L
    rng = random.Random(args.seed)
    n = DEFAULT_SAMPLES if args.samples is None else args.samples
    D = args.D if args.D is not None else 6
    dens = [d for d in range(1, D + 1) if D % d == 0]
    worst = 0.0
    for _ in range(n):
        x = random_element(rng, max_terms=4, max_value=2, denominators=dens)
        y = random_element(rng, max_terms=4, max_value=2, denominators=dens)
        worst = max(worst, interior_product_check(x, y, TruncationGrid(D, L)))
    interior_ok = worst <= 1e-12
    out.emit({"check": "interior", "pairs": n, "D": D, "L": L, "max_deviation": worst, "ok": interior_ok},
             f"interior product check: {n} pairs, D={D}, L={L}, max deviation {worst:.3e} -> {'ok' if interior_ok else 'FAILED'}")

    if args.input:
        system = _load(args)
        lams = sorted({v for v in system.labels.values() if v > 1}) or [2]
    else:
        lams = [2, 3]
    lengths = sorted({max(1, L // 8), max(1, L // 4), max(1, L // 2), L})
    ok = interior_ok
    for name, x in (("T + T*", T() + Vstar(1)), ("1", unit()), ("V(1)", V(1))):
        for lam in lams:
            try:
                cert = isometry_certificate(x, lam, lengths, D=args.D, tolerance=tol)
            except UnrepresentableExponent as exc:
                raise _Fail(EXIT_INPUT, str(exc), {"required_D": exc.required})
            ok &= cert.passed
            out.emit(
                {
                    "check": "isometry",
                    "element": name,
                    "lambda": _frac(Fraction(lam)),
                    "D": cert.D,
                    "ladder": [[L_, v] for L_, v in cert.ladder],
                    "rescaled_ladder": [[L_, v] for L_, v in cert.rescaled_ladder],
                    "gap": cert.gap,
                    "monotone": cert.monotone,
                    "ok": cert.passed,
                },
                f"isometry {name}, lambda={lam}: bounds {cert.ladder[-1][1]:.6f} vs "
                f"{cert.rescaled_ladder[-1][1]:.6f} at L={cert.ladder[-1][0]}, gap {cert.gap:.2e} "
                f"-> {'ok' if cert.passed else 'FAILED'}",
            )
    return EXIT_OK if ok else EXIT_CHECK


GRAMMAR_HELP = """\
config file grammar (UTF-8):
  [meta]          optional; keys: name, description, base, depth
  name = diamond
  [elements]      identifiers separated by spaces or commas
  a b c d
  [covers]        one 'lower < upper : label' per line, label >= 1
  a < b : 2
  '#' starts a comment; unknown sections or keys are errors.

expression grammar (eval):
  atoms V(p), V*(q), 1, i, integers and a/b; operators + - * ^n and
  parentheses; juxtaposition multiplies.  Example: "(1 - V(1)*V*(1))^2".
"""


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="poset config file")
    common.add_argument("--base", help="base element a (default: meta base, else the minimum, else the smallest id)")
    common.add_argument("--depth", type=int, help="number of label values to use for the chain (default: all)")
    common.add_argument("--D", type=int, help="grid denominator (default: least representing the elements)")
    common.add_argument("--L", type=int, help=f"grid length (default {DEFAULT_L})")
    common.add_argument("--samples", type=int, help=f"random samples (default {DEFAULT_SAMPLES})")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help=f"random seed (default {DEFAULT_SEED})")
    common.add_argument("--format", choices=("text", "structured"), default="text")
    common.add_argument("--decompose", action="store_true", help="work per maximal directed component")

    parser = argparse.ArgumentParser(
        prog="qmtoeplitz",
        description="Inductive systems of Toeplitz algebras and the semigroup algebras C*_r(Q_M+).",
        epilog=GRAMMAR_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("validate", parents=[common], help="check the factorization equalities")
    sub.add_parser("chain", parents=[common], help="print the cofinal chain and divisibility witnesses")
    sub.add_parser("colimit", parents=[common], help="describe the limit as C*_r(Q_M+) and run the checks")
    sub.add_parser("decompose", parents=[common], help="maximal directed components and their limits")
    p_eval = sub.add_parser("eval", parents=[common], help="evaluate an algebra expression")
    p_eval.add_argument("expression")
    p_eval.add_argument("--cone", help="denominator sequence M as 'm1,m2,...'; exponents must lie in Q_M+")
    p_oracle = sub.add_parser("oracle", parents=[common], help="numeric truncation checks")
    p_oracle.add_argument("--tol", type=float, default=0.02, help="isometry certificate tolerance (default 0.02)")
    return parser


COMMANDS = {
    "validate": cmd_validate,
    "chain": cmd_chain,
    "colimit": cmd_colimit,
    "decompose": cmd_decompose,
    "eval": cmd_eval,
    "oracle": cmd_oracle,
}


def main(argv: Optional[List[str]] = None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    out = _Out(args.format, stdout)
    try:
        return COMMANDS[args.command](args, out)
    except _Fail as exc:
        if out.structured:
            stdout.write(json.dumps({"status": "error", "exit": exc.code, "message": str(exc), **exc.record}) + "\n")
        stderr.write(f"error: {exc}\n")
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
