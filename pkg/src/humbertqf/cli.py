"""Command-line front end.

Subcommands: classify, construct, verify, reproduce, report.  Every command
accepts --json for machine-readable output; integers in JSON payloads are
decimal strings (values in construction outputs exceed 2^53).  Exit codes:
0 success (and verified, where applicable), 2 invalid input, 3 not
geometric, 4 search exhausted, 5 verification failed.

Form literals are "[a,b,c]" (binary) or "[a,b,c,r,s,t]" (ternary) with
optional whitespace and arbitrary-precision decimal integers.  The
environment variable HUMBERT_MAX_SEARCH overrides the default search budget.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field

from . import binform, humbert, ternform
from .binform import BinaryQF
from .errors import NotGeometricError, SearchExhaustedError
from .ternform import TernaryQF

EXIT_OK = 0
EXIT_INVALID_INPUT = 2
EXIT_NOT_GEOMETRIC = 3
EXIT_SEARCH_EXHAUSTED = 4
EXIT_VERIFICATION_FAILED = 5

DEFAULT_BUDGET = 10**6


@dataclass
class CommandResult:
    status: str  # ok | not-geometric | search-exhausted | invalid-input
    payload: object = None
    diagnostics: list[str] = field(default_factory=list)
    exit_code: int = EXIT_OK


class FormSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(message)
        self.position = position


def parse_form_literal(text: str) -> list[int]:
    """Parse "[a,b,c]" or "[a,b,c,r,s,t]" into a list of ints; report error positions."""
    stripped = text.strip()
    if not stripped.startswith("[") or not stripped.endswith("]"):
        raise FormSyntaxError("form literal must be bracketed like [a,b,c]", 0)
    body = stripped[1:-1]
    parts = body.split(",")
    values = []
    position = 1
    for part in parts:
        token = part.strip()
        try:
            values.append(int(token))
        except ValueError:
            raise FormSyntaxError(f"invalid integer {token!r}", position) from None
        position += len(part) + 1
    if len(values) not in (3, 6):
        raise FormSyntaxError(f"expected 3 or 6 coefficients, got {len(values)}", 0)
    return values


def parse_ternary(text: str) -> TernaryQF:
    values = parse_form_literal(text)
    if len(values) != 6:
        raise FormSyntaxError("this command needs a ternary form [a,b,c,r,s,t]", 0)
    return TernaryQF(*values)


def _stringify(value):
    """Recursively render integers as decimal strings for stable JSON output."""
    if isinstance(value, bool):
        return value
    if isinstance(value, int):
        return str(value)
    if isinstance(value, (list, tuple)):
        return [_stringify(v) for v in value]
    if isinstance(value, dict):
        return {k: _stringify(v) for k, v in value.items()}
    return value


def emit(result: CommandResult, as_json: bool, human_lines: list[str] | None = None) -> int:
    if as_json:
        doc = {
            "status": result.status,
            "payload": _stringify(result.payload),
            "diagnostics": result.diagnostics,
        }
        print(json.dumps(doc, sort_keys=True, separators=(",", ":")))
    else:
        for line in human_lines or []:
            print(line)
        for diag in result.diagnostics:
            print(f"note: {diag}")
    return result.exit_code


def _budget(args) -> int:
    if args.max_search is not None:
        return args.max_search
    env = os.environ.get("HUMBERT_MAX_SEARCH")
    if env:
        return int(env)
    return DEFAULT_BUDGET


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_classify(args) -> int:
    try:
        f = parse_ternary(args.form)
    except FormSyntaxError as exc:
        return emit(
            CommandResult("invalid-input", None, [f"{exc} (position {exc.position})"], EXIT_INVALID_INPUT),
            args.json,
            [f"invalid input: {exc}"],
        )
    cls = ternform.is_geometric(f, max_shell=args.max_search)
    payload = {
        "geometric": cls.geometric,
        "case": cls.case,
        "witness": list(cls.witness) if cls.witness else None,
        "disc": f.disc(),
        "content": f.content(),
    }
    try:
        inv = ternform.basic_invariants(f)
        payload["I1"] = inv.I1
        payload["I2"] = inv.I2
    except ValueError:
        payload["I1"] = None
        payload["I2"] = None
    lines = [
        f"form {list(f.coefficients())}: disc {f.disc()}, content {f.content()}",
        f"geometric: {cls.geometric}" + (f" ({cls.case} case)" if cls.case else ""),
    ]
    if cls.witness:
        x, y, z, n = cls.witness
        lines.append(f"square witness: f({x}, {y}, {z}) gives n = {n}")
    if cls.detail:
        lines.append(f"detail: {cls.detail}")
    if payload["I1"] is not None:
        lines.append(f"invariants: I1 = {payload['I1']}, I2 = {payload['I2']}")
    return emit(CommandResult("ok", payload), args.json, lines)


def _construct_result(f: TernaryQF, mode: str, budget: int) -> tuple[CommandResult, list[str]]:
    descriptor = humbert.construct(f, mode=mode, budget=budget)
    ok, diagnostics = humbert.verify_detailed(descriptor, f)
    payload = {
        "descriptor": descriptor.to_json(),
        "verified": ok,
        "mode": mode,
    }
    s = descriptor.triple
    lines = [
        f"input f = {list(f.coefficients())}  (disc {f.disc()}, content {f.content()})",
        f"step 1  degree form class: disc D = {descriptor.D}, content kappa = {descriptor.kappa}",
        f"step 2  prime p = {descriptor.p} represented by the reciprocal form",
        f"step 3  degree form q~ = {list(descriptor.degree_form.coefficients())}"
        f"  = {descriptor.kappa} * [{descriptor.p}, {descriptor.bprime}, "
        f"{(descriptor.bprime ** 2 - descriptor.Dprime) // (4 * descriptor.p)}]",
        f"step 4/5  polarization triple s = ({s.n}, {s.m}, {s.k}) in P({s.d})",
        f"step 6  E = C/O_{descriptor.D}, E' = C/L, "
        f"L = <{descriptor.p}, (-{descriptor.bprime} + sqrt({descriptor.Dprime}))/2>, "
        f"theta = D({s.n}, {s.m}, {s.k}h) with deg(h) = {descriptor.isogeny_degree}",
        f"step 7  invariant = {list(descriptor.verification_form.coefficients())}",
        f"        reduces to {list(descriptor.reduced_verification_form.coefficients())}",
        f"verified: {ok}",
    ]
    exit_code = EXIT_OK if ok else EXIT_VERIFICATION_FAILED
    return CommandResult("ok", payload, diagnostics, exit_code), lines


def cmd_construct(args) -> int:
    try:
        f = parse_ternary(args.form)
    except FormSyntaxError as exc:
        return emit(
            CommandResult("invalid-input", None, [f"{exc} (position {exc.position})"], EXIT_INVALID_INPUT),
            args.json,
            [f"invalid input: {exc}"],
        )
    try:
        result, lines = _construct_result(f, args.mode, _budget(args))
    except NotGeometricError as exc:
        return emit(
            CommandResult("not-geometric", None, [str(exc)], EXIT_NOT_GEOMETRIC),
            args.json,
        )
    except SearchExhaustedError as exc:
        return emit(
            CommandResult(
                "search-exhausted", None, [str(exc), "raise --max-search to continue"], EXIT_SEARCH_EXHAUSTED
            ),
            args.json,
        )
    return emit(result, args.json, lines)


def cmd_verify(args) -> int:
    try:
        f = parse_ternary(args.form)
        if args.descriptor == "-":
            data = json.load(sys.stdin)
        else:
            with open(args.descriptor, "r", encoding="utf-8") as handle:
                data = json.load(handle)
        if "descriptor" in data:
            data = data["descriptor"]
        descriptor = humbert.SurfaceDescriptor.from_json(data)
    except FormSyntaxError as exc:
        return emit(
            CommandResult("invalid-input", None, [f"{exc} (position {exc.position})"], EXIT_INVALID_INPUT),
            args.json,
            [f"invalid input: {exc}"],
        )
    except (OSError, KeyError, ValueError, json.JSONDecodeError) as exc:
        return emit(
            CommandResult("invalid-input", None, [f"cannot read descriptor: {exc}"], EXIT_INVALID_INPUT),
            args.json,
            [f"invalid descriptor: {exc}"],
        )
    ok, diagnostics = humbert.verify_detailed(descriptor, f)
    payload = {"verified": ok}
    code = EXIT_OK if ok else EXIT_VERIFICATION_FAILED
    return emit(CommandResult("ok", payload, diagnostics, code), args.json, [f"verified: {ok}"])


# Published fixtures: the worked imprimitive example and the four
# dihedral-symmetry rows.  Row 4's printed triple is inconsistent with the
# P(kappa*p) convention used everywhere else (see README), so only its
# verification verdict is compared.
WORKED_EXAMPLE = {
    "form": (4, 12, 28, 0, 4, 4),
    "q": (3, 2, 25),
    "reciprocal": (84, 27, 11, 2, -12, -28),
    "p": 11,
    "qtilde": (11, 12, 10),
    "phi": (10, 14, 6),
    "s": (2, 50, 3),
    "verification_form": (4, 2832500, 1336, -121200, -144, 6732),
}

TABLE_ROWS = [
    {"form": (4, 4, 5, 4, 4, 4), "D": -11, "qtilde": (3, 1, 1), "p": 3, "s": (2, 122, 9), "flag": None},
    {"form": (4, 4, 9, 4, 4, 4), "D": -23, "qtilde": (3, 1, 2), "p": 3, "s": (2, 122, 9), "flag": None},
    {"form": (4, 4, 5, 0, 0, -4), "D": -15, "qtilde": (23, 13, 2), "p": 23, "s": (2, 104, 3), "flag": None},
    {
        "form": (4, 4, 9, 0, 0, -4),
        "D": -27,
        "qtilde": (39, 21, 3),
        "p": 13,
        "s": (2, 7, 1),
        "flag": "expected-discrepancy",
    },
]


def reproduce_example(budget: int) -> dict:
    """Re-run the worked construction and compare every intermediate."""
    f = TernaryQF(*WORKED_EXAMPLE["form"])
    expected_q = BinaryQF(*WORKED_EXAMPLE["q"])
    computed_q = humbert.qf_imprimitive(f)
    fb, _ = ternform.reciprocal(f.divide(4))
    descriptor = humbert.construct(f, mode="full", budget=budget)
    witness, _ = ternform.prime_represented_ternary(fb, abs(descriptor.D), budget)
    _, phi = ternform.produce_phi(f.divide(2), witness)
    checks = {
        "q": computed_q == expected_q,
        "reciprocal": fb.coefficients() == WORKED_EXAMPLE["reciprocal"],
        "p": descriptor.p == WORKED_EXAMPLE["p"],
        "qtilde": descriptor.degree_form.coefficients() == WORKED_EXAMPLE["qtilde"],
        "phi": phi.coefficients() == WORKED_EXAMPLE["phi"],
        "s": (descriptor.triple.n, descriptor.triple.m, descriptor.triple.k) == WORKED_EXAMPLE["s"],
        "verification_form": descriptor.verification_form.coefficients()
        == WORKED_EXAMPLE["verification_form"],
        "reduces_to_input": descriptor.reduced_verification_form == ternform.eisenstein_reduce(f),
    }
    verified = humbert.verify(descriptor, f)
    return {
        "target": "example",
        "checks": checks,
        "all_intermediates_match": all(checks.values()),
        "verified": verified,
        "descriptor": descriptor.to_json(),
    }


def reproduce_table(budget: int) -> dict:
    """Re-run the four published rows; mismatched tie-breaks become notes, not failures."""
    rows = []
    for row in TABLE_ROWS:
        f = TernaryQF(*row["form"])
        descriptor = humbert.construct(f, mode="full", budget=budget)
        verified = humbert.verify(descriptor, f)
        computed = {
            "D": descriptor.D,
            "qtilde": list(descriptor.degree_form.coefficients()),
            "p": descriptor.p,
            "s": [descriptor.triple.n, descriptor.triple.m, descriptor.triple.k],
        }
        expected = {
            "D": row["D"],
            "qtilde": list(row["qtilde"]),
            "p": row["p"],
            "s": list(row["s"]),
        }
        if row["flag"] == "expected-discrepancy":
            match = None
            note = "expected-discrepancy: published triple fails the P(kappa*p) invariant; comparing verification only"
        else:
            match = computed == expected
            note = (
                None
                if match
                else "tie-break divergence: deterministic search order differs from the published run"
            )
        rows.append(
            {
                "form": list(row["form"]),
                "expected": expected,
                "computed": computed,
                "match": match,
                "verified": verified,
                "note": note,
            }
        )
    return {"target": "table", "rows": rows, "all_verified": all(r["verified"] for r in rows)}


def cmd_reproduce(args) -> int:
    budget = _budget(args)
    if args.target == "example":
        payload = reproduce_example(budget)
        lines = [f"worked example  f = {list(WORKED_EXAMPLE['form'])}"]
        for name, ok in payload["checks"].items():
            lines.append(f"  {name:20s} {'match' if ok else 'MISMATCH'}")
        lines.append(f"verified: {payload['verified']}")
    else:
        payload = reproduce_table(budget)
        lines = []
        for row in payload["rows"]:
            status = {True: "match", False: "MISMATCH", None: "flagged"}[row["match"]]
            lines.append(
                f"{row['form']}: {status}, verified={row['verified']}"
                + (f"  [{row['note']}]" if row["note"] else "")
            )
    diagnostics = []
    if args.target == "table":
        diagnostics = [r["note"] for r in payload["rows"] if r["note"]]
    return emit(CommandResult("ok", payload, diagnostics), args.json, lines)


def cmd_report(args) -> int:
    try:
        f = parse_ternary(args.form)
    except FormSyntaxError as exc:
        return emit(
            CommandResult("invalid-input", None, [f"{exc} (position {exc.position})"], EXIT_INVALID_INPUT),
            args.json,
            [f"invalid input: {exc}"],
        )
    cls = ternform.is_geometric(f)
    if not cls.geometric:
        return emit(
            CommandResult("not-geometric", None, [f"not-geometric: {cls.detail}"], EXIT_NOT_GEOMETRIC),
            args.json,
        )
    payload = {}
    lines = [f"form {list(f.coefficients())}"]
    if args.subcovers is not None:
        degrees = humbert.subcover_degrees(f, args.subcovers)
        payload["subcover_degrees"] = degrees
        lines.append(f"elliptic subcover degrees up to {args.subcovers}: {degrees}")
    if args.d6:
        verdict = humbert.has_D6(f)
        payload["d6"] = verdict
        lines.append(f"dihedral automorphism group of order 12: {verdict}")
    if not payload:
        lines.append("nothing requested; pass --subcovers N and/or --d6")
    return emit(CommandResult("ok", payload), args.json, lines)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="humbertqf",
        description="Construct CM product surfaces with a prescribed refined Humbert invariant",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_mode=False):
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument(
            "--max-search",
            type=int,
            default=None,
            help="search budget override (also via HUMBERT_MAX_SEARCH)",
        )
        if with_mode:
            p.add_argument("--mode", choices=("full", "simplified"), default="full")

    p_classify = sub.add_parser("classify", help="test the geometric-form conditions")
    p_classify.add_argument("form")
    add_common(p_classify)
    p_classify.set_defaults(func=cmd_classify)

    p_construct = sub.add_parser("construct", help="run the construction pipeline")
    p_construct.add_argument("form")
    add_common(p_construct, with_mode=True)
    p_construct.set_defaults(func=cmd_construct)

    p_verify = sub.add_parser("verify", help="verify a stored descriptor against a form")
    p_verify.add_argument("form")
    p_verify.add_argument("--descriptor", required=True, help="descriptor JSON file, or - for stdin")
    add_common(p_verify)
    p_verify.set_defaults(func=cmd_verify)

    p_reproduce = sub.add_parser("reproduce", help="re-run the published fixtures")
    p_reproduce.add_argument("target", choices=("example", "table"))
    add_common(p_reproduce)
    p_reproduce.set_defaults(func=cmd_reproduce)

    p_report = sub.add_parser("report", help="curve-geometry reports for a geometric form")
    p_report.add_argument("form")
    p_report.add_argument("--subcovers", type=int, default=None, metavar="N")
    p_report.add_argument("--d6", action="store_true")
    add_common(p_report)
    p_report.set_defaults(func=cmd_report)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
