"""Command-line front end.

Every operation of the library is exposed as a subcommand with
deterministic, machine-parsable output: fractions are printed "p/q",
quadratic surds "(a+b*sqrt(D))/c", dyadic rationals "m/2^n", and
enclosures as a lower/upper pair of exact fractions.  Fields whose values
are inherently approximate carry an `_approx` suffix; everything else
parses back to the exact internal value.

Exit status: 0 on success, 1 on domain errors (a fraction outside an
operation's domain, an unsupported equation, a failing `verify` run),
2 on usage errors such as malformed literals.

The optional `--threads` flag is accepted on every subcommand for
interface compatibility; all computation is single-threaded and the flag
never changes output bytes.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import cycle, repeat

from .analysis import (
    _guard_bits,
    _jump_table,
    _length_bounds,
    approx_constant_detail,
    interval_freeness,
    lyapunov_estimate,
    markov_interval,
    mcshane_partial_sum,
    saltus_mu,
)
from .exact import DyadicRational, QuadraticSurd, surd_enclose
from .farey import (
    farey_path_to,
    question_mark_farey,
    question_mark_of_word,
    question_mark_salem,
)
from .markov import (
    SUPPORTED_EQUATIONS,
    enumerate_tree,
    generalized_enumerate,
    mu,
    solve_congruence,
    unicity_scan,
)
from .slopes import bundle_invariants, epsilon, is_exceptional_slope, normalize_slope
from .verify import run_all

__all__ = ["OutputRecord", "main"]


# -- canonical text forms ------------------------------------------------------

_FRACTION_RE = re.compile(r"^([+-]?\d+)(?:/(\d+))?$")
_DYADIC_RE = re.compile(r"^([+-]?\d+)/2\^(\d+)$")


def fraction_str(f: Fraction) -> str:
    return f"{f.numerator}/{f.denominator}"


def _parse_fraction(token: str) -> Fraction:
    m = _FRACTION_RE.match(token)
    if m is None:
        raise argparse.ArgumentTypeError(f"malformed fraction literal {token!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise argparse.ArgumentTypeError(f"zero denominator in fraction literal {token!r}")
    return Fraction(num, den)


def _parse_dyadic(token: str) -> DyadicRational:
    m = _DYADIC_RE.match(token)
    if m is not None:
        return DyadicRational(int(m.group(1)), int(m.group(2)))
    f = _FRACTION_RE.match(token)
    if f is None:
        raise argparse.ArgumentTypeError(f"malformed dyadic literal {token!r}; use M/2^N or p/q")
    den = int(f.group(2)) if f.group(2) is not None else 1
    if den == 0:
        raise argparse.ArgumentTypeError(f"zero denominator in dyadic literal {token!r}")
    if den & (den - 1):
        # Well-formed fraction, but outside the dyadic domain.
        raise argparse.ArgumentTypeError(
            f"dyadic literal {token!r} must have a power-of-two denominator")
    return DyadicRational.from_fraction(Fraction(int(f.group(1)), den))


def _decimal_str(f: Fraction, digits: int, round_up: bool) -> str:
    """f rendered with the given digits, rounded toward the chosen direction."""
    scale = 10 ** digits
    num = f.numerator * scale
    d = -((-num) // f.denominator) if round_up else num // f.denominator
    sign = "-" if d < 0 else ""
    d = abs(d)
    return f"{sign}{d // scale}.{d % scale:0{digits}d}"


def _outward(lo: Fraction, hi: Fraction, digits: int) -> tuple[Fraction, Fraction]:
    """Round an enclosure outward onto the 10**-digits grid; still exact bounds."""
    scale = 10 ** digits
    out_lo = Fraction(lo.numerator * scale // lo.denominator, scale)
    out_hi = Fraction(-((-hi.numerator * scale) // hi.denominator), scale)
    return out_lo, out_hi


def _surd_decimal(x: QuadraticSurd, digits: int, round_up: bool) -> str:
    lo, hi = surd_enclose(x, digits + 2)
    return _decimal_str(hi if round_up else lo, digits, round_up)


# -- output record --------------------------------------------------------------


@dataclass
class OutputRecord:
    """One result record; the json format emits it verbatim."""

    command: str
    inputs: dict[str, str]
    outputs: dict[str, object] = field(default_factory=dict)
    status: str = "ok"
    error_detail: str = ""

    def to_json(self) -> str:
        return json.dumps(
            {
                "command": self.command,
                "inputs": self.inputs,
                "outputs": self.outputs,
                "status": self.status,
                "error_detail": self.error_detail,
            },
            indent=2,
        )


def _plain_lines(outputs: dict[str, object]) -> str:
    lines = []
    for key, value in outputs.items():
        if isinstance(value, bool):
            value = "yes" if value else "no"
        elif isinstance(value, (list, tuple)):
            value = " ".join(str(v) for v in value)
        elif value is None:
            value = "-"
        lines.append(f"{key}: {value}")
    return "\n".join(lines)


def _csv_text(header: list[str], rows: list[list[object]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()[:-1]


# -- subcommand handlers ----------------------------------------------------------

Handled = tuple[OutputRecord, str]


def _cmd_enumerate(args: argparse.Namespace) -> Handled:
    rows = []
    vertices = []
    for word, triple in enumerate_tree(args.depth):
        entry = {
            "depth": len(word),
            "word": word,
            "left": fraction_str(triple.f1),
            "value": fraction_str(triple.f3),
            "right": fraction_str(triple.f2),
        }
        vertices.append(entry)
        rows.append([entry["depth"], word, entry["left"], entry["value"], entry["right"]])
    record = OutputRecord(
        "enumerate",
        {"depth": str(args.depth)},
        {"count": len(vertices), "vertices": vertices},
    )
    return record, _csv_text(["depth", "word", "left", "value", "right"], rows)


def _cmd_mu(args: argparse.Namespace) -> Handled:
    image = mu(args.x)
    outputs = {
        "value": fraction_str(image.value),
        "word": image.word,
        "depth": image.depth,
    }
    record = OutputRecord("mu", {"x": fraction_str(args.x)}, outputs)
    return record, _plain_lines(outputs)


def _cmd_epsilon(args: argparse.Namespace) -> Handled:
    value = epsilon(args.x)
    outputs = {"value": fraction_str(value)}
    record = OutputRecord("epsilon", {"x": str(args.x)}, outputs)
    return record, _plain_lines(outputs)


def _cmd_slope(args: argparse.Namespace) -> Handled:
    decision = is_exceptional_slope(args.x)
    norm = decision.normalization
    outputs: dict[str, object] = {
        "normalized": fraction_str(decision.reduced),
        "shift": norm.n,
        "sign": norm.sign,
        "member": decision.accepted,
    }
    plain = dict(outputs)
    if decision.accepted:
        inv = bundle_invariants(decision.reduced)
        extra: dict[str, object] = {
            "word": decision.witness,
            "rank": inv.rank,
            "c1": inv.c1,
            "s": inv.s,
            "c2": inv.c2,
            "form": list(inv.form),
            "discriminant": inv.form_discriminant,
        }
        outputs.update(extra)
        plain.update(extra)
        plain["form"] = "({}, {}, {})".format(*inv.form)
    else:
        outputs["stopped_at_denominator"] = decision.stopped_at_denominator
        plain["stopped_at_denominator"] = decision.stopped_at_denominator
    record = OutputRecord("slope", {"x": fraction_str(args.x)}, outputs)
    return record, _plain_lines(plain)


def _cmd_qmark(args: argparse.Namespace) -> Handled:
    x = args.x
    if not Fraction(0) <= x <= Fraction(1):
        raise ValueError(f"question mark is evaluated on [0, 1]; got {fraction_str(x)}")
    if args.method == "farey":
        y = question_mark_farey(x)
    elif args.method == "salem":
        y = question_mark_salem(x)
    elif x == 0:
        y = DyadicRational(0, 0)
    elif x == 1:
        y = DyadicRational(1, 0)
    else:
        y = question_mark_of_word(farey_path_to(x))
    outputs = {"value": str(y), "fraction": fraction_str(y.value), "method": args.method}
    record = OutputRecord("qmark", {"x": fraction_str(x), "method": args.method}, outputs)
    return record, _plain_lines(outputs)


def _cmd_verify(args: argparse.Namespace) -> Handled:
    results = run_all(args.depth)
    lines = []
    for r in results:
        suffix = f" ({r.detail})" if r.detail else ""
        if r.passed:
            lines.append(f"PASS {r.name}: {r.checked} checks{suffix}")
        else:
            lines.append(f"FAIL {r.name}: {r.failures} of {r.checked} checks failed{suffix}")
    passed = sum(1 for r in results if r.passed)
    lines.append(f"{passed}/{len(results)} invariant suites passed")
    record = OutputRecord(
        "verify",
        {"depth": str(args.depth)},
        {
            "depth": args.depth,
            "results": [
                {
                    "name": r.name,
                    "passed": r.passed,
                    "checked": r.checked,
                    "failures": r.failures,
                    "detail": r.detail,
                }
                for r in results
            ],
            "all_passed": passed == len(results),
        },
    )
    if passed != len(results):
        record.status = "error"
        record.error_detail = f"{len(results) - passed} invariant suites failed"
    return record, "\n".join(lines)


def _cmd_approx_const(args: argparse.Namespace) -> Handled:
    constant, witness = approx_constant_detail(args.x)
    outputs = {
        "constant": fraction_str(constant),
        "witness": fraction_str(witness),
        "at_least_one_third": constant >= Fraction(1, 3),
    }
    record = OutputRecord("approx-const", {"x": fraction_str(args.x)}, outputs)
    return record, _plain_lines(outputs)


def _require_markov_fraction(x: Fraction):
    decision = is_exceptional_slope(x)
    if not decision.accepted:
        raise ValueError(
            f"{fraction_str(x)} does not normalize to a Markov fraction"
        )
    return decision.markov_fraction()


def _cmd_interval(args: argparse.Namespace) -> Handled:
    f = _require_markov_fraction(args.x)
    iv = markov_interval(f)
    outputs: dict[str, object] = {
        "center": fraction_str(iv.center),
        "lo": str(iv.lo),
        "hi": str(iv.hi),
        "length": str(iv.length),
        "lo_approx": _surd_decimal(iv.lo, 12, round_up=False),
        "hi_approx": _surd_decimal(iv.hi, 12, round_up=True),
    }
    inputs = {"x": fraction_str(args.x)}
    if args.freeness_bound is not None:
        report = interval_freeness(f, args.freeness_bound)
        outputs["freeness_bound"] = args.freeness_bound
        outputs["free"] = report.free
        outputs["intruders"] = [fraction_str(g) for g in report.intruders]
        inputs["freeness_bound"] = str(args.freeness_bound)
    record = OutputRecord("interval", inputs, outputs)
    return record, _plain_lines(outputs)


def _enclosure_outputs(lo: Fraction, hi: Fraction, digits: int) -> dict[str, object]:
    out_lo, out_hi = _outward(lo, hi, digits)
    return {
        "enclosure": [fraction_str(out_lo), fraction_str(out_hi)],
        "lower_approx": _decimal_str(out_lo, digits, round_up=False),
        "upper_approx": _decimal_str(out_hi, digits, round_up=True),
    }


def _cmd_mcshane(args: argparse.Namespace) -> Handled:
    lo, hi = mcshane_partial_sum(args.depth, args.precision)
    outputs = _enclosure_outputs(lo, hi, args.precision)
    gap_lo, gap_hi = _outward(Fraction(1, 2) - hi, Fraction(1, 2) - lo, args.precision)
    outputs["gap_below_half"] = [fraction_str(gap_lo), fraction_str(gap_hi)]
    record = OutputRecord(
        "mcshane",
        {"depth": str(args.depth), "precision": str(args.precision)},
        outputs,
    )
    return record, _plain_lines(outputs)


def _cmd_saltus(args: argparse.Namespace) -> Handled:
    lo, hi = saltus_mu(args.x, args.depth, args.precision)
    outputs = _enclosure_outputs(lo, hi, args.precision)
    record = OutputRecord(
        "saltus",
        {
            "x": fraction_str(args.x),
            "depth": str(args.depth),
            "precision": str(args.precision),
        },
        outputs,
    )
    return record, _plain_lines(outputs)


def _cmd_lyapunov(args: argparse.Namespace) -> Handled:
    turns = repeat("L") if args.word == "const" else cycle("LR")
    estimate = lyapunov_estimate(turns, args.steps)
    outputs = {"estimate_approx": estimate}
    record = OutputRecord(
        "lyapunov", {"word": args.word, "steps": str(args.steps)}, outputs
    )
    return record, _plain_lines({"estimate_approx": repr(estimate)})


def _cmd_unicity(args: argparse.Namespace) -> Handled:
    report = unicity_scan(args.depth)
    outputs = {
        "vertices": report.vertex_count,
        "distinct_denominators": report.distinct_denominators,
        "all_unique": report.all_unique,
        "duplicates": [
            {"denominator": q, "fractions": [fraction_str(v) for v in vals]}
            for q, vals in report.duplicates
        ],
    }
    record = OutputRecord("unicity", {"depth": str(args.depth)}, outputs)
    plain = {k: outputs[k] for k in ("vertices", "distinct_denominators", "all_unique")}
    text = _plain_lines(plain)
    for q, vals in report.duplicates:
        text += f"\nduplicate {q}: " + " ".join(fraction_str(v) for v in vals)
    return record, text


def _cmd_triples(args: argparse.Namespace) -> Handled:
    eq = SUPPORTED_EQUATIONS[args.equation]
    triples = sorted(generalized_enumerate(eq, args.depth))
    record = OutputRecord(
        "triples",
        {"equation": args.equation, "depth": str(args.depth)},
        {"count": len(triples), "triples": [list(t) for t in triples]},
    )
    text = "\n".join(f"{x} {y} {z}" for x, y, z in triples)
    return record, text


def _cmd_congruence(args: argparse.Namespace) -> Handled:
    if args.modulus < 1:
        raise ValueError(f"modulus must be positive; got {args.modulus}")
    solutions = solve_congruence(args.modulus)
    record = OutputRecord(
        "congruence",
        {"modulus": str(args.modulus)},
        {"modulus": args.modulus, "solutions": solutions, "count": len(solutions)},
    )
    return record, " ".join(str(s) for s in solutions)


_PLOT_DIGITS = 12


def _cmd_plot_mu(args: argparse.Namespace) -> Handled:
    if args.grid < 2:
        raise ValueError(f"grid must have at least 2 sample points; got {args.grid}")
    if args.depth < 0:
        raise ValueError("depth must be nonnegative")
    guard = _guard_bits(_PLOT_DIGITS)
    jumps = sorted(
        (pos, *_length_bounds(q, guard)) for pos, q in _jump_table(args.depth)
    )
    seed_lo, seed_hi = _length_bounds(1, guard)
    end_lo, end_hi = _length_bounds(2, guard)
    rows: list[list[object]] = []
    points = []
    cum_lo, cum_hi = Fraction(0), Fraction(0)
    j = 0
    for i in range(args.grid):
        x = Fraction(i, args.grid - 1)
        while j < len(jumps) and jumps[j][0] < x:
            cum_lo += jumps[j][1]
            cum_hi += jumps[j][2]
            j += 1
        lo, hi = cum_lo, cum_hi
        if j < len(jumps) and jumps[j][0] == x:
            # A sample on a jump takes the symmetric midpoint value.
            lo += jumps[j][1] / 2
            hi += jumps[j][2] / 2
        if x > 0:
            lo += seed_lo / 2
            hi += seed_hi / 2
        if x == 1:
            lo += end_lo / 2
            hi += end_hi / 2
        lo, hi = _outward(lo, hi, _PLOT_DIGITS)
        rows.append(
            [
                fraction_str(x),
                fraction_str(lo),
                fraction_str(hi),
                _decimal_str(x, _PLOT_DIGITS, round_up=False),
                _decimal_str(lo, _PLOT_DIGITS, round_up=False),
            ]
        )
        points.append({"x": fraction_str(x), "mu_lower": fraction_str(lo),
                       "mu_upper": fraction_str(hi)})
    record = OutputRecord(
        "plot-mu",
        {"grid": str(args.grid), "depth": str(args.depth)},
        {"count": len(points), "points": points},
    )
    header = ["x", "mu_lower", "mu_upper", "x_approx", "mu_approx"]
    return record, _csv_text(header, rows)


# -- parser ------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--threads",
        type=int,
        default=1,
        metavar="N",
        help="accepted for compatibility; computation is single-threaded "
             "and output never depends on this flag",
    )

    parser = argparse.ArgumentParser(
        prog="markovfrac",
        description="Exact arithmetic for the Markov fraction tree, "
                    "exceptional bundle slopes, and their invariants.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, handler, help_text: str, formats: tuple[str, ...] = ("plain", "json"),
            default_format: str = "plain"):
        p = sub.add_parser(name, parents=[common], help=help_text, description=help_text)
        p.add_argument("--format", choices=formats, default=default_format)
        p.set_defaults(handler=handler)
        return p

    p = add("enumerate", _cmd_enumerate, "Breadth-first vertices of the fraction tree.",
            formats=("plain", "json", "csv"), default_format="plain")
    p.add_argument("--depth", type=int, required=True, metavar="N")

    p = add("mu", _cmd_mu, "Transport of a rational in [0, 1] into the tree.")
    p.add_argument("x", type=_parse_fraction, metavar="A/B")

    p = add("epsilon", _cmd_epsilon, "Slope of a dyadic rational.")
    p.add_argument("x", type=_parse_dyadic, metavar="M/2^N")

    p = add("slope", _cmd_slope, "Membership test and invariants for a slope.")
    p.add_argument("x", type=_parse_fraction, metavar="P/Q")

    p = add("qmark", _cmd_qmark, "Question mark function of a rational in [0, 1].")
    p.add_argument("x", type=_parse_fraction, metavar="A/B")
    p.add_argument("--method", choices=("farey", "salem", "word"), default="farey")

    p = add("verify", _cmd_verify, "Run the full invariant suite.")
    p.add_argument("--depth", type=int, required=True, metavar="N")

    p = add("approx-const", _cmd_approx_const, "Best-approximation constant of a rational.")
    p.add_argument("x", type=_parse_fraction, metavar="P/Q")

    p = add("interval", _cmd_interval, "Exact free interval around a Markov fraction.")
    p.add_argument("x", type=_parse_fraction, metavar="P/Q")
    p.add_argument("--freeness-bound", type=int, metavar="B",
                   help="also scan every fraction with denominator <= B")

    p = add("mcshane", _cmd_mcshane, "Enclosure of the interval-length sum (limit 1/2).")
    p.add_argument("--depth", type=int, required=True, metavar="N")
    p.add_argument("--precision", type=int, required=True, metavar="D")

    p = add("saltus", _cmd_saltus, "Enclosure of the truncated jump sum at a point.")
    p.add_argument("x", type=_parse_fraction, metavar="X")
    p.add_argument("--depth", type=int, required=True, metavar="N")
    p.add_argument("--precision", type=int, required=True, metavar="D")

    p = add("lyapunov", _cmd_lyapunov, "Denominator growth estimate along a branch.")
    p.add_argument("--word", choices=("const", "alternating"), required=True)
    p.add_argument("--steps", type=int, required=True, metavar="N")

    p = add("unicity", _cmd_unicity, "Scan for duplicate denominators in the tree.")
    p.add_argument("--depth", type=int, required=True, metavar="N")

    p = add("triples", _cmd_triples, "Vieta closure of (1,1,1) for a supported equation.",
            formats=("plain", "json"))
    p.add_argument("--equation", choices=sorted(SUPPORTED_EQUATIONS), required=True)
    p.add_argument("--depth", type=int, required=True, metavar="N")

    p = add("congruence", _cmd_congruence, "Solutions of x^2 + 1 = 0 modulo Q in [0, Q/2].")
    p.add_argument("modulus", type=int, metavar="Q")

    p = add("plot-mu", _cmd_plot_mu, "CSV samples of the transport step function.",
            formats=("csv", "json"), default_format="csv")
    p.add_argument("--grid", type=int, required=True, metavar="K")
    p.add_argument("--depth", type=int, required=True, metavar="N")

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        record, text = args.handler(args)
    except (ValueError, ZeroDivisionError) as exc:
        detail = str(exc)
        if args.format == "json":
            print(OutputRecord(args.command, {}, {}, "error", detail).to_json())
        print(f"error: {detail}", file=sys.stderr)
        return 1
    print(record.to_json() if args.format == "json" else text)
    return 0 if record.status == "ok" else 1


if __name__ == "__main__":
    sys.exit(main())
