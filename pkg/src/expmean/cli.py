"""Command line front end.

Subcommands
-----------
mean          exact mean value of g over the zeros of f
density       mean number of zeros per unit height
zeros         locate zeros in a horizontal strip numerically
verify        compare the exact mean against strip averages over growing heights
laurent-check rational frequencies only: cross-check the residue route,
              the root sum of the image polynomial, and the mean-value bridge

Problem files are JSON objects with keys ``f``, ``g`` (optional, default the
constant 1), ``basis`` (optional, default ``["1"]``) and ``mode`` (optional,
``"float"`` or ``"exact"``, default ``"float"``).  Each term is an object
``{"coeff": [re, im], "freq": ...}`` where a frequency is a rational string
such as ``"3/2"`` or a vector of rational strings matching the basis length.
In exact mode the coefficient parts must be integers or rational strings.

Reports are JSON envelopes with sorted keys and floats printed to 17
significant digits, so a given input and seed always produce identical bytes.
The ``timing`` field stays ``null`` unless ``--timing`` is passed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Sequence

from .errors import ExpmeanError, InputError, NumericalError
from .exact import ExactCoeff, GaussianRational, as_fraction
from .laurent import laurent_images, residue_formula_sum, sum_over_roots
from .meanvalue import mean_value, mean_zero_count
from .sums import ExponentialSum, Frequency, FrequencyBasis, exp_sum, one_sum
from .verify import convergence_report
from .zerofind import QuadratureConfig, search_zeros

VERSION = "0.1.0"


# ---------------------------------------------------------------------------
# problem file parsing


@dataclass(frozen=True)
class Problem:
    f: ExponentialSum
    g: ExponentialSum
    basis: FrequencyBasis
    exact: bool


def _parse_exact_part(raw: Any, where: str) -> Fraction:
    if isinstance(raw, bool):
        raise InputError(f"{where}: expected a number or rational string")
    if isinstance(raw, int):
        return Fraction(raw)
    if isinstance(raw, float):
        if raw != int(raw):
            raise InputError(
                f"{where}: exact mode needs integers or rational strings, got {raw!r}"
            )
        return Fraction(int(raw))
    if isinstance(raw, str):
        try:
            return as_fraction(raw)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"{where}: bad rational {raw!r}") from exc
    raise InputError(f"{where}: expected a number or rational string")


def _parse_float_part(raw: Any, where: str) -> float:
    if isinstance(raw, bool):
        raise InputError(f"{where}: expected a number")
    if isinstance(raw, (int, float)):
        return float(raw)
    if isinstance(raw, str):
        try:
            return float(as_fraction(raw))
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"{where}: bad number {raw!r}") from exc
    raise InputError(f"{where}: expected a number")


def _parse_coeff(raw: Any, exact: bool, where: str):
    if not isinstance(raw, Sequence) or isinstance(raw, str) or len(raw) != 2:
        raise InputError(f"{where}: coeff must be a [re, im] pair")
    if exact:
        re = _parse_exact_part(raw[0], where)
        im = _parse_exact_part(raw[1], where)
        return GaussianRational(re, im)
    return complex(_parse_float_part(raw[0], where), _parse_float_part(raw[1], where))


def _parse_freq(raw: Any, basis: FrequencyBasis, where: str) -> Frequency:
    n = len(basis.values)
    if isinstance(raw, (str, int)):
        try:
            return Frequency.of(raw, n)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"{where}: bad frequency {raw!r}") from exc
    if isinstance(raw, Sequence):
        if len(raw) != n:
            raise InputError(
                f"{where}: frequency vector has {len(raw)} entries, basis has {n}"
            )
        coords = []
        for part in raw:
            if not isinstance(part, (str, int)):
                raise InputError(f"{where}: frequency entries must be rational strings")
            try:
                coords.append(as_fraction(part))
            except (ValueError, ZeroDivisionError) as exc:
                raise InputError(f"{where}: bad frequency entry {part!r}") from exc
        return Frequency(tuple(coords))
    raise InputError(f"{where}: bad frequency {raw!r}")


def _parse_sum(raw: Any, basis: FrequencyBasis, exact: bool, name: str) -> ExponentialSum:
    if not isinstance(raw, list):
        raise InputError(f"{name} must be a list of terms")
    pairs = []
    for i, item in enumerate(raw):
        where = f"{name}[{i}]"
        if not isinstance(item, dict) or set(item) - {"coeff", "freq"}:
            raise InputError(f"{where}: terms are objects with coeff and freq")
        if "coeff" not in item or "freq" not in item:
            raise InputError(f"{where}: terms are objects with coeff and freq")
        coeff = _parse_coeff(item["coeff"], exact, where)
        freq = _parse_freq(item["freq"], basis, where)
        if exact:
            coeff = ExactCoeff.plain(coeff, len(basis.values))
        pairs.append((coeff, freq))
    return exp_sum(pairs, basis=basis, exact=exact)


def parse_problem(data: Any) -> Problem:
    if not isinstance(data, dict):
        raise InputError("problem file must be a JSON object")
    unknown = set(data) - {"basis", "mode", "f", "g"}
    if unknown:
        raise InputError(f"unknown problem keys: {sorted(unknown)}")
    raw_basis = data.get("basis", ["1"])
    if (
        not isinstance(raw_basis, list)
        or not raw_basis
        or not all(isinstance(b, str) for b in raw_basis)
    ):
        raise InputError("basis must be a non-empty list of decimal strings")
    try:
        basis = FrequencyBasis(tuple(raw_basis))
    except (ValueError, ArithmeticError) as exc:
        raise InputError(f"bad basis: {exc}") from exc
    mode = data.get("mode", "float")
    if mode not in ("float", "exact"):
        raise InputError('mode must be "exact" or "float"')
    exact = mode == "exact"
    if "f" not in data:
        raise InputError('problem file needs an "f" entry')
    f = _parse_sum(data["f"], basis, exact, "f")
    if "g" in data:
        g = _parse_sum(data["g"], basis, exact, "g")
    else:
        g = one_sum(basis=basis, exact=exact)
    return Problem(f=f, g=g, basis=basis, exact=exact)


def _coeff_to_json(coeff: Any, exact: bool) -> list:
    if exact:
        assert isinstance(coeff, ExactCoeff)
        return [str(coeff.scalar.re), str(coeff.scalar.im)]
    return [coeff.real, coeff.imag]


def _freq_to_json(freq: Frequency, basis: FrequencyBasis) -> Any:
    if basis.is_default():
        return str(freq.coords[0])
    return [str(c) for c in freq.coords]


def problem_to_dict(problem: Problem) -> dict:
    """Canonical JSON form; parsing it again gives back the same problem."""

    def render(s: ExponentialSum) -> list:
        return [
            {
                "coeff": _coeff_to_json(t.coeff, problem.exact),
                "freq": _freq_to_json(t.freq, problem.basis),
            }
            for t in s.terms
        ]

    return {
        "basis": list(problem.basis.values),
        "mode": "exact" if problem.exact else "float",
        "f": render(problem.f),
        "g": render(problem.g),
    }


def load_problem(path: str) -> Problem:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc
    return parse_problem(data)


# ---------------------------------------------------------------------------
# deterministic rendering


def _format_float(x: float) -> str:
    if x != x or x in (float("inf"), float("-inf")):
        raise NumericalError("cannot serialize a non-finite number")
    s = f"{x:.17g}"
    # keep integral values typed as floats on reload
    if "." not in s and "e" not in s and "E" not in s:
        s += ".0"
    return s


def render_json(obj: Any) -> str:
    """JSON with sorted keys and floats at 17 significant digits."""
    out: list[str] = []

    def emit(node: Any) -> None:
        if node is None:
            out.append("null")
        elif node is True:
            out.append("true")
        elif node is False:
            out.append("false")
        elif isinstance(node, str):
            out.append(json.dumps(node))
        elif isinstance(node, int):
            out.append(str(node))
        elif isinstance(node, float):
            out.append(_format_float(node))
        elif isinstance(node, complex):
            emit([node.real, node.imag])
        elif isinstance(node, dict):
            out.append("{")
            for i, key in enumerate(sorted(node)):
                if i:
                    out.append(", ")
                out.append(json.dumps(str(key)))
                out.append(": ")
                emit(node[key])
            out.append("}")
        elif isinstance(node, (list, tuple)):
            out.append("[")
            for i, item in enumerate(node):
                if i:
                    out.append(", ")
                emit(item)
            out.append("]")
        else:
            raise TypeError(f"cannot serialize {type(node).__name__}")

    emit(obj)
    return "".join(out)


def _csv_cell(value: Any) -> str:
    if isinstance(value, float):
        return _format_float(value)
    return str(value)


def render_csv(rows: list[list[Any]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    for row in rows:
        writer.writerow([_csv_cell(c) for c in row])
    return buf.getvalue()


# ---------------------------------------------------------------------------
# result builders


def _c(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def _generators_json(gens, basis: FrequencyBasis) -> list:
    return [_freq_to_json(g, basis) for g in gens]


def _exact_vector_json(vec: tuple[GaussianRational, ...] | None) -> Any:
    if vec is None:
        return None
    return [[str(p.re), str(p.im)] for p in vec]


def cmd_mean(problem: Problem, args: argparse.Namespace) -> dict:
    res = mean_value(problem.f, problem.g)
    out = {
        "A_first": _c(res.A_first),
        "A_last": _c(res.A_last),
        "M": _c(res.mean),
        "neg_generators": _generators_json(res.neg_generators, problem.basis),
        "pos_generators": _generators_json(res.pos_generators, problem.basis),
        "mean_exact": _exact_vector_json(res.mean_exact),
    }
    return out


def cmd_density(problem: Problem, args: argparse.Namespace) -> dict:
    density = mean_zero_count(problem.f)
    f = problem.f
    first = f.terms[0].freq
    last = f.terms[-1].freq
    span = last - first
    out: dict[str, Any] = {
        "density": density,
        "span": _freq_to_json(span, problem.basis),
    }
    if args.R is not None:
        cfg = QuadratureConfig(jitter_seed=args.seed)
        found = search_zeros(f, args.R, cfg, args.margin)
        count = sum(z.multiplicity for z in found.zeros)
        empirical = count / (2.0 * found.height)
        out["R_used"] = found.height
        out["count"] = count
        out["empirical_density"] = empirical
        out["abs_error"] = abs(empirical - density)
    return out


def _zeros_json(zeros) -> list:
    return [
        {"re": z.location.real, "im": z.location.imag, "multiplicity": z.multiplicity}
        for z in zeros
    ]


def _write_points(path: str, zeros) -> None:
    rows = [[z.location.real, z.location.imag, z.multiplicity] for z in zeros]
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(render_csv([["re", "im", "multiplicity"]] + rows))


def cmd_zeros(problem: Problem, args: argparse.Namespace) -> dict:
    if args.R is None:
        raise InputError("zeros needs --R")
    cfg = QuadratureConfig(jitter_seed=args.seed)
    found = search_zeros(problem.f, args.R, cfg, args.margin)
    if args.emit_points:
        _write_points(args.emit_points, found.zeros)
    return {
        "R_used": found.height,
        "strip_bound": found.strip,
        "outer_winding": found.outer_winding,
        "count": sum(z.multiplicity for z in found.zeros),
        "zeros": _zeros_json(found.zeros),
    }


def cmd_verify(problem: Problem, args: argparse.Namespace) -> dict:
    if not args.R_list:
        raise InputError("verify needs --R-list")
    cfg = QuadratureConfig(jitter_seed=args.seed)
    report = convergence_report(
        problem.f, problem.g, args.R_list, cfg, tol=args.tol, margin=args.margin
    )
    rows = [
        {
            "R": r.R,
            "count": r.count,
            "weighted_sum": _c(r.weighted_sum),
            "empirical_mean": _c(r.empirical_mean),
            "abs_error": r.abs_error,
        }
        for r in report.rows
    ]
    return {
        "symbolic_mean": _c(report.symbolic_mean),
        "tolerance": report.tolerance,
        "rows": rows,
        "verdict": "pass" if report.verdict else "fail",
        "final_abs_error": report.rows[-1].abs_error,
    }


def cmd_laurent_check(problem: Problem, args: argparse.Namespace) -> dict:
    F, G, q = laurent_images(problem.f, problem.g)
    if G.is_zero() or F.exponent_span() == 0:
        residue = 0j
        roots = 0j
    else:
        residue = residue_formula_sum(F, G)
        roots = sum_over_roots(F, G)
    bridge = mean_value(problem.f, problem.g).mean
    return {
        "q": q,
        "residue_formula_sum": _c(residue),
        "sum_over_roots": _c(roots),
        "mean_value_bridge": _c(bridge),
        "residue_vs_roots": abs(residue - roots),
        "bridge_vs_roots": abs(bridge - roots / q),
    }


_COMMANDS = {
    "mean": cmd_mean,
    "density": cmd_density,
    "zeros": cmd_zeros,
    "verify": cmd_verify,
    "laurent-check": cmd_laurent_check,
}


# ---------------------------------------------------------------------------
# csv projections of each result


def _result_rows(command: str, results: dict) -> list[list[Any]]:
    if command == "zeros":
        rows: list[list[Any]] = [["re", "im", "multiplicity"]]
        for z in results["zeros"]:
            rows.append([z["re"], z["im"], z["multiplicity"]])
        return rows
    if command == "verify":
        rows = [["R", "count", "empirical_re", "empirical_im", "abs_error"]]
        for r in results["rows"]:
            rows.append(
                [r["R"], r["count"], r["empirical_mean"][0], r["empirical_mean"][1], r["abs_error"]]
            )
        return rows
    rows = [["key", "value"]]
    for key in sorted(results):
        value = results[key]
        if isinstance(value, list) and len(value) == 2 and all(
            isinstance(p, float) for p in value
        ):
            rows.append([key, _format_float(value[0]) + "+" + _format_float(value[1]) + "j"])
        elif isinstance(value, (int, float, str)):
            rows.append([key, value])
        else:
            rows.append([key, json.dumps(value, sort_keys=True, default=str)])
    return rows


# ---------------------------------------------------------------------------
# argument parsing and dispatch


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # keep argparse's exit code 2, usage on stderr
        self.print_usage(sys.stderr)
        self.exit(2, f"{self.prog}: error: {message}\n")


def _parse_r_list(raw: str) -> list[float]:
    try:
        values = [float(part) for part in raw.split(",") if part.strip()]
    except ValueError as exc:
        raise InputError(f"bad --R-list {raw!r}") from exc
    if not values:
        raise InputError("empty --R-list")
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="expmean", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"expmean {VERSION}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("mean", "exact mean value of g over the zeros of f"),
        ("density", "mean number of zeros per unit height"),
        ("zeros", "locate zeros inside a strip"),
        ("verify", "compare exact mean against strip averages"),
        ("laurent-check", "cross-check the rational-frequency routes"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--input", required=True, help="problem file (JSON)")
        p.add_argument("--R", type=float, default=None, help="strip half-height")
        p.add_argument(
            "--R-list",
            dest="R_list",
            type=_parse_r_list,
            default=None,
            help="comma separated strip half-heights",
        )
        p.add_argument("--tol", type=float, default=0.05, help="verification tolerance")
        p.add_argument("--seed", type=int, default=0, help="subdivision jitter seed")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--emit-points", dest="emit_points", default=None, metavar="PATH")
        p.add_argument("--margin", type=float, default=0.5, help="strip bound margin")
        p.add_argument(
            "--timing",
            action="store_true",
            help="fill the timing field (off by default so output bytes are stable)",
        )
    return parser


def _inputs_echo(args: argparse.Namespace, problem: Problem) -> dict:
    return {
        "input": args.input,
        "R": args.R,
        "R_list": args.R_list,
        "tol": args.tol,
        "seed": args.seed,
        "format": args.format,
        "emit_points": args.emit_points,
        "margin": args.margin,
        "problem": problem_to_dict(problem),
    }


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except InputError as exc:
        print(f"expmean: error: {exc}", file=sys.stderr)
        return 2
    try:
        problem = load_problem(args.input)
        start = time.perf_counter()
        results = _COMMANDS[args.command](problem, args)
        elapsed = time.perf_counter() - start
    except InputError as exc:
        print(f"expmean: error: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"expmean: numerical failure: {exc}", file=sys.stderr)
        return 3
    except ExpmeanError as exc:
        print(f"expmean: error: {exc}", file=sys.stderr)
        return 3
    if args.format == "csv":
        sys.stdout.write(render_csv(_result_rows(args.command, results)))
        return 0
    envelope = {
        "command": args.command,
        "inputs": _inputs_echo(args, problem),
        "results": results,
        "timing": elapsed if args.timing else None,
        "version": VERSION,
    }
    sys.stdout.write(render_json(envelope) + "\n")
    return 0


def main() -> None:
    sys.exit(run())
