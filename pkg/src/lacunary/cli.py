"""Command-line front end: digit rendering, counting, screens, refutations.

Every subcommand renders one report in one of three formats (``--format
json|csv|text``). The JSON document is the canonical form — each carries a
versioned ``schema`` field — and the text and CSV renderings are derived
from the same payload, so all three are deterministic: identical
invocations produce byte-identical output (no timestamps, no
machine-dependent fields, collections in sorted or enumeration order).

Exit codes: 0 when every result is certified (or the command is a plain
computation that completed), 2 when the run completed but some result is
inconclusive or failed verification, 1 on errors (bad flags, malformed
polynomial or sequence file, budget violations).

Polynomial flags list coefficients leading-first: ``--poly "1,-1,0"`` is
x^2 - x. Budgets can be lowered per run (``--exponent-budget``,
``--table-budget``) and capped globally via the LACUNARY_EXPONENT_BUDGET
and LACUNARY_TABLE_BUDGET environment variables; a request above a cap is
rejected before any computation starts.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from typing import Callable, Sequence

from . import budgets
from .dyadic import DyadicNumber
from .errors import CertificateError, LacunaryError
from .polynomial import IntPolynomial, parse_polynomial
from .refuter import (
    DEFAULT_GUARD_BITS,
    DEFAULT_HORIZON,
    VERDICT_CERTIFIED,
    VERDICT_INCONCLUSIVE,
    enumerate_polynomials,
    generalized_witness,
    liouville_nonvanishing,
    mahler_witness,
    verify_certificate,
)
from .repcount import dnq_general, dnq_pow2, lemma_audit
from .seqprops import classify, sequence_preset
from .series import digits, series_preset

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INCONCLUSIVE = 2

FORMATS = ("json", "csv", "text")

# Budgets each subcommand actually consumes; only these are resolved (and
# therefore checked against environment caps) before the run.
_BUDGET_NEEDS: dict[str, frozenset[str]] = {
    "digits": frozenset({"exponent"}),
    "repcount": frozenset({"table"}),
    "audit-lemma": frozenset({"table"}),
    "analyze": frozenset({"table"}),
    "refute-mahler": frozenset({"exponent"}),
    "refute-liouville": frozenset({"exponent"}),
    "explore": frozenset({"exponent", "table"}),
}


@dataclass(frozen=True)
class RunConfig:
    """One validated invocation: subcommand, output format, budgets.

    ``validated()`` resolves the requested budgets against the module
    defaults and the environment hard caps, raising BudgetError before any
    computation when a cap is exceeded. Budgets a command does not use stay
    None and are never checked, so an aggressive cap on table memory does
    not break a digits run.
    """

    command: str
    fmt: str
    exponent_budget: int | None = None
    table_budget: int | None = None

    def validated(self) -> "RunConfig":
        needs = _BUDGET_NEEDS[self.command]
        exp = budgets.exponent_budget(self.exponent_budget) if "exponent" in needs else None
        tab = budgets.table_budget(self.table_budget) if "table" in needs else None
        return RunConfig(self.command, self.fmt, exp, tab)


class _ArgumentParser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors; 2 means "inconclusive" here, not error."""

    def error(self, message: str):  # noqa: D401 - argparse hook
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_ERROR)


def build_parser() -> argparse.ArgumentParser:
    common = _ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="text",
                        help="output format (default: text)")
    common.add_argument("--exponent-budget", type=int, default=None, metavar="BITS",
                        help="largest series exponent a run may expand")
    common.add_argument("--table-budget", type=int, default=None, metavar="CELLS",
                        help="largest counting table a run may allocate")

    parser = _ArgumentParser(
        prog="lacunary",
        description="Exact digit expansions, representation counts, and "
                    "non-vanishing certificates for lacunary binary series.")
    sub = parser.add_subparsers(dest="command", metavar="command", required=True)

    p = sub.add_parser("digits", parents=[common],
                       help="leading digits of a series value, exactly")
    p.add_argument("spec", help="series: mahler, liouville, nu10, fib, geom2, "
                                "nmahler, geomfloor:<base>, file:<path>")
    p.add_argument("--base", type=int, choices=(2, 10), default=2)
    p.add_argument("--count", type=int, default=32, metavar="N",
                   help="number of fractional digits (default: 32)")

    p = sub.add_parser("repcount", parents=[common],
                       help="representations of n as a sum of q sequence terms")
    p.add_argument("n", type=int)
    p.add_argument("q", type=int)
    p.add_argument("--seq", default="pow2", metavar="SPEC",
                   help="sequence: pow2, factorial, fib, naturals, "
                        "geomfloor:<base>, custom:<a,b,...>, file:<path>")
    p.add_argument("--mode", choices=("ordered", "unordered"), default="ordered")

    p = sub.add_parser("audit-lemma", parents=[common],
                       help="sweep the counting inequalities over powers of two")
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--qmax", type=int, required=True)

    p = sub.add_parser("analyze", parents=[common],
                       help="sparseness and looseness screens for a sequence")
    p.add_argument("spec", help="sequence spec, as for repcount --seq")
    p.add_argument("--qmax", type=int, required=True)
    p.add_argument("--N", type=int, required=True, help="scan limit")
    p.add_argument("--M", type=int, required=True, help="gap both sides must exceed")
    p.add_argument("--mode", choices=("ordered", "unordered"), default="unordered")
    p.add_argument("--exactly", action="store_true",
                   help="count sums of exactly q terms instead of at most q")

    p = sub.add_parser("refute-mahler", parents=[common],
                       help="certify f(mu) != 0 by digit isolation")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--poly", metavar="A_T,...,A_0",
                       help="integer coefficients, leading first")
    group.add_argument("--sweep", action="store_true",
                       help="all polynomials up to --degree and --height")
    p.add_argument("--degree", type=int, default=None, metavar="T")
    p.add_argument("--height", type=int, default=None, metavar="H")

    p = sub.add_parser("refute-liouville", parents=[common],
                       help="certify f(lambda) != 0 by interval evaluation")
    p.add_argument("--poly", required=True, metavar="A_T,...,A_0")

    p = sub.add_parser("explore", parents=[common],
                       help="search a series for an isolated-digit certificate")
    p.add_argument("spec", help="series spec, as for digits")
    p.add_argument("--poly", required=True, metavar="A_T,...,A_0")
    p.add_argument("--horizon", type=int, default=DEFAULT_HORIZON,
                   help=f"digit positions scanned (default: {DEFAULT_HORIZON})")
    p.add_argument("--guard-bits", type=int, default=DEFAULT_GUARD_BITS,
                   help=f"extra gap bits required (default: {DEFAULT_GUARD_BITS})")

    return parser


# ---------------------------------------------------------------------------
# Subcommand handlers: each returns (payload dict, exit code)
# ---------------------------------------------------------------------------

def _run_digits(args, config: RunConfig):
    series = series_preset(args.spec)
    expansion = digits(series, args.base, args.count,
                       exponent_budget=config.exponent_budget)
    payload = {
        "schema": "lacunary.digits/1",
        "series": series.name,
        "base": expansion.base,
        "count": args.count,
        "sign": expansion.sign,
        "integer_part": expansion.integer_part,
        "digits": expansion.digits,
        "rendering": str(expansion),
    }
    return payload, EXIT_OK


def _run_repcount(args, config: RunConfig):
    if args.seq == "pow2" and args.mode == "ordered":
        name, count = "pow2", dnq_pow2(args.n, args.q)
    else:
        seq = sequence_preset(args.seq)
        name = seq.name
        count = dnq_general(seq, args.n, args.q, mode=args.mode,
                            table_budget=config.table_budget)
    payload = {
        "schema": "lacunary.repcount/1",
        "sequence": name,
        "mode": args.mode,
        "n": args.n,
        "q": args.q,
        "count": count,
    }
    return payload, EXIT_OK


def _run_audit(args, config: RunConfig):
    report = lemma_audit(args.nmax, args.qmax, table_budget=config.table_budget)
    payload = {
        "schema": "lacunary.lemma-audit/1",
        "n_max": report.n_max,
        "q_max": report.q_max,
        "ok": report.ok,
        "violations": [list(v) for v in report.violations],
        "ordered_max": {str(q): {"max": pair[0], "argmax": pair[1]}
                        for q, pair in sorted(report.max_counts.items())},
        "multiset_max": {str(q): {"max": pair[0], "argmax": pair[1]}
                         for q, pair in sorted(report.max_multiset_counts.items())},
    }
    return payload, EXIT_OK if report.ok else EXIT_INCONCLUSIVE


def _run_analyze(args, config: RunConfig):
    seq = sequence_preset(args.spec)
    report = classify(seq, args.qmax, args.N, args.M, mode=args.mode,
                      exactly=args.exactly, table_budget=config.table_budget)
    payload = {"schema": "lacunary.analysis/1", **report.to_json_dict()}
    return payload, EXIT_OK


def _run_refute_mahler(args, config: RunConfig):
    if args.sweep:
        if args.degree is None or args.height is None:
            raise LacunaryError("refute-mahler --sweep requires --degree and --height")
        return _mahler_sweep(args.degree, args.height, config)
    poly = parse_polynomial(args.poly)
    cert = mahler_witness(poly)
    verification = verify_certificate(cert, exponent_budget=config.exponent_budget)
    payload = {
        "schema": "lacunary.mahler-refutation/1",
        "certificate": cert.to_json_dict(),
        "verification": verification.to_json_dict(),
    }
    return payload, EXIT_OK if verification.accepted else EXIT_INCONCLUSIVE


def _mahler_sweep(degree: int, height: int, config: RunConfig):
    results = []
    certified = rejected = inconclusive = 0
    for poly in enumerate_polynomials(degree, height):
        row: dict = {"poly": list(poly.leading_first())}
        try:
            cert = mahler_witness(poly)
        except CertificateError as exc:
            row.update(verdict=VERDICT_INCONCLUSIVE, reason=str(exc))
            inconclusive += 1
        else:
            verification = verify_certificate(cert,
                                              exponent_budget=config.exponent_budget)
            row.update(verdict=cert.verdict, p=cert.p, k=cert.k, m=cert.m,
                       s=cert.s, d_m=cert.d_m, accepted=verification.accepted,
                       reason=verification.reason)
            if verification.accepted:
                certified += 1
            else:
                rejected += 1
        results.append(row)
    payload = {
        "schema": "lacunary.mahler-sweep/1",
        "degree": degree,
        "height": height,
        "total": len(results),
        "certified": certified,
        "rejected": rejected,
        "inconclusive": inconclusive,
        "results": results,
    }
    clean = rejected == 0 and inconclusive == 0
    return payload, EXIT_OK if clean else EXIT_INCONCLUSIVE


def _run_refute_liouville(args, config: RunConfig):
    poly = parse_polynomial(args.poly)
    cert = liouville_nonvanishing(poly, exponent_budget=config.exponent_budget)
    code = EXIT_OK if cert.verdict == VERDICT_CERTIFIED else EXIT_INCONCLUSIVE
    return cert.to_json_dict(), code


def _run_explore(args, config: RunConfig):
    series = series_preset(args.spec)
    poly = parse_polynomial(args.poly)
    report = generalized_witness(series, poly, horizon=args.horizon,
                                 guard_bits=args.guard_bits,
                                 exponent_budget=config.exponent_budget,
                                 table_budget=config.table_budget)
    code = EXIT_OK if report.certified else EXIT_INCONCLUSIVE
    return report.to_json_dict(), code


_HANDLERS: dict[str, Callable[[argparse.Namespace, RunConfig], tuple[dict, int]]] = {
    "digits": _run_digits,
    "repcount": _run_repcount,
    "audit-lemma": _run_audit,
    "analyze": _run_analyze,
    "refute-mahler": _run_refute_mahler,
    "refute-liouville": _run_refute_liouville,
    "explore": _run_explore,
}


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------

def _dyadic_text(data: dict | None) -> str:
    if data is None:
        return ""
    return DyadicNumber.from_json_dict(data).to_decimal_string()


def _interval_text(data: dict | None) -> str:
    if data is None:
        return ""
    return f"[{_dyadic_text(data['lower'])}, {_dyadic_text(data['upper'])}]"


def _poly_text(leading_first: list) -> str:
    pretty = str(IntPolynomial.from_leading(leading_first))
    flat = ",".join(str(c) for c in leading_first)
    return f"f(x) = {pretty}  [coeffs {flat}]"


def _poly_flat(leading_first: list) -> str:
    return ",".join(str(c) for c in leading_first)


def _csv_table(header: list[str], rows: list[list]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def _text_digits(payload: dict) -> str:
    return f"{payload['series']}: {payload['rendering']}\n"


def _csv_digits(payload: dict) -> str:
    rows = [[i + 1, digit] for i, digit in enumerate(payload["digits"])]
    return _csv_table(["position", "digit"], rows)


def _text_repcount(payload: dict) -> str:
    return (f"d_{payload['n']}({payload['q']}) = {payload['count']}  "
            f"[sequence {payload['sequence']}, mode {payload['mode']}]\n")


def _csv_repcount(payload: dict) -> str:
    row = [[payload["sequence"], payload["mode"], payload["n"], payload["q"],
            payload["count"]]]
    return _csv_table(["sequence", "mode", "n", "q", "count"], row)


def _text_audit(payload: dict) -> str:
    lines = [f"lemma audit over n <= {payload['n_max']}, q <= {payload['q_max']}: "
             f"{'ok' if payload['ok'] else 'VIOLATED'} "
             f"({len(payload['violations'])} violations)"]
    for q in sorted(payload["ordered_max"], key=int):
        om = payload["ordered_max"][q]
        mm = payload["multiset_max"][q]
        lines.append(f"  q={q}: ordered max {om['max']} at n={om['argmax']}; "
                     f"multiset max {mm['max']} at n={mm['argmax']}")
    for n, q, description in payload["violations"]:
        lines.append(f"  violation at n={n}, q={q}: {description}")
    return "\n".join(lines) + "\n"


def _csv_audit(payload: dict) -> str:
    rows = []
    for q in sorted(payload["ordered_max"], key=int):
        om = payload["ordered_max"][q]
        mm = payload["multiset_max"][q]
        rows.append([q, om["max"], om["argmax"], mm["max"], mm["argmax"]])
    return _csv_table(
        ["q", "ordered_max", "ordered_argmax", "multiset_max", "multiset_argmax"],
        rows)


def _text_analysis(payload: dict) -> str:
    lines = [f"sequence {payload['sequence']}: scanned n <= {payload['N']}, "
             f"q <= {payload['q_max']}, gap target M = {payload['M']}"]
    for q in sorted(payload["per_q"], key=int):
        entry = payload["per_q"][q]
        sparse, loose = entry["sparse"], entry["loose"]
        if sparse["witness"]:
            a, b, c = sparse["witness"]
            sparse_text = f"sparse witness ({a}, {b}, {c})"
        else:
            sparse_text = f"no sparse witness, inconclusive up to {sparse['N']}"
        kind = "exactly" if loose["exactly"] else "at most"
        lines.append(
            f"  q={q}: {sparse_text}; counts ({loose['mode']}, {kind} q): "
            f"max {loose['max_count']} at n={loose['argmax']} -> "
            f"{loose['verdict']} (threshold {loose['threshold']})")
    lines.append(f"note: {payload['note']}")
    return "\n".join(lines) + "\n"


def _csv_analysis(payload: dict) -> str:
    rows = []
    for q in sorted(payload["per_q"], key=int):
        histogram = payload["per_q"][q]["loose"]["histogram"]
        for count in sorted(histogram, key=int):
            rows.append([q, count, histogram[count]])
    return _csv_table(["q", "count", "occurrences"], rows)


def _text_mahler(payload: dict) -> str:
    cert = payload["certificate"]
    verification = payload["verification"]
    status = "accepted" if verification["accepted"] else "REJECTED"
    return (
        f"{_poly_text(cert['poly'])}\n"
        f"verdict: {cert['verdict']}  "
        f"(p={cert['p']}, k={cert['k']}, m={cert['m']}, s={cert['s']}, "
        f"d_m={cert['d_m']}, D={cert['D']})\n"
        f"tail bound: {_dyadic_text(cert['tail_bound'])}\n"
        f"fractional part of 2^s * f(mu) in {_interval_text(cert['frac_interval'])}\n"
        f"verification: {status} - {verification['reason']}\n")


def _csv_mahler(payload: dict) -> str:
    cert = payload["certificate"]
    verification = payload["verification"]
    row = [[_poly_flat(cert["poly"]), cert["verdict"], cert["p"], cert["k"],
            cert["m"], cert["s"], cert["d_m"], verification["accepted"]]]
    return _csv_table(["poly", "verdict", "p", "k", "m", "s", "d_m", "accepted"],
                      row)


def _text_sweep(payload: dict) -> str:
    lines = [f"mahler sweep: degree <= {payload['degree']}, "
             f"height <= {payload['height']}: {payload['total']} polynomials, "
             f"{payload['certified']} certified, {payload['rejected']} rejected, "
             f"{payload['inconclusive']} inconclusive"]
    for row in payload["results"]:
        if row.get("accepted"):
            continue
        detail = row.get("reason", "")
        lines.append(f"  {_poly_flat(row['poly'])}: {row['verdict']} - {detail}")
    return "\n".join(lines) + "\n"


def _csv_sweep(payload: dict) -> str:
    rows = []
    for row in payload["results"]:
        rows.append([_poly_flat(row["poly"]), row["verdict"], row.get("p"),
                     row.get("k"), row.get("m"), row.get("s"), row.get("d_m"),
                     row.get("accepted")])
    return _csv_table(["poly", "verdict", "p", "k", "m", "s", "d_m", "accepted"],
                      rows)


def _text_liouville(payload: dict) -> str:
    lines = [_poly_text(payload["poly"]),
             f"verdict: {payload['verdict']} using {payload['terms_used']} series terms"]
    if payload["value_interval"]:
        lines.append(f"f(lambda) in {_interval_text(payload['value_interval'])}")
    for entry in payload["pedagogy"]:
        def yes_no(flag):
            return "not checked" if flag is None else ("ok" if flag else "FAIL")
        nonzero = "nonzero" if entry["nonzero"] else "zero"
        lines.append(
            f"  s={entry['s']}: f(lambda_s) = {_dyadic_text(entry['value'])} "
            f"({nonzero}), denominator 2^{entry['denominator_exponent']} "
            f"{'integer' if entry['denominator_ok'] else 'NOT integer'}, "
            f"lower bound {yes_no(entry['lower_bound_ok'])}, "
            f"tail {yes_no(entry['tail_ok'])}")
    return "\n".join(lines) + "\n"


def _csv_liouville(payload: dict) -> str:
    rows = []
    for entry in payload["pedagogy"]:
        rows.append([entry["s"], _dyadic_text(entry["lambda_s"]),
                     _dyadic_text(entry["value"]), entry["denominator_exponent"],
                     entry["denominator_ok"], entry["nonzero"],
                     entry["lower_bound_ok"], entry["tail_ok"]])
    return _csv_table(["s", "lambda_s", "value", "denominator_exponent",
                       "denominator_ok", "nonzero", "lower_bound_ok", "tail_ok"],
                      rows)


def _text_generalized(payload: dict) -> str:
    lines = [f"series {payload['series']}, {_poly_text(payload['poly'])}"]
    if payload["verdict"] == VERDICT_CERTIFIED:
        lines.append(f"verdict: {payload['verdict']} "
                     f"(s={payload['s']}, m={payload['m']}, k={payload['k']}, "
                     f"e_m={payload['e_m']})")
        lines.append(f"fractional part of 2^s * f(value) in "
                     f"{_interval_text(payload['frac_interval'])}")
    else:
        lines.append(f"verdict: {payload['verdict']} - {payload['reason']}")
    return "\n".join(lines) + "\n"


def _csv_generalized(payload: dict) -> str:
    row = [[payload["series"], _poly_flat(payload["poly"]), payload["verdict"],
            payload["s"], payload["m"], payload["k"], payload["e_m"],
            payload["reason"]]]
    return _csv_table(["series", "poly", "verdict", "s", "m", "k", "e_m", "reason"],
                      row)


_TEXT_RENDERERS: dict[str, Callable[[dict], str]] = {
    "lacunary.digits/1": _text_digits,
    "lacunary.repcount/1": _text_repcount,
    "lacunary.lemma-audit/1": _text_audit,
    "lacunary.analysis/1": _text_analysis,
    "lacunary.mahler-refutation/1": _text_mahler,
    "lacunary.mahler-sweep/1": _text_sweep,
    "lacunary.liouville-certificate/1": _text_liouville,
    "lacunary.generalized-report/1": _text_generalized,
}

_CSV_RENDERERS: dict[str, Callable[[dict], str]] = {
    "lacunary.digits/1": _csv_digits,
    "lacunary.repcount/1": _csv_repcount,
    "lacunary.lemma-audit/1": _csv_audit,
    "lacunary.analysis/1": _csv_analysis,
    "lacunary.mahler-refutation/1": _csv_mahler,
    "lacunary.mahler-sweep/1": _csv_sweep,
    "lacunary.liouville-certificate/1": _csv_liouville,
    "lacunary.generalized-report/1": _csv_generalized,
}


def emit_report(payload: dict, fmt: str) -> str:
    """Serialize a report payload; the JSON document is the canonical form."""
    if fmt == "json":
        return json.dumps(payload, indent=2) + "\n"
    renderers = _CSV_RENDERERS if fmt == "csv" else _TEXT_RENDERERS
    return renderers[payload["schema"]](payload)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = RunConfig(args.command, args.format, args.exponent_budget,
                           args.table_budget).validated()
        payload, exit_code = _HANDLERS[config.command](args, config)
    except (LacunaryError, OSError) as exc:
        sys.stderr.write(f"lacunary: error: {exc}\n")
        return EXIT_ERROR
    sys.stdout.write(emit_report(payload, config.fmt))
    return exit_code


if __name__ == "__main__":
    raise SystemExit(main())
