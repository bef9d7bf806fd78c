"""Command-line front end.

Reports are JSON Lines (one record per line, flushed as produced) or CSV.
Every run ends with a status record so that a truncated run is detectable.
Values that are exact on the Python side stay exact on the wire: rationals
are "p/q" strings and decimals are outward-rounded display helpers.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import re
import sys
from fractions import Fraction
from typing import Any, Dict, Iterator, List, Optional

from . import __version__
from .errors import CubeSectionsError
from .numeric.interval import DyadicInterval
from .numeric.quadext import QuadExtValue, squarefree_split

PRECISION_ENV = "CUBE_SECTIONS_PRECISION"
DEFAULT_PRECISION = 128
DECIMAL_DIGITS = 15

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_DOMAIN = 3

_T_PATTERN = re.compile(r"^[+-]?(\d+/[1-9]\d*|\d+(\.\d+)?|\.\d+)$")


def parse_t(text: str) -> Fraction:
    """Exact parse of "p/q" or a finite decimal; floats in exponent form are refused."""
    text = text.strip()
    if not _T_PATTERN.match(text):
        raise argparse.ArgumentTypeError(f"expected a fraction p/q or a finite decimal, got {text!r}")
    return Fraction(text)


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


# -- serialization ----------------------------------------------------------------

def frac_str(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _decimal(x: Fraction, up: bool, digits: int = DECIMAL_DIGITS) -> str:
    scale = 10 ** digits
    n = math.ceil(x * scale) if up else math.floor(x * scale)
    sign = "-" if n < 0 else ""
    whole, frac = divmod(abs(n), scale)
    return f"{sign}{whole}.{frac:0{digits}d}"


def interval_record(iv: DyadicInterval) -> Dict[str, str]:
    return {"decimal_lo": _decimal(iv.lo, False), "decimal_hi": _decimal(iv.hi, True)}


def exact_record(v: QuadExtValue, radicand: int, bits: int) -> Dict[str, Any]:
    """{base, sqrt_coeff, radicand, decimal_lo, decimal_hi, pretty} for v in ℚ(√radicand)."""
    rads = v.radicands
    if rads and rads != (squarefree_split(radicand)[1],):
        if len(rads) != 1:
            raise ValueError(f"{v} is not in a single quadratic field")
        radicand = rads[0]
    out: Dict[str, Any] = {
        "base": frac_str(v.base),
        "sqrt_coeff": frac_str(v.coeff(radicand)) if rads else "0",
        "radicand": radicand,
    }
    out.update(interval_record(v.enclosure(bits)))
    out["pretty"] = v.pretty()
    return out


def bracket_record(lo: Fraction, hi: Fraction) -> Dict[str, str]:
    return {
        "lo": frac_str(lo),
        "hi": frac_str(hi),
        "decimal_lo": _decimal(lo, False),
        "decimal_hi": _decimal(hi, True),
    }


def _flatten(record: Dict[str, Any], prefix: str = "") -> Dict[str, str]:
    flat: Dict[str, str] = {}
    for key, value in record.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            flat.update(_flatten(value, name + "."))
        elif isinstance(value, list):
            flat[name] = ";".join(json.dumps(x, ensure_ascii=False) if isinstance(x, dict) else str(x)
                                  for x in value)
        elif value is None:
            flat[name] = ""
        else:
            flat[name] = str(value).lower() if isinstance(value, bool) else str(value)
    return flat


class Emitter:
    """Writes records as they arrive and finishes with a status record."""

    def __init__(self, stream, fmt: str):
        self.stream = stream
        self.fmt = fmt
        self.count = 0
        self._writer: Optional[csv.DictWriter] = None

    def emit(self, record: Dict[str, Any]) -> None:
        if self.fmt == "json":
            self.stream.write(json.dumps(record, ensure_ascii=False) + "\n")
        else:
            flat = _flatten(record)
            if self._writer is None:
                self._writer = csv.DictWriter(self.stream, fieldnames=list(flat), lineterminator="\n")
                self._writer.writeheader()
            self._writer.writerow(flat)
        self.stream.flush()
        self.count += 1

    def finish(self, ok: bool, command: str, message: str = "") -> None:
        status = {
            "kind": "status",
            "status": "ok" if ok else "error",
            "command": command,
            "records": self.count,
            "message": message,
            "version": __version__,
        }
        if self.fmt == "json":
            self.stream.write(json.dumps(status, ensure_ascii=False) + "\n")
        else:
            self.stream.write(f"# status={status['status']} command={command} records={self.count}"
                              + (f" message={message}" if message else "") + "\n")
        self.stream.flush()


# -- commands ----------------------------------------------------------------------

def cmd_eval(args) -> Iterator[Dict[str, Any]]:
    from .sections import eval_exact

    value = eval_exact(args.d, args.t)
    rec: Dict[str, Any] = {
        "kind": "eval",
        "d": args.d,
        "t": frac_str(args.t),
        "exact": exact_record(value.value, args.d, args.precision),
    }
    if args.oracle:
        from .asymptotics import first_order_estimate, second_order_estimate
        from .quadrature import QuadratureConfig, section_volume

        approx = section_volume(args.d, args.t, QuadratureConfig(abs_tol=float(args.tolerance)))
        rec["quadrature"] = f"{approx:.15e}"
        if args.d >= 136:
            for name, fn in (("first_order", first_order_estimate), ("second_order", second_order_estimate)):
                center, radius = fn(args.d, args.t, args.precision)
                env = center - radius
                env = env.union(center + radius)
                inside = env.lo <= value.enclosure(args.precision).lo and value.enclosure(args.precision).hi <= env.hi
                rec[name] = {"envelope": interval_record(env), "inside": inside}
    yield rec


def cmd_constants(args) -> Iterator[Dict[str, Any]]:
    from .monotonicity import named_constants

    for c in named_constants(args.tolerance):
        yield {
            "kind": "constant",
            "name": c.name,
            **{k: v for k, v in bracket_record(c.interval.lo, c.interval.hi).items()},
            "paper_bracket": [frac_str(x) for x in c.reference_bracket],
            "method": c.method.value,
            "definition": c.definition,
        }


def cmd_certify(args) -> Iterator[Dict[str, Any]]:
    from .monotonicity import certify_sign

    cert = certify_sign(args.d, (args.t_min, args.t_max))
    yield {
        "kind": "certificate",
        "d": cert.d,
        "quantity": cert.quantity,
        "interval": [frac_str(x) for x in cert.t_range],
        "outcome": cert.outcome.value,
        "method": cert.method.value,
        "roots": [bracket_record(r.lo, r.hi) for r in cert.roots],
    }


def cmd_monotonicity(args) -> Iterator[Dict[str, Any]]:
    from .monotonicity import monotonicity_window

    for t in args.t:
        w = monotonicity_window(t, cap=args.cap, workers=args.workers)
        yield {
            "kind": "window",
            "t": frac_str(w.t),
            "verdict": w.verdict.value,
            "d0": w.d0,
            "threshold": w.threshold,
            "tail_sign": w.tail_sign.label,
            "exceptions": list(w.exceptions),
        }


def _value_record(v, d: Optional[int], bits: int) -> Dict[str, Any]:
    if isinstance(v, QuadExtValue):
        return exact_record(v, d or 1, bits)
    return interval_record(v)


def cmd_supinf(args) -> Iterator[Dict[str, Any]]:
    from .monotonicity import sup_inf

    for t in args.t:
        rep = sup_inf(t, verify_tail=args.verify_tail)
        yield {
            "kind": "supinf",
            "t": frac_str(rep.t),
            "sup": rep.sup.kind.value,
            "sup_d": rep.sup.d,
            "sup_value": _value_record(rep.sup_value, rep.sup.d, args.precision),
            "inf": rep.inf.kind.value,
            "inf_d": rep.inf.d,
            "inf_value": _value_record(rep.inf_value, rep.inf.d, args.precision),
            "tail_verified_to": rep.tail_verified_to,
        }


def _extremality_record(v) -> Dict[str, Any]:
    return {
        "kind": "extremality",
        "n": v.n,
        "d": v.d,
        "t": frac_str(v.t),
        "r_sign": v.r_sign.label,
        "s_sign": v.s_sign.label,
        "verdict": v.verdict.value,
        "method": v.method,
    }


def cmd_extremality(args) -> Iterator[Dict[str, Any]]:
    from .extremality import classify

    for t in args.t:
        yield _extremality_record(classify(args.n, args.d, t))


def cmd_sweep(args) -> Iterator[Dict[str, Any]]:
    from .extremality import sweep_classify

    for v in sweep_classify(args.t, args.n_max, args.d).verdicts:
        yield _extremality_record(v)


def cmd_eulerian(args) -> Iterator[Dict[str, Any]]:
    from .eulerian import eulerian_row, normality_deviation

    row = eulerian_row(args.d)
    rec: Dict[str, Any] = {
        "kind": "eulerian",
        "d": args.d,
        "symmetric": row.is_symmetric(),
        "factorial_sum": row.total() == math.factorial(args.d),
    }
    if args.row:
        rec["entries"] = [str(a) for a in row.entries]
    if args.check_bound:
        rep = normality_deviation(args.d)
        rec.update({
            "max_dev": f"{rep.max_dev:.12f}",
            "bound": f"{rep.bound:.12f}",
            "witness_t": f"{rep.witness_t:.2f}",
            "pass": rep.passed,
        })
    yield rec


def cmd_signtable(args) -> Iterator[Dict[str, Any]]:
    """Exact signs of I_{d+1}(t) − I_d(t) on a grid; the full-scale run is slow."""
    from concurrent.futures import ProcessPoolExecutor

    from .sections import diff_sign

    ts: List[Fraction] = []
    t = args.t_min
    while t <= args.t_max:
        ts.append(t)
        t += args.step
    for t in ts:
        ds = list(range(args.d_min, args.d_max + 1))
        if args.workers > 1:
            with ProcessPoolExecutor(max_workers=args.workers) as pool:
                signs = list(pool.map(diff_sign, ds, [t] * len(ds), chunksize=8))
        else:
            signs = [diff_sign(d, t) for d in ds]
        for d, s in zip(ds, signs):
            yield {"kind": "sign", "d": d, "t": frac_str(t), "sign": s.label}


# -- argument parsing ---------------------------------------------------------------

def _precision_default() -> int:
    raw = os.environ.get(PRECISION_ENV)
    if raw is None:
        return DEFAULT_PRECISION
    try:
        return int(raw)
    except ValueError:
        return -1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--output", help="write the report here instead of stdout")
    common.add_argument("--precision", type=int, default=None,
                        help=f"interval precision in bits (≥ 64; env {PRECISION_ENV})")
    common.add_argument("--tolerance", type=parse_t, default=Fraction(1, 10**8),
                        help="bracket width for constants, absolute tolerance for quadrature")
    common.add_argument("--workers", type=_positive_int, default=1)

    parser = argparse.ArgumentParser(prog="cubesections", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="exact I_d(t)")
    p.add_argument("--d", type=_positive_int, required=True)
    p.add_argument("--t", type=parse_t, required=True)
    p.add_argument("--oracle", action="store_true", help="add the quadrature value and envelopes")
    p.set_defaults(run=cmd_eval)

    p = sub.add_parser("constants", parents=[common], help="certified brackets of the named constants")
    p.set_defaults(run=cmd_constants)

    p = sub.add_parser("certify", parents=[common], help="sign certificate for I_{d+1} − I_d on a t-range")
    p.add_argument("--d", type=_positive_int, required=True)
    p.add_argument("--t-min", type=parse_t, required=True)
    p.add_argument("--t-max", type=parse_t, required=True)
    p.set_defaults(run=cmd_certify)

    p = sub.add_parser("monotonicity", parents=[common], help="monotonicity of d ↦ I_d(t)")
    p.add_argument("--t", type=parse_t, nargs="+", required=True)
    p.add_argument("--cap", type=_positive_int, default=450)
    p.set_defaults(run=cmd_monotonicity)

    p = sub.add_parser("supinf", parents=[common], help="sup and inf of I_d(t) over d")
    p.add_argument("--t", type=parse_t, nargs="+", required=True)
    p.add_argument("--verify-tail", action="store_true")
    p.set_defaults(run=cmd_supinf)

    p = sub.add_parser("extremality", parents=[common], help="local extremality at an n-face diagonal")
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--d", type=_positive_int, required=True)
    p.add_argument("--t", type=parse_t, nargs="+", required=True)
    p.set_defaults(run=cmd_extremality)

    p = sub.add_parser("sweep", parents=[common], help="extremality verdicts for 4 ≤ n ≤ n-max")
    p.add_argument("--t", type=parse_t, required=True)
    p.add_argument("--n-max", type=_positive_int, required=True)
    p.add_argument("--d", type=_positive_int, default=None)
    p.set_defaults(run=cmd_sweep)

    p = sub.add_parser("eulerian", parents=[common], help="Eulerian row checks")
    p.add_argument("--d", type=_positive_int, required=True)
    p.add_argument("--check-bound", action="store_true")
    p.add_argument("--row", action="store_true", help="include the row entries")
    p.set_defaults(run=cmd_eulerian)

    p = sub.add_parser("signtable", parents=[common], help="exact sign table (long-running)")
    p.add_argument("--d-min", type=_positive_int, default=1)
    p.add_argument("--d-max", type=_positive_int, required=True)
    p.add_argument("--t-min", type=parse_t, required=True)
    p.add_argument("--t-max", type=parse_t, required=True)
    p.add_argument("--step", type=parse_t, default=Fraction(1, 100))
    p.set_defaults(run=cmd_signtable)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.precision is None:
        args.precision = _precision_default()
    if args.precision < 64:
        parser.print_usage(sys.stderr)
        print("cubesections: error: precision must be an integer ≥ 64", file=sys.stderr)
        return EXIT_PARSE
    if getattr(args, "step", 1) <= 0:
        print("cubesections: error: step must be positive", file=sys.stderr)
        return EXIT_PARSE

    stream = open(args.output, "w", encoding="utf-8", newline="") if args.output else sys.stdout
    try:
        return _run(args, Emitter(stream, args.format))
    except BrokenPipeError:
        # downstream closed early (e.g. `| head`); keep the interpreter quiet on exit
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return EXIT_OK
    finally:
        if args.output:
            stream.close()


def _run(args, emitter: Emitter) -> int:
    try:
        for record in args.run(args):
            emitter.emit(record)
    except CubeSectionsError as exc:
        emitter.finish(False, args.command, f"{type(exc).__name__}: {exc}")
        print(f"cubesections: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    emitter.finish(True, args.command)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
