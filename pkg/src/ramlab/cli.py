"""Command-line front end: JSON in, deterministic JSON or CSV out.

Exit status is 0 on success, 1 for malformed input, 2 when the input parses
but fails a domain check, and 3 when ``check`` finds a failing property.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Any, Mapping

from . import checks
from .breakdec import FilteredRep, break_decompose, verify_break_props
from .conductor import (
    beta_function,
    delta_from_profile,
    newton_breaks,
    parse_profile,
    swan_limit,
)
from .laurent import (
    Impossible,
    LaurentVal,
    NotUnit,
    RadiusInterval,
    Side,
    gauss_val,
    pth_root_shrink,
    sup_val,
    unit_decompose,
)
from .plfun import emit_plot_csv
from .ramify import (
    RamPoint,
    artin_flat,
    delta_value,
    different_val,
    jumps_lower,
    jumps_upper,
    ram_from_kummer,
    swan_nat,
)
from .valgroup import DomainError, as_rat, format_rat, value_to_json

EXIT_OK = 0
EXIT_MALFORMED = 1
EXIT_DOMAIN = 2
EXIT_CHECK = 3


class Malformed(Exception):
    pass


class RawText(str):
    """Output emitted verbatim instead of as a JSON document."""


def _need(obj: Any, key: str):
    if not isinstance(obj, Mapping) or key not in obj:
        raise Malformed(f"missing field {key!r}")
    return obj[key]


def _prime(obj: Mapping, args) -> int:
    p = obj.get("p", args.p)
    if p is None:
        raise Malformed("a prime p is required (input field 'p' or --p)")
    return int(p)


def cmd_gauss(obj, args):
    f = LaurentVal.from_json(_need(obj, "f"))
    side = Side.parse(obj.get("side", "inner"))
    return value_to_json(gauss_val(f, as_rat(_need(obj, "rho")), side))


def cmd_supnorm(obj, args):
    f = LaurentVal.from_json(_need(obj, "f"))
    return value_to_json(sup_val(f, RadiusInterval.from_json(_need(obj, "interval"))))


def cmd_proot(obj, args):
    interval = RadiusInterval.from_json(_need(obj, "interval"))
    p = _prime(obj, args)
    out: dict = {}
    try:
        if "u" in obj:
            dec = unit_decompose(LaurentVal.from_json(obj["u"]), interval)
            out["unit"] = {"n": dec.n, "c": format_rat(dec.c), "h": dec.h.to_json()}
            h = dec.h
        else:
            h = LaurentVal.from_json(_need(obj, "h"))
        sigma, strict = pth_root_shrink(h, interval, p)
    except NotUnit:
        return {"status": "not_unit"}
    except Impossible:
        return {"status": "impossible", **out}
    return {"status": "ok", **out, "shrink": format_rat(sigma), "strict": strict}


def _rampoint(obj, args) -> RamPoint:
    if "kummer" in obj:
        k = obj["kummer"]
        return ram_from_kummer(int(_need(k, "n")), _prime(k, args), as_rat(k.get("rho", 0)))
    return RamPoint.from_json(obj)


def cmd_ram(obj, args):
    rp = _rampoint(obj, args)
    return {
        "jumps_lower": [v.to_json() for v in jumps_lower(rp)],
        "jumps_upper": [v.to_json() for v in jumps_upper(rp)],
        "artin_flat": artin_flat(rp).to_json(),
        "swan_nat": swan_nat(rp).to_json(),
        "delta_value": format_rat(delta_value(rp)),
        "different": different_val(rp).to_json(),
    }


def cmd_breakdec(obj, args):
    rep = FilteredRep.from_json(obj)
    dec = break_decompose(rep)
    return {**dec.to_json(), "verify": verify_break_props(rep, dec).to_json()}


def cmd_delta(obj, args):
    pr = parse_profile(obj, args.p)
    d = delta_from_profile(pr)
    if args.format == "csv":
        return RawText(emit_plot_csv(d))
    return {"delta": d.to_json(), "swan_limit": format_rat(swan_limit(pr))}


def cmd_newton(obj, args):
    pr = parse_profile(obj, args.p)
    return {
        "beta": beta_function(pr).to_json(),
        "breaks": [b.to_json() for b in newton_breaks(pr)],
        "linearity_onset": format_rat(pr.linearity_onset),
    }


def cmd_check(obj, args):
    only = args.suite or (obj.get("only") if isinstance(obj, Mapping) else None)
    if only:
        unknown = sorted(set(only) - set(checks.SUITES))
        if unknown:
            raise Malformed(f"unknown suites {unknown}")
    seed = _seed(args)
    results = checks.run_all(seed, only)
    return {
        "seed": seed,
        "passed": all(r.passed for r in results),
        "suites": [r.to_json() for r in results],
    }


COMMANDS = {
    "gauss": cmd_gauss,
    "supnorm": cmd_supnorm,
    "proot": cmd_proot,
    "ram": cmd_ram,
    "breakdec": cmd_breakdec,
    "delta": cmd_delta,
    "newton": cmd_newton,
    "check": cmd_check,
}


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("RAMLAB_SEED")
    if env:
        try:
            return int(env)
        except ValueError:
            raise Malformed(f"RAMLAB_SEED={env!r} is not an integer") from None
    return 0


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        # usage errors count as malformed input, keeping 2 for domain failures
        self.print_usage(sys.stderr)
        self.exit(EXIT_MALFORMED, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="ramlab", description="Exact ramification invariants.")
    ap.add_argument("command", choices=sorted(COMMANDS))
    ap.add_argument("--input", "-i", default=None,
                    help="JSON input file, '-' for stdin (the default, except for check)")
    ap.add_argument("--output", "-o", default="-", help="output file, '-' for stdout")
    ap.add_argument("--format", choices=("json", "csv"), default="json")
    ap.add_argument("--p", type=int, default=None, help="residue characteristic when the input omits it")
    ap.add_argument("--seed", type=int, default=None, help="seed for the randomized suites")
    ap.add_argument("--suite", action="append", help="restrict check to the named suite (repeatable)")
    return ap


def _read_input(args):
    if args.input is None and args.command == "check":
        return {}
    if args.input in (None, "-"):
        text = sys.stdin.read()
    else:
        with open(args.input) as fh:
            text = fh.read()
    if not text.strip():
        if args.command == "check":
            return {}
        raise Malformed("empty input")
    return json.loads(text)


def render(result) -> str:
    if isinstance(result, RawText):
        return str(result)
    return json.dumps(result, indent=2, ensure_ascii=True) + "\n"


def run(args) -> int:
    try:
        obj = _read_input(args)
        if args.format == "csv" and args.command != "delta":
            raise Malformed("csv output is only available for delta")
        result = COMMANDS[args.command](obj, args)
    except DomainError as e:
        print(f"ramlab: domain error: {e}", file=sys.stderr)
        return EXIT_DOMAIN
    except (Malformed, json.JSONDecodeError, KeyError, TypeError, ValueError, AttributeError) as e:
        print(f"ramlab: malformed input: {e}", file=sys.stderr)
        return EXIT_MALFORMED
    text = render(result)
    if args.output == "-":
        sys.stdout.write(text)
    else:
        with open(args.output, "w", newline="") as fh:
            fh.write(text)
    if args.command == "check" and not result["passed"]:
        return EXIT_CHECK
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return run(args)


if __name__ == "__main__":
    sys.exit(main())
