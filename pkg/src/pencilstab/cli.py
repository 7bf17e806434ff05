"""Command line front end: ``pencilstab {disc,check,reduce,diagnose} FILE``.

Exit codes: 0 success, 1 usage or parse error, 2 dependent pencil,
3 generic fibre not smooth, 4 internal invariant violation, 5 bad point.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .diagnose import FieldTooLarge, PointNotOnFibre, contains_plane, diagnose_point, min_rank_in_pencil
from .disc import disc_valuation, pencil_determinant, pencil_discriminant
from .fileformat import PencilFile, PencilFileError, load
from .pencil import DependentPencil, plucker, saturate
from .ring import INF, LiteralSyntaxError, format_literal
from .stability import (
    InternalInvariantViolation,
    NonSmoothGenericFibre,
    SearchBudget,
    check_stability,
    semistable_reduce,
)

EXIT_OK, EXIT_USAGE, EXIT_DEPENDENT, EXIT_NONSMOOTH, EXIT_INVARIANT, EXIT_POINT = range(6)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _val(v):
    return "+inf" if v == INF else v


def _matrix(C):
    return [[format_literal(c) for c in row] for row in C.matrix]


def _witness(w):
    if w is None:
        return None
    return {
        "rho": list(w.rho),
        "C": _matrix(w.C),
        "mult": w.mult,
        "bound": str(w.bound),
        "source": w.source,
    }


def _verdict(v, n):
    return {
        "status": v.status.value,
        "witness": _witness(v.witness),
        "certificate": {
            "disc_valuation": _val(v.disc_valuation),
            "threshold": n - 2,
            "certified": v.disc_valuation <= n - 2,
        },
    }


def _budget(args):
    return SearchBudget(
        max_weight_sum=args.max_weight_sum,
        max_random_coord_changes=args.coord_random,
        rng_seed=args.seed,
        max_reduction_steps=args.max_steps,
    )


def _header(cmd, pf):
    return {
        "command": cmd,
        "version": __version__,
        "name": pf.name,
        "field": str(pf.field),
        "n": pf.n,
    }


def _normalized(pf):
    P = pf.to_pencil()
    Q, shed = saturate(P)
    return Q, shed


def cmd_disc(pf, args):
    P = pf.to_pencil()
    plucker(P)  # raises DependentPencil
    delta = pencil_determinant(P)
    v = disc_valuation(P)
    report = _header("disc", pf)
    report.update({
        "delta": [format_literal(c) for c in delta.coeffs],
        "discriminant": format_literal(pencil_discriminant(P)) if P.n >= 2 else "1",
        "disc_valuation": _val(v),
        "smooth": v != INF,
    })
    return report


def cmd_check(pf, args):
    budget = _budget(args)
    P, shed = _normalized(pf)
    report = _header("check", pf)
    report["budget"] = budget.as_dict()
    report["normalization_shed"] = shed
    report.update(_verdict(check_stability(P, budget), P.n))
    return report


def cmd_reduce(pf, args):
    budget = _budget(args)
    P, shed = _normalized(pf)
    trace = semistable_reduce(P, budget)
    out = PencilFile.from_pencil(trace.final, name=pf.name, comment=pf.comment)
    report = _header("reduce", pf)
    report["budget"] = budget.as_dict()
    report["normalization_shed"] = shed
    report["steps"] = [
        {
            "rho": list(s.rho),
            "C": _matrix(s.C),
            "mult": s.mult,
            "disc_val_before": s.disc_before,
            "disc_val_after": s.disc_after,
            "drop": s.drop,
        }
        for s in trace.steps
    ]
    report["hit_step_limit"] = trace.hit_step_limit
    report["final"] = _verdict(trace.final_verdict, P.n)
    report["output"] = out.to_json()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(out.dumps())
    return report


def _parse_point(field, text, n):
    parts = text.split(":")
    if len(parts) != n:
        raise PointNotOnFibre(f"point needs {n} coordinates, got {len(parts)}")
    try:
        return tuple(field(p.strip()) for p in parts)
    except (ValueError, ZeroDivisionError, LiteralSyntaxError) as exc:
        raise PointNotOnFibre(f"bad coordinate in {text!r}: {exc}") from exc


def cmd_diagnose(pf, args):
    P, shed = _normalized(pf)
    fibre = P.central_fibre()
    report = _header("diagnose", pf)
    report["normalization_shed"] = shed
    report["min_rank"] = min_rank_in_pencil(fibre)
    if P.field.p is None:
        report["contains_plane"] = None
        report["contains_plane_note"] = "only available over GF(p)"
    else:
        try:
            report["contains_plane"] = contains_plane(fibre)
        except FieldTooLarge as exc:
            report["contains_plane"] = None
            report["contains_plane_note"] = str(exc)
    if args.point:
        pt = _parse_point(P.field, args.point, P.n)
        d = diagnose_point(P, pt)
        report["point"] = {
            "coordinates": [str(Fraction(x)) for x in d.point],
            "is_singular": d.is_singular,
            "is_hypersurface_singularity": d.is_hypersurface_singularity,
        }
    return report


COMMANDS = {"disc": cmd_disc, "check": cmd_check, "reduce": cmd_reduce, "diagnose": cmd_diagnose}


def build_parser():
    parser = _Parser(prog="pencilstab", description="Stability of pencils of quadrics over a DVR.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    defaults = SearchBudget()
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("file")
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.add_argument("--max-degree", type=int, default=None, help="cap on input t-exponents")
        if name in ("check", "reduce"):
            p.add_argument("--max-weight-sum", type=int, default=defaults.max_weight_sum)
            p.add_argument("--coord-random", type=int, default=defaults.max_random_coord_changes)
            p.add_argument("--seed", type=int, default=defaults.rng_seed)
            p.add_argument("--max-steps", type=int, default=defaults.max_reduction_steps)
        if name == "reduce":
            p.add_argument("--out", default=None)
        if name == "diagnose":
            p.add_argument("--point", default=None, help='projective point "a1:...:an"')
    return parser


def _text(report, indent=0):
    lines = []
    pad = "  " * indent
    for key in sorted(report):
        value = report[key]
        if isinstance(value, dict):
            lines.append(f"{pad}{key}:")
            lines.extend(_text(value, indent + 1))
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            lines.append(f"{pad}{key}:")
            for k, item in enumerate(value):
                lines.append(f"{pad}  [{k}]")
                lines.extend(_text(item, indent + 2))
        else:
            lines.append(f"{pad}{key}: {json.dumps(value)}")
    return lines


def render(report, fmt):
    if fmt == "text":
        return "\n".join(_text(report)) + "\n"
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    err = sys.stderr
    try:
        if args.command in ("check", "reduce"):
            if args.max_weight_sum < 0 or args.coord_random < 0 or args.max_steps < 0:
                raise UsageError("budget flags must be non-negative")
        pf = load(args.file, max_degree=args.max_degree)
        report = COMMANDS[args.command](pf, args)
    except (UsageError, PencilFileError, OSError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE
    except DependentPencil as exc:
        print(f"DependentPencil: {exc}", file=err)
        return EXIT_DEPENDENT
    except NonSmoothGenericFibre as exc:
        print(f"NonSmoothGenericFibre: {exc}", file=err)
        return EXIT_NONSMOOTH
    except InternalInvariantViolation as exc:
        print(f"InternalInvariantViolation: {exc}", file=err)
        return EXIT_INVARIANT
    except PointNotOnFibre as exc:
        print(f"PointNotOnFibre: {exc}", file=err)
        return EXIT_POINT
    sys.stdout.write(render(report, args.format))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
