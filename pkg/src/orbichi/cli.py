"""Command-line front end.

One JSON document (see ``documents``) comes in via a path argument, standard
input (``-``), or ``--bundled NAME``; subcommands expose the invariants and
the series verifier.  Exit status: 0 on success or a passing verification,
1 on a failing verification, 2 on any input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional

from .bundled import bundled_description, bundled_document, bundled_names
from .documents import LoadedDocument, document_from_model, load_document, load_document_text
from .errors import OrbichiError
from .gmodel import FiniteGSet, LinearGAction, wreath_model
from .groups import wreath_product, wreath_type
from .invariants import (
    VerificationReport,
    chi_k_commuting,
    chi_k_recursive,
    chi_lhs_series,
    chi_series_check,
    class_k,
    lhs_series,
    verify_principal,
)
from .motivic import LPolynomial
from .selftest import run_selftest
from .series import TruncatedSeries, rhs_principal


def _parse_phis(text: Optional[str]) -> Optional[tuple[Fraction, ...]]:
    if text is None:
        return None
    try:
        return tuple(Fraction(part.strip()) for part in text.split(","))
    except (ValueError, ZeroDivisionError):
        raise OrbichiError(f"cannot parse --phi value {text!r}; use p/q rationals separated by commas")


def _phis_for(args, k: int) -> tuple[Fraction, ...]:
    phis = _parse_phis(getattr(args, "phi", None))
    if phis is None:
        phis = (Fraction(1),) * k
    if len(phis) < k:
        raise OrbichiError(f"--phi needs at least {k} values for --order {k}")
    return phis


def _add_input_options(sub):
    sub.add_argument("document", nargs="?", help="path of the input JSON document, or '-' for stdin")
    sub.add_argument("--bundled", metavar="NAME", help="use a bundled model instead of a document")
    sub.add_argument("--size-cap", type=int, default=None, help="override the group-size cap")
    sub.add_argument("--format", choices=("text", "json"), default="text")


def _load(args) -> LoadedDocument:
    if args.bundled and args.document:
        raise OrbichiError("give either a document or --bundled, not both")
    if args.bundled:
        return load_document(bundled_document(args.bundled), size_cap=args.size_cap)
    if not args.document:
        raise OrbichiError(
            "an input document is required (path, '-' for stdin, or --bundled NAME); "
            f"bundled models: {', '.join(bundled_names())}"
        )
    if args.document == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(args.document, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise OrbichiError(f"cannot read {args.document}: {exc}")
    return load_document_text(text, size_cap=args.size_cap)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orbichi",
        description="exact orbifold invariants of finite group actions and their wreath series",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("validate", help="validate a document and describe the model")
    _add_input_options(p)
    p.set_defaults(handler=_cmd_validate)

    p = subs.add_parser("classes", help="conjugacy classes (types for wreath powers)")
    _add_input_options(p)
    p.add_argument("--wreath", type=int, metavar="N", help="work in the wreath power G wr S_N")
    p.set_defaults(handler=_cmd_classes)

    p = subs.add_parser("chi", help="integer order-k invariant of a finite G-set")
    _add_input_options(p)
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--commuting", action="store_true", help="use the commuting-tuple form")
    p.add_argument("--wreath", type=int, metavar="N", help="apply to the N-th wreath power")
    p.set_defaults(handler=_cmd_chi)

    p = subs.add_parser("class", help="order-k class of a linear action")
    _add_input_options(p)
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--phi", help="comma-separated rationals, e.g. 1,1 or 1/2,2 (default: all 1)")
    p.add_argument("--euler", action="store_true", help="also print the Euler specialization")
    p.add_argument("--hodge", action="store_true", help="also print the Hodge-Deligne specialization")
    p.add_argument("--wreath", type=int, metavar="N", help="apply to the N-th wreath power")
    p.set_defaults(handler=_cmd_class)

    p = subs.add_parser("inertia", help="inertia class (order 1, phi = 0)")
    _add_input_options(p)
    p.set_defaults(handler=_cmd_inertia)

    for name, help_text in (
        ("series-lhs", "brute-force wreath series, coefficient by coefficient"),
        ("series-rhs", "power-structure product series"),
        ("verify", "compare both series exactly"),
    ):
        p = subs.add_parser(name, help=help_text)
        _add_input_options(p)
        p.add_argument("--order", type=int, required=True)
        p.add_argument("--phi", help="comma-separated rationals (ignored for finite-set documents)")
        p.add_argument("--max-degree", type=int, required=True)
        p.add_argument("--jobs", type=int, default=1, help="parallel evaluation degree")
        p.set_defaults(handler={"series-lhs": _cmd_series_lhs,
                                "series-rhs": _cmd_series_rhs,
                                "verify": _cmd_verify}[name])

    p = subs.add_parser("zeta", help="Kapranov zeta series of an L-polynomial class")
    p.add_argument("--class", dest="cls", required=True, metavar="EXPR",
                   help="e.g. '1 * L + 3 * L^(1/2)' or 'L^2'")
    p.add_argument("--max-degree", type=int, required=True)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(handler=_cmd_zeta)

    p = subs.add_parser("selftest", help="run the bundled-model invariant suite")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(handler=_cmd_selftest)

    return parser


# ---------------------------------------------------------------------------
# handlers
# ---------------------------------------------------------------------------

def _cmd_validate(args) -> int:
    loaded = _load(args)
    model = loaded.model
    info = {
        "name": loaded.name,
        "backend": model.backend,
        "group_order": model.group.order,
        "conjugacy_classes": len(model.group.conjugacy_classes()),
    }
    if isinstance(model, FiniteGSet):
        info["points"] = model.size
    else:
        info["dimension"] = model.dimension
        info["root_order"] = model.root_order
    if args.format == "json":
        out = dict(info)
        out["document"] = document_from_model(model, name=loaded.name)
        print(json.dumps(out, indent=2, sort_keys=True))
    else:
        for key, value in info.items():
            print(f"{key}: {value}")
        print("ok")
    return 0


def _cmd_classes(args) -> int:
    loaded = _load(args)
    base = loaded.model.group
    rows = []
    if args.wreath is not None:
        group = wreath_product(base, args.wreath, cap=args.size_cap)
        for cls in group.conjugacy_classes():
            rep = cls[0]
            wtype = wreath_type(base, args.wreath, group.element(rep))
            rows.append({
                "representative": rep,
                "size": len(cls),
                "element_order": group.element_order(rep),
                "type": wtype.render(base),
            })
    else:
        for cls in base.conjugacy_classes():
            rep = cls[0]
            rows.append({
                "representative": rep,
                "label": base.label(rep),
                "size": len(cls),
                "element_order": base.element_order(rep),
            })
    if args.format == "json":
        print(json.dumps({"count": len(rows), "classes": rows}, indent=2))
    else:
        for row in rows:
            print(" ".join(f"{k}={v}" for k, v in row.items()))
        print(f"count: {len(rows)}")
    return 0


def _require_finite(model) -> FiniteGSet:
    if not isinstance(model, FiniteGSet):
        raise OrbichiError("this command needs a finite_set document")
    return model


def _require_linear(model) -> LinearGAction:
    if not isinstance(model, LinearGAction):
        raise OrbichiError("this command needs a linear document")
    return model


def _cmd_chi(args) -> int:
    model = _require_finite(_load(args).model)
    if args.wreath is not None:
        model = wreath_model(model, args.wreath, cap=args.size_cap)
    value = (
        chi_k_commuting(model, args.order)
        if args.commuting
        else chi_k_recursive(model, args.order)
    )
    if args.format == "json":
        print(json.dumps({"order": args.order, "chi": value}))
    else:
        print(value)
    return 0


def _print_class(args, value: LPolynomial) -> int:
    if args.format == "json":
        out = {"class": value.to_pairs()}
        if getattr(args, "euler", False):
            out["euler"] = value.specialize_euler()
        if getattr(args, "hodge", False):
            out["hodge"] = value.specialize_hodge_deligne()
        print(json.dumps(out))
    else:
        print(value.render())
        if getattr(args, "euler", False):
            print(f"euler: {value.specialize_euler()}")
        if getattr(args, "hodge", False):
            print(f"hodge: {value.specialize_hodge_deligne()}")
    return 0


def _cmd_class(args) -> int:
    model = _require_linear(_load(args).model)
    if args.wreath is not None:
        model = wreath_model(model, args.wreath, cap=args.size_cap)
    phis = _phis_for(args, args.order)
    return _print_class(args, class_k(model, phis, args.order))


def _cmd_inertia(args) -> int:
    model = _require_linear(_load(args).model)
    return _print_class(args, class_k(model, (Fraction(0),), 1))


def _series_out(args, series: TruncatedSeries) -> int:
    if args.format == "json":
        print(json.dumps({
            "max_degree": series.degree,
            "coefficients": [
                {"degree": n, "value": series.coefficient(n).to_pairs()}
                for n in range(series.degree + 1)
            ],
        }))
    else:
        for line in series.render_lines():
            print(line)
    return 0


def _cmd_series_lhs(args) -> int:
    model = _load(args).model
    if isinstance(model, FiniteGSet):
        series = chi_lhs_series(model, args.order, args.max_degree, jobs=args.jobs, cap=args.size_cap)
    else:
        phis = _phis_for(args, args.order)
        series = lhs_series(model, phis, args.order, args.max_degree, jobs=args.jobs, cap=args.size_cap)
    return _series_out(args, series)


def _cmd_series_rhs(args) -> int:
    model = _load(args).model
    if isinstance(model, FiniteGSet):
        base = chi_k_recursive(model, args.order)
        series = rhs_principal(args.order, (Fraction(0),) * args.order, 0,
                               LPolynomial.constant(base), args.max_degree)
    else:
        phis = _phis_for(args, args.order)
        cls = class_k(model, phis, args.order)
        series = rhs_principal(args.order, phis, model.dimension, cls, args.max_degree)
    return _series_out(args, series)


def _cmd_verify(args) -> int:
    model = _load(args).model
    if isinstance(model, FiniteGSet):
        report = chi_series_check(model, args.order, args.max_degree, jobs=args.jobs, cap=args.size_cap)
    else:
        phis = _phis_for(args, args.order)
        report = verify_principal(model, phis, args.order, args.max_degree, jobs=args.jobs, cap=args.size_cap)
    print(render_report(report, args.format))
    return 0 if report.passed else 1


def render_report(report: VerificationReport, fmt: str = "text") -> str:
    """Deterministic rendering of a verification report."""
    if fmt == "json":
        return json.dumps({
            "kind": report.kind,
            "k": report.order,
            "phi": [str(p) for p in report.phis] if report.phis is not None else None,
            "max_degree": report.max_degree,
            "coefficients": [
                {
                    "degree": r.degree,
                    "lhs": r.lhs.to_pairs(),
                    "rhs": r.rhs.to_pairs(),
                    "equal": r.equal,
                }
                for r in report.records
            ],
            "verdict": report.verdict,
            "elapsed_seconds": round(report.elapsed, 3),
        })
    lines = []
    phi_text = ",".join(str(p) for p in report.phis) if report.phis is not None else "-"
    lines.append(f"{report.kind} identity: order={report.order} phi={phi_text} max-degree={report.max_degree}")
    for r in report.records:
        mark = "ok" if r.equal else "MISMATCH"
        lines.append(f"  t^{r.degree} : lhs = {r.lhs.render()} | rhs = {r.rhs.render()} [{mark}]")
    lines.append(f"verdict: {report.verdict} ({report.elapsed:.2f}s)")
    return "\n".join(lines)


def _cmd_zeta(args) -> int:
    value = LPolynomial.parse(args.cls)
    from .series import kapranov_zeta

    series = kapranov_zeta(value, args.max_degree)
    return _series_out(args, series)


def _cmd_selftest(args) -> int:
    results = run_selftest()
    ok = all(passed for _name, passed, _detail in results)
    if args.format == "json":
        print(json.dumps({
            "checks": [
                {"name": name, "passed": passed, "detail": detail}
                for name, passed, detail in results
            ],
            "verdict": "pass" if ok else "fail",
        }, indent=2))
    else:
        for name, passed, detail in results:
            line = f"{'PASS' if passed else 'FAIL'}  {name}"
            if detail:
                line += f"  ({detail})"
            print(line)
        print(f"selftest: {'pass' if ok else 'fail'}")
    return 0 if ok else 1


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.handler(args)
    except OrbichiError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BrokenPipeError:
        return 0


if __name__ == "__main__":
    sys.exit(main())
