"""Command line entry point.

Exit codes: 0 success (analysis outcomes are report content), 1 an internal
verification failed, 2 input or usage error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .errors import ArtinLabError, EnumerationOverflow, InputError, InternalConsistencyError


def rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from exc
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return v


def int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a comma-separated integer list: {text!r}") from exc


class VerificationFailure(Exception):
    """A formula that must hold did not; carries the report for output."""

    def __init__(self, report, what):
        super().__init__(what)
        self.report = report


# -- subcommands ---------------------------------------------------------------------------


def cmd_group_analyze(args) -> dict:
    from .matgroup import check_C_property, charpoly_histogram, is_semisimple, load_group, wedderburn_rewrite
    from .matgroup.modules import is_absolutely_irreducible, is_irreducible

    if not 0 < args.eta < 1:
        raise InputError("eta must lie in (0, 1)")
    G = load_group(args.input, cap=args.cap)
    hist = charpoly_histogram(G)
    cres = check_C_property(G, args.eta, args.N)
    report = {
        "group": G.to_json(),
        "order": G.order,
        "M": hist.M,
        "distinct_charpolys": len(hist.counts),
        "C_property": "holds" if cres.holds else "fails",
        "summary": f"C-property: {'holds' if cres.holds else 'fails'}",
        "C_witness": cres.to_json(),
    }
    if G.n <= 6:
        report["semisimplicity"] = is_semisimple(G).to_json()
        irr = is_irreducible(G)
        report["irreducible"] = irr
        if irr:
            report["absolutely_irreducible"] = is_absolutely_irreducible(G)
            report["wedderburn"] = wedderburn_rewrite(G).to_json()
    return report


def cmd_chevalley_verify(args) -> dict:
    from .chevalley import ChevalleySpec, make_group, order_bound_report, semisimple_classes

    spec = ChevalleySpec(args.family, args.n, args.q)
    G = make_group(spec, cap=args.cap)
    bounds = order_bound_report(spec, G.order)
    classes = semisimple_classes(spec, G)
    rows = [c.to_json() for c in classes]
    failures = []
    if G.order != spec.order:
        failures.append("group order differs from the order formula")
    if not bounds.ok:
        failures.append("order bounds")
    for c in classes:
        if c.M_observed != c.M_predicted:
            failures.append(f"counting formula at class {c.rep_index}")
        if not c.sandwich_ok:
            failures.append(f"sandwich at class {c.rep_index}")
        if c.unipotent_observed != c.unipotent_predicted:
            failures.append(f"Steinberg count at class {c.rep_index}")
    report = {
        "spec": spec.to_json(),
        "order_observed": G.order,
        "order_bounds": bounds.to_json(),
        "semisimple_classes": rows,
        "all_sandwich_ok": all(c.sandwich_ok for c in classes),
        "failures": failures,
    }
    if failures:
        raise VerificationFailure(report, "; ".join(failures))
    return report


def cmd_satake_check(args) -> dict:
    from .satake import check_duality, check_integrality, load_system, rankin_partial_sum

    S = load_system(args.input)
    per_prime = []
    for p in S.primes:
        row = {"p": p, "integral": check_integrality(S, p)}
        if p in S.alphas:
            row["duality"] = all(check_duality(S, p, m) for m in range(S.n + 1))
        per_prime.append(row)
    failures = [r["p"] for r in per_prime if r.get("duality") is False]
    report = {
        "n": S.n,
        "N": S.N,
        "field": list(S.K.defining_poly),
        "primes": len(S.primes),
        "per_prime": per_prime,
        "all_integral": all(r["integral"] for r in per_prime),
    }
    if args.P:
        report["rankin"] = [
            rankin_partial_sum(S, m, args.s, args.P, slack=args.slack).to_json() for m in range(1, S.n + 1)
        ]
    if failures:
        raise VerificationFailure(report, f"duality failed at p = {failures[:5]}")
    return report


def cmd_density_scan(args) -> dict:
    from .density import classify_X, densup_estimate, enumerate_Y, threshold_c
    from .satake import load_system

    if not 0 < args.eta < 1:
        raise InputError("eta must lie in (0, 1)")
    S = load_system(args.input)
    N = args.N or S.N
    c = threshold_c(args.eta, S.n, S.K.degree)
    ex = classify_X(S, c, N)
    report = {"c": str(c), "N": N, "exceptional": ex.to_json()}
    try:
        Yc = enumerate_Y(S.K, c)
        report["Y_c_size"] = len(Yc)
    except EnumerationOverflow as exc:
        report["Y_c_size"] = None
        report["Y_c_note"] = str(exc)
    try:
        YN = enumerate_Y(S.K, N * N * c)
        report["Y_N2c_size"] = len(YN)
        report["finite_tuple_bound"] = len(YN) ** S.n
        if len(ex.tuples) > len(YN) ** S.n:
            raise VerificationFailure(report, "tuple count exceeds |Y(N^2 c)|^n")
    except EnumerationOverflow as exc:
        report["Y_N2c_size"] = None
        report["Y_N2c_note"] = str(exc)
    report["finite_tuple_count"] = len(ex.tuples)
    P = args.P or (max(S.primes) if S.primes else 2)
    report["densup_table"] = densup_estimate(set(ex.X), args.s or [Fraction(10001, 10000)], P).to_json()
    return report


def cmd_params_verify(args) -> dict:
    from .langlands_params import LocalParameterPair, check_wedge_asai_identity, gsp4_report

    g = gsp4_report()
    rnd = random.Random(args.seed)

    def r():
        return Fraction(rnd.choice((-1, 1)) * rnd.randint(1, 20), rnd.randint(1, 7))

    split_ok = inert_ok = 0
    for _ in range(args.trials):
        split_ok += check_wedge_asai_identity(LocalParameterPair.split_pair((r(), r()), (r(), r())), 1)
        while True:
            m = [[r(), r()], [r(), r()]]
            if m[0][0] * m[1][1] != m[0][1] * m[1][0]:
                break
        inert_ok += check_wedge_asai_identity(LocalParameterPair.inert_pair(m), -1)
    report = {
        "gsp4": g.to_json(),
        "wedge_asai": {"seed": args.seed, "trials": args.trials, "split_ok": split_ok, "inert_ok": inert_ok},
    }
    if not g.ok or split_ok != args.trials or inert_ok != args.trials:
        raise VerificationFailure(report, "a GSp4 or wedge/Asai identity failed")
    return report


def _load_field(path):
    from .arith import NumberField

    if path is None:
        return None
    try:
        obj = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: malformed JSON ({exc})") from exc
    coeffs = obj.get("field") if isinstance(obj, dict) else obj
    if not isinstance(coeffs, list):
        raise InputError(f"{path}: expected a coefficient list or {{'field': [...]}}")
    return NumberField.from_poly(coeffs)


def cmd_recover_run(args) -> dict:
    from .recover import ModLFrobTable, match_frobenius, schur_zassenhaus_lift, verify_certificate
    from .recover.synthetic import EXAMPLES

    tables = [ModLFrobTable.load(p) for p in args.tables]
    K = _load_field(args.K)
    if K is not None and any(t.K != K for t in tables):
        raise InputError("table field differs from --K")
    cert = match_frobenius(tables, args.A, conjugation=args.conjugation)
    if not verify_certificate(cert, tables):
        raise InternalConsistencyError("certificate does not reduce to the tables")
    if args.lift_example:
        ex = EXAMPLES[args.lift_example]()
        ell = args.lift_ell or tables[0].ell
        cert.lift = schur_zassenhaus_lift(ex.image(ell), args.lift_k, A=args.A).to_json()
    return cert.to_json()


def cmd_recover_synth(args) -> dict:
    from .recover.synthetic import EXAMPLES

    ex = EXAMPLES[args.example]()
    t = ex.table(args.ell, args.P)
    if args.out is None:
        raise InputError("recover synth needs --out")
    t.dump(args.out)
    return {"example": args.example, "ell": args.ell, "root": t.root, "entries": len(t.entries), "path": str(args.out)}


# -- parser ------------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="artinlab", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    top = ap.add_subparsers(dest="command", required=True)

    def out_flag(p):
        p.add_argument("--out", type=Path, help="write the JSON report here (default: stdout)")

    grp = top.add_parser("group").add_subparsers(dest="action", required=True)
    p = grp.add_parser("analyze", help="histogram, C(eta, N), semisimplicity, Wedderburn data")
    p.add_argument("--in", dest="input", type=Path, required=True)
    p.add_argument("--eta", type=rational, required=True)
    p.add_argument("--N", type=positive_int, required=True)
    p.add_argument("--cap", type=positive_int, default=200_000)
    out_flag(p)
    p.set_defaults(func=cmd_group_analyze)

    chev = top.add_parser("chevalley").add_subparsers(dest="action", required=True)
    p = chev.add_parser("verify", help="order bounds, counting formula and Steinberg counts")
    p.add_argument("--family", choices=("SL", "Sp"), required=True)
    p.add_argument("--n", type=positive_int, required=True)
    p.add_argument("--q", type=positive_int, required=True)
    p.add_argument("--cap", type=positive_int, default=200_000)
    out_flag(p)
    p.set_defaults(func=cmd_chevalley_verify)

    sat = top.add_parser("satake").add_subparsers(dest="action", required=True)
    p = sat.add_parser("check", help="duality, integrality and Rankin-Selberg partial sums")
    p.add_argument("--in", dest="input", type=Path, required=True)
    p.add_argument("--s", type=rational, default=Fraction(2))
    p.add_argument("--P", type=positive_int, default=None)
    p.add_argument("--slack", type=rational, default=Fraction(0))
    out_flag(p)
    p.set_defaults(func=cmd_satake_check)

    den = top.add_parser("density").add_subparsers(dest="action", required=True)
    p = den.add_parser("scan", help="threshold c, Y(c), X(c) and den.sup estimates")
    p.add_argument("--in", dest="input", type=Path, required=True)
    p.add_argument("--eta", type=rational, required=True)
    p.add_argument("--N", type=positive_int, default=None)
    p.add_argument("--P", type=positive_int, default=None)
    p.add_argument("--s", type=rational, nargs="+", default=None)
    out_flag(p)
    p.set_defaults(func=cmd_density_scan)

    par = top.add_parser("params").add_subparsers(dest="action", required=True)
    p = par.add_parser("verify", help="GSp4 conjugacy and the wedge/Asai identity")
    p.add_argument("--trials", type=positive_int, default=100)
    p.add_argument("--seed", type=int, default=0)
    out_flag(p)
    p.set_defaults(func=cmd_params_verify)

    rec = top.add_parser("recover").add_subparsers(dest="action", required=True)
    p = rec.add_parser("run", help="match mod-ell Frobenius tables against Y")
    p.add_argument("--tables", type=Path, nargs="+", required=True)
    p.add_argument("--A", type=positive_int, required=True)
    p.add_argument("--K", type=Path, default=None, help="JSON file with the coefficient field")
    p.add_argument("--conjugation", type=int_list, default=None, help="det(1 - rho(c) T), e.g. 1,0,-1")
    p.add_argument("--lift-example", choices=("trivial", "C4", "S3", "A4"), default=None)
    p.add_argument("--lift-ell", type=positive_int, default=None)
    p.add_argument("--lift-k", type=positive_int, default=4)
    out_flag(p)
    p.set_defaults(func=cmd_recover_run)
    p = rec.add_parser("synth", help="write a synthetic mod-ell Frobenius table")
    p.add_argument("--example", choices=("trivial", "C4", "S3", "A4"), required=True)
    p.add_argument("--ell", type=positive_int, required=True)
    p.add_argument("--P", type=positive_int, default=1000)
    p.add_argument("--out", type=Path, default=None)
    p.set_defaults(func=cmd_recover_synth, report_to_stdout=True)
    return ap


def _check_paths(args):
    paths = []
    for name in ("input", "out", "K"):
        v = getattr(args, name, None)
        if v is not None:
            paths.append(Path(v).resolve())
    for v in getattr(args, "tables", None) or []:
        paths.append(Path(v).resolve())
    if len(paths) != len(set(paths)):
        raise InputError("input and output paths must be distinct")


def _emit(report, args):
    text = json.dumps(report, sort_keys=True, indent=2, default=str) + "\n"
    out = getattr(args, "out", None)
    if out is not None and not getattr(args, "report_to_stdout", False):
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        _check_paths(args)
        report = args.func(args)
    except VerificationFailure as exc:
        _emit(exc.report, args)
        print(f"artinlab: verification failed: {exc}", file=sys.stderr)
        return 1
    except InternalConsistencyError as exc:
        print(f"artinlab: internal consistency failure: {exc}", file=sys.stderr)
        return 1
    except EnumerationOverflow as exc:
        print(f"artinlab: cap exceeded: {exc}", file=sys.stderr)
        return 2
    except ArtinLabError as exc:
        print(f"artinlab: input error ({type(exc).__name__}): {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"artinlab: file not found: {exc.filename}", file=sys.stderr)
        return 2
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        print(f"artinlab: malformed input: {exc}", file=sys.stderr)
        return 2
    _emit(report, args)
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
