"""Command-line front end.

Exit codes: 0 success, 1 a mathematical check failed (the report carries the
evidence), 2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from dataclasses import dataclass

from .cayley import cayley_embed, eta, group_by_name, noether_transfer, random_invariant
from .errors import BudgetExceeded, InvalidCartanType, LemmaViolation, NotMember, ParseError, ShapeMismatch
from .invariants import basic_invariants, invariant_basis, jacobian_certificate, molien_series
from .normality import check_dn_even_degrees, check_first_degree_generation, check_polarization_generation, check_sigma_antiinvariance
from .polarization import UnsupportedType, polarize_all
from .poly import format_poly, parse_poly
from .semigroup import Decomposer, DegreeVector, verify_generation
from .weyl import CartanType, weyl_group

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    fmt: str = "json"
    out: str | None = None
    threads: int = 1
    timings: bool = True


def _bounded_int(name, low):
    def conv(s):
        try:
            v = int(s)
        except ValueError:
            raise argparse.ArgumentTypeError(f"{name} must be an integer, got {s!r}")
        if v < low:
            raise argparse.ArgumentTypeError(f"{name} must be >= {low}, got {v}")
        return v
    return conv


def _positive(name):
    return _bounded_int(name, 1)


def _nonneg(name):
    return _bounded_int(name, 0)


def _int_list(s: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in s.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {s!r}")


def _ctype(s: str) -> CartanType:
    try:
        return CartanType.parse(s)
    except (InvalidCartanType, ValueError) as e:
        raise argparse.ArgumentTypeError(str(e))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="fmt", choices=("json", "csv", "text"), default="json")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--threads", type=_positive("--threads"), default=1)
    common.add_argument("--no-timings", dest="timings", action="store_false",
                        help="omit wall-clock fields so reports are byte-identical across runs")

    p = argparse.ArgumentParser(prog="weylnormal", description="Invariants of Weyl groups and degree-one generation checks.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("degrees", parents=[common], help="basic invariant degrees and |W|")
    s.add_argument("--type", dest="ctype", type=_ctype, required=True)

    s = sub.add_parser("invariants", parents=[common], help="basis of one invariant slice")
    s.add_argument("--type", dest="ctype", type=_ctype, required=True)
    s.add_argument("--m", type=_positive("--m"), default=1)
    s.add_argument("--degree", type=_nonneg("--degree"), required=True)
    s.add_argument("--budget", type=_positive("--budget"), default=250_000)

    s = sub.add_parser("polarize", parents=[common], help="polarizations of a one-copy polynomial")
    s.add_argument("--poly", required=True, help="e.g. 'x1_1^2 + x1_2^2'")
    s.add_argument("--m", type=_positive("--m"), required=True)
    s.add_argument("--n", type=_positive("--n"), help="coordinates per copy (default: highest index used)")

    s = sub.add_parser("molien", parents=[common], help="graded invariant dimensions")
    s.add_argument("--type", dest="ctype", type=_ctype, required=True)
    s.add_argument("--m", type=_positive("--m"), default=1)
    s.add_argument("--max-degree", type=_nonneg("--max-degree"), default=12)

    s = sub.add_parser("semigroup", help="the degree semigroup M_d")
    ss = s.add_subparsers(dest="action", required=True)
    a = ss.add_parser("decompose", parents=[common])
    a.add_argument("--d", type=_int_list, required=True)
    a.add_argument("--m", dest="vec", type=_int_list, required=True)
    a = ss.add_parser("verify", parents=[common])
    a.add_argument("--d", type=_int_list, required=True)
    a.add_argument("--bound", type=_positive("--bound"))
    a.add_argument("--cross-check", action="store_true", help="compare with the BFS oracle")

    s = sub.add_parser("check-normality", parents=[common], help="degree-one generation up to q_max")
    s.add_argument("--type", dest="ctype", type=_ctype, required=True)
    s.add_argument("--m", type=_positive("--m"), default=1)
    s.add_argument("--qmax", type=_positive("--qmax"), default=2)

    s = sub.add_parser("check-polarization", parents=[common], help="do the generators fill every degree?")
    s.add_argument("--type", dest="ctype", type=_ctype, required=True)
    s.add_argument("--m", type=_positive("--m"), default=2)
    s.add_argument("--max-degree", type=_positive("--max-degree"), default=6)

    s = sub.add_parser("check-dn", parents=[common], help="type D parity checks")
    s.add_argument("--n", type=_positive("--n"), required=True)
    s.add_argument("--m", type=_positive("--m"), default=2)

    s = sub.add_parser("cayley-demo", parents=[common], help="transfer of an invariant through the Cayley embedding")
    s.add_argument("--group", default="S3", help="trivial, C2 or S<k>")
    s.add_argument("--degree", type=_positive("--degree"), default=3)
    s.add_argument("--seed", type=int, default=0)
    return p


# -- commands ----------------------------------------------------------------


def cmd_degrees(args):
    W = weyl_group(args.ctype)
    system = basic_invariants(args.ctype)
    point, value = jacobian_certificate(system)
    ok = system.degree_product == W.order
    rep = {"type": str(args.ctype), "order": W.order, "degrees": system.degrees,
           "degree_product": system.degree_product, "product_equals_order": ok,
           "invariants": [format_poly(f) for f in system.polys],
           "jacobian_point": point, "jacobian_value": str(value), "pass": ok}
    return rep, ok


def cmd_invariants(args):
    W = weyl_group(args.ctype)
    B = invariant_basis(W, args.m, args.degree, budget=args.budget, threads=args.threads)
    target = molien_series(W, args.m, args.degree)[args.degree]
    ok = B.rank == target
    rep = {"type": str(args.ctype), "m": args.m, "degree": args.degree, "dim": B.rank,
           "molien_dim": target, "pass": ok, "basis": [format_poly(r) for r in B.rows()]}
    return rep, ok


def cmd_polarize(args):
    f = parse_poly(args.poly)
    if f.m != 1:
        raise UsageError("polarize expects a polynomial in the first copy only")
    if args.n is not None:
        if args.n < f.n:
            raise UsageError(f"--n {args.n} is smaller than the highest coordinate used ({f.n})")
        f = parse_poly(args.poly, shape=(1, args.n))
    if not f.is_homogeneous():
        raise UsageError("polarization needs a homogeneous polynomial")
    fam = polarize_all(f, args.m)
    members = {",".join(map(str, a)): format_poly(p) for a, p in fam.members.items()}
    return {"source": format_poly(f), "m": args.m, "members": members}, True


def cmd_molien(args):
    W = weyl_group(args.ctype)
    series = molien_series(W, args.m, args.max_degree)
    return {str(d): v for d, v in enumerate(series)}, True


def cmd_semigroup(args):
    d = DegreeVector(args.d)
    if args.action == "decompose":
        if len(args.vec) != d.r:
            raise UsageError(f"--m has {len(args.vec)} entries, --d has {d.r}")
        if any(x < 0 for x in args.vec):
            raise UsageError("--m entries must be nonnegative")
        try:
            dec = Decomposer(d).decompose(args.vec)
        except NotMember as e:
            return {"d": list(d.d), "N": d.N, "target": list(args.vec), "member": False,
                    "weight": d.weight(args.vec), "reason": str(e), "pass": False}, False
        rep = {"d": list(d.d), "N": d.N, "member": True, **dec.to_json(), "pass": dec.check(d)}
        return rep, rep["pass"]
    rep = verify_generation(d, args.bound, cross_check=args.cross_check).to_json()
    ok = rep["pass"] and rep["bfs_agrees"] is not False
    rep["pass"] = ok
    return rep, ok


def cmd_check_normality(args):
    r = check_first_degree_generation(args.ctype, args.m, args.qmax, threads=args.threads)
    return r.to_json(), r.passed


def cmd_check_polarization(args):
    r = check_polarization_generation(args.ctype, args.m, args.max_degree)
    return r.to_json(), r.passed


def cmd_check_dn(args):
    if args.n < 3:
        raise UsageError("check-dn needs n >= 3")
    if args.n % 2:
        r = check_sigma_antiinvariance(args.n, args.m)
        rep = {"check": "sigma-antiinvariance", **r.to_json()}
    else:
        r = check_dn_even_degrees(args.n, args.m)
        rep = {"check": "even-degrees", **r.to_json()}
    return rep, r.passed


def cmd_cayley_demo(args):
    try:
        G = group_by_name(args.group)
    except ValueError as e:
        raise UsageError(str(e))
    emb = cayley_embed(G)
    f = random_invariant(G, args.degree, random.Random(args.seed))
    fp = noether_transfer(f, G)
    back = eta(fp, G)
    ok = back == f and emb.is_homomorphism(G)
    rep = {"group": args.group, "order": G.order, "rep_dim": G.dim,
           "elements": G.names,
           "embedding": {G.names[a]: list(p) for a, p in enumerate(emb.permutations)},
           "f": format_poly(f), "f_transfer": format_poly(fp), "eta_f_transfer": format_poly(back),
           "identity_holds": back == f, "pass": ok}
    return rep, ok


COMMANDS = {
    "degrees": cmd_degrees,
    "invariants": cmd_invariants,
    "polarize": cmd_polarize,
    "molien": cmd_molien,
    "semigroup": cmd_semigroup,
    "check-normality": cmd_check_normality,
    "check-polarization": cmd_check_polarization,
    "check-dn": cmd_check_dn,
    "cayley-demo": cmd_cayley_demo,
}


# -- rendering ---------------------------------------------------------------


def _strip_timings(obj):
    if isinstance(obj, dict):
        return {k: _strip_timings(v) for k, v in obj.items() if k != "elapsed_ms"}
    if isinstance(obj, list):
        return [_strip_timings(v) for v in obj]
    return obj


def _flat(v, sep=";"):
    if isinstance(v, (list, tuple)):
        return sep.join(_flat(x, sep) for x in v)
    if isinstance(v, dict):
        return json.dumps(v, sort_keys=True)
    if isinstance(v, bool):
        return "true" if v else "false"
    return "" if v is None else str(v)


def render_csv(rep: dict) -> str:
    """Scalar fields become columns; a ``levels`` list becomes one row per level."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    top = {k: v for k, v in rep.items() if k != "levels"}
    levels = rep.get("levels")
    if isinstance(levels, list) and levels and isinstance(levels[0], dict):
        cols = [k for k in top if not isinstance(top[k], (dict, list))]
        lcols = list(levels[0])
        w.writerow(cols + [f"level_{c}" for c in lcols])
        for lv in levels:
            w.writerow([_flat(top[c]) for c in cols] + [_flat(lv[c]) for c in lcols])
    else:
        w.writerow(list(rep))
        w.writerow([_flat(v) for v in rep.values()])
    return buf.getvalue()


def render_text(rep: dict, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    for k, v in rep.items():
        if isinstance(v, dict):
            lines.append(f"{pad}{k}:")
            lines.append(render_text(v, indent + 1))
        elif isinstance(v, list) and v and isinstance(v[0], dict):
            lines.append(f"{pad}{k}:")
            for item in v:
                lines.append(pad + "  - " + ", ".join(f"{a}={_flat(b, ' ')}" for a, b in item.items()))
        elif isinstance(v, list) and v and isinstance(v[0], str) and len(v) > 1:
            lines.append(f"{pad}{k}:")
            lines.extend(f"{pad}  {x}" for x in v)
        else:
            lines.append(f"{pad}{k}: {_flat(v, ', ')}")
    return "\n".join(lines)


def render(rep: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rep, indent=2) + "\n"
    if fmt == "csv":
        return render_csv(rep)
    return render_text(rep) + "\n"


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    cfg = RunConfig(args.command, args.fmt, args.out, args.threads, args.timings)
    try:
        rep, ok = COMMANDS[cfg.command](args)
    except (UsageError, ParseError, ShapeMismatch, InvalidCartanType, UnsupportedType, BudgetExceeded, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except LemmaViolation as e:
        rep, ok = {"pass": False, "error": str(e)}, False
    if not cfg.timings:
        rep = _strip_timings(rep)
    text = render(rep, cfg.fmt)
    if cfg.out:
        try:
            with open(cfg.out, "w") as fh:
                fh.write(text)
        except OSError as e:
            print(f"error: cannot write {cfg.out}: {e}", file=sys.stderr)
            return EXIT_USAGE
    else:
        sys.stdout.write(text)
    return EXIT_OK if ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
