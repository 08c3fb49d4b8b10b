"""``ghostcalc`` command-line front end.

Exit codes: 0 when every selected check passes, 1 when a mathematical check
fails, 2 for input or usage errors.  An instance argument of the form
``corpus:NAME`` loads a bundled example.
"""
from __future__ import annotations

import argparse
import json
import sys
import warnings
from fractions import Fraction

from . import cochains as cc
from .derivations import ConfigurationError, OddDerivation, is_nilpotent
from .instances import Instance, InstanceError, corpus_names, load_corpus, parse_instance
from .structures import (DegreeError, MisuseError, SkewnessError, check_cl_infinity,
                         check_ga_infinity, check_representation, check_skew)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def load(arg: str) -> Instance:
    if arg.startswith("corpus:"):
        try:
            return load_corpus(arg[len("corpus:"):])
        except KeyError as exc:
            raise UsageError(str(exc.args[0])) from None
    return parse_instance(arg)


# --- check ----------------------------------------------------------------------


def _nilpotent_report(inst: Instance) -> dict:
    S = OddDerivation(inst.family, inst.representation)
    res = is_nilpotent(S)
    names = inst.basis.names
    out = {"check": "nilpotent", "passed": res.nilpotent, "convention": res.convention,
           "text": res.describe(inst.basis)}
    if res.witness:
        w = dict(res.witness)
        w["monomial"] = [names[i] for i in w["monomial"]]
        if w["kind"] == "generator":
            w["index"] = names[w["index"]]
        out["witness"] = w
    return out


def _report(name: str, rep, basis) -> dict:
    return {"check": name, "passed": rep.passed, "text": rep.summary(basis), "detail": rep.to_json(basis)}


def cmd_check(args, inst: Instance) -> tuple[int, dict, str]:
    selected = [f for f in ("cl", "ga", "rep", "nilpotent") if getattr(args, f)]
    if args.all and selected:
        raise UsageError("--all cannot be combined with individual check flags")
    if args.all:
        selected = ["cl" if inst.skew else "ga"]
        if inst.representation is not None:
            selected.append("rep")
        selected.append("nilpotent")
    if not selected:
        raise UsageError("choose at least one of --cl, --ga, --rep, --nilpotent, --all")
    if "cl" in selected and not inst.skew:
        raise UsageError("--cl needs a skew instance; use --ga for ordered data")
    if "ga" in selected and inst.skew:
        raise UsageError("--ga needs an ordered instance (\"skew\": false)")
    if "rep" in selected and inst.representation is None:
        raise UsageError("--rep needs a representation block in the instance")

    results = []
    basis = inst.basis
    for name in selected:
        if name == "cl":
            results.append(_report("cl", check_cl_infinity(inst.family, args.mode), basis))
        elif name == "ga":
            results.append(_report("ga", check_ga_infinity(inst.family), basis))
        elif name == "rep":
            with warnings.catch_warnings():
                # the note is carried in the report itself
                warnings.simplefilter("ignore")
                report = check_representation(inst.representation, inst.family, args.mode)
            results.append(_report("rep", report, basis))
        else:
            results.append(_nilpotent_report(inst))
    if args.skew_law and inst.skew:
        results.append(_report("skew", check_skew(inst.family), basis))
    ok = all(r["passed"] for r in results)
    text = "\n".join(r["text"] for r in results)
    text += f"\noverall: {'PASS' if ok else 'FAIL'}"
    payload = {"instance": inst.name, "checks": [{k: v for k, v in r.items() if k != "text"} for r in results],
               "passed": ok}
    return (EXIT_OK if ok else EXIT_FAIL), payload, text


# --- differential ---------------------------------------------------------------------


def _cochain_json(c: cc.Cochain) -> dict:
    names = c.basis.names
    return {"arity": c.arity,
            "values": [{"inputs": [names[i] for i in t], "value": [str(x) for x in v]}
                       for t, v in sorted(c.values.items())]}


def cmd_differential(args, inst: Instance) -> tuple[int, dict, str]:
    if args.cochain not in inst.cochains:
        avail = ", ".join(sorted(inst.cochains)) or "none"
        raise UsageError(f"unknown cochain {args.cochain!r}; available: {avail}")
    omega = inst.cochains[args.cochain]
    rep = inst.representation
    fam = inst.family
    ks = [args.k] if args.k is not None else cc.differential_arities(fam, rep)
    lines, parts, ok = [], [], True
    for k in ks:
        entry = {"k": k}
        tensor = ghost = None
        if args.route in ("tensor", "both"):
            tensor = cc.differential_component(k, omega, rep, fam, args.max_arity)
            entry["tensor"] = _cochain_json(tensor)
        if args.route in ("ghost", "both"):
            g = cc.ghost_component(k, omega, rep, fam)
            ghost = cc.from_ghost(g, omega.arity + k - 1, omega.module_degrees) if not g.is_zero() else \
                cc.Cochain(fam.ring, omega.arity + k - 1, omega.module_dim, {}, fam.skew, omega.module_degrees)
            entry["ghost"] = _cochain_json(ghost)
        result = tensor if tensor is not None else ghost
        lines.append(f"S_{k} {args.cochain} (arity {result.arity}):")
        lines.extend("  " + ln for ln in result.format().splitlines())
        if args.route == "both":
            agree = ghost == tensor
            ok &= agree
            entry["agree"] = agree
            lines.append(f"  ghost route == tensor route: {'PASS' if agree else 'FAIL'}")
        parts.append(entry)
    payload = {"instance": inst.name, "cochain": args.cochain, "route": args.route, "components": parts}
    if args.route == "both":
        payload["passed"] = ok
    return (EXIT_OK if ok else EXIT_FAIL), payload, "\n".join(lines)


# --- cohomology -------------------------------------------------------------------------


def cmd_cohomology(args, inst: Instance) -> tuple[int, dict, str]:
    try:
        rows = cc.cohomology_table(inst.family, inst.representation, args.max_degree, args.max_arity)
    except cc.NotNilpotentError as exc:
        payload = {"instance": inst.name, "passed": False, "error": str(exc), "witness": _jsonable(exc.witness)}
        return EXIT_FAIL, payload, f"refused: {exc}"
    lines = [f"{'n':>3} {'dim C^n':>8} {'rank d_n':>9} {'dim H^n':>8}"]
    for r in rows:
        lines.append(f"{r.degree:>3} {r.dim_cochains:>8} {r.rank_out:>9} {r.dim_cohomology:>8}")
    payload = {"instance": inst.name, "passed": True,
               "rows": [{"n": r.degree, "dim_cochains": r.dim_cochains, "rank": r.rank_out,
                         "dim_cohomology": r.dim_cohomology} for r in rows]}
    return EXIT_OK, payload, "\n".join(lines)


# --- correspond ---------------------------------------------------------------------------


def correspondence_summary(inst: Instance, max_arity: int, max_k: int = 3,
                           limit: int = cc.DEFAULT_MAX_ARITY) -> list[dict]:
    fam, rep = inst.family, inst.representation
    mdim = rep.module_dim if rep else 1
    mdeg = rep.module_degrees if rep else None
    ks = sorted(set(range(1, max_k + 1)) | set(cc.differential_arities(fam, rep)))
    rows = []
    for n in range(max_arity + 1):
        basis = cc.cochain_basis(fam.ring, n, mdim, skew=fam.skew, module_degrees=mdeg)
        for k in ks:
            if n + k - 1 > limit:
                continue
            bad = [w for w in basis if not cc.correspondence_check(w, k, rep, fam, limit)]
            rows.append({"n": n, "k": k, "cochains": len(basis), "failures": len(bad)})
    return rows


def cmd_correspond(args, inst: Instance) -> tuple[int, dict, str]:
    rows = correspondence_summary(inst, args.max_arity, args.max_k, args.limit)
    ok = all(r["failures"] == 0 for r in rows)
    lines = [f"n={r['n']} k={r['k']}: {r['cochains']} basis cochains, "
             f"{'PASS' if not r['failures'] else 'FAIL (' + str(r['failures']) + ' mismatches)'}" for r in rows]
    lines.append(f"correspondence: {'PASS' if ok else 'FAIL'}")
    return (EXIT_OK if ok else EXIT_FAIL), {"instance": inst.name, "rows": rows, "passed": ok}, "\n".join(lines)


# --- driver -----------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ghostcalc", description="Exact checks, differentials and cohomology for ghost-ring instances.")
    p.add_argument("--emit", choices=("text", "json"), default="text", help="report format")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="run structure-equation and nilpotency checks")
    for flag in ("cl", "ga", "rep", "nilpotent", "all"):
        c.add_argument(f"--{flag}", action="store_true")
    c.add_argument("--skew-law", action="store_true", help="also check the exchange law of stored entries")
    c.add_argument("--mode", choices=("unshuffle", "factorial"), default="unshuffle")

    d = sub.add_parser("differential", help="apply S_k to a named cochain")
    d.add_argument("--k", type=int)
    d.add_argument("--cochain", required=True)
    d.add_argument("--route", choices=("tensor", "ghost", "both"), default="tensor")
    d.add_argument("--max-arity", type=int, default=cc.DEFAULT_MAX_ARITY)

    h = sub.add_parser("cohomology", help="dimensions of cohomology by total degree")
    h.add_argument("--max-degree", type=int, default=3)
    h.add_argument("--max-arity", type=int, default=cc.DEFAULT_MAX_ARITY)

    r = sub.add_parser("correspond", help="compare ghost and tensor routes on basis cochains")
    r.add_argument("--max-arity", type=int, default=3, help="largest cochain arity tested")
    r.add_argument("--max-k", type=int, default=3)
    r.add_argument("--limit", type=int, default=cc.DEFAULT_MAX_ARITY, help="largest result arity")

    sub.add_parser("corpus", help="list bundled instances")
    for sp in (c, d, h, r):
        sp.add_argument("instance", help="instance file, or corpus:NAME")
        sp.add_argument("--emit", choices=("text", "json"), default=argparse.SUPPRESS)
    return p


COMMANDS = {"check": cmd_check, "differential": cmd_differential,
            "cohomology": cmd_cohomology, "correspond": cmd_correspond}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command == "corpus":
        names = corpus_names()
        if args.emit == "json":
            print(json.dumps({"corpus": names}, indent=2))
        else:
            print("\n".join(names))
        return EXIT_OK
    try:
        inst = load(args.instance)
        code, payload, text = COMMANDS[args.command](args, inst)
    except InstanceError as exc:
        for e in exc.errors:
            print(f"error: {exc.source}: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, MisuseError, ConfigurationError, cc.ArityError,
            SkewnessError, DegreeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.emit == "json":
        print(json.dumps(_jsonable(payload), indent=2, sort_keys=True))
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
