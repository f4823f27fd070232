"""Command line entry point: ``pcbd <subcommand> ...``.

Exit status: 0 success, 2 invalid parameters or class conditions, 3 missing
Hadamard order, 4 oracle budget refusal, 64 unknown subcommand.
"""

from __future__ import annotations

import argparse
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import Sequence

import numpy as np

from . import __version__
from . import hadamard as hd
from .constructions import METHODS, MethodParams, catalog, construct
from .design import render_alternatives, render_pairs
from .errors import DesignError
from .estimation import ModelParams, estimate, monte_carlo, simulate
from .info import compute_info, evaluate, is_orthogonally_blocked
from .io import RunManifest, design_to_csv, design_to_json, dumps, load_design, timestamp, write_with_manifest
from .optimality import DEFAULT_BUDGET, OracleBudget, brute_force_best, certify, compare_to_oracle

EX_USAGE = 64
SUBCOMMANDS = ("construct", "verify", "certify", "oracle", "hadamard", "simulate", "catalog")


def _ints(text: str) -> tuple[int, ...]:
    return tuple(int(x) for x in text.split(",") if x.strip())


def _numbers(text: str) -> tuple:
    out = []
    for x in text.split(","):
        x = x.strip()
        if not x:
            continue
        try:
            out.append(Fraction(x))
        except ValueError:
            out.append(float(x))
    return tuple(out)


def _groups(text: str) -> tuple[tuple[int, int], ...]:
    """'3:4,2:6' -> ((3, 4), (2, 6)) as (blocks, block size)."""
    out = []
    for part in text.split(","):
        b, m = part.split(":")
        out.append((int(b), int(m)))
    return tuple(out)


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pcbd", description="Optimal paired-comparison block designs.")
    p.add_argument("--version", action="version", version=f"pcbd {__version__}")
    sub = p.add_subparsers(dest="command", metavar="SUBCOMMAND")

    c = sub.add_parser("construct", help="build a design with one of the 27 methods")
    c.add_argument("--method", type=int, required=True)
    for name in ("n", "k", "b", "k1", "m", "m1", "p", "q", "i", "b1"):
        c.add_argument(f"--{name}", type=int)
    c.add_argument("--sizes", type=_ints, help="comma-separated block sizes")
    c.add_argument("--groups", type=_groups, help="blocks:size groups, e.g. 2:4,3:2")
    c.add_argument("--columns", type=_ints, help="Hadamard column indices to use")
    c.add_argument("--format", choices=("csv", "json", "pairs", "alternatives"), default="csv")
    c.add_argument("--transpose", action="store_true", help="pairs format: one attribute per line")
    c.add_argument("--output", "-o", help="write to FILE (plus FILE.manifest.json)")
    c.add_argument("--json", action="store_true", help="same as --format json")

    v = sub.add_parser("verify", help="recompute M for a design file")
    v.add_argument("file")
    v.add_argument("--json", action="store_true")

    ce = sub.add_parser("certify", help="print the Certificate of a design file as JSON")
    ce.add_argument("file")
    ce.add_argument("--oracle", metavar="CRITERION", help="also compare against the exhaustive optimum")
    ce.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    ce.add_argument("--json", action="store_true")

    o = sub.add_parser("oracle", help="exhaustive optimum over a small design class")
    o.add_argument("--n", type=int, required=True)
    o.add_argument("--k", type=int, required=True)
    o.add_argument("--blocks", type=_ints, required=True)
    o.add_argument("--criterion", default="D", type=str.upper, choices=("D", "A", "E", "TRACE"))
    o.add_argument("--include-zero", action="store_true")
    o.add_argument("--no-symmetry", action="store_true", help="enumerate without symmetry reduction")
    o.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    o.add_argument("--workers", type=int, default=1)
    o.add_argument("--json", action="store_true")

    h = sub.add_parser("hadamard", help="print a normalized Hadamard matrix")
    h.add_argument("--order", type=int, required=True)
    h.add_argument("--factorial", action="store_true", help="reorder columns by interaction order")
    h.add_argument("--json", action="store_true")

    s = sub.add_parser("simulate", help="simulate responses and estimate main effects")
    s.add_argument("--design", required=True)
    s.add_argument("--beta", type=_numbers, required=True)
    s.add_argument("--gamma", type=_numbers, required=True)
    s.add_argument("--sigma", type=float, default=0.0)
    s.add_argument("--reps", type=int, default=1)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--json", action="store_true")

    ca = sub.add_parser("catalog", help="list the construction methods")
    ca.add_argument("--json", action="store_true")
    return p


def _fail(exc: Exception, as_json: bool) -> int:
    code = getattr(exc, "exit_code", 2)
    if as_json:
        sys.stdout.write(dumps({"error": type(exc).__name__, "message": str(exc), "exit_code": code}))
    print(f"error: {exc}", file=sys.stderr)
    return code


def _emit(text: str, output: str | None, manifest: RunManifest | None) -> None:
    if output:
        write_with_manifest(output, text, manifest)
    else:
        sys.stdout.write(text)


def _manifest(cmd: str, params: dict, inputs=(), outputs=()) -> RunManifest:
    return RunManifest(cmd, params, list(inputs), list(outputs), __version__, timestamp())


def _cmd_construct(a) -> int:
    fields = {n: getattr(a, n) for n in ("n", "k", "b", "k1", "m", "m1", "p", "q", "i", "b1",
                                         "sizes", "groups", "columns")}
    params = MethodParams(a.method, **fields)
    d = construct(params)
    fmt = "json" if a.json else a.format
    if fmt == "csv":
        text = design_to_csv(d)
    elif fmt == "json":
        text = design_to_json(d)
    elif fmt == "alternatives":
        text = render_alternatives(d.f)
    else:
        text = render_pairs(d.f, transpose=a.transpose)
    manifest = _manifest("construct", {**params.as_dict(), "format": fmt, "transpose": a.transpose},
                         outputs=[a.output] if a.output else [])
    _emit(text, a.output, manifest)
    return 0


def _verify_payload(path: str) -> dict:
    d = load_design(path)
    m = compute_info(d)
    payload = {
        "file": path,
        "N": d.n,
        "K": d.k,
        "block_sizes": list(d.layout.sizes),
        "info_matrix": m.to_strings(),
        "orthogonally_blocked": is_orthogonally_blocked(d),
        "criteria": {c: evaluate(m, c, exact=True).as_dict() if c != "A" or _nonsingular(m) else None
                     for c in ("D", "A", "E", "TRACE")},
    }
    if d.provenance.method is not None:
        rebuilt = construct(MethodParams.from_dict({"method": d.provenance.method, **d.provenance.params}))
        payload["reconstruction_matches"] = rebuilt.same_as(d)
    return payload


def _nonsingular(m) -> bool:
    return evaluate(m, "D").value != 0


def _cmd_verify(a) -> int:
    payload = _verify_payload(a.file)
    if a.json:
        sys.stdout.write(dumps(payload))
    else:
        print(f"N={payload['N']} K={payload['K']} blocks={','.join(map(str, payload['block_sizes']))}")
        print("M =")
        for row in payload["info_matrix"]:
            print("  " + " ".join(row))
        print(f"orthogonally blocked: {payload['orthogonally_blocked']}")
        for c, v in payload["criteria"].items():
            print(f"{c}: {'undefined' if v is None else v['value']}")
        if "reconstruction_matches" in payload:
            print(f"matches reconstruction: {payload['reconstruction_matches']}")
    return 0


def _cmd_certify(a) -> int:
    d = load_design(a.file)
    cert = certify(d)
    if a.oracle:
        cert = cert.with_oracle(compare_to_oracle(d, a.oracle.upper(), OracleBudget(a.budget)))
    sys.stdout.write(dumps(cert.as_dict()))
    return 0


def _cmd_oracle(a) -> int:
    if sum(a.blocks) != a.n:
        raise DesignError(f"block sizes {list(a.blocks)} do not sum to N={a.n}")
    budget = OracleBudget(a.budget, a.criterion, not a.no_symmetry, a.include_zero, a.workers)
    start = time.perf_counter()
    result = brute_force_best((a.n, a.k, a.blocks), budget=budget)
    elapsed = time.perf_counter() - start
    payload = {"N": a.n, "K": a.k, "blocks": list(a.blocks), "symmetry_reduction": not a.no_symmetry,
               "include_zero": a.include_zero, **result.as_dict()}
    if a.json:
        sys.stdout.write(dumps(payload))
    else:
        print(f"criterion {result.criterion}: optimum {result.optimum} over {result.candidates} candidates")
        if result.witness is not None:
            print("witness:")
            sys.stdout.write(render_pairs(result.witness.f))
    # wall time goes to stderr so stdout stays reproducible
    print(f"wall time: {elapsed:.3f} s", file=sys.stderr)
    return 0


def _cmd_hadamard(a) -> int:
    h = hd.hadamard(a.order)
    if a.factorial:
        h = h[:, hd.factorial_order(a.order)]
    if a.json:
        sys.stdout.write(dumps({"order": a.order, "route": hd.route(a.order),
                                "verified": hd.verify(h), "matrix": h.tolist()}))
    else:
        for row in h:
            print(" ".join("+" if x > 0 else "-" for x in row))
    return 0


def _cmd_simulate(a) -> int:
    d = load_design(a.design)
    params = ModelParams(a.beta, a.gamma, a.sigma, a.seed)
    y = simulate(d, params)
    single = estimate(d, y)
    payload = {
        "design": a.design,
        "sigma": a.sigma,
        "seed": a.seed,
        "reps": a.reps,
        "first_replication": single.as_dict(),
    }
    if a.reps > 1:
        payload["monte_carlo"] = monte_carlo(d, params, a.reps).as_dict()
    sys.stdout.write(dumps(payload))
    return 0


def _cmd_catalog(a) -> int:
    entries = catalog()
    if a.json:
        sys.stdout.write(dumps(entries))
        return 0
    for e in entries:
        print(f"{e['method']:>2}  [{e['criteria']}]  params: {', '.join(e['params'])}")
        print(f"    {e['constraints']}")
        print(f"    Hadamard orders: {e['hadamard_orders']}")
    return 0


_HANDLERS = {
    "construct": _cmd_construct,
    "verify": _cmd_verify,
    "certify": _cmd_certify,
    "oracle": _cmd_oracle,
    "hadamard": _cmd_hadamard,
    "simulate": _cmd_simulate,
    "catalog": _cmd_catalog,
}


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = _parser()
    first = next((x for x in argv if not x.startswith("-")), None)
    if first is None and not any(x in ("-h", "--help", "--version") for x in argv):
        parser.print_usage(sys.stderr)
        return EX_USAGE
    if first is not None and first not in SUBCOMMANDS:
        parser.print_usage(sys.stderr)
        print(f"pcbd: unknown subcommand {first!r}", file=sys.stderr)
        return EX_USAGE
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    as_json = bool(getattr(args, "json", False))
    try:
        return _HANDLERS[args.command](args)
    except DesignError as exc:
        return _fail(exc, as_json)
    except (ValueError, OSError) as exc:
        return _fail(exc, as_json)


if __name__ == "__main__":
    sys.exit(main())
