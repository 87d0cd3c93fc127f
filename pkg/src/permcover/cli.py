"""Command-line front end.

Subcommands: radius (exact values, bounds, optional brute-force
certificate), cover (find a codeword near an input), scan (relabeling
histograms), table (CSV reports).  Default output is human-readable;
--json wraps results in a stable envelope.  Exit codes: 0 success,
2 usage or malformed input, 3 resource cap, 4 internal guarantee
violation.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
import time

from . import __version__, bounds, composed, cyclic, oracle, relabel
from .errors import (CapabilityError, DimensionError, DomainError,
                     GuaranteeError, ParseError, ResourceLimitError)
from .perms import format_oneline, parse_permutation

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_RESOURCE = 3
EXIT_GUARANTEE = 4

REPORT_SCHEMA = {
    "type": "object",
    "properties": {
        "command": {"type": "string"},
        "params": {"type": "object"},
        "results": {"type": "object"},
        "timing_seconds": {"type": "number", "minimum": 0},
        "version": {"type": "string"},
    },
    "required": ["command", "params", "results", "timing_seconds", "version"],
    "additionalProperties": False,
}


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="permcover",
        description="covering codes for permutations under the l-infinity metric")
    top.add_argument("--json", action="store_true",
                     help="emit a JSON report envelope instead of text")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("radius", help="covering radius of a code family")
    p.add_argument("--family", required=True,
                   choices=["gn", "dn", "composed", "explicit-file"])
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int, help="block width for --family composed")
    p.add_argument("--head-kind", default=composed.KIND_CYCLIC,
                   choices=[composed.KIND_CYCLIC, composed.KIND_IDENTITY])
    p.add_argument("--tail-kind", default=composed.KIND_CYCLIC,
                   choices=[composed.KIND_CYCLIC, composed.KIND_IDENTITY])
    p.add_argument("--h", dest="relabel_h",
                   help="relabeling permutation (gn only), e.g. '(1,2)' or '[2,1,3]'")
    p.add_argument("--file", help="codeword file for --family explicit-file")
    p.add_argument("--oracle", action="store_true",
                   help="add a brute-force certificate (subject to caps)")
    p.add_argument("--cap", type=int, help="override the brute-force degree cap")

    p = sub.add_parser("cover", help="find a codeword near a permutation")
    p.add_argument("--family", required=True, choices=["gn", "composed"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int)
    p.add_argument("--head-kind", default=composed.KIND_CYCLIC,
                   choices=[composed.KIND_CYCLIC, composed.KIND_IDENTITY])
    p.add_argument("--tail-kind", default=composed.KIND_CYCLIC,
                   choices=[composed.KIND_CYCLIC, composed.KIND_IDENTITY])
    p.add_argument("--f", help="target permutation, one-line or cycle text")
    p.add_argument("--random", action="store_true",
                   help="draw the target uniformly instead of --f")
    p.add_argument("--seed", type=int, default=0,
                   help="seed for --random (bit-for-bit reproducible)")

    p = sub.add_parser("scan", help="radius histogram over all relabelings")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--cap", type=int)
    p.add_argument("--long-run", action="store_true",
                   help="allow degrees 9 and 10")
    p.add_argument("--checkpoint-path")
    p.add_argument("--resume", action="store_true")

    p = sub.add_parser("table", help="CSV tables of radii, bounds, ball sizes")
    p.add_argument("--which", required=True,
                   choices=["radii", "bounds", "balls", "table1"])
    p.add_argument("--n-range", help="inclusive range A:B", default=None)
    p.add_argument("--oracle", action="store_true",
                   help="add a brute-force column to 'radii'")
    p.add_argument("--cap", type=int, help="override the brute-force degree cap")
    return top


def _parse_range(text: str) -> tuple[int, int]:
    try:
        a, b = text.split(":")
        lo, hi = int(a), int(b)
    except (ValueError, AttributeError):
        raise DomainError(f"expected a range A:B, got {text!r}")
    if lo > hi:
        raise DomainError(f"empty range {text!r}")
    return lo, hi


def _require(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise DomainError(f"--{name.replace('_', '-')} is required here")


def cmd_radius(args) -> tuple[dict, list[str]]:
    results: dict = {"family": args.family}
    lines: list[str] = []
    if args.family == "gn":
        _require(args, "n")
        n = args.n
        results["n"] = n
        if args.relabel_h:
            h = parse_permutation(args.relabel_h, n)
            code = relabel.relabeled_cyclic_group(n, h)
            results["relabeling"] = format_oneline(h)
            results["upper"] = relabel.max_relabeling_radius(n)
            lines.append(f"relabeled rotation code, n={n}, h={format_oneline(h)}")
            lines.append(f"upper bound (any relabeling): {results['upper']}")
        else:
            code = cyclic.cyclic_group(n).codewords
            results["radius"] = cyclic.covering_radius(n)
            lines.append(f"rotation code, n={n}")
            lines.append(f"radius: {results['radius']}")
            if n >= 3:
                results["lower"] = cyclic.covering_radius_lower(n)
                results["upper"] = cyclic.covering_radius_upper(n)
                lines.append(
                    f"bounds: [{results['lower']}, {results['upper']}]")
        if args.oracle:
            cert = oracle.covering_radius_bruteforce(code, cap=args.cap)
            results["oracle"] = _cert_dict(cert)
            lines.append(_cert_line(cert))
    elif args.family == "dn":
        _require(args, "n")
        n = args.n
        lo, hi = relabel.dihedral_radius_bounds(n)
        results.update(n=n, lower=lo, upper=hi)
        lines.append(f"dihedral code, n={n}")
        lines.append(f"bounds: [{lo}, {hi}]")
        if args.oracle:
            cert = oracle.covering_radius_bruteforce(
                relabel.dihedral_group(n), cap=args.cap)
            results["oracle"] = _cert_dict(cert)
            lines.append(_cert_line(cert))
    elif args.family == "composed":
        _require(args, "n", "m")
        spec = composed.ComposedCodeSpec(args.n, args.m,
                                         args.head_kind, args.tail_kind)
        results.update(
            n=spec.n, m=spec.m, head_kind=spec.head_kind,
            tail_kind=spec.tail_kind,
            radius=composed.covering_radius(spec),
            cardinality=str(composed.cardinality(spec)),
            rate=composed.rate(spec))
        if spec.n >= 2:
            results["normalized_radius"] = float(composed.normalized_radius(spec))
        lines.append(f"composed code, n={spec.n}, m={spec.m}, "
                     f"head={spec.head_kind}, tail={spec.tail_kind}")
        lines.append(f"radius: {results['radius']}")
        lines.append(f"cardinality: {results['cardinality']}")
        lines.append(f"rate: {results['rate']:.6f}")
        if args.oracle:
            cert = oracle.covering_radius_bruteforce(
                list(composed.enumerate_codewords(spec)), cap=args.cap)
            results["oracle"] = _cert_dict(cert)
            lines.append(_cert_line(cert))
    else:  # explicit-file
        _require(args, "file")
        code = _read_code_file(args.file)
        cert = oracle.covering_radius_bruteforce(code, cap=args.cap)
        results.update(code_size=cert.code_size, radius=cert.radius,
                       witness=format_oneline(cert.witness))
        lines.append(f"explicit code from {args.file} "
                     f"({cert.code_size} codewords)")
        lines.append(_cert_line(cert))
    return results, lines


def _cert_dict(cert: oracle.RadiusCertificate) -> dict:
    return {"radius": cert.radius, "witness": format_oneline(cert.witness),
            "code_size": cert.code_size}


def _cert_line(cert: oracle.RadiusCertificate) -> str:
    return (f"oracle: radius {cert.radius}, witness "
            f"{format_oneline(cert.witness)} over {cert.code_size} codewords")


def _read_code_file(path: str) -> list:
    code = []
    try:
        with open(path) as fh:
            for line in fh:
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                code.append(parse_permutation(line))
    except OSError as exc:
        raise DomainError(f"cannot read {path}: {exc}") from exc
    if not code:
        raise DomainError(f"no codewords in {path}")
    return code


def cmd_cover(args) -> tuple[dict, list[str]]:
    n = args.n
    if args.random:
        rng = random.Random(args.seed)
        vals = list(range(1, n + 1))
        rng.shuffle(vals)
        f = tuple(vals)
    else:
        _require(args, "f")
        f = parse_permutation(args.f, n)
    if args.family == "gn":
        if n < 1:
            raise DomainError("n must be >= 1")
        g = cyclic.covering_codeword(f)
        threshold = cyclic.covering_radius(n)
    else:
        _require(args, "m")
        spec = composed.ComposedCodeSpec(n, args.m, args.head_kind,
                                         args.tail_kind)
        g = composed.covering_codeword(f, spec)
        threshold = composed.covering_radius(spec)
    dist = max((abs(a - b) for a, b in zip(f, g)), default=0)
    if dist > threshold:
        raise GuaranteeError(
            f"covering search returned distance {dist} > radius {threshold}")
    results = {"family": args.family, "n": n, "f": format_oneline(f),
               "codeword": format_oneline(g), "distance": dist,
               "radius": threshold}
    if args.family == "composed":
        results["m"] = args.m
    lines = [f"f: {results['f']}",
             f"codeword: {results['codeword']}",
             f"distance: {dist} (radius {threshold})"]
    return results, lines


def cmd_scan(args) -> tuple[dict, list[str]]:
    hist = relabel.scan_relabelings(
        args.n, jobs=args.jobs, cap=args.cap, long_run=args.long_run,
        checkpoint_path=args.checkpoint_path, resume=args.resume)
    results = {"n": hist.n,
               "histogram": {str(r): c for r, c in hist.items()},
               "lmin": hist.lmin, "lmax": hist.lmax, "total": hist.total}
    lines = [f"relabelings of degree {hist.n}: radius histogram"]
    lines += [f"{r} {c}" for r, c in hist.items()]
    lines.append(f"lmin {hist.lmin}  lmax {hist.lmax}  total {hist.total}")
    return results, lines


def _table_radii(lo: int, hi: int, use_oracle: bool, cap) -> list[list]:
    rows = []
    for n in range(lo, hi + 1):
        row = [n, cyclic.covering_radius(n)]
        if n >= 3:
            row += [cyclic.covering_radius_lower(n),
                    cyclic.covering_radius_upper(n)]
        else:
            row += ["", ""]
        if use_oracle:
            cert = oracle.covering_radius_bruteforce(
                cyclic.cyclic_group(n).codewords, cap=cap)
            row.append(cert.radius)
        rows.append(row)
    return rows


def _table_bounds(lo: int, hi: int) -> list[list]:
    rows = []
    for n in range(max(lo, 3), hi + 1):
        row = [n, cyclic.covering_radius_lower(n),
               cyclic.covering_radius_upper(n),
               relabel.max_relabeling_radius(n)]
        if n >= 4:
            dlo, dhi = relabel.dihedral_radius_bounds(n)
            row += [dlo, dhi]
        else:
            row += ["", ""]
        rows.append(row)
    return rows


def _table_balls(lo: int, hi: int) -> list[list]:
    rows = []
    for n in range(lo, hi + 1):
        for r in range(n):
            rows.append([n, r, oracle.ball_size_exact(n, r)])
    return rows


def table1_rows() -> list[str]:
    """The degree-7 exposure table behind the deep-hole construction:
    pinned mappings, the rotation powers that expose each at threshold 3,
    and the slot set of those powers as a wrapping interval."""
    n, threshold = 7, 3
    hole = cyclic.deep_hole(n)
    pinned = [(1, 5), (3, 6), (6, 7), (5, 1)]
    out = []
    for i, j in pinned:
        if hole[i - 1] != j:
            raise GuaranteeError(f"expected pin {i}->{j} in deep_hole({n})")
        powers = []
        slots = []
        for k in range(n):
            g = cyclic.rotation(n, k)
            if abs(j - g[i - 1]) > threshold:
                powers.append(k)
                slots.append(1 if k == 0 else n - k + 1)
        rec = cyclic.exposure_set(n, threshold, i, j)
        if sorted(rec.values()) != sorted(slots):
            raise GuaranteeError(f"interval slots disagree for {i}->{j}")
        powset = ",".join(f"g^{k}" for k in powers)
        aset = "{" + ",".join(str(v) for v in rec.values()) + "}"
        out.append(f"{i}->{j} | {powset} | {aset}")
    return out


def cmd_table(args) -> tuple[dict, list[str]]:
    if args.which == "table1":
        rows = table1_rows()
        results = {"which": "table1", "rows": rows}
        return results, rows
    _require(args, "n_range")
    lo, hi = _parse_range(args.n_range)
    if lo < 1:
        raise DomainError("range must start at 1 or above")
    if args.which == "radii":
        header = ["n", "radius", "lower", "upper"]
        if args.oracle:
            header.append("oracle")
        rows = _table_radii(lo, hi, args.oracle, args.cap)
    elif args.which == "bounds":
        header = ["n", "gn_lower", "gn_upper", "relabel_max",
                  "dihedral_lower", "dihedral_upper"]
        rows = _table_bounds(lo, hi)
    else:
        header = ["n", "r", "ball_size"]
        rows = _table_balls(lo, hi)
    lines = [",".join(str(c) for c in [*header])]
    lines += [",".join(str(c) for c in row) for row in rows]
    results = {"which": args.which, "header": header,
               "rows": [[c if c != "" else None for c in row] for row in rows]}
    return results, lines


_HANDLERS = {
    "radius": cmd_radius,
    "cover": cmd_cover,
    "scan": cmd_scan,
    "table": cmd_table,
}


def _params_dict(args) -> dict:
    skip = {"command", "json"}
    return {k: v for k, v in vars(args).items()
            if k not in skip and v is not None}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    start = time.monotonic()
    try:
        results, lines = _HANDLERS[args.command](args)
    except (ParseError, DomainError, DimensionError, CapabilityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except GuaranteeError as exc:
        print(f"internal guarantee violated: {exc}", file=sys.stderr)
        return EXIT_GUARANTEE
    elapsed = time.monotonic() - start
    if args.json:
        envelope = {
            "command": args.command,
            "params": _params_dict(args),
            "results": results,
            "timing_seconds": elapsed,
            "version": __version__,
        }
        print(json.dumps(envelope, indent=2, sort_keys=True))
    else:
        for line in lines:
            print(line)
    return EXIT_OK


def entry() -> None:  # console script
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
