"""Command-line experiment harness.

Subcommands: sample, sweep, bounds, construct, spectra, cheeger, split.
Exit codes: 0 success, 2 invalid arguments or parity, 3 guard exceeded,
4 base certification failure.  Every file-writing command also writes a
JSON run manifest with sha256 digests of its outputs; the data files
themselves contain no timestamps, so re-runs are byte-identical.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys
from datetime import datetime, timezone
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__
from .bounds import iter_mu_pairs, mu_pair_sum, xyz_bound
from .cheeger import cheeger_exact, resolve_guard
from .construct import (
    FamilySpec,
    balanced_boundary_subset,
    expander_family,
    two_tree_split,
)
from .errors import (
    CertificationError,
    GuardExceededError,
    ParityError,
)
from .graph_core import check_parity, from_text, is_connected, to_text, topology
from .sampler import SampleConfig, estimate_connectivity, sample_graph
from .spectra import laplacian_spectrum, report_json, steklov_spectrum


def _fmt(x: float) -> str:
    return format(x, ".12g")


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _write_manifest(out_paths: list[Path], args: list[str], seed, started: str) -> None:
    manifest = {
        "command": args,
        "seed": seed,
        "version": __version__,
        "started": started,
        "finished": datetime.now(timezone.utc).isoformat(),
        "outputs": {str(p): _sha256(p) for p in out_paths},
    }
    target = out_paths[0].with_suffix(out_paths[0].suffix + ".manifest.json")
    target.write_text(json.dumps(manifest, indent=2) + "\n")


def cmd_sample(args, argv: list[str]) -> int:
    started = datetime.now(timezone.utc).isoformat()
    cfg = SampleConfig(chi=args.chi, n=args.n, trials=args.trials, seed=args.seed)
    guard = resolve_guard(args.guard)
    lines = ["trial,connected,lambda1,sigma1,h,genus"]
    lambda1s = []
    hits = 0
    for t in range(cfg.trials):
        g = sample_graph(cfg, t)
        connected = is_connected(g)
        hits += connected
        lam1 = laplacian_spectrum(g).lambda1
        lambda1s.append(lam1)
        sigma1 = ""
        if connected and g.n >= 2:
            s1 = steklov_spectrum(g).sigma1
            sigma1 = _fmt(s1) if s1 is not None else ""
        h = ""
        if connected and g.num_vertices <= guard:
            cert = cheeger_exact(g, guard=guard)
            h = f"{cert.h.numerator}/{cert.h.denominator}"
        genus = (g.chi - g.n) // 2 + 1
        lines.append(
            f"{t},{int(connected)},{_fmt(lam1)},{sigma1},{h},{genus}"
        )
    q = np.quantile(np.array(lambda1s), [0.25, 0.5, 0.75])
    lines.append(
        f"# summary connected_fraction={hits}/{cfg.trials}"
        f" lambda1_q25={_fmt(q[0])} lambda1_q50={_fmt(q[1])}"
        f" lambda1_q75={_fmt(q[2])}"
    )
    out = Path(args.out)
    out.write_text("\n".join(lines) + "\n")
    _write_manifest([out], argv, args.seed, started)
    return 0


def parity_adjust(chi: int, n: int) -> int:
    """Largest n' <= n with 3*chi - n' non-negative and even."""
    n = min(n, 3 * chi)
    if (3 * chi - n) % 2 != 0:
        n -= 1
    if n < 0:
        raise ParityError(f"no valid n <= {n} for chi={chi}")
    return n


def _parse_rule(rule: str):
    kind, _, val = rule.partition(":")
    if kind == "pow":
        alpha = float(val)
        return lambda chi: math.floor(chi**alpha)
    if kind == "linear":
        c = float(val)
        return lambda chi: math.floor(c * chi)
    raise ValueError(f"unknown rule {rule!r} (expected pow:a or linear:c)")


def cmd_sweep(args, argv: list[str]) -> int:
    started = datetime.now(timezone.utc).isoformat()
    rule = _parse_rule(args.rule)
    chis = [int(c) for c in args.chi_list.split(",")]
    lines = ["chi,n,trials,connected_fraction,ci_low,ci_high,seed"]
    for chi in chis:
        n = parity_adjust(chi, rule(chi))
        cfg = SampleConfig(chi=chi, n=n, trials=args.trials, seed=args.seed)
        est = estimate_connectivity(cfg)
        lines.append(
            f"{chi},{n},{est.trials},{_fmt(float(est.fraction))},"
            f"{_fmt(est.ci_low)},{_fmt(est.ci_high)},{args.seed}"
        )
    out = Path(args.out)
    out.write_text("\n".join(lines) + "\n")
    _write_manifest([out], argv, args.seed, started)
    return 0


def cmd_bounds(args, argv: list[str]) -> int:
    started = datetime.now(timezone.utc).isoformat()
    check_parity(args.chi, args.n)
    mu = Fraction(args.mu) if "/" in args.mu else Fraction(str(float(args.mu)))
    total = mu_pair_sum(args.chi, args.n, mu)
    base = Path(args.out)
    csv_path = base.with_suffix(".csv")
    json_path = base.with_suffix(".json")
    csv_path.write_text(
        "chi,n,mu,sum_num,sum_den,sum_float\n"
        f"{args.chi},{args.n},{mu},{total.numerator},{total.denominator},"
        f"{_fmt(float(total))}\n"
    )
    pairs = []
    for a, b, s in iter_mu_pairs(args.chi, args.n, mu):
        bd = xyz_bound(args.chi, args.n, a, b, s)
        pairs.append(
            {
                "a": a,
                "b": b,
                "s": s,
                "x": str(bd.x),
                "y": str(bd.y),
                "z": str(bd.z),
                "product": str(bd.product),
            }
        )
    json_path.write_text(
        json.dumps(
            {
                "chi": args.chi,
                "n": args.n,
                "mu": str(mu),
                "sum": str(total),
                "pairs": pairs,
            },
            indent=2,
        )
        + "\n"
    )
    _write_manifest([csv_path, json_path], argv, None, started)
    return 0


def cmd_construct(args, argv: list[str]) -> int:
    started = datetime.now(timezone.utc).isoformat()
    spec = FamilySpec.from_theta(
        Fraction(args.theta) if "/" in args.theta else Fraction(str(float(args.theta)))
    )
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    guard = resolve_guard(args.guard)
    lines = ["g,n,chi,h_lower,lambda1,h_exact,cheeger_check"]
    paths = []
    for g in range(args.g_min, args.g_max + 1):
        member = expander_family(spec, g)
        path = outdir / f"g{g}.txt"
        path.write_text(to_text(member.graph))
        paths.append(path)
        lam1 = laplacian_spectrum(member.graph).lambda1
        h_exact = ""
        check = ""
        if member.graph.num_vertices <= guard:
            h = cheeger_exact(member.graph, guard=guard).h
            h_exact = f"{h.numerator}/{h.denominator}"
            check = str(int(lam1 >= float(h) ** 2 / 18 - 1e-9))
        hl = member.h_lower
        lines.append(
            f"{g},{member.n},{member.chi},{hl.numerator}/{hl.denominator},"
            f"{_fmt(lam1)},{h_exact},{check}"
        )
    csv_path = outdir / "manifest.csv"
    csv_path.write_text("\n".join(lines) + "\n")
    _write_manifest([csv_path] + paths, argv, None, started)
    return 0


def cmd_spectra(args, argv: list[str]) -> int:
    g = from_text(Path(args.graphfile).read_text())
    print(json.dumps(report_json(g), indent=2))
    return 0


def cmd_cheeger(args, argv: list[str]) -> int:
    g = from_text(Path(args.graphfile).read_text())
    cert = cheeger_exact(g, guard=args.guard)
    print(json.dumps(cert.to_json(g), indent=2))
    return 0


def cmd_split(args, argv: list[str]) -> int:
    g = from_text(Path(args.graphfile).read_text())
    split = two_tree_split(g)
    out = {
        "removed_edges": [
            [g.names[u], g.names[v]] for u, v in split.removed_edges
        ],
        "side_a": sorted(g.names[v] for v in split.side_a),
        "side_b": sorted(g.names[v] for v in split.side_b),
    }
    if g.n >= 2:
        bal = balanced_boundary_subset(g)
        out["balanced_subset"] = {
            "h_set": sorted(g.names[v] for v in bal.h_set),
            "boundary_edges": bal.boundary_edges,
            "boundary_vertices_inside": bal.boundary_vertices_inside,
            "genus": topology(g).genus,
        }
    print(json.dumps(out, indent=2))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="expander-forge",
        description="Sampling, spectra and expander constructions for the "
        "degree-3/degree-1 configuration model.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sample", help="per-trial spectral/Cheeger CSV")
    p.add_argument("--chi", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--guard", type=int, default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("sweep", help="connectivity sweep over chi values")
    p.add_argument("--chi-list", required=True, help="comma-separated chi values")
    p.add_argument("--rule", required=True, help="pow:<alpha> or linear:<c>")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("bounds", help="mu-pair sum and per-pair bound dump")
    p.add_argument("--chi", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mu", required=True)
    p.add_argument("--out", required=True, help="basename for .csv/.json")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("construct", help="expander family over a genus range")
    p.add_argument("--theta", required=True)
    p.add_argument("--g-min", type=int, required=True)
    p.add_argument("--g-max", type=int, required=True)
    p.add_argument("--guard", type=int, default=None)
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("spectra", help="JSON spectral report of a graph file")
    p.add_argument("graphfile")
    p.set_defaults(func=cmd_spectra)

    p = sub.add_parser("cheeger", help="exact Cheeger certificate of a graph file")
    p.add_argument("graphfile")
    p.add_argument("--guard", type=int, default=None)
    p.set_defaults(func=cmd_cheeger)

    p = sub.add_parser("split", help="two-tree split / balanced subset report")
    p.add_argument("graphfile")
    p.set_defaults(func=cmd_split)
    return parser


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args, argv)
    except (ParityError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except GuardExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except CertificationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
