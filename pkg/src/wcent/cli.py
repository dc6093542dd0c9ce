"""Command-line front end for reproducible verification runs.

Every command works on one partition (-p) or sweeps all partitions up to a
bound (--max-N, optionally capped in length by --max-n).  Reports render as
text, JSON, or LaTeX; JSON reports are deterministic byte-for-byte for a
fixed configuration (sorted keys, canonical term order, no timings), so two
seeded runs can be diffed directly.

Exit status: 0 all checks passed, 1 a verification failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass, field
from typing import Callable, Optional

from . import serialize as sz
from .affine import center_check, ss_vectors, w_correspondence
from .cdet import (jacobian_independence, miura_generators, miura_image,
                   w_generators)
from .centralizer import Partition, all_partitions, centralizer_basis
from .diffpoly import DiffVar
from .pva import MembershipMode, pva_axiom_suite, w_membership

EXIT_PASS = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2

DEFAULT_SAMPLES = 100

LATEX_COMMANDS = {"basis", "generators", "miura", "ss-vectors", "jacobian"}


@dataclass
class RunConfig:
    command: str
    partitions: list[Partition]
    mode: MembershipMode = MembershipMode.FULL_BASIS
    seed: int = 0
    fmt: str = "text"
    samples: int = DEFAULT_SAMPLES


@dataclass
class Report:
    """One command's outcome: JSON-ready payload plus text/LaTeX renderings.

    Failed checks carry their witnesses inside `data`.  Timings appear only
    in the text rendering, never in `data`.
    """

    command: str
    ok: bool
    data: dict
    lines: list[str] = field(default_factory=list)
    latex: Optional[str] = None


# -- per-partition runners ------------------------------------------------------


def _run_basis(p: Partition, cfg: RunConfig) -> Report:
    basis = centralizer_basis(p)
    data = {
        "partition": str(p),
        "dim": len(basis),
        "basis": [[e.i, e.j, e.r] for e in basis],
    }
    lines = ["partition %s: dim %d" % (p, len(basis))]
    lines += ["  " + e.text() for e in basis]
    latex = "\\begin{itemize}\n%s\n\\end{itemize}" % "\n".join(
        r"\item $%s$" % sz.latex_var(DiffVar.of(e)) for e in basis)
    return Report("basis", True, data, lines, latex)


def _run_generators(p: Partition, cfg: RunConfig) -> Report:
    t = w_generators(p)
    data = sz.generator_table_to_json(t)
    lines = ["partition %s: %d generators" % (p, len(t))]
    lines += ["  w[%d][%d] = %s" % (k, r, poly.text()) for (k, r), poly in t.ordered()]
    return Report("generators", True, data, lines, sz.latex_table(t))


def _run_check_membership(p: Partition, cfg: RunConfig) -> Report:
    t = w_generators(p)
    entries = {}
    ok = True
    for (k, r), poly in t.ordered():
        res = w_membership(p, poly, cfg.mode)
        entry = {"pass": res.ok}
        if not res.ok:
            ok = False
            entry["witness"] = {
                "x": [res.witness_x.i, res.witness_x.j, res.witness_x.r],
                "bracket": sz.lambdapoly_to_json(res.witness_bracket),
            }
        entries[sz.table_key("w", k, r)] = entry
    mode_name = "generators" if cfg.mode is MembershipMode.GENERATORS else "full"
    data = {"partition": str(p), "mode": mode_name, "entries": entries, "ok": ok}
    lines = ["partition %s: membership (%s mode)" % (p, mode_name)]
    lines += ["  %s: %s" % (key, "pass" if entries[key]["pass"] else "FAIL")
              for key in sorted(entries)]
    return Report("check-membership", ok, data, lines)


def _run_miura(p: Partition, cfg: RunConfig) -> Report:
    wt = w_generators(p)
    mt = miura_generators(p)
    entries = {}
    ok = True
    for (k, r), poly in wt.ordered():
        img = miura_image(poly)
        match = img == mt.entries[(k, r)]
        ok = ok and match
        entries[sz.table_key("w", k, r)] = {
            "pass": match,
            "image": sz.diffpoly_to_json(img),
        }
    data = {"partition": str(p), "entries": entries, "ok": ok}
    lines = ["partition %s: Miura images" % p]
    lines += ["  %s -> %s%s" % (sz.table_key("w", k, r), miura_image(poly).text(),
                                "" if entries[sz.table_key("w", k, r)]["pass"]
                                else "  MISMATCH")
              for (k, r), poly in wt.ordered()]
    return Report("miura", ok, data, lines, sz.latex_table(mt))


def _run_jacobian(p: Partition, cfg: RunConfig) -> Report:
    cert = jacobian_independence(p, seed=cfg.seed)
    ok = cert.nonzero and cert.symbolic_nonzero is not False
    data = {
        "partition": str(p),
        "nonzero": cert.nonzero,
        "det": sz.rat_to_json(cert.det),
        "seed": cert.seed,
        "attempts": cert.attempts,
        "point": {v.text(): sz.rat_to_json(q) for v, q in sorted(cert.point.items())},
        "poly_order": [sz.table_key("w", k, r) for k, r in cert.poly_order],
        "var_order": [v.text() for v in cert.var_order],
        "symbolic": {
            "computed": cert.symbolic_det is not None,
            "nonzero": cert.symbolic_nonzero,
        },
        "ok": ok,
    }
    lines = ["partition %s: Jacobian determinant %s at seed %d (%d attempt%s)%s" % (
        p, cert.det, cert.seed, cert.attempts, "s" if cert.attempts != 1 else "",
        "" if cert.symbolic_det is None else
        "; symbolic check %s" % ("nonzero" if cert.symbolic_nonzero else "ZERO"))]
    latex = r"\det J = %s" % sz.latex_rat(cert.det)
    if cert.symbolic_det is not None:
        latex += ",\\qquad \\det J(E) = %s" % sz.latex_diffpoly(cert.symbolic_det)
    return Report("jacobian", ok, data, lines, latex)


def _run_ss_vectors(p: Partition, cfg: RunConfig) -> Report:
    t = ss_vectors(p)
    data = sz.sugawara_table_to_json(t)
    lines = ["partition %s: %d vectors" % (p, len(t))]
    lines += ["  phi[%d][%d] = %s" % (k, r, v.text()) for (k, r), v in t.ordered()]
    return Report("ss-vectors", True, data, lines, sz.latex_table(t))


def _run_verify_center(p: Partition, cfg: RunConfig) -> Report:
    t = ss_vectors(p)
    entries = {}
    ok = True
    for (k, r), v in t.ordered():
        res = center_check(v)
        entry = {"pass": res.ok}
        if not res.ok:
            ok = False
            x, m, img = res.witness
            entry["witness"] = {
                "x": [x.i, x.j, x.r],
                "m": m,
                "image": sz.vacuum_to_json(img),
            }
        entries[sz.table_key("phi", k, r)] = entry
    data = {"partition": str(p), "entries": entries, "ok": ok}
    lines = ["partition %s: centre check" % p]
    lines += ["  %s: %s" % (key, "pass" if entries[key]["pass"] else "FAIL")
              for key in sorted(entries)]
    return Report("verify-center", ok, data, lines)


def _run_verify_iso(p: Partition, cfg: RunConfig) -> Report:
    rep = w_correspondence(p)
    entries = {}
    for key in sorted(rep.matches):
        k, r = key
        entries[sz.table_key("phi", k, r)] = {
            "match": rep.matches[key],
            "translation": rep.translation_ok[key],
        }
    data = {"partition": str(p), "entries": entries, "ok": rep.ok}
    lines = ["partition %s: Miura/Sugawara correspondence" % p]
    lines += ["  %s: %s" % (key,
                            "pass" if entries[key]["match"] and entries[key]["translation"]
                            else "FAIL")
              for key in sorted(entries)]
    return Report("verify-iso", rep.ok, data, lines)


def _run_pva_axioms(p: Partition, cfg: RunConfig) -> Report:
    rep = pva_axiom_suite(p, seed=cfg.seed, samples=cfg.samples)
    data = {
        "partition": str(p),
        "seed": rep.seed,
        "samples": rep.samples,
        "checked": dict(sorted(rep.checked.items())),
        "failures": dict(sorted(rep.failures.items())),
        "ok": rep.ok,
    }
    lines = ["partition %s: bracket axioms on %d samples (seed %d)" % (
        p, rep.samples, rep.seed)]
    lines += ["  %s: %d checked, %d failed" % (name, n, rep.failures.get(name, 0))
              for name, n in sorted(rep.checked.items())]
    return Report("pva-axioms", rep.ok, data, lines)


RUNNERS: dict[str, Callable[[Partition, RunConfig], Report]] = {
    "basis": _run_basis,
    "generators": _run_generators,
    "check-membership": _run_check_membership,
    "miura": _run_miura,
    "jacobian": _run_jacobian,
    "ss-vectors": _run_ss_vectors,
    "verify-center": _run_verify_center,
    "verify-iso": _run_verify_iso,
    "pva-axioms": _run_pva_axioms,
}


def dispatch(cfg: RunConfig) -> Report:
    """Run the command over every configured partition and merge the reports."""
    runner = RUNNERS[cfg.command]
    parts = [runner(p, cfg) for p in cfg.partitions]
    if len(parts) == 1:
        return parts[0]
    ok = all(r.ok for r in parts)
    data = {"command": cfg.command, "ok": ok, "runs": [r.data for r in parts]}
    lines = []
    for r in parts:
        lines.extend(r.lines)
    lines.append("sweep over %d partitions: %s" % (len(parts), "pass" if ok else "FAIL"))
    latex = None
    if all(r.latex is not None for r in parts):
        latex = "\n\\par\n".join(r.latex for r in parts)
    return Report(cfg.command, ok, data, lines, latex)


# -- argument handling -----------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wcent",
        description="Exact verification of W-algebra generators for centralizers "
                    "and the centre of the affine vertex algebra at the critical level.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")
    for name, help_text in [
        ("basis", "list the centralizer basis E[i,j,r]"),
        ("generators", "compute the W-algebra generator table"),
        ("check-membership", "verify every generator against the projected bracket"),
        ("miura", "compute Miura images and compare against the diagonal product"),
        ("jacobian", "certify independence of the Miura leading terms"),
        ("ss-vectors", "compute the Segal-Sugawara vector table"),
        ("verify-center", "verify the vectors are annihilated by nonnegative modes"),
        ("verify-iso", "verify projected vectors match realized Miura images"),
        ("pva-axioms", "verify bracket axioms on seeded random samples"),
    ]:
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("-p", "--partition", metavar="PARTS",
                        help="comma-separated nondecreasing parts, e.g. 1,2,2")
        sp.add_argument("--max-N", type=int, metavar="N",
                        help="sweep all partitions with at most N boxes")
        sp.add_argument("--max-n", type=int, metavar="LEN",
                        help="cap the number of parts during a sweep")
        sp.add_argument("--mode", choices=["generators", "full"], default="full",
                        help="membership test set (default: full)")
        sp.add_argument("--seed", type=int, default=None,
                        help="seed for sampled checks (default: WCENT_SEED or 0)")
        sp.add_argument("--samples", type=int, default=DEFAULT_SAMPLES,
                        help="sample count for pva-axioms (default: %(default)s)")
        sp.add_argument("--format", dest="fmt", choices=["text", "json", "latex"],
                        default="text", help="report format (default: text)")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    if args.partition is not None and args.max_N is not None:
        raise ValueError("give either --partition or --max-N, not both")
    if args.partition is not None:
        partitions = [Partition.parse(args.partition)]
    elif args.max_N is not None:
        if args.max_N < 1:
            raise ValueError("--max-N must be at least 1")
        partitions = all_partitions(args.max_N, max_parts=args.max_n)
    else:
        raise ValueError("a partition (-p) or a sweep bound (--max-N) is required")
    if args.fmt == "latex" and args.command not in LATEX_COMMANDS:
        raise ValueError("latex format is not available for %s" % args.command)
    seed = args.seed
    if seed is None:
        seed = int(os.environ.get("WCENT_SEED", "0"))
    if seed < 0:
        raise ValueError("seed must be non-negative")
    mode = MembershipMode.GENERATORS if args.mode == "generators" \
        else MembershipMode.FULL_BASIS
    return RunConfig(args.command, partitions, mode, seed, args.fmt, args.samples)


def render(report: Report, fmt: str, elapsed: float) -> str:
    if fmt == "json":
        return json.dumps(report.data, indent=2, sort_keys=True)
    if fmt == "latex":
        return report.latex or ""
    lines = list(report.lines)
    lines.append("%s: %s  [%.2fs]" % (report.command,
                                      "pass" if report.ok else "FAIL", elapsed))
    return "\n".join(lines)


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = config_from_args(args)
    except ValueError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE
    start = time.perf_counter()
    report = dispatch(cfg)
    print(render(report, cfg.fmt, time.perf_counter() - start))
    return EXIT_PASS if report.ok else EXIT_CHECK_FAILED


if __name__ == "__main__":
    sys.exit(main())
