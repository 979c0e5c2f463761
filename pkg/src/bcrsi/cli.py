"""Command-line entry point.

Subcommands: region, verify, gaussian, codesim, sweep, lindet (aliases),
report.  Data commands emit CSV or JSON with a provenance header and are
byte-deterministic for a fixed argument list (seeds included); the report
command additionally renders PNG figures next to the delimited output.

Exit codes: 0 success, 1 a reliability or secrecy assertion failed,
2 malformed input, 3 inadmissible spec (the message names the violated
condition).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import __version__, codesim, gaussian, lindet, regions
from .budget import BudgetExceeded
from .fm import fm_projection_oracle
from .geometry import RateRegion
from .infotools import DmcChannel, Pmf, PmfError
from .markov import (random_marton_spec, random_superposition_spec,
                     spec_from_dict)
from .regions import RegionResult


class UsageError(Exception):
    exit_code = 2


class InadmissibleError(Exception):
    exit_code = 3


class CheckFailed(Exception):
    exit_code = 1


def _fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        return f"{float(v):.12g}"
    return str(v)


def _provenance(argv) -> str:
    return f"bcrsi {' '.join(argv)} | version={__version__}"


def _write_text(path, text):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
        with open(path, "w") as fh:
            fh.write(text)


def _emit_csv(path, provenance, header, rows):
    lines = [f"# {provenance}", ",".join(header)]
    lines += [",".join(_fmt(v) for v in row) for row in rows]
    _write_text(path, "\n".join(lines) + "\n")


def _emit_json(path, provenance, obj):
    payload = {"_provenance": provenance}
    payload.update(obj)
    _write_text(path, json.dumps(payload, indent=2, sort_keys=True) + "\n")


def _region_rows(region: RateRegion):
    return [(v[0], v[1]) for v in region.vertices]


def _load_channel(path) -> DmcChannel:
    if not path:
        raise UsageError("this command needs --channel")
    try:
        with open(path) as fh:
            return DmcChannel.from_json(fh.read())
    except FileNotFoundError:
        raise UsageError(f"channel file not found: {path}")
    except (json.JSONDecodeError, KeyError, PmfError, ValueError) as exc:
        raise UsageError(f"malformed channel file {path}: {exc}")


def _load_spec(path):
    if not path:
        raise UsageError("this command needs --spec")
    try:
        with open(path) as fh:
            return spec_from_dict(json.load(fh))
    except FileNotFoundError:
        raise UsageError(f"spec file not found: {path}")
    except (json.JSONDecodeError, KeyError, PmfError, ValueError) as exc:
        raise UsageError(f"malformed spec file {path}: {exc}")


def _parse_px(text, x_size) -> Pmf:
    if not text:
        return Pmf(np.full(x_size, 1.0 / x_size))
    try:
        vals = np.asarray([float(t) for t in text.split(",")], dtype=float)
        return Pmf(vals)
    except (ValueError, PmfError) as exc:
        raise UsageError(f"bad --px value: {exc}")


def _unwrap(result) -> RateRegion:
    if isinstance(result, RegionResult):
        if not result.admissible:
            raise InadmissibleError(result.reason)
        return result.region
    return result


# ---------------------------------------------------------------------------
# region


_REGION_NAMES = ("lindet", "coupled", "secret-key", "combined", "weak-eve",
                 "deterministic-z", "superposition", "marton", "mixed",
                 "joint-superposition", "joint-marton", "split-superposition",
                 "fm-oracle")


def _compute_region(args) -> RateRegion:
    name = args.name
    if name == "lindet":
        for flag in ("n1", "n2", "ne"):
            if getattr(args, flag) is None:
                raise UsageError("region lindet needs --n1 --n2 --ne")
        return lindet.capacity_region(lindet.LinDetConfig(args.n1, args.n2, args.ne))
    if name == "coupled":
        for flag in ("a1", "b1", "a2", "b2"):
            if getattr(args, flag) is None:
                raise UsageError("region coupled needs --a1 --b1 --a2 --b2")
        return regions.coupled_region(args.a1, args.b1, args.a2, args.b2)
    ch = _load_channel(args.channel)
    if name in ("secret-key", "combined", "weak-eve", "deterministic-z"):
        px = _parse_px(args.px, ch.x_size)
        try:
            fn = {"secret-key": regions.secret_key_region,
                  "combined": regions.combined_region,
                  "weak-eve": regions.weak_eav_capacity,
                  "deterministic-z": regions.deterministic_z_region}[name]
            return _unwrap(fn(ch, px))
        except ValueError as exc:
            raise UsageError(str(exc))
    spec = _load_spec(args.spec)
    from .markov import MartonSpec, MixedSpec, SplitChainSpec, SuperpositionSpec
    wanted = {"fm-oracle": MartonSpec,
              "superposition": SuperpositionSpec,
              "marton": MartonSpec,
              "mixed": MixedSpec,
              "joint-superposition": SuperpositionSpec,
              "joint-marton": MartonSpec,
              "split-superposition": SplitChainSpec}[name]
    if not isinstance(spec, wanted):
        raise UsageError(f"region {name!r} needs a {wanted.__name__} spec, "
                         f"got {type(spec).__name__}")
    if name == "fm-oracle":
        return fm_projection_oracle(ch, spec, args.grid)
    fn = {"superposition": regions.superposition_region,
          "marton": regions.marton_region,
          "mixed": regions.mixed_case_region,
          "joint-superposition": regions.joint_superposition_region,
          "joint-marton": regions.joint_marton_region,
          "split-superposition": regions.split_superposition_region}[name]
    return _unwrap(fn(ch, spec))


def cmd_region(args, argv) -> int:
    region = _compute_region(args)
    if args.format == "json":
        _emit_json(args.out, _provenance(argv),
                   {"vertices": [[v[0], v[1]] for v in region.vertices]})
    else:
        _emit_csv(args.out, _provenance(argv), ("R1", "R2"), _region_rows(region))
    return 0


# ---------------------------------------------------------------------------
# verify


def cmd_verify_lindet(args, argv) -> int:
    cfg = lindet.LinDetConfig(args.n1, args.n2, args.ne)
    if args.all_rates:
        pairs = lindet.integer_rate_pairs(cfg)
    else:
        if args.r1 is None or args.r2 is None:
            raise UsageError("verify lindet needs --r1 --r2 or --all-rates")
        pairs = [(args.r1, args.r2)]
    corrupt = os.environ.get("BCRSI_FAULT", "") == "lindet-encode"
    reports = []
    for r1, r2 in pairs:
        try:
            reports.append(lindet.verify_exhaustive(cfg, r1, r2, corrupt).to_dict())
        except lindet.LindetError as exc:
            raise UsageError(str(exc))
    ok = all(r["ok"] for r in reports)
    failing = [r for r in reports if not r["ok"]]
    _emit_json(args.out, _provenance(argv), {
        "config": {"n1": cfg.n1, "n2": cfg.n2, "ne": cfg.ne},
        "pairs": reports,
        "max_error_count": max(r["error_count"] for r in reports),
        "max_leak_bits": max(max(r["leak1_bits"], r["leak2_bits"]) for r in reports),
        "ok": ok,
    })
    if not ok:
        first = failing[0]
        raise CheckFailed(f"rate pair ({first['r1']},{first['r2']}) failed: "
                          f"errors={first['error_count']} "
                          f"leak1={first['leak1_bits']:.3g} leak2={first['leak2_bits']:.3g}")
    return 0


def cmd_verify_codesim(args, argv) -> int:
    ch = _load_channel(args.channel)
    code = _build_code_from_args(args, ch)
    pe1, pe2 = codesim.exact_error_prob(code, ch)
    leak = codesim.exact_leakage(code, ch)
    report = {"scheme": args.scheme, "n": args.n, "seed": args.seed,
              "pe1": pe1, "pe2": pe2,
              "leak1_bits": leak.leak1_bits, "leak2_bits": leak.leak2_bits,
              "joint_leak_bits": leak.joint_bits}
    failures = []
    if args.scheme == "secret-key" and max(leak.leak1_bits, leak.leak2_bits) > 1e-9:
        failures.append("one-time-pad individual leakage is not zero")
    if args.max_pe is not None and max(pe1, pe2) > args.max_pe:
        failures.append(f"error probability above --max-pe={args.max_pe}")
    if args.max_leak is not None and max(leak.leak1_bits, leak.leak2_bits) > args.max_leak:
        failures.append(f"leakage above --max-leak={args.max_leak}")
    report["ok"] = not failures
    report["failures"] = failures
    _emit_json(args.out, _provenance(argv), report)
    if failures:
        raise CheckFailed("; ".join(failures))
    return 0


def cmd_verify_xor_ring(args, argv) -> int:
    rep = lindet.xor_ring_scheme(args.k)
    ok = (rep.decode_errors == 0
          and all(abs(e - 1.0) <= 1e-12 for e in rep.equivocations)
          and abs(rep.joint_equivocation - 1.0) <= 1e-12)
    _emit_json(args.out, _provenance(argv), {
        "k": rep.k, "n": rep.n, "rate_per_receiver": rep.rate_per_receiver,
        "decode_errors": rep.decode_errors,
        "equivocations": rep.equivocations,
        "joint_equivocation": rep.joint_equivocation,
        "leakage_per_receiver": rep.leakage_per_receiver,
        "ok": ok,
    })
    if not ok:
        raise CheckFailed("xor ring equivocation check failed")
    return 0


# ---------------------------------------------------------------------------
# gaussian


def cmd_gaussian(args, argv) -> int:
    cfg = gaussian.GaussianConfig(args.P, args.s1sq, args.s2sq, args.sesq)
    try:
        if args.which == "inner":
            region = gaussian.inner_bound(cfg, args.samples)
        elif args.which == "outer":
            region = gaussian.outer_bound(cfg, args.samples)
        else:
            cap = gaussian.capacity_region(cfg, args.samples)
            if cap.exact:
                _emit_csv(args.out, _provenance(argv) + f" | regime={cap.regime} exact=true",
                          ("R1", "R2"), _region_rows(cap.region))
            else:
                base = args.out or "gaussian.csv"
                stem = base[:-4] if base.endswith(".csv") else base
                _emit_csv(f"{stem}.inner.csv", _provenance(argv) + f" | regime={cap.regime} exact=false",
                          ("R1", "R2"), _region_rows(cap.inner))
                _emit_csv(f"{stem}.outer.csv", _provenance(argv) + f" | regime={cap.regime} exact=false",
                          ("R1", "R2"), _region_rows(cap.outer))
                sys.stdout.write(f"bound_gap_bits={_fmt(cap.bound_gap_bits)}\n")
            return 0
    except ValueError as exc:
        raise UsageError(str(exc))
    _emit_csv(args.out, _provenance(argv), ("R1", "R2"), _region_rows(region))
    return 0


# ---------------------------------------------------------------------------
# codesim


def _load_splits(path) -> codesim.SplitBits:
    if not path:
        return codesim.SplitBits()
    try:
        with open(path) as fh:
            return codesim.SplitBits.from_dict(json.load(fh))
    except FileNotFoundError:
        raise UsageError(f"splits file not found: {path}")
    except (json.JSONDecodeError, ValueError) as exc:
        raise UsageError(f"malformed splits file {path}: {exc}")


def _build_code_from_args(args, ch):
    splits = _load_splits(args.splits)
    px = None
    if getattr(args, "px", None):
        px = _parse_px(args.px, ch.x_size).probs
    spec = _load_spec(args.spec) if getattr(args, "spec", None) else None
    try:
        return codesim.build_code(args.scheme, ch, args.n, splits, args.seed,
                                  px=px, spec=spec)
    except ValueError as exc:
        raise UsageError(str(exc))


def cmd_codesim_run(args, argv) -> int:
    ch = _load_channel(args.channel)
    prov = _provenance(argv) + f" | seed={args.seed}"
    splits = _load_splits(args.splits)
    spec = _load_spec(args.spec) if args.spec else None
    px = _parse_px(args.px, ch.x_size).probs if args.px else None
    header = ("n", "pe1", "pe2", "leak1_per_n", "leak2_per_n", "skipped", "splits")
    if args.trend:
        n_list = [int(t) for t in args.trend.split(",")]
        seeds = [int(t) for t in args.seeds.split(",")] if args.seeds else [args.seed]
        rows = codesim.trend_experiment(args.scheme, ch, n_list, seeds,
                                        lambda n: splits, px=px, spec=spec)
    else:
        code = codesim.build_code(args.scheme, ch, args.n, splits, args.seed,
                                  px=px, spec=spec)
        pe1, pe2 = codesim.exact_error_prob(code, ch)
        leak = codesim.exact_leakage(code, ch)
        tag = f"k={splits.k};sk={splits.sk};s1={splits.s1};s2={splits.s2};r={splits.r}"
        rows = [codesim.TrendRow(args.n, pe1, pe2, leak.leak1_bits / args.n,
                                 leak.leak2_bits / args.n, splits=tag)]
    _emit_csv(args.out, prov, header,
              [(r.n, r.pe1, r.pe2, r.leak1_per_n, r.leak2_per_n, r.skipped, r.splits)
               for r in rows])
    return 0


# ---------------------------------------------------------------------------
# sweep


def cmd_sweep(args, argv) -> int:
    ch = _load_channel(args.channel)
    rng = np.random.Generator(np.random.Philox(args.seed))
    if args.family == "superposition":
        specs = (random_superposition_spec(rng, nv=ch.x_size + 2, nx=ch.x_size)
                 for _ in range(args.budget))
        region = regions.region_sweep(ch, specs, regions.superposition_region)
    elif args.family == "marton":
        specs = (random_marton_spec(rng, nx=ch.x_size) for _ in range(args.budget))
        region = regions.region_sweep(ch, specs, regions.marton_region)
    else:
        raise UsageError(f"unknown family {args.family!r}")
    _emit_csv(args.out, _provenance(argv) + f" | seed={args.seed}",
              ("R1", "R2"), _region_rows(region))
    return 0


# ---------------------------------------------------------------------------
# report: figures next to the delimited output


def cmd_report(args, argv) -> int:
    from . import plots

    outdir = args.outdir or "."
    os.makedirs(outdir, exist_ok=True)
    if args.target == "region":
        region = _compute_region(args)
        csv_path = os.path.join(outdir, f"region-{args.name}.csv")
        png_path = os.path.join(outdir, f"region-{args.name}.png")
        _emit_csv(csv_path, _provenance(argv), ("R1", "R2"), _region_rows(region))
        plots.plot_regions([(args.name, region)], png_path,
                           title=f"{args.name} rate region")
        sys.stdout.write(f"wrote {csv_path} and {png_path}\n")
        return 0
    if args.target == "gaussian":
        cfg = gaussian.GaussianConfig(args.P, args.s1sq, args.s2sq, args.sesq)
        cap = gaussian.capacity_region(cfg, args.samples)
        named = []
        if cap.exact:
            named.append((f"capacity ({cap.regime})", cap.region))
            _emit_csv(os.path.join(outdir, "gaussian-capacity.csv"),
                      _provenance(argv), ("R1", "R2"), _region_rows(cap.region))
        else:
            named.append(("outer bound", cap.outer))
            named.append(("inner bound", cap.inner))
            _emit_csv(os.path.join(outdir, "gaussian-inner.csv"),
                      _provenance(argv), ("R1", "R2"), _region_rows(cap.inner))
            _emit_csv(os.path.join(outdir, "gaussian-outer.csv"),
                      _provenance(argv), ("R1", "R2"), _region_rows(cap.outer))
        png_path = os.path.join(outdir, "gaussian.png")
        plots.plot_regions(named, png_path, title=f"Gaussian bounds ({cap.regime})")
        sys.stdout.write(f"wrote figures to {outdir}\n")
        return 0
    if args.target == "trend":
        ch = _load_channel(args.channel)
        splits = _load_splits(args.splits)
        spec = _load_spec(args.spec) if args.spec else None
        n_list = [int(t) for t in (args.trend or "2,4,6,8").split(",")]
        seeds = [int(t) for t in args.seeds.split(",")] if args.seeds else [args.seed]
        rows = codesim.trend_experiment(args.scheme, ch, n_list, seeds,
                                        lambda n: splits, spec=spec)
        csv_path = os.path.join(outdir, "trend.csv")
        _emit_csv(csv_path, _provenance(argv),
                  ("n", "pe1", "pe2", "leak1_per_n", "leak2_per_n", "skipped", "splits"),
                  [(r.n, r.pe1, r.pe2, r.leak1_per_n, r.leak2_per_n, r.skipped, r.splits)
                   for r in rows])
        plots.plot_trend(rows, os.path.join(outdir, "trend.png"),
                         title=f"{args.scheme} trend")
        sys.stdout.write(f"wrote figures to {outdir}\n")
        return 0
    raise UsageError(f"unknown report target {args.target!r}")


# ---------------------------------------------------------------------------
# parser


def _add_region_opts(p):
    p.add_argument("--channel", help="channel JSON file")
    p.add_argument("--spec", help="auxiliary spec JSON file")
    p.add_argument("--px", help="input pmf, comma separated (default uniform)")
    p.add_argument("--grid", type=float, default=0.02, help="grid step for fm-oracle")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n1", type=int)
    p.add_argument("--n2", type=int)
    p.add_argument("--ne", type=int)
    p.add_argument("--a1", type=float)
    p.add_argument("--b1", type=float)
    p.add_argument("--a2", type=float)
    p.add_argument("--b2", type=float)
    p.add_argument("--out", help="output path (default stdout)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")


def _add_codesim_opts(p):
    p.add_argument("--scheme", required=True,
                   choices=("secret-key", "combined", "superposition"))
    p.add_argument("--channel", required=True)
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--splits", help="splits JSON file")
    p.add_argument("--spec", help="auxiliary spec JSON (superposition)")
    p.add_argument("--px", help="input pmf override")
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--out", help="output path (default stdout)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="bcrsi",
                                 description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    pr = sub.add_parser("region", help="evaluate a rate region")
    pr.add_argument("name", choices=_REGION_NAMES)
    _add_region_opts(pr)

    pv = sub.add_parser("verify", help="run exact verification suites")
    vsub = pv.add_subparsers(dest="target", required=True)
    pvl = vsub.add_parser("lindet")
    pvl.add_argument("--n1", type=int, required=True)
    pvl.add_argument("--n2", type=int, required=True)
    pvl.add_argument("--ne", type=int, required=True)
    pvl.add_argument("--r1", type=int)
    pvl.add_argument("--r2", type=int)
    pvl.add_argument("--all-rates", action="store_true")
    pvl.add_argument("--out")
    pvc = vsub.add_parser("codesim")
    _add_codesim_opts(pvc)
    pvc.add_argument("--max-pe", type=float)
    pvc.add_argument("--max-leak", type=float)
    pvx = vsub.add_parser("xor-ring")
    pvx.add_argument("--k", type=int, required=True)
    pvx.add_argument("--out")

    pg = sub.add_parser("gaussian", help="Gaussian bounds and capacity")
    gsub = pg.add_subparsers(dest="gcmd", required=True)
    pgb = gsub.add_parser("bound")
    pgb.add_argument("--P", type=float, required=True)
    pgb.add_argument("--s1sq", type=float, required=True)
    pgb.add_argument("--s2sq", type=float, required=True)
    pgb.add_argument("--sesq", type=float, required=True)
    pgb.add_argument("--which", choices=("inner", "outer", "capacity"),
                     required=True)
    pgb.add_argument("--samples", type=int, default=200)
    pgb.add_argument("--out")

    pc = sub.add_parser("codesim", help="finite-blocklength code evaluation")
    csub = pc.add_subparsers(dest="ccmd", required=True)
    pcr = csub.add_parser("run")
    _add_codesim_opts(pcr)
    pcr.add_argument("--trend", help="comma separated blocklengths")
    pcr.add_argument("--seeds", help="comma separated seeds for --trend")

    ps = sub.add_parser("sweep", help="union of per-spec regions")
    ps.add_argument("--channel", required=True)
    ps.add_argument("--family", choices=("superposition", "marton"),
                    default="superposition")
    ps.add_argument("--budget", type=int, default=100)
    ps.add_argument("--seed", type=int, default=0)
    ps.add_argument("--out")

    pl = sub.add_parser("lindet", help="deterministic-model shortcuts")
    lsub = pl.add_subparsers(dest="lcmd", required=True)
    plr = lsub.add_parser("region")
    plr.add_argument("--n1", type=int, required=True)
    plr.add_argument("--n2", type=int, required=True)
    plr.add_argument("--ne", type=int, required=True)
    plr.add_argument("--out")
    plr.add_argument("--format", choices=("csv", "json"), default="csv")
    plv = lsub.add_parser("verify")
    plv.add_argument("--n1", type=int, required=True)
    plv.add_argument("--n2", type=int, required=True)
    plv.add_argument("--ne", type=int, required=True)
    plv.add_argument("--r1", type=int)
    plv.add_argument("--r2", type=int)
    plv.add_argument("--all-rates", action="store_true")
    plv.add_argument("--out")

    pp = sub.add_parser("report", help="figures plus CSV output")
    rsub = pp.add_subparsers(dest="target", required=True)
    ppr = rsub.add_parser("region")
    ppr.add_argument("name", choices=_REGION_NAMES)
    _add_region_opts(ppr)
    ppr.add_argument("--outdir")
    ppg = rsub.add_parser("gaussian")
    ppg.add_argument("--P", type=float, required=True)
    ppg.add_argument("--s1sq", type=float, required=True)
    ppg.add_argument("--s2sq", type=float, required=True)
    ppg.add_argument("--sesq", type=float, required=True)
    ppg.add_argument("--samples", type=int, default=120)
    ppg.add_argument("--outdir")
    ppt = rsub.add_parser("trend")
    ppt.add_argument("--scheme", required=True,
                     choices=("secret-key", "combined", "superposition"))
    ppt.add_argument("--channel", required=True)
    ppt.add_argument("--splits")
    ppt.add_argument("--spec")
    ppt.add_argument("--trend")
    ppt.add_argument("--seeds")
    ppt.add_argument("--seed", type=int, default=7)
    ppt.add_argument("--outdir")

    return ap


def run(argv) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "region":
        return cmd_region(args, argv)
    if args.command == "verify":
        if args.target == "lindet":
            return cmd_verify_lindet(args, argv)
        if args.target == "codesim":
            return cmd_verify_codesim(args, argv)
        return cmd_verify_xor_ring(args, argv)
    if args.command == "gaussian":
        return cmd_gaussian(args, argv)
    if args.command == "codesim":
        return cmd_codesim_run(args, argv)
    if args.command == "sweep":
        return cmd_sweep(args, argv)
    if args.command == "lindet":
        if args.lcmd == "region":
            cfg = lindet.LinDetConfig(args.n1, args.n2, args.ne)
            region = lindet.capacity_region(cfg)
            if args.format == "json":
                _emit_json(args.out, _provenance(argv),
                           {"vertices": [[v[0], v[1]] for v in region.vertices]})
            else:
                _emit_csv(args.out, _provenance(argv), ("R1", "R2"),
                          _region_rows(region))
            return 0
        return cmd_verify_lindet(args, argv)
    if args.command == "report":
        return cmd_report(args, argv)
    raise UsageError(f"unknown command {args.command!r}")  # pragma: no cover


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        return run(argv)
    except (UsageError, InadmissibleError, CheckFailed) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return exc.exit_code
    except lindet.LindetError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except BudgetExceeded as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
