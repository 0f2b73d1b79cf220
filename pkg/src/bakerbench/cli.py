"""Command-line front end.

Subcommands: iterate, verify, witness, render, psh.  Every run is
deterministic given its flags (plus --seed for sampled suites).  Exit
codes: 0 success, 2 usage error, 3 verification failure, 4 numeric
failure (solver non-convergence or fatal overflow).

Values may also come from a JSON config file (--config); explicit flags
win over config entries, and the effective configuration is echoed in
every report header.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .core import OverflowSignal, PlanePoint, orbit
from .psh import InsufficientSamples, ProbeSpec, _u_of_point, submean_check
from .render import (
    PaletteSpec,
    SliceSpec,
    render_slice,
    write_grid_csv,
    write_ppm,
)
from .reports import kv_line, tree_doc
from .suites import GENERATOR_NAME, SUITES, run_suite
from .witness import SolverFailure, find_witnesses, image_direction

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_VERIFICATION = 3
EXIT_NUMERIC = 4


class UsageError(Exception):
    pass


def parse_complex(text: str) -> complex:
    try:
        re_s, im_s = text.split(",")
        return complex(float(re_s), float(im_s))
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected 're,im' pair, got {text!r}"
        ) from None


def _fmt_complex(c: complex) -> str:
    return f"{c.real!r},{c.imag!r}"


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="bakerbench",
        description="Numerical workbench for the skew-product "
        "F(z,w) = (e^-(z+w) + z + w, e^-2w + 2w + 1)",
    )
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--config", type=Path, help="JSON config file; flags win")
        p.add_argument("--out", type=Path, help="output path (default stdout)")
        p.add_argument("--format", choices=["text", "tree"], default="text")

    p = sub.add_parser("iterate", help="tabulate an orbit")
    common(p)
    p.add_argument("--z", type=parse_complex, required=True, metavar="RE,IM")
    p.add_argument("--w", type=parse_complex, required=True, metavar="RE,IM")
    p.add_argument("--steps", type=int, required=True)

    p = sub.add_parser("verify", help="run a randomized verification suite")
    common(p)
    p.add_argument("--suite", choices=sorted(SUITES), required=True)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--steps", type=int, default=30)

    p = sub.add_parser("witness", help="find witness points for h(zeta) = c")
    common(p)
    p.add_argument("--target", type=parse_complex, required=True, metavar="RE,IM")
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--first-branch", type=int, default=3)

    p = sub.add_parser("render", help="render a basin slice to PPM/CSV")
    common(p)
    p.add_argument("--w-fixed", type=parse_complex, default=complex(4, 0),
                   metavar="RE,IM")
    p.add_argument("--xmin", type=float, default=-5.0)
    p.add_argument("--xmax", type=float, default=5.0)
    p.add_argument("--ymin", type=float, default=-5.0)
    p.add_argument("--ymax", type=float, default=5.0)
    p.add_argument("--width", type=int, default=512)
    p.add_argument("--height", type=int, default=512)
    p.add_argument("--budget", type=int, default=200)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--alpha-threshold", type=float, default=1.0)
    p.add_argument("--palette", type=Path, help="JSON palette file")
    p.add_argument("--csv-out", type=Path, help="also dump the grid as CSV")

    p = sub.add_parser("psh", help="sub-mean-value probe of u_n on a line")
    common(p)
    p.add_argument("--center-z", type=parse_complex, required=True, metavar="RE,IM")
    p.add_argument("--center-w", type=parse_complex, required=True, metavar="RE,IM")
    p.add_argument("--dir-z", type=parse_complex, default=complex(1, 0),
                   metavar="RE,IM")
    p.add_argument("--dir-w", type=parse_complex, default=complex(0, 0),
                   metavar="RE,IM")
    p.add_argument("--radius", type=float, default=0.01)
    p.add_argument("--samples", type=int, default=64)
    p.add_argument("--n", type=int, default=5)
    return ap


def _apply_config(ap: argparse.ArgumentParser, argv: list[str]) -> list[str]:
    """Seed parser defaults from --config so explicit flags override them."""
    if "--config" not in argv:
        return argv
    path = Path(argv[argv.index("--config") + 1])
    try:
        data = json.loads(path.read_text())
        if not isinstance(data, dict):
            raise ValueError("config root must be an object")
    except (OSError, ValueError) as exc:
        raise UsageError(f"bad config file {path}: {exc}") from None
    converted = {}
    for key, value in data.items():
        dest = key.replace("-", "_")
        if isinstance(value, str) and "," in value:
            converted[dest] = parse_complex(value)
        elif dest == "out" or dest.endswith("_out") or dest == "palette":
            converted[dest] = Path(value)
        else:
            converted[dest] = value
    for sub_ap in ap._subparsers._group_actions[0].choices.values():  # noqa: SLF001
        matched = {}
        for action in sub_ap._actions:  # noqa: SLF001
            if action.dest in converted:
                matched[action.dest] = converted[action.dest]
                action.required = False
        sub_ap.set_defaults(**matched)
    return argv


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text)


def _header(args: argparse.Namespace, **extra) -> dict:
    cfg = {"command": args.command}
    skip = {"command", "config"}
    for key, value in sorted(vars(args).items()):
        if key in skip or value is None:
            continue
        if isinstance(value, complex):
            value = _fmt_complex(value)
        elif isinstance(value, Path):
            value = str(value)
        cfg[key] = value
    cfg.update(extra)
    return cfg


def cmd_iterate(args: argparse.Namespace) -> int:
    if args.steps < 0:
        raise UsageError("--steps must be >= 0")
    rec = orbit(PlanePoint(args.z, args.w), args.steps)
    rows = []
    for n, p in enumerate(rec.points):
        denom = abs(p.w) + abs(p.z)
        rows.append({
            "n": n,
            "re_z": p.z.real, "im_z": p.z.imag,
            "re_w": p.w.real, "im_w": p.w.imag,
            "margin": p.w.real - p.z.real,
            "u_n": _u_of_point(p) if denom > 0 else None,
        })
    header = _header(args, truncated=not rec.completed,
                     overflow_step=rec.overflow_step)
    if args.format == "tree":
        _emit(tree_doc({"config": header, "rows": rows}), args.out)
    else:
        lines = [kv_line(header)] + [kv_line(r) for r in rows]
        if not rec.completed:
            lines.append(kv_line({
                "notice": "orbit-truncated-by-overflow",
                "overflow_step": rec.overflow_step,
            }))
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    if args.samples < 1 or args.steps < 1:
        raise UsageError("--samples and --steps must be >= 1")
    result = run_suite(args.suite, args.samples, args.seed, args.steps)
    header = _header(args, generator=GENERATOR_NAME)
    record = {
        "suite": result.suite,
        "samples": result.samples,
        "steps": result.steps,
        "seed": result.seed,
        "violations": result.violations,
        result.worst_label: result.worst,
        "passed": result.passed,
        **result.notes,
    }
    if args.format == "tree":
        _emit(tree_doc({"config": header, "result": record}), args.out)
    else:
        _emit(kv_line(header) + "\n" + kv_line(record) + "\n", args.out)
    return EXIT_OK if result.passed else EXIT_VERIFICATION


def cmd_witness(args: argparse.Namespace) -> int:
    if args.count < 1:
        raise UsageError("--count must be >= 1")
    seq = find_witnesses(args.target, args.count, first_branch=args.first_branch)
    header = _header(args)
    if args.format == "tree":
        payload = {
            "config": header,
            "target": args.target,
            "failed_branches": list(seq.failed_branches),
            "witnesses": [
                {
                    "k": k, "zeta": z, "modulus": mod, "residual": res,
                    "direction": image_direction(z),
                }
                for k, z, mod, res in zip(
                    seq.branches, seq.zetas, seq.moduli, seq.residuals
                )
            ],
        }
        _emit(tree_doc(payload), args.out)
    else:
        lines = [kv_line(header),
                 "k,re_zeta,im_zeta,modulus,residual,"
                 "dir_p_re,dir_p_im,dir_q_re,dir_q_im"]
        for k, z, mod, res in zip(seq.branches, seq.zetas, seq.moduli,
                                  seq.residuals):
            d = image_direction(z)
            lines.append(
                f"{k},{z.real!r},{z.imag!r},{mod!r},{res!r},"
                f"{_fmt_complex(d.p)},{_fmt_complex(d.q)}"
            )
        if seq.failed_branches:
            lines.append(kv_line({
                "notice": "branches-skipped",
                "failed_branches": ";".join(map(str, seq.failed_branches)),
            }))
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_render(args: argparse.Namespace) -> int:
    for name in ("width", "height", "budget", "workers"):
        if getattr(args, name) < 1:
            raise UsageError(f"--{name} must be >= 1")
    palette = PaletteSpec()
    if args.palette is not None:
        try:
            palette = PaletteSpec.from_mapping(json.loads(args.palette.read_text()))
        except (OSError, ValueError, TypeError) as exc:
            raise UsageError(f"bad palette file {args.palette}: {exc}") from None
    spec = SliceSpec(
        base=PlanePoint(0j, args.w_fixed),
        dir_u=PlanePoint(1 + 0j, 0j),
        dir_v=PlanePoint(1j, 0j),
        u_range=(args.xmin, args.xmax),
        v_range=(args.ymin, args.ymax),
        width=args.width,
        height=args.height,
    )
    raster = render_slice(spec, args.budget, threshold=args.alpha_threshold,
                          workers=args.workers)
    out = args.out if args.out is not None else Path("basin.ppm")
    out.write_bytes(write_ppm(raster, palette))
    if args.csv_out is not None:
        args.csv_out.write_bytes(write_grid_csv(raster))
    header = _header(args, out=str(out))
    record = {"ppm": str(out), **raster.stats}
    if args.format == "tree":
        sys.stdout.write(tree_doc({"config": header, "stats": record}))
    else:
        sys.stdout.write(kv_line(header) + "\n" + kv_line(record) + "\n")
    return EXIT_OK


def cmd_psh(args: argparse.Namespace) -> int:
    if args.radius <= 0 or args.samples < 8 or args.n < 0:
        raise UsageError("--radius > 0, --samples >= 8, --n >= 0 required")
    probe = ProbeSpec(
        center=PlanePoint(args.center_z, args.center_w),
        direction=PlanePoint(args.dir_z, args.dir_w),
        radius=args.radius,
        samples=args.samples,
    )
    report = submean_check(probe, args.n)
    header = _header(args)
    record = {
        "n": report.n,
        "center_value": report.center_value,
        "circle_mean": report.circle_mean,
        "deficit": report.deficit,
        "valid_samples": report.valid_samples,
    }
    if args.format == "tree":
        _emit(tree_doc({"config": header, "report": record}), args.out)
    else:
        _emit(kv_line(header) + "\n" + kv_line(record) + "\n", args.out)
    return EXIT_OK


_COMMANDS = {
    "iterate": cmd_iterate,
    "verify": cmd_verify,
    "witness": cmd_witness,
    "render": cmd_render,
    "psh": cmd_psh,
}


def main(argv: list[str] | None = None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    ap = build_parser()
    try:
        argv = _apply_config(ap, list(argv))
        args = ap.parse_args(argv)
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, InsufficientSamples) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SolverFailure, OverflowSignal) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


def entry() -> None:
    sys.exit(main())
