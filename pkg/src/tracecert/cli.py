"""Command-line front end.

Exit status: 0 when every applicable inequality verified, 1 when one failed
numerically, 2 for usage or input errors. JSON goes to stdout, diagnostics to
stderr.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import generators
from .config import Tolerances
from .eigenspace import certify_eigenspace
from .errors import TraceCertError
from .harness import ANGLE_STYLES, KINDS, FuzzConfig, parse_dims, run_fuzz
from .matrix_core import StiefelFrame
from .matrixio import format_matrix, read_matrix, write_matrix
from .polar import certify_polar
from .report import dumps, envelope, file_digest
from .subspace import canonical_angles

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2

_TOL_FLAGS = ("frame_tol", "gap_tol", "rank_tol", "slack_tol")


class UsageError(Exception):
    pass


def _floats(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from exc


def _u64(text: str) -> int:
    v = int(text, 0)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("global options")
    g.add_argument("--json", metavar="PATH", help="also write the JSON envelope to PATH")
    g.add_argument("--tol", action="append", default=[], metavar="NAME=VALUE", help="override a tolerance (repeatable)")
    g.add_argument("--seed", type=_u64, default=0, help="unsigned 64-bit seed")
    for name in _TOL_FLAGS:
        g.add_argument("--" + name.replace("_", "-"), type=float, dest=name, default=None)
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="tracecert", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("angles", parents=[common], help="canonical angles between two frames")
    p.add_argument("x")
    p.add_argument("y")

    p = sub.add_parser("eig-cert", parents=[common], help="certify an approximate top-k eigenspace")
    p.add_argument("h")
    p.add_argument("p")

    p = sub.add_parser("polar-cert", parents=[common], help="certify an approximate orthonormal polar factor")
    p.add_argument("b")
    p.add_argument("p")

    p = sub.add_parser("fuzz", parents=[common], help="run a seeded fuzz campaign")
    p.add_argument("--config", metavar="FILE", help="key=value config file; flags override it")
    p.add_argument("--trials", type=int)
    p.add_argument("--dims", help="comma-separated NxK pairs, e.g. 20x5,50x10")
    p.add_argument("--which", help=f"comma-separated subset of {','.join(KINDS)}")
    p.add_argument("--spectrum-style")
    p.add_argument("--angle-style", choices=ANGLE_STYLES)
    p.add_argument("--preset", choices=["rotation-sweep"], help="2x1 rotation family, eigenspace checks only")
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("gen", parents=[common], help="write a generated matrix file")
    p.add_argument("kind", choices=["hermitian", "stiefel", "svals"])
    p.add_argument("--spectrum", type=_floats)
    p.add_argument("--sigma", type=_floats)
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("-o", "--out", metavar="PATH", help="output file (default: matrix text on stdout)")
    return parser


def _tolerances(args) -> Tolerances:
    changes = {}
    for item in args.tol:
        name, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"--tol expects NAME=VALUE, got {item!r}")
        try:
            changes[name.strip().replace("-", "_")] = float(value)
        except ValueError as exc:
            raise UsageError(f"bad tolerance value in {item!r}") from exc
    for name in _TOL_FLAGS:
        if getattr(args, name) is not None:
            changes[name] = getattr(args, name)
    try:
        return Tolerances().replace(**changes)
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from exc


def _input(path: str) -> tuple[np.ndarray, dict]:
    try:
        a = read_matrix(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    return a, {"path": path, "digest": file_digest(path)}


def _frame(a: np.ndarray, tols: Tolerances, path: str) -> StiefelFrame:
    try:
        return StiefelFrame.from_array(a, tols.frame_tol)
    except TraceCertError as exc:
        raise UsageError(f"{path}: {exc}") from exc


def _cmd_angles(args, tols):
    x, ix = _input(args.x)
    y, iy = _input(args.y)
    res = canonical_angles(_frame(x, tols, args.x), _frame(y, tols, args.y), tols)
    slack = tols.slack_tol * max(1.0, res.distF)
    ok = res.half_angle_distF <= res.distF + slack and res.distF <= 2 * res.half_angle_distF + slack
    return envelope("angles", [ix, iy], tols, res, ok)


def _cmd_eig(args, tols):
    h, ih = _input(args.h)
    p, ip = _input(args.p)
    cert = certify_eigenspace(h, _frame(p, tols, args.p), tols)
    return envelope("eig-cert", [ih, ip], tols, cert, cert.chain_verified)


def _cmd_polar(args, tols):
    b, ib = _input(args.b)
    p, ip = _input(args.p)
    cert = certify_polar(b, _frame(p, tols, args.p), tols)
    return envelope("polar-cert", [ib, ip], tols, cert, cert.chain_verified)


def _cmd_fuzz(args, tols):
    kw = {}
    inputs = []
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as fh:
                base = FuzzConfig.from_text(fh.read())
        except OSError as exc:
            raise UsageError(f"cannot read {args.config}: {exc.strerror}") from exc
        kw = {f: getattr(base, f) for f in ("seed", "trials", "dims", "spectrum_style", "angle_style", "which")}
        inputs.append({"path": args.config, "digest": file_digest(args.config)})
    if args.preset == "rotation-sweep":
        kw.update(dims=((2, 1),), which=("eig",), angle_style="moderate")
    if args.seed or "seed" not in kw:
        kw["seed"] = args.seed
    if args.trials is not None:
        kw["trials"] = args.trials
    if args.dims:
        kw["dims"] = tuple(parse_dims(args.dims))
    if args.which:
        kw["which"] = tuple(w.strip() for w in args.which.split(",") if w.strip())
    if args.spectrum_style:
        kw["spectrum_style"] = args.spectrum_style
    if args.angle_style:
        kw["angle_style"] = args.angle_style
    if args.workers < 1:
        raise UsageError("--workers must be at least 1")
    cfg = FuzzConfig(**kw)
    report = run_fuzz(cfg, tols, workers=args.workers)
    return envelope("fuzz", inputs, tols, report, report.ok)


def _cmd_gen(args, tols):
    seed = args.seed
    if args.kind == "hermitian":
        if not args.spectrum:
            raise UsageError("gen hermitian needs --spectrum")
        a = generators.gen_hermitian(len(args.spectrum), args.spectrum, seed)
        params = {"spectrum": args.spectrum}
    elif args.kind == "stiefel":
        if args.n is None or args.k is None:
            raise UsageError("gen stiefel needs --n and --k")
        a = generators.gen_stiefel(args.n, args.k, seed).matrix
        params = {"n": args.n, "k": args.k}
    else:
        if args.n is None or not args.sigma:
            raise UsageError("gen svals needs --n and --sigma")
        k = args.k if args.k is not None else len(args.sigma)
        a = generators.gen_with_singular_values(args.n, k, args.sigma, seed)
        params = {"n": args.n, "k": k, "sigma": args.sigma}
    comment = f"tracecert gen {args.kind} seed={seed}"
    if args.out is None:
        sys.stdout.write(format_matrix(a, comment=comment))
        return None
    write_matrix(args.out, a, comment=comment)
    result = {"kind": args.kind, "seed": seed, "params": params, "rows": a.shape[0], "cols": a.shape[1],
              "path": args.out, "digest": file_digest(args.out)}
    return envelope("gen", [], tols, result, True)


_COMMANDS = {
    "angles": _cmd_angles,
    "eig-cert": _cmd_eig,
    "polar-cert": _cmd_polar,
    "fuzz": _cmd_fuzz,
    "gen": _cmd_gen,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        tols = _tolerances(args)
        env = _COMMANDS[args.command](args, tols)
    except (UsageError, TraceCertError, ValueError) as exc:
        print(f"tracecert {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if env is None:
        return EXIT_OK
    text = dumps(env)
    sys.stdout.write(text)
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(text)
    if not env["verified"]:
        print(f"tracecert {args.command}: an inequality failed its slack check", file=sys.stderr)
        return EXIT_VIOLATION
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
