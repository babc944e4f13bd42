"""Command line interface and the deterministic ``run`` entry point.

Exit codes: 0 success, 1 a requested check failed, 2 configuration error,
3 domain error (invalid parameters, singular data), 4 I/O error.
"""
from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ..bianchi import build_pipeline, stage_from_pair
from ..darboux import make_darboux_surface
from ..delaunay import make_profile, position
from ..errors import BubbletonError, ConfigError
from ..resonance import catalog, format_table, resonance_mu
from ..spectral import spectral_data
from ..verify import (Grid, VerificationReport, check_closure, check_conformal,
                      check_constant_distance, check_dihedral, check_mean_curvature, fd_first,
                      mean_curvature)
from .config import JobConfig, build_config, load_document
from .mesh import MeshFile, export_mesh

EXIT_OK, EXIT_CHECK, EXIT_CONFIG, EXIT_DOMAIN, EXIT_IO = 0, 1, 2, 3, 4

SUBCOMMANDS = {
    "profile": "delaunay",
    "transform": "darboux",
    "resonance": "resonance-catalog",
    "bianchi": "bianchi",
    "verify": "verify",
    "export": "export",
}


@dataclass
class Surface:
    kind: str
    evaluator: object
    prof: object
    cover: int
    x_half: float
    lobes: int | None = None
    single_transform: bool = False


@dataclass
class RunResult:
    text: str
    report: VerificationReport | None = None
    mesh: MeshFile | None = None

    @property
    def exit_code(self) -> int:
        return EXIT_OK if self.report is None or self.report.passed else EXIT_CHECK


def _whole_periods(prof, half: float) -> float:
    return prof.period * math.ceil(half / prof.period)


def _infer_kind(cfg: JobConfig) -> str:
    if cfg.stages:
        return "bianchi"
    if cfg.mu is not None or cfg.pair is not None:
        return "darboux"
    return "delaunay"


def build_surface(cfg: JobConfig, kind: str) -> Surface:
    prof = make_profile(cfg.necksize)
    if kind == "delaunay":
        return Surface(kind, lambda x, y: position(prof, x, y), prof, cfg.cover or 1,
                       _whole_periods(prof, 4.0))
    if kind == "darboux":
        lobes = None
        if cfg.pair is not None:
            m, n = cfg.pair
            point = resonance_mu(cfg.necksize, m, n, cfg.branch)
            spec = spectral_data(point.mu, cfg.necksize)
            cover, lobes = cfg.cover or m, n
        elif cfg.mu is not None:
            spec, cover = spectral_data(cfg.mu, cfg.necksize), cfg.cover or 1
        else:
            raise ConfigError("a transform needs --mu or --pair")
        surf = make_darboux_surface(prof, spec, cfg.coeffs, cover, require_closed=False,
                                    backend=cfg.backend)
        return Surface(kind, surf, prof, cover, _whole_periods(prof, 4.0), lobes, True)
    if kind == "bianchi":
        if not cfg.stages:
            raise ConfigError("bianchi needs at least one --stage")
        count = len(cfg.stages)
        stages, centres = [], []
        for i, sc in enumerate(cfg.stages):
            m, n = sc.pair
            if sc.coeffs is not None:
                stages.append(stage_from_pair(cfg.necksize, m, n, prof, sc.branch, None, sc.coeffs))
                continue
            centre = sc.centre if sc.centre is not None else cfg.centre_spacing * (i - (count - 1) / 2)
            centres.append(centre)
            stages.append(stage_from_pair(cfg.necksize, m, n, prof, sc.branch, centre))
        pipe = build_pipeline(prof, stages, cfg.backend)
        half = max([abs(c) for c in centres], default=0.0) + 4.0
        cover = cfg.cover or pipe.closure_cover
        return Surface(kind, pipe, prof, cover, _whole_periods(prof, half))
    raise ConfigError(f"no surface for mode {kind!r}")


def _grid(cfg: JobConfig, surf: Surface) -> Grid:
    x0, x1 = cfg.x_range if cfg.x_range is not None else (-surf.x_half, surf.x_half)
    ny = cfg.ny or 48 * surf.cover + 1
    return Grid(x0, x1, cfg.nx, 2 * math.pi * surf.cover, ny)


def run_checks(cfg: JobConfig, surf: Surface, grid: Grid) -> VerificationReport:
    F = surf.evaluator
    rep = VerificationReport()
    rep.add(check_conformal(F, grid, cfg.tolerance("conformal")))
    rep.add(check_mean_curvature(F, grid, cfg.tolerance("mean_curvature"), h2=cfg.h2))
    rep.add(check_closure(F, surf.cover, grid.axes()[0], cfg.tolerance("closure")))
    if surf.single_transform:
        rep.add(check_constant_distance(F, surf.prof, grid, cfg.tolerance("parallel_distance")))
    if surf.lobes is not None:
        x, y = grid.mesh()
        cloud = F(x[:, :-1], y[:, :-1])
        rep.add(check_dihedral(cloud, surf.lobes, tol=cfg.tolerance("dihedral")))
    return rep


def sample_mesh(surf: Surface, grid: Grid, h2: float):
    x, y = grid.mesh()
    F = surf.evaluator
    pos = F(x, y)
    fx, fy = fd_first(F, x, y)
    n = np.cross(fx, fy)
    n /= np.linalg.norm(n, axis=-1, keepdims=True)
    H, _, _ = mean_curvature(F, x, y, h2=h2)
    orientation = 1.0 if np.nanmedian(H) >= 0 else -1.0
    return pos, n * orientation, orientation < 0


def _summary(rep: VerificationReport) -> str:
    lines = []
    for e in rep.entries:
        status = "PASS" if e.passed else "FAIL"
        lines.append(f"{status} {e.name:<18} max={e.max_residual:.3e} mean={e.mean_residual:.3e} "
                     f"tol={e.tolerance:.1e}")
    lines.append("all checks passed" if rep.passed else "some checks FAILED")
    return "\n".join(lines) + "\n"


def run(cfg: JobConfig) -> RunResult:
    """Execute a job. Output files are written only when paths are configured."""
    if cfg.mode == "resonance-catalog":
        table = format_table(catalog(cfg.necksize, cfg.m_max or cfg.n_max, cfg.n_max))
        if cfg.out:
            Path(cfg.out).write_text(table)
        return RunResult(table)
    kind = _infer_kind(cfg) if cfg.mode in ("verify", "export") else cfg.mode
    surf = build_surface(cfg, kind)
    grid = _grid(cfg, surf)
    report = None if cfg.mode == "export" else run_checks(cfg, surf, grid)
    mesh = None
    text = f"{kind} r={cfg.necksize} cover={surf.cover} grid={grid.nx}x{grid.ny} " \
           f"x=[{grid.x_min:.6g}, {grid.x_max:.6g}]\n"
    if cfg.out:
        pos, normals, flip = sample_mesh(surf, grid, cfg.h2)
        mesh = export_mesh(pos, normals, cfg.out, flip)
        text += f"wrote {len(mesh.vertices)} vertices, {len(mesh.faces)} faces to {cfg.out}\n"
    if report is not None:
        text += _summary(report)
        if cfg.report:
            Path(cfg.report).write_text(report.to_json())
    return RunResult(text, report, mesh)


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="YAML or JSON job file; flags override it")
    common.add_argument("--necksize", type=float, help="r <= 1/2, r != 0")
    sel = common.add_mutually_exclusive_group()
    sel.add_argument("--mu", type=float, help="explicit real spectral parameter")
    sel.add_argument("--pair", help="admissible pair m,n (cover, lobes)")
    common.add_argument("--branch", choices=["+", "-"], help="resonance branch")
    common.add_argument("--coeffs", help="section coefficients a+bi,c+di")
    common.add_argument("--stage", action="append", help="bianchi stage m,n[,centre]; repeatable")
    common.add_argument("--cover", type=int, help="y-range covers [0, 2 pi m]")
    common.add_argument("--grid", help="samples nx,ny")
    common.add_argument("--xrange", help="x interval a,b")
    common.add_argument("--nmax", type=int, help="catalog: largest n")
    common.add_argument("--mmax", type=int, help="catalog: largest m (default nmax)")
    common.add_argument("--backend", choices=["auto", "closed", "ode"])
    common.add_argument("--out", help="mesh (OBJ) or table output path")
    common.add_argument("--report", help="JSON verification report path")
    common.add_argument("--tol", action="append", metavar="NAME=VALUE",
                        help="override a check tolerance; repeatable")
    parser = argparse.ArgumentParser(prog="bubbletons",
                                     description="Darboux transforms of Delaunay surfaces.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in SUBCOMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def config_from_args(args: argparse.Namespace) -> JobConfig:
    document = load_document(args.config) if args.config else {}
    over = {
        "mode": SUBCOMMANDS[args.command],
        "necksize": args.necksize,
        "mu": args.mu,
        "pair": args.pair,
        "branch": args.branch,
        "coeffs": args.coeffs,
        "stages": args.stage,
        "cover": args.cover,
        "grid": args.grid,
        "x_range": args.xrange,
        "n_max": args.nmax,
        "m_max": args.mmax,
        "backend": args.backend,
        "out": args.out,
        "report": args.report,
        "tolerances": args.tol,
    }
    if args.mu is not None:
        document.pop("pair", None)
    if args.pair is not None:
        document.pop("mu", None)
    return build_config(document, over)


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        cfg = config_from_args(args)
        result = run(cfg)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except BubbletonError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    sys.stdout.write(result.text)
    return result.exit_code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
