# cli.py
from __future__ import annotations
import argparse
import asyncio
import json
import logging
import math
import sys
from dataclasses import asdict
from typing import Any, Dict, List, Optional

from billiardlab.geometry.base import BilliardLabError, DegenerateInput, InvalidEllipse
from billiardlab.geometry.primitives import gradient, point_at
from billiardlab.models import BilliardState, ConicClass, Ellipse, Point2
from billiardlab.services import dynamics
from billiardlab.services.dynamics import InvalidN, InvalidWinding
from billiardlab.services.export import build_payload, make_writer, trajectory_payload
from billiardlab.services.invariants import run_sweep
from billiardlab.services.loci import classify_sample, sweep_locus
from billiardlab.utils.config import (
    FORMATS, ConfigError, RunConfig, build_run_config, load_sweep_config, merge_config,
)
from billiardlab.utils.selectors import resolve_selector

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3         # NoConvergence and any other failed computation

logger = logging.getLogger("billiardlab.cli")

# flags whose absence lets a --config file supply the value
_CONFIGURABLE = ("a", "b", "n", "samples", "t0", "winding", "allow_self_intersecting", "angle", "bounces")


def emit(payload: Dict[str, Any], cfg: RunConfig) -> None:
    """Render to stdout, or write to --out."""
    writer = make_writer(cfg.format)
    if cfg.out:
        path = writer.write(payload, cfg.out)
        print(json.dumps({"written": path, "format": cfg.format}, indent=2))
        return
    if writer.binary:
        raise ConfigError(f"Format {cfg.format} needs --out")
    sys.stdout.write(writer.render(payload))


def _config_dict(cfg: RunConfig) -> Dict[str, Any]:
    d = asdict(cfg)
    d["centers"] = list(cfg.centers)
    d["a_over_b"] = list(cfg.a_over_b)
    return d


async def cmd_orbit(cfg: RunConfig) -> int:
    e = Ellipse(cfg.a, cfg.b)
    c = dynamics.find_caustic(e, cfg.n, cfg.winding, cfg.allow_self_intersecting)
    o = dynamics.orbit_at(e, c, cfg.t0, cfg.n, cfg.winding)
    gl = dynamics.gamma_and_perimeter(e, o)
    payload = build_payload(_config_dict(cfg), e, caustic=c, gamma_l=gl, orbits=[o])
    payload["closure_defect"] = dynamics.next_tangent_vertex(e, c, o.vertices[-1]).dist(o.vertices[0])
    emit(payload, cfg)
    return EXIT_OK


async def cmd_locus(cfg: RunConfig) -> int:
    if cfg.n != 3:
        raise ConfigError(f"Loci are tracked on 3-periodic families, got --n {cfg.n}")
    selectors = [resolve_selector(s) for s in (cfg.centers or ("X1",))]
    e = Ellipse(cfg.a, cfg.b)
    fam = dynamics.family(e, 3, cfg.samples)
    samples = [sweep_locus(fam, sel) for sel in selectors]
    classes: Dict[str, ConicClass] = {}
    for s in samples:
        try:
            classes[s.selector] = classify_sample(s, e)
        except DegenerateInput as ex:
            logger.warning(f"{s.selector}: not classified ({ex})")
    payload = build_payload(
        _config_dict(cfg), e, caustic=fam.caustic, gamma_l=fam.gamma_l,
        orbits=[fam.samples[0]], loci=samples, classes=classes,
    )
    emit(payload, cfg)
    return EXIT_OK


async def cmd_invariants(cfg: RunConfig) -> int:
    sweep = cfg.sweep()
    reports = await run_sweep(sweep)
    e = Ellipse(sweep.a_over_b[0] * sweep.b, sweep.b)
    payload = build_payload(_config_dict(cfg), e, checks=reports)
    payload["failed"] = [f"{r.name}@{r.aspect_ratio:.6g}" for r in reports if r.asserted and not r.passed]
    emit(payload, cfg)
    return EXIT_CHECK_FAILED if payload["failed"] else EXIT_OK


async def cmd_trajectory(cfg: RunConfig) -> int:
    e = Ellipse(cfg.a, cfg.b)
    p = point_at(e, cfg.t0)
    v = Point2(math.cos(cfg.angle), math.sin(cfg.angle))
    if v.dot(gradient(e, p)) >= 0.0:
        raise ConfigError(f"--angle {cfg.angle} does not point into the table from t0={cfg.t0}")
    states = dynamics.trajectory(e, BilliardState(p, v), cfg.bounces)
    lam = dynamics.caustic_parameter(e, p, v)
    payload = trajectory_payload(_config_dict(cfg), e, states, lam, dynamics.caustic_kind(e, p, v))
    emit(payload, cfg)
    return EXIT_OK


COMMANDS = {
    "orbit": cmd_orbit,
    "locus": cmd_locus,
    "invariants": cmd_invariants,
    "trajectory": cmd_trajectory,
}


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--a", type=float, help="Semi-major axis (default 1.5)")
    p.add_argument("--b", type=float, help="Semi-minor axis (default 1.0)")
    p.add_argument("--n", type=int, help="Orbit period N (default 3)")
    p.add_argument("--samples", type=int, help="Family size M (default 256)")
    p.add_argument("--t0", type=float, help="Starting eccentric angle (default 0)")
    p.add_argument("--format", choices=FORMATS, default="json")
    p.add_argument("--out", help="Output path (stdout if omitted)")
    p.add_argument("--allow-self-intersecting", action="store_true", default=None,
                   help="Experimental: permit winding > 1")
    p.add_argument("--winding", type=int, help="Winding number (default 1)")
    p.add_argument("--config", help="YAML sweep config; explicit flags win")
    p.add_argument("--log-level", default="WARNING", choices=("DEBUG", "INFO", "WARNING", "ERROR"))


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="billiardlab", description="Elliptic billiard numerical lab")
    sub = p.add_subparsers(dest="cmd", required=True)

    p_orbit = sub.add_parser("orbit", help="One N-periodic orbit with its caustic, gamma and perimeter")
    _common(p_orbit)

    p_locus = sub.add_parser("locus", help="Sweep triangle-center loci over a 3-periodic family")
    _common(p_locus)
    p_locus.add_argument("--center", action="append", dest="centers",
                         help="X1..X100 or a derived-vertex selector; repeatable")

    p_inv = sub.add_parser("invariants", help="Run the invariant checks for a family")
    _common(p_inv)

    p_traj = sub.add_parser("trajectory", help="Open trajectory from a boundary point")
    _common(p_traj)
    p_traj.add_argument("--angle", type=float, help="Launch direction in radians (default 2.0)")
    p_traj.add_argument("--bounces", type=int, help="Number of bounces (default 32)")
    return p


def run_config_from_args(args: argparse.Namespace) -> RunConfig:
    flags = {k: getattr(args, k) for k in _CONFIGURABLE if getattr(args, k, None) is not None}
    file_values = load_sweep_config(args.config) if args.config else {}
    return build_run_config(
        args.cmd, merge_config(file_values, flags),
        format=args.format, out=args.out, centers=tuple(getattr(args, "centers", None) or ()),
    )


async def run(args: argparse.Namespace) -> int:
    try:
        cfg = run_config_from_args(args)
        return await COMMANDS[args.cmd](cfg)
    except (ConfigError, InvalidEllipse, InvalidN, InvalidWinding) as e:
        print(json.dumps({"error": str(e), "kind": type(e).__name__, "command": args.cmd}, indent=2))
        return EXIT_CONFIG
    except BilliardLabError as e:
        print(json.dumps({"error": str(e), "kind": type(e).__name__, "command": args.cmd}, indent=2))
        return EXIT_NUMERICAL


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=getattr(logging, args.log_level), stream=sys.stderr,
                        format="%(asctime)s %(levelname)s %(name)s: %(message)s")
    return asyncio.run(run(args))


if __name__ == "__main__":
    sys.exit(main())
