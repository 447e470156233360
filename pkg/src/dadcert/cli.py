"""Command-line front end.

    dadcert --command verify-shift-lemma --d 2 --D 1 --E 2 --r 1 --window 5
    dadcert --command certify --d 1 --N 2 --moduli 37
    dadcert --command render --d 2 --N 1 --moduli 25 --format svg --out cover.svg

Settings come from an optional YAML mapping (``--config``) overridden by
flags.  Exit status: 0 success, 1 a verification check failed, 2 usage or
configuration error.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Any, Optional, Sequence

import yaml

from .dad import certify
from .errors import DadcertError
from .greedy import GreedyParams, default_params
from .render import build_scene, render_svg, render_text
from .system import ExtensionSpec, OdometerSpec, separated_partition
from .tiling import DEFAULT_BUDGET, TilingParams, verify_shift_lemma

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2
COMMANDS = ("verify-shift-lemma", "certify", "render")

# key -> type; anything else in a config file is rejected
CONFIG_KEYS = {
    "command": str, "d": int, "N": int, "r": int, "L": int, "D": int, "E": int,
    "moduli": list, "fiber": int, "window": int, "seed": int, "out": str,
    "format": str, "residue": list, "samples": int, "budget": int, "mode": str,
}
DEFAULTS = {"seed": 0, "format": "text", "samples": 100, "budget": DEFAULT_BUDGET, "mode": "auto"}


class UsageError(Exception):
    pass


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dadcert", description=__doc__.split("\n")[0])
    p.add_argument("--config", type=Path, help="YAML file of settings")
    p.add_argument("--command", choices=COMMANDS)
    p.add_argument("--d", type=int, help="dimension")
    p.add_argument("--N", type=int, help="generator radius (F = cube of radius N)")
    p.add_argument("--r", type=int, help="tile separation")
    p.add_argument("--L", type=int, help="greedy separation radius")
    p.add_argument("--D", type=int, help="tile radius (verify-shift-lemma)")
    p.add_argument("--E", type=int, help="origin reach (verify-shift-lemma)")
    p.add_argument("--moduli", type=_int_list, help="odometer tower, e.g. 5,35")
    p.add_argument("--fiber", type=int, help="fiber alphabet size (extension system)")
    p.add_argument("--residue", type=_int_list, help="point residue at the partition level")
    p.add_argument("--window", type=int, help="window radius W")
    p.add_argument("--samples", type=int, help="sampled extension points")
    p.add_argument("--budget", type=int, help="enumeration candidate budget")
    p.add_argument("--mode", choices=("auto", "full", "core"), help="shift-lemma enumeration mode")
    p.add_argument("--seed", type=int)
    p.add_argument("--out", help="output path (default stdout)")
    p.add_argument("--format", choices=("text", "svg"))
    return p


def load_config(path: Optional[Path]) -> dict[str, Any]:
    if path is None:
        return {}
    try:
        data = yaml.safe_load(path.read_text(encoding="utf-8"))
    except (OSError, yaml.YAMLError) as exc:
        raise UsageError(f"cannot read config {path}: {exc}")
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise UsageError(f"config {path} must be a flat mapping")
    cfg = {}
    for key, value in data.items():
        if key == "dimension":
            key = "d"
        if key not in CONFIG_KEYS:
            raise UsageError(f"unknown config key {key!r}")
        want = CONFIG_KEYS[key]
        if want is list and isinstance(value, int):
            value = [value]
        if want is list:
            if not isinstance(value, list) or not all(isinstance(v, int) for v in value):
                raise UsageError(f"config key {key!r} must be a list of integers")
        elif not isinstance(value, want) or isinstance(value, bool):
            raise UsageError(f"config key {key!r} must be {want.__name__}")
        cfg[key] = value
    return cfg


def resolve(args: argparse.Namespace) -> dict[str, Any]:
    cfg = dict(DEFAULTS)
    cfg.update(load_config(args.config))
    for key in CONFIG_KEYS:
        value = getattr(args, key, None)
        if value is not None:
            cfg[key] = value
    if cfg.get("command") not in COMMANDS:
        raise UsageError(f"--command must be one of {', '.join(COMMANDS)}")
    if "d" not in cfg:
        raise UsageError("dimension --d is required")
    return cfg


def _system(cfg):
    if "moduli" not in cfg:
        raise UsageError("--moduli is required")
    base = OdometerSpec(cfg["d"], tuple(cfg["moduli"]))
    if cfg.get("fiber") is not None:
        return ExtensionSpec(base, cfg["fiber"])
    return base


def _greedy_params(cfg) -> GreedyParams:
    N, d = cfg.get("N"), cfg["d"]
    if "r" not in cfg and "L" not in cfg:
        if N is None:
            raise UsageError("give --N, or --r and --L")
        return default_params(N, d)
    r = cfg.get("r") or default_params(N, d).r
    return GreedyParams(r=r, L=cfg.get("L", 3 * r), d=d, N=N)


def run_verify_shift_lemma(cfg) -> tuple[int, str]:
    d = cfg["d"]
    if d > 2:
        raise UsageError(f"exhaustive shift-lemma check supports d <= 2, got d={d}")
    if "D" not in cfg or "E" not in cfg:
        raise UsageError("verify-shift-lemma needs --D and --E")
    params = TilingParams(cfg.get("r", 1), cfg["D"], cfg["E"])
    W = cfg.get("window", params.D + 2 * params.E)
    report = verify_shift_lemma(params, W, d, budget=cfg["budget"], mode=cfg["mode"])
    return (EXIT_OK if report.all_covered else EXIT_FAILED), report.to_text()


def run_certify(cfg) -> tuple[int, str]:
    spec = _system(cfg)
    if cfg.get("N") is None:
        raise UsageError("certify needs --N")
    params = _greedy_params(cfg)
    cert = certify(spec, cfg["N"], params, samples=cfg["samples"], seed=cfg["seed"])
    return (EXIT_OK if cert.passed else EXIT_FAILED), cert.to_text()


def run_render(cfg) -> tuple[int, str]:
    d = cfg["d"]
    if d not in (1, 2):
        raise UsageError(f"render supports d = 1 or 2, got d={d}")
    spec = _system(cfg)
    params = _greedy_params(cfg)
    partition = separated_partition(spec, params.L)
    residue = cfg.get("residue") or [0] * d
    if len(residue) != d:
        raise UsageError(f"--residue needs {d} integers")
    x = spec.base.point(residue, partition.level)
    scene = build_scene(spec, x, params, cfg.get("window", partition.modulus))
    text = render_svg(scene) if cfg["format"] == "svg" else render_text(scene)
    return EXIT_OK, text


RUNNERS = {
    "verify-shift-lemma": run_verify_shift_lemma,
    "certify": run_certify,
    "render": run_render,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = resolve(args)
        status, text = RUNNERS[cfg["command"]](cfg)
    except (UsageError, DadcertError) as exc:
        print(f"dadcert: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    out = cfg.get("out")
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    if status == EXIT_FAILED:
        print("dadcert: verification FAILED", file=sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())
