"""Command-line runner for the built-in models.

Exit codes: 0 success, 1 usage or configuration error, 2 watchdog abort
(exact mode made no progress), 3 internal error.

Samples go to ``--out`` (CSV by default: one column per model variable in
registry order, then ``chain_alpha`` and ``sweep``). A diagnostics sidecar is
written next to it as ``<stem>.diagnostics.json`` with the keys

``status``
    ``"ok"`` or ``"watchdog"``.
``config``
    Fully resolved run configuration, enough to repeat the run.
``ladder``
    Chain temperatures, coldest first.
``proposals``
    Per-chain MH proposal settings.
``sweeps``
    Number of sweeps run.
``mh_acceptance``
    Per-chain MH acceptance rate.
``swaps``
    One entry per adjacent pair: chain indices, temperatures, attempts,
    accepted count and rate.
``collected``
    Samples collected from each chain.
``wall_time_s``
    Sampling wall time in seconds.
``version``
    Package version.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import json
import logging
import math
import sys
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from . import __version__
from .models import REGISTRY, ModelSpec, get_model
from .replica import MODES, ConfigError, ExchangeResult, WatchdogError, predicate_exchange
from .soft import TNORMS

EXIT_OK, EXIT_USAGE, EXIT_WATCHDOG, EXIT_INTERNAL = 0, 1, 2, 3
FORMATS = ("csv", "json")
META_COLUMNS = ("chain_alpha", "sweep")

log = logging.getLogger("predex")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    model: str
    samples: int = 1000
    chains: Optional[int] = None
    alpha_min: Optional[float] = None
    alpha_max: Optional[float] = None
    swap_every: Optional[int] = None
    mode: Optional[str] = None
    seed: int = 0
    burn_in: float = 0.2
    tnorm: str = "godel"
    out: Optional[str] = None
    format: str = "csv"
    watchdog: int = 1000

    def resolve(self) -> "RunConfig":
        """Fill unset sampler settings from the model's recommendations and validate."""
        if self.model not in REGISTRY:
            raise UsageError(f"unknown model {self.model!r}; available: {', '.join(REGISTRY)}")
        spec = get_model(self.model)
        cfg = dataclasses.replace(self)
        for name, default in (
            ("chains", spec.chains),
            ("alpha_min", spec.alpha_lo),
            ("alpha_max", spec.alpha_hi),
            ("swap_every", spec.swap_every),
            ("mode", spec.mode),
        ):
            if getattr(cfg, name) is None:
                setattr(cfg, name, default)
        if cfg.out is None:
            cfg.out = f"{cfg.model}_samples.{cfg.format}"
        cfg.validate()
        return cfg

    def validate(self) -> None:
        def need(ok: bool, msg: str) -> None:
            if not ok:
                raise UsageError(msg)

        need(_is_int(self.samples) and self.samples >= 1, "--samples must be a positive integer")
        need(_is_int(self.chains) and self.chains >= 1, "--chains must be a positive integer")
        need(_is_int(self.swap_every) and self.swap_every >= 1, "--swap-every must be a positive integer")
        need(_is_int(self.seed) and self.seed >= 0, "--seed must be a nonnegative integer")
        need(_is_int(self.watchdog) and self.watchdog >= 1, "--watchdog must be a positive integer")
        need(
            0.0 < self.alpha_min <= self.alpha_max < math.inf,
            "need 0 < --alpha-min <= --alpha-max < inf",
        )
        need(0.0 <= self.burn_in < 1.0, "--burn-in must lie in [0, 1)")
        need(self.mode in MODES, f"--mode must be one of {MODES}")
        need(self.tnorm in TNORMS, f"--tnorm must be one of {TNORMS}")
        need(self.format in FORMATS, f"--format must be one of {FORMATS}")


def _is_int(v) -> bool:
    return isinstance(v, int) and not isinstance(v, bool)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(
        prog="predex",
        description="Condition a built-in model on its predicate by predicate exchange.",
    )
    # defaults stay None so config-file values are only overridden by explicit flags
    p.add_argument("--model", help=f"model name: {', '.join(REGISTRY)}")
    p.add_argument("--samples", type=int, help="number of samples to collect (default 1000)")
    p.add_argument("--chains", type=int, help="number of tempered chains")
    p.add_argument("--alpha-min", type=float, help="coldest temperature")
    p.add_argument("--alpha-max", type=float, help="hottest temperature")
    p.add_argument("--swap-every", type=int, help="MH steps per chain between swap sweeps")
    p.add_argument("--mode", choices=MODES)
    p.add_argument("--seed", type=int, help="master seed (default 0)")
    p.add_argument("--burn-in", type=float, help="fraction of steps discarded in approximate mode (default 0.2)")
    p.add_argument("--tnorm", choices=TNORMS, help="soft conjunction (default godel)")
    p.add_argument("--out", help="sample file path (default <model>_samples.<format>)")
    p.add_argument("--format", choices=FORMATS, help="sample file format (default csv)")
    p.add_argument("--watchdog", type=int, help="sweeps without progress before exact mode aborts (default 1000)")
    p.add_argument("--config", help="JSON file setting any of the above; flags take precedence")
    p.add_argument("--list-models", action="store_true", help="list models and exit")
    p.add_argument("-v", "--verbose", action="store_true")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    return p


def load_config(args: argparse.Namespace) -> RunConfig:
    fields = {f.name for f in dataclasses.fields(RunConfig)}
    values: dict = {}
    if args.config:
        try:
            with open(args.config) as fh:
                raw = json.load(fh)
        except (OSError, json.JSONDecodeError) as e:
            raise UsageError(f"cannot read config file {args.config}: {e}") from None
        if not isinstance(raw, dict):
            raise UsageError("config file must hold a JSON object")
        for key, value in raw.items():
            name = key.replace("-", "_")
            if name not in fields:
                raise UsageError(f"unknown config key {key!r}")
            values[name] = value
    for name in fields:
        value = getattr(args, name, None)
        if value is not None:
            values[name] = value
    if "model" not in values:
        raise UsageError("--model is required")
    try:
        return RunConfig(**values)
    except TypeError as e:
        raise UsageError(str(e)) from None


def sample_rows(spec: ModelSpec, result: ExchangeResult) -> tuple[list, list]:
    header = list(spec.variables) + list(META_COLUMNS)
    rows = [[s.trace.get(v, "") for v in spec.variables] + [s.alpha, s.sweep] for s in result.samples]
    return header, rows


def write_samples(path: Path, fmt: str, header: list, rows: list) -> None:
    if fmt == "csv":
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\r\n")
            w.writerow(header)
            w.writerows(rows)
    else:
        with open(path, "w") as fh:
            json.dump([dict(zip(header, r)) for r in rows], fh)
            fh.write("\n")


def diagnostics_path(out: Path) -> Path:
    return out.with_name(out.stem + ".diagnostics.json")


def diagnostics(cfg: RunConfig, spec: ModelSpec, result: ExchangeResult, wall: float, status: str) -> dict:
    lad = result.ladder
    return {
        "status": status,
        "config": dataclasses.asdict(cfg),
        "ladder": lad,
        "proposals": [dataclasses.asdict(c) for c in spec.configs(lad)],
        "sweeps": result.sweeps,
        "mh_acceptance": result.mh_rates,
        "swaps": [
            {
                "chains": [i, i + 1],
                "alphas": [lad[i], lad[i + 1]],
                "attempts": result.swap_attempts[i],
                "accepted": result.swap_accepts[i],
                "rate": result.swap_rates[i],
            }
            for i in range(len(lad) - 1)
        ],
        "collected": result.collected,
        "wall_time_s": wall,
        "version": __version__,
    }


def summarize(header: list, rows: list, variables) -> str:
    lines = [f"{'variable':>10} {'mean':>10} {'std':>10} {'q05':>10} {'q25':>10} {'q50':>10} {'q75':>10} {'q95':>10}"]
    for k, v in enumerate(variables):
        col = np.array([r[k] for r in rows if r[k] != ""], dtype=float)
        if col.size == 0:
            continue
        qs = np.quantile(col, [0.05, 0.25, 0.5, 0.75, 0.95])
        lines.append(f"{v:>10} {col.mean():10.4f} {col.std():10.4f} " + " ".join(f"{q:10.4f}" for q in qs))
    return "\n".join(lines)


def run(cfg: RunConfig) -> int:
    cfg = cfg.resolve()
    spec = get_model(cfg.model)
    try:
        ladder = spec.ladder(cfg.alpha_min, cfg.alpha_max, cfg.chains)
    except ConfigError as e:
        raise UsageError(str(e)) from None
    out = Path(cfg.out)
    t0 = time.perf_counter()
    try:
        result = predicate_exchange(
            spec.program,
            ladder,
            cfg.samples,
            q=cfg.swap_every,
            cfg=spec.configs(ladder),
            seed=cfg.seed,
            mode=cfg.mode,
            burn_in=cfg.burn_in,
            tnorm=cfg.tnorm,
            watchdog_sweeps=cfg.watchdog,
        )
    except WatchdogError as e:
        wall = time.perf_counter() - t0
        with open(diagnostics_path(out), "w") as fh:
            json.dump(diagnostics(cfg, spec, e.result, wall, "watchdog"), fh, indent=2)
        print(f"predex: {e}", file=sys.stderr)
        print("hint: rerun with --mode approximate", file=sys.stderr)
        return EXIT_WATCHDOG
    wall = time.perf_counter() - t0

    header, rows = sample_rows(spec, result)
    write_samples(out, cfg.format, header, rows)
    with open(diagnostics_path(out), "w") as fh:
        json.dump(diagnostics(cfg, spec, result, wall, "ok"), fh, indent=2)
    print(f"{len(rows)} samples from {spec.name} ({cfg.mode} mode, {result.sweeps} sweeps, {wall:.1f}s) -> {out}")
    print(summarize(header, rows, spec.variables))
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:  # --help, --version and argument errors
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    if args.list_models:
        for spec in REGISTRY.values():
            print(f"{spec.name:22} {spec.mode:12} {spec.description}")
        return EXIT_OK
    try:
        return run(load_config(args))
    except UsageError as e:
        print(f"predex: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as e:  # noqa: BLE001 - last-resort mapping to the documented exit code
        log.exception("internal error")
        print(f"predex: internal error: {e}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
