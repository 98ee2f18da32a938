"""Command line front end.

Exit codes: 0 success, 2 invalid configuration or arguments, 3 numerical
failure (ill-conditioned instance or a request past a hard capacity limit).
"""

import argparse
import dataclasses
import json
import sys

from ..allocator import allocate
from ..bounds import loss_upper_bound
from ..errors import ConfigError, NumericalError
from .config import SimConfig, load_config
from .engine import run_sweep
from .scenario import build_hex_scenario, user_link_params

__all__ = ["main"]

_SWEEP_KINDS = {
    "sweep-distance": ("distance", "mean rates versus user distance"),
    "sweep-bits": ("bits", "mean rates at the cell edge versus total feedback bits"),
    "sweep-delay": ("delay", "mean rates at the cell edge versus backhaul delay"),
}


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", metavar="PATH",
                        help="JSON configuration file; built-in defaults when omitted")
    parser.add_argument("--out", metavar="PATH",
                        help="output file; stdout when omitted")
    parser.add_argument("--seed", type=int, help="override master_seed")
    parser.add_argument("--trials", type=int, help="override trials per sweep point")
    parser.add_argument("--threads", type=int, default=1,
                        help="worker processes for the Monte Carlo loop (default 1)")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="icinfb",
        description="Feedback bit allocation and rate simulation for "
                    "interference-nulling multicell downlinks.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_alloc = sub.add_parser(
        "allocate", help="closed-form feedback bit split for one user position")
    _add_common(p_alloc)
    p_alloc.add_argument(
        "--distance", type=float, metavar="METERS",
        help="user distance from the serving station (default: cell edge)")

    for name, (_, help_text) in _SWEEP_KINDS.items():
        _add_common(sub.add_parser(name, help=help_text))
    return parser


def _apply_overrides(config: SimConfig, args) -> SimConfig:
    overrides = {}
    if args.seed is not None:
        overrides["master_seed"] = args.seed
    if args.trials is not None:
        overrides["trials"] = args.trials
    return dataclasses.replace(config, **overrides) if overrides else config


def _run_allocate(config: SimConfig, args) -> None:
    scenario = build_hex_scenario(config)
    distance = config.cell_radius_m if args.distance is None else float(args.distance)
    link = user_link_params(scenario, distance)
    allocation = allocate(config.btot, link, config.regime)
    bound = max(0.0, loss_upper_bound(link, allocation))
    interferers = [allocation.interferer_bits[i] for i in range(link.n_cells - 1)]

    result = {
        "distance_m": distance,
        "btot": config.btot,
        "regime": config.regime,
        "desired_bits": allocation.desired_bits,
        "interferer_bits": interferers,
        "allocation": list(allocation.as_tuple()),
        "loss_upper_bound_bits": bound,
    }
    text = [
        f"user distance:        {distance:g} m",
        f"feedback budget:      {config.btot} bits",
        f"serving station:      {allocation.desired_bits} bits",
    ]
    text += [
        f"interfering station {i + 1}: {bits} bits"
        for i, bits in enumerate(interferers)
    ]
    text.append(f"rate loss bound:      {bound:.6g} bit/s/Hz")

    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            json.dump(result, fh, indent=2)
            fh.write("\n")
    print("\n".join(text))


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        config = load_config(args.config) if args.config else SimConfig()
        config = _apply_overrides(config, args)
        if args.command == "allocate":
            _run_allocate(config, args)
        else:
            kind = _SWEEP_KINDS[args.command][0]
            report = run_sweep(kind, config, trials=config.trials,
                               threads=args.threads)
            if args.out:
                report.to_csv(args.out)
            else:
                report.to_csv(sys.stdout)
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
