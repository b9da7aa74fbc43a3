"""
Command-line driver for the simulation runs.

Subcommands: depth-sweep, sync-sweep, quench, transport. Each prints a CSV
to stdout (or --output). Exit status is 0 on success, 2 for an invalid
configuration and 1 when the simulation itself rejects the parameters.
"""

import argparse
import asyncio
import sys
from typing import Any, Callable, Dict, List, Optional, Tuple, Type

from pydantic import BaseModel, ValidationError

from config import config, resolve_config
from core.experiments import RunTable, depth_sweep, quench_timeseries, sync_sweep, transport_run
from logging_config import get_logger, setup_main_logging
from models import DepthSweepConfig, QuenchConfig, SyncSweepConfig, TransportConfig
from utils import use_csv

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_SIMULATION = 1
EXIT_INVALID = 2


def parse_grid(text: str) -> Dict[str, Any]:
    """'start:stop:count' -> grid mapping."""
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"grid must be start:stop:count, got {text!r}")
    try:
        return {"start": float(parts[0]), "stop": float(parts[1]), "count": int(parts[2])}
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"invalid grid {text!r}: {e}") from e


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="JSON file with run parameters (flags take precedence)")
    parser.add_argument("--output", "-o", help="CSV output path (default: stdout)")
    parser.add_argument("--grid", type=parse_grid, help="sweep or time grid as start:stop:count")
    parser.add_argument("--log-level", help="logging level (default: HARMONIC_LOG_LEVEL or INFO)")


def _add_coupled(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--omega1", type=float, help="natural frequency of oscillator 1")
    parser.add_argument("--omega2", type=float, help="natural frequency of oscillator 2")
    parser.add_argument("--g", type=float, help="coupling strength")
    parser.add_argument("--omega-c", dest="omega_c", type=float, help="cyclotron frequency")
    parser.add_argument("--omega-r", dest="omega_r", type=float, help="reference-state frequency")
    parser.add_argument("--theta", type=float, help="mixing-angle constant (default: decoupling angle)")
    parser.add_argument(
        "--sweep", choices=("g", "omega_c", "delta", "detuning"), help="parameter swept over --grid"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="harmonic-info",
        description="Information metrics of coupled oscillators and trapped-ion transport.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    depth = sub.add_parser("depth-sweep", help="circuit depth against one parameter")
    _add_common(depth)
    _add_coupled(depth)
    depth.add_argument(
        "--at-time", dest="at_time", type=float,
        help="use the state at this time after switching the coupling on instead of the steady state",
    )

    sync = sub.add_parser("sync-sweep", help="steady-state synchronization and mutual information")
    _add_common(sync)
    _add_coupled(sync)

    quench = sub.add_parser("quench", help="time series after a sudden quench")
    _add_common(quench)
    quench.add_argument("--omega-i1", dest="omega_i1", type=float, help="pre-quench frequency 1")
    quench.add_argument("--omega-i2", dest="omega_i2", type=float, help="pre-quench frequency 2")
    quench.add_argument("--omega-f1", dest="omega_f1", type=float, help="post-quench frequency 1")
    quench.add_argument("--omega-f2", dest="omega_f2", type=float, help="post-quench frequency 2")
    quench.add_argument("--g-f", dest="g_f", type=float, help="post-quench coupling")
    quench.add_argument("--omega-c", dest="omega_c", type=float, help="cyclotron frequency")
    quench.add_argument("--omega-r", dest="omega_r", type=float, help="reference-state frequency")
    quench.add_argument("--theta", type=float, help="post-quench mixing-angle constant")
    quench.add_argument("--step", type=float, help=f"Ermakov integration step (default {config.ermakov_step})")

    transport = sub.add_parser("transport", help="ion transport in a moving trap")
    _add_common(transport)
    transport.add_argument("--mass", dest="m", type=float, help="ion mass")
    transport.add_argument("--omega", type=float, help="trap frequency")
    transport.add_argument("--beta", type=float, help="inverse temperature of the TFD state")
    transport.add_argument("--d0", type=float, help="sudden jump length")
    transport.add_argument("--length", type=float, help="smooth transport length L")
    transport.add_argument("--duration", type=float, help="smooth transport time T")
    transport.add_argument(
        "--protocol", dest="protocols", action="append", choices=("sudden", "smooth", "tabulated"),
        help="protocol to simulate; repeat for several (default: sudden and smooth)",
    )
    transport.add_argument("--table", dest="table_path", help="two-column (t, d) file for the tabulated protocol")
    return parser


Driver = Callable[[Any], Any]

COMMANDS: Dict[str, Tuple[Type[BaseModel], Driver, Tuple[str, ...]]] = {
    "depth-sweep": (
        DepthSweepConfig, depth_sweep,
        ("omega1", "omega2", "g", "omega_c", "omega_r", "theta", "sweep", "at_time"),
    ),
    "sync-sweep": (
        SyncSweepConfig, sync_sweep,
        ("omega1", "omega2", "g", "omega_c", "omega_r", "theta", "sweep"),
    ),
    "quench": (
        QuenchConfig, quench_timeseries,
        ("omega_i1", "omega_i2", "omega_f1", "omega_f2", "g_f", "omega_c", "omega_r", "theta", "step"),
    ),
    "transport": (
        TransportConfig, transport_run,
        ("m", "omega", "beta", "d0", "length", "duration", "protocols", "table_path"),
    ),
}


def describe_validation_error(e: ValidationError) -> str:
    """First pydantic error as a one-line 'field: message'."""
    err = e.errors()[0]
    loc = ".".join(str(part) for part in err["loc"]) or e.title
    extra = f" (+{e.error_count() - 1} more)" if e.error_count() > 1 else ""
    return f"{loc}: {err['msg']}{extra}"


def build_config(command: str, args: argparse.Namespace) -> BaseModel:
    """Flags over config file over defaults."""
    model_cls, _, fields = COMMANDS[command]
    overrides = {name: getattr(args, name) for name in fields}
    overrides["output"] = args.output
    overrides["grid"] = args.grid
    return resolve_config(model_cls, args.config, overrides)


async def execute(command: str, cfg: BaseModel) -> RunTable:
    _, driver, _ = COMMANDS[command]
    table = await driver(cfg)
    text = table.to_csv()
    if cfg.output:
        await use_csv(cfg.output, "w", text)
        logger.info(f"Wrote {len(table.rows)} rows to {cfg.output}")
    else:
        sys.stdout.write(text)
        sys.stdout.flush()
    return table


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    setup_main_logging(level=args.log_level, log_dir=config.log_dir, force_reset=args.log_level is not None)
    prefix = f"harmonic-info {args.command}"

    try:
        cfg = build_config(args.command, args)
    except ValidationError as e:
        print(f"{prefix}: invalid configuration: {describe_validation_error(e)}", file=sys.stderr)
        return EXIT_INVALID
    except (ValueError, OSError) as e:
        print(f"{prefix}: invalid configuration: {e}", file=sys.stderr)
        return EXIT_INVALID

    try:
        asyncio.run(execute(args.command, cfg))
    except ValidationError as e:
        # models built from run inputs, such as a tabulated protocol
        print(f"{prefix}: invalid configuration: {describe_validation_error(e)}", file=sys.stderr)
        return EXIT_INVALID
    except (ValueError, OSError) as e:
        # SimulationError and sweep points the model rejects
        print(f"{prefix}: {e}", file=sys.stderr)
        return EXIT_SIMULATION
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
