"""
Command-line front end: ``fountain-sim <subcommand> --config <path> --seed <n> --out <folder> [--threads N]``.

Exit codes: 0 ok, 2 configuration error, 3 physics error, 4 lock lost.
"""
import argparse
import os
import sys

from fountainsim.config import RunConfig
from fountainsim.core import Experiment
from fountainsim.exceptions import ConfigError, LockLost, PhysicsError

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_PHYSICS = 3
EXIT_LOCK_LOST = 4

# subcommand -> bundled configuration used when --config is not given
SUBCOMMANDS = {
    "fringe": "fig4",
    "leakage": "fig7",
    "pump-scan": "pump_scan",
    "angle-scan": "fig6",
    "servo": "servo",
    "strengths": "strengths",
}


def build_parser():
    parser = argparse.ArgumentParser(prog="fountain-sim",
                                     description="Simulation of a desk-scale caesium fountain clock.")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command, default_config in SUBCOMMANDS.items():
        sub = subparsers.add_parser(command, help=f"run a {command} experiment (default config: {default_config})")
        sub.add_argument("--config", default=None,
                         help=f"run configuration JSON; the bundled {default_config}.json when omitted")
        sub.add_argument("--seed", type=int, default=None, help="root seed, overrides the configuration")
        sub.add_argument("--out", default=None, help="output folder (default: ./<subcommand>)")
        sub.add_argument("--threads", type=int, default=1, help="worker threads; outputs do not depend on it")
    return parser


def load_run_config(command, config_path=None):
    """
    Configuration for a subcommand, checked against the experiment it runs.

    Raises
    ------
    ConfigError
        If the file cannot be read or holds another experiment
    """
    if config_path is None:
        run_config = RunConfig.get_default_run_config(SUBCOMMANDS[command])
    else:
        run_config = RunConfig.from_json(config_path)
    kind = command.replace("-", "_")
    if run_config.experiment != kind:
        raise ConfigError(f"Subcommand {command!r} cannot run a {run_config.experiment!r} configuration")
    return run_config


def run(command, config_path=None, seed=None, out=None, threads=1):
    """
    Runs a subcommand.

    Returns
    -------
    list
        paths of the written result files
    """
    if seed is not None and seed < 0:
        raise ConfigError(f"seed must be >= 0, got {seed}")
    run_config = load_run_config(command, config_path)
    folder = out if out is not None else os.path.join(os.curdir, command)
    experiment = Experiment.from_config(run_config, folder=folder, seed=seed, threads=threads)
    return experiment.run()


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        files = run(args.command, args.config, args.seed, args.out, args.threads)
    except LockLost as e:
        print(f"fountain-sim: {e} (cycle {e.cycle})", file=sys.stderr)
        return EXIT_LOCK_LOST
    except PhysicsError as e:
        print(f"fountain-sim: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_PHYSICS
    except (ConfigError, OSError) as e:
        print(f"fountain-sim: configuration error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    for path in files:
        print(path)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
