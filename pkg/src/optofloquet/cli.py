"""Command-line frontend.

Subcommands:

- ``run <scenario-file>``: run a scenario, writing one CSV per engine
  (and an SVG when the scenario asks for a plot).
- ``verify [--level fast|full]``: run the self-check suite; nonzero exit
  on any failed check.
- ``figure <fig1|fig2|fig3> [--out DIR]``: write the built-in reference
  figures as CSV + SVG.

The environment variable ``OPTOMECH_THREADS`` caps the sweep worker pool.
"""

from __future__ import annotations

import argparse
import sys

from .errors import ConfigError, OptoFloquetError
from .figures import run_figure
from .scenario import parse_scenario_file, run_scenario
from .verify import run_checks


def _cmd_run(args) -> int:
    scenario = parse_scenario_file(args.scenario)
    written = run_scenario(scenario, args.out)
    for path in written:
        print(f"wrote {path}")
    return 0


def _cmd_verify(args) -> int:
    results = run_checks(args.level)
    failed = 0
    for res in results:
        status = "PASS" if res.passed else "FAIL"
        print(f"{status} {res.name}: {res.detail}")
        failed += 0 if res.passed else 1
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return 0 if failed == 0 else 1


def _cmd_figure(args) -> int:
    written = run_figure(args.which, args.out)
    for path in written:
        print(f"wrote {path}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="optofloquet",
        description="Cooling analytics and brute-force simulation of a "
        "parametrically driven optomechanical cavity",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run a scenario file")
    p_run.add_argument("scenario", help="path to a scenario config file")
    p_run.add_argument("--out", default=".", help="output directory (default: cwd)")
    p_run.set_defaults(func=_cmd_run)

    p_verify = sub.add_parser("verify", help="run the self-check suite")
    p_verify.add_argument("--level", choices=("fast", "full"), default="fast")
    p_verify.set_defaults(func=_cmd_verify)

    p_fig = sub.add_parser("figure", help="write a built-in reference figure")
    p_fig.add_argument("which", choices=("fig1", "fig2", "fig3"))
    p_fig.add_argument("--out", default="figures", help="output directory")
    p_fig.set_defaults(func=_cmd_figure)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OptoFloquetError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
