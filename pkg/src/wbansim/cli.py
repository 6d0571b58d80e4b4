"""Command line entry point.

    wbansim run --config scenario.cfg --out summary.csv --packets packets.csv
    wbansim sweep --config scenario.cfg --nodes 4,8,12,16 --seeds 1..5 --protocols all --out sweep.csv

Exit codes: 0 success, 1 invalid configuration, 2 runtime invariant violation.
"""

import argparse
import logging
import sys

from wbansim.config import (
    SweepSpec,
    parse_assignment,
    parse_config,
    parse_int_list,
    parse_protocols,
    parse_seeds,
)
from wbansim.errors import ConfigError, SimulationError
from wbansim.output import summaries_to_csv, write_csv, write_packets_csv
from wbansim.simulation import run_scenario
from wbansim.sweep import SweepError, run_sweep

log = logging.getLogger("wbansim")

EXIT_OK, EXIT_CONFIG, EXIT_RUNTIME = 0, 1, 2


def build_parser():
    parser = argparse.ArgumentParser(prog="wbansim", description=__doc__.split("\n")[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="key=value scenario file (defaults if omitted)")
        p.add_argument("--set", action="append", default=[], metavar="KEY=VALUE",
                       help="override one config key; repeatable")
        p.add_argument("--out", help="summary CSV path (stdout if omitted)")

    run = sub.add_parser("run", help="run one scenario")
    common(run)
    run.add_argument("--packets", help="per-packet CSV path")

    sweep = sub.add_parser("sweep", help="run protocol x nodes x seed grid")
    common(sweep)
    sweep.add_argument("--nodes", default="4,8,12,16", help="comma-separated node counts")
    sweep.add_argument("--seeds", default="1..5", help="range A..B or comma list")
    sweep.add_argument("--protocols", default="all", help="comma list or 'all'")
    sweep.add_argument("--jobs", type=int, default=1, help="worker processes")
    return parser


def load_config(args):
    text = ""
    if args.config:
        try:
            with open(args.config) as fh:
                text = fh.read()
        except OSError as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc.strerror}") from None
    config = parse_config(text)
    overrides = dict(parse_assignment(item) for item in args.set)
    return config.with_overrides(**overrides) if overrides else config


def _emit(rows, out):
    if out:
        write_csv(rows, out)
    else:
        sys.stdout.write(summaries_to_csv(rows))


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        config = load_config(args)
        if args.command == "run":
            result = run_scenario(config)
            _emit([result.summary], args.out)
            if args.packets:
                write_packets_csv(result.records, args.packets)
        else:
            spec = SweepSpec(
                base=config,
                node_counts=tuple(parse_int_list(args.nodes)),
                seeds=tuple(parse_seeds(args.seeds)),
                protocols=tuple(parse_protocols(args.protocols)),
            )
            for n in spec.node_counts:
                config.with_overrides(nodes=n)  # validate before running anything
            log.info("sweep: %d runs", len(spec.protocols) * len(spec.node_counts) * len(spec.seeds))
            try:
                rows = run_sweep(spec, jobs=args.jobs)
            except SweepError as exc:
                if exc.partial:
                    _emit(exc.partial, args.out)
                    log.error("sweep aborted; %d completed rows written (partial)", len(exc.partial))
                raise
            _emit(rows, args.out)
    except ConfigError as exc:
        print(f"wbansim: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except SimulationError as exc:
        print(f"wbansim: invariant violated: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    except OSError as exc:
        print(f"wbansim: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
