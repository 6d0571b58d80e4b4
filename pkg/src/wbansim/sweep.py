"""Parameter sweeps over protocol x node count x seed."""

from concurrent.futures import ProcessPoolExecutor

from wbansim.errors import SimulationError
from wbansim.simulation import run_scenario


def _summary(config):
    return run_scenario(config).summary


class SweepError(SimulationError):
    """A run inside a sweep failed; ``partial`` holds the rows finished before it."""

    def __init__(self, message, partial):
        super().__init__(message)
        self.partial = partial


def run_sweep(spec, jobs=1):
    """One RunSummary per (protocol, nodes, seed), always in that order."""
    configs = list(spec.configs())
    rows = []
    if jobs <= 1:
        for config in configs:
            try:
                rows.append(_summary(config))
            except SimulationError as exc:
                raise SweepError(f"{config.protocol}/{config.nodes}/{config.seed}: {exc}", rows) from exc
        return rows
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(_summary, config) for config in configs]
        for config, future in zip(configs, futures):
            try:
                rows.append(future.result())
            except SimulationError as exc:
                for f in futures:
                    f.cancel()
                raise SweepError(f"{config.protocol}/{config.nodes}/{config.seed}: {exc}", rows) from exc
    return rows
