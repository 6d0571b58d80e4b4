class ConfigError(ValueError):
    """Invalid scenario configuration (CLI exit code 1)."""


class SimulationError(RuntimeError):
    """A runtime invariant was violated during a run (CLI exit code 2)."""


class SchedulingError(SimulationError):
    """An event was scheduled before the current simulation clock."""
