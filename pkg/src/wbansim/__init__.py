"""Discrete-event simulator of MAC protocols in a star-topology body area network."""

from wbansim.config import ScenarioConfig, SweepSpec, parse_config
from wbansim.errors import ConfigError, SimulationError
from wbansim.metrics import RunSummary
from wbansim.simulation import run_scenario
from wbansim.sweep import run_sweep

__all__ = [
    "ConfigError",
    "RunSummary",
    "ScenarioConfig",
    "SimulationError",
    "SweepSpec",
    "parse_config",
    "run_scenario",
    "run_sweep",
]

__version__ = "0.1.0"
