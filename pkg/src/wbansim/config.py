"""Scenario configuration: flat ``key=value`` text, one key per line, ``#`` comments."""

from dataclasses import dataclass, field, fields, replace

from wbansim.errors import ConfigError
from wbansim.kernel import MASK64, NS_PER_MS, NS_PER_S

PROTOCOLS = ("static-tdma", "dynamic-tdma", "fdma", "csma-ca", "ds-cdma")
PHASE_MODES = ("random", "zero")
AUTO = "auto"


@dataclass(frozen=True)
class ScenarioConfig:
    protocol: str = "static-tdma"
    nodes: int = 8
    packet_bytes: int = 54
    arrival_interval_ms: float = 5.0
    bit_rate_bps: int = 250_000
    distance_m: float = 2.0
    duration_s: float = 30.0
    seed: int = 1
    phase_mode: str = "random"
    # dynamic TDMA
    max_slots_per_node: int = 4
    idle_period_ms: float | None = None  # None: one slot
    # FDMA
    guard_fraction: float = 0.0
    # CSMA/CA
    mac_min_be: int = 3
    mac_max_be: int = 5
    backoff_unit_ms: float = 0.32
    max_retries: int = 4
    rts_bits: int = 48
    cts_bits: int = 48
    cts_timeout_ms: float | None = None  # None: rts + cts + 2 x propagation + 1 backoff unit
    # DS-CDMA
    code_setup_delay_ms: float = 0.0

    def __post_init__(self):
        self.validate()

    def validate(self):
        if self.protocol not in PROTOCOLS:
            raise ConfigError(f"protocol: unknown protocol {self.protocol!r}")
        if self.phase_mode not in PHASE_MODES:
            raise ConfigError(f"phase_mode: must be one of {', '.join(PHASE_MODES)}")
        positive = {
            "nodes": self.nodes,
            "packet_bytes": self.packet_bytes,
            "arrival_interval_ms": self.arrival_interval_ms,
            "bit_rate_bps": self.bit_rate_bps,
            "duration_s": self.duration_s,
            "max_slots_per_node": self.max_slots_per_node,
            "backoff_unit_ms": self.backoff_unit_ms,
            "rts_bits": self.rts_bits,
            "cts_bits": self.cts_bits,
        }
        for key, value in positive.items():
            if not value > 0:
                raise ConfigError(f"{key}: must be positive, got {value}")
        for key in ("idle_period_ms", "cts_timeout_ms"):
            value = getattr(self, key)
            if value is not None and not value > 0:
                raise ConfigError(f"{key}: must be positive, got {value}")
        if self.distance_m < 0:
            raise ConfigError(f"distance_m: must be non-negative, got {self.distance_m}")
        if not 0 <= self.guard_fraction < 1:
            raise ConfigError(f"guard_fraction: must lie in [0, 1), got {self.guard_fraction}")
        if not 0 <= self.mac_min_be <= self.mac_max_be:
            raise ConfigError("mac_min_be/mac_max_be: need 0 <= mac_min_be <= mac_max_be")
        if self.mac_max_be > 30:
            raise ConfigError("mac_max_be: at most 30")
        if self.max_retries < 0:
            raise ConfigError(f"max_retries: must be non-negative, got {self.max_retries}")
        if self.code_setup_delay_ms < 0:
            raise ConfigError("code_setup_delay_ms: must be non-negative")
        if not 0 <= self.seed <= MASK64:
            raise ConfigError("seed: must be a 64-bit unsigned integer")

    def with_overrides(self, **changes):
        try:
            return replace(self, **changes)
        except TypeError as exc:
            raise ConfigError(str(exc)) from None

    # derived quantities, integer nanoseconds unless noted
    @property
    def packet_bits(self):
        return self.packet_bytes * 8

    @property
    def interval_ns(self):
        return round(self.arrival_interval_ms * NS_PER_MS)

    @property
    def duration_ns(self):
        return round(self.duration_s * NS_PER_S)

    @property
    def backoff_unit_ns(self):
        return round(self.backoff_unit_ms * NS_PER_MS)

    @property
    def code_setup_ns(self):
        return round(self.code_setup_delay_ms * NS_PER_MS)


_FIELDS = {f.name: f for f in fields(ScenarioConfig)}
_OPTIONAL = {"idle_period_ms", "cts_timeout_ms"}


def _convert(key, raw):
    kind = _FIELDS[key].type
    if key in _OPTIONAL:
        if raw == AUTO:
            return None
        kind = float
    try:
        if kind is int:
            return int(raw, 0) if raw.lower().startswith("0x") else int(raw)
        if kind is float:
            return float(raw)
    except ValueError:
        raise ConfigError(f"{key}: malformed value {raw!r}") from None
    return raw


def parse_assignment(text, line=None):
    """Parse one ``key=value`` into a (key, value) pair."""
    where = f" (line {line})" if line is not None else ""
    if "=" not in text:
        raise ConfigError(f"expected key=value{where}, got {text!r}")
    key, raw = (part.strip() for part in text.split("=", 1))
    if key not in _FIELDS:
        raise ConfigError(f"{key}: unknown key{where}")
    try:
        return key, _convert(key, raw)
    except ConfigError as exc:
        raise ConfigError(f"{exc}{where}") from None


def parse_config(text, base=None):
    """Parse config text; missing keys keep the defaults (or those of `base`)."""
    values = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, value = parse_assignment(line, line=lineno)
        if key in values:
            raise ConfigError(f"{key}: duplicate key (line {lineno})")
        values[key] = value
    base = base or ScenarioConfig()
    return base.with_overrides(**values)


def format_config(config):
    lines = []
    for name in _FIELDS:
        value = getattr(config, name)
        if value is None:
            value = AUTO
        elif isinstance(value, float):
            value = repr(value)
        lines.append(f"{name}={value}")
    return "\n".join(lines) + "\n"


def parse_seeds(text):
    """``1..5`` or ``1,2,7``."""
    text = text.strip()
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return list(range(int(lo), int(hi) + 1))
        return [int(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise ConfigError(f"seeds: malformed list {text!r}") from None


def parse_int_list(text, key="nodes"):
    try:
        return [int(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise ConfigError(f"{key}: malformed list {text!r}") from None


def parse_protocols(text):
    if text.strip() == "all":
        return list(PROTOCOLS)
    names = [s.strip() for s in text.split(",") if s.strip()]
    for name in names:
        if name not in PROTOCOLS:
            raise ConfigError(f"protocols: unknown protocol {name!r}")
    return names


@dataclass(frozen=True)
class SweepSpec:
    base: ScenarioConfig = field(default_factory=ScenarioConfig)
    node_counts: tuple = (4, 8, 12, 16)
    seeds: tuple = (1, 2, 3, 4, 5)
    protocols: tuple = PROTOCOLS

    def configs(self):
        """Cartesian product in (protocol, nodes, seed) order."""
        for protocol in self.protocols:
            for nodes in self.node_counts:
                for seed in self.seeds:
                    yield self.base.with_overrides(protocol=protocol, nodes=nodes, seed=seed)
