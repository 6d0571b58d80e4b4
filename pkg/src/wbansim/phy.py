"""Shared medium of the star topology: frame timing and overlap-based collisions."""

from dataclasses import dataclass
from fractions import Fraction

from wbansim.errors import SimulationError
from wbansim.kernel import NS_PER_S

SPEED_OF_LIGHT = 299_792_458  # m/s
SINK = -1  # source id used for frames sent by the sink


def _round_ns(seconds):
    # round half up, exact on Fractions
    return int((seconds * NS_PER_S + Fraction(1, 2)) // 1)


def transmission_time(bits, rate):
    """Airtime of `bits` at `rate` bits/s, in integer nanoseconds."""
    if rate <= 0:
        raise ValueError(f"bit rate must be positive, got {rate}")
    if bits < 0:
        raise ValueError(f"bit count must be non-negative, got {bits}")
    return _round_ns(Fraction(bits) / Fraction(rate))


def propagation_delay(distance):
    if distance < 0:
        raise ValueError(f"distance must be non-negative, got {distance}")
    return _round_ns(Fraction(distance) / SPEED_OF_LIGHT)


def fdma_per_band_rate(total_rate, n, guard_fraction=0.0):
    """Per-band bit rate when the channel is split evenly into n bands."""
    if n < 1:
        raise ValueError("need at least one band")
    if not 0 <= guard_fraction < 1:
        raise ValueError(f"guard fraction must lie in [0, 1), got {guard_fraction}")
    return total_rate * (1 - guard_fraction) / n


@dataclass(frozen=True)
class Topology:
    node_count: int
    distance_to_sink: float = 2.0
    bit_rate: float = 250_000

    def __post_init__(self):
        if self.node_count < 1:
            raise ValueError("a star needs at least one node")
        if self.bit_rate <= 0:
            raise ValueError("bit rate must be positive")
        if self.distance_to_sink < 0:
            raise ValueError("distance must be non-negative")

    @property
    def propagation(self):
        return propagation_delay(self.distance_to_sink)


@dataclass(frozen=True)
class ChannelResource:
    kind: str
    index: int = 0

    SHARED = "shared-channel"
    BAND = "frequency-band"
    CODE = "spreading-code"

    @classmethod
    def shared(cls):
        return cls(cls.SHARED, 0)

    @classmethod
    def band(cls, index):
        return cls(cls.BAND, index)

    @classmethod
    def code(cls, index):
        return cls(cls.CODE, index)


SHARED_CHANNEL = ChannelResource.shared()


class Transmission:
    __slots__ = ("source", "resource", "start", "end", "frame_kind", "packet", "corrupted", "state")

    def __init__(self, source, resource, start, end, frame_kind="data", packet=None):
        if end <= start:
            raise ValueError(f"transmission must have positive duration ({start}..{end})")
        self.source = source
        self.resource = resource
        self.start = start
        self.end = end
        self.frame_kind = frame_kind
        self.packet = packet
        self.corrupted = False
        self.state = "new"

    def __repr__(self):
        flag = " corrupted" if self.corrupted else ""
        return (f"Transmission({self.frame_kind} from {self.source} on {self.resource.kind}"
                f"[{self.resource.index}] {self.start}..{self.end}{flag})")


class MediumState:
    """In-flight transmissions per resource.

    Two transmissions on the same resource that overlap for any positive
    duration corrupt each other; corruption is sticky. Frames on distinct
    bands or codes never interact.
    """

    def __init__(self):
        self.active = {}
        self.begun = 0
        self.delivered = 0
        self.corrupted = 0

    def busy(self, resource, now, sense_delay=0):
        """True if a frame on `resource` is on air at `now` and has been for `sense_delay`.

        A listener cannot hear a frame before its first bit has propagated to it.
        """
        for tx in self.active.get(resource, ()):
            if tx.end > now and tx.start + sense_delay <= now:
                return True
        return False

    def begin_transmission(self, tx, now):
        if tx.state != "new":
            raise SimulationError(f"duplicate begin for {tx!r}")
        if tx.start != now:
            raise SimulationError(f"{tx!r} begun at clock {now}")
        newly = []
        peers = self.active.setdefault(tx.resource, [])
        for other in peers:
            # a frame ending exactly now does not overlap one starting now
            if other.end > tx.start:
                if not other.corrupted:
                    other.corrupted = True
                    newly.append(other)
                if not tx.corrupted:
                    tx.corrupted = True
                    newly.append(tx)
        peers.append(tx)
        tx.state = "active"
        self.begun += 1
        return newly

    def end_transmission(self, tx, now):
        """Remove `tx` from the air; True if delivered, False if corrupted."""
        if tx.state != "active":
            raise SimulationError(f"ending {tx!r} which was never begun")
        if now != tx.end:
            raise SimulationError(f"{tx!r} ended at clock {now}")
        self.active[tx.resource].remove(tx)
        tx.state = "done"
        if tx.corrupted:
            self.corrupted += 1
            return False
        self.delivered += 1
        return True
