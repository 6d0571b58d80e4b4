"""Constant-rate traffic sources."""

from dataclasses import dataclass


class Packet:
    __slots__ = ("id", "source", "generated_at", "size_bits", "access_start", "tx_start",
                 "attempts")

    def __init__(self, id, source, generated_at, size_bits=432):
        if size_bits <= 0:
            raise ValueError("packet size must be positive")
        self.id = id
        self.source = source
        self.generated_at = generated_at
        self.size_bits = size_bits
        # set by the MAC: when contention for the medium began, and first bit on air
        self.access_start = None
        self.tx_start = None
        self.attempts = 0

    def __repr__(self):
        return f"Packet(id={self.id}, source={self.source}, generated_at={self.generated_at})"


def arrival_times(duration, interval, phase=0):
    """Yield phase, phase+interval, ... up to and including duration (all in ns)."""
    if interval <= 0:
        raise ValueError("arrival interval must be positive")
    if not 0 <= phase < interval:
        raise ValueError(f"phase must lie in [0, {interval}), got {phase}")
    t = phase
    while t <= duration:
        yield t
        t += interval


def generate_arrivals(node, duration, interval, phase=0, size_bits=432, first_id=0):
    return [Packet(first_id + i, node, t, size_bits)
            for i, t in enumerate(arrival_times(duration, interval, phase))]


@dataclass(frozen=True)
class OfferedLoad:
    bits_per_second: float
    channel_rate: float

    @property
    def saturated(self):
        return self.bits_per_second > self.channel_rate

    @property
    def utilization(self):
        return self.bits_per_second / self.channel_rate


def offered_load(n, packet_bits, interval_s, channel_rate=250_000):
    """Aggregate offered load of n constant-rate sources, against the channel rate."""
    if interval_s <= 0:
        raise ValueError("arrival interval must be positive")
    return OfferedLoad(n * packet_bits / interval_s, channel_rate)
