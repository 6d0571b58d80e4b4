"""Event queue, simulation clock and the seeded random source.

All simulation time is integer nanoseconds.
"""

import heapq

from wbansim.errors import SchedulingError

NS_PER_S = 1_000_000_000
NS_PER_MS = 1_000_000

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


class Kind:
    """Event tags."""

    PACKET_ARRIVAL = "packet-arrival"
    SLOT_START = "slot-start"
    FRAME_START = "frame-start"
    TX_START = "tx-start"
    TX_END = "tx-end"
    RTS_TIMEOUT = "rts-timeout"
    CTS_SEND = "cts-send"
    CTS_RECEIVED = "cts-received"
    BACKOFF_EXPIRED = "backoff-expired"
    CHANNEL_FREE = "channel-free"
    RESERVATION_ROUND = "reservation-round"
    METRICS_SAMPLE = "metrics-sample"


class Event:
    __slots__ = ("fire_at", "seq", "kind", "payload")

    def __init__(self, fire_at, kind, payload=None):
        self.fire_at = fire_at
        self.seq = -1
        self.kind = kind
        self.payload = payload

    def __repr__(self):
        return f"Event({self.fire_at}, {self.kind!r}, seq={self.seq}, payload={self.payload!r})"


class EventQueue:
    """Pending events ordered by (fire_at, seq).

    Events at the same instant pop in the order they were scheduled.
    """

    def __init__(self, now=0):
        if now < 0:
            raise ValueError("clock cannot start before zero")
        self.now = now
        self._heap = []
        self._next_seq = 0
        self.processed = 0

    def __len__(self):
        return len(self._heap)

    @property
    def scheduled(self):
        return self._next_seq

    def schedule(self, event):
        if event.fire_at < self.now:
            raise SchedulingError(
                f"event {event.kind!r} scheduled at {event.fire_at} ns, "
                f"before the clock ({self.now} ns)"
            )
        event.seq = self._next_seq
        self._next_seq += 1
        heapq.heappush(self._heap, (event.fire_at, event.seq, event))
        return event

    def schedule_at(self, fire_at, kind, payload=None):
        return self.schedule(Event(fire_at, kind, payload))

    def peek_time(self):
        return self._heap[0][0] if self._heap else None

    def pop(self):
        """Remove and return the earliest event, advancing the clock; None when empty."""
        if not self._heap:
            return None
        fire_at, _, event = heapq.heappop(self._heap)
        self.now = fire_at
        self.processed += 1
        return event

    def run_until(self, horizon, handler):
        """Process every event with fire_at <= horizon, then park the clock at horizon."""
        if horizon < self.now:
            raise SchedulingError(f"horizon {horizon} ns is before the clock ({self.now} ns)")
        heap = self._heap
        pop = heapq.heappop
        while heap and heap[0][0] <= horizon:
            fire_at, _, event = pop(heap)
            self.now = fire_at
            self.processed += 1
            handler(event)
        self.now = horizon
        return self.now


def run_until(queue, horizon, handler):
    return queue.run_until(horizon, handler)


def splitmix64(state):
    """One SplitMix64 step: returns (new_state, output)."""
    state = (state + GOLDEN_GAMMA) & MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return state, z ^ (z >> 31)


class Rng:
    """SplitMix64 generator; identical output on every platform for a given seed."""

    __slots__ = ("state",)

    def __init__(self, seed):
        self.state = seed & MASK64

    def next_u64(self):
        self.state, out = splitmix64(self.state)
        return out

    def next_uniform_int(self, n):
        """Unbiased draw from [0, n-1] by rejection on the 64-bit output."""
        if n < 1:
            raise ValueError(f"n must be positive, got {n}")
        if n == 1:
            self.next_u64()
            return 0
        # largest multiple of n not exceeding 2**64
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % n

    def derive(self, stream_id):
        return derive_stream(self.state, stream_id)


def derive_stream(seed, stream_id):
    """Per-node stream: seed XOR (stream_id times a fixed odd constant)."""
    return Rng((seed ^ (stream_id * GOLDEN_GAMMA)) & MASK64)


def next_uniform_int(rng, n):
    return rng.next_uniform_int(n)
