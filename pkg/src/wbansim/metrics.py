"""Per-packet delay records, run summaries and closed-form delay predictions."""

from dataclasses import dataclass

from wbansim.errors import SimulationError
from wbansim.kernel import NS_PER_S
from wbansim.phy import fdma_per_band_rate, propagation_delay, transmission_time


class DeliveryRecord:
    """One delivered packet. All times in integer nanoseconds.

    The total splits into queuing (generation until the packet starts
    contending, or until its first bit for scheduled protocols), access
    (contention and handshake), transmission and propagation.
    """

    __slots__ = ("packet_id", "source", "generated_at", "delivered_at",
                 "queuing", "access", "transmission", "propagation")

    def __init__(self, packet_id, source, generated_at, delivered_at,
                 queuing, access, transmission, propagation):
        self.packet_id = packet_id
        self.source = source
        self.generated_at = generated_at
        self.delivered_at = delivered_at
        self.queuing = queuing
        self.access = access
        self.transmission = transmission
        self.propagation = propagation

    @property
    def delay(self):
        return self.delivered_at - self.generated_at

    @property
    def delay_s(self):
        return self.delay / NS_PER_S

    def __repr__(self):
        return (f"DeliveryRecord(packet={self.packet_id}, delay={self.delay} ns, "
                f"q={self.queuing}, a={self.access}, tx={self.transmission}, "
                f"prop={self.propagation})")


def make_record(packet, delivered_at, queuing, access, transmission, propagation):
    """Build a record after checking the decomposition adds up."""
    parts = (queuing, access, transmission, propagation)
    if min(parts) < 0:
        raise SimulationError(f"negative delay component {parts} for packet {packet.id}")
    total = delivered_at - packet.generated_at
    if total < 0:
        raise SimulationError(f"packet {packet.id} delivered before it was generated")
    if abs(sum(parts) - total) > 1:
        raise SimulationError(
            f"delay components {parts} of packet {packet.id} do not sum to {total} ns")
    return DeliveryRecord(packet.id, packet.source, packet.generated_at, delivered_at, *parts)


class Collector:
    """Accumulates deliveries, drops and the number of packets held at the nodes.

    The in-system count rises when a packet is generated and falls when its
    last bit leaves the node (or it is dropped); its time integral gives the
    time-averaged queue length.
    """

    def __init__(self):
        self.records = []
        self.drops = []  # (packet_id, attempts)
        self.generated = 0
        self.in_system = 0
        self.max_in_system = 0
        self._area = 0
        self._last_change = 0

    def _advance(self, now):
        self._area += self.in_system * (now - self._last_change)
        self._last_change = now

    def on_generated(self, now):
        self._advance(now)
        self.generated += 1
        self.in_system += 1
        if self.in_system > self.max_in_system:
            self.max_in_system = self.in_system

    def on_departed(self, now):
        self._advance(now)
        self.in_system -= 1
        if self.in_system < 0:
            raise SimulationError("more packets left the nodes than were generated")

    def record_delivery(self, packet, departed_at, propagation, access=0):
        """Delivered packet: last bit left the node at `departed_at`."""
        self.on_departed(departed_at)
        tx_start = packet.tx_start
        contend = packet.access_start if packet.access_start is not None else tx_start - access
        record = make_record(
            packet,
            departed_at + propagation,
            queuing=contend - packet.generated_at,
            access=tx_start - contend,
            transmission=departed_at - tx_start,
            propagation=propagation,
        )
        self.records.append(record)
        return record

    def record_drop(self, packet, now):
        self.on_departed(now)
        self.drops.append((packet.id, packet.attempts))

    def queue_area(self, horizon):
        """Integral of the in-system count over [0, horizon], in packet-nanoseconds."""
        return self._area + self.in_system * (horizon - self._last_change)


@dataclass(frozen=True)
class RunSummary:
    protocol: str
    node_count: int
    seed: int
    duration: float
    generated: int
    delivered: int
    dropped: int
    in_queue_at_end: int
    mean_delay: float | None
    max_delay: float | None
    mean_queuing: float | None
    mean_access: float | None
    mean_transmission: float | None
    mean_propagation: float | None
    delivery_ratio: float
    corrupted: int = 0
    mean_queue_length: float = 0.0

    @property
    def arrival_rate(self):
        return self.generated / self.duration


def _mean_s(total_ns, count):
    return total_ns / count / NS_PER_S if count else None


def summarize(records, drops, in_queue, config, generated, corrupted=0, queue_area=0):
    """Fold a finished run into a RunSummary; means are over delivered packets only."""
    delivered = len(records)
    dropped = len(drops)
    if generated != delivered + dropped + in_queue:
        raise SimulationError(
            f"conservation violated: generated {generated} != delivered {delivered} "
            f"+ dropped {dropped} + queued {in_queue}")
    horizon = config.duration_ns
    totals = [0, 0, 0, 0, 0]
    max_delay = None
    for r in records:
        d = r.delivered_at - r.generated_at
        totals[0] += d
        totals[1] += r.queuing
        totals[2] += r.access
        totals[3] += r.transmission
        totals[4] += r.propagation
        if max_delay is None or d > max_delay:
            max_delay = d
    return RunSummary(
        protocol=config.protocol,
        node_count=config.nodes,
        seed=config.seed,
        duration=config.duration_s,
        generated=generated,
        delivered=delivered,
        dropped=dropped,
        in_queue_at_end=in_queue,
        mean_delay=_mean_s(totals[0], delivered),
        max_delay=None if max_delay is None else max_delay / NS_PER_S,
        mean_queuing=_mean_s(totals[1], delivered),
        mean_access=_mean_s(totals[2], delivered),
        mean_transmission=_mean_s(totals[3], delivered),
        mean_propagation=_mean_s(totals[4], delivered),
        delivery_ratio=delivered / generated if generated else 0.0,
        corrupted=corrupted,
        mean_queue_length=queue_area / horizon if horizon else 0.0,
    )


def analytic_oracles(protocol, config):
    """Predicted mean delivered-packet delay in seconds.

    Closed forms exist for static TDMA, FDMA and DS-CDMA. In the stable
    regime each node is served faster than it generates packets; otherwise
    the per-node backlog grows linearly and so does the mean delay of the
    packets delivered within the horizon.
    """
    n = config.nodes
    bits = config.packet_bits
    interval = config.interval_ns
    prop = propagation_delay(config.distance_m)
    full_tx = transmission_time(bits, config.bit_rate_bps)
    if protocol == "static-tdma":
        service = n * full_tx  # one slot per frame
        first_wait = service / 2  # phase-averaged wait for the own slot
        tx = full_tx
    elif protocol == "fdma":
        tx = transmission_time(bits, fdma_per_band_rate(config.bit_rate_bps, n,
                                                        config.guard_fraction))
        service = tx
        first_wait = 0
    elif protocol == "ds-cdma":
        tx = full_tx
        service = tx + config.code_setup_ns
        first_wait = config.code_setup_ns
    else:
        raise ValueError(f"no closed form for {protocol!r}")

    base = first_wait + tx + prop
    if service <= interval:
        return base / NS_PER_S
    # saturated: packet k waits k * (service - interval) longer than the first
    horizon = config.duration_ns
    delivered = max((horizon - first_wait - tx) / service + 1, 1)
    return (base + (service - interval) * (delivered - 1) / 2) / NS_PER_S
