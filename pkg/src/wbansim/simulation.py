"""Wires kernel, medium, MAC and traffic into one run."""

from dataclasses import dataclass, field

from wbansim.kernel import EventQueue, Kind, derive_stream
from wbansim.mac import make_mac
from wbansim.metrics import Collector, RunSummary, summarize
from wbansim.phy import MediumState, Transmission, propagation_delay
from wbansim.workload import Packet


class Simulation:
    def __init__(self, config):
        self.config = config
        self.queue = EventQueue()
        self.medium = MediumState()
        self.collector = Collector()
        self.propagation = propagation_delay(config.distance_m)
        self.node_rngs = [derive_stream(config.seed, i) for i in range(config.nodes)]
        self.interval = config.interval_ns
        self.horizon = config.duration_ns
        if config.phase_mode == "random":
            self.phases = [rng.next_uniform_int(self.interval) for rng in self.node_rngs]
        else:
            self.phases = [0] * config.nodes
        self.mac = make_mac(config.protocol, self)
        self._next_packet_id = 0

    @property
    def now(self):
        return self.queue.now

    def transmit(self, source, resource, duration, packet=None, frame_kind="data"):
        """Put a frame on air now and schedule its end."""
        now = self.queue.now
        tx = Transmission(source, resource, now, now + duration, frame_kind, packet)
        self.medium.begin_transmission(tx, now)
        self.queue.schedule_at(tx.end, Kind.TX_END, tx)
        return tx

    def _handle(self, event):
        if event.kind == Kind.PACKET_ARRIVAL:
            node = event.payload
            now = self.queue.now
            packet = Packet(self._next_packet_id, node, now, self.config.packet_bits)
            self._next_packet_id += 1
            self.collector.on_generated(now)
            self.mac.on_enqueue(node, packet, now)
            following = now + self.interval
            if following <= self.horizon:
                self.queue.schedule_at(following, Kind.PACKET_ARRIVAL, node)
        else:
            self.mac.on_event(event, self.queue.now)

    def start(self):
        for node, phase in enumerate(self.phases):
            if phase <= self.horizon:
                self.queue.schedule_at(phase, Kind.PACKET_ARRIVAL, node)
        self.mac.start(0)

    def advance(self, until):
        """Process events up to `until` (capped at the run horizon)."""
        return self.queue.run_until(min(until, self.horizon), self._handle)

    def run(self):
        self.start()
        self.advance(self.horizon)
        return self.finish()

    def finish(self):
        c = self.collector
        summary = summarize(
            c.records, c.drops, self.mac.in_queue(), self.config, c.generated,
            corrupted=self.medium.corrupted,
            queue_area=c.queue_area(self.horizon),
        )
        return RunResult(summary, c.records, c.drops, self)


@dataclass
class RunResult:
    summary: RunSummary
    records: list
    drops: list = field(default_factory=list)
    sim: Simulation | None = field(default=None, repr=False)


def run_scenario(config):
    return Simulation(config).run()
