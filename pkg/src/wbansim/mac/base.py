from collections import deque

from wbansim.errors import SimulationError
from wbansim.kernel import Kind


class Mac:
    """Common plumbing for the access protocols.

    A node's head-of-line packet stays in its queue until the last bit
    leaves, so ``in_queue()`` counts packets on air as still queued.
    """

    name = "mac"

    def __init__(self, sim):
        self.sim = sim
        self.n = sim.config.nodes
        self.queues = [deque() for _ in range(self.n)]

    def start(self, now):
        pass

    def on_enqueue(self, node, packet, now):
        raise NotImplementedError

    def on_event(self, event, now):
        if event.kind == Kind.TX_END:
            tx = event.payload
            self.on_tx_end(tx, self.sim.medium.end_transmission(tx, now), now)
        else:
            raise SimulationError(f"{self.name}: unexpected event {event!r}")

    def on_tx_end(self, tx, delivered, now):
        raise NotImplementedError

    def in_queue(self):
        return sum(len(q) for q in self.queues)

    def _complete(self, node, tx, delivered, now, access=0):
        """Data frame finished: hand the head packet to the sink."""
        packet = self.queues[node].popleft()
        if packet is not tx.packet:
            raise SimulationError(f"node {node}: finished frame is not the head of its queue")
        if not delivered:
            raise SimulationError(f"{self.name}: scheduled data frame corrupted: {tx!r}")
        self.sim.collector.record_delivery(packet, now, self.sim.propagation, access)
