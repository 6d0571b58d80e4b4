"""FDMA and DS-CDMA: every node owns a private channel resource and sends back-to-back."""

from wbansim.kernel import Kind
from wbansim.mac.base import Mac
from wbansim.mac.walsh import walsh_codes
from wbansim.phy import ChannelResource, fdma_per_band_rate, transmission_time


class DedicatedResourceMac(Mac):
    """Work-conserving sender on a per-node band or code.

    ``setup_delay`` is spent before each frame goes on air and is booked
    as access delay.
    """

    setup_delay = 0

    def __init__(self, sim):
        super().__init__(sim)
        self.busy = [False] * self.n
        self.resources = [self.resource_for(i) for i in range(self.n)]

    def resource_for(self, node):
        raise NotImplementedError

    def on_enqueue(self, node, packet, now):
        self.queues[node].append(packet)
        if not self.busy[node]:
            self._serve(node, now)

    def _serve(self, node, now):
        self.busy[node] = True
        packet = self.queues[node][0]
        if self.setup_delay:
            packet.access_start = now
            self.sim.queue.schedule_at(now + self.setup_delay, Kind.TX_START, node)
        else:
            self._send(node, now)

    def _send(self, node, now):
        packet = self.queues[node][0]
        packet.tx_start = now
        self.sim.transmit(node, self.resources[node], self.tx_time, packet)

    def on_event(self, event, now):
        if event.kind == Kind.TX_START:
            self._send(event.payload, now)
        else:
            super().on_event(event, now)

    def on_tx_end(self, tx, delivered, now):
        node = tx.source
        self._complete(node, tx, delivered, now)
        if self.queues[node]:
            self._serve(node, now)
        else:
            self.busy[node] = False


class Fdma(DedicatedResourceMac):
    name = "fdma"

    def __init__(self, sim):
        cfg = sim.config
        self.band_rate = fdma_per_band_rate(cfg.bit_rate_bps, cfg.nodes, cfg.guard_fraction)
        self.tx_time = transmission_time(cfg.packet_bits, self.band_rate)
        super().__init__(sim)

    def resource_for(self, node):
        return ChannelResource.band(node)


class DsCdma(DedicatedResourceMac):
    """Orthogonal codes, no multi-access interference, full bit rate per code."""

    name = "ds-cdma"

    def __init__(self, sim):
        cfg = sim.config
        self.tx_time = transmission_time(cfg.packet_bits, cfg.bit_rate_bps)
        self.setup_delay = cfg.code_setup_ns
        self.codes = walsh_codes(cfg.nodes)
        super().__init__(sim)

    def resource_for(self, node):
        return ChannelResource.code(node)
