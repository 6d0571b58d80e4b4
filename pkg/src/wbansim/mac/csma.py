"""CSMA/CA with an RTS/CTS handshake toward the sink.

Backoff counters tick on a network-wide grid of backoff units and only
while the channel is idle: when another node's frame goes on air the
remaining count is frozen, and it resumes once the channel is free again.
Nodes whose counters run out on the same boundary sense the channel idle
together and their RTS frames collide. Every node overhears the
handshake, so an accepted RTS reserves the channel (virtual carrier
sense) until the data frame has propagated.
"""

from wbansim.errors import SimulationError
from wbansim.kernel import Kind
from wbansim.mac.base import Mac
from wbansim.phy import SHARED_CHANNEL, SINK, transmission_time

IDLE, BACKOFF, WAIT_CTS, SENDING = "idle", "backoff", "wait-cts", "sending"


def csma_draw_backoff(rng, be, unit):
    """k * unit with k uniform in [0, 2**be - 1]."""
    if be < 0:
        raise ValueError(f"backoff exponent must be non-negative, got {be}")
    return rng.next_uniform_int(1 << be) * unit


def next_backoff_exponent(be, max_be):
    return min(be + 1, max_be)


class CsmaCa(Mac):
    name = "csma-ca"

    def __init__(self, sim):
        super().__init__(sim)
        cfg = sim.config
        prop = sim.propagation
        self.min_be = cfg.mac_min_be
        self.max_be = cfg.mac_max_be
        self.unit = cfg.backoff_unit_ns
        self.max_retries = cfg.max_retries
        self.rts_time = transmission_time(cfg.rts_bits, cfg.bit_rate_bps)
        self.cts_time = transmission_time(cfg.cts_bits, cfg.bit_rate_bps)
        self.data_time = transmission_time(cfg.packet_bits, cfg.bit_rate_bps)
        if cfg.cts_timeout_ms is None:
            self.cts_timeout = self.rts_time + self.cts_time + 2 * prop + self.unit
        else:
            self.cts_timeout = round(cfg.cts_timeout_ms * 1_000_000)
        # a granted RTS holds the channel until the data frame has reached the sink
        self.reservation = prop + self.cts_time + prop + self.data_time + prop
        self.rngs = sim.node_rngs

        self.phase = [IDLE] * self.n
        self.be = [self.min_be] * self.n
        self.retries = [0] * self.n
        self.token = [0] * self.n
        self.nav_until = 0
        # backoff bookkeeping: armed counters have a pending expiry event,
        # frozen ones wait for the channel to become free
        self.armed = {}  # node -> (anchor, count, fire_at)
        self.frozen = {}  # node -> remaining count
        self.backoff_token = [0] * self.n
        self.free_event_pending = False

        self.handshakes = 0
        self.rts_collisions = 0
        self.max_be_seen = self.min_be
        self.max_retries_seen = 0

    def channel_free(self, now):
        return now >= self.nav_until and not self.sim.medium.busy(
            SHARED_CHANNEL, now, self.sim.propagation)

    def on_enqueue(self, node, packet, now):
        self.queues[node].append(packet)
        if self.phase[node] == IDLE:
            self._start_access(node, now)

    def _start_access(self, node, now):
        self.queues[node][0].access_start = now
        self.be[node] = self.min_be
        self.retries[node] = 0
        self._sense(node, now)

    def _sense(self, node, now):
        if self.channel_free(now):
            self._send_rts(node, now)
        else:
            self._backoff(node, now)

    def _backoff(self, node, now):
        self.phase[node] = BACKOFF
        count = csma_draw_backoff(self.rngs[node], self.be[node], 1)
        if self.channel_free(now):
            self._arm(node, now, count)
        else:
            self._freeze(node, count, now)

    def _arm(self, node, anchor, count):
        """Expire after `count` idle boundaries, on the boundary that follows."""
        fire_at = (anchor // self.unit + 1 + count) * self.unit
        self.backoff_token[node] += 1
        self.armed[node] = (anchor, count, fire_at)
        self.sim.queue.schedule_at(fire_at, Kind.BACKOFF_EXPIRED, (node, self.backoff_token[node]))

    def _freeze(self, node, remaining, now):
        self.frozen[node] = remaining
        if not self.free_event_pending:
            self._watch_for_free(now)

    def _freeze_armed(self, now):
        """The channel just turned busy: stop every counter that has not run out yet."""
        for node, (anchor, count, fire_at) in list(self.armed.items()):
            if fire_at > now:
                # boundaries in (anchor, now] were sensed idle and count down
                passed = now // self.unit - anchor // self.unit
                del self.armed[node]
                self.backoff_token[node] += 1
                self.frozen[node] = count - passed

    def _watch_for_free(self, now):
        """Schedule a channel-free check once no frame or reservation can be holding the channel."""
        if self.free_event_pending or not self.frozen:
            return
        if self.sim.medium.busy(SHARED_CHANNEL, now):
            return  # the ending frame's tx-end will call back
        self.free_event_pending = True
        self.sim.queue.schedule_at(max(now, self.nav_until), Kind.CHANNEL_FREE)

    def _on_channel_free(self, now):
        self.free_event_pending = False
        if not self.channel_free(now):
            self._watch_for_free(now)
            return
        frozen, self.frozen = self.frozen, {}
        for node in sorted(frozen):
            self._arm(node, now, frozen[node])

    def _send_rts(self, node, now):
        packet = self.queues[node][0]
        packet.attempts += 1
        self.handshakes += 1
        self.token[node] += 1
        self.phase[node] = WAIT_CTS
        self.sim.transmit(node, SHARED_CHANNEL, self.rts_time, packet, "rts")
        self._freeze_armed(now)
        self.sim.queue.schedule_at(now + self.cts_timeout, Kind.RTS_TIMEOUT,
                                   (node, self.token[node]))

    def _send_data(self, node, now):
        packet = self.queues[node][0]
        packet.tx_start = now
        self.phase[node] = SENDING
        self.sim.transmit(node, SHARED_CHANNEL, self.data_time, packet, "data")

    def _fail(self, node, now):
        """Handshake failed: widen the window and retry, or drop after max_retries."""
        self.retries[node] += 1
        if self.retries[node] > self.max_retries:
            packet = self.queues[node].popleft()
            if packet.attempts != self.max_retries + 1:
                raise SimulationError(f"packet {packet.id} dropped after {packet.attempts} attempts")
            self.sim.collector.record_drop(packet, now)
            self._next_packet(node, now)
            return
        self.max_retries_seen = max(self.max_retries_seen, self.retries[node])
        self.be[node] = next_backoff_exponent(self.be[node], self.max_be)
        self.max_be_seen = max(self.max_be_seen, self.be[node])
        self._backoff(node, now)

    def _next_packet(self, node, now):
        if self.queues[node]:
            self._start_access(node, now)
        else:
            self.phase[node] = IDLE

    def on_event(self, event, now):
        kind = event.kind
        if kind == Kind.BACKOFF_EXPIRED:
            node, token = event.payload
            if token != self.backoff_token[node]:
                return  # counter was frozen after this expiry was scheduled
            if self.phase[node] != BACKOFF:
                raise SimulationError(f"node {node}: backoff expired while {self.phase[node]}")
            del self.armed[node]
            if self.channel_free(now):
                self._send_rts(node, now)
            else:
                self._freeze(node, 0, now)
        elif kind == Kind.CHANNEL_FREE:
            self._on_channel_free(now)
        elif kind == Kind.RTS_TIMEOUT:
            node, token = event.payload
            # stale unless the node is still waiting on this very RTS
            if self.phase[node] == WAIT_CTS and self.token[node] == token:
                self._fail(node, now)
        elif kind == Kind.CTS_SEND:
            packet = event.payload
            self.sim.transmit(SINK, SHARED_CHANNEL, self.cts_time, packet, "cts")
        elif kind == Kind.CTS_RECEIVED:
            node, token = event.payload
            if self.phase[node] == WAIT_CTS and self.token[node] == token:
                self._send_data(node, now)
        else:
            super().on_event(event, now)

    def on_tx_end(self, tx, delivered, now):
        self._on_frame_end(tx, delivered, now)
        self._watch_for_free(now)

    def _on_frame_end(self, tx, delivered, now):
        frame = tx.frame_kind
        if frame == "rts":
            if not delivered:
                self.rts_collisions += 1
                return
            # the sink answers only when it is not receiving anything else
            if self.sim.medium.busy(SHARED_CHANNEL, now):
                return
            self.nav_until = max(self.nav_until, now + self.reservation)
            self.sim.queue.schedule_at(now + self.sim.propagation, Kind.CTS_SEND, tx.packet)
        elif frame == "cts":
            if delivered:
                node = tx.packet.source
                self.sim.queue.schedule_at(now + self.sim.propagation, Kind.CTS_RECEIVED,
                                           (node, self.token[node]))
        else:
            node = tx.source
            if delivered:
                packet = self.queues[node].popleft()
                self.sim.collector.record_delivery(packet, now, self.sim.propagation)
                self._next_packet(node, now)
            else:
                self._fail(node, now)
