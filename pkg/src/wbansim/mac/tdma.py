"""Static and reservation-based (dynamic) TDMA."""

from collections import deque

from wbansim.kernel import Kind
from wbansim.mac.base import Mac
from wbansim.phy import SHARED_CHANNEL, transmission_time


def static_tdma_slot_owner(slot_index, n):
    return slot_index % n


def static_tdma_next_tx_start(now, node, n, slot_duration):
    """Earliest start of `node`'s slot at or after `now`."""
    if slot_duration <= 0:
        raise ValueError("slot duration must be positive")
    frame = n * slot_duration
    offset = node * slot_duration
    if now <= offset:
        return offset
    frames = -(-(now - offset) // frame)
    return offset + frames * frame


def dynamic_tdma_build_frame(backlogs, cap):
    """Slot allocation for one frame: node i gets min(backlog_i, cap) contiguous slots."""
    frame = []
    for node, backlog in enumerate(backlogs):
        frame.extend([node] * min(backlog, cap))
    return frame


class StaticTdma(Mac):
    name = "static-tdma"

    def __init__(self, sim):
        super().__init__(sim)
        cfg = sim.config
        self.slot = transmission_time(cfg.packet_bits, cfg.bit_rate_bps)
        self.frame = self.n * self.slot
        self.armed = [False] * self.n

    def on_enqueue(self, node, packet, now):
        self.queues[node].append(packet)
        if not self.armed[node]:
            self.armed[node] = True
            at = static_tdma_next_tx_start(now, node, self.n, self.slot)
            self.sim.queue.schedule_at(at, Kind.SLOT_START, node)

    def on_event(self, event, now):
        if event.kind == Kind.SLOT_START:
            node = event.payload
            packet = self.queues[node][0]
            packet.tx_start = now
            self.sim.transmit(node, SHARED_CHANNEL, self.slot, packet)
        else:
            super().on_event(event, now)

    def on_tx_end(self, tx, delivered, now):
        node = tx.source
        self._complete(node, tx, delivered, now)
        if self.queues[node]:
            # tx ends one slot after it began, so the next own slot is a frame minus a slot away
            self.sim.queue.schedule_at(now + self.frame - self.slot, Kind.SLOT_START, node)
        else:
            self.armed[node] = False


class DynamicTdma(Mac):
    """Sink re-plans every frame from the true backlogs; no signalling cost."""

    name = "dynamic-tdma"

    def __init__(self, sim):
        super().__init__(sim)
        cfg = sim.config
        self.slot = transmission_time(cfg.packet_bits, cfg.bit_rate_bps)
        self.cap = cfg.max_slots_per_node
        if cfg.idle_period_ms is None:
            self.idle_period = self.slot
        else:
            self.idle_period = round(cfg.idle_period_ms * 1_000_000)
        self.pending = deque()
        self.frames = 0
        self.idle_frames = 0

    def start(self, now):
        self.sim.queue.schedule_at(now, Kind.FRAME_START)

    def on_enqueue(self, node, packet, now):
        self.queues[node].append(packet)

    def on_event(self, event, now):
        if event.kind == Kind.FRAME_START:
            self._plan_frame(now)
        else:
            super().on_event(event, now)

    def _plan_frame(self, now):
        allocation = dynamic_tdma_build_frame([len(q) for q in self.queues], self.cap)
        self.frames += 1
        if not allocation:
            self.idle_frames += 1
            self.sim.queue.schedule_at(now + self.idle_period, Kind.FRAME_START)
            return
        self.pending = deque(allocation)
        self._next_slot(now)

    def _next_slot(self, now):
        # slots are back-to-back, so each one starts when the previous frame leaves the air
        node = self.pending.popleft()
        packet = self.queues[node][0]
        packet.tx_start = now
        self.sim.transmit(node, SHARED_CHANNEL, self.slot, packet)

    def on_tx_end(self, tx, delivered, now):
        self._complete(tx.source, tx, delivered, now)
        if self.pending:
            self._next_slot(now)
        else:
            self._plan_frame(now)
