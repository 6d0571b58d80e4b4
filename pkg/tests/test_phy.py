import pytest
from hypothesis import given
from hypothesis import strategies as st

from wbansim.errors import SimulationError
from wbansim.phy import (
    ChannelResource,
    MediumState,
    Topology,
    Transmission,
    fdma_per_band_rate,
    propagation_delay,
    transmission_time,
)

MS = 1_000_000
SHARED = ChannelResource.shared()


def test_transmission_time_table5_packet():
    assert transmission_time(432, 250_000) == 1_728_000  # 432 / 250000 s


def test_transmission_time_zero_bits():
    assert transmission_time(0, 250_000) == 0


def test_transmission_time_fdma_band():
    assert transmission_time(432, 250_000 / 8) == 13_824_000


def test_transmission_time_rounds_to_nearest_ns():
    assert transmission_time(1, 3) == 333_333_333
    assert transmission_time(2, 3) == 666_666_667


def test_transmission_time_rejects_zero_rate():
    with pytest.raises(ValueError):
        transmission_time(432, 0)


def test_propagation_delay():
    assert propagation_delay(2) == 7  # 6.67 ns
    assert propagation_delay(0) == 0
    assert propagation_delay(299_792_458) == 1_000_000_000


def test_topology_defaults():
    topo = Topology(8)
    assert topo.distance_to_sink == 2 and topo.bit_rate == 250_000
    assert topo.propagation == 7
    with pytest.raises(ValueError):
        Topology(0)


def test_fdma_band_rate():
    assert fdma_per_band_rate(250_000, 8) == 31_250
    assert fdma_per_band_rate(250_000, 1) == 250_000
    assert fdma_per_band_rate(250_000, 8, 0.2) == pytest.approx(25_000)
    with pytest.raises(ValueError):
        fdma_per_band_rate(250_000, 8, 1.0)


def _tx(src, res, start, end):
    return Transmission(src, res, start, end)


def test_overlap_on_shared_channel_corrupts_both():
    m = MediumState()
    a = _tx(0, SHARED, 0, 2 * MS)
    b = _tx(1, SHARED, 1 * MS, 3 * MS)
    m.begin_transmission(a, 0)
    newly = m.begin_transmission(b, 1 * MS)
    assert set(map(id, newly)) == {id(a), id(b)}
    assert m.end_transmission(a, 2 * MS) is False
    assert m.end_transmission(b, 3 * MS) is False


def test_distinct_bands_do_not_interact():
    m = MediumState()
    a = _tx(0, ChannelResource.band(0), 0, 2 * MS)
    b = _tx(1, ChannelResource.band(1), 1 * MS, 3 * MS)
    m.begin_transmission(a, 0)
    assert m.begin_transmission(b, 1 * MS) == []
    assert m.end_transmission(a, 2 * MS) and m.end_transmission(b, 3 * MS)


def test_distinct_codes_do_not_interact():
    m = MediumState()
    a = _tx(0, ChannelResource.code(0), 0, 2 * MS)
    b = _tx(1, ChannelResource.code(1), 1 * MS, 3 * MS)
    m.begin_transmission(a, 0)
    assert m.begin_transmission(b, 1 * MS) == []
    assert m.end_transmission(b, 3 * MS) is True


def test_lone_transmission_delivered():
    m = MediumState()
    a = _tx(0, SHARED, 5, 10)
    m.begin_transmission(a, 5)
    assert m.end_transmission(a, 10) is True


def test_back_to_back_frames_do_not_collide():
    m = MediumState()
    a = _tx(0, SHARED, 0, 10)
    b = _tx(1, SHARED, 10, 20)
    m.begin_transmission(a, 0)
    # b begins before a's end event has been processed at the same instant
    assert m.begin_transmission(b, 10) == []
    assert m.end_transmission(a, 10) and m.end_transmission(b, 20)


def test_corruption_is_sticky():
    m = MediumState()
    a = _tx(0, SHARED, 0, 100)
    b = _tx(1, SHARED, 10, 20)
    m.begin_transmission(a, 0)
    m.begin_transmission(b, 10)
    m.end_transmission(b, 20)
    assert m.end_transmission(a, 100) is False


def test_logic_errors():
    m = MediumState()
    a = _tx(0, SHARED, 0, 10)
    with pytest.raises(SimulationError):
        m.end_transmission(a, 10)
    with pytest.raises(SimulationError):
        m.begin_transmission(_tx(0, SHARED, 5, 10), 4)
    m.begin_transmission(a, 0)
    with pytest.raises(SimulationError):
        m.begin_transmission(a, 0)


def test_busy_respects_sensing_delay():
    m = MediumState()
    m.begin_transmission(_tx(0, SHARED, 100, 200), 100)
    assert m.busy(SHARED, 100)
    assert not m.busy(SHARED, 100, sense_delay=7)
    assert m.busy(SHARED, 107, sense_delay=7)
    assert not m.busy(SHARED, 200)


def _brute_force_corrupted(frames):
    """Frame i is corrupted iff some other frame on the same resource overlaps it."""
    out = []
    for i, (ri, si, ei) in enumerate(frames):
        out.append(any(j != i and rj == ri and max(si, sj) < min(ei, ej)
                       for j, (rj, sj, ej) in enumerate(frames)))
    return out


def _replay(frames):
    """Drive MediumState with begin/end events in time order (ends before begins at ties)."""
    m = MediumState()
    txs = [Transmission(i, res, s, e) for i, (res, s, e) in enumerate(frames)]
    events = [(t.start, 1, i) for i, t in enumerate(txs)] + [(t.end, 0, i) for i, t in enumerate(txs)]
    verdict = {}
    for time, is_begin, i in sorted(events):
        if is_begin:
            m.begin_transmission(txs[i], time)
        else:
            verdict[i] = m.end_transmission(txs[i], time)
    return [not verdict[i] for i in range(len(txs))]


resources = st.sampled_from([SHARED, ChannelResource.band(0), ChannelResource.band(1),
                             ChannelResource.code(0), ChannelResource.code(1)])
frames_strategy = st.lists(
    st.tuples(resources, st.integers(0, 100), st.integers(1, 30)).map(
        lambda t: (t[0], t[1], t[1] + t[2])),
    max_size=12,
)


@given(frames_strategy)
def test_medium_matches_brute_force_overlap(frames):
    assert _replay(frames) == _brute_force_corrupted(frames)


@given(frames_strategy)
def test_collision_symmetry(frames):
    corrupted = _replay(frames)
    for i, (ri, si, ei) in enumerate(frames):
        for j, (rj, sj, ej) in enumerate(frames):
            if i != j and ri == rj and max(si, sj) < min(ei, ej):
                assert corrupted[i] and corrupted[j]


@given(st.lists(st.tuples(st.integers(0, 7), st.integers(0, 100), st.integers(1, 30)), max_size=12),
       st.sampled_from(["band", "code"]))
def test_distinct_resources_isolated(raw, kind):
    # one frame per resource index: nothing can collide
    seen = set()
    frames = []
    for idx, start, length in raw:
        if idx in seen:
            continue
        seen.add(idx)
        res = ChannelResource.band(idx) if kind == "band" else ChannelResource.code(idx)
        frames.append((res, start, start + length))
    assert not any(_replay(frames))
