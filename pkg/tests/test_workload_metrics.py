import pytest

from wbansim.config import ScenarioConfig
from wbansim.errors import SimulationError
from wbansim.metrics import Collector, analytic_oracles, make_record, summarize
from wbansim.workload import Packet, arrival_times, generate_arrivals, offered_load

MS = 1_000_000


def test_arrivals_inclusive_of_duration():
    assert list(arrival_times(20 * MS, 5 * MS, 0)) == [0, 5 * MS, 10 * MS, 15 * MS, 20 * MS]


def test_arrivals_shorter_than_interval():
    assert list(arrival_times(4 * MS, 5 * MS, 0)) == [0]


def test_arrivals_thirty_seconds():
    # floor(30 / 0.005) + 1
    assert len(generate_arrivals(0, 30_000 * MS, 5 * MS)) == 6001


def test_arrival_packets_fields():
    pkts = generate_arrivals(3, 10 * MS, 5 * MS, phase=1 * MS, first_id=100)
    assert [(p.id, p.source, p.generated_at, p.size_bits) for p in pkts] == [
        (100, 3, 1 * MS, 432), (101, 3, 6 * MS, 432)]


def test_arrival_phase_bounds():
    with pytest.raises(ValueError):
        list(arrival_times(10, 5, 5))
    with pytest.raises(ValueError):
        list(arrival_times(10, 0, 0))


@pytest.mark.parametrize("n,interval,load,saturated", [
    (1, 0.005, 86_400, False),
    (8, 0.005, 691_200, True),
    (8, 0.050, 69_120, False),
])
def test_offered_load(n, interval, load, saturated):
    result = offered_load(n, 432, interval, 250_000)
    assert result.bits_per_second == pytest.approx(load)
    assert result.saturated is saturated


def test_record_lone_cdma_packet():
    p = Packet(0, 0, 0)
    p.tx_start = 0
    c = Collector()
    c.on_generated(0)
    r = c.record_delivery(p, 1_728_000, 7)
    assert r.delay == 1_728_007
    assert (r.queuing, r.access, r.transmission, r.propagation) == (0, 0, 1_728_000, 7)


def test_record_degenerate_zero_delay():
    r = make_record(Packet(1, 0, 50), 50, 0, 0, 0, 0)
    assert r.delay == 0


def test_record_component_mismatch_is_error():
    with pytest.raises(SimulationError):
        make_record(Packet(1, 0, 0), 100, 10, 10, 10, 10)


def test_record_negative_component_is_error():
    with pytest.raises(SimulationError):
        make_record(Packet(1, 0, 0), 100, -5, 0, 105, 0)


def _fake_records(delays_ns):
    return [make_record(Packet(i, 0, 0), d, d, 0, 0, 0) for i, d in enumerate(delays_ns)]


def test_summarize_mean():
    cfg = ScenarioConfig(duration_s=10)
    s = summarize(_fake_records([1_000_000_000, 2_000_000_000, 3_000_000_000]), [], 0, cfg, 3)
    assert s.mean_delay == pytest.approx(2.0)
    assert s.max_delay == pytest.approx(3.0)
    assert s.delivery_ratio == 1.0


def test_summarize_nothing_delivered():
    s = summarize([], [], 4, ScenarioConfig(), 4)
    assert s.mean_delay is None and s.delivery_ratio == 0.0


def test_summarize_conservation_failure():
    with pytest.raises(SimulationError):
        summarize(_fake_records([5]), [], 0, ScenarioConfig(), 2)


def test_queue_area_integration():
    c = Collector()
    c.on_generated(0)
    c.on_generated(10)
    c.on_departed(20)
    # 1 packet for [0,10), 2 for [10,20), 1 for [20,30)
    assert c.queue_area(30) == 10 + 20 + 10


def test_oracle_cdma_table5():
    assert analytic_oracles("ds-cdma", ScenarioConfig()) == pytest.approx(0.001728007)


def test_oracle_static_stable():
    cfg = ScenarioConfig(arrival_interval_ms=50)
    assert analytic_oracles("static-tdma", cfg) == pytest.approx(0.006912 + 0.001728 + 7e-9)


def test_oracle_fdma_stable_is_frame():
    cfg = ScenarioConfig(protocol="fdma", arrival_interval_ms=50)
    assert analytic_oracles("fdma", cfg) == pytest.approx(0.013824007)


def test_oracle_saturated_linear_in_horizon():
    a = analytic_oracles("static-tdma", ScenarioConfig(duration_s=15))
    b = analytic_oracles("static-tdma", ScenarioConfig(duration_s=30))
    assert b / a == pytest.approx(2.0, abs=0.01)


def test_oracle_rejects_contention_protocols():
    with pytest.raises(ValueError):
        analytic_oracles("csma-ca", ScenarioConfig())
