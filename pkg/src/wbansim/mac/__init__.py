"""The five access protocols behind one interface (see ``Mac``)."""

from wbansim.mac.base import Mac
from wbansim.mac.csma import CsmaCa, csma_draw_backoff, next_backoff_exponent
from wbansim.mac.dedicated import DsCdma, Fdma
from wbansim.mac.tdma import (
    DynamicTdma,
    StaticTdma,
    dynamic_tdma_build_frame,
    static_tdma_next_tx_start,
    static_tdma_slot_owner,
)
from wbansim.mac.walsh import cdma_decode, cdma_encode, walsh_codes
from wbansim.phy import fdma_per_band_rate

MACS = {
    "static-tdma": StaticTdma,
    "dynamic-tdma": DynamicTdma,
    "fdma": Fdma,
    "csma-ca": CsmaCa,
    "ds-cdma": DsCdma,
}


def make_mac(protocol, sim):
    try:
        cls = MACS[protocol]
    except KeyError:
        raise ValueError(f"unknown protocol {protocol!r}") from None
    return cls(sim)


__all__ = [
    "MACS",
    "CsmaCa",
    "DsCdma",
    "DynamicTdma",
    "Fdma",
    "Mac",
    "StaticTdma",
    "cdma_decode",
    "cdma_encode",
    "csma_draw_backoff",
    "dynamic_tdma_build_frame",
    "fdma_per_band_rate",
    "make_mac",
    "next_backoff_exponent",
    "static_tdma_next_tx_start",
    "static_tdma_slot_owner",
    "walsh_codes",
]
