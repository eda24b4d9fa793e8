"""Exact representation-theory toolkit for SL_n over truncated rings F_q[eps]/(eps^r)."""

from ringrep.gfield import FieldElement, FieldTower, frobenius, make_tower
from ringrep.trunc import RingElement, TruncRing, reduce, ring_frobenius, units

__version__ = "0.1.0"

__all__ = [
    "FieldElement",
    "FieldTower",
    "RingElement",
    "TruncRing",
    "frobenius",
    "make_tower",
    "reduce",
    "ring_frobenius",
    "units",
]
