"""Geometric write-once memory codes and their multilevel-cell extensions."""

from __future__ import annotations

__version__ = "0.1.0"

from .geometry import Flat, affine_span, enumerate_flats, num_mu_flats, pg_counts
from .rm_codes import BinaryCode, hamming_code, reed_muller
from .wom_core import WomCode, encode_sequence, rivest_shamir
from .geo_wom import eg_code, pg22_code, verify_write_count
from .multilevel import LiftedCode, worst_case_writes

__all__ = [
    "BinaryCode",
    "Flat",
    "LiftedCode",
    "WomCode",
    "affine_span",
    "eg_code",
    "encode_sequence",
    "enumerate_flats",
    "hamming_code",
    "num_mu_flats",
    "pg22_code",
    "pg_counts",
    "reed_muller",
    "rivest_shamir",
    "verify_write_count",
    "worst_case_writes",
]
