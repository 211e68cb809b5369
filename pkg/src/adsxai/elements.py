"""Bundled periodic-table data: masses, covalent radii, Pauling
electronegativities, and a metal/nonmetal classification.

The table ships as a versioned JSON asset whose checksum is verified on
load; featurization reports the asset version so results are traceable
to the exact numbers used.
"""
from __future__ import annotations

import hashlib
import json
from functools import lru_cache
from importlib import resources

from .errors import NoElectronegativity, UnknownElement


@lru_cache(maxsize=1)
def _load():
    text = resources.files("adsxai.data").joinpath("element_table.json").read_text()
    doc = json.loads(text)
    payload = json.dumps(doc["elements"], sort_keys=True, separators=(",", ":"))
    digest = hashlib.sha256(payload.encode()).hexdigest()
    if digest != doc["sha256"]:
        raise RuntimeError(
            f"element table checksum mismatch: expected {doc['sha256']}, got {digest}"
        )
    return doc


def table_version() -> str:
    return _load()["version"]


def table_checksum() -> str:
    return _load()["sha256"]


def normalize_symbol(symbol: str) -> str:
    """Case-normalize a chemical symbol ('cu' -> 'Cu'); raise if unknown."""
    sym = symbol.strip().capitalize()
    if sym not in _load()["elements"]:
        raise UnknownElement(f"unknown element symbol {symbol!r}")
    return sym


def atomic_number(symbol: str) -> int:
    return _load()["elements"][normalize_symbol(symbol)]["number"]


def atomic_mass(symbol: str) -> float:
    return _load()["elements"][normalize_symbol(symbol)]["mass"]


def covalent_radius(symbol: str) -> float:
    return _load()["elements"][normalize_symbol(symbol)]["covalent_radius"]


def electronegativity(symbol: str) -> float:
    """Pauling electronegativity; noble gases etc. have no tabulated value."""
    sym = normalize_symbol(symbol)
    value = _load()["elements"][sym]["electronegativity"]
    if value is None:
        raise NoElectronegativity(f"no Pauling electronegativity tabulated for {sym}")
    return float(value)


def is_metal(symbol: str) -> bool:
    """True for alkali, alkaline-earth, transition, post-transition,
    lanthanide, and actinide elements."""
    return _load()["elements"][normalize_symbol(symbol)]["is_metal"]
