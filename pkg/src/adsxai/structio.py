"""Ingestion of adsorbate-catalyst structures and per-system metadata.

Two on-disk formats are supported: extended XYZ (with a mandatory
per-atom integer tag column and key=value metadata on the comment line)
and SystemJson (one top-level array of system objects). Tags follow the
OC20 convention: 0 = subsurface, 1 = surface, 2 = adsorbate.

Metadata fields absent from a file are stored as NaN and tracked in
SystemMetadata.missing; downstream featurization drops such records
rather than imputing.
"""
from __future__ import annotations

import json
import logging
import math
import re
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

import numpy as np

from . import elements
from .errors import (
    DuplicateSystemId,
    MalformedFile,
    MissingEnergy,
    MissingTagColumn,
)

log = logging.getLogger(__name__)

NAN = float("nan")


class Tag(Enum):
    SUBSURFACE = 0
    SURFACE = 1
    ADSORBATE = 2


@dataclass(frozen=True)
class Atom:
    element: str
    position: tuple[float, float, float]
    tag: Tag

    def __post_init__(self):
        object.__setattr__(self, "element", elements.normalize_symbol(self.element))
        if not all(math.isfinite(c) for c in self.position):
            raise ValueError(f"non-finite position for atom {self.element}")


@dataclass
class AtomicStructure:
    atoms: list[Atom]
    cell: np.ndarray  # 3x3, rows are lattice vectors (Angstrom)
    periodic_flags: tuple[bool, bool, bool]

    def __post_init__(self):
        self.cell = np.asarray(self.cell, dtype=float).reshape(3, 3)
        tags = [a.tag for a in self.atoms]
        if Tag.ADSORBATE not in tags or Tag.SURFACE not in tags:
            raise ValueError("structure needs at least one adsorbate and one surface atom")
        if any(self.periodic_flags) and abs(np.linalg.det(self.cell)) < 1e-12:
            raise ValueError("periodic structure has a singular cell")

    @property
    def positions(self) -> np.ndarray:
        return np.array([a.position for a in self.atoms], dtype=float)

    def indices(self, tag: Tag) -> list[int]:
        return [i for i, a in enumerate(self.atoms) if a.tag is tag]


# numeric metadata fields that default to NaN when absent from a file
_NUMERIC_FIELDS = (
    "potential_energy",
    "reference_energy",
    "band_gap",
    "formation_energy",
    "bulk_density",
)


@dataclass
class SystemMetadata:
    system_id: str
    potential_energy: float = NAN
    reference_energy: float = NAN
    band_gap: float = NAN
    formation_energy: float = NAN
    space_group: int | None = None
    miller_index: tuple[int, int, int] | None = None
    bulk_density: float = NAN
    adsorbate_smiles: str | None = None
    missing: frozenset[str] = field(default_factory=frozenset)

    def __post_init__(self):
        missing = set(self.missing)
        for name in _NUMERIC_FIELDS:
            if math.isnan(getattr(self, name)):
                missing.add(name)
        if self.space_group is None:
            missing.add("space_group")
        elif not 1 <= self.space_group <= 230:
            raise ValueError(f"space_group {self.space_group} outside [1, 230]")
        if self.miller_index is None:
            missing.add("miller_index")
        if not math.isnan(self.band_gap) and self.band_gap < 0:
            raise ValueError(f"negative band_gap {self.band_gap}")
        for name in ("potential_energy", "reference_energy", "band_gap",
                     "formation_energy", "bulk_density"):
            value = getattr(self, name)
            if not math.isnan(value) and not math.isfinite(value):
                raise ValueError(f"non-finite {name}")
        self.missing = frozenset(missing)


@dataclass
class SystemRecord:
    structure: AtomicStructure
    metadata: SystemMetadata


def adsorption_energy(meta: SystemMetadata) -> float:
    """Label energy: potential energy minus reference energy (eV)."""
    if "potential_energy" in meta.missing or "reference_energy" in meta.missing:
        raise MissingEnergy(f"system {meta.system_id}: potential/reference energy missing")
    return meta.potential_energy - meta.reference_energy


# ---------------------------------------------------------------------------
# extended XYZ

_KEYVAL_RE = re.compile(r'([A-Za-z_][A-Za-z0-9_\-]*)=("([^"]*)"|\S+)')


def _parse_comment_line(line: str) -> dict[str, str]:
    out = {}
    for m in _KEYVAL_RE.finditer(line):
        key, raw, quoted = m.group(1), m.group(2), m.group(3)
        out[key] = quoted if quoted is not None else raw
    return out


def _parse_properties(spec: str, lineno: int):
    """Split an extxyz Properties spec into (name, type, ncols) triples."""
    parts = spec.split(":")
    if len(parts) % 3 != 0:
        raise MalformedFile(f"line {lineno}: bad Properties spec {spec!r}")
    cols = []
    for i in range(0, len(parts), 3):
        try:
            cols.append((parts[i], parts[i + 1], int(parts[i + 2])))
        except ValueError:
            raise MalformedFile(f"line {lineno}: bad Properties spec {spec!r}") from None
    return cols


def _float_or_nan(kv: dict, key: str, where: str) -> float:
    if key not in kv:
        return NAN
    try:
        return float(kv[key])
    except ValueError:
        raise MalformedFile(f"{where}: non-numeric {key}={kv[key]!r}") from None


def _parse_extxyz(path: Path) -> list[SystemRecord]:
    lines = path.read_text().splitlines()
    records = []
    i = 0
    frame = 0
    while i < len(lines):
        if not lines[i].strip():
            i += 1
            continue
        try:
            natoms = int(lines[i].strip())
        except ValueError:
            raise MalformedFile(f"line {i + 1}: expected atom count, got {lines[i]!r}") from None
        if natoms <= 0:
            raise MalformedFile(f"line {i + 1}: nonpositive atom count {natoms}")
        if i + 1 + natoms >= len(lines) + 1 and i + 1 >= len(lines):
            raise MalformedFile(f"line {i + 1}: truncated frame header")
        if i + 1 >= len(lines):
            raise MalformedFile(f"line {i + 1}: missing comment line")
        comment_no = i + 2
        kv = _parse_comment_line(lines[i + 1])

        if "Properties" not in kv:
            raise MalformedFile(f"line {comment_no}: missing Properties spec")
        cols = _parse_properties(kv["Properties"], comment_no)
        names = [c[0] for c in cols]
        if "species" not in names or "pos" not in names:
            raise MalformedFile(f"line {comment_no}: Properties must include species and pos")
        tag_name = "tag" if "tag" in names else ("tags" if "tags" in names else None)
        if tag_name is None:
            raise MissingTagColumn(f"line {comment_no}: no per-atom tag column")

        offsets = {}
        off = 0
        for name, _type, ncols in cols:
            offsets[name] = off
            off += ncols
        ncols_total = off

        if "Lattice" in kv:
            values = kv["Lattice"].replace(",", " ").split()
            if len(values) != 9:
                raise MalformedFile(f"line {comment_no}: Lattice needs 9 numbers")
            cell = np.array([float(v) for v in values]).reshape(3, 3)
        else:
            cell = np.zeros((3, 3))
        pbc = (True, True, True)
        if "pbc" in kv:
            flags = kv["pbc"].replace(",", " ").split()
            if len(flags) != 3:
                raise MalformedFile(f"line {comment_no}: pbc needs 3 flags")
            pbc = tuple(f.upper() in ("T", "TRUE", "1") for f in flags)
        if "Lattice" not in kv:
            pbc = (False, False, False)

        atoms = []
        if i + 2 + natoms > len(lines):
            raise MalformedFile(f"line {i + 1}: frame declares {natoms} atoms but file ends early")
        for k in range(natoms):
            lineno = i + 3 + k
            parts = lines[i + 2 + k].split()
            if len(parts) < ncols_total:
                raise MalformedFile(f"line {lineno}: expected {ncols_total} columns, got {len(parts)}")
            sym = parts[offsets["species"]]
            p0 = offsets["pos"]
            try:
                xyz = tuple(float(v) for v in parts[p0:p0 + 3])
                tag_val = int(parts[offsets[tag_name]])
            except ValueError:
                raise MalformedFile(f"line {lineno}: non-numeric atom data") from None
            try:
                tag = Tag(tag_val)
            except ValueError:
                raise MalformedFile(f"line {lineno}: tag must be 0/1/2, got {tag_val}") from None
            atoms.append(Atom(sym, xyz, tag))

        meta = _metadata_from_kv(kv, default_id=f"{path.stem}-frame{frame}", where=f"line {comment_no}")
        try:
            structure = AtomicStructure(atoms, cell, pbc)
        except ValueError as exc:
            raise MalformedFile(f"frame {frame}: {exc}") from None
        records.append(SystemRecord(structure, meta))
        i += 2 + natoms
        frame += 1
    if not records:
        raise MalformedFile("file contains no frames")
    return records


def _metadata_from_kv(kv: dict, default_id: str, where: str) -> SystemMetadata:
    system_id = kv.get("system_id", default_id)
    sg = None
    if "space_group" in kv:
        try:
            sg = int(kv["space_group"])
        except ValueError:
            raise MalformedFile(f"{where}: non-integer space_group") from None
    miller = None
    if "miller_index" in kv:
        parts = str(kv["miller_index"]).replace(",", " ").split()
        if len(parts) != 3:
            raise MalformedFile(f"{where}: miller_index needs 3 integers")
        try:
            miller = tuple(int(p) for p in parts)
        except ValueError:
            raise MalformedFile(f"{where}: non-integer miller_index") from None
    try:
        return SystemMetadata(
            system_id=system_id,
            potential_energy=_float_or_nan(kv, "potential_energy", where),
            reference_energy=_float_or_nan(kv, "reference_energy", where),
            band_gap=_float_or_nan(kv, "band_gap", where),
            formation_energy=_float_or_nan(kv, "formation_energy", where),
            space_group=sg,
            miller_index=miller,
            bulk_density=_float_or_nan(kv, "bulk_density", where),
            adsorbate_smiles=kv.get("adsorbate_smiles"),
        )
    except ValueError as exc:
        raise MalformedFile(f"{where}: {exc}") from None


# ---------------------------------------------------------------------------
# SystemJson

_KNOWN_ENTRY_KEYS = {"system_id", "cell", "pbc", "atoms", "metadata"}
_KNOWN_META_KEYS = {
    "potential_energy", "reference_energy", "band_gap", "formation_energy",
    "space_group", "miller_index", "bulk_density", "adsorbate_smiles",
}


def _parse_system_json(path: Path) -> list[SystemRecord]:
    try:
        doc = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise MalformedFile(f"{path}: invalid JSON ({exc})") from None
    if not isinstance(doc, list):
        raise MalformedFile(f"{path}: top level must be an array of systems")
    records = []
    for idx, entry in enumerate(doc):
        where = f"entry {idx}"
        if not isinstance(entry, dict):
            raise MalformedFile(f"{where}: system must be an object")
        for key in entry:
            if key not in _KNOWN_ENTRY_KEYS:
                log.warning("%s: ignoring unknown key %r", where, key)
        try:
            cell = np.array(entry["cell"], dtype=float).reshape(3, 3)
            pbc = tuple(bool(b) for b in entry["pbc"])
            raw_atoms = entry["atoms"]
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedFile(f"{where}: {exc}") from None
        if len(pbc) != 3:
            raise MalformedFile(f"{where}: pbc needs 3 booleans")
        atoms = []
        for k, a in enumerate(raw_atoms):
            try:
                tag = Tag(int(a["tag"]))
            except (KeyError, ValueError) as exc:
                raise MalformedFile(f"{where}, atom {k}: bad tag ({exc})") from None
            try:
                atoms.append(Atom(a["el"], (float(a["x"]), float(a["y"]), float(a["z"])), tag))
            except (KeyError, ValueError) as exc:
                raise MalformedFile(f"{where}, atom {k}: {exc}") from None

        meta_kv = dict(entry.get("metadata", {}))
        for key in meta_kv:
            if key not in _KNOWN_META_KEYS:
                log.warning("%s: ignoring unknown metadata key %r", where, key)
        kv = {k: v for k, v in meta_kv.items() if k in _KNOWN_META_KEYS and v is not None}
        if "miller_index" in kv:
            kv["miller_index"] = " ".join(str(int(v)) for v in kv["miller_index"])
        kv = {k: str(v) if k != "adsorbate_smiles" else v for k, v in kv.items()}
        if "system_id" in entry:
            kv["system_id"] = str(entry["system_id"])
        meta = _metadata_from_kv(kv, default_id=f"{path.stem}-{idx}", where=where)
        try:
            structure = AtomicStructure(atoms, cell, pbc)
        except ValueError as exc:
            raise MalformedFile(f"{where}: {exc}") from None
        records.append(SystemRecord(structure, meta))
    if not records:
        raise MalformedFile(f"{path}: empty system array")
    return records


def write_system_json(records: list[SystemRecord], path) -> None:
    """Serialize records to the SystemJson format (round-trip safe)."""
    out = []
    for rec in records:
        meta = rec.metadata
        entry = {
            "system_id": meta.system_id,
            "cell": [float(v) for v in rec.structure.cell.reshape(9)],
            "pbc": list(rec.structure.periodic_flags),
            "atoms": [
                {"el": a.element, "x": a.position[0], "y": a.position[1],
                 "z": a.position[2], "tag": a.tag.value}
                for a in rec.structure.atoms
            ],
            "metadata": {},
        }
        md = entry["metadata"]
        for name in _NUMERIC_FIELDS:
            value = getattr(meta, name)
            if not math.isnan(value):
                md[name] = value
        if meta.space_group is not None:
            md["space_group"] = meta.space_group
        if meta.miller_index is not None:
            md["miller_index"] = list(meta.miller_index)
        if meta.adsorbate_smiles is not None:
            md["adsorbate_smiles"] = meta.adsorbate_smiles
        out.append(entry)
    Path(path).write_text(json.dumps(out, indent=1) + "\n")


# ---------------------------------------------------------------------------
# top-level parse + filters

def parse_structure_file(path, format: str = "auto") -> list[SystemRecord]:
    """Parse a structure file into SystemRecords.

    format is one of 'extxyz', 'json', or 'auto' (by file extension).
    system_ids must be unique within the file.
    """
    path = Path(path)
    if format == "auto":
        format = "json" if path.suffix.lower() == ".json" else "extxyz"
    if format == "json":
        records = _parse_system_json(path)
    elif format == "extxyz":
        records = _parse_extxyz(path)
    else:
        raise ValueError(f"unknown format {format!r}")
    seen = set()
    for rec in records:
        sid = rec.metadata.system_id
        if sid in seen:
            raise DuplicateSystemId(f"system_id {sid!r} appears more than once")
        seen.add(sid)
    return records


def _adsorbate_elements(rec: SystemRecord) -> list[str]:
    return [a.element for a in rec.structure.atoms if a.tag is Tag.ADSORBATE]


def _is_oxy_hydro_c1(rec: SystemRecord) -> bool:
    els = _adsorbate_elements(rec)
    return all(e in ("H", "O", "C") for e in els) and els.count("C") <= 1


def _is_hydrogen_on_metal(rec: SystemRecord) -> bool:
    if _adsorbate_elements(rec) != ["H"]:
        return False
    slab = [a.element for a in rec.structure.atoms if a.tag is not Tag.ADSORBATE]
    return all(elements.is_metal(e) for e in slab)


_FILTERS = {
    "all": lambda rec: True,
    "ohc1": _is_oxy_hydro_c1,
    "h-metal": _is_hydrogen_on_metal,
}


def filter_subset(records: list[SystemRecord], rule: str) -> list[SystemRecord]:
    """Apply a dataset subsetting rule.

    'ohc1' keeps adsorbates made of H/O plus at most one C; 'h-metal'
    keeps single-H adsorbates on all-metal slabs; 'all' is the identity.
    An empty result is a warning, not an error.
    """
    if not records:
        raise ValueError("filter_subset needs a non-empty record list")
    if rule not in _FILTERS:
        raise ValueError(f"unknown filter rule {rule!r} (choose from {sorted(_FILTERS)})")
    kept = [rec for rec in records if _FILTERS[rule](rec)]
    if not kept:
        log.warning("filter %r kept no records", rule)
    return kept
