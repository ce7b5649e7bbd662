"""The 34 six-dimensional nilpotent Lie algebras with their published data.

Twenty-four entries carry an adapted half-flat frame and a basis of the
generator space of coherent splittings; ten carry no half-flat structure,
eight of those having a splitting with vanishing h^{0,3}, h^{0,4} (the
published E_1^{0,2} basis pins the computation) and two being the sporadic
derived-length-3 algebras.  Subspace data is compared by span, frames by
exact re-verification; only notation strings are matched literally.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from functools import lru_cache

from .errors import HalfFlatError
from .exterior import Subspace, parse_form, span
from .liealg import (
    LieAlgebra,
    cohomology,
    format_notation,
    parse_notation,
)
from .obstruction import (
    REASON_LEMMA4,
    REASON_THEOREM1,
    STATUS_HALF_FLAT,
    Verdict,
    classify,
    lemma4_verify,
    theorem1_obstructed,
)
from .splitting import e1_term, generator_space, hpq, splitting_from_generator
from .su3 import Frame, forms_from_frame, gram_from_forms, is_half_flat


@dataclass(frozen=True)
class CatalogEntry:
    """One classified algebra with its published witness data."""

    notation: str
    half_flat: bool
    frame_text: str | None = None
    lambda20_texts: tuple | None = None  # None on a half-flat row = all 2-forms
    b1: int | None = None
    b2: int | None = None
    e1_02_texts: tuple | None = None

    @property
    def key(self) -> str:
        return _canonical_key(self.notation)

    def algebra(self) -> LieAlgebra:
        return parse_notation(self.notation)

    def frame(self) -> Frame | None:
        if self.frame_text is None:
            return None
        return Frame.parse(self.frame_text)

    def lambda20_space(self) -> Subspace | None:
        if not self.half_flat:
            return None
        if self.lambda20_texts is None:
            return Subspace.full(6, 2)
        return span([parse_form(t, 6) for t in self.lambda20_texts], n=6, k=2)

    def e1_02_span(self) -> Subspace | None:
        if self.e1_02_texts is None:
            return None
        return span([parse_form(t, 6) for t in self.e1_02_texts], n=6, k=2)

    def to_json_obj(self) -> dict:
        out: dict = {"notation": self.notation, "half_flat": self.half_flat}
        if self.frame_text is not None:
            out["frame"] = [part.strip() for part in self.frame_text.split(",")]
        if self.half_flat:
            texts = self.lambda20_texts
            if texts is None:
                texts = tuple(
                    f"e{i}{j}" for i in range(1, 7) for j in range(i + 1, 7)
                )
            out["lambda20"] = list(texts)
        if self.b1 is not None:
            out["b1"] = self.b1
        if self.b2 is not None:
            out["b2"] = self.b2
        if self.e1_02_texts is not None:
            out["e1_02"] = list(self.e1_02_texts)
        return out


@lru_cache(maxsize=None)
def _canonical_key(notation: str) -> str:
    return format_notation(parse_notation(notation))


_TABLE1 = (
    ("0,0,12,13,23,14", "e1,e5,e2,e4,e3,e6", ("e12",)),
    ("0,0,12,13,23,14+25", "e1-e2,e4,e5,e2,e6,e3", ("e12",)),
    ("0,0,12,13,23,14-25", "e3,e6,e4,e4-e2,-e5,e1+e5", ("e12",)),
    ("0,0,12,13,14+23,24+15", "-e5,e2,e4,e1,r2*(e3-e5),1/2r2*e6", ("e12",)),
    ("0,0,0,12,14,15+23", "e2+e5,e2+e5+e6,e4,e2,e3,e1", ("e12", "e13")),
    ("0,0,0,12,14-23,15+34", "e2,e4,e3,e1,e6,e5", ("e13",)),
    ("0,0,0,12,14,15", "e1,e3,e2,e5,e4,e6", ("e12", "e13")),
    ("0,0,0,12,23,14+35", "e1,e3,e4,e5,e6,e2", ("e13",)),
    ("0,0,0,12,23,14-35", "e1,e3,e2,e6,e5,e4", ("e13",)),
    ("0,0,0,12,13,14+35", "e2,e6,-e3,e4,e1,-e2-e5", ("e13",)),
    ("0,0,0,12,13,14+23", "e2-e6,e1+e5,e4,e1,e6,e3", ("e12", "e13")),
    ("0,0,0,12,13,24", "e1,e6,e2,e3,e4,e5", ("e12", "e23")),
    ("0,0,0,12,13,23", "e1,e4,e2,e5,e3,e6", ("e12", "e13", "e23")),
    ("0,0,0,12,14,15+24", "e1,e3,e2,e4,e3+e5,-e6", ("e12",)),
    ("0,0,0,12,14,15+23+24", "e1,e3,e2,e4-e2,e3+e5,-e6", ("e12",)),
    ("0,0,0,0,12,14+25", "e1-e6,e4,e5,e2,e6,e3", ("e12", "e24")),
    ("0,0,0,0,12,15+34", "e1,e3,e5,e4,e6,e2", ("e13", "e14")),
    ("0,0,0,0,13+42,14+23", "e1,e2,e3,e4,e5,e6",
     ("e12", "-e14+e23", "e13+e24", "e34")),
    ("0,0,0,0,12,14+23", "e1,e3,e2,e4,e6,e5", ("e12", "e13", "e23-e14", "e24")),
    ("0,0,0,0,12,13", "e1,e4,e2,e3,e5,e6", ("e12", "e13", "e14", "e23")),
    ("0,0,0,0,12,34", "e1+e3,e1,e6,e5,e2,e4", ("e13", "e14", "e23", "e24")),
    ("0,0,0,0,0,12+34", "e1,e2,e4,e3,e5,e6",
     ("e13", "e14", "e23", "e24", "-e12+e34")),
    ("0,0,0,0,0,12", "e1,e3,e2,e4,e5,e6",
     ("e12", "e13", "e14", "e15", "e23", "e24", "e25")),
    ("0,0,0,0,0,0", "e1,e2,e3,e4,e5,e6", None),
)

_TABLE2 = (
    ("0,0,12,13,14+23,34+52", 2, 2, None),
    ("0,0,12,13,14,34+52", 2, 2, None),
    ("0,0,12,13,14,15", 2, 3, ("e34", "-e36+e45")),
    ("0,0,12,13,14,23+15", 2, 3, ("e34", "e45-e36")),
    ("0,0,0,12,14,24", 3, 5, ("e34", "e45", "e46")),
    ("0,0,0,12,13+42,14+23", 3, 5, ("e34", "e45+e36", "e46-e35")),
    ("0,0,0,12,14,13+42", 3, 5, ("e34", "e45", "e35+e46")),
    ("0,0,0,12,13+14,24", 3, 5, ("e34", "e45+e35", "e46")),
    ("0,0,0,12,13,14", 3, 6, ("e34", "e35", "e36+e45", "e46")),
    ("0,0,0,0,12,15", 4, 7, ("e34", "e35", "e45", "e56")),
)

CATALOG: tuple[CatalogEntry, ...] = tuple(
    [
        CatalogEntry(notation, True, frame_text=frame, lambda20_texts=l20)
        for notation, frame, l20 in _TABLE1
    ]
    + [
        CatalogEntry(notation, False, b1=b1, b2=b2, e1_02_texts=e1)
        for notation, b1, b2, e1 in _TABLE2
    ]
)


def _validate_catalog(entries) -> None:
    if len(entries) != 34:
        raise HalfFlatError(f"catalog must have 34 entries, found {len(entries)}")
    flats = [e for e in entries if e.half_flat]
    obstructed = [e for e in entries if not e.half_flat]
    if len(flats) != 24 or any(e.frame_text is None for e in flats):
        raise HalfFlatError("expected 24 half-flat entries, all with frames")
    if len(obstructed) != 10:
        raise HalfFlatError("expected 10 obstructed entries")
    with_e1 = [e for e in obstructed if e.e1_02_texts is not None]
    sporadic = [e for e in obstructed if e.e1_02_texts is None]
    if len(with_e1) != 8 or any(e.b2 is None or e.b2 < 3 for e in with_e1):
        raise HalfFlatError("expected 8 entries with b2 >= 3 carrying E1 bases")
    if len(sporadic) != 2 or any(e.b2 != 2 for e in sporadic):
        raise HalfFlatError("expected 2 sporadic entries with b2 = 2")
    keys = [e.key for e in entries]
    if len(set(keys)) != 34:
        raise HalfFlatError("catalog notations are not pairwise distinct")


_validate_catalog(CATALOG)


def find(notation: str, entries=None) -> CatalogEntry | None:
    """Look up an algebra by notation, compared canonically."""
    try:
        key = _canonical_key(notation)
    except HalfFlatError:
        return None
    for entry in entries or CATALOG:
        if entry.key == key:
            return entry
    return None


def catalog_json(entries=None) -> str:
    """Canonical JSON export of the catalog (stable across runs)."""
    data = [e.to_json_obj() for e in (entries or CATALOG)]
    return json.dumps(data, sort_keys=True, separators=(",", ":"))


def catalog_checksum(entries=None) -> str:
    return hashlib.sha256(catalog_json(entries).encode()).hexdigest()


def load_catalog(text: str) -> tuple[CatalogEntry, ...]:
    """Parse an external JSON catalog (same schema as the export)."""
    data = json.loads(text)
    entries = []
    for obj in data:
        entries.append(
            CatalogEntry(
                notation=obj["notation"],
                half_flat=obj["half_flat"],
                frame_text=",".join(obj["frame"]) if "frame" in obj else None,
                lambda20_texts=tuple(obj["lambda20"]) if "lambda20" in obj else None,
                b1=obj.get("b1"),
                b2=obj.get("b2"),
                e1_02_texts=tuple(obj["e1_02"]) if "e1_02" in obj else None,
            )
        )
    return tuple(entries)


@dataclass(frozen=True)
class RowReport:
    """Verification outcome for a catalog row."""

    notation: str
    checks: dict
    passed: bool
    notes: tuple = ()


@dataclass(frozen=True)
class TableReport:
    rows: tuple

    @property
    def all_pass(self) -> bool:
        return all(r.passed for r in self.rows)

    def to_json_obj(self) -> dict:
        return {
            "rows": [
                {
                    "notation": r.notation,
                    "checks": r.checks,
                    "passed": r.passed,
                    "notes": list(r.notes),
                }
                for r in self.rows
            ],
            "all_pass": self.all_pass,
        }


def verify_table1(entries=None) -> TableReport:
    """Re-verify every half-flat row: frame basis, half-flat equations,
    generator-space span, and frame orthonormality."""
    rows = []
    for entry in entries or CATALOG:
        if not entry.half_flat:
            continue
        g = entry.algebra()
        checks: dict = {}
        notes: list[str] = []
        frame = None
        try:
            frame = entry.frame()
            checks["frame_is_basis"] = True
        except HalfFlatError as exc:
            checks["frame_is_basis"] = False
            notes.append(str(exc))
        if frame is not None:
            cert = is_half_flat(g, forms_from_frame(frame))
            checks["half_flat"] = cert.holds
            if not cert.holds:
                notes.append(
                    "discrepancy: d(omega)^omega = "
                    f"{cert.domega_wedge_omega}, d(psi+) = {cert.dpsi_plus}"
                )
            gram = gram_from_forms(frame)
            checks["frame_orthonormal"] = all(
                gram[i][j] == (1 if i == j else 0) for i in range(6) for j in range(6)
            )
        expected = entry.lambda20_space()
        actual = generator_space(g)
        checks["lambda20_matches"] = expected == actual
        if not checks["lambda20_matches"]:
            notes.append(f"generator space is {actual}, table gives {expected}")
        rows.append(
            RowReport(entry.notation, checks, all(checks.values()), tuple(notes))
        )
    return TableReport(tuple(rows))


def verify_table2(entries=None) -> TableReport:
    """Re-verify every obstructed row: Betti numbers, then either the
    vanishing filtration groups with the published E_1^{0,2} basis or the
    sporadic certificate."""
    rows = []
    for entry in entries or CATALOG:
        if entry.half_flat:
            continue
        g = entry.algebra()
        coh = cohomology(g)
        checks = {
            "b1": coh.betti[1] == entry.b1,
            "b2": coh.betti[2] == entry.b2,
        }
        notes: list[str] = []
        if entry.e1_02_texts is not None:
            s = splitting_from_generator(g, parse_form("e12", 6))
            table = hpq(g, s)
            checks["coherent_e12"] = True
            checks["h03_zero"] = table[(0, 3)] == 0
            checks["h04_zero"] = table[(0, 4)] == 0
            computed = span(list(e1_term(g, s).basis_02), n=6, k=2)
            checks["e1_02_span"] = computed == entry.e1_02_span()
            if not checks["e1_02_span"]:
                notes.append(f"computed E_1^(0,2) = {computed}")
        else:
            try:
                lemma4_verify(g)
                checks["lemma4"] = True
            except HalfFlatError as exc:
                checks["lemma4"] = False
                notes.append(str(exc))
        rows.append(
            RowReport(entry.notation, checks, all(checks.values()), tuple(notes))
        )
    return TableReport(tuple(rows))


def classify_all(entries=None) -> list[Verdict]:
    """Classify every catalog algebra, in catalog order."""
    return [classify(entry.algebra()) for entry in (entries or CATALOG)]


def partition_counts(verdicts) -> dict:
    """The three-class summary: half-flat / theorem-1 / lemma-4 counts."""
    counts = {"half_flat": 0, REASON_THEOREM1: 0, REASON_LEMMA4: 0, "other": 0}
    for v in verdicts:
        if v.status == STATUS_HALF_FLAT:
            counts["half_flat"] += 1
        elif v.reason in (REASON_THEOREM1, REASON_LEMMA4):
            counts[v.reason] += 1
        else:
            counts["other"] += 1
    return counts
