"""FAIR compliance scoring for dataset metadata records.

A metadata record (a flat JSON object, DCAT or DataCite flavored) is
checked against a fixed table of 18 element presence checks spread over
the four FAIR areas: 6 for findability, 5 for accessibility, 3 for
interoperability and 4 for reusability.  An element counts as fulfilled
when the key is present with a non-empty value; for DCAT the search also
descends into ``distribution`` entries, where access URLs and formats
conventionally live.  Elements serving several areas (``format``,
``conformsTo``, ...) are counted once per area.  The overall score is the
fulfilled fraction of all 18 checks, as a percentage.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

PRINCIPLES = ("findable", "accessible", "interoperable", "reusable")


class MetadataError(ValueError):
    """Raised for unreadable metadata files or unknown dialects."""


@dataclass(frozen=True)
class CheckRow:
    principle: str
    code: str       # GO-FAIR style principle code, e.g. "F1"
    element: str    # metadata key whose presence is checked
    rationale: str


@dataclass(frozen=True)
class CheckTable:
    dialect: str
    rows: tuple[CheckRow, ...]

    def elements_by_principle(self) -> dict[str, tuple[str, ...]]:
        out: dict[str, list[str]] = {p: [] for p in PRINCIPLES}
        for row in self.rows:
            if row.element not in out[row.principle]:
                out[row.principle].append(row.element)
        return {p: tuple(v) for p, v in out.items()}


_DCAT = CheckTable(
    "dcat",
    (
        CheckRow("findable", "F1", "identifier", "a stable identifier makes the record citable"),
        CheckRow("findable", "F2", "title", "a human-readable name supports searching"),
        CheckRow("findable", "F2", "description", "free-text context supports discovery"),
        CheckRow("findable", "F2", "keyword", "tags feed catalog search indexes"),
        CheckRow("findable", "F2", "theme", "thematic categories group related records"),
        CheckRow("findable", "F4", "landingPage", "a landing page registers the record on the web"),
        CheckRow("accessible", "A1", "distribution", "a distribution block says how to obtain the data"),
        CheckRow("accessible", "A1", "downloadURL", "a direct URL makes retrieval mechanical"),
        CheckRow("accessible", "A1.1", "format", "the format tells clients which protocol or parser applies"),
        CheckRow("accessible", "A1.2", "accessLevel", "the access level states whether authorization is needed"),
        CheckRow("accessible", "A2", "publisher", "a publisher contact outlives any single URL"),
        CheckRow("interoperable", "I1", "format", "a declared representation enables machine exchange"),
        CheckRow("interoperable", "I1", "conformsTo", "a schema reference fixes the record's vocabulary"),
        CheckRow("interoperable", "I3", "references", "qualified links situate the data among other resources"),
        CheckRow("reusable", "R1.1", "license", "reuse requires an explicit license"),
        CheckRow("reusable", "R1.2", "programCode", "program provenance records who produced the data"),
        CheckRow("reusable", "R1.2", "bureauCode", "agency provenance records institutional custody"),
        CheckRow("reusable", "R1.3", "conformsTo", "conformance to community standards eases reuse"),
    ),
)

# DataCite kernel equivalents of the same checks; chosen to keep the
# 6/5/3/4 area totals aligned with the DCAT table.
_DATACITE = CheckTable(
    "datacite",
    (
        CheckRow("findable", "F1", "identifier", "a DOI or similar makes the record citable"),
        CheckRow("findable", "F2", "titles", "titles support searching"),
        CheckRow("findable", "F2", "descriptions", "free-text context supports discovery"),
        CheckRow("findable", "F2", "subjects", "subject terms feed search indexes"),
        CheckRow("findable", "F2", "creators", "creator names are a primary search field"),
        CheckRow("findable", "F4", "publicationYear", "the year scopes searches and citations"),
        CheckRow("accessible", "A1", "url", "a resolvable URL says where the data lives"),
        CheckRow("accessible", "A2", "publisher", "a publisher contact outlives any single URL"),
        CheckRow("accessible", "A1.1", "formats", "formats tell clients which parser applies"),
        CheckRow("accessible", "A1.2", "rightsList", "rights state whether authorization is needed"),
        CheckRow("accessible", "A1", "dates", "dates qualify availability of the record"),
        CheckRow("interoperable", "I1", "formats", "a declared representation enables machine exchange"),
        CheckRow("interoperable", "I1", "schemaVersion", "the schema version fixes the vocabulary"),
        CheckRow("interoperable", "I3", "relatedIdentifiers", "qualified links to other resources"),
        CheckRow("reusable", "R1.1", "rightsList", "reuse requires explicit rights"),
        CheckRow("reusable", "R1.2", "fundingReferences", "funding provenance records who paid for the data"),
        CheckRow("reusable", "R1.2", "contributors", "contributor roles record custody"),
        CheckRow("reusable", "R1.3", "schemaVersion", "conformance to a schema version eases reuse"),
    ),
)

DIALECTS: dict[str, CheckTable] = {"dcat": _DCAT, "datacite": _DATACITE}


@dataclass(frozen=True)
class MetadataCatalog:
    dialect: str
    entries: dict
    present_keys: tuple[str, ...]


def _non_empty(value) -> bool:
    if value is None:
        return False
    if isinstance(value, (str, list, dict)) and len(value) == 0:
        return False
    return True


def _collect_keys(entries: dict, dialect: str) -> tuple[str, ...]:
    keys = {k for k, v in entries.items() if _non_empty(v)}
    if dialect == "dcat":
        dist = entries.get("distribution")
        items = dist if isinstance(dist, list) else [dist] if isinstance(dist, dict) else []
        for item in items:
            if isinstance(item, dict):
                keys |= {k for k, v in item.items() if _non_empty(v)}
    return tuple(sorted(keys))


def catalog_from_dict(entries: dict, dialect: str = "dcat") -> MetadataCatalog:
    """Wrap an already-parsed metadata object."""
    if dialect not in DIALECTS:
        raise MetadataError(
            f"unknown metadata dialect {dialect!r}; expected one of {sorted(DIALECTS)}"
        )
    if not isinstance(entries, dict):
        raise MetadataError("metadata must be a JSON object at the top level")
    return MetadataCatalog(dialect, entries, _collect_keys(entries, dialect))


def parse_metadata(path: str | Path, dialect: str = "dcat") -> MetadataCatalog:
    """Load a JSON metadata record from ``path``.

    Malformed JSON raises :class:`MetadataError` carrying the parser's
    line and column.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise MetadataError(f"cannot read {path}: {exc}") from exc
    try:
        entries = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MetadataError(
            f"{path}: malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    return catalog_from_dict(entries, dialect)


@dataclass(frozen=True)
class FairScore:
    dialect: str
    per_principle: dict[str, tuple[int, int]]  # principle -> (fulfilled, total)
    fulfilled_elements: dict[str, tuple[str, ...]]
    missing_elements: dict[str, tuple[str, ...]]
    other_keys: tuple[str, ...]
    score_percent: float


def fair_score(catalog: MetadataCatalog) -> FairScore:
    """Score a metadata record against its dialect's check table."""
    table = DIALECTS[catalog.dialect]
    present = set(catalog.present_keys)
    per_principle: dict[str, tuple[int, int]] = {}
    fulfilled: dict[str, tuple[str, ...]] = {}
    missing: dict[str, tuple[str, ...]] = {}
    total_checks = 0
    total_fulfilled = 0
    by_principle = table.elements_by_principle()
    for principle in PRINCIPLES:
        elements = by_principle[principle]
        have = tuple(e for e in elements if e in present)
        lack = tuple(e for e in elements if e not in present)
        per_principle[principle] = (len(have), len(elements))
        fulfilled[principle] = have
        missing[principle] = lack
        total_checks += len(elements)
        total_fulfilled += len(have)
    checked = {row.element for row in table.rows}
    other = tuple(k for k in catalog.present_keys if k not in checked)
    return FairScore(
        dialect=catalog.dialect,
        per_principle=per_principle,
        fulfilled_elements=fulfilled,
        missing_elements=missing,
        other_keys=other,
        score_percent=100.0 * total_fulfilled / total_checks,
    )
