"""Core domain records: libraries, sources, assessments, vulnerabilities,
and the finalized per-library dataset row.

Records are plain immutable values; topics are carried as their canonical
name strings (validated at the boundaries) so the computational core can
treat them as opaque identifiers.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence
from urllib.parse import urlparse

from .errors import MalformedCoordinate
from .taxonomy import NetworkClass

CVE_ID_RE = re.compile(r"CVE-\d{4}-\d{4,}")


class AttackVector(Enum):
    NETWORK = "NETWORK"
    ADJACENT = "ADJACENT_NETWORK"
    LOCAL = "LOCAL"
    PHYSICAL = "PHYSICAL"

    @classmethod
    def parse(cls, text: str) -> "AttackVector":
        # NVD spells the second value ADJACENT_NETWORK; sheets may carry
        # either form.
        normalized = text.strip().upper()
        if normalized == "ADJACENT":
            return cls.ADJACENT
        return cls(normalized)

    @property
    def short(self) -> str:
        return "ADJACENT" if self is AttackVector.ADJACENT else self.value


@dataclass(frozen=True)
class LibraryCoordinate:
    """Ecosystem-scoped identifier of a library (the ``group:artifact`` pair)."""

    group: str
    artifact: str
    ecosystem: str = "maven"

    def __post_init__(self) -> None:
        for part in (self.group, self.artifact):
            if not part or any(c.isspace() for c in part):
                raise MalformedCoordinate(
                    f"group/artifact must be non-empty without whitespace: {part!r}"
                )

    def rendered(self) -> str:
        return f"{self.group}:{self.artifact}"

    def __str__(self) -> str:
        return self.rendered()


def parse_coordinate(line: str, ecosystem: str = "maven") -> LibraryCoordinate:
    """Parse one ``group:artifact`` line, trimming surrounding whitespace."""
    text = line.strip()
    if text.count(":") != 1:
        raise MalformedCoordinate(f"expected exactly one colon: {line!r}")
    group, artifact = (part.strip() for part in text.split(":"))
    if not group or not artifact:
        raise MalformedCoordinate(f"empty group or artifact: {line!r}")
    return LibraryCoordinate(group=group, artifact=artifact, ecosystem=ecosystem)


def validate_url(url: str) -> str:
    """Accept only syntactically valid, publicly addressable http(s) links."""
    from .errors import InvalidUrl

    parsed = urlparse(url.strip())
    if parsed.scheme not in ("http", "https") or not parsed.netloc:
        raise InvalidUrl(f"not a public http(s) URL: {url!r}")
    return url.strip()


@dataclass(frozen=True)
class SourceSet:
    """Up to four descriptive links per library; blanks mean 'not found'."""

    registry_entry: Optional[str] = None
    repository: Optional[str] = None
    website: Optional[str] = None
    wiki_doc: Optional[str] = None

    KINDS = ("registry_entry", "repository", "website", "wiki_doc")

    def __post_init__(self) -> None:
        for kind in self.KINDS:
            url = getattr(self, kind)
            if url is not None:
                object.__setattr__(self, kind, validate_url(url))

    def present(self) -> dict[str, str]:
        return {k: v for k in self.KINDS if (v := getattr(self, k)) is not None}


def _validate_score(score: Optional[float], name: str) -> None:
    if score is None:
        return
    if not (0.0 <= score <= 10.0):
        raise ValueError(f"{name} out of [0.0, 10.0]: {score}")
    # Published scores carry one decimal; anything finer signals a bad import.
    if abs(score * 10 - round(score * 10)) > 1e-9:
        raise ValueError(f"{name} has more than one decimal: {score}")


@dataclass(frozen=True)
class VulnerabilityRecord:
    """A CVE attached to a library, with selection-time and NVD scores."""

    cve_id: str
    cvss_selection: Optional[float] = None
    cvss_nvd: Optional[float] = None
    attack_vector: Optional[AttackVector] = None
    affected_version: Optional[str] = None

    def __post_init__(self) -> None:
        if not CVE_ID_RE.fullmatch(self.cve_id):
            raise ValueError(f"malformed CVE id: {self.cve_id!r}")
        _validate_score(self.cvss_selection, "cvss_selection")
        _validate_score(self.cvss_nvd, "cvss_nvd")


def filter_by_severity(
    libs: Sequence[tuple[LibraryCoordinate, Sequence[VulnerabilityRecord]]],
    floor: float = 7.0,
) -> list[LibraryCoordinate]:
    """Keep libraries with at least one selection-time score >= floor.

    Retained libraries keep all their records, including any whose NVD
    score later falls below the floor; this only filters the library list.
    """
    kept = []
    for coordinate, records in libs:
        if any(r.cvss_selection is not None and r.cvss_selection >= floor for r in records):
            kept.append(coordinate)
    return kept


@dataclass(frozen=True)
class Assessment:
    """One assessor's categorization of one library."""

    assessor_id: str
    choices: tuple[str, ...]
    done: bool = False
    comment: Optional[str] = None

    def __post_init__(self) -> None:
        if not 1 <= len(self.choices) <= 2:
            raise ValueError(f"choices must hold 1 or 2 categories: {self.choices}")
        if len(set(self.choices)) != len(self.choices):
            raise ValueError(f"duplicate category in choices: {self.choices}")


@dataclass(frozen=True)
class ProtocolConfig:
    """Knobs of the protocol; defaults reproduce the reference setting."""

    assessors: int = 2                      # K
    max_choices: int = 2                    # N
    ambiguity_threshold: Fraction = Fraction(1, 2)  # T
    severity_floor: float = 7.0

    def __post_init__(self) -> None:
        if self.assessors < 2:
            raise ValueError("at least two assessors are required")
        if self.max_choices < 1:
            raise ValueError("max_choices must be >= 1")
        t = Fraction(self.ambiguity_threshold)
        if not (0 <= t < 1):
            raise ValueError("ambiguity threshold must lie in [0, 1)")
        object.__setattr__(self, "ambiguity_threshold", t)


@dataclass(frozen=True)
class AssessmentMatrix:
    """Per-library array of K category sets, one per assessor, in a fixed
    assessor order.  Entry order within a set preserves the assessor's
    entry order (the pair-reduction rule depends on it)."""

    library: LibraryCoordinate
    entries: tuple[tuple[str, ...], ...]

    def __post_init__(self) -> None:
        if len(self.entries) < 2:
            raise ValueError("an assessment matrix needs K >= 2 assessors")

    @property
    def k(self) -> int:
        return len(self.entries)


# --- arbitration scenarios ----------------------------------------------------

@dataclass(frozen=True)
class AutoFinal:
    """Single coincident category; no arbitration needed."""

    category: str


@dataclass(frozen=True)
class ChooseOne:
    """Coincident categories; arbitration picks among them, no third allowed."""

    candidates: frozenset[str]


@dataclass(frozen=True)
class ChooseFromUnion:
    """Ambiguous; arbitration picks from the union of all choices."""

    candidates: frozenset[str]


Scenario = AutoFinal | ChooseOne | ChooseFromUnion


@dataclass(frozen=True)
class ConflictReport:
    """Outcome of the point-wise conflict metric for one library."""

    conflict: Fraction
    ambiguous: bool
    scenario: Scenario


@dataclass(frozen=True)
class ArbitrationRecord:
    arbitrator_id: str
    final_category: str
    revised_class: NetworkClass
    revision_marked: bool
    comment: str = ""


class RevisionDecision(Enum):
    KEEP = "KEEP"
    ESCALATE = "ESCALATE"


@dataclass(frozen=True)
class DatasetRow:
    """The 20 logical columns (A-T) of the arbitration sheet for one library.

    Exactly one of coincident_category / arbitrated_category is populated
    once finalized, and final_category equals the populated one.
    """

    coordinate: str                              # A
    assessor1_category: Optional[str] = None     # B
    assessor1_alternative: Optional[str] = None  # C
    assessor2_category: Optional[str] = None     # D
    assessor2_alternative: Optional[str] = None  # E
    assessor1_done: bool = False                 # F
    assessor2_done: bool = False                 # G
    choices: Optional[int] = None                # H  total explicit choices
    matches: Optional[int] = None                # I  coincident category count
    conflict: Optional[Fraction] = None          # J  exact value
    ambiguous: Optional[bool] = None             # L  (K renders J as decimal)
    coincident_category: Optional[str] = None    # M
    arbitrated_category: Optional[str] = None    # N
    final_category: Optional[str] = None         # O
    category_class: Optional[NetworkClass] = None     # P
    av_network: Optional[bool] = None            # Q
    revision_decision: Optional[RevisionDecision] = None  # R
    final_class: Optional[NetworkClass] = None   # S
    comment: str = ""                            # T

    def __post_init__(self) -> None:
        if self.final_category is not None:
            populated = [
                c
                for c in (self.coincident_category, self.arbitrated_category)
                if c is not None
            ]
            if len(populated) != 1 or populated[0] != self.final_category:
                raise ValueError(
                    "final category must equal the single populated "
                    "coincident/arbitrated column"
                )

    def assessor_choices(self) -> tuple[tuple[str, ...], tuple[str, ...]]:
        first = tuple(c for c in (self.assessor1_category, self.assessor1_alternative) if c)
        second = tuple(c for c in (self.assessor2_category, self.assessor2_alternative) if c)
        return first, second


@dataclass(frozen=True)
class NvdResponse:
    """Normalized result of one NVD CVE lookup."""

    cve_id: str
    base_score: Optional[float]
    attack_vector: Optional[AttackVector]
    raw_payload: bytes = b""


@dataclass(frozen=True)
class SourceRegistryRow:
    coordinate: LibraryCoordinate
    sources: SourceSet = field(default_factory=SourceSet)
