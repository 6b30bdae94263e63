"""Pure computational core of the categorization protocol.

Conflict quantification, ambiguity, arbitration-scenario derivation,
finalization, and class-revision marking.  All functions are stateless
and treat category names as opaque identifiers.

The conflict of an assessment array is the ratio of misses to explicit
choices::

    conflict = (choices - K * matches) / choices

where ``choices`` sums the per-assessor set sizes and ``matches`` counts
the categories chosen by every assessor.  The value is kept as an exact
rational: comparing a float against the 1/2 ambiguity threshold would
misclassify the boundary case.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

from . import taxonomy
from .errors import (
    ChoiceOutsideCandidates,
    EmptyEntry,
    InconsistentState,
    RevisionWithoutMark,
)
from .model import (
    AssessmentMatrix,
    AutoFinal,
    ChooseFromUnion,
    ChooseOne,
    ConflictReport,
    ProtocolConfig,
    RevisionDecision,
    Scenario,
    VulnerabilityRecord,
)
from .model import AttackVector
from .taxonomy import NetworkClass


def _entry_sets(entries: Sequence[Sequence[str]]) -> list[frozenset[str]]:
    sets = []
    for i, entry in enumerate(entries):
        s = frozenset(entry)
        if not s:
            raise EmptyEntry(f"assessor {i} has an empty category set")
        sets.append(s)
    return sets


def compute_conflict(matrix: AssessmentMatrix) -> Fraction:
    """Exact conflict value in [0, 1] for a K-assessor matrix."""
    sets = _entry_sets(matrix.entries)
    k = len(sets)
    choices = sum(len(s) for s in sets)
    matches = len(frozenset.intersection(*sets))
    return Fraction(choices - k * matches, choices)


def is_ambiguous(conflict: Fraction, cfg: ProtocolConfig) -> bool:
    """Strictly above the configured threshold."""
    return conflict > cfg.ambiguity_threshold


def derive_scenario(matrix: AssessmentMatrix, cfg: ProtocolConfig) -> Scenario:
    """Map an assessment to one of the three arbitration scenarios."""
    sets = _entry_sets(matrix.entries)
    conflict = compute_conflict(matrix)
    intersection = frozenset.intersection(*sets)
    if is_ambiguous(conflict, cfg):
        return ChooseFromUnion(candidates=frozenset.union(*sets))
    if len(intersection) == 1:
        (category,) = intersection
        return AutoFinal(category=category)
    if len(intersection) >= 2:
        return ChooseOne(candidates=intersection)
    # Unreachable with K=2, N=2, T=1/2; a nondefault threshold can get
    # here, and auto-finalizing without a coincident category is a bug.
    raise InconsistentState(
        f"non-ambiguous assessment of {matrix.library} has an empty intersection"
    )


def conflict_report(matrix: AssessmentMatrix, cfg: ProtocolConfig) -> ConflictReport:
    conflict = compute_conflict(matrix)
    return ConflictReport(
        conflict=conflict,
        ambiguous=is_ambiguous(conflict, cfg),
        scenario=derive_scenario(matrix, cfg),
    )


def finalize(scenario: Scenario, arbitrator_choice: Optional[str] = None) -> str:
    """Final category under a scenario; the arbitrator's pick must come
    from the scenario's candidate set."""
    if isinstance(scenario, AutoFinal):
        return scenario.category
    if arbitrator_choice is None:
        raise ChoiceOutsideCandidates("this scenario requires an arbitrator choice")
    if arbitrator_choice not in scenario.candidates:
        raise ChoiceOutsideCandidates(
            f"{arbitrator_choice!r} was pre-selected by no assessor; "
            f"candidates: {sorted(scenario.candidates)}"
        )
    return arbitrator_choice


def needs_class_revision(
    final_class: NetworkClass, vulns: Sequence[VulnerabilityRecord]
) -> bool:
    """Local libraries with at least one network-vector CVE get a second look."""
    return final_class is NetworkClass.LOCAL and any(
        v.attack_vector is AttackVector.NETWORK for v in vulns
    )


def revise_class(
    current: NetworkClass,
    decision: RevisionDecision,
    comment: str,
    marked: bool = True,
) -> NetworkClass:
    """Apply a class-revision decision to a marked library.

    Escalation is monotone: it only ever moves Local to Remote network.
    The mark persists once set, so re-applying a decision is idempotent.
    """
    if not marked:
        raise RevisionWithoutMark("library was never marked for class revision")
    if not comment.strip():
        raise ValueError("a class-revision decision requires a justifying comment")
    if decision is RevisionDecision.ESCALATE:
        return NetworkClass.REMOTE_NETWORK
    return current


def final_class(
    final_category: str,
    revision: Optional[RevisionDecision],
    partition: taxonomy.ClassPartition = taxonomy.DEFAULT_PARTITION,
) -> NetworkClass:
    """Class of the final category, after any revision decision."""
    base = partition.class_of(final_category)
    if revision is RevisionDecision.ESCALATE:
        return NetworkClass.REMOTE_NETWORK
    return base
