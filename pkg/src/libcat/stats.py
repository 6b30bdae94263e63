"""Inter-rater agreement, distribution counts, and CVSS statistics.

Numbers are computed over exact rationals and rounded half-up only at
the reporting boundary; binary floats would misround values that land
exactly on a half (e.g. a mean of 7.525).
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from . import taxonomy
from .errors import DegenerateAgreement, EmptyInput
from .model import ConflictReport, AutoFinal, ChooseOne, ChooseFromUnion, DatasetRow


# --- rounding helpers --------------------------------------------------------

def round_half_up(value: Fraction, ndigits: int = 2) -> Decimal:
    """Round an exact rational half-up to ``ndigits`` decimals."""
    scale = 10 ** ndigits
    scaled = value * scale
    units = (scaled.numerator * 2 + scaled.denominator) // (scaled.denominator * 2)
    return Decimal(units).scaleb(-ndigits)


def sqrt_round_half_up(value: Fraction, ndigits: int = 2) -> Decimal:
    """Round sqrt(value) half-up to ``ndigits`` decimals, exactly.

    Works by comparing ``value`` against the squared half-way marks, so a
    square root that lands exactly on a half still rounds up.
    """
    if value < 0:
        raise ValueError("negative variance")
    scale = 10 ** ndigits
    units = round(math.sqrt(float(value)) * scale)
    while value >= Fraction(2 * units + 1, 2 * scale) ** 2:
        units += 1
    while units > 0 and value < Fraction(2 * units - 1, 2 * scale) ** 2:
        units -= 1
    return Decimal(units).scaleb(-ndigits)


def _to_fraction(value: float | str | Fraction | Decimal) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, Decimal):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(Decimal(value))
    # Published CVSS values carry one decimal; snap floats back onto it.
    return Fraction(round(value * 10), 10)


# --- pair reduction and Fleiss' kappa ----------------------------------------

def reduce_pair(a: Sequence[str], b: Sequence[str]) -> tuple[str, str]:
    """Collapse two assessors' (1-2)-category choices to one category each.

    Any coincidence is respected: if the two-choice assessor shares a
    category with the other, both sides keep the shared one.  With no
    coincidence, each side keeps its first-listed choice.
    """
    if not 1 <= len(a) <= 2 or not 1 <= len(b) <= 2:
        raise ValueError("each assessor contributes one or two choices")
    if len(a) == 2:
        x, y = a
        if x in b:
            return (x, x)
        if y in b:
            return (y, y)
        return (x, b[0])
    (x,) = a
    if x in b:
        return (x, x)
    return (x, b[0])


def fleiss_kappa(items: Sequence[tuple[str, str]]) -> float:
    """Fleiss' kappa for n items rated by exactly two raters each.

    Categories are the ones actually appearing in the items; the result
    is computed over exact rationals and therefore deterministic.
    """
    if not items:
        raise EmptyInput("kappa over zero items")
    n = len(items)
    categories = sorted({c for pair in items for c in pair})
    totals = {c: 0 for c in categories}
    agree = 0
    for first, second in items:
        totals[first] += 1
        totals[second] += 1
        if first == second:
            agree += 1
    p_mean = Fraction(agree, n)
    p_expected = sum(
        (Fraction(count, 2 * n) ** 2 for count in totals.values()), Fraction(0)
    )
    if p_expected == 1:
        raise DegenerateAgreement(
            "all raters always chose the single same category; kappa undefined"
        )
    return float((p_mean - p_expected) / (1 - p_expected))


def landis_koch_band(kappa: float) -> str:
    """Qualitative label for a kappa value (standard interpretation bands)."""
    if kappa < 0:
        return "poor"
    if kappa <= 0.20:
        return "slight"
    if kappa <= 0.40:
        return "fair"
    if kappa <= 0.60:
        return "moderate"
    if kappa <= 0.80:
        return "substantial"
    return "almost perfect"


@dataclass(frozen=True)
class AgreementReport:
    kappa: Optional[float]
    reduced_pairs: tuple[tuple[str, str], ...]
    category_universe: tuple[str, ...]

    @property
    def band(self) -> Optional[str]:
        return None if self.kappa is None else landis_koch_band(self.kappa)


def agreement_report(
    choice_pairs: Iterable[tuple[Sequence[str], Sequence[str]]]
) -> AgreementReport:
    """Reduce two-assessor choices and compute kappa over the reduction."""
    reduced = tuple(reduce_pair(a, b) for a, b in choice_pairs)
    universe = tuple(sorted({c for pair in reduced for c in pair}))
    try:
        kappa = fleiss_kappa(reduced)
    except DegenerateAgreement:
        kappa = None
    return AgreementReport(kappa=kappa, reduced_pairs=reduced, category_universe=universe)


# --- distribution counts ------------------------------------------------------

@dataclass(frozen=True)
class ScenarioDistribution:
    auto_final: int
    choose_one: int
    choose_from_union: int

    @property
    def total(self) -> int:
        return self.auto_final + self.choose_one + self.choose_from_union

    def percentages(self) -> dict[str, Decimal]:
        """Shares rounded half-up to one decimal, in percent."""
        if self.total == 0:
            zero = Decimal("0.0")
            return {"auto_final": zero, "choose_one": zero, "choose_from_union": zero}
        return {
            name: round_half_up(Fraction(count * 100, self.total), 1)
            for name, count in (
                ("auto_final", self.auto_final),
                ("choose_one", self.choose_one),
                ("choose_from_union", self.choose_from_union),
            )
        }


def conflict_distribution(reports: Iterable[ConflictReport]) -> ScenarioDistribution:
    auto = one = union = 0
    for report in reports:
        if isinstance(report.scenario, AutoFinal):
            auto += 1
        elif isinstance(report.scenario, ChooseOne):
            one += 1
        elif isinstance(report.scenario, ChooseFromUnion):
            union += 1
        else:  # pragma: no cover - scenario union is closed
            raise TypeError(f"unknown scenario: {report.scenario!r}")
    return ScenarioDistribution(auto, one, union)


def category_counts(rows: Iterable[DatasetRow]) -> dict[str, int]:
    """Finalized rows per category, zero-filled over all 24 topics."""
    counts = {name: 0 for name in taxonomy.topic_names()}
    for row in rows:
        if row.final_category is None:
            continue
        if row.final_category not in counts:
            raise KeyError(f"row carries a non-canonical category: {row.final_category!r}")
        counts[row.final_category] += 1
    return counts


# --- CVSS statistics ----------------------------------------------------------

@dataclass(frozen=True)
class CvssSummary:
    """Five-number report over a non-empty list of CVSS values."""

    n: int
    min: Decimal
    median: Decimal
    max: Decimal
    mean: Decimal
    stdev: Decimal


def cvss_stats(values: Sequence[float | str | Decimal | Fraction]) -> CvssSummary:
    """Min/median/max/mean/population-stdev, rounded half-up to 2 decimals.

    The median of an even-sized list is the mean of the two middle
    elements; the standard deviation divides by n (population form).
    """
    if not values:
        raise EmptyInput("statistics over zero CVSS values")
    exact = sorted(_to_fraction(v) for v in values)
    for v in exact:
        if not 0 <= v <= 10:
            raise ValueError(f"CVSS value out of range: {float(v)}")
    n = len(exact)
    if n % 2:
        median = exact[n // 2]
    else:
        median = (exact[n // 2 - 1] + exact[n // 2]) / 2
    mean = sum(exact, Fraction(0)) / n
    variance = sum(((v - mean) ** 2 for v in exact), Fraction(0)) / n
    return CvssSummary(
        n=n,
        min=round_half_up(exact[0]),
        median=round_half_up(median),
        max=round_half_up(exact[-1]),
        mean=round_half_up(mean),
        stdev=sqrt_round_half_up(variance),
    )


def cvss_by_group(
    rows: Iterable[DatasetRow],
    scores_by_coordinate: Mapping[str, Sequence[float]],
    group_of_row,
) -> dict[str, list[float]]:
    """Collect each finalized row's CVSS values under a grouping key."""
    grouped: dict[str, list[float]] = {}
    for row in rows:
        key = group_of_row(row)
        if key is None:
            continue
        grouped.setdefault(key, []).extend(scores_by_coordinate.get(row.coordinate, ()))
    return {key: values for key, values in grouped.items() if values}


# --- report assembly ----------------------------------------------------------

@dataclass(frozen=True)
class StatsReport:
    """Everything the stats surfaces expose, ready for rendering."""

    agreement: AgreementReport
    distribution: ScenarioDistribution
    counts: dict[str, int]
    cvss_per_category: dict[str, CvssSummary]
    cvss_per_class: dict[str, CvssSummary]
    class_counts: dict[str, int]
    sub_floor_cves: int
    total_cves: int


def build_report(
    rows: Sequence[DatasetRow],
    conflict_reports: Sequence[ConflictReport],
    scores_by_coordinate: Mapping[str, Sequence[float]],
    severity_floor: float = 7.0,
) -> StatsReport:
    finalized = [r for r in rows if r.final_category is not None]
    agreement = agreement_report(
        r.assessor_choices() for r in rows if all(r.assessor_choices())
    )
    by_category = cvss_by_group(
        finalized, scores_by_coordinate, lambda r: r.final_category
    )
    by_class = cvss_by_group(
        finalized,
        scores_by_coordinate,
        lambda r: r.final_class.value if r.final_class else None,
    )
    class_counts: dict[str, int] = {c.value: 0 for c in taxonomy.NetworkClass}
    for row in finalized:
        if row.final_class is not None:
            class_counts[row.final_class.value] += 1
    all_scores = [v for values in scores_by_coordinate.values() for v in values]
    return StatsReport(
        agreement=agreement,
        distribution=conflict_distribution(conflict_reports),
        counts=category_counts(finalized),
        cvss_per_category={k: cvss_stats(v) for k, v in by_category.items()},
        cvss_per_class={k: cvss_stats(v) for k, v in by_class.items()},
        class_counts=class_counts,
        sub_floor_cves=sum(1 for v in all_scores if v < severity_floor),
        total_cves=len(all_scores),
    )


def category_series_csv(counts: Mapping[str, int]) -> str:
    """Chart-ready (category, count) series in canonical topic order."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["category", "count"])
    for name in taxonomy.topic_names():
        writer.writerow([name, counts.get(name, 0)])
    return buf.getvalue()


def scenario_series_csv(distribution: ScenarioDistribution) -> str:
    """Chart-ready (scenario, count, percentage) series."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["scenario", "count", "percentage"])
    pct = distribution.percentages()
    writer.writerow(["coincident category", distribution.auto_final, pct["auto_final"]])
    writer.writerow(["two coincident categories", distribution.choose_one, pct["choose_one"]])
    writer.writerow(
        ["no coincidence", distribution.choose_from_union, pct["choose_from_union"]]
    )
    return buf.getvalue()


def cvss_table_csv(report: StatsReport) -> str:
    """Per-category and per-class CVSS table (count, min, med, max, avg, stdev)."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["group", "name", "count", "min", "median", "max", "mean", "stdev"])
    ordered = sorted(
        report.cvss_per_category,
        key=lambda name: (-report.counts.get(name, 0), name),
    )
    for name in ordered:
        s = report.cvss_per_category[name]
        writer.writerow(
            ["category", name, report.counts.get(name, 0)]
            + [str(x) for x in (s.min, s.median, s.max, s.mean, s.stdev)]
        )
    for class_name in (c.value for c in taxonomy.NetworkClass):
        if class_name not in report.cvss_per_class:
            continue
        s = report.cvss_per_class[class_name]
        writer.writerow(
            ["class", class_name, report.class_counts.get(class_name, 0)]
            + [str(x) for x in (s.min, s.median, s.max, s.mean, s.stdev)]
        )
    return buf.getvalue()


def render_text_report(report: StatsReport) -> str:
    """Human-oriented summary printed by the command-line stats path."""
    lines = []
    if report.agreement.kappa is None:
        lines.append("Fleiss kappa: undefined (degenerate agreement)")
    else:
        lines.append(
            f"Fleiss kappa: {report.agreement.kappa:.6f} ({report.agreement.band} agreement)"
        )
    d = report.distribution
    pct = d.percentages()
    lines.append(
        f"Assessments: {d.total} total; "
        f"{d.auto_final} coincident ({pct['auto_final']}%), "
        f"{d.choose_one} double-coincident ({pct['choose_one']}%), "
        f"{d.choose_from_union} without coincidence ({pct['choose_from_union']}%)"
    )
    lines.append(
        f"CVEs: {report.total_cves} total, {report.sub_floor_cves} below the severity floor"
    )
    for name, count in sorted(report.counts.items(), key=lambda kv: (-kv[1], kv[0])):
        if count:
            lines.append(f"  {name}: {count}")
    return "\n".join(lines) + "\n"
