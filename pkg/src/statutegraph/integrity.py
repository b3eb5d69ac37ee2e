"""Supervised data-quality layer.

Three instruments: regex surveys over the Act's one-page text, structural
tallies of the parsed output, and a side-by-side parsed-vs-original
comparison page. Survey counts dual-check the reference extractor through
an independent code path (plain pattern counting, no shared matcher).
"""

from __future__ import annotations

import html
import re
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .ingest import Cache, CachedResource
from .model import ActModel, Chapter, Section, walk_lines

# The standard survey patterns, verbatim as published for the source
# corpus, including the idiosyncratic [aA-zZ] class (kept for count
# comparability; a corrected variant is reported alongside).
TABLE_PATTERNS = [
    "section [1-9]*",
    "section [1-9]* or [1-9]",
    "section [1-9]* or section [1-9]",
    "section [1-9]* to",
    "sections [1-9]* and",
    "of the [aA-zZ]+ Act",
]

# Published counts for the pinned Housing Act 2004 snapshot.
BASELINE_SURVEY_COUNTS = {
    "section [1-9]*": 500,
    "section [1-9]* or [1-9]": 20,
    "section [1-9]* or section [1-9]": 3,
    "section [1-9]* to": 21,
    "sections [1-9]* and": 4,
    "of the [aA-zZ]+ Act": 156,
}

# Corrected / stricter companions, reported next to the published ones.
VARIANT_PATTERNS = {
    "of the [aA-zZ]+ Act": "of the [A-Za-z]+ Act",
    "section [1-9]*": r"\bsection [0-9]+",
}

# Published per-Act survey totals for the same snapshot.
BASELINE_ACT_SURVEY = {
    "Housing Act 1985": 62,
    "Housing Act 1988": 20,
    "Housing Act 1996": 17,
    "Housing and Planning Act 2016": 24,
}

# Independent title sweep over the whole one-page text (headings included),
# so Acts the extractor never saw still enter the comparison table.
_ACT_TITLE_SWEEP_RE = re.compile(
    r"\b([A-Z][A-Za-z-]*(?:\s+(?:[A-Z][A-Za-z-]*|and|of))*\s+Act\s+\d{4})\b"
)


class IntegrityError(Exception):
    pass


class InvalidPattern(IntegrityError):
    pass


class MissingOriginal(IntegrityError):
    """The original page for a section is not in the cache."""


@dataclass
class LocatedLine:
    text: str
    section: Optional[str]  # section label; None for part/chapter/cross-heading lines
    path: tuple[str, ...]  # marker path, or ("heading",) for a section heading


@dataclass
class RegexSurveyRow:
    pattern: str
    occurrences: int
    sample_locations: list[tuple[str, tuple[str, ...]]] = field(default_factory=list)


@dataclass
class IntegrityReport:
    survey: list[RegexSurveyRow]
    variant_survey: list[RegexSurveyRow]
    structural: dict[str, dict[str, int]]
    extractor_vs_survey: list[dict]


def located_lines(model: ActModel) -> list[LocatedLine]:
    """Every line of the one-page view, in table-of-contents order."""
    lines: list[LocatedLine] = []
    for part in model.parts:
        lines.append(LocatedLine(f"Part {part.label}: {part.title}", None, ()))
        for child in part.children:
            if isinstance(child, Chapter):
                lines.append(LocatedLine(f"Chapter {child.label}: {child.title}", None, ()))
                crossheadings = child.crossheadings
            else:
                crossheadings = [child]
            for ch in crossheadings:
                lines.append(LocatedLine(ch.title, None, ()))
                for ref in ch.section_refs:
                    section = model.sections_by_number.get(ref.number)
                    heading = section.heading if section else ref.title
                    lines.append(LocatedLine(f"{ref.number} {heading}", ref.number, ("heading",)))
                    if section is None:
                        continue
                    for path, line in walk_lines(section):
                        lines.append(LocatedLine(line.text, ref.number, path))
    return lines


def one_page_text(model: ActModel) -> str:
    """The whole Act as plain text, one line per Line, headings included."""
    return "\n".join(l.text for l in located_lines(model))


def _compile(pattern: str) -> re.Pattern:
    try:
        return re.compile(pattern)
    except re.error as exc:
        raise InvalidPattern(f"{pattern!r}: {exc}") from exc


def regex_survey(text: str, patterns: Iterable[str]) -> list[RegexSurveyRow]:
    """Non-overlapping match counts per pattern, evaluated line by line."""
    rows = []
    for pattern in patterns:
        compiled = _compile(pattern)
        count = sum(len(compiled.findall(line)) for line in text.split("\n"))
        rows.append(RegexSurveyRow(pattern=pattern, occurrences=count))
    return rows


def survey_model(model: ActModel, patterns: Iterable[str], samples: int = 5) -> list[RegexSurveyRow]:
    """regex_survey over the one-page view, with genuine sample locations."""
    lines = located_lines(model)
    rows = []
    for pattern in patterns:
        compiled = _compile(pattern)
        count = 0
        locations: list[tuple[str, tuple[str, ...]]] = []
        for located in lines:
            hits = len(compiled.findall(located.text))
            if hits:
                count += hits
                if located.section is not None and len(locations) < samples:
                    locations.append((located.section, located.path))
        rows.append(RegexSurveyRow(pattern=pattern, occurrences=count, sample_locations=locations))
    return rows


def structural_tally(model: ActModel) -> dict[str, dict[str, int]]:
    """Per-section counts of subsections, paragraphs, subparagraphs and lines."""
    tally = {}
    for label, section in sorted(model.sections_by_number.items()):
        paragraphs = sum(len(sub.paragraphs) for sub in section.subsections)
        subparagraphs = sum(
            len(p.subparagraphs) for sub in section.subsections for p in sub.paragraphs
        )
        tally[label] = {
            "subsections": len(section.subsections),
            "paragraphs": paragraphs,
            "subparagraphs": subparagraphs,
            "lines": sum(1 for _ in walk_lines(section)),
        }
    return tally


def act_mention_survey(model: ActModel, titles: Iterable[str]) -> dict[str, int]:
    """Occurrences of each Act title in the one-page text.

    Deliberately independent of the reference extractor: plain
    whole-title counting, so the two sides cross-check each other.
    """
    lines = one_page_text(model).split("\n")
    counts = {}
    for title in titles:
        compiled = re.compile(rf"\b{re.escape(title)}\b")
        counts[title] = sum(len(compiled.findall(line)) for line in lines)
    return counts


def extractor_vs_survey(model: ActModel, extracted_totals: dict[str, int]) -> list[dict]:
    """Pair extractor totals with surveyed totals per external Act.

    Undercount rows (extracted < surveyed) carry sample locations of the
    surveyed mentions so the blind spot can be inspected directly.
    """
    lines = located_lines(model)
    swept = {
        re.sub(r"^The\s+", "", m.group(1))
        for located in lines
        for m in _ACT_TITLE_SWEEP_RE.finditer(located.text)
    }
    titles = sorted(set(extracted_totals) | set(BASELINE_ACT_SURVEY) | swept)
    titles = [t for t in titles if t != model.title]
    surveyed = act_mention_survey(model, titles)
    rows = []
    for title in titles:
        extracted = extracted_totals.get(title, 0)
        row = {
            "act": title,
            "extracted": extracted,
            "surveyed": surveyed[title],
            "undercount": extracted < surveyed[title],
        }
        if row["undercount"]:
            pattern = re.compile(rf"\b{re.escape(title)}\b")
            row["sample_locations"] = [
                {"section": l.section, "path": list(l.path)}
                for l in lines
                if l.section is not None and pattern.search(l.text)
            ][:3]
        baseline = BASELINE_ACT_SURVEY.get(title)
        if baseline is not None:
            row["baseline_surveyed"] = baseline
            row["delta"] = surveyed[title] - baseline
        rows.append(row)
    return rows


def build_report(model: ActModel, extracted_totals: dict[str, int],
                 extra_patterns: Iterable[str] = ()) -> IntegrityReport:
    patterns = list(TABLE_PATTERNS) + [p for p in extra_patterns if p not in TABLE_PATTERNS]
    return IntegrityReport(
        survey=survey_model(model, patterns),
        variant_survey=survey_model(model, VARIANT_PATTERNS.values()),
        structural=structural_tally(model),
        extractor_vs_survey=extractor_vs_survey(model, extracted_totals),
    )


def report_lines(report: IntegrityReport) -> list[str]:
    """Human-readable report: published value, snapshot value, delta."""
    out = ["Regex survey (published vs snapshot):"]
    for row in report.survey:
        baseline = BASELINE_SURVEY_COUNTS.get(row.pattern)
        if baseline is None:
            out.append(f"  {row.pattern!r}: snapshot={row.occurrences}")
        else:
            delta = row.occurrences - baseline
            out.append(
                f"  {row.pattern!r}: published={baseline} snapshot={row.occurrences} delta={delta:+d}"
            )
    out.append("Variant patterns:")
    for row in report.variant_survey:
        out.append(f"  {row.pattern!r}: snapshot={row.occurrences}")
    out.append("Extractor vs survey (per external Act):")
    for row in report.extractor_vs_survey:
        line = f"  {row['act']}: extracted={row['extracted']} surveyed={row['surveyed']}"
        if "baseline_surveyed" in row:
            line += f" published={row['baseline_surveyed']} delta={row['delta']:+d}"
        if row["undercount"]:
            line += "  [UNDERCOUNT]"
        out.append(line)
    return out


# ---------------------------------------------------------------------------
# Parsed-vs-original comparison page
# ---------------------------------------------------------------------------

def _render_parsed_frame(section: Section) -> str:
    rows = [
        f'<h1><span class="num">{html.escape(section.number)}</span> '
        f'<span class="heading">{html.escape(section.heading)}</span></h1>'
    ]
    if section.is_contentless:
        rows.append('<p class="no-content">No content.</p>')
    last_path: tuple = ()
    for path, line in walk_lines(section):
        marker = path[-1] if path != last_path else ""
        last_path = path
        rows.append(
            f'<p class="line"><span class="marker">{html.escape(marker)}</span>'
            f'<span class="text">{html.escape(line.text)}</span></p>'
        )
    return "\n".join(rows)


def _original_body(resource: CachedResource) -> str:
    """Inner markup of the cached original page's <body>."""
    try:
        root = ET.fromstring(resource.body)
    except ET.ParseError as exc:
        raise MissingOriginal(f"{resource.uri}: original page is not well-formed: {exc}") from exc
    body = None
    for elem in root.iter():
        if elem.tag.rsplit("}", 1)[-1] == "body":
            body = elem
            break
    if body is None:
        raise MissingOriginal(f"{resource.uri}: original page has no body")
    parts = []
    for child in body:
        parts.append(ET.tostring(child, encoding="unicode"))
    return re.sub(r" xmlns(:\w+)?=\"[^\"]*\"", "", "\n".join(parts))


def compare_view(model: ActModel, label: str, cache: Cache, section_url: str) -> str:
    """Two-frame page: parsed rendering left, cached original right."""
    section = model.sections_by_number.get(label)
    if section is None:
        raise IntegrityError(f"section {label} not parsed")
    original = cache.get(section_url)
    if original is None:
        raise MissingOriginal(f"original page not cached: {section_url}")
    left = _render_parsed_frame(section)
    right = _original_body(original)
    return f"""<!DOCTYPE html>
<html lang="en">
<head>
<meta charset="utf-8"/>
<title>Comparison: section {html.escape(label)}</title>
<style>
body {{ font-family: Georgia, serif; margin: 0; }}
.frames {{ display: flex; gap: 1rem; }}
.frame {{ flex: 1; padding: 1rem; overflow: auto; }}
.frame h2 {{ font-size: 1rem; color: #555; border-bottom: 1px solid #ccc; }}
.marker {{ font-weight: bold; margin-right: 0.5em; }}
.no-content {{ color: #888; }}
</style>
</head>
<body>
<div class="frames">
<div class="frame parsed"><h2>Parsed</h2>
{left}
</div>
<div class="frame original"><h2>Original</h2>
{right}
</div>
</div>
</body>
</html>
"""
