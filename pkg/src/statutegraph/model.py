"""In-memory document model for one Act.

Two interleaved hierarchies: the legal one (Part > Chapter > cross-heading)
and, inside each section, the textual one (SubSection > Paragraph >
SubParagraph > Line). Lines are the leaves; every piece of body text lives
in exactly one Line.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterator, Optional, Union

from .ingest import ActId

# Section labels are "155", "155A", ...; markers render as "(1)", "(a)", "(i)".
_LABEL_RE = re.compile(r"^(\d+)([A-Z]{0,3})$")
_ROMAN_VALUES = {"i": 1, "v": 5, "x": 10, "l": 50, "c": 100}


@dataclass(frozen=True)
class Line:
    """One line of body text, whitespace-normalized."""

    text: str
    ordinal: int
    amendment: bool = False


@dataclass
class SubParagraph:
    marker: str  # "(i)", "(ii)", ...
    lines: list[Line] = field(default_factory=list)


@dataclass
class Paragraph:
    marker: str  # "(a)", "(b)", ...
    lines: list[Line] = field(default_factory=list)
    subparagraphs: list[SubParagraph] = field(default_factory=list)


@dataclass
class SubSection:
    """Numbered "(1)", "(2)" division of a section.

    Document order is intro, then free lines, then paragraphs. Text that
    follows a paragraph (conjunctions, closing words) is attached to that
    paragraph as a trailing Line, so concatenating in that order always
    reproduces the source text order.
    """

    marker: str  # "(1)", or "" for an unnumbered body
    intro: Optional[Line] = None
    paragraphs: list[Paragraph] = field(default_factory=list)
    lines: list[Line] = field(default_factory=list)


@dataclass
class Section:
    number: str  # label, e.g. "3" or "155A"
    heading: str
    subsections: list[SubSection] = field(default_factory=list)
    is_contentless: bool = False


@dataclass
class SectionRef:
    """Table-of-contents stub for a section."""

    number: str
    title: str
    document_url: str


@dataclass
class CrossHeading:
    title: str  # cross-headings carry no number
    section_refs: list[SectionRef] = field(default_factory=list)


@dataclass
class Chapter:
    label: str
    title: str
    crossheadings: list[CrossHeading] = field(default_factory=list)


@dataclass
class Part:
    label: str
    title: str
    # Ordered mix: a Part may hold Chapters, bare cross-headings, or both.
    children: list[Union[Chapter, CrossHeading]] = field(default_factory=list)


@dataclass
class ActModel:
    id: ActId
    title: str
    parts: list[Part] = field(default_factory=list)
    sections_by_number: dict[str, Section] = field(default_factory=dict)

    def iter_section_refs(self) -> Iterator[SectionRef]:
        """All section stubs in table-of-contents order."""
        for part in self.parts:
            for child in part.children:
                if isinstance(child, Chapter):
                    for ch in child.crossheadings:
                        yield from ch.section_refs
                else:
                    yield from child.section_refs

    def iter_sections(self) -> Iterator[Section]:
        """Parsed sections in table-of-contents order (skips unparsed stubs)."""
        for ref in self.iter_section_refs():
            section = self.sections_by_number.get(ref.number)
            if section is not None:
                yield section


MarkerPath = tuple[str, ...]


def walk_lines(section: Section) -> Iterator[tuple[MarkerPath, Line]]:
    """Yield every Line of a section once, in document order.

    The path holds the enclosing subsection/paragraph/subparagraph markers,
    e.g. ("(3)", "(b)", "(i)"). Content-less sections yield nothing.
    """
    for sub in section.subsections:
        base = (sub.marker,)
        if sub.intro is not None:
            yield base, sub.intro
        for line in sub.lines:
            yield base, line
        for para in sub.paragraphs:
            for line in para.lines:
                yield base + (para.marker,), line
            for subpara in para.subparagraphs:
                for line in subpara.lines:
                    yield base + (para.marker, subpara.marker), line


def section_by_number(model: ActModel, label: str) -> Optional[Section]:
    """The unique Section with that label, or None."""
    return model.sections_by_number.get(label)


def label_sort_key(label: str) -> tuple:
    """Order section labels numerically with inserted letters after the base:

    "9" < "12" < "155" < "155A" < "155B" < "156".
    Labels outside that shape sort after all numeric ones, alphabetically.
    """
    m = _LABEL_RE.match(label)
    if not m:
        return (1, 0, label)
    return (0, int(m.group(1)), m.group(2))


def marker_sort_key(marker: str, kind: str) -> tuple:
    """Order markers within one container list.

    kind is "subsection" (numeric, letter-suffixed inserts allowed),
    "paragraph" (letters, a < z < aa) or "subparagraph" (roman numerals).
    Letters like "(c)" are valid roman digits too, so the container kind,
    not the shape, decides the ordering.
    """
    inner = marker.strip("()")
    if kind == "subsection":
        m = re.match(r"^(\d+)([A-Za-z]*)$", inner)
        if m:
            return (0, int(m.group(1)), m.group(2).upper())
        return (1, 0, inner)
    if kind == "subparagraph" and inner and all(c in _ROMAN_VALUES for c in inner.lower()):
        return (0, _roman_to_int(inner.lower()), "")
    return (0, len(inner), inner)


def _roman_to_int(s: str) -> int:
    total = 0
    for i, c in enumerate(s):
        v = _ROMAN_VALUES[c]
        if i + 1 < len(s) and _ROMAN_VALUES[s[i + 1]] > v:
            total -= v
        else:
            total += v
    return total
