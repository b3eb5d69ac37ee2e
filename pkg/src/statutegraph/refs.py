"""Cross-reference extraction.

Inbound references are textual mentions of other sections of the same Act
("section 12", "sections 3, 4 and 7"); outbound references are mentions of
other Acts ("the Housing Act 1985"), optionally with a section qualifier
("section 265 of the Housing Act 1985"). Detection is per-line and pure;
section-level results are exactly the line-level aggregation.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Optional, Union

from .model import ActModel, Line, Section, walk_lines

BASE_URL = "https://www.legislation.gov.uk"

# Section labels may carry inserted-letter suffixes ("155A") and
# subsection qualifiers ("138(2B)", "72(1)(b)").
_LABEL = r"\d+[A-Z]{0,3}"
_QUAL = r"(?:\((?:\d+[A-Za-z]{0,3}|[a-z]{1,4})\))*"
_ITEM = rf"{_LABEL}{_QUAL}"
_SEP = r"(?:,\s*|,?\s+(?:and|or|to)\s+)"
_SECTION_LIST_RE = re.compile(rf"\b[Ss]ections?\s+({_ITEM}(?:{_SEP}{_ITEM})*)")
_ITEM_OR_SEP_RE = re.compile(rf"(?P<item>{_ITEM})|,|\b(?P<word>and|or|to)\b")
_LABEL_ONLY_RE = re.compile(_LABEL)

# A section mention followed by "of the <Title> Act [year]" (or "of that
# Act") cites another Act's section: outbound, never an inbound edge.
_OF_ACT_RE = re.compile(
    r"\s+of\s+(?:the|that)\s+(?:(?:[A-Z][A-Za-z-]*|and|of)\s+)*Act(?:\s+\d{4})?\b"
)

_ACT_TITLE_RE = re.compile(
    r"\b([A-Z][A-Za-z-]*(?:\s+(?:[A-Z][A-Za-z-]*|and|of))*\s+Act)\s+(\d{4})\b"
)

_RANGE_EXPANSION_LIMIT = 100  # guard against absurd "sections 1 to 9999"

# Curated locators for the Acts cited by the worked corpus; anything else
# falls back to a title search on the legislation site.
KNOWN_ACT_PATHS = {
    "Housing Act 1985": "ukpga/1985/68",
    "Housing Act 1988": "ukpga/1988/50",
    "Housing Act 1996": "ukpga/1996/52",
    "Housing and Planning Act 2016": "ukpga/2016/22",
    "Housing and Regeneration Act 2008": "ukpga/2008/17",
    "Landlord and Tenant Act 1985": "ukpga/1985/70",
    "Landlord and Tenant Act 1987": "ukpga/1987/31",
    "Local Government and Housing Act 1989": "ukpga/1989/42",
    "Rent Act 1977": "ukpga/1977/42",
}


@dataclass(frozen=True)
class ActTitle:
    """An external Act's printed title, e.g. "Housing Act 1985"."""

    name: str
    year: int

    def __str__(self) -> str:
        return self.name

    @property
    def url(self) -> str:
        path = KNOWN_ACT_PATHS.get(self.name)
        if path:
            return f"{BASE_URL}/{path}"
        query = self.name.replace(" ", "+")
        return f"{BASE_URL}/all?title={query}"


@dataclass(frozen=True)
class SectionMention:
    label: str  # normalized bare label ("138")
    raw: str  # as written ("138(2B)")
    start: int
    end: int
    qualifier_act: Optional[str] = None  # act title, or "that Act"; None = inbound
    synthetic: bool = False  # expanded range intermediate, no own span

    @property
    def is_inbound(self) -> bool:
        return self.qualifier_act is None


@dataclass(frozen=True)
class ActMention:
    title: ActTitle
    raw: str
    start: int
    end: int
    phrase_start: int  # start of "section N of the ..." when qualified
    section_label: Optional[str] = None  # "265" in "section 265 of the X Act"


@dataclass
class ReferenceRecord:
    """One (section, target) reference with its textual mention count."""

    from_section: str
    kind: str  # "inbound" | "outbound"
    target: str  # section label, or external Act title
    count: int
    raw_spans: list[str] = field(default_factory=list)
    self_reference: bool = False


def _line_text(line: Union[Line, str]) -> str:
    return line.text if isinstance(line, Line) else line


def scan_line(text: str, expand_ranges: bool = False) -> tuple[list[SectionMention], list[ActMention]]:
    """All section and Act mentions of one line, with spans, in order."""
    act_matches = list(_ACT_TITLE_RE.finditer(text))
    claimed: dict[int, tuple[int, str]] = {}  # act match idx -> (phrase_start, label)
    section_mentions: list[SectionMention] = []

    for m in _SECTION_LIST_RE.finditer(text):
        qual = _OF_ACT_RE.match(text, m.end())
        qualifier: Optional[str] = None
        qual_act_idx: Optional[int] = None
        if qual is not None:
            qualifier = "that Act"
            for i, am in enumerate(act_matches):
                if m.end() <= am.start() <= qual.end():
                    qualifier = _strip_article(am.group(1)) + " " + am.group(2)
                    qual_act_idx = i
                    break
        items = _tokenize_items(text, m)
        mentions = _items_to_mentions(items, qualifier, expand_ranges)
        section_mentions.extend(mentions)
        if qual_act_idx is not None and mentions:
            claimed[qual_act_idx] = (m.start(), mentions[0].label)

    act_mentions = []
    for i, am in enumerate(act_matches):
        name = _strip_article(am.group(1)) + " " + am.group(2)
        title = ActTitle(name=name, year=int(am.group(2)))
        phrase_start, label = claimed.get(i, (am.start(), None))
        act_mentions.append(
            ActMention(
                title=title,
                raw=text[am.start():am.end(2)],
                start=am.start(),
                end=am.end(2),
                phrase_start=phrase_start,
                section_label=label,
            )
        )
    return section_mentions, act_mentions


def _strip_article(title: str) -> str:
    name = re.sub(r"^[Tt]he\s+", "", title.strip())
    return name


def _tokenize_items(text: str, m: re.Match) -> list[tuple[str, int, int, str]]:
    """(raw, start, end, separator_before) for each item of a section list."""
    items = []
    sep = ""
    for token in _ITEM_OR_SEP_RE.finditer(m.group(1)):
        if token.group("item"):
            start = m.start(1) + token.start()
            end = m.start(1) + token.end()
            items.append((token.group("item"), start, end, sep))
            sep = ""
        elif token.group("word"):
            sep = token.group("word")
    return items


def _items_to_mentions(
    items: list[tuple[str, int, int, str]],
    qualifier: Optional[str],
    expand_ranges: bool,
) -> list[SectionMention]:
    mentions = []
    for idx, (raw, start, end, sep) in enumerate(items):
        label = _LABEL_ONLY_RE.match(raw).group(0)
        if expand_ranges and sep == "to" and idx > 0:
            prev_label = mentions[-1].label
            for inner in _intermediate_labels(prev_label, label):
                mentions.append(
                    SectionMention(
                        label=inner, raw=f"{prev_label} to {label}", start=start,
                        end=end, qualifier_act=qualifier, synthetic=True,
                    )
                )
        mentions.append(
            SectionMention(label=label, raw=raw, start=start, end=end, qualifier_act=qualifier)
        )
    return mentions


def _intermediate_labels(a: str, b: str) -> list[str]:
    """Labels strictly between two range endpoints; only pure-integer spans."""
    if not (a.isdigit() and b.isdigit()):
        return []
    lo, hi = int(a), int(b)
    if not lo < hi <= lo + _RANGE_EXPANSION_LIMIT:
        return []
    return [str(n) for n in range(lo + 1, hi)]


def ref_in_single_line(line: Union[Line, str], expand_ranges: bool = False) -> list[str]:
    """Section labels named by one line, in order of appearance.

    Mentions qualified by another Act ("section 265 of the Housing Act
    1985") cite that Act's section and are excluded here.
    """
    mentions, _ = scan_line(_line_text(line), expand_ranges)
    return [m.label for m in mentions if m.is_inbound]


def acts_in_single_line(line: Union[Line, str]) -> list[ActTitle]:
    """External-Act titles mentioned by one line, leading article stripped."""
    _, act_mentions = scan_line(_line_text(line))
    return [m.title for m in act_mentions]


def ref_in_section(section: Section, expand_ranges: bool = False) -> dict[str, int]:
    """Total textual mentions per referenced section label."""
    counts: Counter = Counter()
    for _, line in walk_lines(section):
        counts.update(ref_in_single_line(line, expand_ranges))
    return dict(counts)


def acts_in_section(section: Section, host_act_title: Optional[str] = None) -> dict[ActTitle, int]:
    """Total textual mentions per cited Act; the host Act itself is excluded."""
    counts: Counter = Counter()
    for _, line in walk_lines(section):
        for title in acts_in_single_line(line):
            if host_act_title and title.name == host_act_title:
                continue
            counts[title] += 1
    return dict(counts)


def extract_all(model: ActModel, expand_ranges: bool = False) -> list[ReferenceRecord]:
    """All inbound and outbound records, deterministically ordered."""
    records: list[ReferenceRecord] = []
    for section in model.iter_sections():
        inbound: Counter = Counter()
        inbound_raw: dict[str, list[str]] = {}
        outbound: Counter = Counter()
        for _, line in walk_lines(section):
            mentions, act_mentions = scan_line(line.text, expand_ranges)
            for m in mentions:
                if m.is_inbound:
                    inbound[m.label] += 1
                    inbound_raw.setdefault(m.label, []).append(m.raw)
            for am in act_mentions:
                if am.title.name == model.title:
                    continue
                outbound[am.title] += 1
        for label, count in inbound.items():
            records.append(
                ReferenceRecord(
                    from_section=section.number,
                    kind="inbound",
                    target=label,
                    count=count,
                    raw_spans=inbound_raw[label],
                    self_reference=label == section.number,
                )
            )
        for title, count in outbound.items():
            records.append(
                ReferenceRecord(
                    from_section=section.number,
                    kind="outbound",
                    target=title.name,
                    count=count,
                )
            )
    records.sort(key=lambda r: (r.from_section, r.kind, r.target))
    return records


def dangling_references(model: ActModel, records: list[ReferenceRecord]) -> list[tuple[str, str]]:
    """Inbound targets that resolve to no section at all: reported, not dropped."""
    return sorted(
        (r.from_section, r.target)
        for r in records
        if r.kind == "inbound" and r.target not in model.sections_by_number
    )


def outbound_totals(records: list[ReferenceRecord]) -> dict[str, int]:
    """Whole-Act mention totals per external Act title."""
    totals: Counter = Counter()
    for r in records:
        if r.kind == "outbound":
            totals[r.target] += r.count
    return dict(totals)
