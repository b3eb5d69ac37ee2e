"""CLML XML parsing into the document model.

contents() maps an Act's full-data XML into the legal hierarchy skeleton
(Parts, Chapters, cross-headings, section stubs); single_section() maps one
section's XML into the textual hierarchy. Both are tolerant: the tag
sequences vary section by section, so parsing recognizes P1/P2/P3/P4
nesting depth rather than validating the full schema, and unknown tags are
tallied instead of fatal.
"""

from __future__ import annotations

import re
import xml.etree.ElementTree as ET
from collections import Counter
from dataclasses import dataclass, field
from typing import Optional

from .ingest import ActId, CachedResource, FetchPolicy, Fetcher, act_data_url
from .model import (
    ActModel,
    Chapter,
    CrossHeading,
    Line,
    Paragraph,
    Part,
    Section,
    SectionRef,
    SubParagraph,
    SubSection,
)

_WS_RE = re.compile(r"[\s ]+")


class ParseError(Exception):
    """Base class for CLML parse failures."""


class NotCLML(ParseError):
    """Root element is not a Legislation document."""


class EmptyContents(ParseError):
    """No Part and no P1group anywhere in the document."""


class UnrecognizedStructure(ParseError):
    """Tag sequence outside the handled grammar for one section."""


@dataclass
class ParseDiagnostics:
    unknown_tags: Counter = field(default_factory=Counter)
    sections_parsed: int = 0
    sections_failed: list[tuple[str, str]] = field(default_factory=list)

    def merge(self, other: "ParseDiagnostics"):
        self.unknown_tags.update(other.unknown_tags)
        self.sections_parsed += other.sections_parsed
        self.sections_failed.extend(other.sections_failed)


def normalize_text(text: str) -> str:
    """Collapse whitespace runs (incl. non-breaking spaces) to single spaces."""
    return _WS_RE.sub(" ", text).strip()


def _local(tag) -> str:
    """Tag name without namespace."""
    if not isinstance(tag, str):
        return ""
    return tag.rsplit("}", 1)[-1]


def _find_child(elem: ET.Element, *names: str) -> Optional[ET.Element]:
    wanted = {n.lower() for n in names}
    for child in elem:
        if _local(child.tag).lower() in wanted:
            return child
    return None

def _child_text(elem: ET.Element, *names: str) -> str:
    child = _find_child(elem, *names)
    if child is None:
        return ""
    return normalize_text("".join(child.itertext()))


def _marker(raw: str) -> str:
    """Normalize a Pnumber value to the rendered "(1)" / "(a)" / "(i)" form."""
    inner = normalize_text(raw).strip("()")
    return f"({inner})" if inner else ""


def _parse_root(resource: CachedResource) -> ET.Element:
    try:
        root = ET.fromstring(resource.body)
    except ET.ParseError as exc:
        raise NotCLML(f"{resource.uri}: not well-formed XML: {exc}") from exc
    if _local(root.tag) != "Legislation":
        raise NotCLML(f"{resource.uri}: root tag {_local(root.tag)!r}, expected Legislation")
    return root


# ---------------------------------------------------------------------------
# Legal hierarchy: contents()
# ---------------------------------------------------------------------------

# Tags with structural meaning for the hierarchy walks; anything else is
# counted in diagnostics and skipped.
_CONTENTS_HANDLED = {
    "legislation", "primary", "primaryprelims", "body", "title", "number",
    "part", "chapter", "pblock", "p1group", "p1", "pnumber", "documenturl",
    "p1para",
}


def contents(resource: CachedResource, act: Optional[ActId] = None) -> tuple[ActModel, ParseDiagnostics]:
    """Build the ActModel skeleton (Sections left unparsed) from full-data XML."""
    diags = ParseDiagnostics()
    root = _parse_root(resource)

    if act is None:
        act = _act_from_document_uri(root.get("DocumentURI", ""))
    title = ""
    for elem in root.iter():
        if _local(elem.tag) == "PrimaryPrelims":
            title = _child_text(elem, "Title")
            break

    parts: list[Part] = []
    loose_groups: list[ET.Element] = []
    body = _find_body(root)
    for child in body:
        name = _local(child.tag)
        if name == "Part":
            parts.append(_parse_part(child, diags))
        elif name == "P1group":
            loose_groups.append(child)
        elif name.lower() not in _CONTENTS_HANDLED:
            diags.unknown_tags[name] += 1
    if loose_groups:
        # Acts without Parts: keep the hierarchy shape with an unnamed Part.
        anon = Part(label="", title="", children=[_crossheading_of(loose_groups, "", diags)])
        parts.append(anon)
    if not parts:
        raise EmptyContents(f"{resource.uri}: no Part and no P1group found")

    model = ActModel(id=act, title=title, parts=parts)
    return model, diags


def _act_from_document_uri(uri: str) -> ActId:
    m = re.search(r"/([a-z]+)/(\d{4})/(\d+)", uri)
    if not m:
        raise NotCLML(f"cannot derive act identity from DocumentURI {uri!r}")
    return ActId(m.group(1), int(m.group(2)), int(m.group(3)))


def _find_body(root: ET.Element) -> ET.Element:
    for elem in root.iter():
        if _local(elem.tag) == "Body":
            return elem
    return root


def _label_of(elem: ET.Element, prefix: str) -> str:
    """Strip "Part "/"Chapter " prefixes from Number elements."""
    raw = _child_text(elem, "Number")
    return re.sub(rf"^{prefix}\s+", "", raw, flags=re.IGNORECASE)


def _parse_part(elem: ET.Element, diags: ParseDiagnostics) -> Part:
    part = Part(label=_label_of(elem, "Part"), title=_child_text(elem, "Title"))
    pending: list[ET.Element] = []
    for child in elem:
        name = _local(child.tag)
        if name == "Chapter":
            _flush_groups(part.children, pending, diags)
            part.children.append(_parse_chapter(child, diags))
        elif name == "Pblock":
            _flush_groups(part.children, pending, diags)
            part.children.append(_parse_pblock(child, diags))
        elif name == "P1group":
            pending.append(child)
        elif name.lower() not in _CONTENTS_HANDLED:
            diags.unknown_tags[name] += 1
    _flush_groups(part.children, pending, diags)
    return part


def _flush_groups(children: list, pending: list[ET.Element], diags: ParseDiagnostics):
    if pending:
        children.append(_crossheading_of(pending, "", diags))
        pending.clear()


def _parse_chapter(elem: ET.Element, diags: ParseDiagnostics) -> Chapter:
    chapter = Chapter(label=_label_of(elem, "Chapter"), title=_child_text(elem, "Title"))
    pending: list[ET.Element] = []
    for child in elem:
        name = _local(child.tag)
        if name == "Pblock":
            if pending:
                chapter.crossheadings.append(_crossheading_of(pending, "", diags))
                pending.clear()
            chapter.crossheadings.append(_parse_pblock(child, diags))
        elif name == "P1group":
            pending.append(child)
        elif name.lower() not in _CONTENTS_HANDLED:
            diags.unknown_tags[name] += 1
    if pending:
        chapter.crossheadings.append(_crossheading_of(pending, "", diags))
    return chapter


def _parse_pblock(elem: ET.Element, diags: ParseDiagnostics) -> CrossHeading:
    groups = [c for c in elem if _local(c.tag) == "P1group"]
    for child in elem:
        name = _local(child.tag)
        if name != "P1group" and name.lower() not in _CONTENTS_HANDLED:
            diags.unknown_tags[name] += 1
    return _crossheading_of(groups, _child_text(elem, "Title"), diags)


def _crossheading_of(groups: list[ET.Element], title: str, diags: ParseDiagnostics) -> CrossHeading:
    ch = CrossHeading(title=title)
    for group in groups:
        ch.section_refs.append(_section_ref(group))
    return ch


def _section_ref(group: ET.Element) -> SectionRef:
    title = _child_text(group, "Title")
    p1 = _find_child(group, "P1")
    number, url = "", ""
    if p1 is not None:
        number = normalize_text(_child_text(p1, "PNumber", "Pnumber"))
        url = _child_text(p1, "DocumentURL", "DocumentURI")
    return SectionRef(number=number, title=title, document_url=url)


# ---------------------------------------------------------------------------
# Textual hierarchy: single_section()
# ---------------------------------------------------------------------------

def single_section(resource: CachedResource) -> tuple[Section, ParseDiagnostics]:
    """Parse one section's XML document into a Section."""
    diags = ParseDiagnostics()
    root = _parse_root(resource)
    group = None
    for elem in root.iter():
        if _local(elem.tag) == "P1group":
            group = elem
            break
    if group is None:
        raise UnrecognizedStructure(f"{resource.uri}: no P1group element")
    section = parse_p1group(group, diags)
    diags.sections_parsed = 1
    return section, diags


def parse_p1group(group: ET.Element, diags: ParseDiagnostics) -> Section:
    heading = _child_text(group, "Title")
    p1 = _find_child(group, "P1")
    if p1 is None:
        raise UnrecognizedStructure("P1group without P1")
    number = _child_text(p1, "PNumber", "Pnumber")
    if not number:
        raise UnrecognizedStructure("P1 without PNumber")
    section = Section(number=number, heading=heading)

    body = _find_child(p1, "P1para")
    if body is None or (len(body) == 0 and not normalize_text("".join(body.itertext()))):
        section.is_contentless = True
        return section

    _parse_body(body, section, diags)
    if not section.subsections:
        section.is_contentless = True
    _assign_ordinals(section)
    return section


class _Flow:
    """Mutable cursor that appends text at the right depth, in document order."""

    def __init__(self, sub: SubSection):
        self.sub = sub

    def add_text(self, text: str, amendment: bool):
        line = Line(text=text, ordinal=0, amendment=amendment)
        para = self.sub.paragraphs[-1] if self.sub.paragraphs else None
        if para is not None:
            # Text after a paragraph (conjunctions, closing words) trails it.
            if para.subparagraphs:
                para.subparagraphs[-1].lines.append(line)
            else:
                para.lines.append(line)
        elif self.sub.intro is None and not self.sub.lines and not amendment:
            self.sub.intro = line
        else:
            self.sub.lines.append(line)


def _parse_body(body: ET.Element, section: Section, diags: ParseDiagnostics):
    # Body text outside any P2 lands in an unnumbered leading subsection;
    # once P2s have started, stray text trails the last one in order.
    loose = SubSection(marker="")
    bare = normalize_text(body.text or "")
    if bare:
        # Raw text directly inside P1para, without a Text wrapper.
        loose.lines.append(Line(text=bare, ordinal=0))
    for child in body:
        name = _local(child.tag)
        if name == "Text":
            text = normalize_text("".join(child.itertext()))
            if text:
                if section.subsections:
                    _Flow(section.subsections[-1]).add_text(text, amendment=False)
                else:
                    loose.lines.append(Line(text=text, ordinal=0))
        elif name == "P2":
            section.subsections.append(_parse_p2(child, diags))
        elif name == "BlockAmendment":
            target = _Flow(section.subsections[-1]) if section.subsections else _Flow(loose)
            _flatten_amendment(child, target, diags)
        else:
            diags.unknown_tags[name] += 1
    if loose.lines or loose.intro is not None:
        section.subsections.insert(0, loose)


def _parse_p2(elem: ET.Element, diags: ParseDiagnostics) -> SubSection:
    sub = SubSection(marker=_marker(_child_text(elem, "PNumber", "Pnumber")))
    flow = _Flow(sub)
    container = _find_child(elem, "P2para") or elem
    for child in container:
        name = _local(child.tag)
        if name == "Text":
            text = normalize_text("".join(child.itertext()))
            if text:
                flow.add_text(text, amendment=False)
        elif name == "P3":
            sub.paragraphs.append(_parse_p3(child, diags))
        elif name == "BlockAmendment":
            _flatten_amendment(child, flow, diags)
        elif name.lower() not in ("pnumber", "p2para"):
            diags.unknown_tags[name] += 1
    return sub


def _parse_p3(elem: ET.Element, diags: ParseDiagnostics) -> Paragraph:
    para = Paragraph(marker=_marker(_child_text(elem, "PNumber", "Pnumber")))
    container = _find_child(elem, "P3para") or elem
    for child in container:
        name = _local(child.tag)
        if name == "Text":
            text = normalize_text("".join(child.itertext()))
            if text:
                if para.subparagraphs:
                    para.subparagraphs[-1].lines.append(Line(text=text, ordinal=0))
                else:
                    para.lines.append(Line(text=text, ordinal=0))
        elif name == "P4":
            para.subparagraphs.append(_parse_p4(child, diags))
        elif name.lower() not in ("pnumber", "p3para"):
            diags.unknown_tags[name] += 1
    return para


def _parse_p4(elem: ET.Element, diags: ParseDiagnostics) -> SubParagraph:
    subpara = SubParagraph(marker=_marker(_child_text(elem, "PNumber", "Pnumber")))
    container = _find_child(elem, "P4para") or elem
    for child in container:
        name = _local(child.tag)
        if name == "Text":
            text = normalize_text("".join(child.itertext()))
            if text:
                subpara.lines.append(Line(text=text, ordinal=0))
        elif name.lower() not in ("pnumber", "p4para"):
            diags.unknown_tags[name] += 1
    return subpara


def _flatten_amendment(elem: ET.Element, flow: _Flow, diags: ParseDiagnostics):
    """Quoted amendment blocks flatten into flagged Lines of the host flow.

    The model cannot nest inserted sections under subsections, so the
    block's text nodes are kept, in order, with amendment=True.
    """
    for node in elem.iter():
        if _local(node.tag) == "Text":
            text = normalize_text("".join(node.itertext()))
            if text:
                flow.add_text(text, amendment=True)


def _assign_ordinals(section: Section):
    def renumber(lines: list[Line]) -> list[Line]:
        return [Line(text=l.text, ordinal=i, amendment=l.amendment) for i, l in enumerate(lines)]

    for sub in section.subsections:
        sub.lines = renumber(sub.lines)
        for para in sub.paragraphs:
            para.lines = renumber(para.lines)
            for sp in para.subparagraphs:
                sp.lines = renumber(sp.lines)


# ---------------------------------------------------------------------------
# Whole-Act parse
# ---------------------------------------------------------------------------

def parse_act(
    act: ActId,
    fetcher: Optional[Fetcher] = None,
    policy: Optional[FetchPolicy] = None,
) -> tuple[ActModel, ParseDiagnostics]:
    """contents() then one single_section() per stub; failures never abort.

    Per-section XML is taken from the cache when present; otherwise the
    P1group subtree embedded in the full-data file is parsed directly
    (the two are equivalent inputs).
    """
    fetcher = fetcher or Fetcher()
    resource = fetcher.fetch(act_data_url(act), policy)
    model, diags = contents(resource, act)

    root = _parse_root(resource)
    embedded: dict[str, ET.Element] = {}
    for elem in root.iter():
        if _local(elem.tag) == "P1group":
            ref = _section_ref(elem)
            if ref.number and ref.number not in embedded:
                embedded[ref.number] = elem

    for ref in model.iter_section_refs():
        label = ref.number
        try:
            section = None
            if ref.document_url:
                cached = fetcher.cache.get(ref.document_url.rstrip("/") + "/data.xml")
                if cached is not None:
                    section, sub_diags = single_section(cached)
                    diags.unknown_tags.update(sub_diags.unknown_tags)
            if section is None:
                group = embedded.get(label)
                if group is None:
                    raise UnrecognizedStructure(f"section {label}: no XML source found")
                section = parse_p1group(group, diags)
            if label in model.sections_by_number:
                raise UnrecognizedStructure(f"duplicate section label {label}")
            model.sections_by_number[label] = section
            diags.sections_parsed += 1
        except ParseError as exc:
            diags.sections_failed.append((label, str(exc)))
    diags.sections_failed.sort(key=lambda item: item[0])
    return model, diags
