"""Synthetic CLML document builder for test corpora.

Describes an Act as plain spec dataclasses and renders the full-data XML,
per-section XML documents, and "original page" XHTML renderings that the
integrity compare view consumes. Rendering is fully deterministic so any
corpus built from a fixed plan is byte-stable.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from typing import Optional, Union
from xml.sax.saxutils import escape

CLML_NS = "http://www.legislation.gov.uk/namespaces/legislation"
BASE_URL = "https://www.legislation.gov.uk"


@dataclass
class CitedLine:
    """A line whose first occurrence of `phrase` is wrapped in <Citation>."""

    text: str
    phrase: str
    uri: str


@dataclass
class AmendmentBlock:
    """Quoted inserted/substituted text, rendered inside <BlockAmendment>."""

    lines: list[str]


LineSpec = Union[str, CitedLine]


@dataclass
class SubParaSpec:
    marker: str  # bare, e.g. "i"
    lines: list[LineSpec] = field(default_factory=list)


@dataclass
class ParaSpec:
    marker: str  # bare, e.g. "a"
    lines: list[LineSpec] = field(default_factory=list)
    subparas: list[SubParaSpec] = field(default_factory=list)
    trailing: list[LineSpec] = field(default_factory=list)  # text after subparas


@dataclass
class SubSpec:
    marker: str  # bare, e.g. "1"; "" renders no PNumber
    intro: Optional[LineSpec] = None
    lines: list[LineSpec] = field(default_factory=list)  # pre-paragraph free text
    paras: list[ParaSpec] = field(default_factory=list)
    trailing: list[Union[LineSpec, AmendmentBlock]] = field(default_factory=list)
    commentary_refs: int = 0  # inert unknown tags, for parser robustness


@dataclass
class SectionSpec:
    label: str
    heading: str
    subs: list[SubSpec] = field(default_factory=list)
    loose_lines: list[LineSpec] = field(default_factory=list)  # Text directly in P1para
    contentless: bool = False


@dataclass
class CrossHeadSpec:
    title: str
    sections: list[SectionSpec] = field(default_factory=list)


@dataclass
class ChapterSpec:
    label: str
    title: str
    crossheads: list[CrossHeadSpec] = field(default_factory=list)


@dataclass
class PartSpec:
    label: str
    title: str
    children: list[Union[ChapterSpec, CrossHeadSpec]] = field(default_factory=list)


@dataclass
class ActSpec:
    doc_class: str
    year: int
    number: int
    title: str
    parts: list[PartSpec] = field(default_factory=list)

    @property
    def uri_path(self) -> str:
        return f"{self.doc_class}/{self.year}/{self.number}"

    def iter_sections(self):
        for part in self.parts:
            for child in part.children:
                crossheads = child.crossheads if isinstance(child, ChapterSpec) else [child]
                for ch in crossheads:
                    yield from ch.sections

    def section(self, label: str) -> SectionSpec:
        for s in self.iter_sections():
            if s.label == label:
                return s
        raise KeyError(label)


def section_page_url(act: ActSpec, label: str) -> str:
    return f"{BASE_URL}/{act.uri_path}/section/{label}"


# ---------------------------------------------------------------------------
# XML rendering
# ---------------------------------------------------------------------------

def _add_text(parent: ET.Element, spec: LineSpec):
    text_el = ET.SubElement(parent, "Text")
    if isinstance(spec, CitedLine):
        idx = spec.text.find(spec.phrase)
        if idx < 0:
            text_el.text = spec.text
            return
        text_el.text = spec.text[:idx]
        cite = ET.SubElement(text_el, "Citation")
        cite.set("URI", spec.uri)
        cite.text = spec.phrase
        cite.tail = spec.text[idx + len(spec.phrase):]
    else:
        text_el.text = spec


def _add_amendment(parent: ET.Element, block: AmendmentBlock):
    amend = ET.SubElement(parent, "BlockAmendment")
    for line in block.lines:
        _add_text(amend, line)


def _build_p1group(act: ActSpec, section: SectionSpec) -> ET.Element:
    group = ET.Element("P1group")
    ET.SubElement(group, "Title").text = section.heading
    p1 = ET.SubElement(group, "P1")
    ET.SubElement(p1, "PNumber").text = section.label
    ET.SubElement(p1, "DocumentURL").text = section_page_url(act, section.label)
    if section.contentless:
        return group
    p1para = ET.SubElement(p1, "P1para")
    for line in section.loose_lines:
        _add_text(p1para, line)
    for sub in section.subs:
        p2 = ET.SubElement(p1para, "P2")
        if sub.marker:
            ET.SubElement(p2, "PNumber").text = sub.marker
        p2para = ET.SubElement(p2, "P2para")
        if sub.intro is not None:
            _add_text(p2para, sub.intro)
        for line in sub.lines:
            _add_text(p2para, line)
        for para in sub.paras:
            p3 = ET.SubElement(p2para, "P3")
            ET.SubElement(p3, "PNumber").text = para.marker
            p3para = ET.SubElement(p3, "P3para")
            for line in para.lines:
                _add_text(p3para, line)
            for sp in para.subparas:
                p4 = ET.SubElement(p3para, "P4")
                ET.SubElement(p4, "PNumber").text = sp.marker
                p4para = ET.SubElement(p4, "P4para")
                for line in sp.lines:
                    _add_text(p4para, line)
            for line in para.trailing:
                _add_text(p3para, line)
        for item in sub.trailing:
            if isinstance(item, AmendmentBlock):
                _add_amendment(p2para, item)
            else:
                _add_text(p2para, item)
        for i in range(sub.commentary_refs):
            ET.SubElement(p2para, "CommentaryRef").set("Ref", f"c{i:06d}")
    return group


def _wrap_document(act: ActSpec, body_children: list[ET.Element]) -> bytes:
    root = ET.Element("Legislation")
    root.set("xmlns", CLML_NS)
    root.set("DocumentURI", f"{BASE_URL}/{act.uri_path}")
    primary = ET.SubElement(root, "Primary")
    prelims = ET.SubElement(primary, "PrimaryPrelims")
    ET.SubElement(prelims, "Title").text = act.title
    ET.SubElement(prelims, "Number").text = f"{act.year} CHAPTER {act.number}"
    body = ET.SubElement(primary, "Body")
    body.extend(body_children)
    tree = ET.ElementTree(root)
    ET.indent(tree, space="  ")
    return ET.tostring(root, encoding="utf-8", xml_declaration=True) + b"\n"


def render_act_xml(act: ActSpec) -> bytes:
    """The full-data XML document for the whole Act."""
    parts = []
    for part in act.parts:
        part_el = ET.Element("Part")
        ET.SubElement(part_el, "Number").text = f"Part {part.label}"
        ET.SubElement(part_el, "Title").text = part.title
        for child in part.children:
            if isinstance(child, ChapterSpec):
                ch_el = ET.SubElement(part_el, "Chapter")
                ET.SubElement(ch_el, "Number").text = f"Chapter {child.label}"
                ET.SubElement(ch_el, "Title").text = child.title
                for crosshead in child.crossheads:
                    ch_el.append(_build_pblock(act, crosshead))
            else:
                part_el.append(_build_pblock(act, child))
        parts.append(part_el)
    return _wrap_document(act, parts)


def _build_pblock(act: ActSpec, crosshead: CrossHeadSpec) -> ET.Element:
    pblock = ET.Element("Pblock")
    ET.SubElement(pblock, "Title").text = crosshead.title
    for section in crosshead.sections:
        pblock.append(_build_p1group(act, section))
    return pblock


def render_section_xml(act: ActSpec, section: SectionSpec) -> bytes:
    """A standalone per-section XML document (the /section/N/data.xml shape)."""
    return _wrap_document(act, [_build_p1group(act, section)])


# ---------------------------------------------------------------------------
# "Original page" XHTML rendering
# ---------------------------------------------------------------------------

def _line_text(spec: LineSpec) -> str:
    return spec.text if isinstance(spec, CitedLine) else spec


def iter_section_lines(section: SectionSpec):
    """(marker_path, text, amendment) in document order, as the model walks it."""
    for line in section.loose_lines:
        yield ("",), _line_text(line), False
    for sub in section.subs:
        base = (f"({sub.marker})" if sub.marker else "",)
        if sub.intro is not None:
            yield base, _line_text(sub.intro), False
        for line in sub.lines:
            yield base, _line_text(line), False
        for para in sub.paras:
            pbase = base + (f"({para.marker})",)
            for line in para.lines:
                yield pbase, _line_text(line), False
            for sp in para.subparas:
                for line in sp.lines:
                    yield pbase + (f"({sp.marker})",), _line_text(line), False
            for line in para.trailing:
                yield pbase, _line_text(line), False
        for item in sub.trailing:
            if isinstance(item, AmendmentBlock):
                for line in item.lines:
                    yield base, line, True
            else:
                yield base, _line_text(item), False


def render_original_html(act: ActSpec, section: SectionSpec) -> bytes:
    """Self-contained XHTML rendering of one section, as the source site shows it."""
    rows = []
    if section.contentless:
        rows.append('<p class="line"><span class="text">. . . . . . . . .</span></p>')
    else:
        last_path = None
        for path, text, amendment in iter_section_lines(section):
            marker = path[-1] if path != last_path else ""
            last_path = path
            cls = "line amendment" if amendment else "line"
            rows.append(
                f'<p class="{cls}"><span class="marker">{escape(marker)}</span>'
                f'<span class="text">{escape(text)}</span></p>'
            )
    body = "\n      ".join(rows)
    page = f"""<?xml version="1.0" encoding="utf-8"?>
<html xmlns="http://www.w3.org/1999/xhtml">
  <head>
    <title>{escape(section.heading)} - {escape(act.title)}</title>
  </head>
  <body>
    <div class="provision">
      <h1><span class="num">{escape(section.label)}</span> <span class="heading">{escape(section.heading)}</span></h1>
      {body}
    </div>
  </body>
</html>
"""
    return page.encode("utf-8")
