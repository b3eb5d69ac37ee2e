"""Serialization of the parsed Act into the artifacts the explorer consumes.

Outputs per Act: inbound.json / outbound.json (weighted node-link graphs),
toc.html (nested ordered list) and sections/{id}.html (hyperlinked
provision fragments). Emission is deterministic: same model, same bytes.
"""

from __future__ import annotations

import html
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .model import ActModel, Chapter, Section
from .refs import ActTitle, ReferenceRecord, scan_line

INBOUND = "inbound"
OUTBOUND = "outbound"


@dataclass
class GraphNode:
    id: str
    label: str
    group: str  # Part label for sections, "external" for cited Acts
    nodeSize: int  # total inbound textual mentions of this node
    url: str


@dataclass
class GraphLink:
    source: str
    target: str
    thick: int  # mention count behind the edge


@dataclass
class GraphDocument:
    mode: str
    nodes: list[GraphNode] = field(default_factory=list)
    links: list[GraphLink] = field(default_factory=list)

    def node_ids(self) -> set[str]:
        return {n.id for n in self.nodes}

    def to_dict(self) -> dict:
        return {
            "mode": self.mode,
            "nodes": [
                {"id": n.id, "label": n.label, "group": n.group,
                 "nodeSize": n.nodeSize, "url": n.url}
                for n in sorted(self.nodes, key=lambda n: n.id)
            ],
            "links": [
                {"source": l.source, "target": l.target, "thick": l.thick}
                for l in sorted(self.links, key=lambda l: (l.source, l.target))
            ],
        }


def section_node_id(label: str) -> str:
    return f"s{label}"


def act_node_id(title: str) -> str:
    return f"a:{title}"


def _part_of_map(model: ActModel) -> dict[str, str]:
    part_of = {}
    for part in model.parts:
        for child in part.children:
            crossheadings = child.crossheadings if isinstance(child, Chapter) else [child]
            for ch in crossheadings:
                for ref in ch.section_refs:
                    part_of[ref.number] = part.label
    return part_of


def _section_urls(model: ActModel) -> dict[str, str]:
    return {ref.number: ref.document_url for ref in model.iter_section_refs()}


def graph_section_labels(model: ActModel) -> list[str]:
    """Node set: parsed sections that carry content (content-less excluded)."""
    return [
        ref.number
        for ref in model.iter_section_refs()
        if (section := model.sections_by_number.get(ref.number)) is not None
        and not section.is_contentless
    ]


def build_inbound_graph(
    model: ActModel,
    records: list[ReferenceRecord],
    dropped: Optional[list] = None,
) -> GraphDocument:
    """Sections as nodes, merged (referencing -> referenced) links.

    Links whose target is not a node (never existed, or content-less) are
    dropped with a warning entry; they never abort the build.
    """
    part_of = _part_of_map(model)
    urls = _section_urls(model)
    labels = graph_section_labels(model)
    label_set = set(labels)

    links: dict[tuple[str, str], int] = {}
    incoming: dict[str, int] = {label: 0 for label in labels}
    for record in records:
        if record.kind != INBOUND:
            continue
        if record.from_section not in label_set:
            continue
        if record.target not in label_set:
            if dropped is not None:
                reason = (
                    "content-less target"
                    if record.target in model.sections_by_number
                    else "unknown target"
                )
                dropped.append(
                    {"source": record.from_section, "target": record.target,
                     "count": record.count, "reason": reason}
                )
            continue
        key = (record.from_section, record.target)
        links[key] = links.get(key, 0) + record.count
        incoming[record.target] += record.count

    doc = GraphDocument(mode=INBOUND)
    for label in labels:
        doc.nodes.append(
            GraphNode(
                id=section_node_id(label),
                label=label,
                group=part_of.get(label, ""),
                nodeSize=incoming[label],
                url=urls.get(label, ""),
            )
        )
    for (source, target), thick in links.items():
        doc.links.append(
            GraphLink(section_node_id(source), section_node_id(target), thick)
        )
    return doc


def build_outbound_graph(
    model: ActModel,
    records: list[ReferenceRecord],
    dropped: Optional[list] = None,
) -> GraphDocument:
    """The inbound graph plus one node per cited external Act."""
    doc = build_inbound_graph(model, records, dropped)
    doc.mode = OUTBOUND
    label_set = {n.label for n in doc.nodes}

    act_links: dict[tuple[str, str], int] = {}
    act_totals: dict[str, int] = {}
    for record in records:
        if record.kind != OUTBOUND or record.from_section not in label_set:
            continue
        key = (record.from_section, record.target)
        act_links[key] = act_links.get(key, 0) + record.count
        act_totals[record.target] = act_totals.get(record.target, 0) + record.count

    for title in sorted(act_totals):
        year = title.rsplit(" ", 1)[-1]
        url = ActTitle(title, int(year)).url if year.isdigit() else ""
        doc.nodes.append(
            GraphNode(
                id=act_node_id(title),
                label=title,
                group="external",
                nodeSize=act_totals[title],
                url=url,
            )
        )
    for (source, title), thick in act_links.items():
        doc.links.append(GraphLink(section_node_id(source), act_node_id(title), thick))
    return doc


def emit(graph: GraphDocument, path) -> Path:
    """UTF-8 JSON with fixed key order and sorted arrays: byte-stable."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    payload = json.dumps(graph.to_dict(), ensure_ascii=False, indent=2) + "\n"
    path.write_text(payload, "utf-8")
    return path


def load_graph(path) -> GraphDocument:
    data = json.loads(Path(path).read_text("utf-8"))
    return GraphDocument(
        mode=data["mode"],
        nodes=[GraphNode(**n) for n in data["nodes"]],
        links=[GraphLink(**l) for l in data["links"]],
    )


# ---------------------------------------------------------------------------
# HTML fragments
# ---------------------------------------------------------------------------

def div_nav(model: ActModel) -> str:
    """The table of contents as a nested ordered list.

    Contentful section entries carry anchor ids equal to their graph node
    ids; content-less entries render unlinked.
    """
    contentful = set(graph_section_labels(model))
    out = ['<nav class="toc">', '<ol class="toc-parts">']
    for part in model.parts:
        out.append("<li>")
        out.append(f'<span class="toc-part">Part {html.escape(part.label)}: {html.escape(part.title)}</span>')
        out.append("<ol>")
        for child in part.children:
            if isinstance(child, Chapter):
                out.append("<li>")
                out.append(
                    f'<span class="toc-chapter">Chapter {html.escape(child.label)}: {html.escape(child.title)}</span>'
                )
                out.append("<ol>")
                for ch in child.crossheadings:
                    out.extend(_toc_crossheading(ch, contentful))
                out.append("</ol>")
                out.append("</li>")
            else:
                out.extend(_toc_crossheading(child, contentful))
        out.append("</ol>")
        out.append("</li>")
    out.append("</ol>")
    out.append("</nav>")
    return "\n".join(out)


def _toc_crossheading(ch, contentful: set[str]) -> list[str]:
    out = ["<li>", f'<span class="toc-crosshead"><i>{html.escape(ch.title)}</i></span>', "<ol>"]
    for ref in ch.section_refs:
        node = section_node_id(ref.number)
        text = f"{html.escape(ref.number)}. {html.escape(ref.title)}"
        if ref.number in contentful:
            out.append(
                f'<li><a id="{node}" class="toc-section" href="sections/{node}.html" '
                f'data-section="{node}">{text}</a></li>'
            )
        else:
            out.append(f'<li><span class="toc-section toc-dead">{text}</span></li>')
    out.append("</ol>")
    out.append("</li>")
    return out


def _markup_line(text: str, resolvable: set[str], host_title: str) -> str:
    """Escape one line, wrapping reference spans in hyperlinks."""
    mentions, act_mentions = scan_line(text)
    spans = []
    for am in act_mentions:
        if am.title.name == host_title:
            continue
        start = am.phrase_start if am.section_label else am.start
        attrs = (
            f'class="ref outbound" href="{html.escape(am.title.url, quote=True)}" '
            f'data-act="{html.escape(am.title.name, quote=True)}" '
            f'data-node="{html.escape(act_node_id(am.title.name), quote=True)}"'
        )
        if am.section_label:
            attrs += f' data-section="{html.escape(am.section_label, quote=True)}"'
        spans.append((start, am.end, attrs, None))
    for m in mentions:
        if not m.is_inbound or m.synthetic:
            continue
        node = section_node_id(m.label)
        if m.label in resolvable:
            attrs = f'class="ref inbound" href="#{node}" data-target="{node}"'
            spans.append((m.start, m.end, attrs, None))
        else:
            spans.append((m.start, m.end, None, "ref dangling"))
    spans.sort(key=lambda s: s[0])

    out, cursor = [], 0
    for start, end, attrs, dead_class in spans:
        if start < cursor:
            continue  # overlap guard; first-come wins
        out.append(html.escape(text[cursor:start]))
        chunk = html.escape(text[start:end])
        if attrs:
            out.append(f"<a {attrs}>{chunk}</a>")
        else:
            out.append(f'<span class="{dead_class}">{chunk}</span>')
        cursor = end
    out.append(html.escape(text[cursor:]))
    return "".join(out)


def html_single_section(section: Section, model: ActModel) -> str:
    """Hyperlinked fragment for one section.

    Every inbound reference becomes an internal anchor (#s12); every
    outbound reference links out, carrying the Act and cited-provision
    metadata for the explorer's side panel.
    """
    resolvable = set(graph_section_labels(model))
    node = section_node_id(section.number)
    out = [f'<section class="provision" id="provision-{node}" data-node="{node}">']
    out.append(
        f'<h2><span class="num">{html.escape(section.number)}</span> '
        f'<span class="heading">{html.escape(section.heading)}</span></h2>'
    )
    if section.is_contentless:
        out.append('<p class="no-content">No content.</p>')
    for sub in section.subsections:
        out.append(f'<div class="subsection" data-marker="{html.escape(sub.marker)}">')
        if sub.intro is not None:
            out.append(_line_html(sub.intro.text, sub.marker, resolvable, model.title, sub.intro.amendment))
        for line in sub.lines:
            out.append(_line_html(line.text, "", resolvable, model.title, line.amendment))
        for para in sub.paragraphs:
            out.append(f'<div class="paragraph" data-marker="{html.escape(para.marker)}">')
            first = True
            for line in para.lines:
                out.append(_line_html(line.text, para.marker if first else "", resolvable, model.title, line.amendment))
                first = False
            for sp in para.subparagraphs:
                out.append(f'<div class="subparagraph" data-marker="{html.escape(sp.marker)}">')
                sp_first = True
                for line in sp.lines:
                    out.append(_line_html(line.text, sp.marker if sp_first else "", resolvable, model.title, line.amendment))
                    sp_first = False
                out.append("</div>")
            out.append("</div>")
        out.append("</div>")
    out.append("</section>")
    return "\n".join(out)


def _line_html(text: str, marker: str, resolvable: set[str], host_title: str, amendment: bool) -> str:
    cls = "line amendment" if amendment else "line"
    marker_html = f'<span class="marker">{html.escape(marker)}</span>' if marker else ""
    return f'<p class="{cls}">{marker_html}{_markup_line(text, resolvable, host_title)}</p>'
