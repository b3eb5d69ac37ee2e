"""Command-line entry point: fetch / build / integrity / serve.

Exit codes: 0 success, 1 pipeline failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from http.server import SimpleHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path

from . import integrity as integrity_mod
from . import transform
from .ingest import (
    ActId,
    Cache,
    FetchPolicy,
    Fetcher,
    IngestError,
    act_data_url,
)
from .parser import ParseError, parse_act
from .refs import dangling_references, extract_all, outbound_totals

DEFAULT_ACT = "ukpga/2004/34"

# Graph-scale reference values recorded for the pinned Housing Act 2004
# snapshot; the emission log prints snapshot numbers against these.
BASELINE_GRAPH = {
    "inbound_nodes": 233,
    "inbound_links": 395,
    "outbound_nodes": 282,
    "outbound_links": 673,
    "external_acts": 39,
}


def _act_arg(text: str) -> ActId:
    try:
        return ActId.parse(text)
    except (ValueError, TypeError) as exc:
        raise argparse.ArgumentTypeError(str(exc))


def build_arg_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="statutegraph",
        description="Parse legislation XML into citation graphs and reading fragments.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--act", type=_act_arg, default=_act_arg(DEFAULT_ACT),
                       help=f"act identifier, e.g. {DEFAULT_ACT}")
        p.add_argument("--cache", default=None, help="cache directory (or set STATUTEGRAPH_CACHE)")
        p.add_argument("--offline", action="store_true",
                       help="never touch the network; use cached/fixture resources only")

    p_fetch = sub.add_parser("fetch", help="populate the cache with the act's XML")
    common(p_fetch)

    p_build = sub.add_parser("build", help="parse, extract references and emit artifacts")
    common(p_build)
    p_build.add_argument("--out", required=True, help="artifact output directory")
    p_build.add_argument("--expand-ranges", action="store_true",
                         help="also emit links for intermediate sections of ranges")

    p_int = sub.add_parser("integrity", help="regex surveys, tallies and compare pages")
    common(p_int)
    p_int.add_argument("--out", required=True, help="build artifact directory (report is written here)")
    p_int.add_argument("--patterns", default=None, help="file with extra regex patterns, one per line")
    p_int.add_argument("--section", action="append", default=[],
                       help="write a parsed-vs-original compare page for this section (repeatable)")

    p_serve = sub.add_parser("serve", help="serve an artifact directory read-only")
    p_serve.add_argument("--dir", required=True, help="artifact directory to serve")
    p_serve.add_argument("--ui", default=None, help="explorer UI bundle directory (served at /ui/)")
    p_serve.add_argument("--port", type=int, default=8323)
    return parser


def _fetcher(args) -> Fetcher:
    cache = Cache(args.cache) if args.cache else Cache.default()
    policy = FetchPolicy.FIXTURE_ONLY if args.offline else FetchPolicy.CACHE_FIRST
    return Fetcher(cache, policy)


def cmd_fetch(args) -> int:
    fetcher = _fetcher(args)
    act = args.act
    resource = fetcher.fetch(act_data_url(act))
    from .parser import contents

    model, _ = contents(resource, act)
    cached = embedded = fetched = 0
    for ref in model.iter_section_refs():
        uri = ref.document_url.rstrip("/") + "/data.xml"
        if fetcher.cache.get(uri) is not None:
            cached += 1
        elif args.offline:
            # The full-data file already embeds every section subtree; an
            # offline fetch succeeds without per-section files.
            embedded += 1
        else:
            fetcher.fetch(uri)
            fetched += 1
    total = cached + embedded + fetched
    print(f"full-data XML: {resource.source} ({len(resource.body)} bytes)")
    print(f"sections: {total} total, {cached} cached, {fetched} fetched, "
          f"{embedded} covered by the full-data file")
    return 0


def _build_pipeline(args):
    fetcher = _fetcher(args)
    model, diags = parse_act(args.act, fetcher)
    records = extract_all(model, expand_ranges=getattr(args, "expand_ranges", False))
    return fetcher, model, diags, records


def cmd_build(args) -> int:
    out_dir = Path(args.out)
    fetcher, model, diags, records = _build_pipeline(args)

    dropped: list = []
    inbound = transform.build_inbound_graph(model, records, dropped)
    outbound = transform.build_outbound_graph(model, records, None)
    transform.emit(inbound, out_dir / "inbound.json")
    transform.emit(outbound, out_dir / "outbound.json")

    (out_dir / "toc.html").write_text(transform.div_nav(model), "utf-8")
    sections_dir = out_dir / "sections"
    sections_dir.mkdir(parents=True, exist_ok=True)
    fragments = 0
    for label in transform.graph_section_labels(model):
        section = model.sections_by_number[label]
        fragment = transform.html_single_section(section, model)
        (sections_dir / f"{transform.section_node_id(label)}.html").write_text(fragment, "utf-8")
        fragments += 1

    dangling = dangling_references(model, records)
    diagnostics = {
        "sections_parsed": diags.sections_parsed,
        "sections_failed": diags.sections_failed,
        "unknown_tags": dict(sorted(diags.unknown_tags.items())),
        "dangling_references": [list(pair) for pair in dangling],
    }
    (out_dir / "diagnostics.json").write_text(
        json.dumps(diagnostics, indent=2, sort_keys=True) + "\n", "utf-8"
    )

    external_acts = sum(1 for n in outbound.nodes if n.group == "external")
    raw_inbound = sum(l.thick for l in inbound.links)
    log = {
        "act": str(args.act),
        "inbound": {
            "nodes": len(inbound.nodes),
            "links_merged_pairs": len(inbound.links),
            "links_raw_mentions": raw_inbound,
            "baseline_nodes": BASELINE_GRAPH["inbound_nodes"],
            "baseline_links": BASELINE_GRAPH["inbound_links"],
        },
        "outbound": {
            "nodes": len(outbound.nodes),
            "links_merged_pairs": len(outbound.links),
            "baseline_nodes": BASELINE_GRAPH["outbound_nodes"],
            "baseline_links": BASELINE_GRAPH["outbound_links"],
        },
        "external_acts": external_acts,
        "baseline_external_acts": BASELINE_GRAPH["external_acts"],
        "dropped_links": dropped,
        "dangling_references": [list(pair) for pair in dangling],
    }
    for scope in ("inbound", "outbound"):
        entry = log[scope]
        entry["node_delta"] = entry["nodes"] - entry["baseline_nodes"]
        entry["link_delta"] = entry["links_merged_pairs"] - entry["baseline_links"]
    (out_dir / "emission_log.json").write_text(
        json.dumps(log, indent=2, sort_keys=True) + "\n", "utf-8"
    )

    print(f"parsed {diags.sections_parsed} sections ({len(diags.sections_failed)} failed)")
    print(f"inbound graph: {len(inbound.nodes)} nodes, {len(inbound.links)} links "
          f"(baseline {BASELINE_GRAPH['inbound_nodes']}/{BASELINE_GRAPH['inbound_links']}, "
          f"raw mentions {raw_inbound})")
    print(f"outbound graph: {len(outbound.nodes)} nodes, {len(outbound.links)} links "
          f"(baseline {BASELINE_GRAPH['outbound_nodes']}/{BASELINE_GRAPH['outbound_links']})")
    print(f"external acts: {external_acts} (baseline {BASELINE_GRAPH['external_acts']})")
    for item in dropped:
        print(f"warning: dropped link {item['source']} -> {item['target']} ({item['reason']})")
    print(f"artifacts: inbound.json outbound.json toc.html sections/ ({fragments} fragments) -> {out_dir}")
    return 0


def cmd_integrity(args) -> int:
    out_dir = Path(args.out)
    for artifact in ("inbound.json", "outbound.json", "toc.html"):
        if not (out_dir / artifact).exists():
            print(f"error: missing artifact {out_dir / artifact}; run build first", file=sys.stderr)
            return 1

    fetcher, model, _, records = _build_pipeline(args)
    extra = []
    if args.patterns:
        extra = [
            line.strip()
            for line in Path(args.patterns).read_text("utf-8").splitlines()
            if line.strip()
        ]
    report = integrity_mod.build_report(model, outbound_totals(records), extra)

    payload = {
        "survey": [
            {
                "pattern": row.pattern,
                "occurrences": row.occurrences,
                "baseline": integrity_mod.BASELINE_SURVEY_COUNTS.get(row.pattern),
                "sample_locations": [
                    {"section": s, "path": list(p)} for s, p in row.sample_locations
                ],
            }
            for row in report.survey
        ],
        "variant_survey": [
            {"pattern": row.pattern, "occurrences": row.occurrences}
            for row in report.variant_survey
        ],
        "structural": report.structural,
        "extractor_vs_survey": report.extractor_vs_survey,
    }
    (out_dir / "integrity_report.json").write_text(
        json.dumps(payload, indent=2, sort_keys=True) + "\n", "utf-8"
    )
    lines = integrity_mod.report_lines(report)
    (out_dir / "integrity_report.txt").write_text("\n".join(lines) + "\n", "utf-8")
    for line in lines:
        print(line)

    if args.section:
        compare_dir = out_dir / "compare"
        compare_dir.mkdir(parents=True, exist_ok=True)
        urls = {ref.number: ref.document_url for ref in model.iter_section_refs()}
        for label in args.section:
            page = integrity_mod.compare_view(model, label, fetcher.cache, urls.get(label, ""))
            target = compare_dir / f"s{label}.html"
            target.write_text(page, "utf-8")
            print(f"compare page: {target}")
    return 0


class _ReadOnlyHandler(SimpleHTTPRequestHandler):
    ui_dir: str = ""
    artifact_dir: str = ""

    def translate_path(self, path):
        path = path.split("?", 1)[0].split("#", 1)[0]
        if self.ui_dir and (path == "/ui" or path.startswith("/ui/")):
            root, rel = self.ui_dir, path[3:].lstrip("/") or "index.html"
        else:
            root, rel = self.artifact_dir, path.lstrip("/") or "index.html"
        root_path = Path(root).resolve()
        target = (root_path / rel).resolve()
        if root_path not in target.parents and target != root_path:
            return str(root_path / "_outside_root_")  # resolves to 404
        return str(target)

    def do_POST(self):  # read-only contract
        self.send_error(405, "read-only server")

    do_PUT = do_DELETE = do_PATCH = do_POST

    def log_message(self, fmt, *fmt_args):
        sys.stderr.write("serve: " + fmt % fmt_args + "\n")


def cmd_serve(args) -> int:
    handler = type(
        "Handler",
        (_ReadOnlyHandler,),
        {"ui_dir": args.ui or "", "artifact_dir": args.dir},
    )
    try:
        server = ThreadingHTTPServer(("127.0.0.1", args.port), handler)
    except OSError as exc:
        print(f"error: cannot bind port {args.port}: {exc}", file=sys.stderr)
        return 1
    print(f"serving {args.dir} on http://127.0.0.1:{args.port}/ (read-only)")
    if args.ui:
        print(f"explorer UI at http://127.0.0.1:{args.port}/ui/")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
    return 0


def main(argv=None) -> int:
    args = build_arg_parser().parse_args(argv)
    handlers = {
        "fetch": cmd_fetch,
        "build": cmd_build,
        "integrity": cmd_integrity,
        "serve": cmd_serve,
    }
    try:
        return handlers[args.command](args)
    except (IngestError, ParseError, integrity_mod.IntegrityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
