"""statutegraph: UK primary-legislation XML -> citation graphs + reading fragments."""

from .ingest import ActId, Cache, CachedResource, FetchPolicy, Fetcher, act_data_url, section_data_url
from .model import ActModel, Section, section_by_number, walk_lines
from .parser import ParseDiagnostics, contents, parse_act, single_section
from .refs import (
    ActTitle,
    ReferenceRecord,
    acts_in_section,
    acts_in_single_line,
    extract_all,
    ref_in_section,
    ref_in_single_line,
)

__version__ = "0.1.0"

__all__ = [
    "ActId",
    "ActModel",
    "ActTitle",
    "Cache",
    "CachedResource",
    "FetchPolicy",
    "Fetcher",
    "ParseDiagnostics",
    "ReferenceRecord",
    "Section",
    "act_data_url",
    "acts_in_section",
    "acts_in_single_line",
    "contents",
    "extract_all",
    "parse_act",
    "ref_in_section",
    "ref_in_single_line",
    "section_by_number",
    "section_data_url",
    "single_section",
    "walk_lines",
]
