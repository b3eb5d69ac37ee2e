"""Fetching and caching of legislation XML resources.

Every resource is keyed by its canonical persistent URI. A mandatory
file-backed cache makes the rest of the pipeline runnable fully offline
against previously fetched (or checked-in) snapshots.
"""

from __future__ import annotations

import datetime as _dt
import hashlib
import json
import os
import re
import threading
import time
import xml.etree.ElementTree as ET
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Optional
from urllib.parse import urlsplit, urlunsplit

BASE_URL = "https://www.legislation.gov.uk"
CACHE_ENV = "STATUTEGRAPH_CACHE"
# Test hook: rewrites the canonical host when actually issuing requests,
# while cache keys keep the canonical URI.
BASE_URL_ENV = "STATUTEGRAPH_BASE_URL"
USER_AGENT = "statutegraph/0.1 (legislation citation-graph pipeline; polite batch fetcher)"
MIN_REQUEST_INTERVAL = 0.5  # seconds between network requests, process-wide

_EARLIEST_YEAR = 1235  # oldest statute on the books


class IngestError(Exception):
    """Base class for fetch/cache failures."""


class NetworkUnavailable(IngestError):
    """Offline policy miss, or the network could not be reached."""


class MalformedResponse(IngestError):
    """A .xml endpoint returned a body that does not parse as XML."""


class HttpError(IngestError):
    def __init__(self, status: int, uri: str):
        super().__init__(f"HTTP {status} for {uri}")
        self.status = status
        self.uri = uri


class FetchPolicy(str, Enum):
    CACHE_FIRST = "cache_first"
    NETWORK_FIRST = "network_first"
    FIXTURE_ONLY = "fixture_only"


@dataclass(frozen=True)
class ActId:
    """URI components of one Act, e.g. ukpga/2004/34."""

    doc_class: str
    year: int
    number: int

    def __post_init__(self):
        if not self.doc_class or not re.fullmatch(r"[a-z]+", self.doc_class):
            raise ValueError(f"doc_class must be lowercase ASCII, got {self.doc_class!r}")
        current_year = _dt.date.today().year
        if not _EARLIEST_YEAR <= self.year <= current_year:
            raise ValueError(f"year {self.year} outside [{_EARLIEST_YEAR}, {current_year}]")
        if self.number < 1:
            raise ValueError(f"number must be >= 1, got {self.number}")

    @classmethod
    def parse(cls, text: str) -> "ActId":
        """Parse "ukpga/2004/34" into an ActId."""
        parts = text.strip().strip("/").split("/")
        if len(parts) != 3:
            raise ValueError(f"expected doc_class/year/number, got {text!r}")
        return cls(parts[0], int(parts[1]), int(parts[2]))

    @property
    def uri_path(self) -> str:
        return f"{self.doc_class}/{self.year}/{self.number}"

    def __str__(self) -> str:
        return self.uri_path


@dataclass(frozen=True)
class CachedResource:
    uri: str
    body: bytes
    fetched_at: _dt.datetime
    source: str  # "network" | "cache" | "fixture"

    @property
    def text(self) -> str:
        return self.body.decode("utf-8")


def act_data_url(act: ActId) -> str:
    """Locator of the full-data XML file for one Act."""
    return f"{BASE_URL}/{act.uri_path}/data.xml"


def section_url(act: ActId, label) -> str:
    """Locator of one section's page (labels may carry suffixes, "155A")."""
    return f"{BASE_URL}/{act.uri_path}/section/{label}"


def section_data_url(act: ActId, section_number) -> str:
    """Locator of one section's XML file."""
    if isinstance(section_number, int) and section_number < 1:
        raise ValueError(f"section_number must be >= 1, got {section_number}")
    return f"{section_url(act, section_number)}/data.xml"


def normalize_uri(uri: str) -> str:
    """Canonical form: lowercase scheme/host, no trailing slash. Idempotent."""
    parts = urlsplit(uri.strip())
    path = re.sub(r"/{2,}", "/", parts.path).rstrip("/")
    return urlunsplit((parts.scheme.lower(), parts.netloc.lower(), path, parts.query, ""))


def _slug_for(uri: str) -> str:
    """Readable, collision-free cache filename derived from the URI."""
    norm = normalize_uri(uri)
    digest = hashlib.sha256(norm.encode("utf-8")).hexdigest()[:10]
    tail = urlsplit(norm).path.strip("/") or "root"
    slug = re.sub(r"[^A-Za-z0-9._-]+", "_", tail)
    stem, dot, ext = slug.rpartition(".")
    if dot and ext.isalnum() and len(ext) <= 4:
        return f"{stem}-{digest}.{ext}"
    return f"{slug}-{digest}.html"


class Cache:
    """One file per resource plus a manifest with retrieval metadata.

    Writes are serialized per URI and atomic (tmp file + rename) so
    concurrent fetchers of distinct URIs never corrupt each other.
    """

    MANIFEST = "manifest.json"

    def __init__(self, root):
        self.root = Path(root)
        self._lock = threading.Lock()
        self._uri_locks: dict[str, threading.Lock] = {}

    @classmethod
    def default(cls) -> "Cache":
        root = os.environ.get(CACHE_ENV) or os.path.join(
            os.path.expanduser("~"), ".cache", "statutegraph"
        )
        return cls(root)

    def _manifest_path(self) -> Path:
        return self.root / self.MANIFEST

    def _load_manifest(self) -> dict:
        path = self._manifest_path()
        if not path.exists():
            return {}
        return json.loads(path.read_text("utf-8"))

    def _uri_lock(self, uri: str) -> threading.Lock:
        with self._lock:
            return self._uri_locks.setdefault(uri, threading.Lock())

    def get(self, uri: str, source: str = "cache") -> Optional[CachedResource]:
        uri = normalize_uri(uri)
        entry = self._load_manifest().get(uri)
        if entry is None:
            return None
        path = self.root / entry["file"]
        if not path.exists():
            return None
        fetched_at = _dt.datetime.fromisoformat(entry["fetched_at"])
        return CachedResource(uri, path.read_bytes(), fetched_at, source)

    def put(self, uri: str, body: bytes, fetched_at: Optional[_dt.datetime] = None) -> Path:
        uri = normalize_uri(uri)
        fetched_at = fetched_at or _dt.datetime.now(_dt.timezone.utc)
        filename = _slug_for(uri)
        with self._uri_lock(uri):
            self.root.mkdir(parents=True, exist_ok=True)
            tmp = self.root / (filename + ".tmp")
            tmp.write_bytes(body)
            tmp.replace(self.root / filename)
        with self._lock:
            manifest = self._load_manifest()
            manifest[uri] = {"file": filename, "fetched_at": fetched_at.isoformat()}
            tmp = self._manifest_path().with_suffix(".tmp")
            tmp.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n", "utf-8")
            tmp.replace(self._manifest_path())
        return self.root / filename

    def __contains__(self, uri: str) -> bool:
        return self.get(uri) is not None

    def __len__(self) -> int:
        return len(self._load_manifest())


class _RateLimiter:
    """Process-wide politeness gate between consecutive network requests."""

    def __init__(self, interval: float):
        self.interval = interval
        self._lock = threading.Lock()
        self._last = 0.0

    def wait(self):
        with self._lock:
            now = time.monotonic()
            delay = self._last + self.interval - now
            if delay > 0:
                time.sleep(delay)
            self._last = time.monotonic()


_rate_limiter = _RateLimiter(MIN_REQUEST_INTERVAL)


class Fetcher:
    """Policy-driven resource retrieval backed by a Cache."""

    def __init__(self, cache: Optional[Cache] = None, policy: FetchPolicy = FetchPolicy.CACHE_FIRST):
        self.cache = cache if cache is not None else Cache.default()
        self.policy = policy

    def fetch(self, uri: str, policy: Optional[FetchPolicy] = None) -> CachedResource:
        policy = policy or self.policy
        uri = normalize_uri(uri)
        if policy is not FetchPolicy.NETWORK_FIRST:
            source = "fixture" if policy is FetchPolicy.FIXTURE_ONLY else "cache"
            hit = self.cache.get(uri, source=source)
            if hit is not None:
                return hit
            if policy is FetchPolicy.FIXTURE_ONLY:
                raise NetworkUnavailable(f"not in cache and network disabled: {uri}")
        try:
            return self._fetch_network(uri)
        except (NetworkUnavailable, HttpError, MalformedResponse):
            if policy is FetchPolicy.NETWORK_FIRST:
                hit = self.cache.get(uri)
                if hit is not None:
                    return hit
            raise

    def _fetch_network(self, uri: str) -> CachedResource:
        import requests

        _rate_limiter.wait()
        request_url = uri
        base_override = os.environ.get(BASE_URL_ENV)
        if base_override:
            request_url = uri.replace(BASE_URL, base_override.rstrip("/"), 1)
        try:
            resp = requests.get(request_url, headers={"User-Agent": USER_AGENT}, timeout=30)
        except requests.RequestException as exc:
            raise NetworkUnavailable(f"{uri}: {exc}") from exc
        if resp.status_code != 200:
            raise HttpError(resp.status_code, uri)
        body = resp.content
        if uri.endswith(".xml"):
            try:
                ET.fromstring(body)
            except ET.ParseError as exc:
                raise MalformedResponse(f"{uri}: {exc}") from exc
        fetched_at = _dt.datetime.now(_dt.timezone.utc)
        self.cache.put(uri, body, fetched_at)
        return CachedResource(uri, body, fetched_at, "network")
