import json
import sys
from pathlib import Path

import pytest

TESTS_DIR = Path(__file__).parent
sys.path.insert(0, str(TESTS_DIR))

from statutegraph.ingest import ActId, Cache, FetchPolicy, Fetcher  # noqa: E402
from statutegraph.parser import parse_act  # noqa: E402
from statutegraph.refs import extract_all  # noqa: E402

FIXTURE_CACHE = TESTS_DIR / "fixtures" / "ha2004_cache"
EXPECTED_STATS = TESTS_DIR / "fixtures" / "ha2004_expected.json"
HA2004 = ActId("ukpga", 2004, 34)


@pytest.fixture(scope="session")
def fixture_fetcher() -> Fetcher:
    return Fetcher(Cache(FIXTURE_CACHE), FetchPolicy.FIXTURE_ONLY)


@pytest.fixture(scope="session")
def ha_parsed(fixture_fetcher):
    return parse_act(HA2004, fixture_fetcher)


@pytest.fixture(scope="session")
def ha_model(ha_parsed):
    return ha_parsed[0]


@pytest.fixture(scope="session")
def ha_diags(ha_parsed):
    return ha_parsed[1]


@pytest.fixture(scope="session")
def ha_records(ha_model):
    return extract_all(ha_model)


@pytest.fixture(scope="session")
def expected_stats():
    return json.loads(EXPECTED_STATS.read_text("utf-8"))


@pytest.fixture(scope="session")
def built_artifacts(tmp_path_factory):
    """One offline CLI build of the fixture, shared by artifact tests."""
    from statutegraph.cli import main

    out_dir = tmp_path_factory.mktemp("artifacts")
    code = main([
        "build", "--offline", "--cache", str(FIXTURE_CACHE), "--out", str(out_dir),
    ])
    assert code == 0
    return out_dir
