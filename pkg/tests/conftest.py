from pathlib import Path

import pytest

from authormine import (apply_path_filters, load_alias_map, load_releases,
                        parse_commit_log, resolve_aliases)

DATA_DIR = Path(__file__).parent / "data"
GOLDEN_DIR = DATA_DIR / "golden"

FIXTURE_LOG = DATA_DIR / "fixture_log.ndjson"
FIXTURE_ALIASES = DATA_DIR / "fixture_aliases.txt"
FIXTURE_RELEASES = DATA_DIR / "fixture_releases.txt"
FIXTURE_EXCLUSIONS = ["firmware/"]


@pytest.fixture(scope="session")
def fixture_records():
    """The bundled history, fully ingested (aliases resolved, firmware excluded)."""
    with open(FIXTURE_LOG, "rb") as fh:
        records = parse_commit_log(fh)
        records = resolve_aliases(records, load_alias_map(FIXTURE_ALIASES))
        return list(apply_path_filters(records, FIXTURE_EXCLUSIONS))


@pytest.fixture(scope="session")
def fixture_releases():
    return load_releases(FIXTURE_RELEASES)
