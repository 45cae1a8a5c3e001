from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from signbench.registry import load_manifest
from signbench.store import Store
from signbench.workbench import Workbench

MANIFESTS = Path(__file__).parent.parent / "manifests"

FACE = "04-01-001-01-01-01"
NOD = "04-02-001-01-01-01"
NOD2 = "04-02-002-01-01-01"
PINCH = "01-01-002-01-01-01"
GAZE = "07-01-001-01-01-01"
INDEX_BASE = "01-01-001-01-01-01"
TWIST_V = "02-02-001-01-01-01"


def fixed_clock():
    return "2026-01-01T00:00:00+00:00"


@pytest.fixture(scope="session")
def demo_registry():
    return load_manifest(MANIFESTS / "demo.tsv")


@pytest.fixture(scope="session")
def gaps_registry():
    return load_manifest(MANIFESTS / "motion_gaps.tsv")


@pytest.fixture()
def store(demo_registry, tmp_path):
    return Store(tmp_path / "store", demo_registry, clock=fixed_clock)


@pytest.fixture()
def bench(demo_registry, store):
    return Workbench(demo_registry, store)
