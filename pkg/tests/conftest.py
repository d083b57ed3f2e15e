import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from reviewrank import Scale, load_dataset
from reviewrank.cli import DEFAULT_CRITERIA
from reviewrank.ingestion import load_counts_fixture, load_matrix_fixture

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

ALTERNATIVES = ("x1", "x2", "x3", "x4")
EXPERTS = ("e1", "e2", "e3", "e4", "e5", "e6")


@pytest.fixture(scope="session")
def fixtures_dir():
    return FIXTURES


@pytest.fixture(scope="session")
def scale():
    return Scale(2)


@pytest.fixture(scope="session")
def criteria():
    return DEFAULT_CRITERIA


@pytest.fixture(scope="session")
def dataset():
    return load_dataset(FIXTURES / "corpus" / "restaurants.json")


def load_expert_matrices(name, criteria, scale):
    directory = FIXTURES / "matrices" / name
    return {
        path.stem: load_matrix_fixture(path, criteria, scale)
        for path in sorted(directory.glob("*.csv"))
    }


@pytest.fixture(scope="session")
def ite_matrices(criteria, scale):
    return load_expert_matrices("ite", criteria, scale)


@pytest.fixture(scope="session")
def ine_matrices(criteria, scale):
    return load_expert_matrices("ine", criteria, scale)


@pytest.fixture(scope="session")
def ip_combined_matrices(criteria, scale):
    return load_expert_matrices("ip_combined", criteria, scale)


@pytest.fixture(scope="session")
def ip_annotated_matrices(criteria, scale):
    return load_expert_matrices("ip_annotated", criteria, scale)


@pytest.fixture(scope="session")
def cp_combined(criteria, scale):
    return load_matrix_fixture(FIXTURES / "matrices" / "cp_combined.csv", criteria, scale)


@pytest.fixture(scope="session")
def extracted_counts():
    return load_counts_fixture(FIXTURES / "counts" / "extracted_opinions.csv")


@pytest.fixture(scope="session")
def combined_counts():
    return load_counts_fixture(FIXTURES / "counts" / "combined_totals.csv")
