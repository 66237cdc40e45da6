import pytest

from finring.catalog import build_catalog
from finring.ring import cyclic_ring, direct_product, matrix_ring, zero_ring

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def catalog():
    return build_catalog()


@pytest.fixture(scope="session")
def catalog_dir(tmp_path_factory, catalog):
    d = tmp_path_factory.mktemp("catalog")
    catalog.save(d)
    return d


@pytest.fixture(scope="session")
def rings():
    z2 = cyclic_ring(2)
    return {
        "Z2": z2,
        "Z4": cyclic_ring(4),
        "Z8": cyclic_ring(8),
        "zero2": zero_ring(2),
        "zero4": zero_ring(4),
        "K4": direct_product(z2, z2),
        "M2": matrix_ring(2, 2),
    }


@pytest.fixture
def record_criterion():
    def record(number, title, passed, detail=""):
        status = "PASS" if passed else "FAIL"
        ACCEPTANCE_LINES.append(f"criterion {number:>2} [{status}] {title}" + (f" ({detail})" if detail else ""))
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
