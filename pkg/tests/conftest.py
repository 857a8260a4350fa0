import pytest

from ncgt.games import GameStore
from ncgt.partizan import PartizanStore


@pytest.fixture
def store():
    return GameStore()


@pytest.fixture(scope="session")
def shared_store():
    """One store for expensive pools; tests must treat it as read-mostly."""
    return GameStore()


@pytest.fixture(scope="session")
def default_pool3(shared_store):
    from ncgt.laws import default_pool
    return default_pool(shared_store, 3)


@pytest.fixture(scope="session")
def base_pool3(shared_store):
    from ncgt.laws import base_pool
    return base_pool(shared_store, 3)


@pytest.fixture(scope="session")
def small_pool3(shared_store):
    from ncgt.laws import small_pool
    return small_pool(shared_store)


@pytest.fixture
def ps3(store):
    return PartizanStore(3, store)


@pytest.fixture
def ps4(store):
    return PartizanStore(4, store)


def pytest_terminal_summary(terminalreporter):
    lines = []
    for kind in ("passed", "failed"):
        for rep in terminalreporter.stats.get(kind, []):
            props = dict(getattr(rep, "user_properties", []))
            if rep.when == "call" and "criterion" in props:
                lines.append((props["criterion"], kind.upper()[:4], rep.duration))
    if lines:
        terminalreporter.section("acceptance criteria")
        for text, status, dur in sorted(lines, key=lambda x: int(x[0].split(":")[0])):
            terminalreporter.write_line(f"criterion {text.split(':')[0]:>2} {status} "
                                        f"{dur:6.1f}s {text.split(':', 1)[1].strip()}")
