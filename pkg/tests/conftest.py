import pytest

from uqsl2.qgroup import AlgebraContext
from uqsl2.quasihopf import QuasiHopfData


@pytest.fixture(scope="session")
def actx() -> AlgebraContext:
    """One algebra context at n = 4, shared across the whole run."""
    return AlgebraContext(4)


@pytest.fixture(scope="session")
def qh(actx) -> QuasiHopfData:
    """Quasi-Hopf structure data over the shared context."""
    return QuasiHopfData(actx)
