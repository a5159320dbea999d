import pytest

from hallmorph import HallContext, ValuedQuiver, frame_principal


@pytest.fixture(scope="session")
def a2():
    return ValuedQuiver.linear(2)


@pytest.fixture(scope="session")
def a3():
    return ValuedQuiver.linear(3)


@pytest.fixture(scope="session")
def hall_a2_q2(a2):
    ctx = HallContext(frame_principal(a2, q=2), 2)
    ctx.cat.ensure_catalog(4)
    return ctx


@pytest.fixture(scope="session")
def hall_a2_q3(a2):
    ctx = HallContext(frame_principal(a2, q=3), 3)
    ctx.cat.ensure_catalog(4)
    return ctx


@pytest.fixture(scope="session")
def hall_a3_q2(a3):
    ctx = HallContext(frame_principal(a3, q=2), 2)
    ctx.cat.ensure_catalog(4)
    return ctx


@pytest.fixture(scope="session")
def hall_a3_q3(a3):
    ctx = HallContext(frame_principal(a3, q=3), 3)
    ctx.cat.ensure_catalog(4)
    return ctx
