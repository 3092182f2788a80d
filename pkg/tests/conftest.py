import pytest

from thetalab import HypersurfaceRing, ModulePresentation, ThetaEngine


@pytest.fixture(scope="session")
def nodes():
    return HypersurfaceRing(["x", "y"], "x*y")


@pytest.fixture(scope="session")
def three_lines():
    return HypersurfaceRing(["x", "y"], "x^2*y - x*y^2")


@pytest.fixture(scope="session")
def quadric():
    return HypersurfaceRing(["x", "y", "u", "v"], "x*u + y*v")


@pytest.fixture(scope="session")
def quadric5():
    return HypersurfaceRing(["x", "y", "z", "u", "v", "w"], "x*u + y*v + z*w")


@pytest.fixture(scope="session")
def fermat():
    return HypersurfaceRing(["x", "y", "z"], "x^3 + y^3 + z^3")


@pytest.fixture(scope="session")
def cusp():
    return HypersurfaceRing(["y0", "y1"], "y0^3 + y1^2", [2, 3])


@pytest.fixture(scope="session")
def engine():
    return ThetaEngine()


@pytest.fixture(scope="session")
def lines(quadric):
    """Two lines from each ruling of the quadric surface."""
    cyc = ModulePresentation.cyclic
    return {
        "xy": cyc(quadric, "L", ["x", "y"]),
        "uv": cyc(quadric, "L'", ["u", "v"]),
        "xv": cyc(quadric, "P", ["x", "v"]),
    }


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.RESULTS:
        terminalreporter.write_line(line)
