import pytest

from chaingeo import from_spec
from chaingeo.chains import Geometry

_CACHE = {}


@pytest.fixture(scope="session")
def geom():
    """Shared geometry factory; construction is deterministic, so one
    instance per ring spec serves every test."""
    def build(spec: str) -> Geometry:
        if spec not in _CACHE:
            _CACHE[spec] = Geometry(from_spec(spec))
        return _CACHE[spec]
    return build


# the desk-scale rings exercised throughout the suite
LOCAL_RINGS = [
    "gf(4)/gf(2)",
    "gf(9)/gf(3)",
    "gf(2)[t]/(t^2)",
    "gf(3)[t]/(t^2)",
    "gf(2)[t]/(t^3)",
    "gf(4)[t]/(t^2) over gf(2)",
]

PRODUCT_RINGS = ["gf(2) x gf(2)", "gf(3) x gf(3)"]

ALL_RINGS = LOCAL_RINGS + PRODUCT_RINGS
