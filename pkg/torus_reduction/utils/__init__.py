from importlib.metadata import PackageNotFoundError
from importlib.metadata import version as _distribution_version
from pathlib import Path

PACKAGE_NAME = "torus-reduction"
SCHEMA_VERSION = 1
FIXTURES_PATH = Path(__file__).parent.parent / "fixtures"
BUNDLED_FIXTURES = ("s2", "cp2", "cp2xcp2", "linear")


def engine_version() -> str:
    try:
        return _distribution_version(PACKAGE_NAME)
    except PackageNotFoundError:
        return "0.0.0"


def bundled_fixture(name: str) -> Path:
    return FIXTURES_PATH / f"{name}.json"


__all__ = [
    "BUNDLED_FIXTURES",
    "FIXTURES_PATH",
    "PACKAGE_NAME",
    "SCHEMA_VERSION",
    "bundled_fixture",
    "engine_version",
]
