import pytest

from impostoron.cli import data_dir
from impostoron.dielectric import load_liquid_file


@pytest.fixture(scope="session")
def liquids():
    """The four packaged reference liquid models, keyed by file stem."""
    return {
        stem: load_liquid_file(data_dir() / f"{stem}.liq")
        for stem in ("ipa", "eg", "water", "dispersionless")
    }
