import pytest

from towerbound import config, cover


@pytest.fixture(scope="session")
def doc1():
    return config.load_config("f2_tower1")


@pytest.fixture(scope="session")
def doc2():
    return config.load_config("f2_tower2")


@pytest.fixture(scope="session")
def doc3():
    return config.load_config("f3_tower")


@pytest.fixture(scope="session")
def doc4():
    return config.load_config("remark_comparisons")


@pytest.fixture(scope="session")
def curve_E(doc1):
    return doc1.curves["E"]


@pytest.fixture(scope="session")
def curve_H(doc2):
    return doc2.curves["H"]


@pytest.fixture(scope="session")
def curve_E3(doc3):
    return doc3.curves["E3"]


@pytest.fixture(scope="session")
def cover_k1(doc1):
    return doc1.covers["k1"]


@pytest.fixture(scope="session")
def cover_C(doc1):
    return doc1.covers["C"]


@pytest.fixture(scope="session")
def cover_k2(doc2):
    return doc2.covers["k2"]


@pytest.fixture(scope="session")
def cover_k3(doc3):
    return doc3.covers["k3"]


@pytest.fixture(scope="session")
def spectrum_k1(cover_k1):
    return cover.assemble_spectrum(cover_k1, 10)


@pytest.fixture(scope="session")
def spectrum_k2(cover_k2):
    return cover.assemble_spectrum(cover_k2, 10)


@pytest.fixture(scope="session")
def spectrum_k3(cover_k3):
    return cover.assemble_spectrum(cover_k3, 9)
