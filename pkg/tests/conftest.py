import pytest

from locus_mcda import data_io as dio
from locus_mcda import load_criteria, load_flow_table, load_matrix, load_pi_matrix


@pytest.fixture(scope="session")
def med10_criteria():
    return load_criteria(dio.fixture_path("med10_criteria.json"))


@pytest.fixture(scope="session")
def med10(med10_criteria):
    return load_matrix(dio.fixture_path("med10.csv"), med10_criteria)


@pytest.fixture(scope="session")
def med10_pi():
    return load_pi_matrix(dio.fixture_path("med10_pi.csv"))


@pytest.fixture(scope="session")
def med10_flows_printed():
    return load_flow_table(dio.fixture_path("med10_flows.csv"))
