import pytest

from clgram import Parser, build_program


@pytest.fixture(scope="session")
def built():
    return build_program()


@pytest.fixture(scope="session")
def program(built):
    return built[0]


@pytest.fixture(scope="session")
def lexicon(built):
    return built[1]


@pytest.fixture(scope="session")
def parser(built):
    # parses use a fresh store per attempt, so one parser is safe to share
    return Parser(built[0], built[1])
