from pathlib import Path

import pytest

from electmine.model import encode_rows

DATA_DIR = Path(__file__).parent / "data"

# Five transactions over three binary attributes; the worked example used
# throughout: counts a:4 b:4 c:4, ab:3 ac:3 bc:3, abc:2.
D5_ROWS = [
    {"a": "1", "b": "1", "c": "1"},
    {"a": "1", "b": "1"},
    {"a": "1", "c": "1"},
    {"b": "1", "c": "1"},
    {"a": "1", "b": "1", "c": "1"},
]


@pytest.fixture(scope="session")
def d5():
    return encode_rows(D5_ROWS, ["a", "b", "c"])


@pytest.fixture(scope="session")
def d5_db(d5):
    return d5[1]


@pytest.fixture(scope="session")
def d5_dict(d5):
    return d5[0]


@pytest.fixture(scope="session")
def data_dir():
    return DATA_DIR
