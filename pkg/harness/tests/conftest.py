import os

os.environ.setdefault("HF_HUB_OFFLINE", "1")
os.environ.setdefault("TRANSFORMERS_OFFLINE", "1")
os.environ.setdefault("TOKENIZERS_PARALLELISM", "false")

import pytest
from harness_fixtures import build_tiny_model_dir, make_rows, write_export_csv


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "acceptance(name): marks a test as an acceptance criterion"
    )


@pytest.fixture(scope="session")
def tiny_model_dir(tmp_path_factory):
    return build_tiny_model_dir(tmp_path_factory.mktemp("model") / "tiny-bert")


@pytest.fixture
def export_csvs(tmp_path):
    train = write_export_csv(tmp_path / "train.csv", make_rows(32, seed=1))
    test = write_export_csv(tmp_path / "test.csv", make_rows(12, seed=2, start_id=1000))
    return train, test
