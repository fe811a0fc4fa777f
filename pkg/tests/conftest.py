import numpy as np
import pytest

from lexecon.lexicon import RatingTable


@pytest.fixture(scope="session")
def pipeline_cfg(tmp_path_factory):
    """Config path of a fully built synthetic pipeline fixture."""
    from helpers import build_pipeline_fixture
    root = tmp_path_factory.mktemp("pipeline")
    return build_pipeline_fixture(root)


def make_table(words, values, scale=(0.0, 1.0), features=None) -> RatingTable:
    values = np.asarray(values, dtype=np.float64)
    features = tuple(features or [f"f{i}" for i in range(values.shape[1])])
    return RatingTable(feature_names=features, scale=scale,
                       entries={w: values[i] for i, w in enumerate(words)})
