"""Shared fixtures: synthetic bundles, trained models, saved artifacts.

Training fixtures use dyadic alpha values (0.5, 0.25) so that oracle
recomputations of theta are bitwise-equal to the library's (see
tests/_oracles.py); models are session-scoped because training dominates
suite runtime.
"""

from __future__ import annotations

from pathlib import Path

import pytest

from tests._synth import bundle_for, disjoint_topic_corpus
from themescope.api import ApiConfig, create_app
from themescope.corpus import save_bundle
from themescope.lda import save_model, train_lda
from themescope.thememap import build_theme_map, save_theme_map

REPO_ROOT = Path(__file__).resolve().parent.parent


@pytest.fixture(scope="session")
def sample_manifest() -> Path:
    return REPO_ROOT / "sample" / "manifest.jsonl"


@pytest.fixture(scope="session")
def mixed_bundle():
    docs, _, _ = disjoint_topic_corpus(
        n_topics=4, n_docs=24, words_per_topic=40, tokens_per_doc=160,
        seed=7, secondary_fraction=0.25)
    return bundle_for(docs, chunk_count=10)


@pytest.fixture(scope="session")
def small_model(mixed_bundle):
    return train_lda(mixed_bundle, k=4, alpha=0.5, iterations=80, seed=3)


@pytest.fixture(scope="session")
def medium_bundle():
    docs, _, _ = disjoint_topic_corpus(
        n_topics=6, n_docs=60, words_per_topic=50, tokens_per_doc=200,
        seed=11, secondary_fraction=0.3)
    return bundle_for(docs, chunk_count=12)


@pytest.fixture(scope="session")
def medium_model(medium_bundle):
    return train_lda(medium_bundle, k=8, alpha=0.25, iterations=120, seed=5)


@pytest.fixture(scope="session")
def artifact_dir(tmp_path_factory, medium_bundle, medium_model):
    """medium bundle/model/map saved to disk with their hash chain intact."""
    d = tmp_path_factory.mktemp("artifacts")
    save_bundle(medium_bundle, d / "bundle.json")
    save_model(medium_model, d / "model.json")
    tmap = build_theme_map(medium_model)
    save_theme_map(tmap, d / "map.json")
    return d


@pytest.fixture(scope="session")
def medium_map(artifact_dir, medium_model):
    return build_theme_map(medium_model)


@pytest.fixture()
def api_client(artifact_dir, tmp_path):
    from fastapi.testclient import TestClient

    config = ApiConfig(
        bundle_path=str(artifact_dir / "bundle.json"),
        model_path=str(artifact_dir / "model.json"),
        map_path=str(artifact_dir / "map.json"),
        store_path=str(tmp_path / "sessions.json"),
    )
    app = create_app(config)
    with TestClient(app) as client:
        yield client
