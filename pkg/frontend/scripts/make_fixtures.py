#!/usr/bin/env python3
"""Record backend responses as JSON fixtures for the explorer-ui tests.

Trains a small synthetic corpus with 85 themes, serves it through the
HTTP app in-process, and captures the payloads the UI tests replay with
a mocked fetch.  Rerun after backend payload changes:

    python3 frontend/scripts/make_fixtures.py
"""

from __future__ import annotations

import json
import tempfile
from pathlib import Path

import numpy as np
from fastapi.testclient import TestClient

from themescope.api import ApiConfig, create_app
from themescope.corpus import (BundleConfig, Document, build_bundle,
                               save_bundle)
from themescope.lda import save_model, train_lda
from themescope.thememap import build_theme_map, save_theme_map

K = 85
WORDS_PER_THEME = 12
DOCS = 120
TOKENS_PER_DOC = 200
CHUNKS_PER_DOC = 10
FIXTURES = Path(__file__).resolve().parent.parent / "tests" / "fixtures"


def theme_word(theme: int, word: int) -> str:
    def pair(n: int) -> str:
        return chr(97 + n // 26) + chr(97 + n % 26)

    return pair(theme) + pair(word) + "zz"


def synthetic_corpus(rng: np.random.Generator) -> list[Document]:
    """Mixture documents over 85 disjoint-vocabulary themes.

    Titles share no text with the bodies so scans for leaked titles
    cannot collide with rendered corpus words.
    """
    vocab = [[theme_word(t, w) for w in range(WORDS_PER_THEME)]
             for t in range(K)]
    docs = []
    for i in range(DOCS):
        n_topics = int(rng.integers(2, 5))
        topics = rng.choice(K, size=n_topics, replace=False)
        mix = rng.dirichlet(np.full(n_topics, 2.0))
        words = []
        for _ in range(TOKENS_PER_DOC):
            theme = int(topics[rng.choice(n_topics, p=mix)])
            words.append(vocab[theme][int(rng.integers(WORDS_PER_THEME))])
        docs.append(Document(
            doc_id=f"paper-{i:03d}",
            title=f"Hidden Study {i:03d}",
            body=" ".join(words),
        ))
    return docs


def save(name: str, payload) -> None:
    path = FIXTURES / name
    path.write_text(json.dumps(payload, sort_keys=True) + "\n",
                    encoding="utf-8")
    print(f"wrote {path.relative_to(Path.cwd())}"
          if path.is_relative_to(Path.cwd()) else f"wrote {path}")


def record(client: TestClient, corpus: list[Document]) -> None:
    FIXTURES.mkdir(parents=True, exist_ok=True)

    about = client.get("/v1/about").json()
    save("about.json", about)
    save("themes.json", client.get("/v1/themes").json())

    details = {}
    for theme in client.get("/v1/themes").json()["payload"]["themes"]:
        tid = theme["theme_id"]
        details[str(tid)] = client.get(f"/v1/themes/{tid}").json()
    save("theme_details.json", details)

    papers = {}
    for doc in corpus:
        papers[doc.doc_id] = client.get(f"/v1/papers/{doc.doc_id}").json()
    save("papers.json", papers)
    save("titles.json", {doc.doc_id: doc.title for doc in corpus})

    session = client.post("/v1/sessions").json()
    save("session.json", session)

    # The scripted run clicks one theme and selects six of its papers, so
    # pick the first theme with at least six ranked papers and record the
    # excerpt body for exactly that selection.
    chosen = None
    for theme in client.get("/v1/themes").json()["payload"]["themes"]:
        papers_for_theme = details[str(theme["theme_id"])]["papers"]
        if len(papers_for_theme) >= 6:
            chosen = theme["theme_id"]
            break
    if chosen is None:
        raise SystemExit("no theme has six ranked papers; regenerate corpus")
    selection = [p["doc_id"]
                 for p in details[str(chosen)]["papers"][:6]]
    sid = session["session_id"]
    put = client.put(f"/v1/sessions/{sid}/selection",
                     json={"doc_ids": selection})
    put.raise_for_status()
    excerpt = client.get(f"/v1/sessions/{sid}/excerpt-map")
    excerpt.raise_for_status()
    save("e2e.json", {
        "theme_id": chosen,
        "selection": selection,
        "excerpt": excerpt.json(),
    })


def main() -> None:
    rng = np.random.default_rng(7)
    corpus = synthetic_corpus(rng)
    bundle = build_bundle(corpus, BundleConfig(chunk_count=CHUNKS_PER_DOC,
                                               min_df=1,
                                               max_df_fraction=1.0))
    model = train_lda(bundle, k=K, iterations=60, seed=1)

    with tempfile.TemporaryDirectory() as tmp:
        base = Path(tmp)
        save_bundle(bundle, base / "bundle.json")
        # content_hash is assigned on save; the map must link to it.
        save_model(model, base / "model.json")
        tmap = build_theme_map(model, clusters=12)
        print(f"{len(bundle.documents)} docs, {len(bundle.chunks)} chunks, "
              f"{tmap.tree.n_clusters} clusters, "
              f"{len(tmap.empty_themes)} empty themes")
        save_theme_map(tmap, base / "map.json")
        config = ApiConfig(
            bundle_path=str(base / "bundle.json"),
            model_path=str(base / "model.json"),
            map_path=str(base / "map.json"),
            store_path=str(base / "sessions.json"),
        )
        record(TestClient(create_app(config)), corpus)


if __name__ == "__main__":
    main()
