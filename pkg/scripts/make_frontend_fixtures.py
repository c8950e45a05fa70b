#!/usr/bin/env python3
"""Capture golden API responses for the frontend test suite.

Runs the pipeline over the bundled corpus (into a temp dir), stands up the
API in-process, and saves the responses the UI tests replay. Regenerate
whenever the sample corpus or the API schemas change.
"""

from __future__ import annotations

import json
import sys
import tempfile
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from fastapi.testclient import TestClient  # noqa: E402

from larder.corpus import sample_corpus_path  # noqa: E402
from larder.pipeline import PipelineConfig, load_artifacts, run_pipeline  # noqa: E402
from larder.service import create_app  # noqa: E402

OUT = Path(__file__).resolve().parent.parent / "frontend" / "tests" / "fixtures"


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    with tempfile.TemporaryDirectory() as tmp:
        cfg = PipelineConfig(corpus_path=str(sample_corpus_path()), output_dir=tmp)
        run_pipeline(cfg)
        app = create_app(bundle=load_artifacts(tmp))
        with TestClient(app) as client:
            fixtures = {}

            base = {"ingredients": ["garlic", "basil"]}
            first = client.post("/api/recommend", json=base)
            assert first.status_code == 200, first.text
            body = first.json()
            assert body["recommendations"], "golden query must return recipes"
            network_ids = {n["id"] for n in body["network"]["nodes"]}
            assert "onions" in network_ids, "steering fixture expects onions in the network"
            fixtures["recommend_garlic_basil.json"] = body

            excluded = client.post(
                "/api/recommend",
                json={"ingredients": ["garlic", "basil"], "exclude": ["onions"]},
            )
            assert excluded.status_code == 200
            body2 = excluded.json()
            assert all(
                "onions" not in r["ingredients"] for r in body2["recommendations"]
            )
            fixtures["recommend_garlic_basil_exclude_onions.json"] = body2

            classify = client.post(
                "/api/classify",
                json={"ingredients": ["garlic", "basil", "tomatoes", "onions"]},
            )
            assert classify.status_code == 200
            fixtures["classify_garlic_basil_tomatoes_onions.json"] = classify.json()

            autocomplete = client.get("/api/ingredients", params={"prefix": "chick"})
            assert autocomplete.json()["matches"]
            fixtures["ingredients_chick.json"] = autocomplete.json()

            fixtures["health.json"] = client.get("/api/health").json()

            error = client.post("/api/recommend", json={"ingredients": ["zzzz"]})
            assert error.status_code == 422
            fixtures["error_unknown_ingredient.json"] = error.json()

            partial = client.post(
                "/api/recommend", json={"ingredients": ["garlic", "zzzz"]}
            )
            assert partial.json()["unresolved"] == ["zzzz"]
            fixtures["recommend_with_unresolved.json"] = partial.json()

    for name, doc in fixtures.items():
        (OUT / name).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
        print(f"wrote {name}")


if __name__ == "__main__":
    main()
