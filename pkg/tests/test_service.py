import json
from pathlib import Path

import pytest
from fastapi.testclient import TestClient
from jsonschema import Draft202012Validator
from referencing import Registry, Resource

from larder.service import create_app

SCHEMA_DIR = Path(__file__).resolve().parent.parent / "src" / "larder" / "schemas"


def schema_validator(name: str) -> Draft202012Validator:
    resources = []
    for path in SCHEMA_DIR.glob("*.schema.json"):
        doc = json.loads(path.read_text())
        resource = Resource.from_contents(doc)
        resources.append((doc["$id"], resource))
        resources.append((path.name, resource))
    registry = Registry().with_resources(resources)
    schema = json.loads((SCHEMA_DIR / name).read_text())
    return Draft202012Validator(schema, registry=registry)


@pytest.fixture(scope="module")
def client(bundle):
    app = create_app(bundle=bundle)
    with TestClient(app, raise_server_exceptions=False) as client:
        yield client


class TestRecommendEndpoint:
    def test_garlic_basil(self, client):
        resp = client.post("/api/recommend", json={"ingredients": ["garlic", "basil"]})
        assert resp.status_code == 200
        body = resp.json()
        assert body["recommendations"]
        for rec in body["recommendations"]:
            assert "basil" in rec["ingredients"]
            assert "garlic" in rec["ingredients"]
        assert body["unresolved"] == []
        in_base = {n["id"] for n in body["network"]["nodes"] if n["in_base"]}
        assert in_base == {"garlic", "basil"}
        schema_validator("recommend_response.schema.json").validate(body)

    def test_unknown_only_is_422(self, client):
        resp = client.post("/api/recommend", json={"ingredients": ["zzzz"]})
        assert resp.status_code == 422
        body = resp.json()
        assert body["code"] == "unknown_ingredient"
        assert body["details"]["unresolved"] == ["zzzz"]
        schema_validator("api_error.schema.json").validate(body)

    def test_include_exclude_overlap_is_400(self, client):
        resp = client.post(
            "/api/recommend", json={"ingredients": ["garlic"], "exclude": ["garlic"]}
        )
        assert resp.status_code == 400
        assert resp.json()["code"] == "bad_request"

    def test_empty_ingredients_is_400(self, client):
        resp = client.post("/api/recommend", json={"ingredients": []})
        assert resp.status_code == 400

    def test_exclude_filters_results(self, client):
        filtered = client.post(
            "/api/recommend", json={"ingredients": ["garlic"], "exclude": ["onions"]}
        ).json()
        assert filtered["recommendations"]
        for rec in filtered["recommendations"]:
            assert "onions" not in rec["ingredients"]
        assert all(n["id"] != "onions" for n in filtered["network"]["nodes"])

    def test_network_matches_recommendations(self, client):
        body = client.post("/api/recommend", json={"ingredients": ["garlic", "basil"]}).json()
        ingredients = {i for rec in body["recommendations"] for i in rec["ingredients"]}
        node_ids = {n["id"] for n in body["network"]["nodes"]}
        assert node_ids == ingredients

    def test_byte_identical_responses(self, client):
        payload = {"ingredients": ["garlic", "basil"], "exclude": ["onions"]}
        first = client.post("/api/recommend", json=payload)
        second = client.post("/api/recommend", json=payload)
        assert first.content == second.content

    def test_malformed_body_conforms_to_error_schema(self, client):
        resp = client.post("/api/recommend", json={"ingredients": "garlic"})
        assert resp.status_code == 400
        schema_validator("api_error.schema.json").validate(resp.json())

    def test_unresolved_reported_alongside_results(self, client):
        resp = client.post("/api/recommend", json={"ingredients": ["garlic", "zzzz"]})
        assert resp.status_code == 200
        assert resp.json()["unresolved"] == ["zzzz"]


class TestClassifyEndpoint:
    def test_example_shape(self, client):
        resp = client.post(
            "/api/classify", json={"ingredients": ["garlic", "basil", "tomatoes", "onions"]}
        )
        assert resp.status_code == 200
        body = resp.json()
        assert set(body["per_taxonomy"]) == {"cuisines", "dietary", "course"}
        for info in body["per_taxonomy"].values():
            assert info["assigned"]
            for cls in info["assigned"]:
                assert cls in info["probabilities"]
        schema_validator("classify_response.schema.json").validate(body)

    def test_empty_resolved_is_400(self, client):
        resp = client.post("/api/classify", json={"ingredients": ["zzzz"]})
        assert resp.status_code == 400

    def test_stateless_determinism(self, client):
        payload = {"ingredients": ["garlic", "basil"]}
        assert (
            client.post("/api/classify", json=payload).content
            == client.post("/api/classify", json=payload).content
        )


class TestIngredientsEndpoint:
    def test_prefix_match(self, client):
        resp = client.get("/api/ingredients", params={"prefix": "chick"})
        names = [m["name"] for m in resp.json()["matches"]]
        assert any(n.startswith("chicken") for n in names)
        schema_validator("ingredients_response.schema.json").validate(resp.json())

    def test_empty_prefix_first_25(self, client, bundle):
        resp = client.get("/api/ingredients")
        names = [m["name"] for m in resp.json()["matches"]]
        assert names == sorted(bundle.lexicon.canon.values())[:25]

    def test_no_matches(self, client):
        resp = client.get("/api/ingredients", params={"prefix": "xyzzy"})
        assert resp.json() == {"matches": []}


class TestHealthEndpoint:
    def test_loading_before_bundle(self):
        app = create_app()
        with TestClient(app) as client:
            body = client.get("/api/health").json()
            assert body == {"status": "loading", "artifact_manifest_hash": None, "counts": None}
            schema_validator("health_response.schema.json").validate(body)

    def test_ready_counts_match_manifest(self, client, bundle):
        body = client.get("/api/health").json()
        assert body["status"] == "ready"
        assert body["artifact_manifest_hash"] == bundle.manifest_hash
        assert body["counts"]["recipes"] == bundle.manifest["counts"]["recipes"]
        assert body["counts"]["rules"] == bundle.manifest["counts"]["rules"]
        schema_validator("health_response.schema.json").validate(body)

    def test_repeated_calls_identical(self, client):
        assert client.get("/api/health").content == client.get("/api/health").content

    def test_data_endpoints_503_while_loading(self):
        app = create_app()
        with TestClient(app) as client:
            resp = client.post("/api/recommend", json={"ingredients": ["garlic"]})
            assert resp.status_code == 503
            assert resp.json()["code"] == "not_ready"


def test_cors_headers_for_configured_origin(bundle):
    app = create_app(bundle=bundle, cors_origins=("http://localhost:5173",))
    with TestClient(app) as client:
        resp = client.get("/api/health", headers={"Origin": "http://localhost:5173"})
        assert resp.headers.get("access-control-allow-origin") == "http://localhost:5173"
        other = client.get("/api/health", headers={"Origin": "http://evil.example"})
        assert "access-control-allow-origin" not in other.headers


def test_internal_errors_conform_to_schema(bundle):
    app = create_app(bundle=bundle)

    @app.get("/boom")
    async def boom():
        raise RuntimeError("kaput")

    with TestClient(app, raise_server_exceptions=False) as client:
        resp = client.get("/boom")
        assert resp.status_code == 500
        body = resp.json()
        assert body["code"] == "internal"
        schema_validator("api_error.schema.json").validate(body)


def test_nonpositive_max_results_is_bad_request(bundle):
    app = create_app(bundle=bundle)
    with TestClient(app) as client:
        resp = client.post(
            "/api/recommend", json={"ingredients": ["garlic"], "max_results": -1}
        )
        assert resp.status_code == 400
        assert resp.json()["code"] == "bad_request"


def test_embedded_network_equals_graph_of_returned_recommendations(bundle):
    # the response's network must be exactly the export of the graph built
    # from the recommendations it ships with
    from larder.ingnet import build_graph, export_graph
    from larder.recommend import Recommendation

    app = create_app(bundle=bundle)
    with TestClient(app) as client:
        body = client.post(
            "/api/recommend", json={"ingredients": ["garlic", "basil"]}
        ).json()
    by_id = {r.id: r for r in bundle.corpus.recipes}
    include, _ = bundle.resolve_many(["garlic", "basil"])
    recs = []
    for rec in body["recommendations"]:
        recipe = by_id[rec["recipe_id"]]
        recs.append(
            Recommendation(
                recipe,
                rec["matched_combination_size"],
                frozenset(rec["matched_consequents"]),
            )
        )
    rebuilt = export_graph(
        build_graph(recs, base=frozenset(include), names=bundle.lexicon.canon)
    )
    assert body["network"] == rebuilt
