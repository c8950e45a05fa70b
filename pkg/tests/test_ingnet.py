import json
import random

from conftest import make_corpus
from larder.ingnet import build_graph, export_graph, graph_from_document, graph_to_json
from larder.recommend import Recommendation
from oracles import pairwise_cooccurrence, union_find_components


def recs_from_sets(ingredient_sets):
    corpus = make_corpus(
        [(f"r{i}", f"R{i}", ids, {"course": ["Main Dish"]}) for i, ids in enumerate(ingredient_sets)]
    )
    return [Recommendation(r, len(r.ingredient_ids), frozenset()) for r in corpus.recipes]


class TestBuildGraph:
    def test_empty(self):
        graph = build_graph([])
        assert graph.nodes == () and graph.edges == () and graph.clusters == ()

    def test_hand_counted_weights(self):
        recs = recs_from_sets([{"a", "b", "c"}, {"a", "b"}])
        graph = build_graph(recs)
        weights = {(e.a, e.b): e.weight for e in graph.edges}
        assert weights == {("a", "b"): 2, ("a", "c"): 1, ("b", "c"): 1}

    def test_pruning_keeps_isolated_nodes(self):
        recs = recs_from_sets([{"a", "b", "c"}, {"a", "b"}])
        graph = build_graph(recs, min_edge_weight=2)
        assert [(e.a, e.b) for e in graph.edges] == [("a", "b")]
        assert {n.id for n in graph.nodes} == {"a", "b", "c"}
        assert set(graph.clusters) == {("a", "b"), ("c",)}

    def test_degree_counts_pruned_edges(self):
        recs = recs_from_sets([{"a", "b", "c"}, {"a", "b"}])
        graph = build_graph(recs, min_edge_weight=2)
        degree = {n.id: n.degree for n in graph.nodes}
        assert degree == {"a": 1, "b": 1, "c": 0}

    def test_in_base_marks(self):
        recs = recs_from_sets([{"a", "b"}])
        graph = build_graph(recs, base=frozenset({"a"}))
        flags = {n.id: n.in_base for n in graph.nodes}
        assert flags == {"a": True, "b": False}

    def test_labels_from_names(self):
        recs = recs_from_sets([{"a"}])
        graph = build_graph(recs, names={"a": "apple"})
        assert graph.nodes[0].label == "apple"

    def test_no_self_loops_and_ordered_pairs(self):
        recs = recs_from_sets([{"a", "b", "c", "d"}])
        graph = build_graph(recs)
        for e in graph.edges:
            assert e.a < e.b


class TestExport:
    def test_empty_document(self):
        doc = export_graph(build_graph([]))
        assert doc == {"nodes": [], "links": [], "clusters": []}

    def test_single_node(self):
        doc = export_graph(build_graph(recs_from_sets([{"a"}])))
        assert doc["nodes"] == [{"id": "a", "label": "a", "degree": 0, "in_base": False}]
        assert doc["links"] == []
        assert doc["clusters"] == [["a"]]

    def test_round_trip_bytes_identical(self):
        rng = random.Random(5)
        for _ in range(25):
            sets = [
                set(rng.sample("abcdefgh", rng.randrange(1, 6)))
                for _ in range(rng.randrange(1, 8))
            ]
            graph = build_graph(recs_from_sets(sets), min_edge_weight=rng.choice([1, 2]))
            text = graph_to_json(graph)
            reparsed = graph_from_document(json.loads(text))
            assert graph_to_json(reparsed) == text


class TestOracles:
    def test_weights_match_brute_force(self):
        rng = random.Random(11)
        for _ in range(40):
            sets = [
                set(rng.sample("abcdefghij", rng.randrange(1, 7)))
                for _ in range(rng.randrange(1, 10))
            ]
            graph = build_graph(recs_from_sets(sets))
            expected = pairwise_cooccurrence(sets)
            got = {(e.a, e.b): e.weight for e in graph.edges}
            assert got == expected

    def test_clusters_match_union_find(self):
        rng = random.Random(12)
        for _ in range(40):
            sets = [
                set(rng.sample("abcdefghij", rng.randrange(1, 7)))
                for _ in range(rng.randrange(1, 10))
            ]
            min_w = rng.choice([1, 2, 3])
            graph = build_graph(recs_from_sets(sets), min_edge_weight=min_w)
            nodes = [n.id for n in graph.nodes]
            edges = [(e.a, e.b) for e in graph.edges]
            expected = union_find_components(nodes, edges)
            assert {frozenset(c) for c in graph.clusters} == expected

    def test_clusters_partition_nodes(self):
        recs = recs_from_sets([{"a", "b"}, {"c"}, {"d", "e"}])
        graph = build_graph(recs)
        flat = [n for cluster in graph.clusters for n in cluster]
        assert sorted(flat) == sorted(n.id for n in graph.nodes)
        assert len(flat) == len(set(flat))
