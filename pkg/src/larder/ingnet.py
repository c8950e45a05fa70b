"""Ingredient co-occurrence network over a recommendation result.

Nodes are the canonical ingredients of the recommended recipes; an edge's
weight counts the recipes containing both endpoints. Clusters are the
connected components of the pruned graph. The export is a canonical
node-link JSON document consumed by the web UI and by external graph tools.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from typing import Mapping, Sequence

from .recommend import Recommendation


@dataclass(frozen=True)
class GraphNode:
    id: str
    label: str
    degree: int
    in_base: bool


@dataclass(frozen=True)
class GraphEdge:
    a: str
    b: str
    weight: int


@dataclass(frozen=True)
class IngredientGraph:
    nodes: tuple[GraphNode, ...]
    edges: tuple[GraphEdge, ...]  # undirected, stored with a < b
    clusters: tuple[tuple[str, ...], ...]


def build_graph(
    recommendations: Sequence[Recommendation],
    min_edge_weight: int = 1,
    base: frozenset[str] = frozenset(),
    names: Mapping[str, str] | None = None,
) -> IngredientGraph:
    """Co-occurrence graph of the recommended recipes' ingredients.

    Edges lighter than ``min_edge_weight`` are dropped but the nodes they
    touched survive (isolated nodes stay selectable in the UI). ``base``
    marks the query's own ingredients; ``names`` supplies display labels.
    """
    names = names or {}
    ingredient_sets = [rec.recipe.ingredient_ids for rec in recommendations]
    node_ids = sorted(set().union(*ingredient_sets)) if ingredient_sets else []

    weights: Counter = Counter()
    for ids in ingredient_sets:
        for a, b in combinations(sorted(ids), 2):
            weights[(a, b)] += 1
    edges = tuple(
        GraphEdge(a, b, w) for (a, b), w in sorted(weights.items()) if w >= min_edge_weight
    )

    adjacency: dict[str, set[str]] = {node: set() for node in node_ids}
    for edge in edges:
        adjacency[edge.a].add(edge.b)
        adjacency[edge.b].add(edge.a)

    nodes = tuple(
        GraphNode(node, names.get(node, node), len(adjacency[node]), node in base)
        for node in node_ids
    )

    clusters = []
    seen: set[str] = set()
    for start in node_ids:
        if start in seen:
            continue
        component = []
        stack = [start]
        seen.add(start)
        while stack:
            current = stack.pop()
            component.append(current)
            for neighbor in adjacency[current]:
                if neighbor not in seen:
                    seen.add(neighbor)
                    stack.append(neighbor)
        clusters.append(tuple(sorted(component)))
    clusters.sort(key=lambda c: c[0])

    return IngredientGraph(nodes, edges, tuple(clusters))


def export_graph(graph: IngredientGraph) -> dict:
    """Node-link document: stable node order, links stored source < target."""
    return {
        "nodes": [
            {"id": n.id, "label": n.label, "degree": n.degree, "in_base": n.in_base}
            for n in graph.nodes
        ],
        "links": [
            {"source": e.a, "target": e.b, "weight": e.weight} for e in graph.edges
        ],
        "clusters": [list(c) for c in graph.clusters],
    }


def graph_to_json(graph: IngredientGraph) -> str:
    """Canonical serialized form: sorted keys, no whitespace."""
    return json.dumps(export_graph(graph), sort_keys=True, separators=(",", ":"))


def graph_from_document(doc: Mapping) -> IngredientGraph:
    """Parse a node-link document back into a graph (inverse of export_graph)."""
    nodes = tuple(
        GraphNode(n["id"], n["label"], n["degree"], n["in_base"]) for n in doc["nodes"]
    )
    edges = tuple(
        GraphEdge(l["source"], l["target"], l["weight"]) for l in doc["links"]
    )
    clusters = tuple(tuple(c) for c in doc["clusters"])
    return IngredientGraph(nodes, edges, clusters)
