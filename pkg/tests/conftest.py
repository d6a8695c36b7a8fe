from __future__ import annotations

import random
from pathlib import Path

import pytest

from graphhom.graphs import WeightedGraph

DATA = Path(__file__).parent / "data"


def random_graph(
    rng: random.Random,
    max_vertices: int = 8,
    edge_probability: float | None = None,
    weight_pool=(0.0, 0.1, 0.2, 0.3, 0.45, 0.6, 0.75, 0.9, 1.0),
    weighted: bool = True,
) -> WeightedGraph:
    n = rng.randint(2, max_vertices)
    p = edge_probability if edge_probability is not None else rng.uniform(0.3, 0.7)
    edges = []
    weights = []
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                edges.append((u, v))
                weights.append(rng.choice(weight_pool))
    return WeightedGraph(
        n, tuple(edges), tuple(weights) if weighted else None
    )


@pytest.fixture
def data_dir() -> Path:
    return DATA
