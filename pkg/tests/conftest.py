"""Shared named inputs for the test suite."""

from __future__ import annotations

import pytest

from uberhom import complexes, graphs

# The 6-vertex closed-surface triangulation with H_1 = Z/2 (every edge lies
# in exactly two triangles; found by exhaustive search, frozen here).
PROJECTIVE_PLANE_FACETS = (
    (0, 1, 2),
    (0, 1, 3),
    (0, 2, 4),
    (0, 3, 5),
    (0, 4, 5),
    (1, 2, 5),
    (1, 3, 4),
    (1, 4, 5),
    (2, 3, 4),
    (2, 3, 5),
)


def capped_square_complex() -> complexes.SimplicialComplex:
    """Cone over the 4-cycle: contractible, but its cover is not 1-Leray."""
    return complexes.cone(complexes.build_complex(4, [(0, 1), (1, 2), (2, 3), (0, 3)]))


def glued_triangles() -> complexes.SimplicialComplex:
    """Two triangles sharing an edge = suspension of the 1-simplex."""
    return complexes.suspension(complexes.standard_simplex(2))


def projective_plane() -> complexes.SimplicialComplex:
    return complexes.build_complex(6, PROJECTIVE_PLANE_FACETS)


def complex_corpus() -> list[tuple[str, complexes.SimplicialComplex]]:
    """Connected non-simplex complexes, all small enough for every pipeline."""
    return [
        ("triangle-boundary", complexes.boundary_of_simplex(3)),
        ("tetrahedron-boundary", complexes.boundary_of_simplex(4)),
        ("4-sphere-boundary", complexes.boundary_of_simplex(5)),
        ("cycle-4", complexes.complex_from_graph(graphs.cycle_graph(4))),
        ("cycle-5", complexes.complex_from_graph(graphs.cycle_graph(5))),
        ("cycle-6", complexes.complex_from_graph(graphs.cycle_graph(6))),
        ("path-3", complexes.complex_from_graph(graphs.path_graph(3))),
        ("path-4", complexes.complex_from_graph(graphs.path_graph(4))),
        ("grid-3x2", complexes.complex_from_graph(graphs.grid_graph(3, 2))),
        ("cone-of-square", capped_square_complex()),
        ("glued-triangles", glued_triangles()),
        ("projective-plane", projective_plane()),
        ("random-5-seed-3", complexes.random_connected_complex(5, seed=3)),
        ("random-6-seed-1", complexes.random_connected_complex(6, seed=1)),
    ]


def graph_corpus() -> list[tuple[str, graphs.Graph]]:
    return [
        ("path-4", graphs.path_graph(4)),
        ("cycle-4", graphs.cycle_graph(4)),
        ("cycle-5", graphs.cycle_graph(5)),
        ("cycle-6", graphs.cycle_graph(6)),
        ("complete-3", graphs.complete_graph(3)),
        ("complete-4", graphs.complete_graph(4)),
        ("wheel-4", graphs.one_skeleton(capped_square_complex())),
        ("grid-3x2", graphs.grid_graph(3, 2)),
        ("random-6-seed-3", graphs.random_connected_graph(6, 0.5, seed=3)),
        ("random-7-seed-4", graphs.random_connected_graph(7, 0.4, seed=4)),
    ]


@pytest.fixture(params=complex_corpus(), ids=lambda item: item[0])
def corpus_complex(request):
    return request.param[1]


@pytest.fixture(params=graph_corpus(), ids=lambda item: item[0])
def corpus_graph(request):
    return request.param[1]
