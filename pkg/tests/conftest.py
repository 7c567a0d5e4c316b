import numpy as np
import pytest

from tgvdenoise import (build_connectivity, make_cube, make_plane,
                        make_tetrahedron, make_two_triangle_square)


@pytest.fixture(scope="session")
def tet():
    return make_tetrahedron()


@pytest.fixture(scope="session")
def tet_conn(tet):
    return build_connectivity(tet)


@pytest.fixture(scope="session")
def square():
    return make_two_triangle_square()


@pytest.fixture(scope="session")
def square_conn(square):
    return build_connectivity(square)


@pytest.fixture(scope="session")
def plane():
    return make_plane(5, 4)


@pytest.fixture(scope="session")
def plane_conn(plane):
    return build_connectivity(plane)


@pytest.fixture(scope="session")
def cube_small():
    # 48 faces: small enough for dense linear-algebra oracles
    return make_cube(2, size=0.05)


@pytest.fixture(scope="session")
def cube_small_conn(cube_small):
    return build_connectivity(cube_small)


@pytest.fixture(scope="session")
def all_conns(tet_conn, cube_small_conn, plane_conn):
    return {"tetrahedron": tet_conn, "cube": cube_small_conn, "plane": plane_conn}


def random_fields(conn, rng, channels=3):
    topo, lines, curves = conn.topo, conn.lines, conn.curves
    return (rng.normal(size=(topo.num_faces, channels)),
            rng.normal(size=(topo.num_edges, channels)),
            rng.normal(size=(lines.num_lines, channels)),
            rng.normal(size=(curves.num_curves, channels)))


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
