import numpy as np
import pytest

from tgvdenoise import (NoiseSpec, SolverParams, add_gaussian_noise,
                        build_connectivity, face_normals, filter_normals,
                        make_cube, make_plane, make_two_triangle_square,
                        mean_angular_difference, projection_residual,
                        update_vertices)


def _rotation(axis, angle):
    axis = np.asarray(axis, dtype=float)
    axis = axis / np.linalg.norm(axis)
    k = np.array([[0, -axis[2], axis[1]],
                  [axis[2], 0, -axis[0]],
                  [-axis[1], axis[0], 0]])
    return np.eye(3) + np.sin(angle) * k + (1 - np.cos(angle)) * (k @ k)


def test_planar_mesh_is_a_fixed_point():
    mesh = make_plane(5, 5)
    out = update_vertices(mesh, face_normals(mesh), iters=30)
    assert np.abs(out.vertices - mesh.vertices).max() < 1e-9


def test_connectivity_never_changes():
    mesh = make_cube(3)
    out = update_vertices(mesh, face_normals(mesh))
    assert out.faces is mesh.faces or np.array_equal(out.faces, mesh.faces)


def test_iters_must_be_positive():
    mesh = make_plane(2, 2)
    with pytest.raises(ValueError, match="iters"):
        update_vertices(mesh, face_normals(mesh), iters=0)


def test_shape_mismatch_rejected():
    mesh = make_plane(2, 2)
    with pytest.raises(ValueError, match="shape"):
        update_vertices(mesh, np.zeros((3, 3)))


def test_flat_quad_reaches_tilted_targets():
    # hinge the two triangles of a square around their shared diagonal
    mesh = make_two_triangle_square()
    n = face_normals(mesh)
    diagonal = mesh.vertices[2] - mesh.vertices[0]
    tilt = 0.15
    targets = np.stack([
        _rotation(diagonal, +tilt) @ n[0],
        _rotation(diagonal, -tilt) @ n[1],
    ])
    out = update_vertices(mesh, targets, iters=30)
    angles = np.arccos(np.clip((face_normals(out) * targets).sum(axis=1), -1, 1))
    assert angles.max() < 1e-3  # radians


def test_residual_is_monotone_over_sweeps():
    clean = make_cube(4, size=0.05)
    noisy = add_gaussian_noise(clean, NoiseSpec(0.25, mode="vertex-normal", seed=2))
    targets = face_normals(clean)
    mesh = noisy
    residuals = [projection_residual(mesh, targets)]
    for _ in range(30):
        mesh = update_vertices(mesh, targets, iters=1)
        residuals.append(projection_residual(mesh, targets))
    assert all(b <= a + 1e-15 for a, b in zip(residuals, residuals[1:]))
    assert residuals[-1] < 0.1 * residuals[0]


def test_update_improves_agreement_with_filtered_normals():
    clean = make_cube(4, size=0.05)
    noisy = add_gaussian_noise(clean, NoiseSpec(0.3, mode="vertex-normal", seed=5))
    conn = build_connectivity(noisy)
    result = filter_normals(conn, face_normals(noisy), SolverParams(max_outer_iters=50))
    before = mean_angular_difference(face_normals(noisy), result.normals)
    out = update_vertices(noisy, result.normals, iters=30)
    after = mean_angular_difference(face_normals(out), result.normals)
    assert after < before


def test_jacobi_update_is_deterministic():
    clean = make_cube(3)
    noisy = add_gaussian_noise(clean, NoiseSpec(0.2, seed=9))
    targets = face_normals(clean)
    a = update_vertices(noisy, targets, iters=10)
    b = update_vertices(noisy, targets, iters=10)
    assert np.array_equal(a.vertices, b.vertices)
