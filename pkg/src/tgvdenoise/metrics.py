"""Quantitative comparison of meshes and normal fields."""

import numpy as np

__all__ = [
    "face_angle_errors", "mean_angular_difference", "write_face_error_csv",
    "closest_point_distances", "vertex_error", "feature_adjacent_faces",
]


def face_angle_errors(normals_a, normals_b) -> np.ndarray:
    """Per-face angle in degrees between two unit normal fields.

    Computed as atan2(|a x b|, a . b): exactly 0 for identical rows and
    well-conditioned near both 0 and 180 degrees.
    """
    a = np.asarray(normals_a, dtype=np.float64)
    b = np.asarray(normals_b, dtype=np.float64)
    if a.shape != b.shape or a.ndim != 2 or a.shape[1] != 3:
        raise ValueError(f"normal fields must share shape (T, 3): {a.shape} vs {b.shape}")
    cross = np.linalg.norm(np.cross(a, b), axis=1)
    dots = (a * b).sum(axis=1)
    return np.degrees(np.arctan2(cross, dots))


def mean_angular_difference(normals_a, normals_b) -> float:
    """Mean per-face angle between two unit normal fields, in degrees."""
    return float(face_angle_errors(normals_a, normals_b).mean())


def write_face_error_csv(path, degrees):
    """Dump per-face angle errors as CSV rows (face index, degrees)."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("face,angle_degrees\n")
        for i, d in enumerate(np.asarray(degrees, dtype=np.float64)):
            fh.write(f"{i},{'%.17g' % d}\n")


def _closest_point_on_triangles(points, tri):
    """Exact closest points from each point to each triangle.

    points: (m, 3); tri: (t, 3, 3). Returns squared distances (m, t).
    Region walk over the barycentric Voronoi regions of the triangle.
    """
    a, b, c = tri[:, 0], tri[:, 1], tri[:, 2]
    ab = b - a
    ac = c - a
    p = points[:, None, :]

    ap = p - a
    d1 = (ab * ap).sum(axis=2)
    d2 = (ac * ap).sum(axis=2)
    bp = p - b
    d3 = (ab * bp).sum(axis=2)
    d4 = (ac * bp).sum(axis=2)
    cp = p - c
    d5 = (ab * cp).sum(axis=2)
    d6 = (ac * cp).sum(axis=2)

    vc = d1 * d4 - d3 * d2
    vb = d5 * d2 - d1 * d6
    va = d3 * d6 - d5 * d4

    with np.errstate(divide="ignore", invalid="ignore"):
        t_ab = np.where(d1 - d3 != 0, d1 / (d1 - d3), 0.0)
        t_ac = np.where(d2 - d6 != 0, d2 / (d2 - d6), 0.0)
        denom_bc = (d4 - d3) + (d5 - d6)
        t_bc = np.where(denom_bc != 0, (d4 - d3) / denom_bc, 0.0)
        s = va + vb + vc
        bary_v = np.where(s != 0, vb / s, 0.0)
        bary_w = np.where(s != 0, vc / s, 0.0)

    # vertex regions
    at_a = (d1 <= 0) & (d2 <= 0)
    at_b = (d3 >= 0) & (d4 <= d3)
    at_c = (d6 >= 0) & (d5 <= d6)
    # edge regions
    on_ab = (vc <= 0) & (d1 >= 0) & (d3 <= 0)
    on_ac = (vb <= 0) & (d2 >= 0) & (d6 <= 0)
    on_bc = (va <= 0) & (d4 - d3 >= 0) & (d5 - d6 >= 0)

    closest = a + ab * bary_v[:, :, None] + ac * bary_w[:, :, None]
    closest = np.where(on_bc[:, :, None], b + (c - b) * t_bc[:, :, None], closest)
    closest = np.where(on_ac[:, :, None], a + ac * t_ac[:, :, None], closest)
    closest = np.where(on_ab[:, :, None], a + ab * t_ab[:, :, None], closest)
    closest = np.where(at_c[:, :, None], np.broadcast_to(c, closest.shape), closest)
    closest = np.where(at_b[:, :, None], np.broadcast_to(b, closest.shape), closest)
    closest = np.where(at_a[:, :, None], np.broadcast_to(a, closest.shape), closest)
    return ((p - closest) ** 2).sum(axis=2)


def closest_point_distances(points, mesh, chunk: int = 0) -> np.ndarray:
    """Distance from each point to the closest point on any mesh triangle."""
    points = np.asarray(points, dtype=np.float64).reshape(-1, 3)
    if mesh.num_faces == 0:
        raise ValueError("reference mesh has no faces")
    tri = mesh.vertices[mesh.faces]
    if chunk <= 0:
        chunk = max(1, int(4_000_000 // max(1, mesh.num_faces)))
    out = np.empty(len(points))
    for start in range(0, len(points), chunk):
        block = points[start:start + chunk]
        d2 = _closest_point_on_triangles(block, tri)
        out[start:start + len(block)] = np.sqrt(d2.min(axis=1))
    return out


def vertex_error(denoised, reference) -> float:
    """Mean distance from denoised vertices to the reference surface,
    normalized by the reference bounding-box diagonal."""
    if reference.num_faces == 0 or denoised.num_vertices == 0:
        raise ValueError("vertex_error needs a non-empty pair of meshes")
    bbox = reference.vertices.max(axis=0) - reference.vertices.min(axis=0)
    diag = float(np.linalg.norm(bbox))
    if diag == 0:
        raise ValueError("reference mesh has zero extent")
    return float(closest_point_distances(denoised.vertices, reference).mean() / diag)


def feature_adjacent_faces(topo, normals, threshold_deg: float = 30.0) -> np.ndarray:
    """Faces incident to an edge whose two face normals differ by more than
    the threshold angle; used to score errors near sharp creases."""
    n = np.asarray(normals, dtype=np.float64)
    interior = ~topo.is_boundary
    f0 = topo.edge_faces[:, 0]
    f1 = np.where(topo.edge_faces[:, 1] >= 0, topo.edge_faces[:, 1], f0)
    dots = np.clip((n[f0] * n[f1]).sum(axis=1), -1.0, 1.0)
    sharp = interior & (np.degrees(np.arccos(dots)) > threshold_deg)
    mask = np.zeros(topo.num_faces, dtype=bool)
    mask[f0[sharp]] = True
    mask[f1[sharp]] = True
    return np.nonzero(mask)[0]
