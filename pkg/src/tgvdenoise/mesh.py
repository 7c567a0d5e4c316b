"""Triangle mesh container and per-face geometry."""

import numpy as np

__all__ = ["MeshError", "TriMesh", "face_normals", "face_areas", "face_barycenters"]


class MeshError(ValueError):
    """Raised for malformed mesh files or invalid mesh geometry/topology."""


class TriMesh:
    """An immutable triangle mesh: vertex positions plus counterclockwise faces.

    Parameters
    ----------
    vertices : array_like, shape (P, 3)
        3D vertex positions.
    faces : array_like, shape (T, 3)
        Vertex-index triples, all oriented counterclockwise (consistently,
        when seen from outside / above).

    Validation rejects out-of-range indices, repeated vertices within a face,
    degenerate (near zero area) triangles, and non-manifold edges (an edge
    shared by three or more faces).
    """

    def __init__(self, vertices, faces):
        v = np.asarray(vertices, dtype=np.float64)
        f = np.asarray(faces, dtype=np.int64)
        if v.ndim != 2 or v.shape[1] != 3:
            raise MeshError(f"vertices must have shape (P, 3), got {v.shape}")
        if f.size == 0:
            f = f.reshape(0, 3)
        if f.ndim != 2 or f.shape[1] != 3:
            raise MeshError(f"faces must have shape (T, 3), got {f.shape}")

        if f.size:
            if f.min() < 0 or f.max() >= len(v):
                bad_face = int(np.nonzero(((f < 0) | (f >= len(v))).any(axis=1))[0][0])
                raise MeshError(f"face {bad_face} references vertex index out of range")
            same = (f[:, 0] == f[:, 1]) | (f[:, 1] == f[:, 2]) | (f[:, 2] == f[:, 0])
            if same.any():
                raise MeshError(f"face {int(np.nonzero(same)[0][0])} repeats a vertex")

        v.setflags(write=False)
        f.setflags(write=False)
        self.vertices = v
        self.faces = f

        if f.size:
            self._check_areas()
            self._check_manifold()

    # -- validation ------------------------------------------------------

    def _check_areas(self):
        bbox = self.vertices.max(axis=0) - self.vertices.min(axis=0)
        diag2 = float(bbox @ bbox)
        eps = 1e-12 * max(diag2, np.finfo(np.float64).tiny)
        areas = face_areas(self)
        small = areas <= eps
        if small.any():
            raise MeshError(f"face {int(np.nonzero(small)[0][0])} is degenerate (area <= eps)")

    def _check_manifold(self):
        a = np.minimum(self.faces, np.roll(self.faces, -1, axis=1)).ravel()
        b = np.maximum(self.faces, np.roll(self.faces, -1, axis=1)).ravel()
        pairs = a * len(self.vertices) + b
        _, inverse, counts = np.unique(pairs, return_inverse=True, return_counts=True)
        if (counts > 2).any():
            slot = int(np.nonzero(counts[inverse] > 2)[0][0])
            raise MeshError(f"non-manifold edge in face {slot // 3} (3+ incident faces)")

    # -- basics ----------------------------------------------------------

    @property
    def num_vertices(self):
        return len(self.vertices)

    @property
    def num_faces(self):
        return len(self.faces)

    def with_vertices(self, vertices):
        """Same connectivity, new positions."""
        return TriMesh(vertices, self.faces)

    def __repr__(self):
        return f"TriMesh(vertices={self.num_vertices}, faces={self.num_faces})"


def _face_cross(mesh):
    p = mesh.vertices[mesh.faces]
    return np.cross(p[:, 1] - p[:, 0], p[:, 2] - p[:, 0])


def face_areas(mesh) -> np.ndarray:
    """Triangle areas, shape (T,)."""
    return 0.5 * np.linalg.norm(_face_cross(mesh), axis=1)


def face_barycenters(mesh) -> np.ndarray:
    """Triangle barycenters, shape (T, 3)."""
    return mesh.vertices[mesh.faces].mean(axis=1)


def face_normals(mesh) -> np.ndarray:
    """Unit face normals from the counterclockwise vertex order, shape (T, 3)."""
    cross = _face_cross(mesh)
    norms = np.linalg.norm(cross, axis=1)
    if (norms == 0).any():
        raise MeshError(f"face {int(np.nonzero(norms == 0)[0][0])} has zero area")
    return cross / norms[:, None]
