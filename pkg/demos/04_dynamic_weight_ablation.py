"""Why the per-edge weights matter: with them, crease edges are penalized
less and survive the filtering; without them the model treats creases like
noise and rounds them off.

Run:  python3 demos/04_dynamic_weight_ablation.py
"""

from tgvdenoise import (NoiseSpec, SolverParams, add_gaussian_noise,
                        build_connectivity, build_edge_topology,
                        face_angle_errors, face_normals, feature_adjacent_faces,
                        filter_normals, make_cube, update_vertices)

clean = make_cube(10, size=0.05)
noisy = add_gaussian_noise(clean, NoiseSpec(level=0.3, mode="vertex-normal", seed=7))
conn = build_connectivity(noisy)
n_clean = face_normals(clean)
n_noisy = face_normals(noisy)

feature = feature_adjacent_faces(build_edge_topology(clean), n_clean)
print(f"{len(feature)} of {clean.num_faces} faces touch one of the cube's 12 creases")
print()

for dynamic in (True, False):
    params = SolverParams(alpha1=1.0, alpha0=0.1, beta=100.0, dynamic_weights=dynamic)
    result = filter_normals(conn, n_noisy, params)
    out = update_vertices(noisy, result.normals, iters=30)
    errors = face_angle_errors(face_normals(out), n_clean)
    label = "with dynamic weights " if dynamic else "weights frozen at 1  "
    print(f"{label}: mean error {errors.mean():5.2f} deg, "
          f"feature faces {errors[feature].mean():5.2f} deg")

print()
print("The weighted run keeps the creases sharp; the unweighted one smears")
print("exactly the faces next to them.")
