"""How the three variational smoothness measures see a cube: total
variation loves sharp creases but also counts noise; the high-order measure
forgives smooth ramps; the generalized one auto-balances via its auxiliary
minimization.

Run:  python3 demos/02_seminorm_comparison.py
"""

import numpy as np

from tgvdenoise import (NoiseSpec, add_gaussian_noise, build_connectivity,
                        edge_jump, face_normals, ho_seminorm, make_cube,
                        minimize_tgv, tgv_energy, tv_seminorm)

alpha1, alpha0 = 1.0, 0.1
clean = make_cube(6, size=0.05)
noisy = add_gaussian_noise(clean, NoiseSpec(0.25, mode="vertex-normal", seed=1))

for mesh, label in [(clean, "clean cube"), (noisy, "noisy cube")]:
    conn = build_connectivity(mesh)
    u = face_normals(mesh)
    tv = tv_seminorm(conn.topo, u)
    ho = ho_seminorm(conn.lines, u)
    at_zero = tgv_energy(conn, u, np.zeros((conn.topo.num_edges, 3)), alpha1, alpha0)
    at_jump = tgv_energy(conn, u, edge_jump(conn.topo, u), alpha1, alpha0)
    best, _ = minimize_tgv(conn, u, alpha1, alpha0, iters=120)
    support = int((np.linalg.norm(edge_jump(conn.topo, u), axis=1) > 1e-7).sum())
    print(f"{label} ({mesh.num_faces} faces):")
    print(f"  tv = {tv:.4f} supported on {support} of {conn.topo.num_edges} edges")
    print(f"  ho = {ho:.4f}")
    print(f"  tgv energy: {at_zero:.4f} at v=0, {at_jump:.4f} at v=jump, "
          f"{best:.4f} minimized")
    print()

print("On the clean cube the jumps live exactly on the 12 creases, and the")
print("minimizing auxiliary field keeps them (tgv tracks the lower bound).")
print("On the noisy cube every edge carries a jump: tv inflates, while the")
print("minimization sheds the smooth-region part into the second-order term.")
