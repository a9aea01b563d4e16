"""Copy a pattern onto cyclic and random-permutation models and count colorings.

    python3 demos/04_sofic_bound.py
"""
from freeshift import (CylinderFamily, Group, Pattern, approx_coloring_count,
                       cyclic_approximation, permutation_approximation, proper_set, sigma,
                       transfer_patterns, vertex_lll_count_bound)

Z = Group.zd(1)
F2 = Group.free(2)
ten = CylinderFamily([Pattern.from_mapping(Z, {(i,): 0 for i in range(10)}, 2)], 2, Z)

print("one forbidden word of length 10, h = 0.9, sigma =", round(sigma(ten, 0.9), 5))
for n in (64, 128):
    alpha = cyclic_approximation(n, 36)
    vf = transfer_patterns(ten, alpha, Z.ball(9))
    b = vertex_lll_count_bound(vf, 2, 0.9, base=ten)
    print(f"  Z/{n}: {len(vf)} vertex patterns, per-vertex bound {b.per_vertex:.5f}")

tri = CylinderFamily([Pattern.from_mapping(Z, {(0,): 0, (1,): 0, (2,): 0}, 2)], 2, Z)
for n in (13, 17):
    rep = approx_coloring_count(cyclic_approximation(n, 8), tri, 0.1, Z.ball(1), S=Z.ball(2))
    print(f"  000 on Z/{n}: |Col|={rep.count} |Forb|={rep.forb_count} "
          f"inclusion={rep.inclusion} h={rep.h:.4f}")

eps = [proper_set(permutation_approximation(F2, 200, seed=s), F2.ball(2)).epsilon_achieved
       for s in range(20)]
print("random permutation model, v=200, F=ball(2): eps achieved",
      " ".join(f"{e:.3f}" for e in sorted(eps)[::4]))
