"""Certify a window instance, compare the bound with the exact count, then sample.

    python3 demos/02_counting_and_sampling.py
"""
import math

from freeshift import (CylinderFamily, Group, Pattern, SamplerConfig, Window, WindowInstance,
                       brute_force_count, canonical_witness, check_correctness,
                       counting_lower_bound, sample, verify_avoidance)
from freeshift.lll import largest_passing_h

Z = Group.zd(1)
fam = CylinderFamily([Pattern.from_mapping(Z, {(i,): 0 for i in range(5)}, 2)], 2, Z)

for n in (8, 12, 16):
    inst = WindowInstance(Window.interval(0, n), fam)
    h = largest_passing_h(inst)
    bound = counting_lower_bound(inst, canonical_witness(inst, h))
    exact = brute_force_count(inst)
    print(f"{n:>2} cells: h={h:.4f}  2^bound={2 ** bound:9.1f}  exact={exact:6d}  "
          f"ratio={exact / 2 ** bound:.3f}")

# "000" on 8 cells: no uniform witness exists, the check reports why.
inst = WindowInstance(Window.interval(0, 8), CylinderFamily(
    [Pattern.from_mapping(Z, {(0,): 0, (1,): 0, (2,): 0}, 2)], 2, Z))
rep = check_correctness(inst, canonical_witness(inst, 1.0))
print(f"000 on 8 cells: exact={brute_force_count(inst)} witness ok={rep.ok} "
      f"worst slack={rep.worst_slack:.3f} bits")

big = WindowInstance(Window.ball(Z, 200), fam)
x = sample(big, SamplerConfig(seed=7))
print("sampled 401 cells avoiding 00000:", verify_avoidance(x, big))
print("".join(map(str, x.values[:80])))
