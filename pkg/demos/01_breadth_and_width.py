"""Width and breadth of a few small families, and what the numbers mean.

    python3 demos/01_breadth_and_width.py
"""
import math

from freeshift import CylinderFamily, Group, Pattern, family_breadth, family_width, rho, sigma
from freeshift.constructor import freeness_patterns

Z = Group.zd(1)


def word(bits):
    return Pattern.from_mapping(Z, {(i,): int(b) for i, b in enumerate(bits)}, 2)


families = {
    "nothing forbidden": CylinderFamily([], 2, Z),
    "one word 000": CylinderFamily([word("000")], 2, Z),
    "one word of length 10": CylinderFamily([word("0" * 10)], 2, Z),
    "x(0) = x(1)": freeness_patterns(Z, (1,), 2),
    "00000 and 11111": CylinderFamily([word("00000"), word("11111")], 2, Z),
}

print(f"{'family':<24}{'width':>10}{'breadth':>10}")
for name, fam in families.items():
    w = family_width(fam) if len(fam) else 0.0
    print(f"{name:<24}{w:>10.5f}{family_breadth(fam):>10.5f}")

# The breadth is the largest h with h + sigma_h below log2 k; show the margin.
fam = families["one word of length 10"]
for h in (0.5, 0.9, 0.98):
    print(f"h={h}: rho={rho(fam, h):.4f} sigma={sigma(fam, h):.5f} "
          f"slack={math.log2(2) - h - sigma(fam, h):+.5f}")
