# How the integers of the construction fall out of the proportion schedule.
from fractions import Fraction

from fullmdim import Construction, eta, eta_limit, select_l1, select_r

# eta(n, k) is the share of coordinates that must keep a box of diameter
# at least 2^-(n(n+1)/2) at level k; it decreases in k towards eta_limit(n)
for n in range(3):
    row = ", ".join(str(eta(n, k)) for k in range(max(n, 1), 6))
    print(f"eta({n}, k) for k = {max(n, 1)}..5: {row}  ->  {eta_limit(n)}")

# level 1: the smallest tile that leaves 3/4 of it untouched once two cells
# get a half of [0,1]
print("l1 =", select_l1(eta(0, 1)))

# level 2: r copies of the level-1 block plus all 4^8 refined variants
profile = {Fraction(1): 6, Fraction(1, 2): 2}
r = select_r(2, profile)
print("r1 =", r, " l2 =", r + 4**8, " N2 =", 8 * (r + 4**8))

ctx = Construction("paper", 2)
for k in (1, 2):
    print(f"level {k} diameters:", {str(dm): c for dm, c in ctx.block_profile(k).items()})

# the toy schedule (a quarter of eta) keeps level 2 small enough to list
toy = Construction("toy", 3)
print("toy sides:", toy.hierarchy.sides[:3], "and N3 with", toy.hierarchy.side(3).bit_length(), "bits")
