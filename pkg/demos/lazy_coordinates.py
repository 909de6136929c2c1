# Coordinates of the construction at any position, however large.
import random

from fullmdim import Construction, Window, canonical_point, window_pattern
from fullmdim.dyadic import box_str

ctx = Construction("paper", 2)

print("the first tile:")
for g, box in zip(Window((0,), (8,)), window_pattern(Window((0,), (8,)), 2, ctx)):
    print(" ", g[0], box_str(box))

# the first variant copy of the level-1 block sits at 8 * r1
start = 8 * ctx.schedule.r[1]
print(f"the first variant copy, from {start}:")
for g in range(start, start + 8):
    print(" ", g, box_str(ctx.resolve(g, 2)), " x =", canonical_point(g, 2, ctx)[0])

# nothing is stored, so a 300-bit coordinate costs the same as a small one
rng = random.Random(1)
g = rng.randrange(2**300)
for k in range(3):
    print(f"depth {k}: P_g =", box_str(ctx.resolve(g, k)))

# blocks repeat with the tile period
N2 = ctx.hierarchy.side(2)
assert ctx.resolve(g + 12345 * N2, 2) == ctx.resolve(g, 2)
