# Why the orbit closure is minimal: x comes back close to itself along a
# whole coset, found in closed form from the variant numbering.
from fractions import Fraction

from fullmdim import Construction, containment_check, return_time_witness, syndetic_gap_check

ctx = Construction("paper", 2)
w = return_time_witness(ctx, 1, 3)
print(f"shift {w.g_star[0]} keeps x within {w.bound} on [0, 8)")
print(f"so does every shift {w.g_star[0]} + {w.gap} t;  sampled check:", syndetic_gap_check(ctx, w, 50))

# any point of the product over [0, 8) is matched the same way
y = {g: ctx.resolve(g)[0].left for g in range(8)}
y[3] = Fraction(7, 10)
h, bound = containment_check(ctx, y, 1, 3)
print(f"y is matched by shift {h[0]} within {bound}")

# a finer return needs deeper levels: the toy schedule reaches 1/32 at level 3
toy = Construction("toy", 3)
w = return_time_witness(toy, 1, 8)
print(f"toy: level {w.level} witness with bound {w.bound} ({w.g_star[0].bit_length()}-bit shift)")
