# The mean dimension lower bound: enough coordinates keep big boxes.
from fullmdim import Construction, density_estimate, mdim_lower_bound

ctx = Construction("paper", 2)
for n in range(3):
    rep = density_estimate(ctx, n)
    fr = ", ".join(f"{f} (~{float(f):.4f})" for f in rep.fractions.values())
    print(f"n={n}: share with diameter >= {rep.to_json()['threshold']}: {fr}; certified >= {rep.lower_bound}")

b = mdim_lower_bound(ctx, range(3))
print(f"{b.lower} <= mdim <= {b.upper}")
print(b.limit_statement)

# with P a square both bounds double
sq = mdim_lower_bound(Construction("paper", 2, d_P=2), range(3))
print(f"P = [0,1]^2: {sq.lower} <= mdim <= {sq.upper}")
