"""Independent reference computations used by the tests.

Nothing here calls the code under test except for reading construction
parameters (sides, l, V) that the oracles then use on their own terms.
"""
import itertools
from fractions import Fraction


def boundary_brute(F_lo, F_hi, K, scan_lo, scan_hi):
    """B(F, K) by testing every g of a scan box against the definition."""
    d = len(F_lo)

    def inside(p):
        return all(F_lo[i] <= p[i] < F_hi[i] for i in range(d))

    out = []
    for g in itertools.product(*(range(a, b) for a, b in zip(scan_lo, scan_hi))):
        hits = [inside(tuple(k[i] + g[i] for i in range(d))) for k in K]
        if any(hits) and not all(hits):
            out.append(g)
    return out


def l1_scan(eta01, special=2):
    l = special + 1
    while Fraction(l - special, l) < eta01:
        l += 1
    return l


def eq33(counts, L, r, V, etas):
    """All proportion inequalities, integer cross-multiplied."""
    return all(c * r * e.denominator >= e.numerator * L * (r + V) for c, e in zip(counts, etas))


def counts_for(profile, k):
    return [sum(c for dm, c in profile.items() if dm >= Fraction(1, 2 ** (n * (n + 1) // 2))) for n in range(k + 1)]


def r_linear_scan(k, profile, eta_fn, d_P=1, limit=10**6):
    L = sum(profile.values())
    V = 2 ** (k * L * d_P)
    counts = counts_for(profile, k)
    etas = [eta_fn(n, k) for n in range(k + 1)]
    for r in range(1, limit):
        if eq33(counts, L, r, V, etas):
            return r
    raise RuntimeError("no r below limit")


def r_bisect(k, profile, eta_fn, d_P=1):
    """Minimal r via exponential then binary search on the monotone predicate."""
    L = sum(profile.values())
    V = 2 ** (k * L * d_P)
    counts = counts_for(profile, k)
    etas = [eta_fn(n, k) for n in range(k + 1)]
    hi = 1
    while not eq33(counts, L, hi, V, etas):
        hi *= 2
    lo = hi // 2  # predicate false at lo (or lo == 0)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if eq33(counts, L, mid, V, etas):
            hi = mid
        else:
            lo = mid
    return hi


def _halves(lo, hi, parts, lam):
    w = (hi - lo) / parts
    return (lo + lam * w, lo + (lam + 1) * w)


def materialize(sides, V, d_P=1):
    """Blocks B_{S_k} for d = 1 as lists of per-axis (lo, hi) Fraction pairs.

    Built directly as products: the level-1 block, then at each level the
    base block repeated followed by all variants, variants enumerated in
    lexicographic order of their digit strings.
    """
    special = 2**d_P
    n1 = sides[1]
    orthants = list(itertools.product(*[[(Fraction(0), Fraction(1, 2)), (Fraction(1, 2), Fraction(1))]] * d_P))
    full = tuple((Fraction(0), Fraction(1)) for _ in range(d_P))
    blocks = {1: [full] * (n1 - special) + [tuple(o) for o in orthants]}
    for k in range(2, len(sides)):
        prev = blocks[k - 1]
        l = sides[k] // sides[k - 1]
        base_count = l - V[k]
        variants = []
        for digits in itertools.product(range(2**k), repeat=len(prev) * d_P):
            block = []
            for cell, box in enumerate(prev):
                block.append(
                    tuple(_halves(lo, hi, 2**k, digits[cell * d_P + a]) for a, (lo, hi) in enumerate(box))
                )
            variants.append(block)
        assert len(variants) == V[k]
        out = []
        for _ in range(base_count):
            out.extend(prev)
        for v in variants:
            out.extend(v)
        blocks[k] = out
    return blocks
