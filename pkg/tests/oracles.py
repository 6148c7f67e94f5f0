"""Brute-force reference computations used to pin expected values."""

import math
from functools import reduce
from itertools import combinations, product


def well_formed_brute(weights):
    n = len(weights)
    return all(
        reduce(math.gcd, [w for j, w in enumerate(weights) if j != i]) == 1 for i in range(n)
    )


def divisibility_brute(weights, degrees):
    """Every subset of all weights (units included) with gcd > 1."""
    idx = range(len(weights))
    for k in range(1, len(weights) + 1):
        for sub in combinations(idx, k):
            g = reduce(math.gcd, (weights[i] for i in sub))
            if g > 1 and sum(1 for d in degrees if d % g == 0) < k:
                return False
    return True


def nef_signatures_brute(weights, degrees):
    """All signatures of assignments of every index to some part."""
    c = len(degrees)
    sigs = set()
    for assign in product(range(c + 1), repeat=len(weights)):
        sums = [0] * (c + 1)
        for i, part in enumerate(assign):
            sums[part] += weights[i]
        if sums[1:] != list(degrees):
            continue
        parts = [tuple(sorted(weights[i] for i in range(len(weights)) if assign[i] == k))
                 for k in range(c + 1)]
        rest = parts[1:]
        # parts of equal degree are interchangeable
        groups = {}
        for d, part in zip(degrees, rest):
            groups.setdefault(d, []).append(part)
        ordered = [p for d in sorted(groups) for p in sorted(groups[d])]
        sigs.add((parts[0], *ordered))
    return sigs


def constant_term_brute(terms, k):
    """ct(f^k) by summing over every k-tuple of terms."""
    items = list(terms.items())
    if not items:
        return 1 if k == 0 else 0
    n = len(items[0][0])
    total = 0
    for combo in product(items, repeat=k):
        if all(sum(e[v] for e, _ in combo) == 0 for v in range(n)):
            total += math.prod(c for _, c in combo)
    return total


def mul_brute(a, b):
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = out.get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c}
