"""Seeded random instance generators shared by the property and acceptance tests."""

import math
from fractions import Fraction

from nefwci.core import triple_coprime
from nefwci.graph import WPGraph, is_wci_graph


def random_wci_instance(rng, max_weight=60, max_vertices=7):
    """A random WP-graph with a random bidegree making it a WCI-graph."""
    while True:
        ws = []
        for _ in range(rng.randint(0, max_vertices)):
            w = rng.randint(2, max_weight)
            if triple_coprime(ws + [w]):
                ws.append(w)
        g = WPGraph.from_weights(ws)
        side = [rng.random() < 0.5 for _ in ws]
        need1 = [w for w, s in zip(ws, side) if s] + [math.gcd(g.weight(i), g.weight(j)) for i, j in g.edges]
        need2 = [w for w, s in zip(ws, side) if not s] + [math.gcd(g.weight(i), g.weight(j)) for i, j in g.edges]
        d1 = math.lcm(*need1) * rng.randint(1, 3) if need1 else rng.randint(1, 30)
        d2 = math.lcm(*need2) * rng.randint(1, 3) if need2 else rng.randint(1, 30)
        if is_wci_graph(g, (d1, d2)):
            return g, d1, d2


def random_elementary_i(rng):
    n = rng.randint(1, 6)
    b = [rng.randint(1, 6) for _ in range(n)]
    if max(b) < 2:
        b[rng.randrange(n)] = rng.randint(2, 6)
    ts = sorted(Fraction(rng.randint(1, 60), rng.randint(1, 6)) for _ in range(n))
    t = sum(ts[:-1], Fraction(0)) / 2 + ts[-1] + Fraction(rng.randint(0, 20), rng.randint(1, 6))
    return b, ts, t


def random_elementary_ii(rng):
    n_bound = rng.randint(4, 40)
    m = math.ceil((n_bound - 1) / 2) + rng.randint(0, 2)
    a = []
    while len(a) < m:
        x = rng.randint(2, 120)
        if all(math.gcd(x, y) == 1 for y in a):
            a.append(x)
    return n_bound, a
