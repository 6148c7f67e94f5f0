"""WP-graphs: gcd graphs on the non-unit weights of a weighted projective space.

Vertices carry weights >= 2, two vertices are adjacent iff their weights
share a factor, and any three weights are coprime.  Because the edge set is
a function of the weights, a graph is stored as its vertex list only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, reduce
from itertools import combinations

from .core import WeightSystem, triple_violation
from .errors import LemmaViolation, PreconditionError

__all__ = [
    "WPGraph",
    "WeakClass",
    "GraphSplit",
    "SplitRecord",
    "build_wp_graph",
    "sigma",
    "lcm",
    "weak_vertices",
    "classify_weak",
    "contains_delta",
    "is_wci_graph",
    "SweepResult",
    "lcm_sigma_sweep",
    "split_bidegree",
    "enumerate_wp_graphs",
    "check_elementary",
    "check_elementary_i",
    "check_elementary_ii",
    "to_dot",
]

DELTA_WEIGHTS = (6, 10, 15)


@dataclass(frozen=True)
class WPGraph:
    """Vertices are ``(id, weight)`` pairs; ids are usually weight indices."""

    vertices: tuple[tuple[int, int], ...]

    def __post_init__(self):
        verts = tuple(sorted((int(i), int(w)) for i, w in self.vertices))
        ids = [i for i, _ in verts]
        if len(set(ids)) != len(ids):
            raise PreconditionError(f"duplicate vertex ids in {verts}")
        if any(w < 2 for _, w in verts):
            raise PreconditionError("WP-graph weights must be >= 2")
        bad = triple_violation([w for _, w in verts])
        if bad is not None:
            raise PreconditionError(f"weights {bad} are not coprime (triple coprimality)")
        object.__setattr__(self, "vertices", verts)

    @classmethod
    def from_weights(cls, weights):
        """Graph with ids ``0..k-1`` following the given order."""
        return cls(tuple(enumerate(weights)))

    @cached_property
    def _weight(self):
        return dict(self.vertices)

    def weight(self, v):
        return self._weight[v]

    @property
    def ids(self):
        return [i for i, _ in self.vertices]

    @property
    def weights(self):
        return [w for _, w in self.vertices]

    def __len__(self):
        return len(self.vertices)

    @cached_property
    def edges(self):
        out = set()
        for (i, a), (j, b) in combinations(self.vertices, 2):
            if math.gcd(a, b) > 1:
                out.add((i, j))
        return frozenset(out)

    @cached_property
    def _adj(self):
        adj = {i: [] for i in self.ids}
        for i, j in sorted(self.edges):
            adj[i].append(j)
            adj[j].append(i)
        return adj

    def neighbors(self, v):
        return list(self._adj[v])

    def degree(self, v):
        return len(self._adj[v])

    def induced(self, ids):
        keep = set(ids)
        return WPGraph(tuple((i, w) for i, w in self.vertices if i in keep))

    def components(self):
        """Connected components as sorted id lists, ordered by smallest id."""
        seen, comps = set(), []
        for start in self.ids:
            if start in seen:
                continue
            stack, comp = [start], []
            seen.add(start)
            while stack:
                v = stack.pop()
                comp.append(v)
                for u in self._adj[v]:
                    if u not in seen:
                        seen.add(u)
                        stack.append(u)
            comps.append(sorted(comp))
        return comps

    def is_connected(self):
        return len(self.components()) <= 1


def build_wp_graph(ws):
    """WP-graph on the indices of ``ws`` whose weight exceeds 1."""
    if not isinstance(ws, WeightSystem):
        ws = WeightSystem(tuple(ws))
    return WPGraph(tuple(ws.nonunit()))


def _lcm_all(values):
    return reduce(lambda a, b: a * b // math.gcd(a, b), values, 1)


def sigma(g):
    if not g.vertices:
        raise PreconditionError("sigma of an empty graph is undefined")
    return sum(g.weights)


def lcm(g):
    if not g.vertices:
        raise PreconditionError("lcm of an empty graph is undefined")
    return _lcm_all(g.weights)


def weak_vertices(g):
    """Vertices whose weight divides the weight of some neighbour."""
    out = set()
    for i, j in g.edges:
        a, b = g.weight(i), g.weight(j)
        if b % a == 0:
            out.add(i)
        if a % b == 0:
            out.add(j)
    return frozenset(out)


@dataclass(frozen=True)
class WeakClass:
    kind: str  # "first" or "second"
    partner: int

    @property
    def first_type(self):
        return self.kind == "first"


def classify_weak(g, v):
    """First type: the unique neighbour is strictly heavier (and strong).
    Second type: the neighbour has the same weight."""
    if v not in weak_vertices(g):
        raise PreconditionError(f"vertex {v} is not weak")
    (tau,) = g.neighbors(v)  # a weak vertex lies on exactly one edge
    if g.weight(tau) > g.weight(v):
        return WeakClass("first", tau)
    return WeakClass("second", tau)


def contains_delta(g):
    """Ids of a connected component with weights exactly {6, 10, 15}."""
    for comp in g.components():
        if len(comp) == 3 and sorted(g.weight(v) for v in comp) == list(DELTA_WEIGHTS):
            return tuple(sorted(comp, key=g.weight))
    return None


def is_wci_graph(g, degrees):
    """Degree divisibility for every vertex set with nontrivial gcd.

    Only single vertices and edges need checking: any three weights of a
    WP-graph are coprime, so larger vertex sets have gcd 1.
    """
    degrees = tuple(degrees)

    def enough(delta, k):
        return sum(1 for d in degrees if d % delta == 0) >= k

    if not all(enough(w, 1) for w in g.weights):
        return False
    return all(enough(math.gcd(g.weight(i), g.weight(j)), 2) for i, j in g.edges)


@dataclass(frozen=True)
class SplitRecord:
    vertex: int
    weight: int
    role: str  # strong-V1', strong-V2', weak-first, weak-second
    side: int
    partner: int | None = None
    in_delta: bool = False


@dataclass(frozen=True)
class GraphSplit:
    V1: frozenset
    V2: frozenset
    trace: tuple[SplitRecord, ...] = field(default=())

    def weights(self, g, side):
        part = self.V1 if side == 1 else self.V2
        return sorted(g.weight(v) for v in part)


def split_bidegree(g, d1, d2):
    """Split the vertices of a codimension-2 WCI-graph into ``V1 ⊔ V2``.

    Each induced half has no weak vertices, no Δ(6,10,15) component, and its
    weights have lcm dividing (so sum at most) the matching degree.

    Deterministic choices: the weight-6 vertex of Δ goes to ``V1``; of two
    equal-weight weak vertices the lower id goes to ``V1``; a strong vertex
    whose weight divides both degrees goes to ``V1``.
    """
    if not is_wci_graph(g, (d1, d2)):
        raise PreconditionError(f"not a WCI-graph of bidegree ({d1}, {d2})")
    weak = weak_vertices(g)
    strong = [v for v in g.ids if v not in weak]
    delta = contains_delta(g) or ()
    v1p = {v for v in strong if v not in delta and d1 % g.weight(v) == 0}
    if delta:
        v1p.add(delta[0])
    v2p = set(strong) - v1p

    trace = []
    for v in strong:
        side = 1 if v in v1p else 2
        trace.append(SplitRecord(v, g.weight(v), f"strong-V{side}'", side, None, v in delta))
    v1, v2 = set(v1p), set(v2p)
    for v in sorted(weak):
        cls = classify_weak(g, v)
        if cls.first_type:
            side = 2 if cls.partner in v1p else 1
            role = "weak-first"
        else:
            side = 1 if v < cls.partner else 2
            role = "weak-second"
        (v1 if side == 1 else v2).add(v)
        trace.append(SplitRecord(v, g.weight(v), role, side, cls.partner))

    split = GraphSplit(frozenset(v1), frozenset(v2), tuple(sorted(trace, key=lambda r: r.vertex)))
    for side, part, d in ((1, v1, d1), (2, v2, d2)):
        sub = g.induced(part)
        problems = []
        if weak_vertices(sub):
            problems.append(f"weak vertices {sorted(weak_vertices(sub))}")
        if contains_delta(sub):
            problems.append("a Δ(6,10,15) component")
        l, s = _lcm_all(sub.weights), sum(sub.weights)
        if d % l:
            problems.append(f"lcm {l} does not divide {d}")
        if s > d:
            problems.append(f"weight sum {s} exceeds {d}")
        if problems:
            raise LemmaViolation(
                f"split of {g.vertices} for ({d1}, {d2}): side {side} has " + "; ".join(problems)
            )
    return split


def _multisets(max_weight, max_vertices, no_weak_only):
    """Nondecreasing weight tuples with every triple coprime.

    Triple coprimality and absence of weak vertices are both inherited by
    sub-multisets, so a failing prefix prunes its whole subtree.
    """

    def extend(prefix, pair_gcds, start):
        for w in range(start, max_weight + 1):
            if any(math.gcd(g, w) > 1 for g in pair_gcds):
                continue
            if no_weak_only and any(w % a == 0 for a in prefix):
                continue
            new = prefix + (w,)
            yield new
            if len(new) < max_vertices:
                gs = pair_gcds + [math.gcd(a, w) for a in prefix if math.gcd(a, w) > 1]
                yield from extend(new, gs, w)

    yield from extend((), [], 2)


def enumerate_wp_graphs(max_weight, max_vertices, connected_only=False, no_weak_only=False):
    """Every weight multiset within bounds, once, as its WP-graph.

    Order: depth-first over nondecreasing weight tuples.
    """
    if max_weight < 2 or max_vertices < 1:
        raise PreconditionError("need max_weight >= 2 and max_vertices >= 1")
    for ws in _multisets(max_weight, max_vertices, no_weak_only):
        g = WPGraph.from_weights(ws)
        if connected_only and not g.is_connected():
            continue
        if no_weak_only and weak_vertices(g):
            continue
        yield g


@dataclass(frozen=True)
class SweepResult:
    examined: int
    violations: tuple  # graphs with lcm < sigma


def lcm_sigma_sweep(max_weight, max_vertices, connected_only=True, skip_delta=False):
    """Search no-weak-vertex graphs within bounds for ``lcm < sigma``.

    With ``skip_delta`` graphs having a {6,10,15} component are left out.
    """
    examined, bad = 0, []
    for g in enumerate_wp_graphs(max_weight, max_vertices, connected_only, no_weak_only=True):
        if skip_delta and contains_delta(g) is not None:
            continue
        examined += 1
        if lcm(g) < sigma(g):
            bad.append(g)
    return SweepResult(examined, tuple(bad))


def check_elementary_i(b, ts, t):
    """``t * prod(b) >= sum(t_i * b_i)`` given ``t >= sum(t_i, i<n)/2 + t_n``.

    Arithmetic is exact over the rationals.
    """
    b = [int(x) for x in b]
    ts = [Fraction(x) for x in ts]
    t = Fraction(t)
    if not b or len(b) != len(ts):
        raise PreconditionError("b and t must be nonempty and of equal length")
    if any(x < 1 for x in b) or max(b) < 2:
        raise PreconditionError("b must be positive with some entry > 1")
    if any(x <= 0 for x in ts) or t <= 0:
        raise PreconditionError("t values must be positive")
    if any(x > y for x, y in zip(ts, ts[1:])):
        raise PreconditionError("t_1 <= ... <= t_n required")
    if t < sum(ts[:-1], Fraction(0)) / 2 + ts[-1]:
        raise PreconditionError("t is below sum(t_1..t_{n-1})/2 + t_n")
    return t * math.prod(b) >= sum(x * y for x, y in zip(ts, b))


def check_elementary_ii(n_bound, a):
    """``prod(a) >= N`` for ``M >= ceil((N-1)/2)`` pairwise coprime ``a_i > 1``."""
    a = [int(x) for x in a]
    if n_bound < 4:
        raise PreconditionError("N >= 4 required")
    if len(a) < math.ceil((n_bound - 1) / 2):
        raise PreconditionError("need at least ceil((N-1)/2) numbers")
    if any(x < 2 for x in a):
        raise PreconditionError("all a_i must exceed 1")
    if any(math.gcd(x, y) > 1 for x, y in combinations(a, 2)):
        raise PreconditionError("a_i must be pairwise coprime")
    return math.prod(a) >= n_bound


def check_elementary(part, **params):
    if part == "i":
        return check_elementary_i(params["b"], params["ts"], params["t"])
    if part == "ii":
        return check_elementary_ii(params["N"], params["a"])
    raise PreconditionError(f"unknown part {part!r}")


def to_dot(g, name="WP"):
    """Graphviz text: weak vertices dashed, strong solid."""
    weak = weak_vertices(g)
    lines = [f"graph {name} {{"]
    for v, w in sorted(g.vertices, key=lambda vw: (vw[1], vw[0])):
        style = "dashed" if v in weak else "solid"
        lines.append(f'  v{v} [label="{w}", style={style}];')
    for i, j in sorted(g.edges, key=lambda e: ((g.weight(e[0]), e[0]), (g.weight(e[1]), e[1]))):
        lines.append(f"  v{i} -- v{j};")
    lines.append("}")
    return "\n".join(lines)
