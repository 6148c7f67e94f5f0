"""Nef partitions of complete intersections in weighted projective space.

A nef partition splits the weight indices as ``S_0 ⊔ S_1 ⊔ ... ⊔ S_c`` with
the weights in ``S_i`` summing to ``d_i`` for ``i >= 1``; it is nice when
``S_0`` holds an index of weight 1.  Indices are canonical positions in the
ascending weight order.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass

from .core import (
    divisibility_condition,
    fano_index,
    is_well_formed_space,
    triple_coprime,
)
from .errors import InvalidPartition, LemmaViolation, ParseError, PreconditionError, ResourceError
from .graph import build_wp_graph, split_bidegree

__all__ = [
    "NefPartition",
    "NefPartitionWarning",
    "validate_partition",
    "signature",
    "canonicalize",
    "construct_nice",
    "enumerate_all",
    "is_nice",
    "unit_count_bound",
    "parse_partition",
    "render_partition",
    "render_signature",
    "from_signature",
    "DEFAULT_NODE_BUDGET",
]

DEFAULT_NODE_BUDGET = 10**8


class NefPartitionWarning(UserWarning):
    pass


@dataclass(frozen=True)
class NefPartition:
    """Parts ``S_0, S_1, ..., S_c`` as sorted index tuples."""

    parts: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(
            self, "parts", tuple(tuple(sorted(int(i) for i in p)) for p in self.parts)
        )

    @property
    def s0(self):
        return self.parts[0]

    def __str__(self):
        return render_partition(self)


def validate_partition(p, spec):
    """Raise :class:`InvalidPartition` unless ``p`` is a nef partition of ``spec``."""
    c = spec.codimension
    if len(p.parts) != c + 1:
        raise InvalidPartition(f"expected {c + 1} parts, got {len(p.parts)}")
    flat = [i for part in p.parts for i in part]
    if sorted(flat) != list(range(len(spec.weights))):
        raise InvalidPartition(
            f"parts must cover 0..{spec.n} exactly once, got {render_partition(p)}"
        )
    w = spec.weights.weights
    for k, (part, d) in enumerate(zip(p.parts[1:], spec.degrees), start=1):
        s = sum(w[i] for i in part)
        if s != d:
            raise InvalidPartition(f"S_{k} has weight sum {s}, expected degree {d}")


def is_valid(p, spec):
    try:
        validate_partition(p, spec)
    except InvalidPartition:
        return False
    return True


def signature(p, spec):
    """Per-part weight multisets; parts of equal degree are put in sorted order."""
    w = spec.weights.weights
    sig = [tuple(sorted(w[i] for i in part)) for part in p.parts]
    return tuple(sig[:1] + _sort_equal_degree(sig[1:], spec.degrees))


def _sort_equal_degree(items, degrees, key=None):
    out, start = [], 0
    while start < len(items):
        end = start
        while end < len(items) and degrees[end] == degrees[start]:
            end += 1
        out.extend(sorted(items[start:end], key=key))
        start = end
    return out


def canonicalize(p, spec):
    """Reorder parts of equal degree so that the signature order is used."""
    w = spec.weights.weights
    rest = _sort_equal_degree(
        list(p.parts[1:]), spec.degrees, key=lambda part: (sorted(w[i] for i in part), part)
    )
    return NefPartition((p.parts[0], *rest))


def is_nice(p, spec):
    validate_partition(p, spec)
    w = spec.weights.weights
    return any(w[i] == 1 for i in p.s0)


def unit_count_bound(spec):
    return spec.unit_count >= fano_index(spec)


def construct_nice(spec):
    """Nice nef partition for a Fano spec of codimension at most 2.

    Non-unit weights are split between the degrees (all into ``S_1`` in
    codimension 1, by :func:`split_bidegree` in codimension 2) and the
    parts are topped up with unit weights; the leftover units form ``S_0``.
    """
    c = spec.codimension
    if c > 2:
        raise PreconditionError(f"construction needs codimension <= 2, got {c}")
    if fano_index(spec) <= 0:
        raise PreconditionError(f"not Fano: index {fano_index(spec)}")
    if not is_well_formed_space(spec.weights):
        raise PreconditionError("weighted projective space is not well formed")
    if not triple_coprime(spec.weights):
        raise PreconditionError("some three non-unit weights share a factor")
    if not divisibility_condition(spec):
        raise PreconditionError("divisibility condition fails")

    w = spec.weights.weights
    units = [i for i, a in enumerate(w) if a == 1]
    if c == 0:
        return NefPartition((tuple(range(len(w))),))
    if c == 1:
        cores = [[i for i, a in enumerate(w) if a > 1]]
    else:
        split = split_bidegree(build_wp_graph(spec.weights), *spec.degrees)
        cores = [sorted(split.V1), sorted(split.V2)]

    need = [d - sum(w[i] for i in core) for core, d in zip(cores, spec.degrees)]
    if min(need) < 0 or sum(need) >= len(units):
        raise LemmaViolation(
            f"{spec}: cannot pad {cores} with {len(units)} unit weights (needs {need})"
        )
    n0 = len(units) - sum(need)
    s0, pos, parts = units[:n0], n0, []
    for core, k in zip(cores, need):
        parts.append(core + units[pos:pos + k])
        pos += k
    return canonicalize(NefPartition((s0, *parts)), spec)


def _classes(spec):
    """Equal-weight index classes, heaviest first."""
    by_weight = {}
    for i, a in enumerate(spec.weights.weights):
        by_weight.setdefault(a, []).append(i)
    return sorted(by_weight.items(), reverse=True)


def enumerate_all(spec, allow_empty_s0=False, node_budget=DEFAULT_NODE_BUDGET):
    """All nef partitions of ``spec`` up to permuting equal weights.

    Backtracks over the heaviest weight class first, choosing how many of
    its indices go to each part, with each part's remaining degree as a
    capacity bound.  ``S_0`` may contain any weights.  Raises
    :class:`ResourceError` once more than ``node_budget`` nodes are visited.
    """
    if _is_nonsmooth_family(spec):
        warnings.warn(
            "P(1^k,6,10,15)/2,3,5,30 satisfies the degree divisibility condition "
            "but is not smooth, and no nef partition is expected; under the literal "
            "definition used here, splittings with the weight 6 in S_0 exist once "
            "k >= 15",
            NefPartitionWarning,
            stacklevel=2,
        )
    c = spec.codimension
    classes = _classes(spec)
    tail_sums = [0] * (len(classes) + 1)
    for k in range(len(classes) - 1, -1, -1):
        w, idx = classes[k]
        tail_sums[k] = tail_sums[k + 1] + w * len(idx)

    nodes = 0
    found = {}
    rem = list(spec.degrees)
    counts = [[0] * (c + 1) for _ in classes]

    def tick():
        nonlocal nodes
        nodes += 1
        if nodes > node_budget:
            raise ResourceError(f"enumeration of {spec} exceeded {node_budget} nodes")

    def distribute(k, part, left):
        # hand `left` indices of class k to parts `part..c`; the last takes the rest
        tick()
        w = classes[k][0]
        cap = left if part == 0 else min(left, rem[part - 1] // w)
        if part == c:
            if left <= cap:
                counts[k][part] = left
                if part:
                    rem[part - 1] -= left * w
                descend(k + 1)
                if part:
                    rem[part - 1] += left * w
            return
        for m in range(cap, -1, -1):
            counts[k][part] = m
            if part:
                rem[part - 1] -= m * w
            distribute(k, part + 1, left - m)
            if part:
                rem[part - 1] += m * w

    def descend(k):
        tick()
        if sum(rem) > tail_sums[k]:
            return
        if k == len(classes):
            if all(r == 0 for r in rem):
                record()
            return
        distribute(k, 0, len(classes[k][1]))

    def record():
        parts = [[] for _ in range(c + 1)]
        for (w, idx), cnt in zip(classes, counts):
            pos = 0
            for j in range(c + 1):
                parts[j].extend(idx[pos:pos + cnt[j]])
                pos += cnt[j]
        p = canonicalize(NefPartition(tuple(parts)), spec)
        if not p.s0 and not allow_empty_s0:
            return
        found.setdefault(signature(p, spec), p)

    descend(0)
    return [found[s] for s in sorted(found)]


def _is_nonsmooth_family(spec):
    nonunit = [a for a in spec.weights.weights if a > 1]
    return nonunit == [6, 10, 15] and spec.degrees == (2, 3, 5, 30)


# -- text forms ------------------------------------------------------------

_PART_RE = re.compile(r"\{([^{}]*)\}")


def render_partition(p):
    return "|".join("{" + ",".join(map(str, part)) + "}" for part in p.parts)


def render_signature(sig):
    return "|".join("{" + ",".join(map(str, part)) + "}" for part in sig)


def from_signature(sig, spec):
    """Realize per-part weight multisets as canonical indices."""
    pools = {}
    for i, a in enumerate(spec.weights.weights):
        pools.setdefault(a, []).append(i)
    parts = []
    for part in sig:
        idx = []
        for a in part:
            if not pools.get(a):
                raise InvalidPartition(f"signature uses weight {a} more often than available")
            idx.append(pools[a].pop(0))
        parts.append(idx)
    if any(pools.values()):
        raise InvalidPartition("signature does not use every weight")
    p = NefPartition(tuple(parts))
    validate_partition(p, spec)
    return p


def parse_partition(text, spec):
    """Parse ``{0}|{1,2,3,4}|{5,6}`` (indices) or ``{1}|{1,1,2,2}|{3,3}`` (weights).

    ``⊔`` and ``\\sqcup`` are accepted as separators.  A text that covers
    every index exactly once is read as indices, otherwise as weights.
    """
    body = text.replace("\\sqcup", "|").replace("⊔", "|").replace(" ", "")
    chunks = body.split("|")
    groups = []
    pos = 0
    for chunk in chunks:
        m = _PART_RE.fullmatch(chunk)
        if not m:
            raise ParseError(f"malformed part {chunk!r}", text, text.find(chunk, pos))
        inner = m.group(1)
        try:
            groups.append([int(x) for x in inner.split(",")] if inner else [])
        except ValueError:
            raise ParseError(f"non-integer entry in {chunk!r}", text, text.find(chunk, pos)) from None
        pos = text.find(chunk, pos) + len(chunk)
    flat = sorted(i for g in groups for i in g)
    if flat == list(range(len(spec.weights))):
        p = NefPartition(tuple(groups))
        validate_partition(p, spec)
        return p
    return from_signature(groups, spec)
