"""Weight systems, complete-intersection specs and their combinatorial checks.

A complete intersection ``X_{d_1,...,d_c} ⊂ P(a_0,...,a_n)`` is described by a
:class:`CISpec`.  Weights and degrees are always kept sorted ascending, so
every index that appears elsewhere in the package (partitions, graph
vertices) refers to this canonical order.

Input notation::

    P(1^3,2^2,3^2)/6,6      exponent abbreviations expand to repeats
    P(1,1)/                 codimension 0
    P^5/3                   shorthand for P(1^6)/3
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from functools import reduce
from itertools import combinations

from .errors import ParseError, PreconditionError

__all__ = [
    "WeightSystem",
    "CISpec",
    "AnalysisReport",
    "parse_spec",
    "render_spec",
    "is_well_formed_space",
    "divisibility_condition",
    "divisibility_violations",
    "fano_index",
    "is_linear_cone",
    "triple_coprime",
    "analyze",
]


@dataclass(frozen=True)
class WeightSystem:
    """Weights ``a_0 <= ... <= a_n`` of a weighted projective space."""

    weights: tuple[int, ...]

    def __post_init__(self):
        ws = tuple(int(w) for w in self.weights)
        if not ws:
            raise PreconditionError("weight system must be nonempty")
        if any(w < 1 for w in ws):
            raise PreconditionError(f"weights must be positive, got {ws}")
        object.__setattr__(self, "weights", tuple(sorted(ws)))

    def __len__(self):
        return len(self.weights)

    def __iter__(self):
        return iter(self.weights)

    def __getitem__(self, i):
        return self.weights[i]

    @property
    def unit_count(self):
        return sum(1 for w in self.weights if w == 1)

    def nonunit(self):
        """``(index, weight)`` pairs with weight > 1, in canonical order."""
        return [(i, w) for i, w in enumerate(self.weights) if w > 1]


@dataclass(frozen=True)
class CISpec:
    """A weighted complete intersection: weights plus degrees ``d_1..d_c``."""

    weights: WeightSystem
    degrees: tuple[int, ...] = ()

    def __post_init__(self):
        if not isinstance(self.weights, WeightSystem):
            object.__setattr__(self, "weights", WeightSystem(tuple(self.weights)))
        ds = tuple(int(d) for d in self.degrees)
        if any(d < 1 for d in ds):
            raise PreconditionError(f"degrees must be positive, got {ds}")
        object.__setattr__(self, "degrees", tuple(sorted(ds)))
        if self.dimension < 1:
            raise PreconditionError(
                f"dimension n - c must be >= 1, got {self.dimension} for "
                f"{len(self.weights)} weights and {len(ds)} degrees"
            )

    @classmethod
    def of(cls, weights, degrees=()):
        return cls(WeightSystem(tuple(weights)), tuple(degrees))

    @property
    def n(self):
        return len(self.weights) - 1

    @property
    def codimension(self):
        return len(self.degrees)

    @property
    def dimension(self):
        return self.n - self.codimension

    @property
    def unit_count(self):
        return self.weights.unit_count

    def __str__(self):
        return render_spec(self)


@dataclass(frozen=True)
class AnalysisReport:
    well_formed_space: bool
    divisibility_ok: bool
    triple_coprime: bool
    fano_index: int
    linear_cone: bool
    dimension: int
    unit_count: int

    @property
    def favorable(self):
        """All flags as required for a catalog entry."""
        return (
            self.well_formed_space
            and self.divisibility_ok
            and self.triple_coprime
            and self.fano_index >= 1
            and not self.linear_cone
        )

    def as_dict(self):
        return {
            "well_formed_space": self.well_formed_space,
            "divisibility_ok": self.divisibility_ok,
            "triple_coprime": self.triple_coprime,
            "fano_index": self.fano_index,
            "linear_cone": self.linear_cone,
            "dimension": self.dimension,
            "unit_count": self.unit_count,
        }


# -- parsing ---------------------------------------------------------------


def _tokens(text):
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            yield ("INT", text[i:j], i)
            i = j
        elif ch in "P()/,^-":
            yield (ch, ch, i)
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", text, i)
    yield ("END", "", n)


class _SpecParser:
    def __init__(self, text):
        self.text = text
        self.toks = list(_tokens(text))
        self.k = 0

    @property
    def cur(self):
        return self.toks[self.k]

    def expect(self, kind):
        tok = self.cur
        if tok[0] != kind:
            what = "end of input" if tok[0] == "END" else repr(tok[1])
            raise ParseError(f"expected {kind!r}, found {what}", self.text, tok[2])
        self.k += 1
        return tok

    def positive_int(self):
        if self.cur[0] == "-":
            raise ParseError("negative values are not allowed", self.text, self.cur[2])
        tok = self.expect("INT")
        v = int(tok[1])
        if v < 1:
            raise ParseError("zero is not a valid weight or degree", self.text, tok[2])
        return v

    def parse(self):
        self.expect("P")
        if self.cur[0] == "^":
            # P^n shorthand for ordinary projective space
            self.k += 1
            weights = [1] * (self.positive_int() + 1)
        else:
            self.expect("(")
            weights = self.witem()
            while self.cur[0] == ",":
                self.k += 1
                weights += self.witem()
            self.expect(")")
        self.expect("/")
        degrees = []
        if self.cur[0] != "END":
            degrees.append(self.positive_int())
            while self.cur[0] == ",":
                self.k += 1
                degrees.append(self.positive_int())
        self.expect("END")
        return weights, degrees

    def witem(self):
        base = self.positive_int()
        if self.cur[0] == "^":
            self.k += 1
            return [base] * self.positive_int()
        return [base]


def parse_spec(text):
    """Parse ``P(w,...)/d,...`` notation into a canonical :class:`CISpec`.

    >>> parse_spec("P(1^3,2^2,3^2)/6,6").weights.weights
    (1, 1, 1, 2, 2, 3, 3)
    """
    weights, degrees = _SpecParser(text).parse()
    try:
        return CISpec.of(weights, degrees)
    except PreconditionError as exc:
        raise ParseError(str(exc), text, 0) from exc


def _render_multiset(values):
    parts = []
    for v, k in sorted(Counter(values).items()):
        parts.append(f"{v}^{k}" if k > 1 else str(v))
    return ",".join(parts)


def render_spec(spec):
    """Canonical text form; ``parse_spec(render_spec(s)) == s``."""
    degs = ",".join(str(d) for d in spec.degrees)
    return f"P({_render_multiset(spec.weights.weights)})/{degs}"


# -- checks ----------------------------------------------------------------


def is_well_formed_space(ws):
    """True iff every ``n`` of the ``n+1`` weights are coprime."""
    w = ws.weights if isinstance(ws, WeightSystem) else tuple(ws)
    if len(w) < 2:
        raise PreconditionError("well-formedness needs at least two weights")
    prefix = [0]
    for a in w:
        prefix.append(math.gcd(prefix[-1], a))
    suffix = [0]
    for a in reversed(w):
        suffix.append(math.gcd(suffix[-1], a))
    suffix.reverse()
    return all(math.gcd(prefix[i], suffix[i + 1]) == 1 for i in range(len(w)))


def divisibility_violations(spec):
    """Subsets of non-unit weights breaking the divisibility condition.

    Yields ``(indices, delta)`` where the weights at ``indices`` have gcd
    ``delta > 1`` but fewer than ``len(indices)`` degrees are divisible by
    ``delta``.  Subsets are scanned directly.
    """
    nonunit = spec.weights.nonunit()
    for k in range(1, len(nonunit) + 1):
        for subset in combinations(nonunit, k):
            delta = reduce(math.gcd, (w for _, w in subset))
            if delta == 1:
                continue
            if sum(1 for d in spec.degrees if d % delta == 0) < k:
                yield tuple(i for i, _ in subset), delta


def divisibility_condition(spec):
    for _ in divisibility_violations(spec):
        return False
    return True


def fano_index(spec):
    """``sum(weights) - sum(degrees)``; a complete intersection is Fano iff this is positive."""
    return sum(spec.weights.weights) - sum(spec.degrees)


def is_linear_cone(spec):
    weights = set(spec.weights.weights)
    return any(d in weights for d in spec.degrees)


def triple_coprime(ws):
    """True iff every three weights greater than 1 have gcd 1."""
    w = ws.weights if isinstance(ws, WeightSystem) else tuple(ws)
    big = [a for a in w if a > 1]
    for i, j in combinations(range(len(big)), 2):
        g = math.gcd(big[i], big[j])
        if g == 1:
            continue
        for k in range(j + 1, len(big)):
            if math.gcd(g, big[k]) > 1:
                return False
    return True


def triple_violation(ws):
    """First non-coprime triple of weights > 1, or ``None``."""
    w = ws.weights if isinstance(ws, WeightSystem) else tuple(ws)
    big = [a for a in w if a > 1]
    for triple in combinations(big, 3):
        if reduce(math.gcd, triple) > 1:
            return triple
    return None


def analyze(spec):
    ws = spec.weights
    return AnalysisReport(
        well_formed_space=is_well_formed_space(ws),
        divisibility_ok=divisibility_condition(spec),
        triple_coprime=triple_coprime(ws),
        fano_index=fano_index(spec),
        linear_cone=is_linear_cone(spec),
        dimension=spec.dimension,
        unit_count=spec.unit_count,
    )
