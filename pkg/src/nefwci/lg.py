"""Givental models, weak Landau-Ginzburg polynomials and period sequences.

For a nice nef partition ``S_0 ⊔ S_1 ⊔ ... ⊔ S_c`` one index is dropped
from every part (a unit-weight one from ``S_0``) and the kept indices
become torus coordinates::

    f = prod_i (sum_{j kept in S_i} x_ij + 1)^{d_i} / prod_{kept j} x_j^{a_j}
        + sum_{j kept in S_0} t_j

Variables of ``S_0`` are named ``t1, t2, ...``; those of ``S_1..S_5`` use
the letters ``x, y, z, u, v`` (then ``w, a, b, ...``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product

from .core import fano_index
from .errors import InconsistentResult, PreconditionError, ResourceError
from .kernel import PackedContext
from .laurent import LaurentPolynomial, lp_mul, lp_pow
from .nef import NefPartition, validate_partition

__all__ = [
    "GiventalModel",
    "givental_model",
    "default_exclusion",
    "exclusion_choices",
    "lg_variables",
    "weak_lg",
    "factored_text",
    "PeriodSequence",
    "period_sequence",
    "period_sequence_full",
    "period_sequence_windowed",
    "iseries_oracle",
    "DEFAULT_MAX_TERMS",
]

DEFAULT_MAX_TERMS = 10**7

_LETTERS = "xyzuvwabcdefghijklmnopqrs"


def group_letter(i):
    """Variable letter for part ``S_i``."""
    if i == 0:
        return "t"
    if i > len(_LETTERS):
        raise PreconditionError(f"no variable letter for part {i}")
    return _LETTERS[i - 1]


@dataclass(frozen=True)
class GiventalModel:
    """Symbolic torus model: one monomial relation, ``c`` linear relations."""

    coordinates: tuple[str, ...]
    exponents: tuple[int, ...]
    linear_relations: tuple[tuple[str, ...], ...]
    superpotential: tuple[str, ...]

    def render(self):
        mono = "*".join(
            x if a == 1 else f"{x}^{a}" for x, a in zip(self.coordinates, self.exponents)
        )
        lines = [f"{mono} = 1"]
        lines += [" + ".join(rel) + " = 1" for rel in self.linear_relations]
        lines.append("W = " + (" + ".join(self.superpotential) or "0"))
        return "\n".join(lines)

    def __str__(self):
        return self.render()


def givental_model(spec, p):
    validate_partition(p, spec)
    names = tuple(f"x{i}" for i in range(len(spec.weights)))
    return GiventalModel(
        coordinates=names,
        exponents=spec.weights.weights,
        linear_relations=tuple(tuple(names[j] for j in part) for part in p.parts[1:]),
        superpotential=tuple(names[j] for j in p.s0),
    )


def _require_nice(spec, p):
    validate_partition(p, spec)
    w = spec.weights.weights
    if not any(w[i] == 1 for i in p.s0):
        raise PreconditionError(f"partition {p} is not nice: S_0 has no unit weight")


def default_exclusion(spec, p):
    """Highest-index unit weight of ``S_0``; highest-index heaviest of each ``S_i``."""
    _require_nice(spec, p)
    w = spec.weights.weights
    out = [max(i for i in p.s0 if w[i] == 1)]
    for part in p.parts[1:]:
        out.append(max(part, key=lambda i: (w[i], i)))
    return tuple(out)


def _check_exclusion(spec, p, exclusion):
    w = spec.weights.weights
    if len(exclusion) != len(p.parts):
        raise PreconditionError(f"need one excluded index per part, got {len(exclusion)}")
    for k, (j, part) in enumerate(zip(exclusion, p.parts)):
        if j not in part:
            raise PreconditionError(f"excluded index {j} is not in S_{k} = {set(part)}")
    if w[exclusion[0]] != 1:
        raise PreconditionError(
            f"S_0 exclusion {exclusion[0]} has weight {w[exclusion[0]]}, needs a unit weight"
        )


def exclusion_choices(spec, p, distinct=True):
    """Admissible exclusions.

    With ``distinct`` only one choice per pattern of excluded weights is
    returned (the highest index of that weight); dropping another index of
    the same weight in the same part only renames variables.
    """
    _require_nice(spec, p)
    w = spec.weights.weights
    options = []
    for k, part in enumerate(p.parts):
        allowed = [i for i in part if k > 0 or w[i] == 1]
        if distinct:
            best = {}
            for i in allowed:
                best[w[i]] = max(best.get(w[i], i), i)
            allowed = sorted(best.values(), key=lambda i: (w[i], i), reverse=True)
        options.append(allowed)
    return [tuple(c) for c in product(*options)]


def lg_variables(spec, p, exclusion=None):
    """``(name, index, part)`` for every kept index, in output order."""
    exclusion = tuple(exclusion) if exclusion is not None else default_exclusion(spec, p)
    _check_exclusion(spec, p, exclusion)
    out = []
    for k, (part, drop) in enumerate(zip(p.parts, exclusion)):
        kept = [i for i in part if i != drop]
        letter = group_letter(k)
        out += [(f"{letter}{m}", i, k) for m, i in enumerate(kept, start=1)]
    # canonical order: t first, then x, y, ...
    return sorted(out, key=lambda v: (v[2] != 0, v[2], v[1]))


def weak_lg(spec, p, exclusion=None):
    """Weak Landau-Ginzburg Laurent polynomial of a nice nef partition."""
    exclusion = tuple(exclusion) if exclusion is not None else default_exclusion(spec, p)
    kept = lg_variables(spec, p, exclusion)
    names = tuple(v[0] for v in kept)
    n = len(names)
    w = spec.weights.weights

    def unit(pos):
        e = [0] * n
        e[pos] = 1
        return tuple(e)

    numerator = LaurentPolynomial.constant(1, names)
    for k, d in enumerate(spec.degrees, start=1):
        terms = {(0,) * n: 1}
        for pos, (_, _, part) in enumerate(kept):
            if part == k:
                terms[unit(pos)] = 1
        numerator = lp_mul(numerator, lp_pow(LaurentPolynomial(names, terms), d))
    denominator = tuple(-w[i] for _, i, _ in kept)
    f = lp_mul(numerator, LaurentPolynomial(names, {denominator: 1}))
    tail = {unit(pos): 1 for pos, (_, _, part) in enumerate(kept) if part == 0}
    return f + LaurentPolynomial(names, tail)


def factored_text(spec, p, exclusion=None):
    """Power-product form, e.g. ``(x1+x2+1)^3*(y1+y2+1)^3/(x1*x2*y1*y2)``."""
    exclusion = tuple(exclusion) if exclusion is not None else default_exclusion(spec, p)
    kept = lg_variables(spec, p, exclusion)
    w = spec.weights.weights
    factors = []
    for k, d in enumerate(spec.degrees, start=1):
        vs = [name for name, _, part in kept if part == k]
        if vs:
            factors.append(f"({'+'.join(vs + ['1'])})^{d}")
    # torus variables of S_0 go last, as in the usual printed form
    order = sorted(kept, key=lambda v: (v[2] == 0, v[2], v[1]))
    den = [name if w[i] == 1 else f"{name}^{w[i]}" for name, i, _ in order]
    text = "*".join(factors) or "1"
    if den:
        text += "/" + (f"({'*'.join(den)})" if len(den) > 1 else den[0])
    tail = [name for name, _, part in kept if part == 0]
    return " + ".join([text] + tail)


# -- periods ---------------------------------------------------------------


@dataclass(frozen=True)
class PeriodSequence:
    """``p_0..p_K`` with ``p_k`` the constant term of ``f**k``."""

    values: tuple[int, ...]

    def __post_init__(self):
        values = tuple(int(v) for v in self.values)
        if not values or values[0] != 1:
            raise PreconditionError(f"a period sequence starts with 1, got {values[:1]}")
        object.__setattr__(self, "values", values)

    def __getitem__(self, k):
        return self.values[k]

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    @property
    def K(self):
        return len(self.values) - 1


class _DictRing:
    """Exact dictionary arithmetic for polynomials that cannot be packed."""

    def __init__(self, f):
        self.nvars = len(f.variables)
        self.f = dict(f.terms)
        self.zero = (0,) * self.nvars

    def one(self):
        return {self.zero: 1}

    def mul(self, a, b, lo=None, hi=None):
        out = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                if lo is not None and any(x < l or x > h for x, l, h in zip(e, lo, hi)):
                    continue
                out[e] = out.get(e, 0) + ca * cb
        return {e: c for e, c in out.items() if c}

    def ct(self, a):
        return a.get(self.zero, 0)

    def pair(self, a, b):
        return sum(c * b.get(tuple(-x for x in e), 0) for e, c in a.items())


class _PackedRing:
    """Multi-modular packed arithmetic through the compiled or Python kernel."""

    def __init__(self, f, K, backend=None):
        self.nvars = len(f.variables)
        reach = (K + 1) * max(f.max_abs_exponent(), 1)
        self.ctx = PackedContext(self.nvars, reach, max(f.l1_norm(), 1) ** max(K, 1), backend)
        self.f = self.ctx.from_terms(dict(f.terms))
        self.zero = (0,) * self.nvars

    @staticmethod
    def usable(f, K):
        return PackedContext.fits(len(f.variables), (K + 1) * max(f.max_abs_exponent(), 1))

    def one(self):
        return self.ctx.one()

    def mul(self, a, b, lo=None, hi=None):
        return a.mul(b, lo, hi)

    def ct(self, a):
        return a.coeff(self.zero)

    def pair(self, a, b):
        return self.ctx.lift(a.pair_opposite(b))


def _ring(f, K, backend=None):
    if len(f.variables) == 0 or not _PackedRing.usable(f, K):
        return _DictRing(f)
    return _PackedRing(f, K, backend)


def _budget(size, max_terms, what):
    if max_terms is not None and size > max_terms:
        raise ResourceError(f"{what} has {size} terms, over the budget of {max_terms}")


def period_sequence_full(f, K, max_terms=DEFAULT_MAX_TERMS, backend=None):
    """Expand ``f**j`` for ``j <= ceil(K/2)`` and read ``ct(f**k)`` as a pairing.

    ``ct(f**k) = sum_e [f**a]_e [f**b]_{-e}`` with ``a + b = k``.
    """
    if K < 0:
        raise PreconditionError("K must be >= 0")
    ring = _ring(f, K, backend)
    half = (K + 1) // 2
    powers = [ring.one()]
    for j in range(1, half + 1):
        powers.append(ring.mul(powers[-1], ring.f))
        _budget(len(powers[-1]), max_terms, f"f^{j}")
    values = [1]
    for k in range(1, K + 1):
        a = (k + 1) // 2
        values.append(ring.pair(powers[a], powers[k - a]))
    return PeriodSequence(tuple(values))


def period_sequence_windowed(f, K, max_terms=DEFAULT_MAX_TERMS, backend=None):
    """Multiply by ``f`` ``K`` times, dropping terms that can no longer reach 0.

    Before the last ``r`` factors, a term ``x^e`` can only contribute to a
    constant term if ``-r*max_v <= e_v <= -r*min_v`` for every variable.
    """
    if K < 0:
        raise PreconditionError("K must be >= 0")
    ring = _ring(f, K, backend)
    bounds = f.exponent_bounds()
    cur = ring.one()
    values = [1]
    for j in range(1, K + 1):
        r = K - j
        lo = [-r * hi for _, hi in bounds]
        hi = [-r * lo_ for lo_, _ in bounds]
        cur = ring.mul(cur, ring.f, lo, hi)
        _budget(len(cur), max_terms, f"truncated f^{j}")
        values.append(ring.ct(cur))
    return PeriodSequence(tuple(values))


def period_sequence(f, K, max_terms=DEFAULT_MAX_TERMS, backend=None):
    """Constant terms of ``f**0..f**K``, computed two ways and cross-checked."""
    full = period_sequence_full(f, K, max_terms, backend)
    windowed = period_sequence_windowed(f, K, max_terms, backend)
    if full != windowed:
        raise InconsistentResult(
            f"period strategies disagree: full {full.values} vs windowed {windowed.values}"
        )
    return full


def iseries_oracle(spec, K):
    """Closed-form coefficients: ``a_{mI} = (mI)! prod (d_j m)! / prod (a_i m)!``."""
    index = fano_index(spec)
    if index <= 0:
        raise PreconditionError(f"{spec} is not Fano (index {index})")
    values = []
    for k in range(K + 1):
        if k % index:
            values.append(0)
            continue
        m = k // index
        num = math.factorial(k) * math.prod(math.factorial(d * m) for d in spec.degrees)
        den = math.prod(math.factorial(a * m) for a in spec.weights.weights)
        q, r = divmod(num, den)
        if r:
            raise PreconditionError(f"closed form for {spec} is not integral at k={k}")
        values.append(q)
    return PeriodSequence(tuple(values))


def partition_from(spec, parts):
    p = NefPartition(tuple(tuple(x) for x in parts))
    validate_partition(p, spec)
    return p
