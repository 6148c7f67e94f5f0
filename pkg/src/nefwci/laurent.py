"""Exact multivariate Laurent polynomials.

A :class:`LaurentPolynomial` is an ordered variable table plus a map from
integer exponent vectors to nonzero Python integers.  Large products are
sent to the packed multi-modular kernel (see :mod:`nefwci.kernel`) and
lifted back exactly; small ones use plain dictionaries.

Text grammar (``*`` optional, variables are a letter plus digits)::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor (['*'|'/'] factor)*
    factor := atom ['^' ['-'] INT]
    atom   := INT | VAR | '(' expr ')'

Division and negative powers are only allowed for monomials.  LaTeX forms
such as ``\\frac{(x_1+1)^{2}}{x_1} + t_1`` are normalized first.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from types import MappingProxyType

from .errors import ParseError, PreconditionError, ResourceError
from .kernel import PackedContext

__all__ = [
    "LaurentPolynomial",
    "lp_add",
    "lp_mul",
    "lp_pow",
    "constant_term",
    "align",
    "parse_laurent",
    "canonical_text",
    "equal_up_to_relabel",
    "variable_sort_key",
    "latex_to_text",
]

GROUP_ORDER = "txyzuv"
PACKED_THRESHOLD = 20000


def variable_sort_key(name):
    """Order ``t, x, y, z, u, v`` first, then other letters; then subscript."""
    m = re.fullmatch(r"([a-z]+)(\d*)", name)
    if not m:
        return (2, name, 0)
    letters, digits = m.groups()
    rank = GROUP_ORDER.index(letters) if letters in GROUP_ORDER else len(GROUP_ORDER)
    return (0 if rank < len(GROUP_ORDER) else 1, rank, letters, int(digits or 0))


def group_of(name):
    return re.match(r"[a-z]*", name).group(0)


@dataclass(frozen=True, eq=False)
class LaurentPolynomial:
    variables: tuple[str, ...]
    _terms: dict = field(repr=False)

    def __init__(self, variables, terms=None):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise PreconditionError(f"repeated variable in {variables}")
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(int(x) for x in e)
            if len(e) != len(variables):
                raise PreconditionError(
                    f"exponent vector {e} does not match {len(variables)} variables"
                )
            c = int(c)
            if c:
                clean[e] = clean.get(e, 0) + c
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "_terms", {e: c for e, c in clean.items() if c})

    @classmethod
    def constant(cls, c, variables=()):
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def variable(cls, name, variables=None):
        variables = tuple(variables) if variables is not None else (name,)
        e = tuple(1 if v == name else 0 for v in variables)
        return cls(variables, {e: 1})

    @property
    def terms(self):
        return MappingProxyType(self._terms)

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self.variables == other.variables and self._terms == other._terms

    def __hash__(self):
        return hash((self.variables, frozenset(self._terms.items())))

    def __add__(self, other):
        return lp_add(self, other)

    def __sub__(self, other):
        return lp_add(self, -other)

    def __neg__(self):
        return LaurentPolynomial(self.variables, {e: -c for e, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPolynomial(self.variables, {e: c * other for e, c in self._terms.items()})
        return lp_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, n):
        return lp_pow(self, n)

    def __str__(self):
        return canonical_text(self)

    def l1_norm(self):
        return sum(abs(c) for c in self._terms.values())

    def exponent_bounds(self):
        """Per-variable ``(min, max)`` exponents over the support."""
        if not self._terms:
            return [(0, 0)] * len(self.variables)
        cols = list(zip(*self._terms))
        return [(min(col), max(col)) for col in cols]

    def max_abs_exponent(self):
        return max((abs(x) for e in self._terms for x in e), default=0)

    def is_monomial(self):
        return len(self._terms) == 1

    def reorder(self, variables):
        """Same polynomial over ``variables`` (a superset of the used ones)."""
        variables = tuple(variables)
        pos = {v: i for i, v in enumerate(variables)}
        for v, col in zip(self.variables, zip(*self._terms) if self._terms else []):
            if v not in pos and any(col):
                raise PreconditionError(f"variable {v} is used but missing from {variables}")
        idx = [pos.get(v) for v in self.variables]
        out = {}
        for e, c in self._terms.items():
            new = [0] * len(variables)
            for i, x in zip(idx, e):
                if i is not None:
                    new[i] = x
            out[tuple(new)] = c
        return LaurentPolynomial(variables, out)

    def used_variables(self):
        if not self._terms:
            return ()
        return tuple(v for v, col in zip(self.variables, zip(*self._terms)) if any(col))


def align(f, g):
    """Rewrite both over the sorted union of their variable tables."""
    if f.variables == g.variables:
        return f, g
    union = tuple(sorted(set(f.variables) | set(g.variables), key=variable_sort_key))
    return f.reorder(union), g.reorder(union)


def _check_same(f, g):
    if f.variables != g.variables:
        raise PreconditionError(
            f"variable tables differ: {f.variables} vs {g.variables}; align() them first"
        )


def lp_add(f, g):
    _check_same(f, g)
    out = dict(f._terms)
    for e, c in g._terms.items():
        out[e] = out.get(e, 0) + c
    return LaurentPolynomial(f.variables, out)


def _mul_dict(a, b):
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = out.get(e, 0) + ca * cb
    return out


def lp_mul(f, g):
    _check_same(f, g)
    nvars = len(f.variables)
    if len(f) * len(g) <= PACKED_THRESHOLD or nvars == 0:
        return LaurentPolynomial(f.variables, _mul_dict(f._terms, g._terms))
    reach = f.max_abs_exponent() + g.max_abs_exponent()
    if not PackedContext.fits(nvars, reach):
        return LaurentPolynomial(f.variables, _mul_dict(f._terms, g._terms))
    ctx = PackedContext(nvars, reach, f.l1_norm() * g.l1_norm())
    prod = ctx.from_terms(f._terms).mul(ctx.from_terms(g._terms))
    return LaurentPolynomial(f.variables, prod.to_terms())


def lp_pow(f, n, max_terms=None, report=None):
    """``f**n`` by repeated squaring.

    ``report(step, nterms)`` is called after every multiplication; a
    :class:`ResourceError` is raised once an intermediate result has more
    than ``max_terms`` terms.
    """
    if n < 0:
        if not f.is_monomial():
            raise PreconditionError("negative powers need a monomial")
        ((e, c),) = f._terms.items()
        if abs(c) != 1:
            raise PreconditionError("negative power of a non-unit coefficient")
        return LaurentPolynomial(f.variables, {tuple(n * x for x in e): c ** (-n)})
    result = LaurentPolynomial.constant(1, f.variables)
    base = f
    step = 0

    def note(p):
        nonlocal step
        step += 1
        if report is not None:
            report(step, len(p))
        if max_terms is not None and len(p) > max_terms:
            raise ResourceError(f"power of a {len(f)}-term polynomial exceeded {max_terms} terms")

    while n:
        if n & 1:
            result = lp_mul(result, base)
            note(result)
        n >>= 1
        if n:
            base = lp_mul(base, base)
            note(base)
    return result


def constant_term(f):
    return f._terms.get((0,) * len(f.variables), 0)


# -- text ------------------------------------------------------------------


def _render_monomial(names, exps):
    return "*".join(n if x == 1 else f"{n}^{x}" for n, x in zip(names, exps))


def _render_term(variables, e, c):
    num = [(v, x) for v, x in zip(variables, e) if x > 0]
    den = [(v, -x) for v, x in zip(variables, e) if x < 0]
    body = _render_monomial(*zip(*num)) if num else ""
    mag = abs(c)
    if not body:
        body = str(mag)
    elif mag != 1:
        body = f"{mag}*{body}"
    if den:
        d = _render_monomial(*zip(*den))
        body += f"/({d})" if len(den) > 1 or den[0][1] != 1 else f"/{d}"
    return ("-" if c < 0 else "+"), body


def canonical_text(f):
    """Expanded form, terms in ascending exponent-vector order.

    >>> canonical_text(parse_laurent("t1 + 1/t1"))
    '1/t1 + t1'
    """
    if not f._terms:
        return "0"
    out = []
    for e in sorted(f._terms):
        sign, body = _render_term(f.variables, e, f._terms[e])
        if not out:
            out.append(body if sign == "+" else "-" + body)
        else:
            out.append(f"{sign} {body}")
    return " ".join(out)


_FRAC = "\\frac"


def latex_to_text(s):
    """Normalize the LaTeX spelling of a Laurent polynomial to the grammar."""
    s = s.replace("$", "").replace("\\left", "").replace("\\right", "").replace("\\cdot", "*")
    while _FRAC in s:
        i = s.index(_FRAC)
        num, j = _braced(s, i + len(_FRAC))
        den, k = _braced(s, j)
        s = f"{s[:i]}(({num})/({den})){s[k:]}"
    s = re.sub(r"\^\{\s*(-?\d+)\s*\}", r"^\1", s)
    s = re.sub(r"_\{(\d+)\}", r"\1", s)
    s = re.sub(r"_(\d)", r"\1", s)
    return s.replace("{", "(").replace("}", ")")


def _braced(s, i):
    while i < len(s) and s[i].isspace():
        i += 1
    if i >= len(s) or s[i] != "{":
        raise ParseError("expected '{' after \\frac", s, i)
    depth = 0
    for j in range(i, len(s)):
        if s[j] == "{":
            depth += 1
        elif s[j] == "}":
            depth -= 1
            if depth == 0:
                return s[i + 1:j], j + 1
    raise ParseError("unbalanced braces", s, i)


_TOKEN = re.compile(r"(\d+)|([a-z]\d*)|(.)")


def _tokenize(text):
    toks = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        num, var, ch = m.groups()
        if num is not None:
            toks.append(("INT", int(num), pos))
        elif var is not None:
            toks.append(("VAR", var, pos))
        elif ch in "+-*/^()":
            toks.append((ch, ch, pos))
        else:
            raise ParseError(f"unexpected character {ch!r}", text, pos)
        pos = m.end()
    toks.append(("END", None, len(text)))
    return toks


# Parsing works on sparse monomials: sorted tuples of (variable, exponent).


def _smul(a, b):
    out = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            d = dict(ma)
            for v, x in mb:
                d[v] = d.get(v, 0) + x
            m = tuple(sorted((v, x) for v, x in d.items() if x))
            out[m] = out.get(m, 0) + ca * cb
    return {m: c for m, c in out.items() if c}


class _LaurentParser:
    def __init__(self, text):
        self.text = text
        self.toks = _tokenize(text)
        self.k = 0
        self.names = set()

    @property
    def cur(self):
        return self.toks[self.k]

    def fail(self, msg, tok=None):
        tok = tok or self.cur
        raise ParseError(msg, self.text, tok[2])

    def take(self, kind):
        if self.cur[0] != kind:
            what = "end of input" if self.cur[0] == "END" else repr(self.cur[1])
            self.fail(f"expected {kind!r}, found {what}")
        tok = self.cur
        self.k += 1
        return tok

    def parse(self):
        if self.cur[0] == "END":
            self.fail("empty expression")
        val = self.expr()
        self.take("END")
        return val

    def expr(self):
        sign = 1
        if self.cur[0] in "+-":
            sign = -1 if self.cur[0] == "-" else 1
            self.k += 1
        acc = {m: sign * c for m, c in self.term().items()}
        while self.cur[0] in ("+", "-"):
            sign = -1 if self.cur[0] == "-" else 1
            self.k += 1
            for m, c in self.term().items():
                acc[m] = acc.get(m, 0) + sign * c
        return {m: c for m, c in acc.items() if c}

    def term(self):
        val = self.factor()
        while True:
            kind = self.cur[0]
            if kind == "*":
                self.k += 1
                val = _smul(val, self.factor())
            elif kind == "/":
                tok = self.toks[self.k + 1]
                self.k += 1
                val = _smul(val, self._invert(self.factor(), tok))
            elif kind in ("INT", "VAR", "("):
                val = _smul(val, self.factor())
            else:
                return val

    def _invert(self, val, tok):
        if len(val) != 1:
            self.fail("can only divide by a monomial", tok)
        ((m, c),) = val.items()
        if abs(c) != 1:
            self.fail("can only divide by a monomial with coefficient 1", tok)
        return {tuple((v, -x) for v, x in m): c}

    def factor(self):
        tok = self.cur
        val = self.atom()
        if self.cur[0] == "^":
            self.k += 1
            neg = False
            if self.cur[0] == "-":
                neg = True
                self.k += 1
            n = self.take("INT")[1]
            if neg:
                val = self._invert(val, tok)
            result = {(): 1}
            for _ in range(n):
                result = _smul(result, val)
            val = result
        return val

    def atom(self):
        tok = self.cur
        if tok[0] == "INT":
            self.k += 1
            return {(): tok[1]} if tok[1] else {}
        if tok[0] == "VAR":
            self.k += 1
            if not re.fullmatch(r"[a-z]\d+", tok[1]):
                self.fail(f"variable {tok[1]!r} needs a numeric subscript", tok)
            self.names.add(tok[1])
            return {((tok[1], 1),): 1}
        if tok[0] == "(":
            self.k += 1
            val = self.expr()
            self.take(")")
            return val
        what = "end of input" if tok[0] == "END" else repr(tok[1])
        self.fail(f"expected a number, variable or '(', found {what}")


def parse_laurent(text, variables=None):
    """Parse grammar or LaTeX text into a :class:`LaurentPolynomial`.

    Variables are every name that occurs, in canonical order, unless an
    explicit table ``variables`` is given.
    """
    src = latex_to_text(text) if ("\\" in text or "_" in text or "{" in text) else text
    parser = _LaurentParser(src)
    sparse = parser.parse()
    if variables is None:
        variables = tuple(sorted(parser.names, key=variable_sort_key))
    else:
        variables = tuple(variables)
        missing = parser.names - set(variables)
        if missing:
            raise ParseError(f"unknown variables {sorted(missing)}", src, 0)
    pos = {v: i for i, v in enumerate(variables)}
    terms = {}
    for m, c in sparse.items():
        e = [0] * len(variables)
        for v, x in m:
            e[pos[v]] = x
        terms[tuple(e)] = c
    return LaurentPolynomial(variables, terms)


def equal_up_to_relabel(f, g):
    """True iff a group-preserving renaming of ``g``'s variables gives ``f``.

    Groups are the letter prefixes (``x1`` and ``x2`` may swap, ``x1`` and
    ``y1`` may not).  Candidate renamings are pruned by per-variable
    exponent statistics before terms are compared.
    """
    fv, gv = f.used_variables(), g.used_variables()
    if len(f) != len(g) or len(fv) != len(gv):
        return False
    f = f.reorder(fv)
    g = g.reorder(gv)
    groups = {}
    for i, v in enumerate(fv):
        groups.setdefault(group_of(v), [[], []])[0].append(i)
    for j, v in enumerate(gv):
        if group_of(v) not in groups:
            return False
        groups[group_of(v)][1].append(j)
    if any(len(a) != len(b) for a, b in groups.values()):
        return False

    def stats(p, i):
        return sorted(e[i] for e in p._terms)

    fstats = [stats(f, i) for i in range(len(fv))]
    gstats = [stats(g, j) for j in range(len(gv))]
    options = []
    for fi, gj in groups.values():
        perms = []
        for perm in itertools.permutations(gj):
            if all(fstats[i] == gstats[j] for i, j in zip(fi, perm)):
                perms.append(list(zip(fi, perm)))
        if not perms:
            return False
        options.append(perms)
    fterms = f._terms
    for combo in itertools.product(*options):
        mapping = [0] * len(fv)  # f position -> g position
        for pairs in combo:
            for i, j in pairs:
                mapping[i] = j
        if all(fterms.get(tuple(e[mapping[i]] for i in range(len(fv)))) == c
               for e, c in g._terms.items()):
            return True
    return False
