"""Embedded catalog of Fano weighted complete intersections of dimension 4 and 5.

Each entry carries the weights, degrees, printed nef partitions and the
printed weak Landau-Ginzburg polynomial for every partition, plus erratum
records where the printed polynomial cannot come from its partition.
:func:`verify_entry` recomputes every column; :func:`enumerate_candidates`
searches bounded boxes of specs with the necessary conditions.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field
from importlib import resources
from itertools import combinations_with_replacement
from pathlib import Path

from .core import (
    CISpec,
    analyze,
    divisibility_condition,
    fano_index,
    is_linear_cone,
    is_well_formed_space,
    triple_coprime,
)
from .errors import InconsistentResult, IntegrityError, NefWCIError, PreconditionError, ResourceError
from .laurent import canonical_text, equal_up_to_relabel, parse_laurent
from .lg import (
    DEFAULT_MAX_TERMS,
    exclusion_choices,
    iseries_oracle,
    period_sequence,
    weak_lg,
)
from .nef import (
    NefPartition,
    construct_nice,
    enumerate_all,
    is_nice,
    render_partition,
    render_signature,
    signature,
    unit_count_bound,
    validate_partition,
)

__all__ = [
    "Erratum",
    "CatalogEntry",
    "CheckResult",
    "VerificationReport",
    "load_catalog",
    "get_entry",
    "verify_entry",
    "verify_catalog",
    "enumerate_candidates",
    "reports_to_json",
    "reports_to_table",
]

DEFAULT_CANDIDATE_BUDGET = 5 * 10**6


@dataclass(frozen=True)
class Erratum:
    partition: int
    field: str
    printed: str
    corrected: str
    justification: str


@dataclass(frozen=True)
class CatalogEntry:
    table: int
    row: int
    spec: CISpec
    partitions: tuple[NefPartition, ...]
    lg_strings: tuple[str, ...]
    errata: tuple[Erratum, ...] = ()

    @property
    def key(self):
        return (self.table, self.row)

    def erratum_for(self, k):
        for e in self.errata:
            if e.partition == k and e.field == "lg":
                return e
        return None

    def expected_lg(self, k):
        """The polynomial string the construction must reproduce."""
        e = self.erratum_for(k)
        return e.corrected if e else self.lg_strings[k]


def _data_path():
    return resources.files("nefwci") / "data"


def load_catalog(path=None, checksum_path=None):
    """All catalog entries, after checking the data file against its checksum."""
    base = _data_path()
    path = Path(path) if path else base / "catalog.json"
    checksum_path = Path(checksum_path) if checksum_path else base / "catalog.sha256"
    raw = path.read_bytes()
    expected = checksum_path.read_text().split()[0]
    actual = hashlib.sha256(raw).hexdigest()
    if actual != expected:
        raise IntegrityError(f"catalog checksum mismatch: expected {expected}, got {actual}")
    doc = json.loads(raw)
    out = []
    for e in doc["entries"]:
        spec = CISpec.of(_expand_space(e["space"]), e["degrees"])
        parts = tuple(NefPartition(tuple(tuple(p) for p in parts)) for parts in e["partitions"])
        errata = tuple(Erratum(**x) for x in e.get("errata", ()))
        if len(parts) != len(e["lg"]):
            raise IntegrityError(f"entry {e['table']}.{e['row']}: partitions and polynomials differ in number")
        out.append(CatalogEntry(e["table"], e["row"], spec, parts, tuple(e["lg"]), errata))
    return out


def _expand_space(space):
    from .core import parse_spec

    return parse_spec(space + "/").weights.weights


def get_entry(table, row, catalog=None):
    for e in catalog or load_catalog():
        if e.key == (table, row):
            return e
    raise PreconditionError(f"no catalog entry {table}.{row}")


# -- verification ----------------------------------------------------------


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    witness: object = None

    def __post_init__(self):
        if not self.passed and self.witness is None:
            raise PreconditionError(f"failed check {self.name!r} needs a witness")

    def as_dict(self):
        d = {"name": self.name, "passed": self.passed, "detail": self.detail}
        if self.witness is not None:
            d["witness"] = self.witness
        return d


@dataclass
class VerificationReport:
    table: int
    row: int
    spec: str
    checks: list = field(default_factory=list)
    errata: list = field(default_factory=list)
    periods: dict = field(default_factory=dict)

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c.passed]

    def add(self, name, passed, detail="", witness=None):
        self.checks.append(CheckResult(name, passed, detail, witness))

    def as_dict(self):
        return {
            "table": self.table,
            "row": self.row,
            "spec": self.spec,
            "passed": self.passed,
            "checks": [c.as_dict() for c in self.checks],
            "errata": self.errata,
            "periods": self.periods,
        }


def verify_entry(e, K=6, max_terms=DEFAULT_MAX_TERMS):
    """Recompute every column of ``e``; failures are recorded, not raised."""
    spec = e.spec
    report = VerificationReport(e.table, e.row, str(spec))

    flags = analyze(spec)
    report.add("analysis", flags.favorable, "well formed, divisible, triple coprime, Fano, no linear cone",
               None if flags.favorable else flags.as_dict())
    bound_ok = unit_count_bound(spec)
    report.add("unit_count_bound", bound_ok, f"{spec.unit_count} unit weights >= index {fano_index(spec)}",
               None if bound_ok else {"units": spec.unit_count, "index": fano_index(spec)})
    if spec.codimension <= 2:
        try:
            p = construct_nice(spec)
            ok = is_nice(p, spec) and all(spec.weights[i] == 1 for i in p.s0)
            report.add("construct_nice", ok, render_partition(p), None if ok else render_partition(p))
        except NefWCIError as exc:
            report.add("construct_nice", False, "construction failed", str(exc))

    try:
        found = {signature(p, spec) for p in enumerate_all(spec)}
    except ResourceError as exc:
        found = None
        report.add("enumeration", False, "enumeration budget exceeded", str(exc))

    usable = []
    for k, p in enumerate(e.partitions):
        label = f"partition[{k}] {render_partition(p)}"
        try:
            validate_partition(p, spec)
            if not is_nice(p, spec):
                raise PreconditionError("S_0 has no unit weight")
        except PreconditionError as exc:
            report.add(f"{label} valid", False, "not a nice nef partition", str(exc))
            continue
        report.add(f"{label} valid", True)
        if found is not None:
            sig = signature(p, spec)
            report.add(f"{label} enumerated", sig in found, render_signature(sig),
                       None if sig in found else sorted(render_signature(s) for s in found))
        usable.append((k, p))

        generated = weak_lg(spec, p)
        printed = parse_laurent(e.lg_strings[k])
        erratum = e.erratum_for(k)
        if equal_up_to_relabel(generated, printed):
            report.add(f"{label} polynomial", True, "matches printed form")
            if erratum:
                report.add(f"{label} erratum", False, "erratum recorded but printed form matches",
                           erratum.printed)
        elif erratum and equal_up_to_relabel(generated, parse_laurent(erratum.corrected)):
            report.add(f"{label} polynomial", True, "matches corrected form only")
            report.errata.append({
                "partition": k,
                "printed": erratum.printed,
                "corrected": erratum.corrected,
                "justification": erratum.justification,
            })
        else:
            report.add(f"{label} polynomial", False, "generated polynomial differs",
                       {"generated": canonical_text(generated), "printed": e.lg_strings[k]})

    if K is None or K < 0:
        return report
    oracle = iseries_oracle(spec, K).values
    report.periods["oracle"] = list(oracle)
    index = fano_index(spec)
    per_partition = {}
    for k, p in usable:
        seqs = {}
        for excl in exclusion_choices(spec, p):
            try:
                seqs[excl] = period_sequence(weak_lg(spec, p, excl), K, max_terms).values
            except InconsistentResult as exc:
                report.add(f"partition[{k}] strategies {excl}", False, "strategies disagree", str(exc))
            except ResourceError as exc:
                report.add(f"partition[{k}] budget {excl}", False, "term budget exceeded", str(exc))
        if not seqs:
            continue
        report.add(f"partition[{k}] strategies", True, f"{len(seqs)} exclusion choice(s)")
        distinct = set(seqs.values())
        report.add(f"partition[{k}] exclusion independence", len(distinct) == 1, "",
                   None if len(distinct) == 1 else {str(x): list(v) for x, v in seqs.items()})
        first = next(iter(seqs.values()))
        per_partition[k] = first
        report.periods[f"partition[{k}]"] = list(first)
        report.add(f"partition[{k}] oracle", first == oracle, "",
                   None if first == oracle else {"periods": list(first), "oracle": list(oracle)})
        zeros = [j for j in range(K + 1) if j % index and first[j] != 0]
        report.add(f"partition[{k}] vanishing", not zeros, f"index {index}",
                   {"nonzero_at": zeros} if zeros else None)
    if len(per_partition) > 1:
        distinct = set(per_partition.values())
        report.add("partition independence", len(distinct) == 1, "",
                   None if len(distinct) == 1 else {str(k): list(v) for k, v in per_partition.items()})
    return report


def verify_catalog(K=6, entries=None, max_terms=DEFAULT_MAX_TERMS):
    entries = entries if entries is not None else load_catalog()
    return sorted((verify_entry(e, K, max_terms) for e in entries), key=lambda r: (r.table, r.row))


def reports_to_json(reports):
    return json.dumps([r.as_dict() for r in reports], indent=2)


def reports_to_table(reports):
    lines = [f"{'entry':>6}  {'spec':<28} {'checks':>7}  {'result':<6} notes"]
    for r in reports:
        notes = []
        if r.errata:
            notes.append(f"{len(r.errata)} erratum" + ("s" if len(r.errata) > 1 else ""))
        notes += [c.name for c in r.failures()]
        lines.append(
            f"{r.table:>2}.{r.row:<3}  {r.spec:<28} {len(r.checks):>7}  "
            f"{'PASS' if r.passed else 'FAIL':<6} {'; '.join(notes)}"
        )
    passed = sum(r.passed for r in reports)
    lines.append(f"{passed}/{len(reports)} entries pass")
    return "\n".join(lines)


# -- candidates ------------------------------------------------------------


def enumerate_candidates(dim, max_codim, weight_bound, degree_bound, budget=DEFAULT_CANDIDATE_BUDGET):
    """Specs in a bounded box passing the necessary conditions.

    Weight multisets of size ``dim + c + 1`` (entries ``<= weight_bound``)
    and degree multisets of size ``c`` (entries ``<= degree_bound``) for
    ``c = 0..max_codim``, kept when well formed, Fano, divisible, triple
    coprime and not a linear cone.  Raises :class:`ResourceError` when the
    box holds more than ``budget`` pairs.
    """
    if min(dim, weight_bound, degree_bound) < 1 or max_codim < 0:
        raise PreconditionError("bounds must be positive")
    size = sum(
        math.comb(weight_bound + dim + c, dim + c + 1) * math.comb(degree_bound + c - 1, c)
        for c in range(max_codim + 1)
    )
    if size > budget:
        raise ResourceError(f"candidate box has {size} weight/degree pairs, over the budget of {budget}")
    out = set()
    for c in range(max_codim + 1):
        for weights in combinations_with_replacement(range(1, weight_bound + 1), dim + c + 1):
            if not is_well_formed_space(weights) or not triple_coprime(weights):
                continue
            wset, total = set(weights), sum(weights)
            for degrees in combinations_with_replacement(range(1, degree_bound + 1), c):
                if sum(degrees) >= total or wset.intersection(degrees):
                    continue
                spec = CISpec.of(weights, degrees)
                if divisibility_condition(spec) and not is_linear_cone(spec):
                    out.add(spec)
    return sorted(out, key=lambda s: (s.codimension, s.weights.weights, s.degrees))
