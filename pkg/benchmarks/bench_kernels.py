"""Compare the compiled and pure-Python multiplication kernels.

Runs each available backend on the same packed products (whole and
windowed) and on a full period computation, checks the results agree, and
prints the timings.

    python benchmarks/bench_kernels.py --repeat 3
"""

import argparse
import json
import time

from nefwci.core import parse_spec
from nefwci.kernel import PackedContext, available_backends
from nefwci.lg import partition_from, period_sequence, weak_lg


CASES = [
    # (label, spec, partition, power)
    ("row 1.20, f^3", "P(1^6)/3", [[0, 1, 2], [3, 4, 5]], 3),
    ("row 1.1, f^2", "P(1^3,2^2,3^2)/6,6", [[0], [1, 2, 3, 4], [5, 6]], 2),
    ("row 2.11, f^2", "P(1^9)/2,3,3", [[0], [1, 2], [3, 4, 5], [6, 7, 8]], 2),
]


def _time(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        start = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - start)
    return best, out


def bench_products(repeat, backends):
    rows = []
    for label, text, parts, power in CASES:
        spec = parse_spec(text)
        f = weak_lg(spec, partition_from(spec, parts))
        terms = dict(f.terms)
        reach = (power + 1) * max(f.max_abs_exponent(), 1)
        bound = f.l1_norm() ** (power + 1)
        results = {}
        for backend in backends:
            ctx = PackedContext(len(f.variables), reach, bound, backend)
            base = ctx.from_terms(terms)
            left = base
            for _ in range(power - 1):
                left = left.mul(base)
            t, prod = _time(lambda: left.mul(base), repeat)
            results[backend] = (t, prod.to_terms(), len(left), len(base))
        ref = next(iter(results.values()))[1]
        for backend, (t, terms_out, na, nb) in results.items():
            if terms_out != ref:
                raise SystemExit(f"{label}: backend {backend} disagrees")
            rows.append({"case": label, "backend": backend, "seconds": t,
                         "operands": [na, nb], "terms": len(terms_out)})
    return rows


def bench_periods(repeat, backends, K):
    rows = []
    spec = parse_spec("P(1^3,2^2,3^2)/6,6")
    f = weak_lg(spec, partition_from(spec, [[0], [1, 2, 3, 4], [5, 6]]))
    ref = None
    for backend in backends:
        t, seq = _time(lambda: period_sequence(f, K, backend=backend), repeat)
        if ref is None:
            ref = seq
        elif seq != ref:
            raise SystemExit(f"period sequences disagree for backend {backend}")
        rows.append({"case": f"row 1.1 periods K={K}", "backend": backend, "seconds": t,
                     "periods": list(seq)})
    return rows


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3, help="best of this many runs")
    parser.add_argument("--k", type=int, default=4, help="period length for the period benchmark")
    parser.add_argument("--json", action="store_true", help="print machine-readable results")
    args = parser.parse_args(argv)

    backends = available_backends()
    rows = bench_products(args.repeat, backends) + bench_periods(args.repeat, backends, args.k)
    if args.json:
        print(json.dumps(rows, indent=2))
        return
    print(f"backends: {', '.join(backends)}")
    width = max(len(r["case"]) for r in rows)
    for r in rows:
        extra = f"{r['terms']} terms" if "terms" in r else ""
        print(f"{r['case']:<{width}}  {r['backend']:<9} {r['seconds'] * 1000:10.2f} ms  {extra}")
    by_case = {}
    for r in rows:
        by_case.setdefault(r["case"], {})[r["backend"]] = r["seconds"]
    for case, t in by_case.items():
        if "compiled" in t and "python" in t:
            print(f"speedup {case}: {t['python'] / t['compiled']:.1f}x")


if __name__ == "__main__":
    main()
