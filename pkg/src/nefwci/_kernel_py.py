"""Pure-Python twin of the compiled ``_kernel`` extension.

Same signature and same residues; used when the extension is not built or
when ``NEFWCI_PURE_PYTHON`` is set.
"""

import numpy as np


def mul(keys_a, res_a, keys_b, res_b, primes, off_key, width, nvars, lo=None, hi=None):
    ps = [int(p) for p in primes]
    nres = len(ps)
    mask = (1 << width) - 1
    offset = 1 << (width - 1)
    shifts = [width * v for v in range(nvars)]
    ka_list = [int(k) - int(off_key) for k in keys_a]
    kb_list = [int(k) for k in keys_b]
    ra = res_a.tolist()
    rb = res_b.tolist()
    window = None
    if lo is not None:
        window = list(zip(shifts, [int(x) for x in lo], [int(x) for x in hi]))

    acc = {}
    for ka, rx in zip(ka_list, ra):
        for kb, ry in zip(kb_list, rb):
            key = ka + kb
            if window is not None and any(
                not (l <= ((key >> s) & mask) - offset <= h) for s, l, h in window
            ):
                continue
            cur = acc.get(key)
            if cur is None:
                acc[key] = [(x * y) % p for x, y, p in zip(rx, ry, ps)]
            else:
                for r in range(nres):
                    cur[r] = (cur[r] + rx[r] * ry[r]) % ps[r]

    keys = np.fromiter(acc.keys(), dtype=np.uint64, count=len(acc))
    res = np.array(list(acc.values()), dtype=np.uint64).reshape(len(acc), nres)
    return keys, res
