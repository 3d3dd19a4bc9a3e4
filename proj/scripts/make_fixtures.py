#!/usr/bin/env python3
"""Generate the shipped cusp-form fixtures from eta-product expansions.

Every form here is a dimension-one space, so the eta product is the newform.
Coefficients are exact integers (sparse Euler/Jacobi series, int64 numpy).
"""
import json
import os
import sys

import numpy as np


def euler(N, step):
    """prod (1 - q^{step n}) truncated below q^N, as sparse (exponent, coeff)."""
    out = []
    k = 0
    while True:
        found = False
        for m in (k, -k) if k else (0,):
            e = step * m * (3 * m - 1) // 2
            if e < N:
                out.append((e, -1 if m % 2 else 1))
                found = True
        if not found and k > 0:
            break
        k += 1
    return out


def jacobi(N, step):
    """prod (1 - q^{step n})^3 = sum (-1)^m (2m+1) q^{step m(m+1)/2}."""
    out = []
    m = 0
    while step * m * (m + 1) // 2 < N:
        out.append((step * m * (m + 1) // 2, (-1) ** m * (2 * m + 1)))
        m += 1
    return out


def times_sparse(dense, sparse):
    """Exact product; int64 when a float64 shadow shows enough headroom."""
    N = len(dense)
    shadow = np.zeros(N)
    fd = np.abs(dense.astype(np.float64))
    for e, c in sparse:
        if e < N:
            shadow[e:] += abs(c) * fd[: N - e]
    dtype = np.int64 if shadow.max() < 2.0**62 else object
    src = dense.astype(dtype)
    out = np.zeros(N, dtype=dtype)
    if dtype is object:
        out[:] = 0
    for e, c in sparse:
        if e < N:
            out[e:] += c * src[: N - e]
    return out


def eta_product(N, exps, shift):
    """q^shift prod_delta prod_n (1 - q^{delta n})^{r_delta}; returns lambda(1..N)."""
    d = np.zeros(N + 1, dtype=np.int64)
    d[0] = 1
    for delta, r in exps:
        d = times_dense_sparse_power(d, delta, r)
    out = np.zeros(N, dtype=d.dtype)
    out[shift - 1:] = d[: N - shift + 1]
    return out


def times_dense_sparse_power(d, step, r):
    N = len(d)
    while r >= 3:
        d = times_sparse(d, jacobi(N, step))
        r -= 3
    for _ in range(r):
        d = times_sparse(d, euler(N, step))
    return d


FORMS = [
    dict(file="delta.json", label="1.12.a.a", weight=12, level=1, char=(1, 0), exps=[(1, 24)],
         N=20000, source="Ramanujan Delta = eta(z)^24; LMFDB newform 1.12.a.a"),
    dict(file="5.4.a.a.json", label="5.4.a.a", weight=4, level=5, char=(5, 0), exps=[(1, 4), (5, 4)],
         N=130000, source="(eta(z) eta(5z))^4; LMFDB newform 5.4.a.a"),
    dict(file="2.8.a.a.json", label="2.8.a.a", weight=8, level=2, char=(2, 0), exps=[(1, 8), (2, 8)],
         N=20000, source="(eta(z) eta(2z))^8; LMFDB newform 2.8.a.a"),
    dict(file="4.5.b.a.json", label="4.5.b.a", weight=5, level=4, char=(4, 1),
         exps=[(1, 4), (2, 2), (4, 4)], N=20000,
         source="eta(z)^4 eta(2z)^2 eta(4z)^4, nebentypus chi_{-4}; LMFDB newform 4.5.b.a"),
]


def main(outdir):
    os.makedirs(outdir, exist_ok=True)
    for f in FORMS:
        shift = sum(d * r for d, r in f["exps"]) // 24
        lam = eta_product(f["N"], f["exps"], shift)
        doc = {
            "label": f["label"],
            "weight": f["weight"],
            "level": f["level"],
            "character": {"modulus": f["char"][0], "index": f["char"][1]},
            "an": [int(x) for x in lam],
            "source": f["source"],
        }
        path = os.path.join(outdir, f["file"])
        with open(path, "w") as fh:
            json.dump(doc, fh, separators=(",", ":"))
        print(path, f["N"], list(lam[:10]))


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "data/fixtures")
