#!/usr/bin/env python3
"""Generate minimum-phase Daubechies scaling filters, orders L = 1..10.

Classic spectral-factorization construction, done in 60-digit arithmetic:
  P(y)   = sum_{k<L} C(L-1+k,k) y^k        (Daubechies polynomial)
  |m0|^2 = ((1+cos w)/2)^L P((1-cos w)/2)
Each root y_r of P maps to a quadratic z^2 - (2-4y_r) z + 1 = 0; keeping the
root with |z| < 1 yields the extremal ("minimum") phase factor. The filter is
normalized so sum h_k = sqrt(2).

Writes a C++ table to stdout. The checked-in table in
src/core/daubechies_table.cpp was produced by this script; the library's
verify_filter_identities() revalidates it at runtime, so regeneration is only
needed if more orders are wanted.
"""

import sys
from mpmath import mp, mpf, mpc, binomial, sqrt, polyroots, fabs

mp.dps = 60

MAX_ORDER = 10


def daubechies(L):
    if L == 1:
        r = 1 / sqrt(2)
        return [r, r]
    # P(y), coefficients highest degree first for polyroots
    pcoef = [binomial(L - 1 + k, k) for k in range(L)]
    roots = polyroots(list(reversed(pcoef)), maxsteps=200, extraprec=200)
    zroots = []
    for y in roots:
        # y = (2 - z - 1/z)/4  =>  z^2 - (2 - 4y) z + 1 = 0
        b = 2 - 4 * y
        disc = sqrt(b * b - 4)
        for z in ((b + disc) / 2, (b - disc) / 2):
            if fabs(z) < 1:
                zroots.append(z)
                break
    assert len(zroots) == L - 1
    # h(z) = c (1+z)^L prod (z - z_i), c fixed by h(1) = sqrt(2)
    deg = 2 * L - 1
    coef = [mpc(1)]
    for _ in range(L):
        nxt = [mpc(0)] * (len(coef) + 1)
        for i, c in enumerate(coef):
            nxt[i] += c
            nxt[i + 1] += c
        coef = nxt
    for z0 in zroots:
        nxt = [mpc(0)] * (len(coef) + 1)
        for i, c in enumerate(coef):
            nxt[i] += -z0 * c
            nxt[i + 1] += c
        coef = nxt
    assert len(coef) == deg + 1
    s = sum(coef)
    coef = [c * sqrt(2) / s for c in coef]
    h = [c.real for c in coef]
    # extremal-phase convention: energy front-loaded (h_0 the larger end)
    head = sum(x * x for x in h[:L])
    tail = sum(x * x for x in h[L:])
    if head < tail:
        h.reverse()
    return h


def check(L, h):
    tol = mpf(10) ** (-40)
    assert fabs(sum(h) - sqrt(2)) < tol, L
    for m in range(1, L):
        assert fabs(sum(h[k] * h[k + 2 * m] for k in range(len(h) - 2 * m))) < tol, L
    assert fabs(sum(x * x for x in h) - 1) < tol, L
    g = [(-1) ** k * h[2 * L - 1 - k] for k in range(2 * L)]
    for m in range(L):
        assert fabs(sum(mpf(k) ** m * g[k] for k in range(2 * L))) < mpf(10) ** (-35), (L, m)


def emit(filters):
    out = sys.stdout
    out.write("// Minimum-phase Daubechies scaling filters, orders 1..%d.\n" % MAX_ORDER)
    out.write("// Generated by scripts/gen_daubechies.py (60-digit spectral\n")
    out.write("// factorization, rounded to nearest double). Do not edit by hand.\n\n")
    out.write('#include "wavelet.hpp"\n\n')
    out.write("namespace dyadic {\n\n")
    for L, h in filters.items():
        out.write("static const double kDb%d[%d] = {\n" % (L, 2 * L))
        for x in h:
            out.write("    %s,\n" % repr(float(x)))
        out.write("};\n")
    out.write("\nconst double* daubechies_table(int order) {\n")
    out.write("    switch (order) {\n")
    for L in filters:
        out.write("    case %d: return kDb%d;\n" % (L, L))
    out.write("    default: return nullptr;\n    }\n}\n\n}  // namespace dyadic\n")


def main():
    filters = {}
    for L in range(1, MAX_ORDER + 1):
        h = daubechies(L)
        check(L, h)
        filters[L] = h
    # sanity against the classic closed forms
    assert fabs(filters[2][0] - (1 + sqrt(3)) / (4 * sqrt(2))) < mpf(10) ** (-40)
    emit(filters)


if __name__ == "__main__":
    main()
