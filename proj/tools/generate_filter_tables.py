#!/usr/bin/env python3
"""Regenerates src/filter_tables.inc.

Daubechies, Symlet and biorthogonal taps are rebuilt at 60 significant digits
by spectral factorization of the Daubechies half-band polynomial. PyWavelets
is used only to pick the same root selection as the mainstream toolbox tables
(Symlets up to order 20, biorthogonal splits) and for the Coiflet taps, which
are not a spectral factorization and are already accurate to 1 ulp there.

Symlets 21..25 are not in PyWavelets; for those the root selection minimizing
the squared deviation of the unwrapped phase from its best linear fit is used.

Runtime is a few minutes (the Symlet 21..25 searches dominate).
"""

import itertools
import pathlib
import sys

import numpy as np
import pywt
from mpmath import binomial, mp, mpc, mpf, polyroots, sqrt

mp.dps = 60


def half_band_y_roots(n):
    if n == 1:
        return []
    coeffs = [binomial(n - 1 + k, k) for k in range(n)][::-1]
    return polyroots(coeffs, maxsteps=500, extraprec=500)


def inside_root(y):
    a = 1 - 2 * y
    d = sqrt(a * a - 1)
    z1, z2 = a + d, a - d
    return z1 if abs(z1) < 1 else z2


def conjugate_groups(values):
    used = [False] * len(values)
    groups = []
    for i, v in enumerate(values):
        if used[i]:
            continue
        used[i] = True
        if abs(mpc(v).imag) < mpf(10) ** -30:
            groups.append([v])
            continue
        j = min((k for k in range(len(values)) if not used[k]),
                key=lambda k: abs(values[k] - mpc(v).conjugate()))
        used[j] = True
        groups.append([v, values[j]])
    return groups


def poly_mul(p, q):
    r = [mpc(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            r[i + j] += a * b
    return r


def normalized(poly):
    h = [mpc(c).real for c in poly]
    s = sum(h)
    return [x * sqrt(2) / s for x in h]


def orthogonal_from_roots(zroots, n):
    poly = [mpc(1)]
    for _ in range(n):
        poly = poly_mul(poly, [mpc(1), mpc(1)])
    for r in zroots:
        poly = poly_mul(poly, [mpc(1), -r])
    return normalized(poly)


def y_factor(y):
    # (2 - z - 1/z)/4 - y, as a polynomial in 1/z with coefficients [-1/4, 1/2 - y, -1/4]
    return [mpc(-0.25), mpc(0.5) - y, mpc(-0.25)]


def symmetric_from_y_roots(yroots, zeros_at_pi):
    poly = [mpc(1)]
    for _ in range(zeros_at_pi):
        poly = poly_mul(poly, [mpc(1), mpc(1)])
    for y in yroots:
        poly = poly_mul(poly, y_factor(y))
    return normalized(poly)


def as_float(taps):
    return np.array([float(x) for x in taps])


def phase_nonlinearity(taps):
    h = as_float(taps)
    w = np.linspace(0, np.pi, 512, endpoint=False)[1:]
    response = np.exp(-1j * np.outer(w, np.arange(len(h)))) @ h
    phase = np.unwrap(np.angle(response))
    design = np.vstack([w, np.ones_like(w)]).T
    fit, *_ = np.linalg.lstsq(design, phase, rcond=None)
    return float(np.sum((phase - design @ fit) ** 2))


def root_choices(n):
    groups = conjugate_groups([inside_root(y) for y in half_band_y_roots(n)])
    for choice in itertools.product([0, 1], repeat=len(groups)):
        roots = []
        for flip, g in zip(choice, groups):
            roots += g if flip == 0 else [1 / z for z in g]
        yield choice, orthogonal_from_roots(roots, n)


def daubechies(n):
    return orthogonal_from_roots([inside_root(y) for y in half_band_y_roots(n)], n)


def symlet(n):
    try:
        reference = np.array(pywt.Wavelet(f"sym{n}").rec_lo)
    except ValueError:
        reference = None
    best = None
    for choice, taps in root_choices(n):
        if reference is not None:
            f = as_float(taps)
            if np.max(np.abs(f - reference)) < 1e-9:
                return taps
            if np.max(np.abs(f[::-1] - reference)) < 1e-9:
                return taps[::-1]
            continue
        if choice and choice[0] == 1:
            continue  # mirror image of an earlier choice
        score = phase_nonlinearity(taps)
        if best is None or score < best[0]:
            best = (score, taps)
    if best is None:
        sys.exit(f"no root selection reproduces sym{n}")
    return best[1]


def strip_zeros(a):
    a = np.array(a)
    nz = np.nonzero(a)[0]
    return a[nz[0]:nz[-1] + 1]


def biorthogonal(rec_order, dec_order):
    ref = pywt.Wavelet(f"bior{rec_order}.{dec_order}")
    dec_ref, rec_ref = strip_zeros(ref.dec_lo), strip_zeros(ref.rec_lo)
    n = (rec_order + dec_order) // 2
    groups = conjugate_groups(half_band_y_roots(n))
    for zeros_dec in range(0, 2 * n + 1):
        for assign in itertools.product([0, 1], repeat=len(groups)):
            dec_y = [y for a, g in zip(assign, groups) if a == 0 for y in g]
            rec_y = [y for a, g in zip(assign, groups) if a == 1 for y in g]
            dec = symmetric_from_y_roots(dec_y, zeros_dec)
            rec = symmetric_from_y_roots(rec_y, 2 * n - zeros_dec)
            if len(dec) != len(dec_ref) or len(rec) != len(rec_ref):
                continue
            if (np.max(np.abs(as_float(dec) - dec_ref)) < 1e-9
                    and np.max(np.abs(as_float(rec) - rec_ref)) < 1e-9):
                return dec, rec
    sys.exit(f"no factorization reproduces bior{rec_order}.{dec_order}")


def literal(x):
    return mp.nstr(x, 25, min_fixed=-1, max_fixed=-1) if not isinstance(x, float) else repr(x)


def emit_array(name, taps):
    body = ",\n    ".join(literal(x) for x in taps)
    return f"inline constexpr double {name}[] = {{\n    {body},\n}};\n"


def main():
    out = pathlib.Path(__file__).resolve().parent.parent / "src" / "filter_tables.inc"
    parts = ["// Generated by tools/generate_filter_tables.py. Do not edit.\n",
             "// Orthogonal entries hold the scaling filter h; h[0] weights the earliest\n",
             "// sample of each analysis window.\n\n",
             "namespace wavekit::detail {\n\n"]
    for n in range(1, 11):
        parts.append(emit_array(f"kDb{n}", daubechies(n)))
    for n in range(2, 26):
        print(f"sym{n}", file=sys.stderr, flush=True)
        parts.append(emit_array(f"kSym{n}", symlet(n)))
    for n in range(1, 6):
        parts.append(emit_array(f"kCoif{n}", [float(x) for x in pywt.Wavelet(f"coif{n}").rec_lo]))
    bior = [(1, 1), (2, 2), (2, 4), (4, 4), (5, 5)]
    for r, d in bior:
        dec, rec = biorthogonal(r, d)
        parts.append(emit_array(f"kBior{r}{d}Dec", dec))
        parts.append(emit_array(f"kBior{r}{d}Rec", rec))

    parts.append("\ninline constexpr std::span<const double> kDaubechies[] = {\n    {},\n")
    parts += [f"    kDb{n},\n" for n in range(1, 11)]
    parts.append("};\n\ninline constexpr std::span<const double> kSymlets[] = {\n    {},\n    {},\n")
    parts += [f"    kSym{n},\n" for n in range(2, 26)]
    parts.append("};\n\ninline constexpr std::span<const double> kCoiflets[] = {\n    {},\n")
    parts += [f"    kCoif{n},\n" for n in range(1, 6)]
    parts.append("};\n\nstruct BiorthogonalTable {\n    int rec_order;\n    int dec_order;\n"
                 "    std::span<const double> dec_lo;\n    std::span<const double> rec_lo;\n};\n\n"
                 "inline constexpr BiorthogonalTable kBiorthogonal[] = {\n")
    parts += [f"    {{{r}, {d}, kBior{r}{d}Dec, kBior{r}{d}Rec}},\n" for r, d in bior]
    parts.append("};\n\n} // namespace wavekit::detail\n")
    out.write_text("".join(parts))


if __name__ == "__main__":
    main()
