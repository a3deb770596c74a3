#!/usr/bin/env python3
"""Generate reference tables of critical-line zero ordinates.

Independent of the C++ library: batched double-precision Euler-Maclaurin for
the Hardy Z function in numpy, zeros bracketed between Gram points, counts
checked against mpmath.nzeros, and spot values checked against
mpmath.zetazero.

Usage: make_reference_zeros.py OUT_DIR [COUNT]
"""
import math
import sys

import mpmath
import numpy as np

mpmath.mp.dps = 25

BERN = np.array([float(mpmath.bernoulli(2 * k) / mpmath.factorial(2 * k)) for k in range(1, 61)])


def theta(t):
    t = np.asarray(t, dtype=float)
    return (t / 2 * np.log(t / (2 * np.pi)) - t / 2 - np.pi / 8 + 1 / (48 * t)
            + 7 / (5760 * t**3) + 31 / (80640 * t**5))


def hardy_z(ts, batch=48):
    """Z(t) for an array of ordinates t >= 10."""
    ts = np.atleast_1d(np.asarray(ts, dtype=float))
    out = np.empty_like(ts)
    order = np.argsort(ts)
    for start in range(0, len(ts), batch):
        idx = order[start:start + batch]
        t = ts[idx]
        n_cut = int(0.25 * t.max()) + 40
        logn = np.log(np.arange(1, n_cut, dtype=float))
        total = (np.exp(-0.5 * logn)[None, :] * np.exp(-1j * np.outer(t, logn))).sum(axis=1)
        s = 0.5 + 1j * t
        big = float(n_cut)
        big_pow = np.exp(-s * math.log(big))
        total += big_pow * big / (s - 1) + 0.5 * big_pow
        # rising product s(s+1)...(s+2k-2) times N^(-s-2k+1), kept as one factor
        # so neither piece overflows
        scaled = s * big_pow / big
        for k, b in enumerate(BERN, start=1):
            term = b * scaled
            total += term
            if np.max(np.abs(term)) < 1e-18:
                break
            scaled = scaled * (s + 2 * k - 1) * (s + 2 * k) / (big * big)
        out[idx] = (np.exp(1j * theta(t)) * total).real
    return out


def gram_points(js):
    js = np.asarray(js, dtype=float)
    g = np.array([2 * math.pi * (j + 1.125) / float(mpmath.lambertw((j + 1.125) / math.e).real) for j in js])
    for _ in range(60):
        step = (theta(g) - js * math.pi) / (0.5 * np.log(g / (2 * math.pi)))
        g = g - step
        if np.max(np.abs(step) / g) < 1e-14:
            break
    return g


def illinois(a, b, fa, fb, tol=1e-11):
    """Vectorised Illinois iteration on brackets [a, b] with fa*fb < 0."""
    a, b, fa, fb = (np.array(v, dtype=float) for v in (a, b, fa, fb))
    side = np.zeros_like(a)
    for _ in range(100):
        active = np.abs(b - a) > tol * np.maximum(1.0, b)
        if not active.any():
            break
        c = (a * fb - b * fa) / (fb - fa)
        fc = np.zeros_like(c)
        fc[active] = hardy_z(c[active])
        right = active & (fc * fb > 0)
        left = active & ~right
        fa = np.where(right & (side == -1), fa / 2, fa)
        b = np.where(right, c, b)
        fb = np.where(right, fc, fb)
        fb = np.where(left & (side == 1), fb / 2, fb)
        a = np.where(left, c, a)
        fa = np.where(left, fc, fa)
        side = np.where(right, -1, np.where(left, 1, side))
    return (a * fb - b * fa) / (fb - fa)


def zeros_upto(count):
    js = np.arange(-1, count + 60)
    g = gram_points(js)
    zg = hardy_z(g)
    good = ((-1.0) ** js) * zg > 0
    lo, hi, flo, fhi = [], [], [], []
    start = 0
    while start < len(js) - 1:
        end = start + 1
        while end < len(js) - 1 and not good[end]:
            end += 1
        need = end - start
        depth = 0
        while True:
            pts = np.concatenate([np.linspace(g[i], g[i + 1], 2**depth + 1)[:-1] for i in range(start, end)] + [[g[end]]])
            vals = np.concatenate([[zg[start]], hardy_z(pts[1:-1]) if len(pts) > 2 else [], [zg[end]]])
            ch = np.nonzero(vals[:-1] * vals[1:] < 0)[0]
            if len(ch) >= need or depth > 8:
                break
            depth += 1
        if len(ch) != need:
            raise SystemExit(f"Gram block {js[start]}..{js[end]}: found {len(ch)} expected {need}")
        lo += list(pts[ch]); hi += list(pts[ch + 1]); flo += list(vals[ch]); fhi += list(vals[ch + 1])
        start = end
    print(f"brackets: {len(lo)}", file=sys.stderr, flush=True)
    roots = []
    chunk = 4096
    for i in range(0, len(lo), chunk):
        roots += list(illinois(lo[i:i + chunk], hi[i:i + chunk], flo[i:i + chunk], fhi[i:i + chunk]))
        print(f"refined {min(i + chunk, len(lo))}", file=sys.stderr, flush=True)
    return np.array(roots)


def main():
    out_dir = sys.argv[1]
    count = int(sys.argv[2]) if len(sys.argv) > 2 else 100000

    with open(f"{out_dir}/zeros_100.txt", "w") as fh:
        fh.write("# First 100 critical-line zero ordinates (12 decimals).\n")
        fh.write("# Generated by tests/oracles/make_reference_zeros.py via mpmath.zetazero.\n")
        for n in range(1, 101):
            y = mpmath.zetazero(n).imag
            fh.write(f"{n} {mpmath.nstr(y, len(str(int(y))) + 12, min_fixed=-1, max_fixed=100)}\n")

    zeros = zeros_upto(count)
    for k in range(2000, len(zeros), 2000):
        mid = 0.5 * (zeros[k - 1] + zeros[k])
        if int(mpmath.nzeros(mid)) != k:
            raise SystemExit(f"count mismatch at {mid}")
    zeros = zeros[:count]
    checks = list(range(1, 201)) + [1000, 5000, 20000, 50000, 74999, count]
    worst = 0.0
    for n in checks:
        if n > count:
            continue
        ref = float(mpmath.zetazero(n).imag)
        worst = max(worst, abs(ref - zeros[n - 1]))
    print(f"max abs deviation vs mpmath.zetazero on spot checks: {worst:.3e}", file=sys.stderr)
    if worst > 1e-8:
        raise SystemExit("spot check failed")

    with open(f"{out_dir}/zeros_100k.txt", "w") as fh:
        fh.write(f"# First {count} critical-line zero ordinates (9 decimals).\n")
        fh.write("# Generated by tests/oracles/make_reference_zeros.py: numpy Euler-Maclaurin Z,\n")
        fh.write("# Gram-block bracketing, mpmath.nzeros count anchors, mpmath.zetazero spot checks.\n")
        for n, y in enumerate(zeros, start=1):
            fh.write(f"{n} {y:.9f}\n")


if __name__ == "__main__":
    main()
