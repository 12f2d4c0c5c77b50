#!/usr/bin/env python3
# Copyright 2026 The thinspec Authors
# SPDX-License-Identifier: Apache-2.0
"""Regenerates tests/fixtures/disk_goldens.txt.

Independent of the C++ library: Bessel zeros come from mpmath, and the
second-order coefficient of the coated unit disk is computed twice, once in
closed form and once by Chebyshev collocation of the radial corrector
problem on [0, 1] at two resolutions.

Usage: python3 tools/oracles/disk_goldens.py > tests/fixtures/disk_goldens.txt
"""
import sys

import mpmath as mp
import numpy as np

mp.mp.dps = 40


def cheb(n):
    x = np.cos(np.pi * np.arange(n + 1) / n)
    c = np.hstack([2.0, np.ones(n - 1), 2.0]) * (-1.0) ** np.arange(n + 1)
    dx = x[:, None] - x[None, :]
    d = np.outer(c, 1.0 / c) / (dx + np.eye(n + 1))
    d -= np.diag(d.sum(axis=1))
    return d, x


def clenshaw_curtis(n):
    theta = np.pi * np.arange(n + 1) / n
    w = np.zeros(n + 1)
    v = np.ones(n - 1)
    if n % 2 == 0:
        w[0] = w[n] = 1.0 / (n * n - 1)
        for k in range(1, n // 2):
            v -= 2.0 * np.cos(2 * k * theta[1:-1]) / (4 * k * k - 1)
        v -= np.cos(n * theta[1:-1]) / (n * n - 1)
    else:
        w[0] = w[n] = 1.0 / (n * n)
        for k in range(1, (n - 1) // 2 + 1):
            v -= 2.0 * np.cos(2 * k * theta[1:-1]) / (4 * k * k - 1)
    w[1:-1] = 2.0 * v / n
    return w


def radial_lambda2(n_nodes, j, j1):
    """Collocation on [0, 1] with the regular-singular row 2v'' + lambda0 v at r = 0."""
    d, x = cheb(n_nodes)
    r = 0.5 * (x + 1.0)
    d = 2.0 * d
    d2 = d @ d
    lam0 = j * j
    c = 1.0 / (np.sqrt(np.pi) * abs(j1))
    v0 = c * np.array([float(mp.besselj(0, j * ri)) for ri in r])
    flux0 = j / np.sqrt(np.pi)
    lam1 = 2.0 * np.pi * flux0 ** 2
    w = 0.5 * clenshaw_curtis(n_nodes)
    n = n_nodes + 1
    op = np.empty((n, n))
    eye = np.eye(n)
    for i in range(n):
        if r[i] < 1e-14:
            op[i] = 2.0 * d2[i] + lam0 * eye[i]
        else:
            op[i] = d2[i] + d[i] / r[i] + lam0 * eye[i]
    big = np.zeros((n + 1, n + 1))
    big[:n, :n] = op
    big[:n, n] = v0
    big[n, :n] = w * r * v0
    b = np.zeros(n + 1)
    b[:n] = -lam1 * v0
    # r = 1 is node 0 in the Chebyshev ordering
    big[0, :] = 0.0
    big[0, 0] = 1.0
    b[0] = -flux0
    sol = np.linalg.solve(big, b)
    v1 = sol[:n]
    flux1 = -(d @ v1)[0]
    kappa = 1.0
    return 2.0 * np.pi * (0.5 * kappa * flux0 ** 2 + flux0 * flux1)


def main():
    j0 = mp.besseljzero(0, 1)
    j1 = mp.besseljzero(1, 1)
    j1_at_j0 = mp.besselj(1, j0)
    lam0 = j0 ** 2
    lam1 = 2 * lam0
    lam2_closed = 3 * lam0
    a = radial_lambda2(48, float(j0), float(j1_at_j0))
    b = radial_lambda2(64, float(j0), float(j1_at_j0))
    if abs(a - b) > 1e-8 or abs(b - float(lam2_closed)) > 1e-8:
        sys.exit(f"collocation oracle disagrees: {a} {b} {lam2_closed}")
    y0 = mp.findroot(lambda x: mp.bessely(0, x), 0.9)
    print("# unit disk goldens, 15 significant digits")
    print(f"j01 {mp.nstr(j0, 16)}")
    print(f"j11 {mp.nstr(j1, 16)}")
    print(f"y01 {mp.nstr(y0, 16)}")
    print(f"lambda0 {mp.nstr(lam0, 16)}")
    print(f"lambda1 {mp.nstr(lam1, 16)}")
    print(f"lambda2 {mp.nstr(lam2_closed, 16)}")
    print(f"lambda2_collocation_48 {a:.15e}")
    print(f"lambda2_collocation_64 {b:.15e}")


if __name__ == "__main__":
    main()
