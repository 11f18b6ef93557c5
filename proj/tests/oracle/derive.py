"""Regenerates the frozen reference values used by the C++ tests.

Every value is computed here with mpmath (50 digits) or brute-force numpy,
independently of the library code paths.
"""
import mpmath as mp
import numpy as np

mp.mp.dps = 50


def gamma_ratio(k, s):
    return mp.gammainc(k, 0, s, regularized=True)


def psi(d, eps):
    upper = lambda s: mp.log(mp.gammainc(d, s, mp.inf, regularized=True))
    return mp.findroot(lambda s: upper(s) - mp.log(eps), (mp.mpf(0), mp.mpf(1000)), solver="bisect")


def prior_art(d, eps):
    f = lambda p: (p / (p - 2)) * mp.log(1 - eps) + (2 * d / (p - 2)) * mp.log(p / 2)
    grid = [2 + mp.mpf(10) ** e for e in np.linspace(-6, 4, 4001)]
    best = max(grid, key=f)
    p = mp.findroot(lambda q: mp.diff(f, q), best)
    return mp.exp(f(p))


def square_phi(side, n_basis=40, n_gauss=160):
    x, w = np.polynomial.legendre.leggauss(n_gauss)
    x = x * side / 2
    w = w * side / 2
    X, W = np.meshgrid(x, x, indexing="ij")
    wt = np.outer(w, w) * np.exp(-np.pi * (X**2 + W**2))
    z = (X + 1j * W).ravel()
    basis = np.empty((n_basis, z.size), dtype=complex)
    basis[0] = 1.0
    for k in range(1, n_basis):
        basis[k] = basis[k - 1] * z * np.sqrt(np.pi / k)
    m = (basis * wt.ravel()) @ basis.conj().T
    return np.linalg.eigvalsh(m)[-1]


def two_mode_mu(t, half=3.5, n=6000):
    # u = e^{-pi|z|^2} |1 + sqrt(pi) z|^2 / 2 for F = (e_0 + e_1)/sqrt 2
    h = 2 * half / n
    c = -half + h * (np.arange(n) + 0.5)
    area = 0.0
    for i in range(0, n, 500):
        X, W = np.meshgrid(c[i : i + 500], c, indexing="ij")
        u = np.exp(-np.pi * (X**2 + W**2)) * ((1 + np.sqrt(np.pi) * X) ** 2 + np.pi * W**2) / 2
        area += np.count_nonzero(u > t) * h * h
    return area


def show(name, v):
    print(f"{name:40s} {mp.nstr(mp.mpf(v), 17)}")


show("sqrt(pi)", mp.sqrt(mp.pi))
show("0.5^0.25", mp.mpf(0.5) ** 0.25)
show("2^0.25", mp.mpf(2) ** 0.25)
show("gamma_ratio(2,pi)", gamma_ratio(2, mp.pi))
show("psi(2,0.5)", psi(2, mp.mpf(0.5)))
show("min_volume(2,0.5)", psi(2, mp.mpf(0.5)) ** 2 / 2)
show("psi(3,0.5)", psi(3, mp.mpf(0.5)))
show("psi(2,0.1)", psi(2, mp.mpf(0.1)))
show("0.5(1-e^-2pi)", (1 - mp.exp(-2 * mp.pi)) / 2)
show("1-e^-pi/2", 1 - mp.exp(-mp.pi / 2))
show("1-e^-pi", 1 - mp.exp(-mp.pi))
show("1-e^{-0.01pi}", 1 - mp.exp(-mp.pi / 100))
show("coherent z0=1 N=40 dropped tail", gamma_ratio(40, mp.pi))
for d, eps in [(1, 0.01), (1, 0.5), (2, 0.5), (2, 0.01), (3, 0.2)]:
    show(f"prior_art({d},{eps})", prior_art(d, mp.mpf(eps)))
for r in (0.5, 1, 2):
    for k in (0, 5, 19):
        show(f"radial r={r} k={k}", gamma_ratio(k + 1, mp.pi * r * r))
show("square area pi phi", square_phi(float(mp.sqrt(mp.pi))))
for t in (0.1, 0.3, 0.5):
    show(f"two-mode mu({t})", two_mode_mu(t))


def union_gauss_integral():
    # int of e^{-pi|z|^2} over Disk((0,0),1) u Disk((1,0.5),0.8), by exact chords
    disks = [(0, 0, 1), (1, mp.mpf("0.5"), mp.mpf("0.8"))]

    def chords(x):
        out = []
        for cx, cw, r in disks:
            if abs(x - cx) < r:
                h = mp.sqrt(r * r - (x - cx) ** 2)
                out.append([cw - h, cw + h])
        out.sort()
        merged = []
        for lo, hi in out:
            if merged and lo <= merged[-1][1]:
                merged[-1][1] = max(merged[-1][1], hi)
            else:
                merged.append([lo, hi])
        return merged

    def inner(x):
        return mp.exp(-mp.pi * x * x) * sum(
            (mp.erf(mp.sqrt(mp.pi) * hi) - mp.erf(mp.sqrt(mp.pi) * lo)) / 2 for lo, hi in chords(x)
        )

    # x of the two circle intersection points
    d = mp.sqrt(1 + mp.mpf("0.25"))
    a = (1 - mp.mpf("0.64") + d * d) / (2 * d)
    h = mp.sqrt(1 - a * a)
    ux, uw = 1 / d, mp.mpf("0.5") / d
    xs = [a * ux - h * uw, a * ux + h * uw]
    cuts = sorted([-1, mp.mpf("0.2"), 1, mp.mpf("1.8")] + xs)
    return mp.quad(inner, cuts)


show("union disks gauss integral", union_gauss_integral())
for d in (2, 3):
    for eps in ("1e-8", "1e-200", "0.999"):
        show(f"psi({d},{eps})", psi(d, mp.mpf(eps)))
