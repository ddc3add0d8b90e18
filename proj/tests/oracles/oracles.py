"""Independent reference values for the unit tests.

Run with `python3 tests/oracles/oracles.py`; the printed numbers are frozen into the
C++ tests. Nothing here shares code with the library.
"""
import cmath
import math

import mpmath as mp
import numpy as np
from scipy.optimize import minimize_scalar
from scipy.spatial import Voronoi, cKDTree

mp.mp.dps = 30


def ft_1d(fun, a, b, w):
    re = mp.quad(lambda x: fun(x) * mp.cos(2 * mp.pi * w * x), [a, (a + b) / 2, b])
    im = mp.quad(lambda x: -fun(x) * mp.sin(2 * mp.pi * w * x), [a, (a + b) / 2, b])
    return complex(re), complex(im)


def basis_values():
    out = {}
    # pixel(4) factor i=1 covers [-0.5, 0]; height 1/sqrt(h), h = 0.5
    h = 0.5
    re, im = ft_1d(lambda x: 1 / mp.sqrt(h), -0.5, 0.0, 0.37)
    out["pixel4_i1_w0.37"] = (re.real, im.real)
    # trig(4) factor i=0 is k=-2: e^{-2 i pi x}/sqrt 2
    re = mp.quad(lambda x: mp.cos(-2 * mp.pi * x - 2 * mp.pi * 0.9 * x) / mp.sqrt(2), [-1, 0, 1])
    im = mp.quad(lambda x: mp.sin(-2 * mp.pi * x - 2 * mp.pi * 0.9 * x) / mp.sqrt(2), [-1, 0, 1])
    out["trig4_i0_w0.9"] = (float(re), float(im))
    return out


def separable_trig_ft(a, b, wx, wy):
    fx = lambda x: mp.sin(a * mp.pi * (x + 1))
    fy = lambda y: mp.cos(b * mp.pi * (y + 1))
    xr, xi = ft_1d(fx, -1, 1, wx)
    yr, yi = ft_1d(fy, -1, 1, wy)
    v = complex(xr.real, xi.real) * complex(yr.real, yi.real)
    return v


def polar_delta(K, r, theta):
    """Exact l2 density of the outer wedge between two radial lines at angle theta.

    The distance to the nearest sample peaks at a Voronoi vertex or where a Voronoi edge
    meets the circle of radius K, so both candidate sets are checked.
    """
    rings = int(round(K / r))
    pts = {(0.0, 0.0)}
    for line in range(-2, 4):
        ang = line * theta
        for m in range(1, rings + 1):
            pts.add((m * r * math.cos(ang), m * r * math.sin(ang)))
    P = np.array(sorted(pts))
    tree = cKDTree(P)
    vor = Voronoi(P)
    best = 0.0
    for v in vor.vertices:
        rho = math.hypot(v[0], v[1])
        phi = math.atan2(v[1], v[0])
        if rho <= K and -1e-15 <= phi <= theta + 1e-15:
            best = max(best, tree.query(v)[0])
    def on_circle(phi):
        return -tree.query((K * math.cos(phi), K * math.sin(phi)))[0]
    grid = np.linspace(0.0, theta, 2001)
    vals = [on_circle(p) for p in grid]
    i = int(np.argmin(vals))
    lo, hi = grid[max(i - 1, 0)], grid[min(i + 1, len(grid) - 1)]
    res = minimize_scalar(on_circle, bounds=(lo, hi), method="bounded", options={"xatol": 1e-14})
    best = max(best, -res.fun, -vals[i])
    return best


def polar_angle_oracle(K, r, D):
    lo, hi = 1e-6, 1.0
    for _ in range(50):
        mid = 0.5 * (lo + hi)
        if polar_delta(K, r, mid) < D:
            lo = mid
        else:
            hi = mid
    return lo


def spiral_lines(K, r, D):
    k = int(round(K / r))
    S = lambda t: r * t / (2 * math.pi) * cmath.exp(1j * t)
    N = 3
    while abs(S(2 * math.pi * k) - S(2 * math.pi * k - math.pi / N)) >= D - r / 2:
        N += 1
    return N


def residual_trig1(K):
    lam = mp.quad(lambda w: 2 * mp.sinc(2 * mp.pi * w) ** 2, [-K, -1, 0, 1, K])
    return float(lam)


def condition_oracle():
    omega = np.array([-1.7, -0.9, -0.2, 0.4, 1.1, 1.8])
    mu = np.array([0.6, 0.75, 0.65, 0.65, 0.7, 0.55])
    ks = np.array([-2, -1, 0, 1])
    G = np.sqrt(2) * np.sinc(2 * omega[:, None] - ks[None, :]) * np.sqrt(mu)[:, None]
    s = np.linalg.svd(G, compute_uv=False)
    return s[0] / s[-1]


def projection_error_pixel(a, M):
    """||f - P f|| for f = sin(a pi (x+1)) on pixel(M), d = 1."""
    f = lambda x: mp.sin(a * mp.pi * (x + 1))
    h = mp.mpf(2) / M
    norm2 = mp.quad(lambda x: f(x) ** 2, mp.linspace(-1, 1, M + 1))
    c2 = 0
    for i in range(M):
        lo = -1 + i * h
        c2 += mp.quad(f, [lo, lo + h]) ** 2 / h
    return float(mp.sqrt(norm2 - c2))


def clustered_pair_mc(n=40_000_000, seed=3):
    """l1 Voronoi measures of two close points inside [-1, 1]^2 by Monte Carlo."""
    rng = np.random.default_rng(seed)
    p = np.array([0.2, 0.1])
    q = np.array([0.3, 0.25])
    hits = 0
    done = 0
    while done < n:
        m = min(4_000_000, n - done)
        x = rng.uniform(-1, 1, size=(m, 2))
        dp = np.abs(x - p).sum(axis=1)
        dq = np.abs(x - q).sum(axis=1)
        hits += int(np.count_nonzero(dp <= dq))
        done += m
    return 4.0 * hits / n


if __name__ == "__main__":
    print("basis", basis_values())
    print("sep_trig(2.5,1.5) at (0.3,-0.7)", separable_trig_ft(2.5, 1.5, 0.3, -0.7))
    print("sep_trig(2.5,1.5) at (0,0)", separable_trig_ft(2.5, 1.5, 0.0, 0.0))
    print("gauss5", np.polynomial.legendre.leggauss(5))
    print("exp(2 pi sqrt2/16)", mp.exp(2 * mp.pi * mp.sqrt(2) / 16))
    print("polar angle (8,0.5,0.5)", polar_angle_oracle(8, 0.5, 0.5))
    print("polar angle (32,0.25,0.25)", polar_angle_oracle(32, 0.25, 0.25))
    print("spiral lines (4,1,0.75)", spiral_lines(4, 1, 0.75))
    print("residual trig(1) d=1 K=2: lambda", residual_trig1(2))
    print("residual trig(1) d=1 K=8: lambda", residual_trig1(8))
    print("condition", condition_oracle())
    print("pixel proj error a=2.5 M=4", projection_error_pixel(2.5, 4))
    print("clustered pair l1 measure of p", clustered_pair_mc())
