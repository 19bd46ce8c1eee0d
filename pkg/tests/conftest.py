"""Shared generators and independent oracles for the test suite.

Oracles here are deliberately coded from scratch (classical dimension
formulas, brute-force lattice enumeration, grid minimization) so the tests
cross-check the package through routes it does not itself use.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import product

import numpy as np
import pytest

from monopoles import BundleData, CohClass2, FourManifold, SpincStructure


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(seed))


def k3_like() -> FourManifold:
    """Signature -16, b2+ = 3 diagonal stand-in (only sig/Betti data matter)."""
    q = [[0] * 22 for _ in range(22)]
    for i in range(3):
        q[i][i] = 1
    for i in range(3, 22):
        q[i][i] = -1
    return FourManifold("K3-like", 0, q)


def s4_like() -> FourManifold:
    return FourManifold("S4-like", 0, [])


def hyperbolic() -> FourManifold:
    return FourManifold("S2xS2-like", 0, [[0, 1], [1, 0]])


def random_manifold(rng, b2_max=6, entry=3, b1_max=0) -> FourManifold:
    """Random nondegenerate symmetric integer form of size 1..b2_max."""
    while True:
        m = int(rng.integers(1, b2_max + 1))
        a = rng.integers(-entry, entry + 1, size=(m, m))
        q = (a + a.T).tolist()
        try:
            return FourManifold(
                "random", int(rng.integers(0, b1_max + 1)), q
            )
        except ValueError:
            continue  # degenerate draw; try again


def random_unimodular(rng, m: int, shears: int = 12) -> np.ndarray:
    """Random integer matrix with determinant +-1 (product of elementary ops)."""
    p = np.eye(m, dtype=int)
    for _ in range(shears):
        i, j = rng.integers(0, m, size=2)
        if i != j:
            p[i] += int(rng.integers(-2, 3)) * p[j]
    perm = rng.permutation(m)
    p = p[perm]
    for i in range(m):
        if rng.integers(0, 2):
            p[i] = -p[i]
    return p


def unimodular_manifold(rng, b2_max=6) -> FourManifold:
    """P^T D P congruence of a +-1 diagonal form: unimodular, random-looking."""
    m = int(rng.integers(1, b2_max + 1))
    d = np.diag(rng.choice([-1, 1], size=m))
    p = random_unimodular(rng, m)
    q = (p.T @ d @ p).tolist()
    return FourManifold("unimodular", 0, q)


def characteristic_class(manifold: FourManifold, rng) -> CohClass2:
    """Solve Q w = diag(Q) mod 2 for a characteristic vector (odd det Q)."""
    m = manifold.b2
    if m == 0:
        return CohClass2(())
    a = np.array(manifold.intersection_form, dtype=int) % 2
    b = np.array([manifold.intersection_form[i][i] for i in range(m)], dtype=int) % 2
    aug = np.concatenate([a, b[:, None]], axis=1) % 2
    row = 0
    pivots = []
    for col in range(m):
        piv = next((r for r in range(row, m) if aug[r, col]), None)
        if piv is None:
            continue
        aug[[row, piv]] = aug[[piv, row]]
        for r in range(m):
            if r != row and aug[r, col]:
                aug[r] = (aug[r] + aug[row]) % 2
        pivots.append(col)
        row += 1
    w = np.zeros(m, dtype=int)
    for r, col in enumerate(pivots):
        w[col] = aug[r, m]
    # lift to a representative with entries in {0, 1} plus an even shift
    shift = 2 * rng.integers(-2, 3, size=m)
    return CohClass2((w + shift).tolist())


# --------------------------------------------------------------------------
# independent oracles
# --------------------------------------------------------------------------

def sw_dimension_oracle(manifold: FourManifold, c1s: CohClass2, c1L: CohClass2) -> Fraction:
    """Classical abelian monopole dimension (<c1(spinc twisted by L)^2> - 2chi - 3sig)/4."""
    q = manifold.intersection_form
    w = [a + 2 * b for a, b in zip(c1s.coeffs, c1L.coeffs)]
    sq = sum(w[i] * q[i][j] * w[j] for i in range(len(w)) for j in range(len(w)))
    return Fraction(sq - 2 * manifold.euler - 3 * manifold.signature, 4)


def instanton_dimension_oracle(k: int, b2plus: int) -> int:
    """Classical charge-k rank-2 projective instanton dimension 8k - 3(1 + b2+)."""
    return 8 * k - 3 * (1 + b2plus)


def brute_force_ball(metric, radius_sq: Fraction) -> list[tuple[int, ...]]:
    """Lattice ball by eigenvalue bounding box + exact Fraction filter."""
    g = [[Fraction(x) for x in row] for row in metric]
    m = len(g)
    if m == 0:
        return [()]
    eigs = np.linalg.eigvalsh(np.array([[float(x) for x in row] for row in g]))
    lam_min = float(eigs.min())
    assert lam_min > 0
    box = int(math.floor(math.sqrt(float(radius_sq) / lam_min) + 1e-9)) + 1
    out = []
    for v in product(range(-box, box + 1), repeat=m):
        q = sum(Fraction(v[i]) * g[i][j] * v[j] for i in range(m) for j in range(m))
        if q <= radius_sq:
            out.append(v)
    out.sort()
    return out


def schur_margin_oracle(n: int, tau: float, lam: complex) -> float:
    """Identity-obstruction margin by scanning the rank-one trace parameter.

    For a rank-<=1 matrix with trace t the smallest Frobenius distance to
    lam*id is sqrt(|a t - lam|^2 + (n-1)|b t + lam|^2) with a=(n-1+tau)/n,
    b=(1-tau)/n, attained on normal representatives; minimize over complex t
    by coarse grid plus local refinement (no closed form used).
    """
    a = (n - 1 + tau) / n
    b = (1 - tau) / n

    def val(t: complex) -> float:
        return abs(a * t - lam) ** 2 + (n - 1) * abs(b * t + lam) ** 2

    span = 4.0 * (1.0 + abs(lam))
    center = 0.0 + 0.0j
    best = val(center)
    for _ in range(40):
        ts = [
            center + span * (x + 1j * y)
            for x in np.linspace(-1, 1, 21)
            for y in np.linspace(-1, 1, 21)
        ]
        vals = [val(t) for t in ts]
        i = int(np.argmin(vals))
        if vals[i] < best:
            best = vals[i]
            center = ts[i]
        span *= 0.45
    return math.sqrt(best)


@pytest.fixture
def rng():
    return make_rng(20260808)
