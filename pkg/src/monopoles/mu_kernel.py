"""The quadratic spinor map on C^2 (x) C^n and its numerical certificates.

A spinor pair ``Psi = (alpha, beta)`` lives in C^n (+) C^n ~ C^2 (x) C^n.
For endomorphisms of that space, written as 2x2 blocks of n x n matrices,
two orthogonal projections are available: onto ``sl(2) (x) sl(n)`` (remove
the C^2 trace, then every block's C^n trace) and onto ``sl(2) (x) C id``
(remove the C^2 trace, then replace every block by its normalized trace
times the identity).  The interpolating quadratic map is

    mu(tau, Psi, Phi) = P(Psi Phi^*) + tau * Q(Psi Phi^*),   tau in [0, 1].

Conventions, fixed package-wide:

* Hermitian inner products are conjugate-linear in the first slot,
  ``<v, w> = sum conj(v_i) w_i`` (``numpy.vdot``).
* ``(v w^*) xi = v <w, xi>``, i.e. the matrix ``np.outer(v, w.conj())``.
* Norms of block endomorphisms are Frobenius norms.

For ``n > 1`` the quadratic map is uniformly proper: ``|mu(tau, Psi, Psi)|
>= c |Psi|^2`` with a positive constant, estimated here by seeded multistart
projected gradient descent over the unit sphere.  The bilinear map has no
zero divisors once ``n >= 2`` or ``tau != 0``; the corresponding margin over
pairs of unit spinors is estimated the same way.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .optim import OptimizationReport, multistart_minimize, sphere_blocks_projector

__all__ = [
    "SpinorPair",
    "BlockEndo",
    "outer",
    "project_P",
    "project_Q",
    "mu",
    "quartic_form",
    "mu_norm_batch",
    "random_sphere_search",
    "properness_constant_estimate",
    "zero_divisor_margin",
    "DEFAULT_POSITIVITY_FLOOR",
]

DEFAULT_POSITIVITY_FLOOR = 1e-3


def _as_complex_vector(v, what: str) -> np.ndarray:
    arr = np.asarray(v, dtype=complex)
    if arr.ndim != 1:
        raise ValueError(f"{what} must be a 1-d complex vector")
    return arr


@dataclass(frozen=True)
class SpinorPair:
    """An element Psi = (alpha, beta) of C^n (+) C^n."""

    alpha: np.ndarray
    beta: np.ndarray

    def __init__(self, alpha, beta):
        a = _as_complex_vector(alpha, "alpha")
        b = _as_complex_vector(beta, "beta")
        if a.shape != b.shape:
            raise ValueError("alpha and beta must have equal length")
        if a.size < 1:
            raise ValueError("spinor components must have length n >= 1")
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "beta", b)

    @property
    def n(self) -> int:
        return self.alpha.size

    @property
    def vector(self) -> np.ndarray:
        """The stacked vector (alpha, beta) in C^{2n}."""
        return np.concatenate([self.alpha, self.beta])

    @staticmethod
    def from_vector(v) -> "SpinorPair":
        v = _as_complex_vector(v, "spinor vector")
        if v.size % 2 != 0:
            raise ValueError("spinor vector length must be even")
        n = v.size // 2
        return SpinorPair(v[:n], v[n:])

    def norm(self) -> float:
        return float(np.linalg.norm(self.vector))


@dataclass(frozen=True)
class BlockEndo:
    """An endomorphism of C^2 (x) C^n stored as its full 2n x 2n matrix."""

    mat: np.ndarray
    n: int

    def __init__(self, mat, n: int | None = None):
        m = np.asarray(mat, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] % 2 != 0:
            raise ValueError("block endomorphism must be a square 2n x 2n matrix")
        inferred = m.shape[0] // 2
        if n is not None and n != inferred:
            raise ValueError("declared block size does not match the matrix")
        object.__setattr__(self, "mat", m)
        object.__setattr__(self, "n", inferred)

    def block(self, i: int, j: int) -> np.ndarray:
        n = self.n
        return self.mat[i * n : (i + 1) * n, j * n : (j + 1) * n]

    @property
    def blocks(self):
        return ((self.block(0, 0), self.block(0, 1)), (self.block(1, 0), self.block(1, 1)))

    def norm(self) -> float:
        return float(np.linalg.norm(self.mat))

    def __add__(self, other: "BlockEndo") -> "BlockEndo":
        return BlockEndo(self.mat + other.mat)

    def __sub__(self, other: "BlockEndo") -> "BlockEndo":
        return BlockEndo(self.mat - other.mat)

    def __rmul__(self, scalar) -> "BlockEndo":
        return BlockEndo(scalar * self.mat)

    def apply(self, psi: SpinorPair) -> SpinorPair:
        return SpinorPair.from_vector(self.mat @ psi.vector)


def outer(psi: SpinorPair, phi: SpinorPair) -> BlockEndo:
    """The rank-<=1 endomorphism Xi -> Psi <Phi, Xi> of C^2 (x) C^n."""
    if psi.n != phi.n:
        raise ValueError("spinor pairs must share the same n")
    return BlockEndo(np.outer(psi.vector, phi.vector.conj()))


def _batch_project_P(mats: np.ndarray, n: int) -> np.ndarray:
    """Batched projection onto sl(2) (x) sl(n); mats has shape (..., 2n, 2n)."""
    out = mats.copy()
    half = 0.5 * (out[..., :n, :n] + out[..., n:, n:])
    out[..., :n, :n] -= half
    out[..., n:, n:] -= half
    eye = np.eye(n)
    for (ra, rb) in ((slice(0, n), slice(0, n)), (slice(0, n), slice(n, 2 * n)),
                     (slice(n, 2 * n), slice(0, n)), (slice(n, 2 * n), slice(n, 2 * n))):
        blk = out[..., ra, rb]
        tr = np.trace(blk, axis1=-2, axis2=-1) / n
        out[..., ra, rb] = blk - tr[..., None, None] * eye
    return out


def _batch_project_Q(mats: np.ndarray, n: int) -> np.ndarray:
    """Batched projection onto sl(2) (x) C id."""
    out = np.zeros_like(mats)
    half_tr = 0.5 * (
        np.trace(mats[..., :n, :n], axis1=-2, axis2=-1)
        + np.trace(mats[..., n:, n:], axis1=-2, axis2=-1)
    )
    eye = np.eye(n)
    for (ra, rb), diag in (
        ((slice(0, n), slice(0, n)), True),
        ((slice(0, n), slice(n, 2 * n)), False),
        ((slice(n, 2 * n), slice(0, n)), False),
        ((slice(n, 2 * n), slice(n, 2 * n)), True),
    ):
        tr = np.trace(mats[..., ra, rb], axis1=-2, axis2=-1)
        if diag:
            tr = tr - half_tr
        out[..., ra, rb] = (tr / n)[..., None, None] * eye
    return out


def project_P(m: BlockEndo) -> BlockEndo:
    """Orthogonal projection onto sl(2) (x) sl(n).

    First the C^2 trace is removed (half the sum of the diagonal blocks is
    subtracted from each diagonal block), then every block is made
    traceless.  The result satisfies ``M11 + M22 = 0`` with all four blocks
    traceless; the map is idempotent and orthogonal for the Frobenius
    pairing.
    """
    return BlockEndo(_batch_project_P(m.mat[None, :, :], m.n)[0])


def project_Q(m: BlockEndo) -> BlockEndo:
    """Orthogonal projection onto sl(2) (x) C id.

    Each block of the result is a multiple of the identity, the diagonal
    blocks opposite; composing with :func:`project_P` in either order gives
    zero.
    """
    return BlockEndo(_batch_project_Q(m.mat[None, :, :], m.n)[0])


def mu(tau: float, psi: SpinorPair, phi: SpinorPair | None = None) -> BlockEndo:
    """The interpolated quadratic map P(Psi Phi^*) + tau Q(Psi Phi^*).

    ``tau`` outside [0, 1] is accepted with a warning; the interpolation is
    only meaningful on that interval.
    """
    if not 0.0 <= tau <= 1.0:
        warnings.warn(f"tau={tau} lies outside [0, 1]", stacklevel=2)
    if phi is None:
        phi = psi
    m = outer(psi, phi)
    p = _batch_project_P(m.mat[None, :, :], m.n)[0]
    q = _batch_project_Q(m.mat[None, :, :], m.n)[0]
    return BlockEndo(p + tau * q)


def quartic_form(tau: float, psi: SpinorPair) -> float:
    """Re <mu(tau, Psi, Psi) Psi, Psi>.

    Because P and Q are orthogonal projections this equals
    ``||P(Psi Psi^*)||^2 + tau ||Q(Psi Psi^*)||^2``; the identity is
    property-tested rather than assumed here.
    """
    v = psi.vector
    return float(np.real(np.vdot(v, mu(tau, psi).mat @ v)))


def _scalar_invariants(alphas: np.ndarray, betas: np.ndarray):
    na2 = np.einsum("ij,ij->i", alphas.conj(), alphas).real
    nb2 = np.einsum("ij,ij->i", betas.conj(), betas).real
    ab = np.einsum("ij,ij->i", alphas.conj(), betas)  # <alpha, beta>
    return na2, nb2, np.abs(ab) ** 2


def mu_norm_batch(tau: float, alphas, betas) -> np.ndarray:
    """Frobenius norms |mu(tau, Psi, Psi)| for rows of spinor components.

    Evaluates through closed-form scalar invariants instead of building
    matrices, so a million samples are cheap:

        ||P||^2 = (|a|^4 + |b|^4 - 2|<a,b>|^2 - (|a|^2-|b|^2)^2/n)/2
                  + 2(|a|^2 |b|^2 - |<a,b>|^2 / n)
        ||Q||^2 = (|a|^2 - |b|^2)^2/(2n) + 2|<a,b>|^2/n
        |mu|^2  = ||P||^2 + tau^2 ||Q||^2

    The agreement of this fast path with the matrix route is part of the
    property suite, which keeps the two evaluation routes independent.
    """
    alphas = np.asarray(alphas, dtype=complex)
    betas = np.asarray(betas, dtype=complex)
    if alphas.shape != betas.shape or alphas.ndim != 2:
        raise ValueError("alphas and betas must be matching (m, n) arrays")
    n = alphas.shape[1]
    na2, nb2, ab2 = _scalar_invariants(alphas, betas)
    if n == 1:
        # the sl(1) factor is zero, so only the trace part survives; the
        # general expression would compute the same 0 with cancellation noise
        p_sq = np.zeros_like(na2)
    else:
        p_sq = 0.5 * (na2**2 + nb2**2 - 2 * ab2 - (na2 - nb2) ** 2 / n) + 2 * (
            na2 * nb2 - ab2 / n
        )
    q_sq = (na2 - nb2) ** 2 / (2 * n) + 2 * ab2 / n
    total = p_sq + tau * tau * q_sq
    return np.sqrt(np.maximum(total, 0.0))


def random_sphere_search(
    n: int,
    tau: float,
    samples: int,
    seed: int = 0,
    chunk: int = 200_000,
) -> float:
    """Minimum of |mu(tau, Psi, Psi)| over seeded uniform unit spinors.

    A cross-check companion to the gradient-descent estimate; it evaluates
    through :func:`mu_norm_batch` (the scalar route) rather than the matrix
    projections the optimizer uses.
    """
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(entropy=seed)))
    best = np.inf
    remaining = samples
    while remaining > 0:
        m = min(chunk, remaining)
        z = rng.standard_normal((m, 4 * n))
        v = z[:, : 2 * n] + 1j * z[:, 2 * n :]
        v /= np.linalg.norm(v, axis=1, keepdims=True)
        vals = mu_norm_batch(tau, v[:, :n], v[:, n:])
        best = min(best, float(vals.min()))
        remaining -= m
    return best


def _pack(psi_vec: np.ndarray) -> np.ndarray:
    return np.concatenate([psi_vec.real, psi_vec.imag])


def _unpack(x: np.ndarray) -> np.ndarray:
    half = x.size // 2
    return x[:half] + 1j * x[half:]


def _properness_value_grad(n: int, tau: float):
    """Objective ||mu(tau, psi, psi)||^2 on R^{4n} with its exact gradient.

    With M = psi psi^* and R = P(M) + tau^2 Q(M), the value is <R, M> and
    the Euclidean gradient is 4 R psi (R is Hermitian).
    """

    def value_and_grad(x: np.ndarray):
        v = _unpack(x)
        m = np.outer(v, v.conj())[None, :, :]
        r = (_batch_project_P(m, n) + tau * tau * _batch_project_Q(m, n))[0]
        value = float(np.real(np.vdot(r, m[0])))
        grad_c = 4.0 * (r @ v)
        return value, np.concatenate([grad_c.real, grad_c.imag])

    return value_and_grad


def properness_constant_estimate(
    n: int,
    tau: float,
    starts: int = 64,
    seed: int = 0,
    tol: float = 1e-8,
    max_iter: int = 2000,
    positivity_floor: float = DEFAULT_POSITIVITY_FLOOR,
) -> OptimizationReport:
    """Estimate the properness constant min_{|Psi|=1} |mu(tau, Psi, Psi)|.

    Multistart projected gradient descent on the unit sphere of C^{2n}; the
    reported estimate is the square root of the best objective value found,
    hence always an upper bound for the true constant.  For ``n > 1`` the
    report's ``success`` flag records whether the estimate clears the
    positivity floor.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 0.0 <= tau <= 1.0:
        warnings.warn(f"tau={tau} lies outside [0, 1]", stacklevel=2)
    project, tangent = sphere_blocks_projector([4 * n])
    x_best, values_sq, flags = multistart_minimize(
        _properness_value_grad(n, tau),
        lambda rng: rng.standard_normal(4 * n),
        starts=starts,
        seed=seed,
        gradient_tolerance=tol,
        max_iter=max_iter,
        project=project,
        tangent=tangent,
    )
    values = tuple(float(np.sqrt(max(v, 0.0))) for v in values_sq)
    estimate = min(values)
    return OptimizationReport(
        estimate=estimate,
        argmin=SpinorPair.from_vector(_unpack(x_best)),
        starts=len(values),
        seed=seed,
        iterations_per_start=max_iter,
        gradient_tolerance=tol,
        values_per_start=values,
        converged_per_start=flags,
        positivity_floor=positivity_floor,
        success=(estimate > positivity_floor) if n > 1 else None,
    )


def _zero_divisor_value_grad(n: int, tau: float):
    """Objective ||mu(tau, psi, phi)||^2 over pairs, with exact gradient.

    With K = psi phi^* and R = P(K) + tau^2 Q(K): value <R, K>, gradients
    2 R phi in psi and 2 R^H psi in phi.
    """

    def value_and_grad(x: np.ndarray):
        half = x.size // 2
        v = _unpack(x[:half])
        w = _unpack(x[half:])
        k = np.outer(v, w.conj())[None, :, :]
        r = (_batch_project_P(k, n) + tau * tau * _batch_project_Q(k, n))[0]
        value = float(np.real(np.vdot(r, k[0])))
        grad_v = 2.0 * (r @ w)
        grad_w = 2.0 * (r.conj().T @ v)
        return value, np.concatenate(
            [grad_v.real, grad_v.imag, grad_w.real, grad_w.imag]
        )

    return value_and_grad


def zero_divisor_margin(
    n: int,
    tau: float,
    starts: int = 64,
    seed: int = 0,
    tol: float = 1e-8,
    max_iter: int = 2000,
    positivity_floor: float = DEFAULT_POSITIVITY_FLOOR,
) -> OptimizationReport:
    """Estimate min |mu(tau, Psi, Phi)| over pairs of unit spinors.

    Requires ``n >= 2 or tau != 0``: in the excluded case ``n = 1, tau = 0``
    the map is identically zero and the zero-divisor property fails, so the
    input is rejected by name.  A positive margin certifies (numerically)
    that the bilinear map has no zero divisors.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if n < 2 and tau == 0:
        raise ValueError(
            "zero-divisor margin needs n >= 2 or tau != 0; "
            "for n = 1, tau = 0 the map is identically zero"
        )
    if not 0.0 <= tau <= 1.0:
        warnings.warn(f"tau={tau} lies outside [0, 1]", stacklevel=2)
    project, tangent = sphere_blocks_projector([4 * n, 4 * n])
    x_best, values_sq, flags = multistart_minimize(
        _zero_divisor_value_grad(n, tau),
        lambda rng: rng.standard_normal(8 * n),
        starts=starts,
        seed=seed,
        gradient_tolerance=tol,
        max_iter=max_iter,
        project=project,
        tangent=tangent,
    )
    values = tuple(float(np.sqrt(max(v, 0.0))) for v in values_sq)
    estimate = min(values)
    half = x_best.size // 2
    argmin = (
        SpinorPair.from_vector(_unpack(x_best[:half])),
        SpinorPair.from_vector(_unpack(x_best[half:])),
    )
    return OptimizationReport(
        estimate=estimate,
        argmin=argmin,
        starts=len(values),
        seed=seed,
        iterations_per_start=max_iter,
        gradient_tolerance=tol,
        values_per_start=values,
        converged_per_start=flags,
        positivity_floor=positivity_floor,
        success=estimate > positivity_floor,
    )
