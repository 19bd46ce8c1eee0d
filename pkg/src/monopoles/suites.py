"""Seeded property suites behind ``mu check`` and ``kaehler check``.

Each check draws its own Philox stream (spawned from the suite seed and the
check's registry index), evaluates a mathematical identity or inequality
over a sample grid, and reports the worst deviation together with the first
counterexample found, if any.  Heavier identities are evaluated through
vectorized batch routes that are deliberately different from the single-pair
reference implementations they are checking.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .kaehler import (
    PointwiseField,
    brace,
    clifford_sd,
    impossibility_margin,
    impossibility_margin_closed_form,
    mu_kaehler,
    split_equation_rhs,
    verify_curvature_split,
)
from .mu_kernel import (
    SpinorPair,
    _batch_project_P,
    _batch_project_Q,
    mu,
    mu_norm_batch,
    outer,
    project_P,
    properness_constant_estimate,
    quartic_form,
)

__all__ = [
    "CheckResult",
    "SuiteReport",
    "mu_suite",
    "kaehler_suite",
    "decoupling_bound_batch",
    "zero_divisor_identity_batch",
]


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    samples: int
    worst: float
    tolerance: float
    counterexample: dict | None = None


@dataclass(frozen=True)
class SuiteReport:
    suite: str
    seed: int
    checks: tuple[CheckResult, ...]

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> tuple[CheckResult, ...]:
        return tuple(c for c in self.checks if not c.passed)


def _rng(seed: int, index: int) -> np.random.Generator:
    return np.random.Generator(
        np.random.Philox(np.random.SeedSequence(entropy=seed, spawn_key=(index,)))
    )


def _complex_rows(rng, m: int, n: int) -> np.ndarray:
    return rng.standard_normal((m, n)) + 1j * rng.standard_normal((m, n))


def _random_su(rng, k: int, batch: int | None = None) -> np.ndarray:
    shape = (k, k) if batch is None else (batch, k, k)
    z = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    q, r = np.linalg.qr(z)
    diag = np.diagonal(r, axis1=-2, axis2=-1)
    q = q * (diag.conj() / np.abs(diag))[..., None, :]
    det = np.linalg.det(q)
    return q * (det ** (-1.0 / k))[..., None, None]


def _traceless(m: np.ndarray) -> np.ndarray:
    n = m.shape[0]
    return m - np.trace(m) / n * np.eye(n)


# ---------------------------------------------------------------------------
# batch evaluation routes (independent of the single-pair reference code)
# ---------------------------------------------------------------------------

def zero_divisor_identity_batch(alphas: np.ndarray, betas: np.ndarray):
    """(lhs, rhs_identity, rhs_inequality) for the traceless outer product.

    lhs = ||(alpha beta^*)_0||^2 from explicit matrices;
    rhs_identity = |alpha|^2 |beta|^2 - |tr(alpha beta^*)|^2 / n;
    rhs_inequality = (1 - 1/n) |alpha|^2 |beta|^2.
    """
    n = alphas.shape[1]
    mats = alphas[:, :, None] * betas.conj()[:, None, :]
    tr = np.einsum("mii->m", mats)
    mats0 = mats - (tr / n)[:, None, None] * np.eye(n)
    lhs = np.einsum("mij,mij->m", mats0.conj(), mats0).real
    na2 = np.einsum("mi,mi->m", alphas.conj(), alphas).real
    nb2 = np.einsum("mi,mi->m", betas.conj(), betas).real
    rhs_identity = na2 * nb2 - np.abs(tr) ** 2 / n
    rhs_inequality = (1.0 - 1.0 / n) * na2 * nb2
    return lhs, rhs_identity, rhs_inequality


def decoupling_bound_batch(alphas: np.ndarray, betas: np.ndarray, taus: np.ndarray):
    """Batched (lhs, rhs) of the decoupling inequality via the matrix route."""
    n = alphas.shape[1]
    outers = betas[:, :, None] * alphas.conj()[:, None, :]
    tr = np.einsum("mii->m", outers)
    braced = outers - (((1.0 - taus) / n) * tr)[:, None, None] * np.eye(n)
    va = np.einsum("mij,mj->mi", braced, alphas)
    lhs = np.einsum("mi,mi->m", betas.conj(), va).real
    na2 = np.einsum("mi,mi->m", alphas.conj(), alphas).real
    nb2 = np.einsum("mi,mi->m", betas.conj(), betas).real
    rhs = (1.0 - (1.0 - taus) / n) * na2 * nb2
    return lhs, rhs


# ---------------------------------------------------------------------------
# mu suite
# ---------------------------------------------------------------------------

_MU_GRID_NS = (1, 2, 3, 4, 5, 6)
_MU_GRID_TAUS = (0.0, 0.25, 0.5, 1.0)


def _spinor_counterexample(psi: SpinorPair, tau: float, lhs, rhs) -> dict:
    return {
        "tau": tau,
        "alpha": psi.alpha.tolist(),
        "beta": psi.beta.tolist(),
        "lhs": lhs,
        "rhs": rhs,
    }


def _batch_outer_self(v: np.ndarray) -> np.ndarray:
    return v[:, :, None] * v.conj()[:, None, :]


def _batch_frob_sq(mats: np.ndarray) -> np.ndarray:
    return np.einsum("mij,mij->m", mats.conj(), mats).real


def _batch_mu_mats(tau: float, v: np.ndarray, w: np.ndarray | None, n: int):
    """(mu matrices, P part, Q part) for stacked spinor vectors."""
    k = v[:, :, None] * (v if w is None else w).conj()[:, None, :]
    p = _batch_project_P(k, n)
    q = _batch_project_Q(k, n)
    return p + tau * q, p, q


def _check_quartic_identity(seed, index, samples, tol=1e-10):
    """quartic_form == ||P||^2 + tau ||Q||^2, batched with API spot checks."""
    worst, bad, total = 0.0, None, 0
    rng = _rng(seed, index)
    for n in _MU_GRID_NS:
        for tau in _MU_GRID_TAUS:
            v = _complex_rows(rng, samples, 2 * n)
            mu_mats, p, q = _batch_mu_mats(tau, v, None, n)
            lhs = np.einsum("mi,mij,mj->m", v.conj(), mu_mats, v).real
            rhs = _batch_frob_sq(p) + tau * _batch_frob_sq(q)
            rel = np.abs(lhs - rhs) / np.maximum(np.abs(rhs), 1e-30)
            for i in range(min(8, samples)):  # tie the scalar API to the batch route
                psi = SpinorPair(v[i, :n], v[i, n:])
                rel_i = abs(quartic_form(tau, psi) - lhs[i]) / max(abs(lhs[i]), 1e-30)
                rel[i] = max(rel[i], rel_i)
            dev = float(rel.max())
            total += samples
            if dev > worst:
                worst = dev
                if dev > tol and bad is None:
                    i = int(rel.argmax())
                    bad = _spinor_counterexample(
                        SpinorPair(v[i, :n], v[i, n:]), tau, float(lhs[i]), float(rhs[i])
                    )
    return CheckResult("quartic_equals_P2_plus_tau_Q2", worst <= tol, total, worst, tol, bad)


def _check_block_formula(seed, index, samples, tol=1e-12):
    """Projection route against the explicit four-block matrix, built separately."""
    worst, bad, total = 0.0, None, 0
    rng = _rng(seed, index)
    for n in _MU_GRID_NS:
        v = _complex_rows(rng, samples, 2 * n)
        a, b = v[:, :n], v[:, n:]
        aa = _batch_outer_self(a)
        bb = _batch_outer_self(b)
        ab = a[:, :, None] * b.conj()[:, None, :]
        ba = b[:, :, None] * a.conj()[:, None, :]
        eye = np.eye(n)

        def tl(m):
            return m - (np.einsum("mii->m", m) / n)[:, None, None] * eye

        ref = np.empty((samples, 2 * n, 2 * n), dtype=complex)
        ref[:, :n, :n] = 0.5 * tl(aa - bb)
        ref[:, :n, n:] = tl(ab)
        ref[:, n:, :n] = tl(ba)
        ref[:, n:, n:] = 0.5 * tl(bb - aa)
        got = _batch_project_P(_batch_outer_self(v), n)
        dev_all = np.abs(got - ref).max(axis=(1, 2))
        for i in range(min(8, samples)):
            psi = SpinorPair(a[i], b[i])
            api = project_P(outer(psi, psi)).mat
            dev_all[i] = max(dev_all[i], float(np.abs(api - ref[i]).max()))
        dev = float(dev_all.max())
        total += samples
        if dev > worst:
            worst = dev
            if dev > tol and bad is None:
                i = int(dev_all.argmax())
                bad = _spinor_counterexample(SpinorPair(a[i], b[i]), 0.0, dev, 0.0)
    return CheckResult("projection_matches_block_formula", worst <= tol, total, worst, tol, bad)


def _check_orthogonality(seed, index, samples, tol=1e-10):
    worst, bad, total = 0.0, None, 0
    rng = _rng(seed, index)
    for n in _MU_GRID_NS:
        m = rng.standard_normal((samples, 2 * n, 2 * n)) + 1j * rng.standard_normal(
            (samples, 2 * n, 2 * n)
        )
        p = _batch_project_P(m, n)
        q = _batch_project_Q(m, n)
        scale = np.maximum(_batch_frob_sq(m), 1e-30)
        devs = np.stack(
            [
                np.abs(np.einsum("mij,mij->m", p.conj(), q)),
                np.abs(np.einsum("mij,mij->m", p.conj(), m) - _batch_frob_sq(p)),
                np.abs(np.einsum("mij,mij->m", q.conj(), m) - _batch_frob_sq(q)),
            ]
        ).max(axis=0) / scale
        dev = float(devs.max())
        total += samples
        if dev > worst:
            worst = dev
            if dev > tol and bad is None:
                i = int(devs.argmax())
                bad = {"n": n, "matrix": m[i].tolist()}
    return CheckResult("projections_orthogonal", worst <= tol, total, worst, tol, bad)


def _check_hermiticity(seed, index, samples, tol=1e-12):
    worst, bad, total = 0.0, None, 0
    rng = _rng(seed, index)
    for n in _MU_GRID_NS:
        for tau in _MU_GRID_TAUS:
            v = _complex_rows(rng, samples, 2 * n)
            mu_mats, p, _ = _batch_mu_mats(tau, v, None, n)
            dev_all = np.abs(mu_mats - mu_mats.conj().transpose(0, 2, 1)).max(axis=(1, 2))
            if tau == 0.0:
                for (ra, rb) in (
                    (slice(0, n), slice(0, n)),
                    (slice(0, n), slice(n, 2 * n)),
                    (slice(n, 2 * n), slice(0, n)),
                    (slice(n, 2 * n), slice(n, 2 * n)),
                ):
                    tr = np.abs(np.einsum("mii->m", mu_mats[:, ra, rb]))
                    dev_all = np.maximum(dev_all, tr)
            norms = np.einsum("mi,mi->m", v.conj(), v).real
            dev_all = dev_all / np.maximum(norms, 1e-30)
            dev = float(dev_all.max())
            total += samples
            if dev > worst:
                worst = dev
                if dev > tol and bad is None:
                    i = int(dev_all.argmax())
                    bad = _spinor_counterexample(SpinorPair(v[i, :n], v[i, n:]), tau, dev, 0.0)
    return CheckResult("mu_hermitian_and_traceless_at_tau0", worst <= tol, total, worst, tol, bad)


def _check_norm_monotonicity(seed, index, samples):
    """||mu(tau)|| >= ||mu(0)||, through the matrix route."""
    worst, bad, total = 0.0, None, 0
    rng = _rng(seed, index)
    tol = 1e-12
    for n in _MU_GRID_NS:
        for tau in _MU_GRID_TAUS:
            v = _complex_rows(rng, samples, 2 * n)
            _, p, q = _batch_mu_mats(tau, v, None, n)
            norm_tau = np.sqrt(_batch_frob_sq(p) + tau * tau * _batch_frob_sq(q))
            norm_0 = np.sqrt(_batch_frob_sq(p))
            gap = (norm_0 - norm_tau) / np.maximum(norm_tau, 1e-30)
            dev = float(gap.max())
            total += samples
            if dev > worst:
                worst = dev
                if dev > tol and bad is None:
                    i = int(gap.argmax())
                    bad = {"tau": tau, "alpha": v[i, :n].tolist(), "beta": v[i, n:].tolist()}
    return CheckResult("mu_norm_monotone_in_tau", worst <= tol, total, worst, tol, bad)


def _check_equivariance(seed, index, samples, tol=1e-10):
    """mu((u x v) psi, (u x v) phi) == (u x v) mu(psi, phi) (u x v)^*."""
    worst, bad, total = 0.0, None, 0
    rng = _rng(seed, index)
    for n in _MU_GRID_NS:
        for tau in _MU_GRID_TAUS:
            us = _random_su(rng, 2, batch=samples)
            vs = _random_su(rng, n, batch=samples)
            psi = _complex_rows(rng, samples, 2 * n)
            phi = _complex_rows(rng, samples, 2 * n)
            mu_mats, _, _ = _batch_mu_mats(tau, psi, phi, n)
            # batched Kronecker products u (x) v, then two batched matmuls
            kron = np.einsum("mac,mik->maick", us, vs).reshape(samples, 2 * n, 2 * n)
            rhs = kron @ mu_mats @ kron.conj().transpose(0, 2, 1)
            rot = (kron @ psi[:, :, None])[:, :, 0]
            rot_phi = (kron @ phi[:, :, None])[:, :, 0]
            lhs, _, _ = _batch_mu_mats(tau, rot, rot_phi, n)
            scale = np.maximum(np.abs(rhs).max(axis=(1, 2)), 1e-30)
            dev_all = np.abs(lhs - rhs).max(axis=(1, 2)) / scale
            dev = float(dev_all.max())
            total += samples
            if dev > worst:
                worst = dev
                if dev > tol and bad is None:
                    i = int(dev_all.argmax())
                    bad = _spinor_counterexample(
                        SpinorPair(psi[i, :n], psi[i, n:]), tau, dev, 0.0
                    )
    return CheckResult("mu_equivariant_under_su2_x_sun", worst <= tol, total, worst, tol, bad)


def _check_phase_invariance(seed, index, samples, tol=1e-12):
    worst, bad, total = 0.0, None, 0
    rng = _rng(seed, index)
    for n in _MU_GRID_NS:
        for tau in _MU_GRID_TAUS:
            v = _complex_rows(rng, samples, 2 * n)
            z = np.exp(2j * np.pi * rng.random(samples))
            lhs, _, _ = _batch_mu_mats(tau, z[:, None] * v, None, n)
            rhs, _, _ = _batch_mu_mats(tau, v, None, n)
            norms = np.einsum("mi,mi->m", v.conj(), v).real
            dev_all = np.abs(lhs - rhs).max(axis=(1, 2)) / np.maximum(norms, 1e-30)
            dev = float(dev_all.max())
            total += samples
            if dev > worst:
                worst = dev
                if dev > tol and bad is None:
                    i = int(dev_all.argmax())
                    bad = _spinor_counterexample(SpinorPair(v[i, :n], v[i, n:]), tau, dev, 0.0)
    return CheckResult("mu_phase_invariant", worst <= tol, total, worst, tol, bad)


def _check_zero_divisor_identity(seed, index, samples, tol=1e-10):
    worst, bad, total = 0.0, None, 0
    rng = _rng(seed, index)
    for n in (2, 3, 4, 5, 6):
        m = max(samples, 1)
        a = _complex_rows(rng, m, n)
        b = _complex_rows(rng, m, n)
        lhs, rhs_id, rhs_ineq = zero_divisor_identity_batch(a, b)
        rel = np.abs(lhs - rhs_id) / np.maximum(np.abs(rhs_id), 1e-30)
        violated = lhs < rhs_ineq  # inequality is exact; no tolerance slack
        dev = float(rel.max())
        total += m
        if dev > worst or violated.any():
            worst = max(worst, dev)
            if (dev > tol or violated.any()) and bad is None:
                i = int(rel.argmax() if dev > tol else violated.argmax())
                bad = {"n": n, "alpha": a[i].tolist(), "beta": b[i].tolist()}
        if violated.any():
            worst = max(worst, float((rhs_ineq - lhs).max()))
            return CheckResult(
                "traceless_outer_zero_divisor", False, total, worst, tol, bad
            )
    return CheckResult("traceless_outer_zero_divisor", worst <= tol, total, worst, tol, bad)


def _check_properness_inequality(seed, index, samples):
    """quartic_form(tau, psi) >= (estimate - tol)^2 |psi|^4, own estimate."""
    worst, bad, total = 0.0, None, 0
    tol = 0.0
    rng = _rng(seed, index)
    for n in (2, 3, 4):
        for tau in (0.0, 0.5, 1.0):
            report = properness_constant_estimate(n, tau, starts=16, seed=seed)
            floor = max(report.estimate - report.gradient_tolerance, 0.0) ** 2
            a = _complex_rows(rng, samples, n)
            b = _complex_rows(rng, samples, n)
            norms4 = (
                np.einsum("mi,mi->m", a.conj(), a).real
                + np.einsum("mi,mi->m", b.conj(), b).real
            ) ** 2
            # quartic via the scalar route: ||P||^2 + tau ||Q||^2
            p_plus_tau_q = (
                mu_norm_batch(0.0, a, b) ** 2
                + tau * (mu_norm_batch(1.0, a, b) ** 2 - mu_norm_batch(0.0, a, b) ** 2)
            )
            gap = p_plus_tau_q - floor * norms4
            dev = float((-gap).max())
            total += samples
            if dev > worst:
                worst = dev
                if dev > tol and bad is None:
                    i = int((-gap).argmax())
                    bad = {"n": n, "tau": tau, "alpha": a[i].tolist(), "beta": b[i].tolist()}
    return CheckResult("properness_inequality", worst <= tol, total, worst, tol, bad)


def _check_bilinear_diagonal(seed, index, samples, tol=1e-12):
    """mu on the diagonal psi = phi agrees with the quadratic evaluation.

    A code-path consistency check on the public API, so a reduced sample
    count is enough.
    """
    worst, bad, total = 0.0, None, 0
    rng = _rng(seed, index)
    samples = max(samples // 100, 25)
    for n in (1, 2, 3, 4):
        for tau in _MU_GRID_TAUS:
            for _ in range(samples):
                psi = SpinorPair(*_complex_rows(rng, 2, n))
                dev = float(np.abs(mu(tau, psi, psi).mat - mu(tau, psi).mat).max())
                total += 1
                if dev > worst:
                    worst = dev
                    if dev > tol and bad is None:
                        bad = _spinor_counterexample(psi, tau, dev, 0.0)
    return CheckResult("bilinear_diagonal_consistency", worst <= tol, total, worst, tol, bad)


def _check_gradient_finite_difference(seed, index, samples, tol=1e-6):
    """Analytic gradient of the sphere objective vs central differences."""
    from .mu_kernel import _properness_value_grad

    worst, bad, total = 0.0, None, 0
    rng = _rng(seed, index)
    h = 1e-6
    for n in (2, 3):
        for tau in (0.0, 0.5, 1.0):
            vg = _properness_value_grad(n, tau)
            for _ in range(max(samples // 100, 3)):
                x = rng.standard_normal(4 * n)
                x /= np.linalg.norm(x)
                _, grad = vg(x)
                fd = np.empty_like(grad)
                for i in range(x.size):
                    e = np.zeros_like(x)
                    e[i] = h
                    fp, _ = vg(x + e)
                    fm, _ = vg(x - e)
                    fd[i] = (fp - fm) / (2 * h)
                rel = float(
                    np.linalg.norm(grad - fd) / max(np.linalg.norm(fd), 1e-30)
                )
                total += 1
                if rel > worst:
                    worst = rel
                    if rel > tol and bad is None:
                        bad = {"n": n, "tau": tau, "x": x.tolist()}
    return CheckResult("analytic_gradient_matches_fd", worst <= tol, total, worst, tol, bad)


_MU_CHECKS: tuple[tuple[str, Callable], ...] = (
    ("quartic", _check_quartic_identity),
    ("block_formula", _check_block_formula),
    ("orthogonality", _check_orthogonality),
    ("hermiticity", _check_hermiticity),
    ("monotonicity", _check_norm_monotonicity),
    ("equivariance", _check_equivariance),
    ("phase", _check_phase_invariance),
    ("zero_divisor", _check_zero_divisor_identity),
    ("properness", _check_properness_inequality),
    ("diagonal", _check_bilinear_diagonal),
    ("gradient_fd", _check_gradient_finite_difference),
)


def mu_suite(suite: str = "all", samples: int = 200, seed: int = 0) -> SuiteReport:
    """Run the spinor-map property checks.

    ``samples`` is the per-(n, tau) cell sample count for grid checks;
    ``suite`` selects a single named check or ``"all"``.
    """
    names = [name for name, _ in _MU_CHECKS]
    if suite != "all" and suite not in names:
        raise ValueError(f"unknown mu suite {suite!r}; choose from {['all', *names]}")
    checks = []
    for index, (name, fn) in enumerate(_MU_CHECKS):
        if suite in ("all", name):
            checks.append(fn(seed, index, samples))
    return SuiteReport(suite=f"mu:{suite}", seed=seed, checks=tuple(checks))


# ---------------------------------------------------------------------------
# kaehler suite
# ---------------------------------------------------------------------------

def _check_brace_algebra(seed, index, samples, tol=1e-12):
    worst, bad, total = 0.0, None, 0
    rng = _rng(seed, index)
    for n in (1, 2, 3, 5):
        for _ in range(samples):
            f = _complex_rows(rng, n, n)
            g = _complex_rows(rng, n, n)
            tau = float(rng.random())
            c = complex(*rng.standard_normal(2))
            scale = max(float(np.abs(f).max() + np.abs(g).max()), 1e-30)
            devs = (
                float(np.abs(brace(f + c * g, tau) - brace(f, tau) - c * brace(g, tau)).max()),
                float(np.abs(brace(f, 1.0) - f).max()),
                abs(np.trace(brace(f, tau)) - tau * np.trace(f)),
            )
            dev = max(devs) / scale
            total += 1
            if dev > worst:
                worst = dev
                if dev > tol and bad is None:
                    bad = {"n": n, "tau": tau, "f": f.tolist()}
    return CheckResult("brace_linear_unit_trace_scaling", worst <= tol, total, worst, tol, bad)


def _check_mu_kaehler_matches_mu(seed, index, samples, tol=1e-12):
    worst, bad, total = 0.0, None, 0
    rng = _rng(seed, index)
    for n in (1, 2, 3, 4, 5):
        for tau in (0.0, 0.25, 1.0):
            for _ in range(samples):
                a = _complex_rows(rng, 1, n)[0]
                b = _complex_rows(rng, 1, n)[0]
                lhs = mu_kaehler(a, b, tau).mat
                rhs = mu(tau, SpinorPair(a, b)).mat
                dev = float(np.abs(lhs - rhs).max())
                total += 1
                if dev > worst:
                    worst = dev
                    if dev > tol and bad is None:
                        bad = {"n": n, "tau": tau, "alpha": a.tolist(), "beta": b.tolist()}
    return CheckResult("kaehler_blocks_match_projection_mu", worst <= tol, total, worst, tol, bad)


def _check_clifford(seed, index, samples, tol=1e-12):
    """Trace and symmetry type of the Clifford action.

    Always traceless; a real-valued form (real contraction, conjugate
    (2,0)/(0,2) pair) lands in su(2), an imaginary-valued one in i*su(2)
    (Hermitian traceless).
    """
    worst, bad, total = 0.0, None, 0
    rng = _rng(seed, index)
    for _ in range(samples * 4):
        lam = rng.standard_normal()
        e02 = complex(*rng.standard_normal(2))
        g_real = clifford_sd(lam, np.conj(e02), e02)
        g_imag = clifford_sd(1j * lam, -np.conj(e02), e02)
        devs = (
            abs(np.trace(g_real)),
            abs(np.trace(g_imag)),
            float(np.abs(g_real + g_real.conj().T).max()),
            float(np.abs(g_imag - g_imag.conj().T).max()),
        )
        dev = max(float(d) for d in devs)
        total += 1
        if dev > worst:
            worst = dev
            if dev > tol and bad is None:
                bad = {"eta_lambda": lam, "eta02": [e02.real, e02.imag]}
    return CheckResult("clifford_traceless_su2_types", worst <= tol, total, worst, tol, bad)


def _check_decoupling(seed, index, samples):
    worst, bad, total = 0.0, None, 0
    tol = 0.0
    rng = _rng(seed, index)
    for n in (1, 2, 3, 4, 6):
        m = max(samples, 1)
        a = _complex_rows(rng, m, n)
        b = _complex_rows(rng, m, n)
        taus = rng.random(m)
        lhs, rhs = decoupling_bound_batch(a, b, taus)
        scale = np.maximum(np.abs(rhs), 1e-30)
        dev_pair = np.maximum(rhs - lhs, -rhs) / scale  # violations of lhs>=rhs>=0
        dev = float(dev_pair.max())
        total += m
        if dev > worst:
            worst = dev
            if dev > 1e-12 and bad is None:
                i = int(dev_pair.argmax())
                bad = {"n": n, "tau": float(taus[i]), "alpha": a[i].tolist(), "beta": b[i].tolist()}
    return CheckResult("decoupling_inequality", worst <= 1e-12, total, worst, tol, bad)


def _check_margin_closed_form(seed, index, samples, tol=1e-4):
    worst, bad, total = 0.0, None, 0
    starts = max(8, min(24, samples))
    for n in (2, 3):
        for tau in (0.25, 0.5, 1.0):
            for lam in (1.0, 2j):
                measured = impossibility_margin(n, tau, lam, starts=starts, seed=seed)
                expected = impossibility_margin_closed_form(n, tau, lam)
                rel = abs(measured.estimate - expected) / expected
                total += 1
                if rel > worst:
                    worst = rel
                    if rel > tol and bad is None:
                        bad = {
                            "n": n,
                            "tau": tau,
                            "lambda": [complex(lam).real, complex(lam).imag],
                            "measured": measured.estimate,
                            "expected": expected,
                        }
    return CheckResult("margin_matches_closed_form", worst <= tol, total, worst, tol, bad)


def make_satisfying_field(rng, n: int, tau: float) -> PointwiseField:
    """Random field solving the split curvature equations exactly."""
    a = _complex_rows(rng, 1, n)[0]
    b = _complex_rows(rng, 1, n)[0]
    eta02 = complex(*rng.standard_normal(2))
    eta_lambda = 1j * rng.standard_normal()
    probe = PointwiseField(
        a, b, np.zeros((n, n)), np.zeros((n, n)), eta02, eta_lambda, tau
    )
    f02, lam = split_equation_rhs(probe)
    return PointwiseField(a, b, f02, lam, eta02, eta_lambda, tau)


def _check_curvature_split(seed, index, samples, tol=1e-9):
    worst, bad, total = 0.0, None, 0
    rng = _rng(seed, index)
    false_verdicts = 0
    for _ in range(samples):
        n = int(rng.integers(1, 5))
        tau = float(rng.random())
        field = make_satisfying_field(rng, n, tau)
        verdict = verify_curvature_split(field, tol=tol)
        ok = verdict.matrix_satisfied and verdict.split_satisfied and verdict.equivalent
        worst = max(worst, verdict.residual_matrix)
        # violate exactly one split equation
        which = int(rng.integers(0, 2))
        bump = 1.0 + rng.random()
        if which == 0:
            f02 = field.f02.copy()
            f02[0, 0] += bump
            broken = PointwiseField(
                field.alpha, field.beta, f02, field.lambda_f,
                field.eta02, field.eta_lambda, tau,
            )
        else:
            lam = field.lambda_f.copy()
            lam[0, 0] += bump
            broken = PointwiseField(
                field.alpha, field.beta, field.f02, lam,
                field.eta02, field.eta_lambda, tau,
            )
        bad_verdict = verify_curvature_split(broken, tol=tol)
        ok = ok and not bad_verdict.matrix_satisfied and not bad_verdict.split_satisfied
        ok = ok and bad_verdict.equivalent
        total += 2
        if not ok:
            false_verdicts += 1
            if bad is None:
                bad = {"n": n, "tau": tau, "perturbed": "f02" if which == 0 else "lambda_f"}
    return CheckResult(
        "curvature_split_equivalence",
        false_verdicts == 0,
        total,
        float(false_verdicts if false_verdicts else worst),
        tol,
        bad,
    )


_KAEHLER_CHECKS: tuple[tuple[str, Callable], ...] = (
    ("brace", _check_brace_algebra),
    ("mu_match", _check_mu_kaehler_matches_mu),
    ("clifford", _check_clifford),
    ("decoupling", _check_decoupling),
    ("margin", _check_margin_closed_form),
    ("split", _check_curvature_split),
)


def kaehler_suite(suite: str = "all", samples: int = 200, seed: int = 0) -> SuiteReport:
    """Run the Kahler fiber-algebra checks; see :func:`mu_suite` for knobs."""
    names = [name for name, _ in _KAEHLER_CHECKS]
    if suite != "all" and suite not in names:
        raise ValueError(f"unknown kaehler suite {suite!r}; choose from {['all', *names]}")
    checks = []
    for index, (name, fn) in enumerate(_KAEHLER_CHECKS):
        if suite in ("all", name):
            checks.append(fn(seed, 100 + index, samples))
    return SuiteReport(suite=f"kaehler:{suite}", seed=seed, checks=tuple(checks))
