"""Exact cohomology arithmetic on a closed oriented 4-manifold.

The manifold enters only through its intersection form ``Q`` on
``H^2(X;Z)/torsion`` (a nondegenerate symmetric integer matrix), its first
Betti number and the invariants derived from ``Q``.  All arithmetic here is
exact: signatures come from rational congruence diagonalization, dimension
formulas are evaluated over ``Fraction`` and asserted integral before an
``int`` is returned.

Derived conventions, fixed once for the whole package:

* ``p1(TX) = 3 * signature`` (signature theorem) and
  ``euler = 2 - 2*b1 + b2``.
* Degree-two classes are integer coordinate vectors in a fixed basis of
  ``H^2/torsion``; the cup pairing is ``x^T Q y``.
* ``<p1(su(E)), [X]> = (N-1)<c1(E)^2> - 2N <c2(E)>`` for a rank-``N``
  Hermitian bundle ``E`` (degree-4 term of ``ch(E)ch(E*)``, trivial summand
  removed).
* The index of the Dirac operator twisted by ``E`` is the degree-4 part of
  ``ch(E) e^{c1(s)/2} Ahat(TX)`` with ``Ahat = 1 - p1(TX)/24``, i.e.

      <c1(E)^2 - 2 c2(E)>/2 + <c1(E) . c1(s)>/2 + (N/8)(<c1(s)^2> - sigma).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

__all__ = [
    "CohClass2",
    "FourManifold",
    "BundleData",
    "SpincStructure",
    "InconsistentTopologyError",
    "cup",
    "p1_su",
    "dirac_index",
    "expected_dim_pun",
    "expected_dim_un",
    "expected_dim_asd",
    "pun_dimension_report",
    "un_dimension_report",
    "asd_dimension_report",
    "characteristic_defects",
]


class InconsistentTopologyError(ValueError):
    """Raised when topological input cannot come from a Spin^c 4-manifold."""


def _as_int(x, what: str) -> int:
    if isinstance(x, bool) or not isinstance(x, (int,)):
        # numpy integers land here; accept anything that round-trips exactly
        try:
            xi = int(x)
        except (TypeError, ValueError):
            raise ValueError(f"{what} must be an integer, got {x!r}") from None
        if xi != x or isinstance(x, (float, complex)):
            raise ValueError(f"{what} must be an integer, got {x!r}")
        return xi
    return int(x)


def _symmetric_int_matrix(rows: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    """Validate a symmetric integer matrix; a 0 x 0 matrix is allowed (b2 = 0)."""
    mat = tuple(tuple(_as_int(x, "intersection form entry") for x in row) for row in rows)
    m = len(mat)
    if any(len(row) != m for row in mat):
        raise ValueError("intersection form must be square")
    for i in range(m):
        for j in range(i + 1, m):
            if mat[i][j] != mat[j][i]:
                raise ValueError(f"intersection form is not symmetric at ({i},{j})")
    return mat


def _det_exact(mat: Sequence[Sequence[int]]) -> Fraction:
    """Determinant by Gaussian elimination over Q; the empty matrix has det 1."""
    a = [[Fraction(x) for x in row] for row in mat]
    m = len(a)
    det = Fraction(1)
    for k in range(m):
        piv = next((i for i in range(k, m) if a[i][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            det = -det
        det *= a[k][k]
        inv = 1 / a[k][k]
        for i in range(k + 1, m):
            f = a[i][k] * inv
            if f:
                for j in range(k, m):
                    a[i][j] -= f * a[k][j]
    return det


def _inertia(mat: Sequence[Sequence[int]]) -> tuple[int, int, int]:
    """(positive, negative, zero) inertia of a symmetric matrix, exactly.

    Congruence diagonalization over Q: diagonal pivots are cleared with
    symmetric row/column operations; a zero diagonal against a nonzero
    off-diagonal entry is repaired by adding the partner row and column
    (which puts ``2*a_ij`` on the diagonal).  Congruence preserves inertia.
    """
    a = [[Fraction(x) for x in row] for row in mat]
    m = len(a)
    pos = neg = 0
    k = 0
    while k < m:
        piv = next((i for i in range(k, m) if a[i][i] != 0), None)
        if piv is None:
            hit = None
            for i in range(k, m):
                for j in range(i + 1, m):
                    if a[i][j] != 0:
                        hit = (i, j)
                        break
                if hit:
                    break
            if hit is None:
                break  # remaining block is zero
            i, j = hit
            for t in range(m):
                a[i][t] += a[j][t]
            for t in range(m):
                a[t][i] += a[t][j]
            continue
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            for row in a:
                row[k], row[piv] = row[piv], row[k]
        d = a[k][k]
        if d > 0:
            pos += 1
        else:
            neg += 1
        for i in range(k + 1, m):
            f = a[i][k] / d
            if f:
                for t in range(k, m):
                    a[i][t] -= f * a[k][t]
        for i in range(k + 1, m):
            f = a[k][i] / d
            if f:
                for t in range(k, m):
                    a[t][i] -= f * a[t][k]
        k += 1
    return pos, neg, m - pos - neg


@dataclass(frozen=True)
class CohClass2:
    """A degree-2 integral class, as coordinates in a fixed basis of H^2/torsion."""

    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Iterable[int]):
        object.__setattr__(
            self, "coeffs", tuple(_as_int(c, "class coordinate") for c in coeffs)
        )

    def __len__(self) -> int:
        return len(self.coeffs)

    def __add__(self, other: "CohClass2") -> "CohClass2":
        if len(other) != len(self):
            raise ValueError("class length mismatch")
        return CohClass2(a + b for a, b in zip(self.coeffs, other.coeffs))

    def __sub__(self, other: "CohClass2") -> "CohClass2":
        if len(other) != len(self):
            raise ValueError("class length mismatch")
        return CohClass2(a - b for a, b in zip(self.coeffs, other.coeffs))

    def __neg__(self) -> "CohClass2":
        return CohClass2(-a for a in self.coeffs)

    def scaled(self, k: int) -> "CohClass2":
        return CohClass2(k * a for a in self.coeffs)

    @staticmethod
    def zero(b2: int) -> "CohClass2":
        return CohClass2((0,) * b2)


@dataclass
class FourManifold:
    """Topological input: intersection form plus Betti data.

    ``signature``, ``euler`` and (if not supplied) ``b2plus`` are derived in
    ``__post_init__`` from exact arithmetic on the intersection form.  A
    supplied ``b2plus`` that disagrees with the positive inertia index of the
    form is rejected.  Non-unimodularity (``|det Q| != 1``) is recorded as a
    warning, not an error.
    """

    name: str
    b1: int
    intersection_form: Sequence[Sequence[int]]
    b2plus: int | None = None
    signature: int = field(init=False)
    euler: int = field(init=False)
    warnings: tuple[str, ...] = field(init=False, default=())

    def __post_init__(self):
        self.b1 = _as_int(self.b1, "b1")
        if self.b1 < 0:
            raise ValueError("b1 must be nonnegative")
        self.intersection_form = _symmetric_int_matrix(self.intersection_form)
        det = _det_exact(self.intersection_form)
        if det == 0:
            raise ValueError(
                "intersection form is degenerate over Q (determinant 0)"
            )
        pos, neg, null = _inertia(self.intersection_form)
        assert null == 0  # guaranteed by det != 0
        if self.b2plus is None:
            self.b2plus = pos
        else:
            self.b2plus = _as_int(self.b2plus, "b2plus")
            if self.b2plus != pos:
                raise ValueError(
                    f"b2plus={self.b2plus} does not match the positive index "
                    f"{pos} of the intersection form"
                )
        self.signature = pos - neg
        self.euler = 2 - 2 * self.b1 + self.b2
        notes = []
        if abs(det) != 1:
            notes.append(
                f"intersection form is not unimodular (|det| = {abs(det)})"
            )
        self.warnings = tuple(notes)

    @property
    def b2(self) -> int:
        return len(self.intersection_form)

    def zero_class(self) -> CohClass2:
        return CohClass2.zero(self.b2)


@dataclass(frozen=True)
class BundleData:
    """A Hermitian bundle up to isomorphism: (rank, c1, <c2,[X]>).

    On a closed oriented 4-manifold these three data classify unitary
    bundles, so no further structure is stored.  A line bundle has no
    second Chern class: rank 1 forces ``c2 == 0``.
    """

    rank: int
    c1: CohClass2
    c2: int

    def __init__(self, rank: int, c1, c2: int):
        rank = _as_int(rank, "rank")
        if rank < 1:
            raise ValueError("bundle rank must be >= 1")
        if not isinstance(c1, CohClass2):
            c1 = CohClass2(c1)
        c2 = _as_int(c2, "c2")
        if rank == 1 and c2 != 0:
            raise ValueError("a line bundle has <c2,[X]> = 0")
        object.__setattr__(self, "rank", rank)
        object.__setattr__(self, "c1", c1)
        object.__setattr__(self, "c2", c2)


@dataclass(frozen=True)
class SpincStructure:
    """A Spin^c structure reduced to the class c1 of its positive spinor bundle."""

    c1s: CohClass2

    def __init__(self, c1s):
        if not isinstance(c1s, CohClass2):
            c1s = CohClass2(c1s)
        object.__setattr__(self, "c1s", c1s)


def cup(x: CohClass2, y: CohClass2, manifold: FourManifold) -> int:
    """Evaluate the cup product pairing <x . y, [X]> = x^T Q y, exactly."""
    if not isinstance(x, CohClass2):
        x = CohClass2(x)
    if not isinstance(y, CohClass2):
        y = CohClass2(y)
    b2 = manifold.b2
    if len(x) != b2 or len(y) != b2:
        raise ValueError(
            f"class length mismatch: got {len(x)} and {len(y)}, expected b2={b2}"
        )
    q = manifold.intersection_form
    return sum(x.coeffs[i] * q[i][j] * y.coeffs[j] for i in range(b2) for j in range(b2))


def characteristic_defects(s: SpincStructure, manifold: FourManifold) -> tuple[int, ...]:
    """Basis indices where the characteristic condition c1(s).x = x.x (mod 2) fails.

    An empty result means the class passes the mod-2 test.  Failure is
    advisory only; callers surface it as a warning.
    """
    q = manifold.intersection_form
    b2 = manifold.b2
    if len(s.c1s) != b2:
        raise ValueError("Spin^c class length does not match b2")
    bad = []
    for i in range(b2):
        pairing = sum(s.c1s.coeffs[j] * q[j][i] for j in range(b2))
        if (pairing - q[i][i]) % 2 != 0:
            bad.append(i)
    return tuple(bad)


def p1_su(bundle: BundleData, manifold: FourManifold) -> int:
    """<p1(su(E)), [X]> for the traceless endomorphism bundle of E.

    Equals ``(N-1)<c1^2> - 2N<c2>``; for a line bundle su(E) has rank zero
    and the pairing is 0.
    """
    n = bundle.rank
    return (n - 1) * cup(bundle.c1, bundle.c1, manifold) - 2 * n * bundle.c2


def _dirac_index_fraction(
    bundle: BundleData, s: SpincStructure, manifold: FourManifold
) -> Fraction:
    c1sq = cup(bundle.c1, bundle.c1, manifold)
    mixed = cup(bundle.c1, s.c1s, manifold)
    ssq = cup(s.c1s, s.c1s, manifold)
    return (
        Fraction(c1sq - 2 * bundle.c2, 1)
        + Fraction(mixed, 1)
    ) / 2 + Fraction(bundle.rank, 8) * (ssq - manifold.signature)


def dirac_index(bundle: BundleData, s: SpincStructure, manifold: FourManifold) -> int:
    """Complex index of the Dirac operator twisted by the bundle.

    Computed exactly; a non-integral value means the data are not realizable
    on a Spin^c 4-manifold (for instance a failed characteristic condition)
    and raises :class:`InconsistentTopologyError`.
    """
    value = _dirac_index_fraction(bundle, s, manifold)
    if value.denominator != 1:
        raise InconsistentTopologyError(
            "inconsistent topological input: twisted Dirac index "
            f"{value} is not an integer"
        )
    return int(value)


def expected_dim_pun(
    bundle: BundleData,
    s: SpincStructure,
    manifold: FourManifold,
    dirac_multiplicity: int = 2,
) -> int:
    """Expected dimension of the projective-unitary monopole moduli space.

    ``-2<p1(su(E))> - (N^2-1)(b2+ - b1 + 1) + m * ind(Dirac)`` with the Dirac
    multiplicity ``m`` defaulting to 2 (the convention that reduces to the
    classical rank-1 dimension; ``m=1`` remains selectable).
    """
    if bundle.rank < 2:
        raise ValueError("projective monopole dimension needs rank >= 2")
    if dirac_multiplicity not in (1, 2):
        raise ValueError("dirac_multiplicity must be 1 or 2")
    n = bundle.rank
    return (
        -2 * p1_su(bundle, manifold)
        - (n * n - 1) * (manifold.b2plus - manifold.b1 + 1)
        + dirac_multiplicity * dirac_index(bundle, s, manifold)
    )


def expected_dim_un(
    bundle: BundleData,
    s: SpincStructure,
    manifold: FourManifold,
    dirac_multiplicity: int = 2,
) -> int:
    """Expected dimension of the full unitary monopole moduli space.

    Same shape as :func:`expected_dim_pun` with ``n^2`` in place of
    ``N^2 - 1``; defined for every rank >= 1.  At rank 1 with multiplicity 2
    this reproduces the classical abelian monopole dimension.
    """
    if bundle.rank < 1:
        raise ValueError("rank must be >= 1")
    if dirac_multiplicity not in (1, 2):
        raise ValueError("dirac_multiplicity must be 1 or 2")
    n = bundle.rank
    return (
        -2 * p1_su(bundle, manifold)
        - n * n * (manifold.b2plus - manifold.b1 + 1)
        + dirac_multiplicity * dirac_index(bundle, s, manifold)
    )


def expected_dim_asd(bundle: BundleData, manifold: FourManifold) -> int:
    """Index of the anti-self-duality deformation operator, rank >= 2.

    ``-2<p1(su(F))> - (m^2-1)(b2+ - b1 + 1)``.  Rank 1 is rejected: the
    projective connection space of a line bundle is a single point and
    callers should use dimension 0 directly.
    """
    if bundle.rank < 2:
        raise ValueError(
            "instanton dimension needs rank >= 2; a rank-1 projective "
            "connection space is a point (dimension 0)"
        )
    m = bundle.rank
    return -2 * p1_su(bundle, manifold) - (m * m - 1) * (
        manifold.b2plus - manifold.b1 + 1
    )


def _index_terms(bundle, s, manifold, dirac_multiplicity):
    frac = _dirac_index_fraction(bundle, s, manifold)
    return {
        "p1_su": p1_su(bundle, manifold),
        "dirac_index": dirac_index(bundle, s, manifold),
        "dirac_index_exact": frac,
        "dirac_multiplicity": dirac_multiplicity,
        "b2plus": manifold.b2plus,
        "b1": manifold.b1,
        "signature": manifold.signature,
        "euler": manifold.euler,
    }


def pun_dimension_report(
    bundle: BundleData,
    s: SpincStructure,
    manifold: FourManifold,
    dirac_multiplicity: int = 2,
) -> dict:
    """Full term-by-term breakdown of :func:`expected_dim_pun`."""
    terms = _index_terms(bundle, s, manifold, dirac_multiplicity)
    n = bundle.rank
    terms["instanton_term"] = -2 * terms["p1_su"] - (n * n - 1) * (
        manifold.b2plus - manifold.b1 + 1
    )
    terms["dirac_term"] = dirac_multiplicity * terms["dirac_index"]
    terms["expected_dim"] = expected_dim_pun(bundle, s, manifold, dirac_multiplicity)
    return terms


def un_dimension_report(
    bundle: BundleData,
    s: SpincStructure,
    manifold: FourManifold,
    dirac_multiplicity: int = 2,
) -> dict:
    """Full term-by-term breakdown of :func:`expected_dim_un`."""
    terms = _index_terms(bundle, s, manifold, dirac_multiplicity)
    n = bundle.rank
    terms["curvature_term"] = -2 * terms["p1_su"] - n * n * (
        manifold.b2plus - manifold.b1 + 1
    )
    terms["dirac_term"] = dirac_multiplicity * terms["dirac_index"]
    terms["expected_dim"] = expected_dim_un(bundle, s, manifold, dirac_multiplicity)
    return terms


def asd_dimension_report(bundle: BundleData, manifold: FourManifold) -> dict:
    """Term breakdown of :func:`expected_dim_asd`."""
    return {
        "p1_su": p1_su(bundle, manifold),
        "b2plus": manifold.b2plus,
        "b1": manifold.b1,
        "expected_dim": expected_dim_asd(bundle, manifold),
    }
