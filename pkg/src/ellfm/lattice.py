"""Exact lattice arithmetic for fibrewise Fourier-Mukai transforms.

Everything in this module is integer or rational arithmetic done
exactly: transform matrices acting on (rank, fibre degree) pairs,
Bezout-type completions, Neron-Severi intersection pairings and the
Euler pairing on an elliptic surface.  Plain ``int`` is used wherever
the result is provably integral; the half-integral intermediates of
the surface Euler pairing go through ``fractions.Fraction`` and are
checked for integrality before being returned.  No floats anywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction


class DomainError(ValueError):
    """Raised when an input violates a documented invariant.

    The message always names the condition that failed, so callers
    (and the command line front end) can surface it verbatim.
    """


# ---------------------------------------------------------------------------
# transform matrices
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FMMatrix:
    """Chern-class action of a fibrewise transform, stored row-major.

    The matrix is ``(c a; d b)``: it sends a (rank, fibre degree)
    column vector ``(r, d)`` to ``(c*r + a*d, d*r + b*d)``.  Required:
    determinant ``c*b - a*d == 1`` and ``a > 0``.  When the transform
    lives on a fibration whose fibres have multisection degree
    ``lambda_constraint``, the entry ``d`` must be divisible by it.
    """

    c: int
    a: int
    d: int
    b: int
    lambda_constraint: int | None = None

    def __post_init__(self) -> None:
        det = self.c * self.b - self.a * self.d
        if det != 1:
            raise DomainError(
                f"matrix determinant c*b - a*d must equal 1, got {det}"
            )
        if self.a <= 0:
            raise DomainError(f"matrix entry a must be positive, got {self.a}")
        lam = self.lambda_constraint
        if lam is not None:
            if lam <= 0:
                raise DomainError(
                    f"lambda constraint must be a positive integer, got {lam}"
                )
            if self.d % lam != 0:
                raise DomainError(
                    f"lambda constraint {lam} must divide matrix entry d={self.d}"
                )

    @property
    def rows(self) -> tuple[tuple[int, int], tuple[int, int]]:
        """The matrix as ((c, a), (d, b))."""
        return ((self.c, self.a), (self.d, self.b))


def psi_matrix(m: FMMatrix) -> FMMatrix:
    """Matrix of the reverse-direction transform.

    Returns ``(-b a; d -c)``.  Composing it with ``m`` (in either
    order) gives minus the identity, which is why applying the two
    transforms in succession recovers the original object only up to
    a shift.  The result is itself a valid transform matrix and
    inherits the lambda constraint of ``m``.
    """
    return FMMatrix(
        c=-m.b, a=m.a, d=m.d, b=-m.c, lambda_constraint=m.lambda_constraint
    )


def normalize_twist(m: FMMatrix) -> FMMatrix:
    """Canonical representative of the twist orbit of ``m``.

    Twisting by line bundles pulled back from the base changes
    ``(c, d)`` to ``(c + n*lam*a, d + n*lam*b)`` without changing the
    transform in any essential way.  This picks the unique orbit
    member with ``0 <= c < lam * a``.  Matrices without a lambda
    constraint are normalized with ``lam = 1``.
    """
    lam = m.lambda_constraint if m.lambda_constraint is not None else 1
    step = lam * m.a
    new_c = m.c % step
    n = (new_c - m.c) // step
    new_d = m.d + n * lam * m.b
    return FMMatrix(
        c=new_c, a=m.a, d=new_d, b=m.b, lambda_constraint=m.lambda_constraint
    )


def transform_rd(m: FMMatrix, r: int, d: int) -> tuple[int, int]:
    """Apply the matrix to a (rank, fibre degree) column vector."""
    return (m.c * r + m.a * d, m.d * r + m.b * d)


def find_ab(r: int, d: int) -> tuple[int, int]:
    """Solve ``b*r - a*d == 1`` with ``0 < a < r``.

    For coprime ``r > 1`` and ``d`` the solution is unique: ``a`` is
    ``-d`` inverted modulo ``r``, and ``b`` follows.  Raises
    DomainError when ``r <= 1`` or ``gcd(r,d) != 1``.
    """
    if r <= 1:
        raise DomainError(f"rank r must exceed 1, got {r}")
    if math.gcd(r, d) != 1:
        raise DomainError(f"gcd(r,d) != 1 for r={r}, d={d}")
    a = (-pow(d, -1, r)) % r
    # a == 0 would force r == 1, which is excluded above.
    b = (1 + a * d) // r
    return (a, b)


# ---------------------------------------------------------------------------
# curve classes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CurveClass:
    """Numerical class (rank, degree) of a sheaf on an elliptic curve."""

    r: int
    d: int


def euler_curve(x: CurveClass, y: CurveClass) -> int:
    """Euler pairing chi(x, y) = r_x*d_y - r_y*d_x on the curve."""
    return x.r * y.d - y.r * x.d


# ---------------------------------------------------------------------------
# surface geometry
# ---------------------------------------------------------------------------


def _as_int_tuple(values) -> tuple[int, ...]:
    out = []
    for v in values:
        if not isinstance(v, int) or isinstance(v, bool):
            raise DomainError(f"lattice coordinates must be integers, got {v!r}")
        out.append(v)
    return tuple(out)


@dataclass(frozen=True)
class SurfaceGeometry:
    """Numerical invariants of an elliptic surface.

    ``gram`` is the intersection form on a chosen basis of the
    Neron-Severi lattice, ``f`` the fibre class and ``K`` the
    canonical class in that basis, ``chi`` the Euler characteristic
    of the structure sheaf and ``q`` the irregularity.  The
    multisection degree ``lambda_x`` (the positive generator of
    ``f . NS``) is derived from the Gram matrix, never supplied.

    Invariants checked on construction: the Gram matrix is square,
    symmetric and of size ``rank``; ``f.f == 0``; ``K.f == 0``;
    ``q >= 0``; and ``f`` pairs non-trivially with something, so that
    ``lambda_x > 0``.
    """

    rank: int
    gram: tuple[tuple[int, ...], ...]
    f: tuple[int, ...]
    K: tuple[int, ...]
    chi: int
    q: int
    lambda_x: int = field(init=False)

    def __post_init__(self) -> None:
        gram = tuple(_as_int_tuple(row) for row in self.gram)
        object.__setattr__(self, "gram", gram)
        object.__setattr__(self, "f", _as_int_tuple(self.f))
        object.__setattr__(self, "K", _as_int_tuple(self.K))
        if self.rank <= 0:
            raise DomainError(f"lattice rank must be positive, got {self.rank}")
        if len(gram) != self.rank or any(len(row) != self.rank for row in gram):
            raise DomainError(
                f"Gram matrix must be {self.rank}x{self.rank}"
            )
        for i in range(self.rank):
            for j in range(i + 1, self.rank):
                if gram[i][j] != gram[j][i]:
                    raise DomainError(
                        f"Gram matrix must be symmetric, differs at ({i},{j})"
                    )
        for name, vec in (("f", self.f), ("K", self.K)):
            if len(vec) != self.rank:
                raise DomainError(
                    f"vector {name} must have {self.rank} coordinates, got {len(vec)}"
                )
        if self.q < 0:
            raise DomainError(f"irregularity q must be >= 0, got {self.q}")
        if self.pair(self.f, self.f) != 0:
            raise DomainError("fibre class must satisfy f.f == 0")
        if self.pair(self.K, self.f) != 0:
            raise DomainError("canonical class must satisfy K.f == 0")
        fibre_row = [self.pair(self.f, _basis(self.rank, j)) for j in range(self.rank)]
        lam = 0
        for value in fibre_row:
            lam = math.gcd(lam, value)
        if lam == 0:
            raise DomainError("fibre class pairs to zero with the whole lattice")
        object.__setattr__(self, "lambda_x", lam)

    def pair(self, u: tuple[int, ...], v: tuple[int, ...]) -> int:
        """Intersection pairing u.v in the chosen basis."""
        if len(u) != self.rank or len(v) != self.rank:
            raise DomainError(
                f"pairing needs two vectors of {self.rank} coordinates"
            )
        total = 0
        for i, ui in enumerate(u):
            row = self.gram[i]
            for j, vj in enumerate(v):
                total += ui * row[j] * vj
        return total

    def fibre_degree(self, c1: tuple[int, ...]) -> int:
        """Degree of a first Chern class along the fibre, c1.f."""
        return self.pair(c1, self.f)


def _basis(rank: int, j: int) -> tuple[int, ...]:
    return tuple(1 if i == j else 0 for i in range(rank))


@dataclass(frozen=True)
class SurfaceClass:
    """Chern data (rank, c1, c2) of a sheaf on the surface.

    ``c1`` is a coordinate vector in the basis fixed by the ambient
    SurfaceGeometry; ``c2`` is an integer.
    """

    r: int
    c1: tuple[int, ...]
    c2: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "c1", _as_int_tuple(self.c1))


def _check_over(g: SurfaceGeometry, x: SurfaceClass) -> None:
    if len(x.c1) != g.rank:
        raise DomainError(
            f"class c1 has {len(x.c1)} coordinates, geometry has rank {g.rank}"
        )


def ch2(g: SurfaceGeometry, x: SurfaceClass) -> Fraction:
    """Second Chern character (c1.c1 - 2*c2) / 2, as an exact fraction."""
    _check_over(g, x)
    return Fraction(g.pair(x.c1, x.c1) - 2 * x.c2, 2)


def euler_surface(g: SurfaceGeometry, x: SurfaceClass, y: SurfaceClass) -> int:
    """Euler pairing chi(x, y) on the surface, by Riemann-Roch.

    chi(x, y) = r_x*ch2(y) + r_y*ch2(x) - c1_x.c1_y
                - (r_x*c1_y - r_y*c1_x).K/2 + r_x*r_y*chi(O)

    Assembled over the rationals and checked to be an integer; a
    non-integral result means the inputs are not Chern data of actual
    sheaves on this geometry and raises DomainError.
    """
    _check_over(g, x)
    _check_over(g, y)
    slant = tuple(x.r * cy - y.r * cx for cx, cy in zip(x.c1, y.c1))
    total = (
        x.r * ch2(g, y)
        + y.r * ch2(g, x)
        - g.pair(x.c1, y.c1)
        - Fraction(g.pair(slant, g.K), 2)
        + x.r * y.r * g.chi
    )
    if total.denominator != 1:
        raise DomainError(
            f"Euler pairing is non-integral ({total}); inputs are not "
            "Chern data on this geometry"
        )
    return total.numerator


def twist_class(g: SurfaceGeometry, x: SurfaceClass, L: tuple[int, ...]) -> SurfaceClass:
    """Chern data of the twist of ``x`` by the line bundle class ``L``.

    c1 gains r*L and c2 gains (r-1)*c1.L + r(r-1)/2 * L.L; the
    combination is always integral.
    """
    _check_over(g, x)
    L = _as_int_tuple(L)
    if len(L) != g.rank:
        raise DomainError(
            f"twisting class has {len(L)} coordinates, geometry has rank {g.rank}"
        )
    r = x.r
    new_c1 = tuple(c + r * l for c, l in zip(x.c1, L))
    # r*(r-1) is a product of consecutive integers, so halving is exact.
    new_c2 = x.c2 + (r - 1) * g.pair(x.c1, L) + (r * (r - 1) // 2) * g.pair(L, L)
    return SurfaceClass(r=r, c1=new_c1, c2=new_c2)
