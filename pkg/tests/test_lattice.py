"""Lattice arithmetic: matrices, Bezout pairs, pairings, Euler forms."""

from __future__ import annotations

import math
import random

import pytest

from ellfm import (
    CurveClass,
    DomainError,
    FMMatrix,
    SurfaceClass,
    SurfaceGeometry,
    ch2,
    euler_curve,
    euler_surface,
    find_ab,
    normalize_twist,
    psi_matrix,
    transform_rd,
    twist_class,
)
from ellfm.formats import bundled_geometry

from conftest import random_matrix


# ---------------------------------------------------------------------------
# FMMatrix invariants
# ---------------------------------------------------------------------------


def test_matrix_accepts_valid_entries():
    m = FMMatrix(c=2, a=1, d=1, b=1)
    assert m.rows == ((2, 1), (1, 1))


def test_matrix_rejects_bad_determinant():
    with pytest.raises(DomainError, match="determinant"):
        FMMatrix(c=1, a=1, d=1, b=1)


def test_matrix_rejects_nonpositive_a():
    with pytest.raises(DomainError, match="a must be positive"):
        FMMatrix(c=0, a=-1, d=1, b=0)
    with pytest.raises(DomainError, match="a must be positive"):
        FMMatrix(c=1, a=0, d=1, b=1)


def test_matrix_lambda_constraint():
    FMMatrix(c=1, a=2, d=0, b=1, lambda_constraint=2)
    with pytest.raises(DomainError, match="divide"):
        FMMatrix(c=1, a=1, d=1, b=2, lambda_constraint=2)
    with pytest.raises(DomainError, match="positive"):
        FMMatrix(c=1, a=1, d=0, b=1, lambda_constraint=0)


# ---------------------------------------------------------------------------
# psi matrix
# ---------------------------------------------------------------------------


def test_psi_fixed_points_and_examples():
    m = FMMatrix(c=0, a=1, d=-1, b=0)
    assert psi_matrix(m) == m
    shear = FMMatrix(c=1, a=1, d=0, b=1)
    assert psi_matrix(shear) == FMMatrix(c=-1, a=1, d=0, b=-1)


def _mat_mul(x, y):
    (p, q), (r, s) = x
    (t, u), (v, w) = y
    return ((p * t + q * v, p * u + q * w), (r * t + s * v, r * u + s * w))


def test_psi_product_is_minus_identity():
    rng = random.Random(7)
    for _ in range(60):
        m = random_matrix(rng)
        product = _mat_mul(psi_matrix(m).rows, m.rows)
        assert product == ((-1, 0), (0, -1))
        product = _mat_mul(m.rows, psi_matrix(m).rows)
        assert product == ((-1, 0), (0, -1))


def test_psi_preserves_lambda_constraint():
    m = FMMatrix(c=1, a=2, d=0, b=1, lambda_constraint=2)
    assert psi_matrix(m).lambda_constraint == 2


# ---------------------------------------------------------------------------
# find_ab
# ---------------------------------------------------------------------------


def test_find_ab_known_values():
    assert find_ab(5, 3) == (3, 2)
    assert find_ab(2, 3) == (1, 2)
    assert find_ab(2, 1) == (1, 1)
    assert find_ab(3, -1) == (1, 0)


def test_find_ab_bezout_relation_holds():
    rng = random.Random(11)
    for _ in range(300):
        r = rng.randint(2, 400)
        d = rng.randint(-400, 400)
        if math.gcd(r, d) != 1:
            continue
        a, b = find_ab(r, d)
        assert b * r - a * d == 1
        assert 0 < a < r


def test_find_ab_unique_against_scan():
    # Independent oracle: scan every candidate a in (0, r).
    for r in range(2, 30):
        for d in range(-30, 31):
            if math.gcd(r, d) != 1:
                continue
            candidates = [
                (a, (1 + a * d) // r)
                for a in range(1, r)
                if (1 + a * d) % r == 0
            ]
            assert len(candidates) == 1
            assert find_ab(r, d) == candidates[0]


def test_find_ab_rejections():
    with pytest.raises(DomainError, match="exceed 1"):
        find_ab(1, 5)
    with pytest.raises(DomainError, match="exceed 1"):
        find_ab(0, 1)
    with pytest.raises(DomainError, match=r"gcd\(r,d\) != 1"):
        find_ab(4, 2)


# ---------------------------------------------------------------------------
# normalize_twist
# ---------------------------------------------------------------------------


def test_normalize_twist_known_values():
    assert normalize_twist(FMMatrix(3, 1, 2, 1)) == FMMatrix(0, 1, -1, 1)
    got = normalize_twist(FMMatrix(5, 2, 2, 1, lambda_constraint=2))
    assert got == FMMatrix(1, 2, 0, 1, lambda_constraint=2)


def test_normalize_twist_canonical_range_and_orbit():
    rng = random.Random(23)
    for _ in range(200):
        m = random_matrix(rng)
        norm = normalize_twist(m)
        lam = 1
        assert 0 <= norm.c < lam * m.a
        # Same twist orbit: c moved by a multiple of lam*a, d by the
        # matching multiple of lam*b.
        n, rem = divmod(norm.c - m.c, lam * m.a)
        assert rem == 0
        assert norm.d == m.d + n * lam * m.b
        assert norm.a == m.a and norm.b == m.b


def test_normalize_twist_idempotent():
    rng = random.Random(29)
    for _ in range(100):
        norm = normalize_twist(random_matrix(rng))
        assert normalize_twist(norm) == norm


def test_normalize_twist_respects_lambda():
    m = FMMatrix(c=7, a=2, d=10, b=3, lambda_constraint=2)
    norm = normalize_twist(m)
    assert norm == FMMatrix(c=3, a=2, d=4, b=3, lambda_constraint=2)
    assert 0 <= norm.c < 2 * m.a
    assert norm.d % 2 == 0
    assert normalize_twist(norm) == norm


# ---------------------------------------------------------------------------
# transform_rd and euler_curve
# ---------------------------------------------------------------------------


def test_transform_rd_rotation():
    m = FMMatrix(0, 1, -1, 0)
    assert transform_rd(m, 1, 0) == (0, -1)
    assert transform_rd(m, 0, 1) == (1, 0)
    assert transform_rd(m, 2, 3) == (3, -2)


def test_euler_curve_values_and_antisymmetry():
    assert euler_curve(CurveClass(2, 1), CurveClass(1, 1)) == 1
    rng = random.Random(31)
    for _ in range(100):
        x = CurveClass(rng.randint(-5, 5), rng.randint(-5, 5))
        y = CurveClass(rng.randint(-5, 5), rng.randint(-5, 5))
        assert euler_curve(x, y) == -euler_curve(y, x)


def test_transform_preserves_euler_pairing():
    # The matrix action has determinant one, so the pairing r*d' - r'*d
    # is invariant; this is what makes the curve engine consistent.
    rng = random.Random(37)
    for _ in range(100):
        m = random_matrix(rng)
        x = CurveClass(rng.randint(-4, 4), rng.randint(-4, 4))
        y = CurveClass(rng.randint(-4, 4), rng.randint(-4, 4))
        tx = CurveClass(*transform_rd(m, x.r, x.d))
        ty = CurveClass(*transform_rd(m, y.r, y.d))
        assert euler_curve(tx, ty) == euler_curve(x, y)


# ---------------------------------------------------------------------------
# surface geometry
# ---------------------------------------------------------------------------


def test_bundled_geometries_derive_lambda():
    rational = bundled_geometry("rational")
    assert rational.lambda_x == 1
    assert rational.chi == 1 and rational.q == 0
    k3 = bundled_geometry("lambda2")
    assert k3.lambda_x == 2
    assert k3.chi == 2


def test_geometry_lambda_from_gram_rank3():
    g = SurfaceGeometry(
        rank=3,
        gram=((-1, 1, 0), (1, 0, 0), (0, 0, -2)),
        f=(0, 1, 0),
        K=(0, -1, 0),
        chi=1,
        q=0,
    )
    assert g.lambda_x == 1
    assert g.pair((0, 0, 1), (0, 0, 1)) == -2


def test_geometry_rejects_bad_shapes():
    with pytest.raises(DomainError, match="2x2"):
        SurfaceGeometry(rank=2, gram=((0, 1),), f=(0, 1), K=(0, 0), chi=1, q=0)
    with pytest.raises(DomainError, match="symmetric"):
        SurfaceGeometry(
            rank=2, gram=((0, 1), (2, 0)), f=(0, 1), K=(0, 0), chi=1, q=0
        )
    with pytest.raises(DomainError, match="coordinates"):
        SurfaceGeometry(
            rank=2, gram=((0, 1), (1, 0)), f=(0, 1, 1), K=(0, 0), chi=1, q=0
        )
    with pytest.raises(DomainError, match="q must be >= 0"):
        SurfaceGeometry(
            rank=2, gram=((0, 1), (1, 0)), f=(0, 1), K=(0, 0), chi=1, q=-1
        )


def test_geometry_rejects_bad_fibre_class():
    with pytest.raises(DomainError, match=r"f\.f == 0"):
        SurfaceGeometry(
            rank=2, gram=((-1, 1), (1, 0)), f=(1, 0), K=(0, 0), chi=1, q=0
        )
    with pytest.raises(DomainError, match=r"K\.f == 0"):
        SurfaceGeometry(
            rank=2, gram=((-1, 1), (1, 0)), f=(0, 1), K=(1, 0), chi=1, q=0
        )
    with pytest.raises(DomainError, match="pairs to zero"):
        SurfaceGeometry(
            rank=2, gram=((-1, 0), (0, 0)), f=(0, 1), K=(0, 0), chi=1, q=0
        )


# ---------------------------------------------------------------------------
# surface Euler pairing
# ---------------------------------------------------------------------------


def _structure_sheaf(g: SurfaceGeometry) -> SurfaceClass:
    return SurfaceClass(r=1, c1=(0,) * g.rank, c2=0)


def test_euler_of_structure_sheaf_is_chi():
    for name in ("rational", "lambda2"):
        g = bundled_geometry(name)
        o = _structure_sheaf(g)
        assert euler_surface(g, o, o) == g.chi


def test_ch2_exact_fraction():
    g = bundled_geometry("rational")
    x = SurfaceClass(r=2, c1=(1, 0), c2=1)
    # c1.c1 = -1, so ch2 = (-1 - 2)/2.
    assert ch2(g, x) * 2 == -3


def test_euler_fibre_support_self_pairing_vanishes():
    for name in ("rational", "lambda2"):
        g = bundled_geometry(name)
        for a, b in ((1, 0), (2, 1), (3, -2)):
            cls = SurfaceClass(r=0, c1=tuple(a * c for c in g.f), c2=-b)
            assert euler_surface(g, cls, cls) == 0


def test_euler_symmetry_defect_is_slant_k():
    g = bundled_geometry("rational")
    rng = random.Random(41)
    for _ in range(100):
        x = SurfaceClass(
            rng.randint(0, 4), (rng.randint(-3, 3), rng.randint(-3, 3)), rng.randint(-4, 4)
        )
        y = SurfaceClass(
            rng.randint(0, 4), (rng.randint(-3, 3), rng.randint(-3, 3)), rng.randint(-4, 4)
        )
        try:
            diff = euler_surface(g, x, y) - euler_surface(g, y, x)
        except DomainError:
            continue
        slant = tuple(x.r * cy - y.r * cx for cx, cy in zip(x.c1, y.c1))
        assert diff == -g.pair(slant, g.K)


def test_euler_rejects_non_integral_data():
    # An odd lattice with trivial canonical class violates the
    # Riemann-Roch parity, and the pairing must refuse it.
    g = SurfaceGeometry(
        rank=3,
        gram=((-1, 1, 0), (1, 0, 0), (0, 0, -1)),
        f=(0, 1, 0),
        K=(0, 0, 0),
        chi=1,
        q=0,
    )
    o = _structure_sheaf(g)
    odd = SurfaceClass(r=1, c1=(0, 0, 1), c2=0)
    with pytest.raises(DomainError, match="non-integral"):
        euler_surface(g, o, odd)


def test_euler_rejects_rank_mismatch():
    g = bundled_geometry("rational")
    with pytest.raises(DomainError, match="coordinates"):
        euler_surface(g, _structure_sheaf(g), SurfaceClass(1, (0, 0, 0), 0))


# ---------------------------------------------------------------------------
# twisting
# ---------------------------------------------------------------------------


def test_twist_class_known_value():
    g = bundled_geometry("rational")
    x = SurfaceClass(r=2, c1=(1, 0), c2=1)
    got = twist_class(g, x, (0, 1))
    assert got == SurfaceClass(r=2, c1=(1, 2), c2=2)


def test_twist_by_zero_is_identity():
    g = bundled_geometry("lambda2")
    x = SurfaceClass(r=3, c1=(1, -2), c2=4)
    assert twist_class(g, x, (0, 0)) == x


def test_twist_composes_additively():
    rng = random.Random(43)
    g = bundled_geometry("rational")
    for _ in range(100):
        x = SurfaceClass(
            rng.randint(0, 5), (rng.randint(-3, 3), rng.randint(-3, 3)), rng.randint(-5, 5)
        )
        L = (rng.randint(-3, 3), rng.randint(-3, 3))
        M = (rng.randint(-3, 3), rng.randint(-3, 3))
        once = twist_class(g, twist_class(g, x, L), M)
        both = twist_class(g, x, tuple(l + m for l, m in zip(L, M)))
        assert once == both


def test_twist_preserves_euler_pairing_of_pairs():
    # Twisting both arguments by the same line bundle is an
    # equivalence, so the pairing cannot move.
    rng = random.Random(47)
    g = bundled_geometry("rational")
    for _ in range(60):
        x = SurfaceClass(
            rng.randint(0, 3), (rng.randint(-2, 2), rng.randint(-2, 2)), rng.randint(-3, 3)
        )
        y = SurfaceClass(
            rng.randint(0, 3), (rng.randint(-2, 2), rng.randint(-2, 2)), rng.randint(-3, 3)
        )
        L = (rng.randint(-2, 2), rng.randint(-2, 2))
        try:
            before = euler_surface(g, x, y)
        except DomainError:
            continue
        after = euler_surface(g, twist_class(g, x, L), twist_class(g, y, L))
        assert after == before
