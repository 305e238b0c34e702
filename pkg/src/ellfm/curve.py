"""Hom/Ext bookkeeping for stable sheaves on an elliptic curve.

Objects here are formal: a stable sheaf is just its numerical class
plus an opaque label distinguishing non-isomorphic sheaves with the
same class, and a complex is a finite multiset of such atoms placed
in cohomological degrees.  On an elliptic curve that is enough to
compute every Hom and Ext dimension exactly, because stability pins
the answer down:

* identical atoms contribute (hom, ext1) = (1, 1),
* same class but different label contributes (0, 0),
* otherwise the slopes decide and the Euler pairing gives the count.

Fibrewise transforms act atom by atom, lowering or raising the
degree according to the sign of the transformed rank.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .lattice import CurveClass, DomainError, FMMatrix, euler_curve, transform_rd


@dataclass(frozen=True)
class StableAtom:
    """A stable sheaf on the curve, up to the data that matters here.

    ``cls`` is the numerical class: either a bundle class with
    ``r > 0`` and ``gcd(r, d) == 1``, or the skyscraper class (0, 1).
    ``label`` is an opaque tag; two atoms with equal class and equal
    label are the same sheaf, equal class with different labels are
    distinct points of the same moduli space.
    """

    cls: CurveClass
    label: str = ""

    def __post_init__(self) -> None:
        r, d = self.cls.r, self.cls.d
        if r == 0:
            if d != 1:
                raise DomainError(
                    f"rank-zero stable atom must be the skyscraper class (0,1), got (0,{d})"
                )
        elif r < 0:
            raise DomainError(f"stable atom needs rank r >= 0, got {r}")
        elif math.gcd(r, d) != 1:
            raise DomainError(
                f"stable bundle atom needs gcd(r,d) == 1, got ({r},{d})"
            )


def _slope_lt(x: StableAtom, y: StableAtom) -> bool:
    """Exact comparison mu(x) < mu(y), skyscrapers having infinite slope."""
    if x.cls.r == 0:
        return False
    if y.cls.r == 0:
        return True
    return x.cls.d * y.cls.r < y.cls.d * x.cls.r


def hom_ext_atoms(x: StableAtom, y: StableAtom) -> tuple[int, int]:
    """Dimensions (hom, ext1) between two stable atoms.

    The trichotomy in the module docstring, with the counts in the
    unequal-slope cases given by the Euler pairing.  Consistent with
    Serre duality (hom(x,y) == ext1(y,x)) and with
    hom - ext1 == chi(x, y).
    """
    if x == y:
        return (1, 1)
    if x.cls == y.cls:
        return (0, 0)
    chi = euler_curve(x.cls, y.cls)
    if _slope_lt(x, y):
        return (chi, 0)
    if _slope_lt(y, x):
        return (0, -chi)
    # Equal slope forces equal class for primitive classes, handled above.
    raise DomainError(
        f"distinct classes ({x.cls.r},{x.cls.d}) and ({y.cls.r},{y.cls.d}) "
        "share a slope; atoms are not primitive"
    )


def _atom_key(a: StableAtom) -> tuple[int, int, str]:
    return (a.cls.r, a.cls.d, a.label)


@dataclass(frozen=True)
class GradedObject:
    """A finite formal complex: atoms placed in cohomological degrees.

    Stored canonically as ``layers``, a tuple of (degree, atoms)
    pairs with degrees strictly increasing, each atoms entry a tuple
    sorted by (r, d, label), and no empty degrees.  Repetitions are
    allowed and meaningful (multiset semantics).  Use ``from_pairs``
    or ``sheaf`` rather than building layers by hand.
    """

    layers: tuple[tuple[int, tuple[StableAtom, ...]], ...]

    @staticmethod
    def from_pairs(pairs) -> "GradedObject":
        """Build from an iterable of (degree, atom) pairs."""
        by_degree: dict[int, list[StableAtom]] = {}
        for degree, atom in pairs:
            if not isinstance(degree, int):
                raise DomainError(f"cohomological degree must be an integer, got {degree!r}")
            by_degree.setdefault(degree, []).append(atom)
        layers = tuple(
            (degree, tuple(sorted(by_degree[degree], key=_atom_key)))
            for degree in sorted(by_degree)
        )
        return GradedObject(layers=layers)

    @staticmethod
    def sheaf(atoms) -> "GradedObject":
        """A direct sum of atoms concentrated in degree zero."""
        return GradedObject.from_pairs((0, a) for a in atoms)

    def pairs(self):
        """Yield (degree, atom) for every atom occurrence."""
        for degree, atoms in self.layers:
            for atom in atoms:
                yield degree, atom

    def atoms_in(self, degree: int) -> tuple[StableAtom, ...]:
        for deg, atoms in self.layers:
            if deg == degree:
                return atoms
        return ()

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(degree for degree, _ in self.layers)

    @property
    def is_zero(self) -> bool:
        return not self.layers

    @property
    def is_sheaf(self) -> bool:
        """Concentrated in degree zero (the zero object counts)."""
        return self.degrees in ((), (0,))

    def shifted(self, n: int) -> "GradedObject":
        """The shift [n]: every degree drops by n."""
        return GradedObject.from_pairs((d - n, a) for d, a in self.pairs())


@dataclass(frozen=True)
class ExtProfile:
    """Graded Hom dimensions: entries (i, dim Hom(x, y[i])), zeros dropped."""

    entries: tuple[tuple[int, int], ...]

    @staticmethod
    def from_dict(values: dict[int, int]) -> "ExtProfile":
        return ExtProfile(
            entries=tuple((i, v) for i, v in sorted(values.items()) if v != 0)
        )

    def as_dict(self) -> dict[int, int]:
        return dict(self.entries)


def hom_ext_objects(x: GradedObject, y: GradedObject) -> ExtProfile:
    """Graded Hom profile between two formal complexes.

    Formal complexes carry no differentials, so Homs split over the
    atom pairs: an atom in degree p of ``x`` against an atom in
    degree q of ``y`` contributes its hom count at i = q - p and its
    ext1 count at i = q - p + 1.
    """
    totals: dict[int, int] = {}
    for p, ax in x.pairs():
        for q, ay in y.pairs():
            hom, ext1 = hom_ext_atoms(ax, ay)
            if hom:
                totals[q - p] = totals.get(q - p, 0) + hom
            if ext1:
                totals[q - p + 1] = totals.get(q - p + 1, 0) + ext1
    return ExtProfile.from_dict(totals)


def wit_index(m: FMMatrix, atom: StableAtom) -> int:
    """Which single degree the transform of ``atom`` lives in: 0 or 1.

    Decided by the sign of the transformed rank r' = c*r + a*d.
    Strictly positive means index 0, strictly negative index 1.  The
    boundary r' == 0 can only happen for the class (a, -c), whose
    transform is a shifted skyscraper: index 1.
    """
    r_new, _ = transform_rd(m, atom.cls.r, atom.cls.d)
    if r_new > 0:
        return 0
    return 1


def fm_transform(m: FMMatrix, x: GradedObject) -> GradedObject:
    """Transform a formal complex, atom by atom.

    Each atom of class v in degree p becomes one atom of the
    sign-normalized class of ``m * v`` in degree p (index 0) or
    p + 1 (index 1), keeping its label.
    """
    out = []
    for p, atom in x.pairs():
        r_new, d_new = transform_rd(m, atom.cls.r, atom.cls.d)
        shift = wit_index(m, atom)
        if r_new < 0 or (r_new == 0 and d_new < 0):
            r_new, d_new = -r_new, -d_new
        out.append((p + shift, StableAtom(CurveClass(r_new, d_new), atom.label)))
    return GradedObject.from_pairs(out)


def wit_decompose(
    m: FMMatrix, x: GradedObject
) -> tuple[tuple[StableAtom, ...], tuple[StableAtom, ...]]:
    """Split a degree-zero object by transform index.

    Returns (index-0 atoms, index-1 atoms).  Raises DomainError when
    ``x`` is not concentrated in degree zero.  Every index-0 atom has
    slope strictly greater than every index-1 atom.
    """
    if not x.is_sheaf:
        raise DomainError(
            f"decomposition needs an object concentrated in degree 0, got degrees {list(x.degrees)}"
        )
    zeros, ones = [], []
    for _, atom in x.pairs():
        (zeros if wit_index(m, atom) == 0 else ones).append(atom)
    return (tuple(zeros), tuple(ones))


def parseval_check(m: FMMatrix, x: GradedObject, y: GradedObject) -> bool:
    """Transforms preserve graded Hom profiles; verify it on a pair."""
    before = hom_ext_objects(x, y)
    after = hom_ext_objects(fm_transform(m, x), fm_transform(m, y))
    return before == after
