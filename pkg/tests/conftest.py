"""Shared helpers: random generators for valid inputs and a CLI runner."""

from __future__ import annotations

import math
import subprocess
import sys

from ellfm import CurveClass, FMMatrix, GradedObject, StableAtom


def random_matrix(rng) -> FMMatrix:
    """A uniformly scruffy valid transform matrix.

    Picks coprime (a, c), completes to determinant one by a modular
    inverse, then slides along the solution family (b, d) ->
    (b + a*j, d + c*j) to vary the remaining entries.
    """
    while True:
        a = rng.randint(1, 12)
        c = rng.randint(-12, 12)
        if math.gcd(a, c) == 1:
            break
    b0 = pow(c, -1, a) if a > 1 else 0
    d0 = (c * b0 - 1) // a
    j = rng.randint(-6, 6)
    return FMMatrix(c=c, a=a, d=d0 + c * j, b=b0 + a * j)


def random_atom(rng) -> StableAtom:
    """A valid stable atom: mostly bundles, occasionally a skyscraper."""
    if rng.random() < 0.15:
        return StableAtom(CurveClass(0, 1), rng.choice(["", "p", "q"]))
    while True:
        r = rng.randint(1, 6)
        d = rng.randint(-6, 6)
        if math.gcd(r, d) == 1:
            return StableAtom(CurveClass(r, d), rng.choice(["", "u", "v", "w"]))


def random_object(rng, max_atoms: int = 4) -> GradedObject:
    pairs = [
        (rng.randint(-2, 2), random_atom(rng))
        for _ in range(rng.randint(0, max_atoms))
    ]
    return GradedObject.from_pairs(pairs)


def run_cli(args: list[str]) -> subprocess.CompletedProcess:
    """Run the installed CLI in a subprocess, capturing text output."""
    return subprocess.run(
        [sys.executable, "-m", "ellfm", *args],
        capture_output=True,
        text=True,
    )
