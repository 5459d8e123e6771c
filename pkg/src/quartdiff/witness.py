"""Bounded search for primitive integer points on x**4 - y**4 = n*z**4."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .arith import is_kth_power


@dataclass(frozen=True)
class Witness:
    """A primitive positive solution of x**4 - y**4 = n*z**4 with x*y*z != 0."""

    x: int
    y: int
    z: int

    def as_rational_form(self, n: int) -> str:
        return f"({self.x}/{self.z})^4 - ({self.y}/{self.z})^4 = {n}"


def verify_witness(n: int, w: Witness) -> bool:
    """Exact check of all witness invariants for n."""
    if w.x <= 0 or w.y <= 0 or w.z <= 0:
        return False
    if math.gcd(math.gcd(w.x, w.y), w.z) != 1:
        return False
    return w.x**4 - w.y**4 == n * w.z**4


def find_witness(n: int, height: int = 250) -> Witness | None:
    """Smallest primitive witness with max(x, y, z) <= height, if any.

    Iterates coprime (y, z) grids testing whether n*z**4 + y**4 is a fourth
    power; ties broken by minimal z, then minimal y.  A None result only
    means "nothing within the bound", never a proof of insolubility.
    """
    if n < 1 or height < 1:
        raise ValueError("need n >= 1 and height >= 1")
    limit4 = height**4
    for z in range(1, height + 1):
        nz4 = n * z**4
        if nz4 + 1 > limit4:
            break
        for y in range(1, height + 1):
            total = nz4 + y**4
            if total > limit4:
                break
            if math.gcd(y, z) != 1:
                continue
            x = is_kth_power(total, 4)
            if x is not None:
                w = Witness(x, y, z)  # gcd(y, z) = 1 makes it primitive
                assert verify_witness(n, w)
                return w
    return None
