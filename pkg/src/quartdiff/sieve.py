"""The Mordell-Weil sieve for octal equations.

Reduction mod p is a homomorphism on points with good reduction, so the
subgroup of E(F_p) generated by the reductions of a (conjecturally complete)
Mordell-Weil generating set contains the reduction of every rational point.
If no mod-p image of a local solution of a^2 u^8 + b^2 v^8 = c w^4 lands in
that subgroup, the equation has no solutions at all.  The conclusion is
conditional on the generator list being complete, and certificates carry
that flag explicitly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .curves import (
    INFINITY,
    Curve,
    CurveMap,
    ProjPoint,
    build_curves,
    group_law,
    infinite_order_points,
    map_solution,
    point_order,
    rank_descent_data,
    reduce_mod_p,
    search_rational_points,
    torsion_subgroup,
)
from .arith import is_prime
from .descent import OctalEquation


@dataclass(frozen=True)
class SieveData:
    """Curve, rational generators, and their orders in E(F_p)."""

    curve: Curve
    generators: tuple  # affine rational points
    p: int
    periods: tuple[int, ...]

    def __post_init__(self):
        assert self.curve.good_prime(self.p), "sieve prime must be good"
        for g in self.generators:
            assert self.curve.contains(g), "generator not on curve"


def make_sieve_data(curve: Curve, generators, p: int) -> SieveData:
    """Compute the periods of the reduced generators."""
    periods = tuple(
        point_order(curve, reduce_mod_p(g, p), p) if reduce_mod_p(g, p) is not INFINITY else 1
        for g in generators
    )
    return SieveData(curve, tuple(generators), p, periods)


def subgroup_mod_p(data: SieveData) -> set[ProjPoint]:
    """{sum k_i * psi(P_i) : 0 <= k_i < T_i} as canonical projective points."""
    curve, p = data.curve, data.p
    reduced = [reduce_mod_p(g, p) for g in data.generators]
    points = set()
    for combo in product(*(range(t) for t in data.periods)):
        acc = INFINITY
        for k, g in zip(combo, reduced):
            acc = group_law(curve, acc, _scalar_mod_p(curve, k, g, p), p)
        points.add(_to_proj(acc, p))
    return points


def _scalar_mod_p(curve: Curve, k: int, P, p: int):
    result = INFINITY
    addend = P
    while k:
        if k & 1:
            result = group_law(curve, result, addend, p)
        addend = group_law(curve, addend, addend, p)
        k >>= 1
    return result


def _to_proj(point, p: int) -> ProjPoint:
    if point is INFINITY:
        return ProjPoint(0, 1, 0)
    return ProjPoint(point[0] % p, point[1] % p, 1)


def local_images(eq: OctalEquation, cmap: CurveMap, p: int) -> set[ProjPoint]:
    """Images mod p of all solutions of the octal equation.

    Requires p coprime to 2abc.  Degenerate tuples whose cleared-denominator
    image is (0, 0, 0) are excluded; tuples reducing to the identity (e.g.
    u = 0 for the hard-i map) legitimately contribute (0 : 1 : 0).
    """
    a, b, c = eq.a, eq.b, eq.c
    if (2 * a * b * c) % p == 0:
        raise ValueError("sieve prime must not divide 2abc")
    a2, b2 = a * a % p, b * b % p
    pow8 = [pow(x, 8, p) for x in range(p)]
    pow4 = [pow(x, 4, p) for x in range(p)]
    fourth_roots: dict[int, list[int]] = {}
    for w in range(p):
        fourth_roots.setdefault(c * pow4[w] % p, []).append(w)
    images: set[ProjPoint] = set()
    for u in range(p):
        for v in range(p):
            lhs = (a2 * pow8[u] + b2 * pow8[v]) % p
            for w in fourth_roots.get(lhs, ()):
                pt = map_solution(cmap, (u, v, w), p)
                if pt is not None:
                    images.add(pt)
    return images


@dataclass(frozen=True)
class SieveStep:
    """Certificate entry: empty intersection at prime p.

    conditional is always True: the conclusion assumes the generator list
    generates the full Mordell-Weil group.
    """

    equation: OctalEquation
    kind: str
    curve_A: int
    p: int
    generators: tuple
    generator_source: str
    periods: tuple[int, ...]
    subgroup: tuple
    images: tuple
    conditional: bool = True


def run_sieve(eq: OctalEquation, cmap: CurveMap, data: SieveData,
              generator_source: str = "search") -> SieveStep | None:
    """Emit a sieve step when the local images miss the generated subgroup."""
    sub = subgroup_mod_p(data)
    imgs = local_images(eq, cmap, data.p)
    if sub & imgs:
        return None
    return SieveStep(
        equation=eq,
        kind=cmap.kind,
        curve_A=data.curve.A,
        p=data.p,
        generators=tuple(data.generators),
        generator_source=generator_source,
        periods=data.periods,
        subgroup=tuple(sorted((q.X, q.Y, q.Z) for q in sub)),
        images=tuple(sorted((q.X, q.Y, q.Z) for q in imgs)),
    )


def good_sieve_primes(eq: OctalEquation, curve: Curve, cap: int = 229):
    """Odd primes p < cap with p coprime to 2abc and good reduction."""
    for p in range(3, cap, 2):
        if not is_prime(p):
            continue
        if (2 * eq.a * eq.b * eq.c) % p == 0:
            continue
        if not curve.good_prime(p):
            continue
        yield p


def find_sieve_certificate(
    eq: OctalEquation,
    prime_cap: int = 229,
    search_num_bound: int = 10000,
    search_den_bound: int = 10,
    external_generators: dict[int, list] | None = None,
    depth: int | None = None,
) -> SieveStep | None:
    """Try the sieve on each hard curve of the triple.

    Generators come from an external file (keyed by curve coefficient A) or
    from bounded rational point search.  The sieve only runs when the number
    of independent infinite-order generators matches the descent rank bound,
    so that generator completeness is at least plausible; the certificate is
    flagged conditional regardless.
    """
    for cmap, curve in build_curves(abc=(eq.a, eq.b, eq.c)):
        bound, _, _ = rank_descent_data(curve, depth)
        source = "search"
        if external_generators and curve.A in external_generators:
            free_gens = infinite_order_points(curve, external_generators[curve.A])
            source = "external-file"
        else:
            found = search_rational_points(curve.A, search_num_bound, search_den_bound)
            free_gens = infinite_order_points(curve, found)
        assert not (bound == 0 and free_gens), "infinite-order point on bound-0 curve"
        if bound == 0:
            continue  # rank-0 elimination handles this elsewhere
        if len(free_gens) < bound:
            continue  # cannot plausibly have a complete generating set
        free_gens = free_gens[:bound]
        torsion = torsion_subgroup(curve)
        torsion_gens = _torsion_generators(curve, torsion)
        gens = tuple(free_gens) + tuple(torsion_gens)
        for p in good_sieve_primes(eq, curve, prime_cap):
            data = make_sieve_data(curve, gens, p)
            step = run_sieve(eq, cmap, data, source)
            if step is not None:
                return step
    return None


def _torsion_generators(curve: Curve, torsion) -> list:
    """A minimal generating set of the torsion subgroup (order 1, 2 or 4)."""
    non_id = [pt for pt in torsion if pt is not INFINITY]
    if not non_id:
        return []
    order4 = [pt for pt in non_id if group_law(curve, pt, pt) is not INFINITY]
    if order4:
        return [order4[0]]  # cyclic of order 4
    if len(non_id) == 1:
        return [non_id[0]]
    # full 2-torsion: (0,0) plus one root point
    zero = next(pt for pt in non_id if pt[0] == 0)
    other = next(pt for pt in non_id if pt[0] != 0)
    return [zero, other]
