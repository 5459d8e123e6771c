"""Elliptic curve machinery for curves y^2 = x^3 + Ax + B over Q and F_p.

Provides the chord-tangent group law (same formulas in both coefficient
domains), reduction mod p, Lutz-Nagell torsion computation, and a rank upper
bound for the B = 0 family by descent via the 2-isogeny with kernel (0, 0):
the torsors are N^2 = d M^4 + (A/d) e^4 for squarefree d | A, counted on the
curve and on its 2-isogenous partner y^2 = x^3 - 4A x.  The bound only ever
over-estimates the rank, so rank-0 conclusions drawn from it are sound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .arith import (
    factorize,
    is_square,
    rational_kth_root,
    rational_square_root,
    squarefree_divisors,
)
from .localsolve import LocalVerdict, Verdict, torsor_locally_soluble

# Affine points are (x, y) pairs (Fraction over Q, int over F_p); the point
# at infinity is None.
INFINITY = None


@dataclass(frozen=True)
class Curve:
    """y^2 = x^3 + A x + B with nonzero discriminant."""

    A: int
    B: int = 0

    def __post_init__(self):
        if self.discriminant == 0:
            raise ValueError("singular curve")

    @property
    def discriminant(self) -> int:
        return 4 * self.A**3 + 27 * self.B**2

    def contains(self, point, p: int | None = None) -> bool:
        if point is INFINITY:
            return True
        x, y = point
        lhs = y * y
        rhs = x**3 + self.A * x + self.B
        if p is None:
            return lhs == rhs
        return (lhs - rhs) % p == 0

    def good_prime(self, p: int) -> bool:
        return self.discriminant % p != 0


@dataclass(frozen=True)
class ProjPoint:
    """Projective point (X : Y : Z), over Q (integers, gcd 1) or F_p."""

    X: int
    Y: int
    Z: int

    def is_zero_triple(self) -> bool:
        return self.X == 0 and self.Y == 0 and self.Z == 0

    def normalized_mod_p(self, p: int) -> "ProjPoint":
        x, y, z = self.X % p, self.Y % p, self.Z % p
        if z:
            inv = pow(z, p - 2, p)
            return ProjPoint(x * inv % p, y * inv % p, 1)
        if y:
            inv = pow(y, p - 2, p)
            return ProjPoint(x * inv % p, 1, 0)
        if x:
            return ProjPoint(1, 0, 0)
        return ProjPoint(0, 0, 0)

    def to_affine(self, p: int | None = None):
        """Affine (x, y) or INFINITY; over Q returns Fractions."""
        if p is not None:
            q = self.normalized_mod_p(p)
            if q.Z == 0:
                return INFINITY
            return (q.X, q.Y)
        if self.Z == 0:
            return INFINITY
        return (Fraction(self.X, self.Z), Fraction(self.Y, self.Z))


def proj_from_affine(point) -> ProjPoint:
    """Integer projective coordinates of a rational affine point."""
    if point is INFINITY:
        return ProjPoint(0, 1, 0)
    x, y = point
    x, y = Fraction(x), Fraction(y)
    den = math.lcm(x.denominator, y.denominator)
    return ProjPoint(
        int(x * den), int(y * den), den
    )


def group_law(curve: Curve, P, Q, p: int | None = None):
    """Chord-tangent addition over Q (p=None) or F_p (good reduction).

    All the degenerate branches (equal x-coordinates, tangent at a
    2-torsion point) resolve to the identity; no division by zero escapes.
    """
    if P is INFINITY:
        return Q
    if Q is INFINITY:
        return P
    x1, y1 = P
    x2, y2 = Q

    if p is None:
        x1, y1, x2, y2 = Fraction(x1), Fraction(y1), Fraction(x2), Fraction(y2)
        if x1 == x2:
            if y1 + y2 == 0:
                return INFINITY
            lam = (3 * x1 * x1 + curve.A) / (2 * y1)
        else:
            lam = (y2 - y1) / (x2 - x1)
        x3 = lam * lam - x1 - x2
        y3 = lam * (x1 - x3) - y1
        return (x3, y3)

    x1, y1, x2, y2 = x1 % p, y1 % p, x2 % p, y2 % p
    if x1 == x2:
        if (y1 + y2) % p == 0:
            return INFINITY
        lam = (3 * x1 * x1 + curve.A) * pow(2 * y1, p - 2, p) % p
    else:
        lam = (y2 - y1) * pow(x2 - x1, p - 2, p) % p
    x3 = (lam * lam - x1 - x2) % p
    y3 = (lam * (x1 - x3) - y1) % p
    return (x3, y3)


def negate(point, p: int | None = None):
    if point is INFINITY:
        return INFINITY
    x, y = point
    if p is None:
        return (x, -y)
    return (x, (-y) % p)


def scalar_mul(curve: Curve, k: int, P, p: int | None = None):
    """k*P by double-and-add (exact over Q, modular over F_p)."""
    if k < 0:
        return scalar_mul(curve, -k, negate(P, p), p)
    result = INFINITY
    addend = P
    while k:
        if k & 1:
            result = group_law(curve, result, addend, p)
        addend = group_law(curve, addend, addend, p)
        k >>= 1
    return result


def reduce_mod_p(point, p: int):
    """Reduction of a rational point to E(F_p) (good reduction assumed)."""
    return proj_from_affine(point).to_affine(p)


def point_order(curve: Curve, P, p: int, cap: int | None = None) -> int:
    """Order of P in E(F_p) by iterated addition (fine at sieve scale)."""
    if cap is None:
        cap = p + 1 + 2 * math.isqrt(p) + 1
    acc = P
    for k in range(1, cap + 1):
        if acc is INFINITY:
            return k
        acc = group_law(curve, acc, P, p)
    raise ArithmeticError("order exceeds Hasse bound; bad reduction?")


def count_points_mod_p(curve: Curve, p: int) -> int:
    """#E(F_p) by direct summation of Legendre symbols."""
    total = p + 1
    for x in range(p):
        rhs = (x**3 + curve.A * x + curve.B) % p
        if rhs == 0:
            continue
        total += 1 if pow(rhs, (p - 1) // 2, p) == 1 else -1
    return total


# ---------------------------------------------------------------------------
# Torsion (curves y^2 = x^3 + Ax)
# ---------------------------------------------------------------------------


def _integer_roots_cubic_shift(A: int, target: int) -> list[int]:
    """Integer x with x^3 + A*x = target, by search on monotone branches."""

    def f(x: int) -> int:
        return x**3 + A * x

    # outer bound: |x| <= B makes |f| exceed |target| outside the pieces
    B = 1 << ((abs(target) + abs(A) + 2).bit_length() // 3 + 2)
    if A >= 0:
        pieces = [(-B, B)]
    else:
        crit = math.isqrt(-A // 3) + 1
        B = max(B, crit + 1)
        pieces = [(-B, -crit), (-crit, crit), (crit, B)]
    roots = []
    for lo, hi in pieces:
        if lo > hi:
            continue
        increasing = f(hi) >= f(lo)
        a, b = lo, hi
        while a <= b:
            mid = (a + b) // 2
            val = f(mid)
            if val == target:
                roots.append(mid)
                break
            if (val < target) == increasing:
                a = mid + 1
            else:
                b = mid - 1
    return sorted(set(r for r in roots if f(r) == target))


def torsion_subgroup(curve: Curve) -> list:
    """All torsion points of y^2 = x^3 + Ax (B = 0), identity included.

    Lutz-Nagell candidates (y = 0 or y^2 | 64 A^3) are screened against the
    group-order gcd from two good reductions, then certified by checking the
    order directly (torsion order divides 12 by Mazur; here it is 1, 2 or 4).
    """
    if curve.B != 0:
        raise NotImplementedError("torsion computed only for B = 0 curves")
    A = curve.A
    points = [INFINITY, (Fraction(0), Fraction(0))]
    r = is_square(-A)
    if r is not None and r > 0:
        points += [(Fraction(r), Fraction(0)), (Fraction(-r), Fraction(0))]

    # order bound from two good primes
    bound = 0
    good = []
    p = 3
    while len(good) < 2:
        if A % p != 0:
            good.append(p)
            bound = math.gcd(bound, count_points_mod_p(curve, p))
        p += 2
        while not _is_small_prime(p):
            p += 2

    # candidates with y != 0: y^2 | 64 A^3
    for y in _square_divisor_roots_of_disc(A):
        for x in _integer_roots_cubic_shift(A, y * y):
            cand = (Fraction(x), Fraction(y))
            for pt in (cand, (Fraction(x), Fraction(-y))):
                if pt in points:
                    continue
                if _order_at_most(curve, pt, 12):
                    points.append(pt)

    assert bound % len(points) == 0, "torsion order must divide both reductions"
    return points


def _is_small_prime(p: int) -> bool:
    if p < 2:
        return False
    for q in range(2, math.isqrt(p) + 1):
        if p % q == 0:
            return False
    return True


def _square_divisor_roots_of_disc(A: int) -> list[int]:
    """All y > 0 with y^2 | 64*A^3, factoring A rather than A^3."""
    exps = {2: 6}
    for p, e in factorize(abs(A)):
        exps[p] = exps.get(p, 0) + 3 * e
    roots = [1]
    for p, e in exps.items():
        roots = [r * p**i for r in roots for i in range(e // 2 + 1)]
    return sorted(set(roots))


def _order_at_most(curve: Curve, P, cap: int) -> bool:
    acc = P
    for _ in range(cap):
        if acc is INFINITY:
            return True
        acc = group_law(curve, acc, P)
    return False


# ---------------------------------------------------------------------------
# Rank upper bound by descent via 2-isogeny (curves y^2 = x^3 + Kx)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TorsorReport:
    """Local data for one torsor N^2 = d M^4 + (K/d) e^4."""

    d: int
    g: int
    counted: bool
    reason: str  # "real-insoluble", "insoluble@p", "locally-soluble", "unknown@p"


@dataclass(frozen=True)
class DescentReport:
    K: int
    torsors: tuple[TorsorReport, ...]

    @property
    def selmer_count(self) -> int:
        return sum(1 for t in self.torsors if t.counted)


def _ceil_log2(n: int) -> int:
    return (n - 1).bit_length()


def descent_report(K: int, depth: int | None = None) -> DescentReport:
    """Count everywhere-locally-soluble torsors N^2 = d M^4 + (K/d) e^4.

    d runs over signed squarefree divisors of K.  Good odd primes not
    dividing 2K never obstruct (smooth genus-1 curves have F_p points), so
    only p | 2K and the real place are checked.  Unknown local verdicts count
    as soluble: the resulting rank bound can only grow, staying sound.
    """
    reports = []
    bad_primes = [2] + [p for p, _ in factorize(abs(K)) if p != 2]
    for d0 in squarefree_divisors(abs(K)):
        for d in (d0, -d0):
            g = K // d
            if d * g != K:
                continue
            if d < 0 and g < 0:
                reports.append(TorsorReport(d, g, False, "real-insoluble"))
                continue
            counted = True
            reason = "locally-soluble"
            for p in bad_primes:
                verdict = torsor_locally_soluble(d, g, p, depth)
                if verdict.verdict is Verdict.INSOLUBLE:
                    counted = False
                    reason = f"insoluble@{p}"
                    break
                if verdict.verdict is Verdict.UNKNOWN:
                    reason = f"unknown@{p}"
            reports.append(TorsorReport(d, g, counted, reason))
    return DescentReport(K, tuple(reports))


def rank_upper_bound(curve: Curve, depth: int | None = None) -> int:
    """Upper bound for the rank of y^2 = x^3 + Kx.

    log2(s) + log2(s') - 2 where s, s' count locally soluble torsors for K
    and for the 2-isogenous coefficient -4K.
    """
    if curve.B != 0 or curve.A == 0:
        raise ValueError("descent requires y^2 = x^3 + Kx with K != 0")
    r1 = descent_report(curve.A, depth)
    r2 = descent_report(-4 * curve.A, depth)
    bound = _ceil_log2(r1.selmer_count) + _ceil_log2(r2.selmer_count) - 2
    return max(bound, 0)


def rank_descent_data(curve: Curve, depth: int | None = None):
    """(bound, report_K, report_-4K) for certificate assembly."""
    r1 = descent_report(curve.A, depth)
    r2 = descent_report(-4 * curve.A, depth)
    bound = max(_ceil_log2(r1.selmer_count) + _ceil_log2(r2.selmer_count) - 2, 0)
    return bound, r1, r2


# ---------------------------------------------------------------------------
# Rational point search (generators for the Mordell-Weil sieve)
# ---------------------------------------------------------------------------


def search_rational_points(
    A: int, num_bound: int = 10000, den_bound: int = 10
) -> list[tuple[Fraction, Fraction]]:
    """Points on y^2 = x^3 + Ax with x = m/d^2, |m| <= num_bound, d <= den_bound.

    Returns one representative per x with y > 0 (the negative is implied).
    """
    found = []
    for d in range(1, den_bound + 1):
        d4 = d**4
        for m in range(-num_bound, num_bound + 1):
            if m == 0 or math.gcd(m, d) != 1:
                continue
            rhs = m**3 + A * m * d4
            if rhs <= 0:
                continue
            y2 = is_square(rhs)
            if y2 is None:
                continue
            found.append((Fraction(m, d * d), Fraction(y2, d**3)))
    return found


def infinite_order_points(curve: Curve, points) -> list:
    """Filter a point list down to points of infinite order, deduplicated by
    x-coordinate (P and -P carry the same information for the sieve)."""
    out = []
    seen_x = set()
    for pt in points:
        if pt is INFINITY or pt[0] in seen_x:
            continue
        if _order_at_most(curve, pt, 12):
            continue
        seen_x.add(pt[0])
        out.append(pt)
    return out


# ---------------------------------------------------------------------------
# The six curve maps
# ---------------------------------------------------------------------------

EASY_KINDS = ("easy-i", "easy-ii", "easy-iii")
HARD_KINDS = ("hard-i", "hard-ii", "hard-iii")


@dataclass(frozen=True)
class CurveMap:
    """One of the six solution-to-curve maps.

    easy-i:   (x,y,z) -> (y^2/z^2,  x^2 y/z^3)        on  Y^2 = X^3 + nX
    easy-ii:  (x,y,z) -> (x^2/z^2,  x y^2/z^3)        on  Y^2 = X^3 - nX
    easy-iii: (x,y,z) -> (n x^2/y^2, n^2 x z^2/y^3)   on  Y^2 = X^3 - n^2 X
    hard-i:   (u,v,w) -> (b^2 c v^4/u^4,  b^2 c^2 v^2 w^2/u^6)  on  A = a^2 b^2 c^2
    hard-ii:  (u,v,w) -> (b^2 c w^2/u^4,  b^4 c v^4 w/u^6)      on  A = -a^2 b^4 c
    hard-iii: (u,v,w) -> (-a^2 b^2 v^4/w^2, a^4 b^2 u^4 v^2/w^3) on A = -a^4 b^2 c
    """

    kind: str
    n: int | None = None
    abc: tuple[int, int, int] | None = None

    def curve(self) -> Curve:
        if self.kind == "easy-i":
            return Curve(self.n)
        if self.kind == "easy-ii":
            return Curve(-self.n)
        if self.kind == "easy-iii":
            return Curve(-self.n**2)
        a, b, c = self.abc
        if self.kind == "hard-i":
            return Curve(a * a * b * b * c * c)
        if self.kind == "hard-ii":
            return Curve(-(a * a) * b**4 * c)
        if self.kind == "hard-iii":
            return Curve(-(a**4) * b * b * c)
        raise ValueError(f"unknown map kind {self.kind}")


def build_curves(*, n: int | None = None, abc: tuple[int, int, int] | None = None):
    """The three easy curves for n (A = -n^2, -n, n in that order), or the
    three hard curves for (a, b, c)."""
    if (n is None) == (abc is None):
        raise ValueError("give exactly one of n, abc")
    kinds = ("easy-iii", "easy-ii", "easy-i") if n is not None else HARD_KINDS
    maps = [CurveMap(kind, n=n, abc=abc) for kind in kinds]
    return [(m, m.curve()) for m in maps]


def map_solution(cmap: CurveMap, triple, p: int | None = None) -> ProjPoint | None:
    """Image of a solution tuple as a projective point; None if degenerate.

    Over F_p the result is reduced and canonically normalized; degenerate
    means the cleared-denominator triple is (0, 0, 0).
    """
    if cmap.kind.startswith("easy"):
        x, y, z = triple
        n = cmap.n
        if cmap.kind == "easy-i":
            pt = ProjPoint(y * y * z, x * x * y, z**3)
        elif cmap.kind == "easy-ii":
            pt = ProjPoint(x * x * z, x * y * y, z**3)
        else:
            pt = ProjPoint(n * x * x * y, n * n * x * z * z, y**3)
    else:
        u, v, w = triple
        a, b, c = cmap.abc
        if cmap.kind == "hard-i":
            pt = ProjPoint(b * b * c * v**4 * u * u, b * b * c * c * v * v * w * w, u**6)
        elif cmap.kind == "hard-ii":
            pt = ProjPoint(b * b * c * w * w * u * u, b**4 * c * v**4 * w, u**6)
        else:
            pt = ProjPoint(-(a * a) * b * b * v**4 * w, a**4 * b * b * u**4 * v * v, w**3)
    if p is not None:
        pt = ProjPoint(pt.X % p, pt.Y % p, pt.Z % p)
        if pt.is_zero_triple():
            return None
        return pt.normalized_mod_p(p)
    if pt.is_zero_triple():
        return None
    return pt


def map_preimage_nondegenerate(cmap: CurveMap, point) -> bool:
    """Does an affine rational point pull back to a solution with all
    variables nonzero?  Exact rational root tests, both square-root signs."""
    if point is INFINITY:
        return False
    X, Y = Fraction(point[0]), Fraction(point[1])
    if X == 0 or Y == 0:
        return False

    def sq(q: Fraction):
        root = rational_square_root(q.numerator, q.denominator)
        return None if root is None else Fraction(root[0], root[1])

    def fourth(q: Fraction):
        root = rational_kth_root(q.numerator, q.denominator, 4)
        return None if root is None else Fraction(root[0], root[1])

    if cmap.kind == "easy-i":
        qr = sq(X)
        if qr is None or qr == 0:
            return False
        return any(sq(Y / q) not in (None, Fraction(0)) for q in (qr, -qr))
    if cmap.kind == "easy-ii":
        pr = sq(X)
        if pr is None or pr == 0:
            return False
        return any(sq(Y / q) not in (None, Fraction(0)) for q in (pr, -pr))
    if cmap.kind == "easy-iii":
        n = cmap.n
        rr = sq(X / n)
        if rr is None or rr == 0:
            return False
        return any(sq(Y / (n * n * r)) not in (None, Fraction(0)) for r in (rr, -rr))

    a, b, c = cmap.abc
    if cmap.kind == "hard-i":
        rho = fourth(X / (b * b * c))
        if rho is None or rho == 0:
            return False
        return sq(Y / (b * b * c * c * rho * rho)) not in (None, Fraction(0))
    if cmap.kind == "hard-ii":
        tau = sq(X / (b * b * c))
        if tau is None or tau == 0:
            return False
        return any(
            fourth(Y / (b**4 * c * t)) not in (None, Fraction(0)) for t in (tau, -tau)
        )
    if cmap.kind == "hard-iii":
        kappa = sq(-X / (a * a * b * b))
        if kappa is None or kappa == 0:
            return False
        return any(
            fourth(Y / (a**4 * b * b * k**3)) not in (None, Fraction(0))
            for k in (kappa, -kappa)
        )
    raise ValueError(f"unknown map kind {cmap.kind}")


@dataclass(frozen=True)
class Rank0Step:
    """Elimination through a rank-0 curve: no torsion point is the image of a
    solution tuple with all variables nonzero."""

    kind: str
    A: int
    bound: int
    selmer_counts: tuple[int, int]
    torsion: tuple
    source: str  # "n=..." or "triple=(a,b,c)"


def rank0_eliminate(*, n: int | None = None, eq=None, depth: int | None = None) -> Rank0Step | None:
    """Try to eliminate n (easy curves) or an octal equation (hard curves)
    through a curve of rank bound 0 whose torsion has no usable preimage."""
    if eq is not None:
        pairs = build_curves(abc=(eq.a, eq.b, eq.c))
        source = f"triple=({eq.a},{eq.b},{eq.c})"
    else:
        pairs = build_curves(n=n)
        source = f"n={n}"
    for cmap, curve in pairs:
        bound, r1, r2 = rank_descent_data(curve, depth)
        if bound != 0:
            continue
        torsion = torsion_subgroup(curve)
        if any(
            pt is not INFINITY
            and pt[0] != 0
            and pt[1] != 0
            and map_preimage_nondegenerate(cmap, pt)
            for pt in torsion
        ):
            continue
        return Rank0Step(
            cmap.kind,
            curve.A,
            bound,
            (r1.selmer_count, r2.selmer_count),
            tuple(torsion),
            source,
        )
    return None
