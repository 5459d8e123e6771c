"""Orchestration: decide n, assemble certificates, run ranges.

The method order is cost-ascending: exact witness search, easy-curve rank-0
elimination, then per descent triple the Mordell-form shortcut, prime-power
local obstructions, hard-curve rank-0, Pythagorean descent, the Mordell-Weil
sieve, and finally the Gaussian factorization case split.  NotRepresentable
is emitted only when every triple is eliminated; anything less is Undecided
(a value, not an error).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import certificates as C
from .arith import fourth_power_free, is_prime
from .curves import rank0_eliminate
from .descent import OctalEquation, mordell_filter, reduce_to_triples
from .gaussian import decide_gaussian
from .localsolve import obstruct_mod_prime_power, octal_diagonal_form
from .pythag import pythag_eliminate
from .sieve import find_sieve_certificate
from .witness import Witness, find_witness, verify_witness


@dataclass(frozen=True)
class Config:
    height: int = 250
    local_prime_cap: int = 13
    local_k_max_p2: int = 4
    local_k_max_odd: int = 2
    padic_depth: int | None = None  # None = engine defaults (12 for p=2, 6 odd)
    sieve_prime_cap: int = 229
    gen_search_num_bound: int = 10000
    gen_search_den_bound: int = 10
    gaussian_primes: tuple[int, ...] = (2, 3, 5, 7, 11, 13, 17)
    generator_file: str | None = None

    def local_primes(self) -> list[int]:
        return [p for p in range(2, self.local_prime_cap + 1) if is_prime(p)]

    def snapshot(self) -> dict:
        return {
            "height": self.height,
            "local_prime_cap": self.local_prime_cap,
            "local_k_max_p2": self.local_k_max_p2,
            "local_k_max_odd": self.local_k_max_odd,
            "padic_depth": self.padic_depth,
            "sieve_prime_cap": self.sieve_prime_cap,
            "gen_search_num_bound": self.gen_search_num_bound,
            "gen_search_den_bound": self.gen_search_den_bound,
            "gaussian_primes": list(self.gaussian_primes),
            "generator_file": self.generator_file,
        }


DEFAULT_CONFIG = Config()


@dataclass(frozen=True)
class Outcome:
    """Representable(witness) | NotRepresentable(certificate) | Undecided."""

    n: int
    status: str  # "representable" | "not-representable" | "undecided"
    witness: Witness | None
    certificate: dict

    @property
    def decided(self) -> bool:
        return self.status != "undecided"


def load_generator_file(path: str) -> dict[int, list]:
    """Parse a generator file, one curve per line:

        A  X1 Y1 Z1  X2 Y2 Z2 ...

    A is the coefficient of y^2 = x^3 + A x; each (X, Y, Z) is a projective
    integer point.  '#' starts a comment; blank lines are skipped; the
    identity (0 : 1 : 0) may be listed and is ignored."""
    from fractions import Fraction

    table: dict[int, list] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            toks = [int(t) for t in line.split()]
            if len(toks) % 3 != 1:
                raise ValueError(f"{path}:{lineno}: expected A followed by X Y Z triples")
            A, rest = toks[0], toks[1:]
            pts = []
            for i in range(0, len(rest), 3):
                X, Y, Z = rest[i : i + 3]
                if Z == 0:
                    continue
                pts.append((Fraction(X, Z), Fraction(Y, Z)))
            table[A] = pts
    return table


def solve(n: int, config: Config = DEFAULT_CONFIG) -> Outcome:
    """Decide whether n is a difference of two nonzero rational fourth powers."""
    if n < 1:
        raise ValueError("n must be positive")
    decomp = fourth_power_free(n)
    n_prime = decomp.n_prime
    cert: dict = {
        "format": C.FORMAT,
        "n": n,
        "config": config.snapshot(),
        "reduction": {"k": decomp.k, "n_prime": n_prime},
    }

    w = find_witness(n_prime, config.height)
    if w is not None:
        lifted = _lift_witness(w, decomp.k, n)
        cert["outcome"] = "representable"
        cert["witness"] = {"x": lifted.x, "y": lifted.y, "z": lifted.z}
        return Outcome(n, "representable", lifted, cert)

    easy = rank0_eliminate(n=n_prime, depth=config.padic_depth)
    if easy is not None:
        cert["outcome"] = "not-representable"
        cert["easy_rank0"] = _rank0_json(easy, n_prime=n_prime)
        cert["triples"] = []
        return Outcome(n, "not-representable", None, cert)
    cert["easy_rank0"] = None

    generators = (
        load_generator_file(config.generator_file) if config.generator_file else None
    )

    triples = []
    undecided = 0
    for eq in reduce_to_triples(n_prime):
        entry = C.triple_json(eq)
        step = _eliminate_triple(eq, config, generators)
        entry["step"] = step
        if step is None:
            undecided += 1
        triples.append(entry)
    cert["triples"] = triples
    cert["outcome"] = "not-representable" if undecided == 0 else "undecided"
    status = cert["outcome"]
    return Outcome(n, status, None, cert)


def _lift_witness(w: Witness, k: int, n: int) -> Witness:
    """Turn a witness for n' into one for n = k^4 n' and re-normalize."""
    import math

    x, y, z = w.x * k, w.y * k, w.z
    g = math.gcd(math.gcd(x, y), z)
    lifted = Witness(x // g, y // g, z // g)
    assert verify_witness(n, lifted)
    return lifted


def _eliminate_triple(eq: OctalEquation, config: Config, generators) -> dict | None:
    mstep = mordell_filter(eq)
    if mstep is not None:
        return {
            "kind": "mordell-form",
            "kappa": mstep.kappa,
            "square_side": mstep.square_side,
            "beta": mstep.beta,
        }

    form = octal_diagonal_form(eq.a, eq.b, eq.c)
    for p in config.local_primes():
        k_max = config.local_k_max_p2 if p == 2 else config.local_k_max_odd
        obstruction = obstruct_mod_prime_power(form, p, k_max)
        if obstruction is not None:
            return {"kind": "local-obstruction", "p": obstruction.p, "k": obstruction.k}

    hard = rank0_eliminate(eq=eq, depth=config.padic_depth)
    if hard is not None:
        return _rank0_json(hard, eq=eq)

    pstep = pythag_eliminate(eq)
    if pstep is not None:
        return {"kind": "pythag", "rows": [list(r) for r in pstep.rows]}

    sstep = find_sieve_certificate(
        eq,
        prime_cap=config.sieve_prime_cap,
        search_num_bound=config.gen_search_num_bound,
        search_den_bound=config.gen_search_den_bound,
        external_generators=generators,
        depth=config.padic_depth,
    )
    if sstep is not None:
        return {
            "kind": "mw-sieve",
            "curve_kind": sstep.kind,
            "curve_A": sstep.curve_A,
            "p": sstep.p,
            "generators": [C._point_to_json(g) for g in sstep.generators],
            "generator_source": sstep.generator_source,
            "periods": list(sstep.periods),
            "subgroup": [list(t) for t in sstep.subgroup],
            "images": [list(t) for t in sstep.images],
            "conditional": True,
        }

    gstep = decide_gaussian(eq, config.gaussian_primes, config.padic_depth)
    if gstep is not None:
        return {
            "kind": "gaussian",
            "cases": [
                {
                    "alpha": [e.case.alpha.re, e.case.alpha.im],
                    "eps": e.case.epsilon,
                    "F": list(e.system.f_coeffs),
                    "G": list(e.system.g_coeffs),
                    "mechanism": e.mechanism,
                    "p": e.p,
                    "level": e.level,
                    "constraints": list(e.constraints),
                }
                for e in gstep.cases
            ],
        }
    return None


def _rank0_json(step, n_prime: int | None = None, eq: OctalEquation | None = None) -> dict:
    from .curves import Curve, rank_descent_data

    curve = Curve(step.A)
    _, r1, r2 = rank_descent_data(curve)
    return {
        "kind": "hard-rank0" if eq is not None else "easy-rank0",
        "curve_kind": step.kind,
        "A": step.A,
        "descent": {
            "1": [
                {"d": t.d, "counted": t.counted, "reason": t.reason}
                for t in r1.torsors
            ],
            "2": [
                {"d": t.d, "counted": t.counted, "reason": t.reason}
                for t in r2.torsors
            ],
        },
        "torsion": [C._point_to_json(p) for p in step.torsion],
    }


@dataclass
class RangeSummary:
    lo: int
    hi: int
    representable: list[int] = field(default_factory=list)
    not_representable: list[int] = field(default_factory=list)
    undecided: list[int] = field(default_factory=list)
    mechanisms: dict = field(default_factory=dict)

    def as_json(self) -> dict:
        return {
            "lo": self.lo,
            "hi": self.hi,
            "representable": self.representable,
            "not_representable": self.not_representable,
            "undecided": self.undecided,
            "mechanisms": self.mechanisms,
        }


def run_range(
    lo: int,
    hi: int,
    config: Config = DEFAULT_CONFIG,
    include_fourth_powers: bool = False,
    progress=None,
) -> tuple[RangeSummary, dict[int, Outcome]]:
    """Per-n outcomes over [lo, hi] plus a mechanism summary.

    Representable here means representable as a difference of two *nonzero*
    fourth powers; with include_fourth_powers, perfect fourth powers n = k^4
    are added to the representable list (k^4 = k^4 - 0^4).
    """
    if not (1 <= lo <= hi):
        raise ValueError("need 1 <= lo <= hi")
    summary = RangeSummary(lo, hi)
    outcomes: dict[int, Outcome] = {}
    for n in range(lo, hi + 1):
        out = solve(n, config)
        outcomes[n] = out
        if out.status == "representable":
            summary.representable.append(n)
        elif out.status == "not-representable":
            summary.not_representable.append(n)
            if include_fourth_powers and _is_fourth_power_int(n):
                summary.representable.append(n)
        else:
            summary.undecided.append(n)
        for mech in _mechanisms_of(out.certificate):
            summary.mechanisms[mech] = summary.mechanisms.get(mech, 0) + 1
        if progress is not None:
            progress(n, out)
    return summary, outcomes


def _is_fourth_power_int(n: int) -> bool:
    from .arith import is_fourth_power

    return is_fourth_power(n) is not None


def _mechanisms_of(cert: dict) -> list[str]:
    if cert["outcome"] == "representable":
        return ["witness"]
    if cert.get("easy_rank0") is not None:
        return ["easy-rank0"]
    mechs = []
    for t in cert.get("triples", []):
        step = t.get("step")
        mechs.append(step["kind"] if step else "undecided")
    return mechs
