"""Bundled fixture tables (plain whitespace-separated text).

known_representations.txt  n x y z with x^4 - y^4 = n z^4
pythag_table.txt           rows of the Pythagorean-descent details
outputted_equations.txt    octal equations the curve methods leave open
residual_equations.txt     the subset also left open by the descent method
gaussian_cases.txt         per-case data of the Z[i] factorization method
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib.resources import files


def _rows(name: str) -> list[list[str]]:
    out = []
    for line in files(__package__).joinpath(name).read_text().splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            out.append(line.split())
    return out


def known_representations() -> dict[int, tuple[int, int, int]]:
    """n -> (x, y, z) primitive witness, for every known representable n <= 10000."""
    return {int(n): (int(x), int(y), int(z)) for n, x, y, z in _rows("known_representations.txt")}


@dataclass(frozen=True)
class PythagRow:
    n: int
    a2: int
    b2: int
    c: int
    d: int
    e: int
    modulus: int


def pythag_rows() -> list[PythagRow]:
    return [PythagRow(*map(int, r)) for r in _rows("pythag_table.txt")]


def open_equations(residual_only: bool = False) -> list[tuple[int, int, int, int]]:
    """(n, a2, b2, c) rows of the equations the curve methods leave open."""
    name = "residual_equations.txt" if residual_only else "outputted_equations.txt"
    return [tuple(map(int, r)) for r in _rows(name)]


@dataclass(frozen=True)
class GaussianCaseRow:
    n: int
    a: int
    b: int
    c: int
    seq: int
    alpha: tuple[int, int]
    eps: int
    f_coeffs: tuple[int, ...]
    g_coeffs: tuple[int, ...]
    mechanism: str  # "scheme" | "classical" | "constrained"
    p: int


def gaussian_case_rows() -> list[GaussianCaseRow]:
    out = []
    for r in _rows("gaussian_cases.txt"):
        out.append(
            GaussianCaseRow(
                n=int(r[0]),
                a=int(r[1]),
                b=int(r[2]),
                c=int(r[3]),
                seq=int(r[4]),
                alpha=(int(r[5]), int(r[6])),
                eps=int(r[7]),
                f_coeffs=tuple(map(int, r[8:13])),
                g_coeffs=tuple(map(int, r[13:18])),
                mechanism=r[18],
                p=int(r[19]),
            )
        )
    return out
