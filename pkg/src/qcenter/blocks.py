"""Linkage classes of simple u_q(sl3)-modules and the block count of the center.

Weights are pairs (a, b) in the fundamental-weight basis, reduced into the
box 0 <= a, b <= l-1.  The Weyl group S3 acts by the rho-shifted (dot)
action followed by coordinatewise reduction mod l.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cyclotomic import validate_order

__all__ = [
    "WEYL_GROUP",
    "OrbitRecord",
    "NonIntegralError",
    "dot_action",
    "orbits",
    "orbit_counts",
    "parabolic_weights",
    "center_dimension_formula",
    "solve_parabolic_dim",
    "blocks_report",
]

Matrix = tuple[tuple[int, int], tuple[int, int]]

S1: Matrix = ((-1, 0), (1, 1))
S2: Matrix = ((1, 1), (0, -1))
IDENTITY: Matrix = ((1, 0), (0, 1))
RHO = (1, 1)


def _matmul(x: Matrix, y: Matrix) -> Matrix:
    return tuple(
        tuple(sum(x[i][k] * y[k][j] for k in range(2)) for j in range(2)) for i in range(2)
    )  # type: ignore[return-value]


def _generate() -> dict[str, Matrix]:
    """All six elements of S3 as reduced words in s1, s2."""
    elems: dict[Matrix, str] = {IDENTITY: "e"}
    frontier = [IDENTITY]
    while frontier:
        nxt = []
        for m in frontier:
            for name, s in (("s1", S1), ("s2", S2)):
                prod = _matmul(s, m)
                if prod not in elems:
                    word = elems[m]
                    elems[prod] = name if word == "e" else f"{name}{word}"
                    nxt.append(prod)
        frontier = nxt
    return {word: m for m, word in elems.items()}


WEYL_GROUP: dict[str, Matrix] = _generate()


def dot_action(w: Matrix | str, weight: tuple[int, int], l: int) -> tuple[int, int]:
    """w . lambda = w(lambda + rho) - rho, reduced into the box mod l."""
    if isinstance(w, str):
        w = WEYL_GROUP[w]
    a, b = weight[0] + RHO[0], weight[1] + RHO[1]
    x = w[0][0] * a + w[0][1] * b - RHO[0]
    y = w[1][0] * a + w[1][1] * b - RHO[1]
    return (x % l, y % l)


@dataclass(frozen=True)
class OrbitRecord:
    representative: tuple[int, int]
    members: frozenset
    type: str
    stabilizer_order: int

    @property
    def size(self) -> int:
        return len(self.members)

    def to_json(self) -> dict:
        return {
            "rep": list(self.representative),
            "members": [list(m) for m in sorted(self.members)],
            "type": self.type,
            "stabilizer_order": self.stabilizer_order,
        }


_TYPES = {6: "regular", 3: "parabolic", 1: "steinberg"}


def orbits(l: int) -> list[OrbitRecord]:
    """Partition of the l^2 weight classes into dot-action orbits."""
    validate_order(l)
    seen: set = set()
    out = []
    for a in range(l):
        for b in range(l):
            if (a, b) in seen:
                continue
            members = frozenset(dot_action(w, (a, b), l) for w in WEYL_GROUP.values())
            seen |= members
            size = len(members)
            if size not in _TYPES:
                raise AssertionError(f"orbit of size {size} for l = {l}")
            out.append(OrbitRecord(min(members), members, _TYPES[size], 6 // size))
    return out


def orbit_counts(l: int) -> dict[str, int]:
    counts = {"regular": 0, "parabolic": 0, "steinberg": 0}
    for orb in orbits(l):
        counts[orb.type] += 1
    return counts


def parabolic_weights(l: int) -> set[tuple[int, int]]:
    """Weights with stabilizer of order 2, listed explicitly."""
    validate_order(l)
    out = {(k, l - 2 - k) for k in range(l - 1)}
    out |= {(i, l - 1) for i in range(l - 1)}
    out |= {(l - 1, j) for j in range(l - 1)}
    return out


def _regular_count(l: int) -> int:
    return (l - 1) * (l - 2) // 6


def center_dimension_formula(l: int, dim_reg: int, dim_par: int) -> int:
    """Blocks of each kind times their center dimensions, plus 1 for Steinberg."""
    validate_order(l)
    return _regular_count(l) * dim_reg + (l - 1) * dim_par + 1


class NonIntegralError(ValueError):
    """The inputs force a non-integral parabolic center dimension."""

    def __init__(self, value: Fraction):
        super().__init__(
            f"inconsistent inputs: parabolic block center dimension would be {value}"
        )
        self.value = value


def solve_parabolic_dim(l: int, total: int, dim_reg: int) -> Fraction:
    """Invert :func:`center_dimension_formula` for the parabolic dimension.

    Raises :class:`NonIntegralError` (carrying the value) when the result is
    not a nonnegative integer.
    """
    validate_order(l)
    value = Fraction(total - 1 - dim_reg * _regular_count(l), l - 1)
    if value.denominator != 1 or value < 0:
        raise NonIntegralError(value)
    return value


def blocks_report(l: int, total: int | None = None, dim_reg: int = 16, dim_par: int | None = None) -> dict:
    """JSON-ready orbit table plus the center-dimension accounting."""
    orbs = orbits(l)
    counts = orbit_counts(l)
    formula: dict = {"dim_reg": dim_reg}
    if total is not None:
        formula["total"] = total
        try:
            formula["dim_par"] = int(solve_parabolic_dim(l, total, dim_reg))
        except NonIntegralError as e:
            formula["dim_par"] = str(e.value)
            formula["inconsistent"] = True
    elif dim_par is not None:
        formula["dim_par"] = dim_par
        formula["total"] = center_dimension_formula(l, dim_reg, dim_par)
    return {
        "l": l,
        "orbits": [o.to_json() for o in orbs],
        "counts": counts,
        "formula": formula,
    }

