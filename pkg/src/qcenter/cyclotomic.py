"""Exact arithmetic in the cyclotomic field Q(zeta_l).

Elements are stored in the power basis ``1, z, ..., z^(phi-1)`` modulo the
cyclotomic polynomial Phi_l, with rational coefficients.  A
:class:`PrimeFieldSpec` describes a homomorphism Z[zeta][1/N] -> GF(p) for a
prime ``p = 1 mod l``, used by the modular linear algebra backend.
"""

from __future__ import annotations

import math

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import gmpy2

__all__ = [
    "CyclotomicField",
    "CycNum",
    "PrimeFieldSpec",
    "cyclotomic_polynomial",
    "find_prime_spec",
    "prime_specs",
    "q_integer",
    "validate_order",
]


def validate_order(l: int, allow_three: bool = False) -> None:
    """Raise ``ValueError`` unless l is odd, > 3 and prime to 3.

    ``allow_three`` admits l = 3, which is meaningful for sl2 only.
    """
    if not isinstance(l, int) or isinstance(l, bool):
        raise ValueError(f"l must be an integer, got {l!r}")
    if allow_three and l == 3:
        return
    if l <= 3 or l % 2 == 0 or l % 3 == 0:
        raise ValueError(
            f"l = {l} is not admissible: need l odd, l > 3 and gcd(l, 3) = 1"
        )


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    # integer polynomials, lowest degree first; den monic
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1]
        out[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    if any(num[: len(den) - 1]):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first.

    Computed as (x^n - 1) divided by Phi_d for every proper divisor d of n.
    """
    if n < 1:
        raise ValueError("n must be positive")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divexact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


def _poly_trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(a: list, b: list) -> tuple[list, list]:
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    while len(a) >= len(b) and a:
        c = Fraction(a[-1]) / lead
        shift = len(a) - len(b)
        q[shift] = c
        for j, bj in enumerate(b):
            a[shift + j] -= c * bj
        a.pop()
        _poly_trim(a)
    return q, a


class CyclotomicField:
    """The field Q(zeta_l) in the power basis modulo Phi_l.

    Instances are cached per ``l``; use :meth:`get` or the constructor,
    both return the shared instance.
    """

    _instances: dict[int, "CyclotomicField"] = {}

    def __new__(cls, l: int):
        inst = cls._instances.get(l)
        if inst is not None:
            return inst
        if l < 2:
            raise ValueError("l must be at least 2")
        inst = super().__new__(cls)
        inst._setup(l)
        cls._instances[l] = inst
        return inst

    @classmethod
    def get(cls, l: int) -> "CyclotomicField":
        return cls(l)

    def _setup(self, l: int) -> None:
        self.l = l
        self.modulus = cyclotomic_polynomial(l)
        self.degree = len(self.modulus) - 1
        deg = self.degree
        # z^j reduced, for 0 <= j < 2*deg (covers every product of two reduced values)
        powers = []
        vec = [0] * deg
        vec[0] = 1
        for _ in range(max(2 * deg, l)):
            powers.append(tuple(vec))
            # multiply by z
            top = vec[-1]
            vec = [0] + vec[:-1]
            if top:
                for i in range(deg):
                    vec[i] -= top * self.modulus[i]
        self._reduce_table = powers
        self._zeta_pow = [
            tuple(Fraction(c) for c in powers[j]) for j in range(l)
        ]
        self._zero = CycNum(self, (Fraction(0),) * deg)
        self._one = CycNum(self, self._zeta_pow[0])

    def __repr__(self) -> str:
        return f"CyclotomicField({self.l})"

    def __reduce__(self):
        return (CyclotomicField, (self.l,))

    # -- constructors -------------------------------------------------
    def zero(self) -> "CycNum":
        return self._zero

    def one(self) -> "CycNum":
        return self._one

    def zeta_power(self, n: int) -> "CycNum":
        """Return zeta^n for any integer n."""
        return CycNum(self, self._zeta_pow[n % self.l])

    def zeta(self) -> "CycNum":
        return self.zeta_power(1)

    def __call__(self, value) -> "CycNum":
        if isinstance(value, CycNum):
            if value.field is not self:
                raise ValueError("element belongs to a different cyclotomic field")
            return value
        if isinstance(value, (int, Fraction)):
            return CycNum(self, (Fraction(value),) + (Fraction(0),) * (self.degree - 1))
        if isinstance(value, str):
            return self.parse(value)
        return self.from_coeffs(value)

    def from_coeffs(self, coeffs: Iterable) -> "CycNum":
        """Build an element from polynomial coefficients of any length."""
        coeffs = [Fraction(c) for c in coeffs]
        if len(coeffs) <= self.degree:
            coeffs += [Fraction(0)] * (self.degree - len(coeffs))
            return CycNum(self, tuple(coeffs))
        return CycNum(self, self._reduce(coeffs))

    def parse(self, text: str) -> "CycNum":
        """Inverse of :meth:`CycNum.serialize`."""
        parts = text.strip().split(",")
        if len(parts) != self.degree:
            raise ValueError(
                f"expected {self.degree} comma-separated rationals, got {len(parts)}"
            )
        return CycNum(self, tuple(Fraction(p) for p in parts))

    # -- internals ------------------------------------------------------
    def _reduce(self, coeffs: Sequence) -> tuple:
        deg = self.degree
        out = list(coeffs[:deg]) + [Fraction(0)] * max(0, deg - len(coeffs))
        table = self._reduce_table
        for j in range(deg, len(coeffs)):
            c = coeffs[j]
            if c:
                if j >= len(table):
                    self._extend_table(j)
                row = table[j]
                for i in range(deg):
                    if row[i]:
                        out[i] += c * row[i]
        return tuple(out)

    def _extend_table(self, j: int) -> None:
        table = self._reduce_table
        deg = self.degree
        while len(table) <= j:
            vec = list(table[-1])
            top = vec[-1]
            vec = [0] + vec[:-1]
            if top:
                for i in range(deg):
                    vec[i] -= top * self.modulus[i]
            table.append(tuple(vec))

    def _mul(self, a: tuple, b: tuple) -> tuple:
        deg = self.degree
        prod = [0] * (2 * deg - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return self._reduce(prod)

    def _inverse(self, a: tuple) -> tuple:
        # extended Euclid in Q[x] against Phi_l
        r0 = [Fraction(c) for c in self.modulus]
        r1 = _poly_trim([Fraction(c) for c in a])
        s0: list = [Fraction(0)]
        s1: list = [Fraction(1)]
        while len(r1) > 1:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            prod = _poly_mul(q, s1)
            s_new = [
                (s0[i] if i < len(s0) else 0) - (prod[i] if i < len(prod) else 0)
                for i in range(max(len(s0), len(prod)))
            ]
            s0, s1 = s1, _poly_trim(s_new) or [Fraction(0)]
        c = r1[0]
        return self._reduce([x / c for x in s1])


def _poly_mul(a: list, b: list) -> list:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


class CycNum:
    """An element of Q(zeta_l); immutable, canonical, hashable."""

    __slots__ = ("field", "coeffs", "_hash")

    def __init__(self, field: CyclotomicField, coeffs: tuple):
        self.field = field
        self.coeffs = coeffs
        self._hash = None

    # -- predicates -----------------------------------------------------
    def __bool__(self) -> bool:
        return any(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def __eq__(self, other) -> bool:
        if isinstance(other, CycNum):
            return self.field is other.field and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.field.l, self.coeffs))
        return self._hash

    # -- arithmetic -----------------------------------------------------
    def _coerce(self, other) -> "CycNum | None":
        if isinstance(other, CycNum):
            if other.field is not self.field:
                raise ValueError("mixing elements of different cyclotomic fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycNum(self.field, tuple(x + y for x, y in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycNum(self.field, tuple(x - y for x, y in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return CycNum(self.field, tuple(-x for x in self.coeffs))

    def __pos__(self):
        return self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycNum(self.field, tuple(x * other for x in self.coeffs))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycNum(self.field, self.field._mul(self.coeffs, o.coeffs))

    __rmul__ = __mul__

    def inverse(self) -> "CycNum":
        if not self:
            raise ZeroDivisionError("inverse of zero in Q(zeta)")
        if self.is_rational():
            return self.field(1 / self.coeffs[0])
        return CycNum(self.field, self.field._inverse(self.coeffs))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- conversions ----------------------------------------------------
    def serialize(self) -> str:
        """Comma-separated power-basis coefficients, e.g. ``"1,0,-1/2,0"``."""
        return ",".join(str(c) for c in self.coeffs)

    def denominator(self) -> int:
        d = 1
        for c in self.coeffs:
            d = d * c.denominator // gmpy2.gcd(d, c.denominator)
        return int(d)

    def specialize(self, spec: "PrimeFieldSpec") -> int:
        return spec.specialize(self)

    def __repr__(self) -> str:
        return f"CycNum({self.field.l}, [{self.serialize()}])"

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                mono = "z" if i == 1 else f"z^{i}"
                if c == 1:
                    terms.append(mono)
                elif c == -1:
                    terms.append("-" + mono)
                else:
                    cs = f"({c})" if c.denominator != 1 else str(c)
                    terms.append(f"{cs}*{mono}")
        if not terms:
            return "0"
        return " + ".join(terms).replace("+ -", "- ")


def q_integer(field: CyclotomicField, n: int) -> CycNum:
    """The quantum integer [n] = (z^n - z^-n)/(z - z^-1) at z = zeta_l."""
    if n < 0:
        return -q_integer(field, -n)
    # [n] = z^(n-1) + z^(n-3) + ... + z^(1-n)
    acc = [0] * field.l
    for j in range(n):
        acc[(n - 1 - 2 * j) % field.l] += 1
    return field.from_coeffs(acc)


CyclotomicField.q_integer = q_integer  # type: ignore[attr-defined]


# ---------------------------------------------------------------------------
# prime fields


def _order_is(x: int, l: int, p: int) -> bool:
    if pow(x, l, p) != 1:
        return False
    for r in _prime_factors(l):
        if pow(x, l // r, p) == 1:
            return False
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class PrimeFieldSpec:
    """A prime p = 1 (mod l) together with an element of order exactly l."""

    l: int
    p: int
    zeta_image: int

    def __post_init__(self):
        if self.p % self.l != 1 or not gmpy2.is_prime(self.p):
            raise ValueError(f"{self.p} is not a prime congruent to 1 mod {self.l}")
        if not _order_is(self.zeta_image % self.p, self.l, self.p):
            raise ValueError(
                f"{self.zeta_image} does not have multiplicative order {self.l} mod {self.p}"
            )

    def conjugate(self, j: int) -> "PrimeFieldSpec":
        """The spec sending zeta to zeta_image^j (j prime to l)."""
        return PrimeFieldSpec(self.l, self.p, pow(self.zeta_image, j, self.p))

    def conjugates(self) -> list["PrimeFieldSpec"]:
        """All phi(l) embeddings of Q(zeta_l) into GF(p)."""
        return [
            self.conjugate(j) for j in range(1, self.l) if gmpy2.gcd(j, self.l) == 1
        ]

    def specialize(self, x: CycNum) -> int:
        """Image of x in GF(p); raises if a denominator vanishes mod p."""
        if x.field.l != self.l:
            raise ValueError("field mismatch")
        p = self.p
        acc = 0
        zpow = 1
        for c in x.coeffs:
            if c:
                den = c.denominator % p
                if den == 0:
                    raise ZeroDivisionError(
                        f"denominator {c.denominator} vanishes mod {p}; choose a different prime"
                    )
                acc += c.numerator * zpow * pow(den, -1, p)
            zpow = zpow * self.zeta_image % p
        return acc % p

    def describe(self) -> str:
        return f"gf {self.p} {self.zeta_image}"


def find_prime_spec(l: int, lower_bound: int = 2) -> PrimeFieldSpec:
    """Smallest prime p >= lower_bound with p = 1 mod l, and the least
    residue of multiplicative order exactly l modulo p."""
    p = max(lower_bound, 2)
    p += (1 - p) % l
    while not gmpy2.is_prime(p):
        p += l
    # g^((p-1)/l) has order dividing l; some g gives order exactly l
    for g in range(2, p):
        y = pow(g, (p - 1) // l, p)
        if _order_is(y, l, p):
            least = min(pow(y, j, p) for j in range(1, l) if math.gcd(j, l) == 1)
            return PrimeFieldSpec(l, p, least)
    raise AssertionError("unreachable: GF(p)* is cyclic of order divisible by l")


def prime_specs(l: int, count: int, lower_bound: int) -> list[PrimeFieldSpec]:
    """``count`` consecutive admissible primes starting at ``lower_bound``."""
    out = []
    bound = lower_bound
    for _ in range(count):
        spec = find_prime_spec(l, bound)
        out.append(spec)
        bound = spec.p + 1
    return out
