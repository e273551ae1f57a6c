"""PBW normal form for the small quantum groups u_q(sl3) and u_q(sl2).

A monomial is a tuple of exponents, one per letter, in the fixed PBW order

    sl3:  F1 F3 F2 K1 K2 E2 E3 E1
    sl2:  F K E

with every exponent in ``[0, l-1]``.  E- and F-letters are nilpotent of
order l, K-letters satisfy K^l = 1 (so K^-1 is stored as K^(l-1)).

Products of a generator with a monomial are straightened by a rewriting
system of two-letter exchange rules.  To compute ``g * (x rest)`` with the
leading letter x before g in PBW order, the rule for ``g x`` gives words of
at most two letters; the last letter is multiplied onto ``rest`` first (a
product of total length one less), and the remaining letter is then either
a K (closed form, no recursion) or a letter strictly before g.  So every
recursive call decreases (total length, position of g) lexicographically,
and straightening terminates.  Right products are symmetric.  Straightened
products are memoized per (letter, monomial, side).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

from .cyclotomic import CyclotomicField, CycNum, validate_order

__all__ = [
    "AlgebraKind",
    "AlgebraElement",
    "PBWAlgebra",
    "GENERATOR_WEIGHTS",
    "weight",
    "enumerate_weight_space",
    "enumerate_congruent_weight_space",
    "check_serre",
    "weight_census",
]

SL3_LETTERS = ("F1", "F3", "F2", "K1", "K2", "E2", "E3", "E1")
SL2_LETTERS = ("F", "K", "E")

# root-lattice degree (coefficients of alpha_1, alpha_2) of each letter
SL3_DEGREES = ((-1, 0), (-1, -1), (0, -1), (0, 0), (0, 0), (0, 1), (1, 1), (1, 0))
SL2_DEGREES = ((-1,), (0,), (1,))

SL3_CARTAN = ((2, -1), (-1, 2))
SL2_CARTAN = ((2,),)

# weights of the E/F generators in the (2A - B, 2B - A) convention
GENERATOR_WEIGHTS = {
    "E1": (2, -1),
    "E2": (-1, 2),
    "F1": (-2, 1),
    "F2": (1, -2),
    "E3": (1, 1),
    "F3": (-1, -1),
    "E": (2,),
    "F": (-2,),
}


@dataclass(frozen=True)
class AlgebraKind:
    """Which small quantum group, and the order l of the root of unity.

    sl3 needs l odd, l > 3 and prime to 3.  For sl2 every odd l >= 3 is
    accepted.
    """

    tag: str
    l: int

    def __post_init__(self):
        if self.tag == "sl3":
            validate_order(self.l)
        elif self.tag == "sl2":
            if not isinstance(self.l, int) or self.l < 3 or self.l % 2 == 0:
                raise ValueError(f"l = {self.l} is not admissible for sl2: need l odd, l >= 3")
        else:
            raise ValueError(f"unknown algebra {self.tag!r}; expected 'sl2' or 'sl3'")

    @property
    def letters(self) -> tuple[str, ...]:
        return SL3_LETTERS if self.tag == "sl3" else SL2_LETTERS

    @property
    def rank(self) -> int:
        return 2 if self.tag == "sl3" else 1

    @property
    def chain_generators(self) -> tuple[str, ...]:
        return ("E1", "E2", "F1", "F2") if self.tag == "sl3" else ("E", "F")

    @property
    def k_generators(self) -> tuple[str, ...]:
        return ("K1", "K2") if self.tag == "sl3" else ("K",)

    def __str__(self) -> str:
        return f"{self.tag}(l={self.l})"


def _degree(kind: AlgebraKind, mono: tuple[int, ...]) -> tuple[int, ...]:
    degs = SL3_DEGREES if kind.tag == "sl3" else SL2_DEGREES
    out = [0] * kind.rank
    for e, d in zip(mono, degs):
        if e:
            for i, di in enumerate(d):
                out[i] += e * di
    return tuple(out)


def weight(kind: AlgebraKind, mono: tuple[int, ...]) -> tuple[int, ...]:
    """K-weight of a PBW monomial.

    sl3: ``(2A - B, 2B - A)`` where ``(A, B)`` is the root-lattice degree.
    sl2: ``(2A,)``.
    """
    deg = _degree(kind, mono)
    if kind.tag == "sl3":
        a, b = deg
        return (2 * a - b, 2 * b - a)
    return (2 * deg[0],)


def _weight_from_degree(kind: AlgebraKind, deg: tuple[int, ...]) -> tuple[int, ...]:
    if kind.tag == "sl3":
        return (2 * deg[0] - deg[1], 2 * deg[1] - deg[0])
    return (2 * deg[0],)


def _degree_from_weight(kind: AlgebraKind, wt: tuple[int, ...]) -> tuple[int, ...] | None:
    if kind.tag == "sl3":
        x, y = wt
        # inverse Cartan matrix times 3
        a3, b3 = 2 * x + y, x + 2 * y
        if a3 % 3 or b3 % 3:
            return None
        return (a3 // 3, b3 // 3)
    (x,) = wt
    if x % 2:
        return None
    return (x // 2,)


def _pattern_monomials(kind: AlgebraKind, deg: tuple[int, ...]) -> list[tuple[int, ...]]:
    """Exponent patterns (K exponents zero) of root degree ``deg``, sorted."""
    l = kind.l
    r = range(l)
    out = []
    if kind.tag == "sl3":
        A, B = deg
        for n1, n3, n2 in itertools.product(r, r, r):
            # m1 + m3 = A + n1 + n3 ; m2 + m3 = B + n2 + n3
            sa, sb = A + n1 + n3, B + n2 + n3
            for m2 in r:
                m3 = sb - m2
                if not 0 <= m3 < l:
                    continue
                m1 = sa - m3
                if 0 <= m1 < l:
                    out.append((n1, n3, n2, 0, 0, m2, m3, m1))
    else:
        (A,) = deg
        for n in r:
            m = A + n
            if 0 <= m < l:
                out.append((n, 0, m))
    out.sort()
    return out


def enumerate_weight_space(kind: AlgebraKind, wt: tuple[int, ...]) -> list[tuple[int, ...]]:
    """All PBW monomials of exact weight ``wt``, in lexicographic order."""
    wt = tuple(wt)
    deg = _degree_from_weight(kind, wt)
    if deg is None:
        return []
    l = kind.l
    out = []
    for pat in _pattern_monomials(kind, deg):
        if kind.tag == "sl3":
            for k1 in range(l):
                for k2 in range(l):
                    out.append(pat[:3] + (k1, k2) + pat[5:])
        else:
            for k in range(l):
                out.append((pat[0], k, pat[2]))
    out.sort()
    return out


def weight_census(kind: AlgebraKind) -> dict[tuple[int, ...], int]:
    """Number of PBW monomials of each weight, counted without listing them."""
    counts: dict[tuple[int, ...], int] = {}
    degs = SL3_DEGREES if kind.tag == "sl3" else SL2_DEGREES
    # root degree of a monomial is additive over letters; K letters contribute 0
    partial = {(0,) * kind.rank: 1}
    for d in degs:
        step: dict[tuple[int, ...], int] = {}
        for key, c in partial.items():
            for n in range(kind.l):
                k = tuple(a + n * b for a, b in zip(key, d))
                step[k] = step.get(k, 0) + c
        partial = step
    for deg, c in partial.items():
        wt = _weight_from_degree(kind, deg)
        counts[wt] = counts.get(wt, 0) + c
    return counts


def enumerate_congruent_weight_space(kind: AlgebraKind, wt: tuple[int, ...]) -> list[tuple[int, ...]]:
    """PBW monomials whose weight is congruent to ``wt`` modulo l, coordinatewise.

    These span the joint eigenspace of conjugation by the K-generators with
    eigenvalue q^wt.
    """
    l = kind.l
    degs = SL3_DEGREES if kind.tag == "sl3" else SL2_DEGREES
    n = len(degs)
    k_pos = [i for i, d in enumerate(degs) if not any(d)]
    free = [i for i in range(n) if i not in k_pos]
    target = tuple(w % l for w in wt)
    patterns = []
    for exps in itertools.product(range(l), repeat=len(free)):
        mono = [0] * n
        for i, e in zip(free, exps):
            mono[i] = e
        mono = tuple(mono)
        if tuple(w % l for w in weight(kind, mono)) == target:
            patterns.append(mono)
    out = []
    for pat in patterns:
        for ks in itertools.product(range(l), repeat=len(k_pos)):
            mono = list(pat)
            for i, k in zip(k_pos, ks):
                mono[i] = k
            out.append(tuple(mono))
    out.sort()
    return out


class PBWAlgebra:
    """Straightening engine for one :class:`AlgebraKind`.

    Instances are cached per kind, so the product memo is shared.
    """

    _instances: dict[AlgebraKind, "PBWAlgebra"] = {}

    def __new__(cls, kind: AlgebraKind, serre_coefficient: CycNum | None = None):
        if serre_coefficient is None:
            inst = cls._instances.get(kind)
            if inst is not None:
                return inst
        inst = super().__new__(cls)
        inst._setup(kind)
        if serre_coefficient is None:
            cls._instances[kind] = inst
        return inst

    def _setup(self, kind: AlgebraKind) -> None:
        self.kind = kind
        self.l = kind.l
        self.field = CyclotomicField(kind.l)
        self.letters = kind.letters
        self.index = {name: i for i, name in enumerate(self.letters)}
        self.degrees = SL3_DEGREES if kind.tag == "sl3" else SL2_DEGREES
        cartan = SL3_CARTAN if kind.tag == "sl3" else SL2_CARTAN
        self.k_letters = tuple(i for i, d in enumerate(self.degrees) if not any(d))
        self.k_first = self.k_letters[0]
        self.k_last = self.k_letters[-1]
        self.nletters = len(self.letters)
        # pairing[r][i]: exponent e with K_r X = q^e X K_r for X = letter i
        self.pairing = [
            [sum(cartan[r][j] * d[j] for j in range(kind.rank)) for d in self.degrees]
            for r in range(kind.rank)
        ]
        self._qpow = [self.field.zeta_power(j) for j in range(self.l)]
        self.one_coeff = self.field.one()
        self.rules = self._build_rules()
        self._left_memo: dict = {}
        self._right_memo: dict = {}

    def q(self, n: int = 1) -> CycNum:
        return self._qpow[n % self.l]

    # -- rewriting rules ------------------------------------------------
    def _build_rules(self) -> dict[tuple[int, int], list[tuple[CycNum, tuple]]]:
        """Exchange rules for out-of-order adjacent pairs ``a b``.

        Keys are ``(a, b)`` letter indices with ``a > b``, neither a K-letter
        (K exchanges are applied in closed form).  Values are lists of
        ``(coefficient, word)`` with words as tuples of ``(letter, power)``.
        """
        q = self.q
        one = self.one_coeff
        l = self.l
        c = (q(1) - q(-1)).inverse()
        idx = self.index

        def w(*names):
            out = []
            for name in names:
                if name.endswith("inv"):
                    out.append((idx[name[:-3]], l - 1))
                else:
                    out.append((idx[name], 1))
            return tuple(out)

        if self.kind.tag == "sl2":
            table = {
                ("E", "F"): [(one, w("F", "E")), (c, w("K")), (-c, w("Kinv"))],
            }
        else:
            table = {
                ("F3", "F1"): [(q(1), w("F1", "F3"))],
                ("F2", "F1"): [(q(-1), w("F1", "F2")), (q(-1), w("F3"))],
                ("F2", "F3"): [(q(1), w("F3", "F2"))],
                ("E2", "F1"): [(one, w("F1", "E2"))],
                ("E2", "F3"): [(one, w("F3", "E2")), (q(1), w("F1", "K2"))],
                ("E2", "F2"): [(one, w("F2", "E2")), (c, w("K2")), (-c, w("K2inv"))],
                ("E3", "F1"): [(one, w("F1", "E3")), (-one, w("K1", "E2"))],
                ("E3", "F3"): [
                    (one, w("F3", "E3")),
                    (c, w("K1", "K2")),
                    (-c, w("K1inv", "K2inv")),
                ],
                ("E3", "F2"): [(one, w("F2", "E3")), (q(-1), w("K2inv", "E1"))],
                ("E3", "E2"): [(q(-1), w("E2", "E3"))],
                ("E1", "F1"): [(one, w("F1", "E1")), (c, w("K1")), (-c, w("K1inv"))],
                ("E1", "F3"): [(one, w("F3", "E1")), (-one, w("F2", "K1inv"))],
                ("E1", "F2"): [(one, w("F2", "E1"))],
                ("E1", "E2"): [(q(1), w("E2", "E1")), (q(1), w("E3"))],
                ("E1", "E3"): [(q(-1), w("E3", "E1"))],
            }
        rules = {}
        for (a, b), terms in table.items():
            ia, ib = idx[a], idx[b]
            assert ia > ib, (a, b)
            rules[(ia, ib)] = terms
        return rules

    # -- elementary products ---------------------------------------------
    def _k_exponent(self, r: int, mono: tuple, lo: int, hi: int) -> int:
        pr = self.pairing[r]
        return sum(mono[i] * pr[i] for i in range(lo, hi) if mono[i])

    def left_letter(self, g: int, power: int, mono: tuple) -> dict:
        """Straightened product ``letter^power * mono`` (power > 1 only for K)."""
        if g in self.k_letters:
            return self._left_k(g, power, mono)
        if power != 1:
            out = {mono: self.one_coeff}
            for _ in range(power):
                out = self._left_elem(g, out)
            return out
        key = (g, mono)
        memo = self._left_memo
        res = memo.get(key)
        if res is None:
            res = self._left_compute(g, mono)
            memo[key] = res
        return res

    def _left_k(self, g: int, power: int, mono: tuple) -> dict:
        r = self.k_letters.index(g)
        e = power * self._k_exponent(r, mono, 0, self.k_first)
        new = list(mono)
        new[g] = (new[g] + power) % self.l
        return {tuple(new): self.q(e)}

    def _left_compute(self, g: int, mono: tuple) -> dict:
        first = next((i for i, e in enumerate(mono) if e), None)
        if first is None or first >= g:
            e = mono[g] + 1
            if e == self.l:
                return {}
            new = list(mono)
            new[g] = e
            return {tuple(new): self.one_coeff}
        if first in self.k_letters:
            # g is an E-letter; carry it through the K block
            e = 0
            for r, kpos in enumerate(self.k_letters):
                e -= mono[kpos] * self.pairing[r][g]
            kpart = mono[self.k_first : self.k_last + 1]
            epart = (0,) * (self.k_last + 1) + mono[self.k_last + 1 :]
            coef = self.q(e)
            out = {}
            for m, c in self.left_letter(g, 1, epart).items():
                nm = m[: self.k_first] + kpart + m[self.k_last + 1 :]
                out[nm] = c * coef
            return out
        rest = list(mono)
        rest[first] -= 1
        rest = tuple(rest)
        out: dict = {}
        for coef, word in self.rules[(g, first)]:
            elem = {rest: coef}
            for letter, power in reversed(word):
                elem = self._left_elem(letter, elem, power)
            _accumulate(out, elem)
        return out

    def _left_elem(self, g: int, elem: Mapping, power: int = 1) -> dict:
        out: dict = {}
        for m, c in elem.items():
            for m2, c2 in self.left_letter(g, power, m).items():
                v = out.get(m2)
                out[m2] = c * c2 if v is None else v + c * c2
        return {m: c for m, c in out.items() if c}

    def right_letter(self, mono: tuple, g: int, power: int = 1) -> dict:
        """Straightened product ``mono * letter^power``."""
        if g in self.k_letters:
            return self._right_k(mono, g, power)
        if power != 1:
            out = {mono: self.one_coeff}
            for _ in range(power):
                out = self._right_elem(out, g)
            return out
        key = (g, mono)
        memo = self._right_memo
        res = memo.get(key)
        if res is None:
            res = self._right_compute(mono, g)
            memo[key] = res
        return res

    def _right_k(self, mono: tuple, g: int, power: int) -> dict:
        r = self.k_letters.index(g)
        e = -power * self._k_exponent(r, mono, self.k_last + 1, self.nletters)
        new = list(mono)
        new[g] = (new[g] + power) % self.l
        return {tuple(new): self.q(e)}

    def _right_compute(self, mono: tuple, g: int) -> dict:
        last = next((i for i in range(self.nletters - 1, -1, -1) if mono[i]), None)
        if last is None or last <= g:
            e = mono[g] + 1
            if e == self.l:
                return {}
            new = list(mono)
            new[g] = e
            return {tuple(new): self.one_coeff}
        if last in self.k_letters:
            # g is an F-letter; K^k g = q^(sum k_r <K_r, g>) g K^k
            e = 0
            for r, kpos in enumerate(self.k_letters):
                e += mono[kpos] * self.pairing[r][g]
            kpart = mono[self.k_first : self.k_last + 1]
            fpart = mono[: self.k_first] + (0,) * (self.nletters - self.k_first)
            coef = self.q(e)
            out = {}
            for m, c in self.right_letter(fpart, g).items():
                nm = m[: self.k_first] + kpart + m[self.k_last + 1 :]
                out[nm] = c * coef
            return out
        rest = list(mono)
        rest[last] -= 1
        rest = tuple(rest)
        out: dict = {}
        for coef, word in self.rules[(last, g)]:
            elem = {rest: coef}
            for letter, power in word:
                elem = self._right_elem(elem, letter, power)
            _accumulate(out, elem)
        return out

    def _right_elem(self, elem: Mapping, g: int, power: int = 1) -> dict:
        out: dict = {}
        for m, c in elem.items():
            for m2, c2 in self.right_letter(m, g, power).items():
                v = out.get(m2)
                out[m2] = c * c2 if v is None else v + c * c2
        return {m: c for m, c in out.items() if c}

    # -- generator-level API ------------------------------------------------
    def generator_word(self, name: str) -> tuple:
        """Word of (letter, power) pairs for a generator name such as 'K1inv'."""
        if name.endswith("inv"):
            base = name[:-3]
            i = self.index[base]
            if i not in self.k_letters:
                raise ValueError(f"only K-generators have inverses, got {name}")
            return ((i, self.l - 1),)
        if name not in self.index:
            raise ValueError(f"unknown generator {name!r} for {self.kind}")
        return ((self.index[name], 1),)

    def mul_generator(self, name: str, x: "AlgebraElement", side: str = "left") -> "AlgebraElement":
        """The normal form of ``name * x`` (side='left') or ``x * name``."""
        terms = dict(x.terms)
        for letter, power in self.generator_word(name):
            if side == "left":
                terms = self._left_elem(letter, terms, power)
            elif side == "right":
                terms = self._right_elem(terms, letter, power)
            else:
                raise ValueError("side must be 'left' or 'right'")
        return AlgebraElement(self.kind, terms)

    def commutator(self, name: str, x: "AlgebraElement") -> "AlgebraElement":
        """``name * x - x * name`` in normal form."""
        return self.mul_generator(name, x, "left") - self.mul_generator(name, x, "right")

    def commutator_terms(self, g: str, mono: tuple) -> dict:
        """Commutator of generator ``g`` with a single monomial, as a raw dict."""
        ((letter, power),) = self.generator_word(g)
        out = dict(self.left_letter(letter, power, mono))
        for m, c in self.right_letter(mono, letter, power).items():
            v = out.get(m)
            out[m] = -c if v is None else v - c
        return {m: c for m, c in out.items() if c}

    def word(self, *names: str) -> "AlgebraElement":
        """Normal form of a product of generator names, e.g. ``word('E1', 'F3')``.

        'E3' and 'F3' here mean the PBW letters, which coincide with the
        composite root vectors.
        """
        x = self.one()
        for name in reversed(names):
            x = self.mul_generator(name, x, "left")
        return x

    def one(self) -> "AlgebraElement":
        return AlgebraElement(self.kind, {(0,) * self.nletters: self.one_coeff})

    def monomial(self, mono: Iterable[int] | Mapping[str, int], coeff=None) -> "AlgebraElement":
        if isinstance(mono, Mapping):
            exps = [0] * self.nletters
            for name, e in mono.items():
                exps[self.index[name]] = e
            mono = exps
        mono = tuple(int(e) for e in mono)
        if len(mono) != self.nletters or any(not 0 <= e < self.l for e in mono):
            raise ValueError(f"invalid monomial {mono} for {self.kind}")
        c = self.one_coeff if coeff is None else self.field(coeff)
        return AlgebraElement(self.kind, {mono: c} if c else {})

    def multiply(self, x: "AlgebraElement", y: "AlgebraElement") -> "AlgebraElement":
        """Product of two elements, by left-multiplying the letters of each
        monomial of x onto y."""
        out: dict = {}
        for m, c in x.terms.items():
            elem = dict(y.terms)
            for i in range(self.nletters - 1, -1, -1):
                e = m[i]
                if not e:
                    continue
                if i in self.k_letters:
                    elem = self._left_elem(i, elem, e)
                else:
                    for _ in range(e):
                        elem = self._left_elem(i, elem)
            for m2, c2 in elem.items():
                v = out.get(m2)
                out[m2] = c * c2 if v is None else v + c * c2
        return AlgebraElement(self.kind, out)

    def basis_size(self) -> int:
        return self.l ** self.nletters

    def cache_info(self) -> dict[str, int]:
        return {"left": len(self._left_memo), "right": len(self._right_memo)}


def _accumulate(out: dict, elem: Mapping) -> None:
    for m, c in elem.items():
        v = out.get(m)
        if v is None:
            out[m] = c
        else:
            s = v + c
            if s:
                out[m] = s
            else:
                del out[m]


class AlgebraElement:
    """A finite linear combination of PBW monomials with Q(zeta_l) coefficients."""

    __slots__ = ("kind", "terms")

    def __init__(self, kind: AlgebraKind, terms: Mapping | None = None):
        self.kind = kind
        self.terms = {m: c for m, c in (terms or {}).items() if c}

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator:
        return iter(sorted(self.terms.items()))

    def __eq__(self, other) -> bool:
        if isinstance(other, AlgebraElement):
            return self.kind == other.kind and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        out = dict(self.terms)
        _accumulate(out, other.terms)
        return AlgebraElement(self.kind, out)

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(self.kind, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-other)

    def __mul__(self, other) -> "AlgebraElement":
        if isinstance(other, AlgebraElement):
            return PBWAlgebra(self.kind).multiply(self, other)
        return AlgebraElement(self.kind, {m: c * other for m, c in self.terms.items()})

    def __rmul__(self, scalar) -> "AlgebraElement":
        return AlgebraElement(self.kind, {m: scalar * c for m, c in self.terms.items()})

    def weights(self) -> set:
        return {weight(self.kind, m) for m in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.weights()) <= 1

    def render(self) -> str:
        """Human-readable form, e.g. ``(1) * F1^1 E1^1 + ...``; identity is '1'."""
        if not self.terms:
            return "0"
        letters = self.kind.letters
        parts = []
        for m, c in sorted(self.terms.items()):
            word = " ".join(f"{letters[i]}^{e}" for i, e in enumerate(m) if e) or "1"
            parts.append(f"({c}) * {word}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"AlgebraElement({self.kind}, {self.render()})"


def check_serre(kind: AlgebraKind, coefficient: CycNum | None = None) -> bool:
    """Whether both quantum Serre relations (E and F, i != j) reduce to zero.

    The default coefficient is [2] = q + q^-1.
    """
    if kind.tag != "sl3":
        raise ValueError("Serre relations are checked for sl3 only")
    alg = PBWAlgebra(kind)
    c = coefficient if coefficient is not None else alg.q(1) + alg.q(-1)
    for x, i, j in (("E", "1", "2"), ("E", "2", "1"), ("F", "1", "2"), ("F", "2", "1")):
        a, b = x + i, x + j
        expr = alg.word(a, a, b) - c * alg.word(a, b, a) + alg.word(b, a, a)
        if expr:
            return False
    return True
