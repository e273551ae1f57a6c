"""Sparse linear algebra over Q(zeta_l) or a prime field.

Kernels and ranks come from right-looking sparse Gaussian elimination with
Markowitz pivot selection.  The same code path serves both backends; a
field object supplies ``reduce`` (canonicalize a freshly computed entry) and
``inv``.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Sequence

import gmpy2

from .cyclotomic import CyclotomicField, CycNum, PrimeFieldSpec

__all__ = [
    "PrimeField",
    "SparseMatrix",
    "Subspace",
    "Echelon",
    "eliminate",
    "kernel",
    "rank",
    "restrict",
    "intersect",
    "intersect_kernel",
    "compose",
    "constraint_matrix",
    "lift_to_exact",
    "LiftError",
    "BadPrimeError",
    "rational_reconstruction",
    "dump_matrix",
    "load_matrix",
]


class PrimeField:
    """GF(p), with elements represented as Python ints in ``[0, p)``."""

    is_prime = True

    def __init__(self, p: int, spec: PrimeFieldSpec | None = None):
        self.p = p
        self.spec = spec
        self.zero = 0
        self.one = 1

    def reduce(self, x: int) -> int:
        return x % self.p

    def inv(self, x: int) -> int:
        if x % self.p == 0:
            raise ZeroDivisionError(f"inverse of 0 in GF({self.p})")
        return pow(x, -1, self.p)

    def __call__(self, x) -> int:
        if isinstance(x, CycNum):
            if self.spec is None:
                raise ValueError("no specialization attached to this prime field")
            return self.spec.specialize(x)
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def describe(self) -> str:
        if self.spec is not None:
            return self.spec.describe()
        return f"gf {self.p}"

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p and other.spec == self.spec

    def __hash__(self) -> int:
        return hash((self.p, self.spec))

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"


def _is_prime_field(field) -> bool:
    return getattr(field, "is_prime", False)


class _ExactOps:
    """Adapter giving Q(zeta) the same ``reduce``/``inv`` surface as GF(p)."""

    is_prime = False

    def __init__(self, field: CyclotomicField):
        self.field = field
        self.zero = field.zero()
        self.one = field.one()

    @staticmethod
    def reduce(x):
        return x

    @staticmethod
    def inv(x):
        return x.inverse()


def _ops(field):
    if isinstance(field, CyclotomicField):
        return _ExactOps(field)
    return field


class SparseMatrix:
    """Column-sparse matrix: ``columns[j]`` is a row-sorted list of
    ``(row, value)`` with no stored zeros."""

    __slots__ = ("nrows", "ncols", "columns", "field")

    def __init__(self, nrows: int, ncols: int, columns: Sequence, field):
        if len(columns) != ncols:
            raise ValueError(f"expected {ncols} columns, got {len(columns)}")
        self.nrows = nrows
        self.ncols = ncols
        self.field = field
        cols = []
        for col in columns:
            entries = sorted((int(i), v) for i, v in col if v)
            for (a, _), (b, _) in zip(entries, entries[1:]):
                if a == b:
                    raise ValueError("duplicate row index in column")
            if entries and not (0 <= entries[0][0] and entries[-1][0] < nrows):
                raise ValueError("row index out of range")
            cols.append(entries)
        self.columns = cols

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence], field) -> "SparseMatrix":
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        ops = _ops(field)
        columns = [[] for _ in range(ncols)]
        for i, row in enumerate(rows):
            for j, v in enumerate(row):
                v = _coerce(field, v)
                if v:
                    columns[j].append((i, ops.reduce(v)))
        return cls(nrows, ncols, columns, field)

    @classmethod
    def identity(cls, n: int, field) -> "SparseMatrix":
        one = _ops(field).one
        return cls(n, n, [[(i, one)] for i in range(n)], field)

    @classmethod
    def zero(cls, nrows: int, ncols: int, field) -> "SparseMatrix":
        return cls(nrows, ncols, [[] for _ in range(ncols)], field)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def nnz(self) -> int:
        return sum(len(c) for c in self.columns)

    def to_dense(self) -> list[list]:
        zero = _ops(self.field).zero
        out = [[zero] * self.ncols for _ in range(self.nrows)]
        for j, col in enumerate(self.columns):
            for i, v in col:
                out[i][j] = v
        return out

    def rows(self) -> list[dict]:
        out: list[dict] = [dict() for _ in range(self.nrows)]
        for j, col in enumerate(self.columns):
            for i, v in col:
                out[i][j] = v
        return out

    def apply(self, x: dict | Sequence) -> dict:
        """Matrix-vector product with a sparse (dict) or dense vector; sparse result."""
        ops = _ops(self.field)
        items = x.items() if isinstance(x, dict) else enumerate(x)
        out: dict = {}
        for j, xj in items:
            if not xj:
                continue
            for i, v in self.columns[j]:
                t = out.get(i)
                out[i] = ops.reduce(v * xj if t is None else t + v * xj)
        return {i: v for i, v in out.items() if v}

    def vstack(self, other: "SparseMatrix") -> "SparseMatrix":
        if other.ncols != self.ncols:
            raise ValueError("column counts differ")
        off = self.nrows
        cols = [a + [(i + off, v) for i, v in b] for a, b in zip(self.columns, other.columns)]
        return SparseMatrix(self.nrows + other.nrows, self.ncols, cols, self.field)

    def map_entries(self, fn, field) -> "SparseMatrix":
        """Apply ``fn`` to every entry, e.g. a specialization into GF(p)."""
        cols = [[(i, fn(v)) for i, v in col] for col in self.columns]
        return SparseMatrix(self.nrows, self.ncols, cols, field)

    def specialize(self, spec: PrimeFieldSpec) -> "SparseMatrix":
        return self.map_entries(spec.specialize, PrimeField(spec.p, spec))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SparseMatrix)
            and self.shape == other.shape
            and self.columns == other.columns
        )

    def __repr__(self) -> str:
        return f"SparseMatrix({self.nrows}x{self.ncols}, nnz={self.nnz()}, field={self.field!r})"


def _coerce(field, v):
    if isinstance(field, CyclotomicField):
        return field(v)
    return field(v) if callable(field) else v


@dataclass
class Subspace:
    """A subspace of ``field^ambient_dim`` given by a basis of sparse vectors.

    ``pivots[i]`` is a coordinate where ``basis[i]`` is 1 and every other basis
    vector is 0.  After :meth:`canonical` the pivots are the leading
    coordinates and increase strictly, which makes the basis unique.
    """

    ambient_dim: int
    basis: list[dict]
    field: object
    pivots: list[int] = dc_field(default_factory=list)
    is_canonical: bool = False

    @property
    def dim(self) -> int:
        return len(self.basis)

    @classmethod
    def full(cls, n: int, field) -> "Subspace":
        one = _ops(field).one
        return cls(n, [{i: one} for i in range(n)], field, list(range(n)), True)

    def canonical(self) -> "Subspace":
        """Reduced echelon basis: pivot = first nonzero coordinate = 1."""
        if self.is_canonical:
            return self
        ops = _ops(self.field)
        ech = eliminate(
            _RowInput(self.basis, self.ambient_dim),
            self.field,
            pivot_order="leftmost",
        )
        rows = ech.reduced_rows()
        rows.sort(key=lambda pr: pr[0])
        basis = [r for _, r in rows]
        for r in basis:
            for c, v in list(r.items()):
                r[c] = ops.reduce(v)
        return Subspace(self.ambient_dim, basis, self.field, [c for c, _ in rows], True)

    def to_matrix(self) -> SparseMatrix:
        """Basis vectors as the columns of an ``ambient_dim x dim`` matrix."""
        return SparseMatrix(
            self.ambient_dim, self.dim, [list(v.items()) for v in self.basis], self.field
        )

    def contains(self, x: dict) -> bool:
        ops = _ops(self.field)
        s = self if self.pivots else self.canonical()
        residual = {c: v for c, v in x.items() if v}
        for piv, vec in zip(s.pivots, s.basis):
            a = residual.get(piv)
            if a:
                for c, v in vec.items():
                    nv = ops.reduce(residual.get(c, ops.zero) - a * v)
                    if nv:
                        residual[c] = nv
                    else:
                        residual.pop(c, None)
        return not residual

    def serialize_vectors(self) -> list[list[tuple[int, object]]]:
        return [sorted(v.items()) for v in self.basis]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace) or self.ambient_dim != other.ambient_dim:
            return False
        a, b = self.canonical(), other.canonical()
        return a.pivots == b.pivots and a.basis == b.basis


class _RowInput:
    """Adapter: a list of sparse row dicts presented to :func:`eliminate`."""

    def __init__(self, rows: list[dict], ncols: int):
        self.row_dicts = rows
        self.ncols = ncols


@dataclass
class Echelon:
    """Result of elimination: pivot rows in elimination order.

    Each pivot row contains its pivot column plus only columns that were
    pivoted later or never (free columns).
    """

    ncols: int
    pivots: list[tuple[int, dict]]
    field: object

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def free_columns(self) -> list[int]:
        used = {c for c, _ in self.pivots}
        return [c for c in range(self.ncols) if c not in used]

    def kernel_basis(self) -> tuple[list[dict], list[int]]:
        """Kernel vectors, one per free column f, with x_f = 1 and x = 0 on
        the other free columns; back-substitution in reverse pivot order."""
        ops = _ops(self.field)
        reduce, one = ops.reduce, ops.one
        free = self.free_columns()
        # sol[c] = coordinate c of every kernel vector, as {free_index: value}
        sol: dict[int, dict] = {f: {k: one} for k, f in enumerate(free)}
        for pc, row in reversed(self.pivots):
            inv = ops.inv(row[pc])
            acc: dict = {}
            for c, v in row.items():
                if c == pc:
                    continue
                xc = sol.get(c)
                if not xc:
                    continue
                for k, w in xc.items():
                    t = acc.get(k)
                    acc[k] = v * w if t is None else t + v * w
            out = {}
            for k, t in acc.items():
                t = reduce(-t * inv)
                if t:
                    out[k] = t
            if out:
                sol[pc] = out
        vectors: list[dict] = [dict() for _ in free]
        for c, xc in sol.items():
            for k, v in xc.items():
                vectors[k][c] = v
        return vectors, free

    def reduced_rows(self) -> list[tuple[int, dict]]:
        """Fully reduced pivot rows (RREF up to ordering), pivot entry 1."""
        ops = _ops(self.field)
        reduce = ops.reduce
        done: dict[int, dict] = {}
        for pc, row in reversed(self.pivots):
            inv = ops.inv(row[pc])
            new = {c: reduce(v * inv) for c, v in row.items()}
            for c in [c for c in new if c != pc and c in done]:
                a = new.pop(c)
                for c2, v2 in done[c].items():
                    if c2 == c:
                        continue
                    t = new.get(c2)
                    nv = reduce(-a * v2 if t is None else t - a * v2)
                    if nv:
                        new[c2] = nv
                    else:
                        new.pop(c2, None)
            done[pc] = new
        return [(pc, done[pc]) for pc, _ in self.pivots]


def eliminate(M, field=None, pivot_order: str = "markowitz") -> Echelon:
    """Right-looking sparse Gaussian elimination.

    ``pivot_order='markowitz'`` picks, among the few sparsest columns, the
    entry minimizing (row_count - 1) * (col_count - 1).  ``'leftmost'``
    always pivots on the smallest remaining column index, which yields
    pivots at leading positions (used to canonicalize subspaces).
    """
    field = M.field if field is None else field
    ops = _ops(field)
    reduce, inv_fn = ops.reduce, ops.inv
    if isinstance(M, _RowInput):
        ncols = M.ncols
        rows = {i: dict(r) for i, r in enumerate(M.row_dicts) if r}
    else:
        ncols = M.ncols
        rows = {}
        for j, col in enumerate(M.columns):
            for i, v in col:
                r = rows.get(i)
                if r is None:
                    rows[i] = {j: v}
                else:
                    r[j] = v
    colrows: dict[int, set] = {}
    for i, r in rows.items():
        for j in r:
            s = colrows.get(j)
            if s is None:
                colrows[j] = {i}
            else:
                s.add(i)

    leftmost = pivot_order == "leftmost"
    if not leftmost and pivot_order != "markowitz":
        raise ValueError(f"unknown pivot order {pivot_order!r}")

    # buckets[count] = set of columns with that many active rows
    buckets: dict[int, set] = {}
    for j, s in colrows.items():
        buckets.setdefault(len(s), set()).add(j)
    counts = {j: len(s) for j, s in colrows.items()}

    def move(j: int, new: int) -> None:
        old = counts[j]
        if old == new:
            return
        b = buckets[old]
        b.discard(j)
        if not b:
            del buckets[old]
        counts[j] = new
        buckets.setdefault(new, set()).add(j)

    pivots: list[tuple[int, dict]] = []
    active_cols = sorted(colrows) if leftmost else None
    col_ptr = 0

    while rows:
        if leftmost:
            while col_ptr < len(active_cols) and not colrows.get(active_cols[col_ptr]):
                col_ptr += 1
            if col_ptr >= len(active_cols):
                break
            j = active_cols[col_ptr]
            col_ptr += 1
            i = min(colrows[j], key=lambda r: len(rows[r]))
        else:
            buckets.pop(0, None)
            if not buckets:
                break
            best = None
            seen = 0
            for cnt in sorted(buckets):
                for j in buckets[cnt]:
                    for r in colrows[j]:
                        cost = (len(rows[r]) - 1) * (cnt - 1)
                        if best is None or cost < best[0]:
                            best = (cost, j, r)
                    seen += 1
                    if seen >= 4 or best[0] == 0:
                        break
                if seen >= 4 or best[0] == 0:
                    break
            _, j, i = best

        prow = rows.pop(i)
        for c in prow:
            colrows[c].discard(i)
            if not leftmost:
                move(c, counts[c] - 1)
        targets = colrows.pop(j)
        if not leftmost:
            b = buckets.get(counts[j])
            if b is not None:
                b.discard(j)
                if not b:
                    del buckets[counts[j]]
            del counts[j]
        inv = inv_fn(prow[j])
        pitems = [(c, v) for c, v in prow.items() if c != j]
        for r in targets:
            row = rows[r]
            f = reduce(row.pop(j) * inv)
            for c, v in pitems:
                old = row.get(c)
                if old is None:
                    row[c] = reduce(-f * v)
                    colrows[c].add(r)
                    if not leftmost:
                        move(c, counts[c] + 1)
                else:
                    nv = reduce(old - f * v)
                    if nv:
                        row[c] = nv
                    else:
                        del row[c]
                        colrows[c].discard(r)
                        if not leftmost:
                            move(c, counts[c] - 1)
            if not row:
                del rows[r]
        pivots.append((j, prow))
    return Echelon(ncols, pivots, field)


def kernel(M: SparseMatrix, canonical: bool = False) -> Subspace:
    """Null space {x : Mx = 0} as a :class:`Subspace` of ``field^ncols``."""
    ech = eliminate(M)
    vectors, free = ech.kernel_basis()
    sub = Subspace(M.ncols, vectors, M.field, free)
    return sub.canonical() if canonical else sub


def rank(M: SparseMatrix) -> int:
    return eliminate(M).rank


def restrict(M: SparseMatrix, S: Subspace) -> SparseMatrix:
    """The matrix ``M B`` where the columns of B are the basis of S."""
    if M.ncols != S.ambient_dim:
        raise ValueError(
            f"dimension mismatch: matrix has {M.ncols} columns, subspace lives in dimension {S.ambient_dim}"
        )
    cols = [list(M.apply(v).items()) for v in S.basis]
    return SparseMatrix(M.nrows, S.dim, cols, M.field)


def compose(S: Subspace, T: Subspace) -> Subspace:
    """Express T (a subspace of S-coordinates) in the ambient space of S."""
    if T.ambient_dim != S.dim:
        raise ValueError("inner subspace does not live in the coordinates of the outer one")
    ops = _ops(S.field)
    out = []
    for y in T.basis:
        acc: dict = {}
        for k, yk in y.items():
            for c, v in S.basis[k].items():
                t = acc.get(c)
                acc[c] = v * yk if t is None else t + v * yk
        out.append({c: ops.reduce(v) for c, v in acc.items() if ops.reduce(v)})
    pivots = []
    if T.pivots and S.pivots:
        pivots = [S.pivots[k] for k in T.pivots]
    return Subspace(S.ambient_dim, out, S.field, pivots)


def intersect_kernel(M: SparseMatrix, S: Subspace) -> Subspace:
    """Ker M intersected with S, in ambient coordinates."""
    inner = kernel(restrict(M, S))
    return compose(S, inner)


def intersect(S: Subspace, T: Subspace) -> Subspace:
    """Intersection of two subspaces of the same ambient space."""
    if S.ambient_dim != T.ambient_dim:
        raise ValueError("ambient dimensions differ")
    # x in S with x in T  <=>  x = B_S a and C_T x = 0 for C_T a constraint matrix of T
    C = constraint_matrix(T)
    return intersect_kernel(C, S)


def constraint_matrix(S: Subspace) -> SparseMatrix:
    """A matrix whose kernel is exactly S (one row per non-pivot coordinate)."""
    s = S.canonical()
    ops = _ops(S.field)
    piv = set(s.pivots)
    nonpiv = [c for c in range(S.ambient_dim) if c not in piv]
    row_of = {c: r for r, c in enumerate(nonpiv)}
    # x in S  <=>  x_c = sum_i x_{p_i} b_i[c] for each non-pivot c
    columns: list[list] = [[] for _ in range(S.ambient_dim)]
    for c in nonpiv:
        columns[c].append((row_of[c], ops.one))
    for p, b in zip(s.pivots, s.basis):
        for c, v in b.items():
            if c in row_of:
                columns[p].append((row_of[c], ops.reduce(-v)))
    return SparseMatrix(len(nonpiv), S.ambient_dim, columns, S.field)


# ---------------------------------------------------------------------------
# multi-modular lifting


class LiftError(ArithmeticError):
    """Rational reconstruction did not stabilize; more primes are needed."""


class BadPrimeError(ArithmeticError):
    """Per-prime results disagree in shape; ``prime`` names the outlier."""

    def __init__(self, message: str, prime: int | None = None):
        super().__init__(message)
        self.prime = prime


def rational_reconstruction(a: int, m: int) -> Fraction | None:
    """The fraction n/d with |n|, d <= sqrt(m/2) and n = a d (mod m), or None."""
    a %= m
    if a == 0:
        return Fraction(0)
    bound = gmpy2.isqrt(m // 2)
    r0, r1 = m, a
    s0, s1 = 0, 1
    while r1 > bound:
        qt = r0 // r1
        r0, r1 = r1, r0 - qt * r1
        s0, s1 = s1, s0 - qt * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    if gmpy2.gcd(r1, s1) != 1:
        return None
    return Fraction(int(r1), int(s1))


def _crt_pair(a1: int, m1: int, a2: int, m2: int) -> tuple[int, int]:
    t = (a2 - a1) * pow(m1, -1, m2) % m2
    return a1 + m1 * t, m1 * m2


def _solve_vandermonde_mod(values: list[int], points: list[int], deg: int, p: int) -> list[int]:
    """Coefficients c_0..c_{deg-1} with sum c_i z^i = value at each point z, mod p."""
    n = deg
    A = [[pow(z, i, p) for i in range(n)] + [v % p] for z, v in zip(points, values)]
    for col in range(n):
        piv = next(r for r in range(col, n) if A[r][col])
        A[col], A[piv] = A[piv], A[col]
        inv = pow(A[col][col], -1, p)
        A[col] = [x * inv % p for x in A[col]]
        for r in range(n):
            if r != col and A[r][col]:
                f = A[r][col]
                A[r] = [(x - f * y) % p for x, y in zip(A[r], A[col])]
    return [A[i][n] for i in range(n)]


def lift_to_exact(
    per_prime: dict[int, dict[PrimeFieldSpec, Subspace]],
    field: CyclotomicField,
) -> Subspace:
    """Recover a canonical subspace over Q(zeta) from its modular images.

    ``per_prime[p]`` maps each of the phi(l) conjugate specs for the prime p
    to the canonical (reduced echelon) image of the subspace under that
    embedding.  The coefficient vector of every entry in the power basis is
    recovered mod p by inverting a Vandermonde system, then combined across
    primes by CRT and rational reconstruction.
    """
    if not per_prime:
        raise ValueError("no modular images supplied")
    deg = field.degree
    shapes = {}
    for p, images in per_prime.items():
        if len(images) != deg:
            raise ValueError(f"prime {p}: need {deg} conjugate embeddings, got {len(images)}")
        keys = {(s.dim, tuple(s.pivots)) for s in images.values()}
        if len(keys) != 1:
            raise BadPrimeError(f"conjugate embeddings disagree at prime {p}", prime=p)
        shapes[p] = keys.pop()
    if len(set(shapes.values())) != 1:
        # the majority shape is taken as correct; name an outlier
        tally: dict = {}
        for p, sh in shapes.items():
            tally.setdefault(sh, []).append(p)
        majority = max(tally.values(), key=len)
        bad = next(p for p in shapes if p not in majority)
        raise BadPrimeError(f"pivot structure at prime {bad} differs from the others", prime=bad)
    dim, pivots = next(iter(shapes.values()))
    ambient = next(iter(next(iter(per_prime.values())).values())).ambient_dim

    # residues[(vec, coord)] -> list of coefficient residues per prime
    modulus = 1
    combined: dict[tuple[int, int], list[int]] = {}
    for p, images in per_prime.items():
        specs = sorted(images, key=lambda s: s.zeta_image)
        points = [s.zeta_image for s in specs]
        canon = [images[s].canonical() for s in specs]
        coords = set()
        for s in canon:
            for k, v in enumerate(s.basis):
                coords.update((k, c) for c in v)
        for key in coords:
            vals = [canon[t].basis[key[0]].get(key[1], 0) for t in range(len(specs))]
            coeffs = _solve_vandermonde_mod(vals, points, deg, p)
            old = combined.get(key)
            if old is None:
                prev = [0] * deg
            else:
                prev = old
            combined[key] = [
                _crt_pair(a, modulus, b, p)[0] if modulus > 1 else b
                for a, b in zip(prev, coeffs)
            ]
        # coordinates seen before but absent now are zero at this prime
        for key, vals in combined.items():
            if key not in coords:
                combined[key] = [_crt_pair(a, modulus, 0, p)[0] for a in vals]
        modulus *= p
    basis: list[dict] = [dict() for _ in range(dim)]
    for (k, c), residues in combined.items():
        coeffs = []
        for r in residues:
            fr = rational_reconstruction(r % modulus, modulus)
            if fr is None:
                raise LiftError(
                    f"rational reconstruction failed for vector {k}, coordinate {c}; add primes"
                )
            coeffs.append(fr)
        val = field.from_coeffs(coeffs)
        if val:
            basis[k][c] = val
    return Subspace(ambient, basis, field, list(pivots), True)


# ---------------------------------------------------------------------------
# matrix dump format


def _field_header(field) -> str:
    if isinstance(field, CyclotomicField):
        return f"cyclotomic {field.l}"
    if isinstance(field, PrimeField):
        if field.spec is not None:
            return f"gf {field.p} {field.spec.zeta_image}"
        return f"gf {field.p}"
    raise TypeError(f"cannot serialize field {field!r}")


def dump_matrix(M: SparseMatrix, fh) -> None:
    """Write ``rows cols field`` then one ``row col value`` line per nonzero,
    in column-major order."""
    fh.write(f"{M.nrows} {M.ncols} {_field_header(M.field)}\n")
    exact = isinstance(M.field, CyclotomicField)
    for j, col in enumerate(M.columns):
        for i, v in col:
            fh.write(f"{i} {j} {v.serialize() if exact else v}\n")


def load_matrix(fh) -> SparseMatrix:
    if isinstance(fh, str):
        fh = io.StringIO(fh)
    header = fh.readline().split()
    nrows, ncols = int(header[0]), int(header[1])
    kind = header[2]
    if kind == "cyclotomic":
        field = CyclotomicField(int(header[3]))
        parse = field.parse
    elif kind == "gf":
        p = int(header[3])
        spec = None
        if len(header) > 4:
            l = _order_of(int(header[4]), p)
            spec = PrimeFieldSpec(l, p, int(header[4]))
        field = PrimeField(p, spec)
        parse = int
    else:
        raise ValueError(f"unknown field tag {kind!r}")
    columns: list[list] = [[] for _ in range(ncols)]
    for line in fh:
        line = line.strip()
        if not line:
            continue
        i, j, v = line.split(" ", 2)
        columns[int(j)].append((int(i), parse(v)))
    return SparseMatrix(nrows, ncols, columns, field)


def _order_of(x: int, p: int) -> int:
    n, y = 1, x % p
    while y != 1:
        y = y * x % p
        n += 1
    return n
