"""End-to-end computation of the center of u_q.

The center is found inside the K-centralizer by intersecting the kernels of
the commutator maps ``x -> g x - x g`` for the E- and F-generators.  Each map
is assembled once over Q(zeta_l); the modular backend specializes it into
several prime fields, and the final basis is lifted back to Q(zeta_l) and
re-verified symbolically.

Two domains are supported:

``"k-invariant"``  monomials whose weight is 0 modulo l in every coordinate,
                   i.e. the full joint fixed space of conjugation by K1, K2.
``"weight-zero"``  monomials of weight exactly zero (a subspace of the above).

Both yield the same center; their intermediate centralizers differ.
"""

from __future__ import annotations

import itertools
import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from .cyclotomic import CyclotomicField, PrimeFieldSpec, find_prime_spec
from .linalg import (
    BadPrimeError,
    LiftError,
    SparseMatrix,
    Subspace,
    intersect_kernel,
    kernel,
    lift_to_exact,
)
from .pbw import (
    GENERATOR_WEIGHTS,
    AlgebraElement,
    AlgebraKind,
    PBWAlgebra,
    enumerate_congruent_weight_space,
    enumerate_weight_space,
)

log = logging.getLogger(__name__)

__all__ = [
    "DOMAINS",
    "CenterBasis",
    "CentralizerChainReport",
    "CenterPipeline",
    "InconsistencyError",
    "VerificationResult",
    "build_commutator_matrix",
    "center_basis",
    "centralizer_chain",
    "default_primes",
    "verify_center",
    "widened_k_centralizer_check",
]

DOMAINS = ("k-invariant", "weight-zero")
DEFAULT_PRIME_FLOOR = 1 << 20
MAX_PRIMES = 10


class InconsistencyError(RuntimeError):
    """A cross-check failed (prime disagreement, lift failure, stray weight)."""


def _zero_weight(kind: AlgebraKind) -> tuple[int, ...]:
    return (0,) * kind.rank


def domain_monomials(kind: AlgebraKind, domain: str, wt: tuple[int, ...] | None = None) -> list:
    wt = _zero_weight(kind) if wt is None else tuple(wt)
    if domain == "weight-zero":
        return enumerate_weight_space(kind, wt)
    if domain == "k-invariant":
        return enumerate_congruent_weight_space(kind, wt)
    raise ValueError(f"unknown domain {domain!r}; expected one of {DOMAINS}")


def build_commutator_matrix(
    kind: AlgebraKind,
    g: str,
    domain: Sequence[tuple] | None = None,
    target: Sequence[tuple] | None = None,
) -> SparseMatrix:
    """Matrix of ``x -> g x - x g`` from ``domain`` to ``target``.

    Column s holds the coordinates of the commutator of g with ``domain[s]``
    in the ordered ``target`` basis.  Defaults are the weight-zero space and
    the weight space of g.
    """
    if g not in kind.chain_generators:
        raise ValueError(f"{g} is not one of {kind.chain_generators}")
    if domain is None:
        domain = enumerate_weight_space(kind, _zero_weight(kind))
    if target is None:
        target = enumerate_weight_space(kind, GENERATOR_WEIGHTS[g])
    alg = PBWAlgebra(kind)
    index = {m: i for i, m in enumerate(target)}
    columns = []
    for mono in domain:
        col = []
        for m, c in alg.commutator_terms(g, mono).items():
            i = index.get(m)
            if i is None:
                raise InconsistencyError(
                    f"commutator of {g} with {mono} has a term {m} outside the target space"
                )
            col.append((i, c))
        columns.append(col)
    return SparseMatrix(len(target), len(domain), columns, alg.field)


def _subset_key(gens: Sequence[str], order: Sequence[str]) -> str:
    rank = {g: i for i, g in enumerate(order)}
    return ",".join(sorted(gens, key=rank.__getitem__))


@dataclass
class CentralizerChainReport:
    """Kernel dimensions of the centralizer lattice and run provenance."""

    algebra: str
    l: int
    backend: str
    domain: str
    domain_dim: int
    dims: dict[str, int]
    primes: list[int] = field(default_factory=list)
    timings: dict[str, float] = field(default_factory=dict)
    center_dim: int | None = None
    verified: bool | None = None
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "algebra": self.algebra,
            "l": self.l,
            "backend": self.backend,
            "primes": list(self.primes),
            "domain": self.domain,
            "domain_dim": self.domain_dim,
            "dims": dict(self.dims),
            "center_dim": self.center_dim,
            "verified": self.verified,
            "timings": {k: round(v, 3) for k, v in self.timings.items()},
            "notes": list(self.notes),
        }

    def check_antitone(self) -> None:
        for key, d in self.dims.items():
            gens = key.split(",")
            for r in range(1, len(gens)):
                for sub in itertools.combinations(gens, r):
                    k = ",".join(sub)
                    if k in self.dims and self.dims[k] < d:
                        raise InconsistencyError(f"dim Z_{{{key}}} = {d} exceeds dim Z_{{{k}}}")


@dataclass
class CenterBasis:
    """A basis of the center as PBW elements with Q(zeta_l) coefficients."""

    kind: AlgebraKind
    elements: list[AlgebraElement]
    subspace: Subspace | None = None
    domain: list | None = None

    @property
    def field(self) -> CyclotomicField:
        return CyclotomicField(self.kind.l)

    def __len__(self) -> int:
        return len(self.elements)

    def contains_unit(self) -> bool:
        unit = (0,) * len(self.kind.letters)
        if self.subspace is None or self.domain is None:
            return any(unit in e.terms for e in self.elements)
        idx = self.domain.index(unit)
        return self.subspace.contains({idx: self.field.one()})

    def to_json(self) -> list:
        return [
            [{"monomial": list(m), "coeff": c.serialize()} for m, c in sorted(e.terms.items())]
            for e in self.elements
        ]

    @classmethod
    def from_json(cls, kind: AlgebraKind, data: list) -> "CenterBasis":
        fld = CyclotomicField(kind.l)
        elements = []
        for item in data:
            terms = {tuple(t["monomial"]): fld.parse(t["coeff"]) for t in item}
            elements.append(AlgebraElement(kind, terms))
        return cls(kind, elements)


@dataclass
class VerificationResult:
    ok: bool
    failure: tuple[int, str] | None = None

    def __bool__(self) -> bool:
        return self.ok


def verify_center(basis: CenterBasis) -> VerificationResult:
    """Check symbolically that every element commutes with every generator,
    K-generators included.  Reports the first failing (index, generator)."""
    alg = PBWAlgebra(basis.kind)
    gens = basis.kind.chain_generators + basis.kind.k_generators
    for i, x in enumerate(basis.elements):
        for g in gens:
            if alg.commutator(g, x):
                return VerificationResult(False, (i, g))
    return VerificationResult(True)


def default_primes(l: int, count: int = 3, floor: int = DEFAULT_PRIME_FLOOR) -> list[PrimeFieldSpec]:
    out = []
    bound = floor
    for _ in range(count):
        spec = find_prime_spec(l, bound)
        out.append(spec)
        bound = spec.p + 1
    return out


def _pool_map(fn, items: list, jobs: int) -> list:
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(fn, items))


def _default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("QCENTER_JOBS", "1")))
    except ValueError:
        return 1


class CenterPipeline:
    """Holds the exact commutator matrices for one algebra and domain and
    runs kernel computations over Q(zeta_l) or its prime-field images."""

    def __init__(self, kind: AlgebraKind, domain: str = "k-invariant", jobs: int | None = None):
        if domain not in DOMAINS:
            raise ValueError(f"unknown domain {domain!r}; expected one of {DOMAINS}")
        self.kind = kind
        self.domain_name = domain
        self.jobs = _default_jobs() if jobs is None else jobs
        self.timings: dict[str, float] = {}
        t = time.perf_counter()
        self.domain = domain_monomials(kind, domain)
        self.targets = {
            g: domain_monomials(kind, domain, GENERATOR_WEIGHTS[g]) for g in kind.chain_generators
        }
        self.timings["enumerate"] = time.perf_counter() - t
        self._exact: dict[str, SparseMatrix] = {}
        self._special: dict[tuple, dict[str, SparseMatrix]] = {}

    @property
    def field(self) -> CyclotomicField:
        return CyclotomicField(self.kind.l)

    # -- matrices -----------------------------------------------------------
    def matrix(self, g: str) -> SparseMatrix:
        M = self._exact.get(g)
        if M is None:
            t = time.perf_counter()
            M = build_commutator_matrix(self.kind, g, self.domain, self.targets[g])
            self._exact[g] = M
            self.timings[f"build {g}"] = time.perf_counter() - t
        return M

    def matrices(self) -> dict[str, SparseMatrix]:
        return {g: self.matrix(g) for g in self.kind.chain_generators}

    def specialized(self, spec: PrimeFieldSpec | None) -> dict[str, SparseMatrix]:
        if spec is None:
            return self.matrices()
        key = (spec.p, spec.zeta_image)
        mats = self._special.get(key)
        if mats is None:
            mats = {g: M.specialize(spec) for g, M in self.matrices().items()}
            self._special[key] = mats
        return mats

    # -- kernel chains ---------------------------------------------------------
    def chain(self, order: Sequence[str], spec: PrimeFieldSpec | None = None) -> tuple[list[int], Subspace]:
        """Iterated kernel/restrict along ``order``; returns dims and final subspace."""
        order = list(order)
        if sorted(order) != sorted(self.kind.chain_generators):
            raise ValueError(f"order must be a permutation of {self.kind.chain_generators}")
        mats = self.specialized(spec)
        S = kernel(mats[order[0]])
        dims = [S.dim]
        for g in order[1:]:
            S = intersect_kernel(mats[g], S)
            dims.append(S.dim)
        return dims, S

    def lattice(self, spec: PrimeFieldSpec | None = None) -> tuple[dict[str, int], Subspace]:
        """Kernel dimension for every nonempty generator subset."""
        gens = self.kind.chain_generators
        mats = self.specialized(spec)
        spaces: dict[tuple, Subspace] = {}
        for g in gens:
            spaces[(g,)] = kernel(mats[g])
        for r in range(2, len(gens) + 1):
            for sub in itertools.combinations(gens, r):
                # extend the smallest already-known subset by one generator
                best = min(
                    (sub[:i] + sub[i + 1 :] for i in range(r)), key=lambda s: spaces[s].dim
                )
                extra = next(g for g in sub if g not in best)
                spaces[sub] = intersect_kernel(mats[extra], spaces[best])
        dims = {",".join(sub): S.dim for sub, S in spaces.items()}
        return dims, spaces[tuple(gens)]

    def center_subspace(self, spec: PrimeFieldSpec | None = None) -> Subspace:
        return self.chain(self.kind.chain_generators, spec)[1].canonical()


def _run_lattice(args):
    pipeline, spec = args
    t = time.perf_counter()
    dims, S = pipeline.lattice(spec)
    return spec, dims, S.canonical(), time.perf_counter() - t


def _run_chain(args):
    pipeline, spec, order = args
    t = time.perf_counter()
    dims, S = pipeline.chain(order, spec)
    return spec, dims, S.canonical(), time.perf_counter() - t


def _modular_agreement(kind, run, specs, min_agree):
    """Run ``run(spec) -> (dims, ...)`` over primes until ``min_agree`` of
    them report identical dimensions.

    Specialization can only lose rank, so a prime reporting any dimension
    above the pointwise minimum is bad; it is discarded and a fresh prime is
    drawn, up to ``MAX_PRIMES`` primes in total.
    """
    used = list(specs)
    results = {s: run(s) for s in used}
    while True:
        dims = {s: r[0] for s, r in results.items()}
        keys = list(next(iter(dims.values())))
        best = {k: min(d[k] for d in dims.values()) for k in keys}
        good = [s for s in used if dims[s] == best]
        if len(good) >= min_agree:
            for s in used:
                if s not in good:
                    log.warning("prime %d gave larger kernels than the others; discarded", s.p)
            return {s: results[s] for s in good}, used
        if len(used) >= MAX_PRIMES:
            raise InconsistencyError(
                f"no {min_agree} agreeing primes among {[s.p for s in used]}"
            )
        nxt = find_prime_spec(kind.l, max(s.p for s in used) + 1)
        log.warning("primes disagree; adding %d", nxt.p)
        used.append(nxt)
        results[nxt] = run(nxt)


def centralizer_chain(
    kind: AlgebraKind,
    order: Sequence[str] | None = None,
    backend: str = "modular",
    primes: Sequence[PrimeFieldSpec] | None = None,
    domain: str = "k-invariant",
    pipeline: CenterPipeline | None = None,
    lattice: bool = False,
) -> tuple[CentralizerChainReport, Subspace]:
    """Centralizer dimensions along ``order`` (or the whole subset lattice).

    With the modular backend, every prime must agree; disagreeing primes are
    replaced by fresh ones up to ten primes in total.  The returned subspace
    is over the first agreeing prime field, or over Q(zeta_l) for the exact
    backend.
    """
    pipeline = pipeline or CenterPipeline(kind, domain)
    order = list(order or kind.chain_generators)
    t0 = time.perf_counter()
    timings: dict[str, float] = {}

    def run(spec):
        t = time.perf_counter()
        if lattice:
            dims, S = pipeline.lattice(spec)
        else:
            dl, S = pipeline.chain(order, spec)
            dims = {_subset_key(order[: i + 1], kind.chain_generators): d for i, d in enumerate(dl)}
        timings[f"elimination {spec.p if spec else 'exact'}"] = time.perf_counter() - t
        return dims, S

    pipeline.matrices()
    timings["build"] = sum(v for k, v in pipeline.timings.items() if k.startswith("build"))
    if backend == "exact":
        dims, S = run(None)
        used: list[PrimeFieldSpec] = []
    elif backend == "modular":
        specs = list(primes) if primes else default_primes(kind.l)
        agreed, used = _modular_agreement(kind, run, specs, len(specs))
        first = next(iter(agreed))
        dims, S = agreed[first]
    else:
        raise ValueError(f"unknown backend {backend!r}; expected 'exact' or 'modular'")
    timings["total"] = time.perf_counter() - t0
    full = ",".join(kind.chain_generators)
    report = CentralizerChainReport(
        algebra=kind.tag,
        l=kind.l,
        backend=backend,
        domain=pipeline.domain_name,
        domain_dim=len(pipeline.domain),
        dims=dims,
        primes=[s.p for s in used],
        timings=timings,
        center_dim=dims.get(full),
    )
    report.check_antitone()
    return report, S


def _elements_from_subspace(kind, domain, S: Subspace) -> list[AlgebraElement]:
    out = []
    for vec in S.basis:
        out.append(AlgebraElement(kind, {domain[c]: v for c, v in vec.items()}))
    return out


def center_basis(
    kind: AlgebraKind,
    backend: str | None = None,
    primes: Sequence[PrimeFieldSpec] | None = None,
    domain: str = "weight-zero",
    pipeline: CenterPipeline | None = None,
    max_primes: int = MAX_PRIMES,
) -> CenterBasis:
    """Exact basis of the center in reduced echelon form over Q(zeta_l).

    The modular route computes the canonical center subspace under every
    embedding Q(zeta_l) -> GF(p) for each prime and lifts by CRT and rational
    reconstruction, adding primes on failure.
    """
    if backend is None:
        backend = "exact" if kind.tag == "sl2" else "modular"
    pipeline = pipeline or CenterPipeline(kind, domain)
    order = kind.chain_generators
    if backend == "exact":
        S = pipeline.center_subspace(None)
        return CenterBasis(kind, _elements_from_subspace(kind, pipeline.domain, S), S, pipeline.domain)
    if backend != "modular":
        raise ValueError(f"unknown backend {backend!r}")
    specs = list(primes) if primes else default_primes(kind.l)
    per_prime: dict[int, dict] = {}
    queue = list(specs)
    lifted = None
    tried = 0
    while queue:
        spec = queue.pop(0)
        tried += 1
        conj = spec.conjugates()
        results = _pool_map(_run_chain, [(pipeline, c, order) for c in conj], pipeline.jobs)
        per_prime[spec.p] = {c: S for c, _, S, _ in results}
        if queue:
            continue
        try:
            lifted = lift_to_exact(per_prime, pipeline.field)
            break
        except BadPrimeError as e:
            log.warning("discarding bad prime %s: %s", e.prime, e)
            per_prime.pop(e.prime, None)
        except LiftError as e:
            log.info("lift incomplete with %d primes: %s", len(per_prime), e)
        if tried >= max_primes:
            raise InconsistencyError(f"center basis did not lift with {tried} primes")
        queue.append(find_prime_spec(kind.l, max(per_prime or [spec.p]) + 1))
    assert lifted is not None
    # exact re-check: M x = 0 over Q(zeta) for every matrix
    for g, M in pipeline.matrices().items():
        for v in lifted.basis:
            if M.apply(v):
                raise InconsistencyError(f"lifted vector is not in the kernel of the {g} commutator")
    return CenterBasis(kind, _elements_from_subspace(kind, pipeline.domain, lifted), lifted, pipeline.domain)


@dataclass
class WidenedCheckReport:
    algebra: str
    l: int
    weight_zero_dim: int
    k_invariant_dim: int
    weight_zero_chain: dict[str, int]
    k_invariant_chain: dict[str, int]
    primes: list[int]

    @property
    def center_weight_zero(self) -> int:
        return self.weight_zero_chain[",".join(self._gens)]

    @property
    def center_k_invariant(self) -> int:
        return self.k_invariant_chain[",".join(self._gens)]

    @property
    def _gens(self):
        return ("E1", "E2", "F1", "F2") if self.algebra == "sl3" else ("E", "F")

    @property
    def extra_central_elements(self) -> int:
        return self.center_k_invariant - self.center_weight_zero

    def to_json(self) -> dict:
        return {
            "algebra": self.algebra,
            "l": self.l,
            "domains": {
                "weight-zero": {"dim": self.weight_zero_dim, "chain": self.weight_zero_chain},
                "k-invariant": {"dim": self.k_invariant_dim, "chain": self.k_invariant_chain},
            },
            "center_weight_zero": self.center_weight_zero,
            "center_k_invariant": self.center_k_invariant,
            "extra_central_elements": self.extra_central_elements,
            "primes": self.primes,
        }


def widened_k_centralizer_check(
    kind: AlgebraKind,
    primes: Sequence[PrimeFieldSpec] | None = None,
    backend: str = "modular",
    pipelines: dict[str, CenterPipeline] | None = None,
) -> WidenedCheckReport:
    """Run the chain on the weight-zero domain and on the full K-invariant
    domain (weights divisible by l) and compare.

    ``pipelines`` may map domain names to existing pipelines to reuse their
    matrices.
    """
    pipelines = pipelines or {}
    reports = {}
    for dom in ("weight-zero", "k-invariant"):
        rep, _ = centralizer_chain(
            kind, backend=backend, primes=primes, domain=dom, pipeline=pipelines.get(dom)
        )
        reports[dom] = rep
    wz, ki = reports["weight-zero"], reports["k-invariant"]
    return WidenedCheckReport(
        algebra=kind.tag,
        l=kind.l,
        weight_zero_dim=wz.domain_dim,
        k_invariant_dim=ki.domain_dim,
        weight_zero_chain=wz.dims,
        k_invariant_chain=ki.dims,
        primes=sorted(set(wz.primes) | set(ki.primes)),
    )
