"""Command-line front end: ``qcenter center | blocks | dims``.

Exit codes: 0 success, 1 computational inconsistency, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import random
import sys
from pathlib import Path

import gmpy2

from .blocks import NonIntegralError, blocks_report
from .center import (
    DEFAULT_PRIME_FLOOR,
    DOMAINS,
    CenterPipeline,
    InconsistencyError,
    center_basis,
    centralizer_chain,
    default_primes,
    verify_center,
    widened_k_centralizer_check,
)
from .cyclotomic import PrimeFieldSpec, find_prime_spec, validate_order
from .linalg import dump_matrix
from .pbw import GENERATOR_WEIGHTS, AlgebraKind, check_serre, enumerate_weight_space, weight_census

log = logging.getLogger("qcenter")

EXIT_OK, EXIT_INCONSISTENT, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _kind(args) -> AlgebraKind:
    try:
        return AlgebraKind(args.algebra, args.l)
    except ValueError as e:
        raise UsageError(str(e)) from None


def parse_primes(text: str | None, l: int) -> list[PrimeFieldSpec] | None:
    """Comma-separated primes, each required to be 1 mod l."""
    if not text:
        return None
    out = []
    for item in text.split(","):
        try:
            p = int(item)
        except ValueError:
            raise UsageError(f"not an integer prime: {item!r}") from None
        if not gmpy2.is_prime(p) or p % l != 1:
            raise UsageError(f"{p} is not a prime congruent to 1 mod {l}")
        out.append(find_prime_spec(l, p))
    return out


def seeded_primes(l: int, seed: int | None, count: int = 3) -> list[PrimeFieldSpec]:
    """The default primes, or with a seed a reproducible random start point."""
    if seed is None:
        return default_primes(l, count)
    rng = random.Random(seed)
    return default_primes(l, count, rng.randrange(DEFAULT_PRIME_FLOOR, 2 * DEFAULT_PRIME_FLOOR))


def _emit(args, payload: dict, table: list[str]) -> None:
    text = json.dumps(payload, indent=2) if args.emit == "json" else "\n".join(table)
    if args.output:
        Path(args.output).write_text(text + "\n", encoding="utf-8")
    else:
        sys.stdout.write(text + "\n")


# -- center ----------------------------------------------------------------

def cmd_center(args) -> int:
    kind = _kind(args)
    primes = parse_primes(args.primes, kind.l)
    if args.backend == "modular" and primes is None:
        primes = seeded_primes(kind.l, args.seed)
    ok = True
    extra: dict = {}
    if args.check_serre and kind.tag == "sl3":
        extra["serre_check"] = check_serre(kind)
        ok &= extra["serre_check"]
    pipeline = CenterPipeline(kind, args.domain, jobs=args.jobs)
    if args.dump_matrices:
        out = Path(args.dump_matrices)
        out.mkdir(parents=True, exist_ok=True)
        for g, M in pipeline.matrices().items():
            with open(out / f"M_{g}.txt", "w", encoding="utf-8") as fh:
                dump_matrix(M, fh)
    report, _ = centralizer_chain(
        kind, backend=args.backend, primes=primes, pipeline=pipeline, lattice=args.lattice
    )
    if args.verify:
        basis_pipeline = pipeline if args.domain == "weight-zero" else None
        basis = center_basis(kind, backend=args.backend, primes=primes, pipeline=basis_pipeline)
        if len(basis) != report.center_dim:
            raise InconsistencyError(
                f"lifted basis has {len(basis)} elements, chain reported {report.center_dim}"
            )
        res = verify_center(basis)
        report.verified = res.ok
        if not res.ok:
            i, g = res.failure
            report.notes.append(f"basis element {i} does not commute with {g}")
        ok &= res.ok
    if args.widen_weights:
        wide = widened_k_centralizer_check(
            kind, primes=primes, backend=args.backend, pipelines={args.domain: pipeline}
        )
        extra["widened"] = wide.to_json()
    payload = report.to_json() | extra
    table = [
        f"algebra     {kind.tag}",
        f"l           {kind.l}",
        f"backend     {report.backend}",
        f"primes      {' '.join(map(str, report.primes)) or '-'}",
        f"domain      {report.domain} ({report.domain_dim})",
    ]
    table += [f"Z[{k}]  {v}" for k, v in report.dims.items()]
    table.append(f"center_dim  {report.center_dim}")
    if report.verified is not None:
        table.append(f"verified    {report.verified}")
    if "serre_check" in extra:
        table.append(f"serre_check {extra['serre_check']}")
    if "widened" in extra:
        w = extra["widened"]
        table.append(f"widened     weight-zero {w['center_weight_zero']}, k-invariant {w['center_k_invariant']}")
    table += [f"note        {n}" for n in report.notes]
    _emit(args, payload, table)
    return EXIT_OK if ok else EXIT_INCONSISTENT


# -- blocks ----------------------------------------------------------------

def cmd_blocks(args) -> int:
    try:
        validate_order(args.l)
    except ValueError as e:
        raise UsageError(str(e)) from None
    rep = blocks_report(args.l, total=args.total, dim_reg=args.dim_reg, dim_par=args.dim_par)
    c, f = rep["counts"], rep["formula"]
    table = [f"l = {args.l}", "rep       type        stab  members"]
    for o in rep["orbits"]:
        members = " ".join(f"({a},{b})" for a, b in o["members"])
        table.append(f"{str(tuple(o['rep'])):9} {o['type']:11} {o['stabilizer_order']:4}  {members}")
    table.append(f"counts    regular {c['regular']}, parabolic {c['parabolic']}, steinberg {c['steinberg']}")
    if "dim_par" in f:
        table.append(f"dim_reg {f['dim_reg']}  dim_par {f['dim_par']}  total {f['total']}")
    if f.get("inconsistent"):
        table.append("inconsistent inputs: parabolic dimension is not a nonnegative integer")
    _emit(args, rep, table)
    return EXIT_INCONSISTENT if f.get("inconsistent") else EXIT_OK


# -- dims ------------------------------------------------------------------

def cmd_dims(args) -> int:
    kind = _kind(args)
    zero = (0,) * kind.rank
    domain = len(enumerate_weight_space(kind, zero))
    targets = {g: len(enumerate_weight_space(kind, GENERATOR_WEIGHTS[g])) for g in kind.chain_generators}
    census = weight_census(kind)
    total = sum(census.values())
    payload = {
        "algebra": kind.tag,
        "l": kind.l,
        "domain_dim": domain,
        "target_dims": targets,
        "total": total,
        "basis_size": kind.l ** len(kind.letters),
    }
    table = [f"weight {zero}: {domain}"]
    table += [f"weight {GENERATOR_WEIGHTS[g]} ({g}): {d}" for g, d in targets.items()]
    table.append(f"all weights: {total} (l^{len(kind.letters)} = {payload['basis_size']})")
    _emit(args, payload, table)
    return EXIT_OK if total == payload["basis_size"] else EXIT_INCONSISTENT


# -- parser ----------------------------------------------------------------

def _jobs_default() -> int:
    try:
        return max(1, int(os.environ.get("QCENTER_JOBS", "1")))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--emit", choices=("table", "json"), default="table")
    common.add_argument("--output", help="write the report here instead of stdout")
    common.add_argument("-v", "--verbose", action="store_true")

    algebra = argparse.ArgumentParser(add_help=False)
    algebra.add_argument("--algebra", choices=("sl2", "sl3"), default="sl3")
    algebra.add_argument("--l", type=int, required=True, help="order of the root of unity")

    parser = argparse.ArgumentParser(prog="qcenter", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("center", parents=[common, algebra], help="centralizer chain and center dimension")
    p.add_argument("--backend", choices=("exact", "modular"), default="modular")
    p.add_argument("--primes", help="comma-separated primes, each 1 mod l")
    p.add_argument("--domain", choices=DOMAINS, default="k-invariant")
    p.add_argument("--lattice", action="store_true", help="all generator subsets, not just the chain")
    p.add_argument("--check-serre", action="store_true")
    p.add_argument("--widen-weights", action="store_true")
    p.add_argument("--dump-matrices", metavar="DIR")
    p.add_argument("--verify", action="store_true", help="lift the basis and check it symbolically")
    p.add_argument("--seed", type=int)
    p.add_argument("--jobs", type=int, default=_jobs_default())
    p.set_defaults(func=cmd_center)

    p = sub.add_parser("blocks", parents=[common], help="linkage classes and block accounting")
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--total", type=int, help="center dimension to solve for the parabolic part")
    p.add_argument("--dim-reg", type=int, default=16)
    p.add_argument("--dim-par", type=int)
    p.set_defaults(func=cmd_blocks)

    p = sub.add_parser("dims", parents=[common, algebra], help="weight-space dimensions only")
    p.set_defaults(func=cmd_dims)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except UsageError as e:
        parser.print_usage(sys.stderr)
        print(f"qcenter: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (InconsistencyError, NonIntegralError) as e:
        print(f"qcenter: inconsistency: {e}", file=sys.stderr)
        return EXIT_INCONSISTENT


if __name__ == "__main__":
    sys.exit(main())
