import pytest

from qcenter.center import (
    CenterBasis,
    CenterPipeline,
    InconsistencyError,
    _modular_agreement,
    build_commutator_matrix,
    center_basis,
    centralizer_chain,
    default_primes,
    domain_monomials,
    verify_center,
    widened_k_centralizer_check,
)
from qcenter.cyclotomic import find_prime_spec
from qcenter.linalg import kernel
from qcenter.pbw import AlgebraKind, PBWAlgebra, enumerate_weight_space


def sl2(l):
    return AlgebraKind("sl2", l)


def test_sl2_matrix_shape():
    M = build_commutator_matrix(sl2(5), "E")
    assert M.shape == (20, 25)
    domain = enumerate_weight_space(sl2(5), (0,))
    assert M.columns[domain.index((0, 0, 0))] == []


def test_rejects_non_chain_generator():
    with pytest.raises(ValueError):
        build_commutator_matrix(sl2(5), "K")


def test_stray_weight_is_an_error():
    kind = sl2(5)
    # target deliberately missing a monomial of the right weight
    target = enumerate_weight_space(kind, (2,))[1:]
    with pytest.raises(InconsistencyError):
        build_commutator_matrix(kind, "E", target=target)


@pytest.mark.parametrize("l, dim", [(3, 4), (5, 7), (7, 10), (11, 16)])
def test_sl2_center_dimension(l, dim):
    report, S = centralizer_chain(sl2(l), backend="exact")
    assert report.center_dim == dim == (3 * l - 1) // 2
    basis = center_basis(sl2(l), backend="exact")
    assert len(basis) == dim
    assert verify_center(basis)
    assert basis.contains_unit()


@pytest.mark.parametrize("l", [5, 7])
def test_sl2_stacked_matrix_cross_check(l):
    kind = sl2(l)
    pipe = CenterPipeline(kind, "weight-zero")
    stacked = pipe.matrix("E").vstack(pipe.matrix("F"))
    assert kernel(stacked).dim == pipe.chain(["E", "F"])[1].dim
    assert kernel(stacked) == pipe.chain(["F", "E"])[1]


def test_sl2_modular_matches_exact():
    kind = sl2(7)
    exact, _ = centralizer_chain(kind, backend="exact")
    modular, _ = centralizer_chain(kind, backend="modular", primes=default_primes(7))
    assert exact.dims == modular.dims
    basis = center_basis(kind, backend="modular")
    assert basis.subspace == center_basis(kind, backend="exact").subspace


def test_sl2_widened_domain_is_weight_zero():
    for l in (5, 7, 9):
        kind = sl2(l)
        assert domain_monomials(kind, "k-invariant") == domain_monomials(kind, "weight-zero")
    rep = widened_k_centralizer_check(sl2(5), backend="exact")
    assert rep.extra_central_elements == 0


def test_verify_center_examples():
    kind = AlgebraKind("sl3", 5)
    alg = PBWAlgebra(kind)
    assert verify_center(CenterBasis(kind, [alg.one()]))
    res = verify_center(CenterBasis(kind, [alg.monomial({"K1": 1})]))
    assert not res and res.failure == (0, "E1")


def test_center_basis_json_roundtrip():
    kind = sl2(5)
    basis = center_basis(kind, backend="exact")
    again = CenterBasis.from_json(kind, basis.to_json())
    assert [e.terms for e in again.elements] == [e.terms for e in basis.elements]
    assert all(len(t["monomial"]) == 3 for elem in basis.to_json() for t in elem)


def test_unit_in_every_kernel():
    kind = sl2(7)
    pipe = CenterPipeline(kind, "weight-zero")
    unit = pipe.domain.index((0, 0, 0))
    for g in kind.chain_generators:
        assert kernel(pipe.matrix(g)).contains({unit: pipe.field.one()})


def test_report_json_schema():
    report, _ = centralizer_chain(sl2(5), backend="exact")
    data = report.to_json()
    for key in ("algebra", "l", "backend", "dims", "center_dim", "verified", "timings"):
        assert key in data
    assert data["dims"]["E,F"] == data["center_dim"]


def test_modular_agreement_discards_outlier():
    kind = sl2(5)
    specs = default_primes(5)
    calls = []

    def run(spec):
        calls.append(spec.p)
        # the second prime pretends to lose rank
        return ({"E": 8, "E,F": 8} if spec == specs[1] else {"E": 7, "E,F": 7}), None

    agreed, used = _modular_agreement(kind, run, specs, 3)
    assert specs[1] not in agreed and len(agreed) == 3
    assert len(used) == 4 and calls[-1] == find_prime_spec(5, specs[-1].p + 1).p


def test_modular_agreement_gives_up():
    kind = sl2(5)
    specs = default_primes(5)
    counter = iter(range(100))

    def run(spec):
        n = next(counter)
        return {"E": n}, None

    with pytest.raises(InconsistencyError):
        _modular_agreement(kind, run, specs, 3)


def test_chain_rejects_bad_order():
    pipe = CenterPipeline(sl2(5))
    with pytest.raises(ValueError):
        pipe.chain(["E"])


def test_unknown_domain():
    with pytest.raises(ValueError):
        CenterPipeline(sl2(5), "everything")
