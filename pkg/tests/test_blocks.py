from fractions import Fraction

import pytest

from qcenter.blocks import (
    WEYL_GROUP,
    NonIntegralError,
    blocks_report,
    center_dimension_formula,
    dot_action,
    orbit_counts,
    orbits,
    parabolic_weights,
    solve_parabolic_dim,
)


def _matmul(a, b):
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(2)) for j in range(2)) for i in range(2))


def test_weyl_group_has_six_elements():
    assert len(WEYL_GROUP) == 6
    assert len(set(WEYL_GROUP.values())) == 6
    for a in WEYL_GROUP.values():
        for b in WEYL_GROUP.values():
            assert _matmul(a, b) in WEYL_GROUP.values()


def test_dot_action_examples():
    assert dot_action("e", (2, 3), 5) == (2, 3)
    assert dot_action("s1", (0, 0), 5) == (3, 1)
    for w in WEYL_GROUP:
        assert dot_action(w, (4, 4), 5) == (4, 4)


def test_dot_action_is_group_action():
    l = 5
    for a in WEYL_GROUP.values():
        for b in WEYL_GROUP.values():
            ab = _matmul(a, b)
            for x in range(l):
                for y in range(l):
                    assert dot_action(ab, (x, y), l) == dot_action(a, dot_action(b, (x, y), l), l)


@pytest.mark.parametrize("l, counts", [
    (5, (2, 4, 1)),
    (7, (5, 6, 1)),
    (11, (15, 10, 1)),
    (13, (22, 12, 1)),
])
def test_orbit_counts(l, counts):
    c = orbit_counts(l)
    assert (c["regular"], c["parabolic"], c["steinberg"]) == counts
    assert counts == ((l - 1) * (l - 2) // 6, l - 1, 1)


@pytest.mark.parametrize("l", [5, 7, 11, 13])
def test_orbits_partition(l):
    orbs = orbits(l)
    seen = set()
    for o in orbs:
        assert not (o.members & seen)
        seen |= o.members
        assert o.size * o.stabilizer_order == 6
        assert 6 % o.size == 0
        assert o.representative in o.members
        for w in WEYL_GROUP:
            assert {dot_action(w, m, l) for m in o.members} == o.members
    assert seen == {(a, b) for a in range(l) for b in range(l)}
    assert sum(o.size for o in orbs) == l * l


@pytest.mark.parametrize("l", [5, 7, 11, 13])
def test_parabolic_members(l):
    members = set().union(*(o.members for o in orbits(l) if o.type == "parabolic"))
    assert members == parabolic_weights(l)
    assert len(members) == 3 * (l - 1)


def test_parabolic_example():
    orb = next(o for o in orbits(5) if (1, 2) in o.members)
    assert orb.type == "parabolic"


def test_invalid_order():
    with pytest.raises(ValueError):
        orbits(9)
    with pytest.raises(ValueError):
        orbits(4)


@pytest.mark.parametrize("l, reg, par, total", [(5, 16, 6, 57), (5, 16, 0, 33), (7, 16, 6, 117)])
def test_center_dimension_formula(l, reg, par, total):
    assert center_dimension_formula(l, reg, par) == total


@pytest.mark.parametrize("l, total, expected", [(5, 57, 6), (5, 33, 0), (7, 117, 6)])
def test_solve_parabolic_dim(l, total, expected):
    assert solve_parabolic_dim(l, total, 16) == expected


def test_solve_parabolic_dim_non_integral():
    with pytest.raises(NonIntegralError) as info:
        solve_parabolic_dim(5, 58, 16)
    assert info.value.value == Fraction(25, 4)


def test_blocks_report_schema():
    rep = blocks_report(5, total=57, dim_reg=16)
    assert set(rep) == {"l", "orbits", "counts", "formula"}
    assert rep["formula"] == {"dim_reg": 16, "total": 57, "dim_par": 6}
    assert set(rep["orbits"][0]) == {"rep", "members", "type", "stabilizer_order"}
    assert sum(len(o["members"]) for o in rep["orbits"]) == 25
    bad = blocks_report(5, total=58)
    assert bad["formula"]["inconsistent"]
