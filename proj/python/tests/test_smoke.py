import pytest

import ulmforge as uf


def test_group_and_invariants():
    g = uf.Group(2, [2, 1])
    assert str(g) == "p=2; cyclic=[2,1]; divisible=0"
    assert g.order == 8
    assert uf.Group(2, [], 1).order is None
    assert uf.ulm_invariant(g, 0) == 1
    assert uf.ulm_invariant(g, 1) == 1
    assert uf.isomorphic(g, uf.Group.parse("p=2; cyclic=[1,2]; divisible=0"))
    assert not uf.isomorphic(uf.Group(2, [2]), uf.Group(2, [1, 1]))


def test_encode_decode_round_trip():
    g = uf.Group(3, [2, 1])
    s = uf.encode(g, 2)
    assert s.size == 29
    ok, failed, report = uf.check(s)
    assert ok and failed == [] and report.endswith("model: yes\n")
    moved = uf.permute(s, 7)
    back, m = uf.decode(moved)
    assert m == 2 and uf.isomorphic(back, g)
    assert uf.structure_isomorphic(s, moved)
    assert uf.Structure.parse(str(s)) == s


def test_reduction():
    s = uf.encode(uf.Group(2, [1]), 1)
    assert uf.reduce(s) == uf.Group(2, [2, 1])
    assert uf.hred(uf.Group(2, [2, 1]), 2).cyclic == [3, 2, 1, 1]
    assert all(line.startswith("PASS") for line in uf.verify(uf.Group(2, [2]), 3))


def test_formulas():
    g = uf.Group(2, [2, 1])
    assert uf.evaluate("phi[0,=1]", g)[0]
    assert not uf.evaluate("phi[0,=2]", g)[0]
    assert uf.evaluate("psi[1]", uf.Group(2, [2]), element="cyclic=(2); prufer=()")[0]


def test_errors():
    with pytest.raises(uf.ParseError):
        uf.Group.parse("nonsense")
    with pytest.raises(uf.ParseError):
        uf.Structure.parse("p=2; N=1")
    with pytest.raises(uf.DomainError):
        uf.encode(uf.Group(2, [], 1))
    bad = uf.Structure.parse("p=2; N=2; zero=0\nR0 = {0}\n")
    assert not uf.check(bad)[0]
    with pytest.raises(uf.DomainError):
        uf.decode(bad)


def test_selftest_lines():
    lines = uf.selftest("primes=2; max_size=4; max_m=1")
    assert lines and all(line.startswith("PASS") for line in lines)
