import pytest
from hypothesis import given
from hypothesis import strategies as st

from gjs import planar
from gjs.fock import CreationSymbol, FockVector, is_self_adjoint
from gjs.graded import GradedElement
from gjs.sampling import Sampler

seeds = st.integers(0, 2**32)
STRAND = GradedElement.diagram(1, 0, 1, planar.identity(1))


def symbol(s):
    return s.element(bottoms=[1])


def vector(fock, s, max_sector):
    return fock.vector(s.element(bottoms=range(max_sector + 1)))


def test_vector_structure(fock):
    v = fock.vector(STRAND + GradedElement.diagram(2, 0, 0, planar.cap(1)))
    assert set(v.sectors) == {1, 2}
    assert v.sector(1) == STRAND and v.sector(3).is_zero()
    with pytest.raises(ValueError):
        FockVector(6, {1: GradedElement.diagram(2, 0, 0, planar.cap(1))})
    with pytest.raises(ValueError):
        fock.vector(GradedElement.diagram(6, 0, 0, planar.cap(3)))


def test_symbols_need_one_bottom_strand():
    with pytest.raises(ValueError):
        CreationSymbol(GradedElement.diagram(0, 1, 1, planar.cup(1)))


def test_vacuum_and_small_cases(alg, fock):
    vacuum = fock.vacuum()
    xi = STRAND.regrade(1)  # the strand ending on the left
    assert fock.annihilate(STRAND, vacuum).is_zero()
    assert fock.create(xi, vacuum).sector(1) == xi
    assert fock.annihilate(xi, fock.create(xi, vacuum)).sector(0) == fock.inner_product_a(xi, xi)
    assert fock.inner_product_a(STRAND, STRAND) == alg.jones_projection(1)


def test_truncation_flag(fock):
    deep = fock.vector(GradedElement.diagram(5, 1, 0, planar.enumerate_nc_pairings(6, bottom=5)[0]))
    out = fock.create(STRAND, deep)
    assert out.truncated and out.is_zero()
    assert not fock.create(STRAND, fock.vector(STRAND.regrade(1))).truncated


@given(seeds)
def test_pimsner_relation(alg, fock, seed):
    s = Sampler(seed)
    xi, eta = symbol(s), symbol(s)
    v = vector(fock, s, fock.depth - 2)
    lhs = fock.annihilate(xi, fock.create(eta, v))
    assert lhs == fock.left_action(fock.inner_product_a(xi, eta), v)


@given(seeds)
def test_creation_adjoint(fock, seed):
    s = Sampler(seed)
    xi = symbol(s)
    v, w = vector(fock, s, fock.depth - 2), vector(fock, s, fock.depth - 1)
    assert fock.inner(fock.create(xi, v), w) == fock.inner(v, fock.annihilate(xi, w))


@given(seeds)
def test_field_is_walker(alg, fock, seed):
    s = Sampler(seed)
    xi = s.self_adjoint_symbol(alg.star)
    assert is_self_adjoint(alg, xi)
    v = vector(fock, s, fock.depth - 2)
    assert fock.field(xi, v).as_element() == alg.walker(xi, v.as_element())


@given(seeds)
def test_inner_product_properties(alg, fock, seed):
    s = Sampler(seed)
    xi, eta = symbol(s), symbol(s)
    a = s.bottomless(3)
    assert fock.inner_product_a(xi, eta) == alg.star(fock.inner_product_a(eta, xi))
    assert fock.inner_product_a(xi, alg.wedge(eta, a)) == alg.wedge(fock.inner_product_a(xi, eta), a)
    assert fock.inner_product_a(xi, eta).max_bottom() == 0
    assert alg.trace(fock.inner_product_a(xi, xi)) > 0


@given(seeds)
def test_sector_identification(alg, fock, seed):
    s = Sampler(seed)
    xi, eta, zeta = symbol(s), symbol(s), symbol(s)
    ident = fock.identify_sectors
    assert ident(alg.level_unit(3), eta) == eta
    assert ident(ident(xi, eta), zeta) == ident(xi, ident(eta, zeta))
    assert fock.create(xi, fock.vector(eta)).sector(2) == ident(xi, eta)
    pair = ident(xi, eta)
    expected = fock.inner_product_a(eta, alg.wedge(fock.inner_product_a(xi, xi), eta))
    assert fock.inner_product_a(pair, pair) == expected


def test_left_action_requires_bottomless(fock):
    with pytest.raises(ValueError):
        fock.left_action(STRAND, fock.vacuum())
