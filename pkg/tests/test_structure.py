import pytest

from gtdih.common import ShadowError
from gtdih.shadows import Shadow, identity, compose, enumerate_closed
from gtdih.structure import (AffCoord, nu, rho, rho_inv, hn_membership, affine_group,
                             structure_of, components, from_components, index_pb3,
                             arith_lower_bound)


def test_nu():
    assert nu(1) == 0
    assert nu(5) == 1
    assert nu(7) == 2
    with pytest.raises(ValueError):
        nu(4)

    # only u mod 8 matters for the parity of nu
    for u in range(1, 400, 2):
        assert nu(u) % 2 == nu(u % 8) % 2


def test_rho():
    assert rho(identity(8)) == AffCoord(8, 0, 1)
    assert rho(Shadow(4, 1, 1)) == AffCoord(4, 1, 3)
    assert rho(Shadow(6, 2, 2)) == AffCoord(6, 2, 5)


@pytest.mark.parametrize('n', [4, 6, 8, 12])
def test_rho_isomorphism(n):
    shadows = enumerate_closed(n)
    image = {rho(s) for s in shadows}
    assert len(image) == len(shadows)
    for a in shadows:
        assert rho_inv(rho(a)) == a
        for b in shadows:
            assert rho(compose(a, b)) == rho(a)*rho(b)

    group = affine_group(n)
    if n % 4:
        assert image == set(group)
    else:
        assert image == {a for a in group if hn_membership(a)}
        assert 2*len(image) == len(group)


def test_hn_membership():
    assert hn_membership(AffCoord(8, 1, 5))
    assert not hn_membership(AffCoord(8, 0, 5))
    assert hn_membership(AffCoord(8, 0, 1))
    with pytest.raises(ShadowError):
        hn_membership(AffCoord(6, 0, 1))
    with pytest.raises(ShadowError):
        rho_inv(AffCoord(8, 0, 5))
    for a in affine_group(16):
        assert hn_membership(a) == hn_membership(AffCoord(16, a.k, a.u + 8))


def test_affine_coordinates():
    a = AffCoord(12, 5, 7)
    assert a*a.inverse() == AffCoord(12, 0, 1)
    assert a.inverse()*a == AffCoord(12, 0, 1)
    with pytest.raises(ShadowError):
        AffCoord(12, 0, 3)
    with pytest.raises(ShadowError):
        a*AffCoord(8, 0, 1)


def test_structure_of():
    desc = structure_of(6)
    assert desc.factors == ('Aff(Z/3)', 'Z2')
    assert desc.order == 12

    desc = structure_of(8)
    assert desc.factors == ('Aff(Z/1)', 'Htilde(3)')
    assert desc.order == 16

    desc = structure_of(12)
    assert desc.factors == ('Aff(Z/3)', 'Htilde(2)')
    assert desc.order == 24
    assert desc.as_dict()['n0'] == 3

    for n in (4, 6, 10, 12, 18, 20, 24):
        assert structure_of(n).order == len(enumerate_closed(n))

    assert structure_of(3) == structure_of(6)
    with pytest.raises(ShadowError):
        structure_of(2)


@pytest.mark.parametrize('n', [6, 12, 20, 24])
def test_components(n):
    for s in enumerate_closed(n):
        aff, two = components(s)
        assert from_components(n, aff, two) == s


def test_index_and_bound():
    assert index_pb3(3) == 108
    assert index_pb3(6) == 108
    assert arith_lower_bound(8) == 16
    assert arith_lower_bound(12) == 8
    for n in (6, 8, 12, 16, 24):
        assert arith_lower_bound(n) <= structure_of(n).order


@pytest.mark.parametrize('alpha', range(2, 7))
def test_power_of_two_orders(alpha):
    n = 2**alpha
    assert len(enumerate_closed(n)) == 2**(2*alpha - 2)
    assert structure_of(n).order == 2**(2*alpha - 2)
    assert arith_lower_bound(n) == structure_of(n).order


def test_rho_isomorphism_16():
    shadows = enumerate_closed(16)
    image = {rho(s) for s in shadows}
    assert image == {a for a in affine_group(16) if hn_membership(a)}
    assert 2*len(image) == len(affine_group(16))
