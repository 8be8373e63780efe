import pytest

from gtdih import common
from gtdih.common import (ShadowError, TowerError, canonicalize, half_modulus, rot2_order,
                          two_adic_split, is_power_of_two, totient, mod_inverse, bfs_closure,
                          default_enumeration_bound)
from gtdih.dihedral import DihElt


def test_canonicalize():
    assert canonicalize(3) == 6
    assert canonicalize(6) == 6
    assert canonicalize(5) == 10
    with pytest.raises(ShadowError):
        canonicalize(2)


def test_moduli_helpers():
    assert half_modulus(3) == 3
    assert half_modulus(8) == 4
    assert rot2_order(3) == 3
    assert rot2_order(6) == 3
    assert rot2_order(8) == 4
    assert two_adic_split(24) == (3, 3)
    assert two_adic_split(7) == (7, 0)
    assert two_adic_split(64) == (1, 6)
    assert is_power_of_two(16)
    assert not is_power_of_two(12)
    assert totient(9) == 6
    assert totient(1) == 1


def test_mod_inverse():
    assert mod_inverse(5, 12) == 5
    assert mod_inverse(-1, 8) == 7
    assert mod_inverse(3, 1) == 0


def test_bfs_closure():
    r = DihElt(4, 1, 0)
    s = DihElt(4, 0, 1)
    assert len(bfs_closure([r], DihElt(4))) == 4
    assert len(bfs_closure([r, s], DihElt(4))) == 8
    with pytest.raises(RuntimeError):
        bfs_closure([r, s], DihElt(4), limit=5)


def test_default_bound(monkeypatch):
    assert default_enumeration_bound() == common.ENUMERATION_BOUND
    monkeypatch.setenv(common.BOUND_ENV_VAR, '30')
    assert default_enumeration_bound() == 30
    monkeypatch.setenv(common.BOUND_ENV_VAR, 'thirty')
    assert default_enumeration_bound() == common.ENUMERATION_BOUND


def test_tower_error_level():
    err = TowerError("bad tower", level=3)
    assert err.level == 3
    assert isinstance(err, ValueError)
