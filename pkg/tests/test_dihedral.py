import pytest

from gtdih.common import NotMemberError, ShadowError
from gtdih.free_word import X, Y, Z, IDENTITY, commutator, abelianize, apply_theta, apply_tau, random_word
from gtdih.dihedral import (DihElt, DihTriple, CommTriple, xbar, ybar, zbar, psi_eval,
                            gn_decompose, gn_membership, gn_order, gn_closure, gn_elements,
                            comm_membership, comm_triples, comm_closure, comm_word,
                            gn_theta, gn_tau, as_permutation, lemma_witness)
from gtdih.shadows import enumerate_closed


def test_dihedral_law():
    r = DihElt(4, 1, 0)
    s = DihElt(4, 0, 1)
    assert r*s == DihElt(4, 1, 1)
    assert s*r == DihElt(4, 3, 1)
    assert (r**4).is_identity
    assert (s*s).is_identity
    assert (r*s*r*s).is_identity
    assert r*r.inverse() == DihElt(4)


def test_dihedral_action():
    r = DihElt(5, 1, 0)
    s = DihElt(5, 0, 1)
    assert [r(j) for j in range(5)] == [1, 2, 3, 4, 0]
    assert [s(j) for j in range(5)] == [0, 4, 3, 2, 1]
    assert as_permutation(r*s)(2) == r(s(2))


def test_psi_eval():
    n = 7
    assert psi_eval(n, X) == DihTriple.from_pairs(n, ((1, 0), (0, 1), (0, 1)))
    assert psi_eval(n, Z) == DihTriple.from_pairs(n, ((2, 1), (-1, 1), (1, 0)))
    assert psi_eval(n, X**2) == DihTriple.from_rotations(n, (2, 0, 0))
    assert psi_eval(n, IDENTITY).is_identity
    assert zbar(n) == psi_eval(n, Z)
    assert (xbar(n)*ybar(n)*zbar(n)).is_identity


def test_gn_decompose():
    j, eps = gn_decompose(DihTriple.from_rotations(4, (2, 0, 0)))
    assert j == DihTriple.from_rotations(4, (2, 0, 0))
    assert eps == '1'

    j, eps = gn_decompose(xbar(9))
    assert j.is_identity
    assert eps == 'x'

    assert not gn_membership(DihTriple.from_rotations(4, (1, 0, 0)))
    with pytest.raises(NotMemberError):
        gn_decompose(DihTriple.from_pairs(4, ((0, 1), (0, 0), (0, 0))))


def test_gn_order():
    assert gn_order(3) == 108
    assert gn_order(4) == 32
    assert gn_order(6) == 108


@pytest.mark.parametrize('n', range(3, 13))
def test_gn_closure(n):
    closure = gn_closure(n)
    assert len(closure) == gn_order(n)
    assert closure == set(gn_elements(n))


def test_comm_membership():
    assert comm_membership(DihTriple.from_rotations(8, (2, 2, 2))) == CommTriple(8, (1, 1, 1))
    with pytest.raises(NotMemberError):
        comm_membership(DihTriple.from_rotations(8, (2, 0, 0)))
    assert comm_membership(DihTriple.from_rotations(6, (2, 0, 0))) == CommTriple(6, (1, 0, 0))
    with pytest.raises(NotMemberError):
        comm_membership(xbar(6))
    with pytest.raises(NotMemberError):
        CommTriple(8, (1, 0, 0))


def test_comm_triples():
    assert len(list(comm_triples(8))) == 16
    assert len(list(comm_triples(6))) == 27
    for n in range(3, 13):
        assert comm_closure(n) == {c.to_triple() for c in comm_triples(n)}


def test_comm_word():
    assert comm_word(CommTriple(8, (0, 0, 0))) == IDENTITY
    assert comm_word(CommTriple(8, (1, -1, -1))) == commutator(X, Y)
    assert comm_word(CommTriple(8, (2, 0, 0))) == commutator(X**2, Y)
    assert comm_word(CommTriple(6, (1, 0, 0))) == commutator(X**-2, Y)
    for n in (5, 6, 8, 12):
        for c in comm_triples(n):
            w = comm_word(c)
            assert abelianize(w) == (0, 0)
            assert psi_eval(n, w) == c.to_triple()


def test_theta_tau():
    t = DihTriple.from_rotations(8, (2, -2, 2))
    assert gn_theta(t) == DihTriple.from_rotations(8, (-2, 2, -2))
    t = DihTriple.from_rotations(8, (2, -2, 0))
    assert gn_tau(t) == DihTriple.from_rotations(8, (0, 2, -2))
    assert gn_theta(xbar(8)) == ybar(8)
    assert gn_tau(xbar(8)) == ybar(8)
    assert gn_tau(ybar(8)) == zbar(8)


@pytest.mark.parametrize('n', [5, 6, 8, 12])
def test_theta_tau_follow_words(n, rng):
    for _ in range(100):
        w = random_word(rng, 12)
        t = psi_eval(n, w)
        assert gn_theta(t) == psi_eval(n, apply_theta(w))
        assert gn_tau(t) == psi_eval(n, apply_tau(w))


def test_lemma_witness_identity():
    hs = lemma_witness(4, 0, CommTriple(4, (0, 0, 0)))
    assert all(h.is_Identity for h in hs)


@pytest.mark.parametrize('n', [4, 6, 8, 10, 12])
def test_lemma_witness_all_shadows(n):
    for s in enumerate_closed(n):
        hs = lemma_witness(s.n, s.m, s.comm_triple)
        assert len(hs) == 3


def test_lemma_witness_rejects():
    with pytest.raises(ShadowError):
        lemma_witness(6, 0, CommTriple(6, (1, 1, 0)))
    with pytest.raises(ShadowError):
        lemma_witness(6, 1, CommTriple(6, (0, 0, 0)))


@pytest.mark.parametrize('n', range(3, 13))
def test_psi_eval_is_homomorphism(n, rng):
    for _ in range(50):
        a, b = random_word(rng, 20), random_word(rng, 20)
        assert psi_eval(n, a*b) == psi_eval(n, a)*psi_eval(n, b)
