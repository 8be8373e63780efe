"""
Arithmetic in D_n and D_n^3, the evaluation map psi_n on words, the subgroup
G_n generated by the images of x and y, and its commutator subgroup.

D_n is presented as <r, s | r^n, s^2, rsrs^-1> and an element r^a s^e is
stored as the pair (a mod n, e mod 2).
"""

import math
import logging
import itertools
from collections import namedtuple
from dataclasses import dataclass
from functools import lru_cache

from sympy.combinatorics import Permutation

from gtdih.common import NotMemberError, ShadowError, VerificationError, rot2_order, bfs_closure
from gtdih.free_word import X, Y, IDENTITY, letters, commutator, apply_theta, apply_tau

__all__ = ['DihElt', 'DihTriple', 'CommTriple', 'GnCoset', 'xbar', 'ybar', 'zbar',
           'psi_eval', 'gn_decompose', 'gn_membership', 'gn_order', 'gn_closure',
           'gn_elements', 'comm_membership', 'comm_triples', 'comm_closure',
           'comm_word', 'gn_theta', 'gn_tau', 'as_permutation', 'lemma_witness']


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DihElt(object):
    """
    Element r^rot s^flip of the dihedral group D_n.
    """

    n: int
    rot: int = 0
    flip: int = 0

    def __post_init__(self):
        if self.n < 3:
            raise ValueError("Dihedral modulus must be at least 3, got %i" % self.n)
        object.__setattr__(self, 'rot', self.rot % self.n)
        object.__setattr__(self, 'flip', self.flip % 2)

    def __mul__(self, other):
        if self.n != other.n:
            raise ValueError("Modulus mismatch: %i vs. %i" % (self.n, other.n))
        sign = -1 if self.flip else 1
        return DihElt(self.n, self.rot + sign*other.rot, self.flip ^ other.flip)

    def __pow__(self, e):
        if self.flip:
            return self if e % 2 else DihElt(self.n)
        return DihElt(self.n, self.rot*e, 0)

    def inverse(self):
        if self.flip:
            return self
        return DihElt(self.n, -self.rot, 0)

    @property
    def is_identity(self):
        return self.rot == 0 and self.flip == 0

    def __call__(self, j):
        """
        Action on Z/nZ with r: j -> j+1 and s: j -> -j.
        """

        return ((-j if self.flip else j) + self.rot) % self.n

    def __str__(self):
        return f"r^{self.rot} s^{self.flip}"


@dataclass(frozen=True)
class DihTriple(object):
    """
    Element of D_n^3.
    """

    components: tuple

    def __post_init__(self):
        if len(self.components) != 3:
            raise ValueError("A dihedral triple needs 3 components, got %i" % len(self.components))
        if len(set(c.n for c in self.components)) != 1:
            raise ValueError("Triple components do not share a modulus")

    @classmethod
    def from_pairs(cls, n, pairs):
        """
        Build a triple from three (rotation, flip) pairs.
        """

        return cls(tuple(DihElt(n, a, e) for a, e in pairs))

    @classmethod
    def from_rotations(cls, n, rotations):
        return cls(tuple(DihElt(n, a, 0) for a in rotations))

    @classmethod
    def identity(cls, n):
        return cls.from_rotations(n, (0, 0, 0))

    @property
    def n(self):
        return self.components[0].n

    @property
    def rotations(self):
        return tuple(c.rot for c in self.components)

    @property
    def flips(self):
        return tuple(c.flip for c in self.components)

    @property
    def is_identity(self):
        return all(c.is_identity for c in self.components)

    def __mul__(self, other):
        return DihTriple(tuple(a*b for a, b in zip(self.components, other.components)))

    def __pow__(self, e):
        return DihTriple(tuple(c**e for c in self.components))

    def inverse(self):
        return DihTriple(tuple(c.inverse() for c in self.components))

    def __str__(self):
        return '(' + ', '.join(str(c) for c in self.components) + ')'

    def as_dict(self):
        return {'n': self.n,
                'components': [[c.rot, c.flip] for c in self.components]}


@dataclass(frozen=True)
class CommTriple(object):
    """
    Element (r^2n1, r^2n2, r^2n3) of [G_n, G_n], stored by its exponents
    modulo the order of r^2.  When 4 divides n the exponents must share a
    parity.
    """

    n: int
    e: tuple

    def __post_init__(self):
        if len(self.e) != 3:
            raise ValueError("A commutator triple needs 3 exponents, got %i" % len(self.e))
        order = rot2_order(self.n)
        e = tuple(int(v) % order for v in self.e)
        object.__setattr__(self, 'e', e)
        if self.n % 4 == 0 and len(set(v % 2 for v in e)) != 1:
            raise NotMemberError("Exponents %s do not share a parity for n=%i" % (str(e), self.n))

    def to_triple(self):
        return DihTriple.from_rotations(self.n, tuple(2*v for v in self.e))

    def __str__(self):
        return '[' + ','.join(str(v) for v in self.e) + ']@' + str(self.n)

    def as_dict(self):
        return {'n': self.n, 'e': list(self.e)}


#: Decomposition t = j * eps of an element of G_n
GnCoset = namedtuple('GnCoset', ['j', 'eps'])


@lru_cache(maxsize=None)
def xbar(n):
    return DihTriple.from_pairs(n, ((1, 0), (0, 1), (0, 1)))


@lru_cache(maxsize=None)
def ybar(n):
    return DihTriple.from_pairs(n, ((1, 1), (1, 0), (1, 1)))


@lru_cache(maxsize=None)
def zbar(n):
    return ybar(n).inverse() * xbar(n).inverse()


def psi_eval(n, w):
    """
    Evaluate the homomorphism x -> (r, s, s), y -> (rs, r, rs) on a word.
    """

    gens = {'x': xbar(n), 'y': ybar(n)}
    result = DihTriple.identity(n)
    for gen, exp in letters(w):
        result = result * gens[gen]**exp
    return result


# Coset representatives of J = <r^2>^3 in G_n, keyed by their flip patterns
_EPS_BY_FLIPS = {(0, 0, 0): '1',
                 (0, 1, 1): 'x',
                 (1, 0, 1): 'y',
                 (1, 1, 0): 'xy'}

_EPS_WORDS = {'1': IDENTITY, 'x': X, 'y': Y, 'xy': X*Y}


@lru_cache(maxsize=None)
def _eps_triple(n, eps):
    return psi_eval(n, _EPS_WORDS[eps])


def _in_r2(n, a):
    return n % 2 == 1 or a % 2 == 0


def gn_decompose(t):
    """
    Split t into (j, eps) with t = j * psi(eps), j in <r^2>^3 and eps one of
    '1', 'x', 'y', 'xy'.
    """

    n = t.n
    try:
        eps = _EPS_BY_FLIPS[t.flips]
    except KeyError:
        raise NotMemberError("Flip pattern %s of %s is not a G_%i coset" % (str(t.flips), t, n))
    j = t * _eps_triple(n, eps).inverse()
    if not all(_in_r2(n, a) for a in j.rotations):
        raise NotMemberError("%s has rotations outside <r^2> in the %s coset" % (t, eps))
    return GnCoset(j, eps)


def gn_membership(t):
    try:
        gn_decompose(t)
        return True
    except NotMemberError:
        return False


def gn_order(n):
    """
    Order of G_n: 4n^3 for odd n and 4(n/2)^3 for even n.
    """

    if n < 3:
        raise ValueError("Dihedral modulus must be at least 3, got %i" % n)
    return 4*rot2_order(n)**3


def gn_closure(n):
    """
    G_n rebuilt by a BFS closure of the generator images in D_n^3.
    """

    return bfs_closure([xbar(n), ybar(n)], DihTriple.identity(n), limit=(2*n)**3)


@lru_cache(maxsize=None)
def gn_elements(n):
    """
    G_n listed from its coset decomposition.
    """

    order = rot2_order(n)
    step = 1 if n % 2 else 2
    elements = []
    for eps in ('1', 'x', 'y', 'xy'):
        rep = _eps_triple(n, eps)
        for rots in itertools.product(range(0, step*order, step), repeat=3):
            elements.append(DihTriple.from_rotations(n, rots) * rep)
    return tuple(elements)


def comm_membership(t):
    """
    Return the CommTriple for t if t lies in [G_n, G_n].
    """

    n = t.n
    if any(t.flips):
        raise NotMemberError("%s has a nonzero flip" % t)
    if not all(_in_r2(n, a) for a in t.rotations):
        raise NotMemberError("%s has an odd rotation" % t)
    if n % 2:
        half = (n + 1) // 2
        e = tuple(a*half for a in t.rotations)
    else:
        e = tuple(a // 2 for a in t.rotations)
    return CommTriple(n, e)


def comm_triples(n):
    """
    Iterate over all of [G_n, G_n] in lexicographic exponent order.
    """

    order = rot2_order(n)
    for e in itertools.product(range(order), repeat=3):
        if n % 4 == 0 and len(set(v % 2 for v in e)) != 1:
            continue
        yield CommTriple(n, e)


def comm_closure(n):
    """
    [G_n, G_n] rebuilt as the BFS closure of the commutators [x^t, y^h] for
    t, h in -2..2.
    """

    gens = []
    for t, h in itertools.product(range(-2, 3), repeat=2):
        a, b = xbar(n)**t, ybar(n)**h
        gens.append(a * b * a.inverse() * b.inverse())
    return bfs_closure(gens, DihTriple.identity(n), limit=(2*n)**3)


def _w1(a):
    return commutator(X**(2*a), Y)


def _w2(b):
    return commutator(X, Y**(-2*b))


def _v(c):
    return commutator(X, Y)**(-2*c) * _w1(c) * _w2(-c)


def comm_word(c):
    """
    Return a word in [F_2, F_2] whose image under psi_n is the CommTriple c.
    """

    if not isinstance(c, CommTriple):
        raise TypeError("Expected a CommTriple, got %s" % type(c).__name__)

    n, order = c.n, rot2_order(c.n)
    # symmetric residues keep the words short
    e = [v - order if v > order // 2 else v for v in c.e]
    prefix = IDENTITY
    if n % 4 == 0:
        # Odd exponents are shifted by the image (1,-1,-1) of [x,y]
        if e[0] % 2:
            prefix = commutator(X, Y)
            e = [e[0] - 1, e[1] + 1, e[2] + 1]
    else:
        # order is odd so every residue has an even lift
        e = [v if v % 2 == 0 else (v - order if v > 0 else v + order) for v in e]
    a, b, c3 = (v // 2 for v in e)
    return prefix * _w1(a) * _w2(b) * _v(c3)


@lru_cache(maxsize=None)
def _eps_image(n, eps, which):
    w = _EPS_WORDS[eps]
    w = apply_theta(w) if which == 'theta' else apply_tau(w)
    return psi_eval(n, w)


def gn_theta(t):
    """
    Apply the automorphism of G_n induced by x <-> y.
    """

    j, eps = gn_decompose(t)
    a1, a2, a3 = j.rotations
    return DihTriple.from_rotations(t.n, (a2, a1, -a3)) * _eps_image(t.n, eps, 'theta')


def gn_tau(t):
    """
    Apply the automorphism of G_n induced by x -> y, y -> z.
    """

    j, eps = gn_decompose(t)
    a1, a2, a3 = j.rotations
    return DihTriple.from_rotations(t.n, (a3, a1, a2)) * _eps_image(t.n, eps, 'tau')


def as_permutation(elt):
    """
    Permutation of Z/nZ given by a dihedral element.
    """

    return Permutation([elt(j) for j in range(elt.n)])


def _conjugate(h, a):
    """
    h a h^-1 as maps of Z/nZ.
    """

    hinv = ~h
    return Permutation([h(a(hinv(j))) for j in range(h.size)])


def lemma_witness(n, m, g):
    """
    Build the permutations (h1, h2, h3) of Z/nZ that conjugate psi(x), psi(y)
    to the images x^(2m+1), g^-1 y^(2m+1) g and check both identities.
    """

    u = 2*m + 1
    if math.gcd(u, n) != 1:
        raise ShadowError("2m+1 = %i is not a unit modulo %i" % (u, n))
    if not isinstance(g, CommTriple):
        g = comm_membership(g)
    k = g.e[0]
    kappa = m + 1 if m % 2 else -m
    if g != CommTriple(n, (k, -k, kappa // 2)):
        raise ShadowError("%s is not of the form (r^2k, r^-2k, r^kappa(m))" % g)

    b = Permutation([(u*j) % n for j in range(n)])
    s = as_permutation(DihElt(n, 0, 1))
    h1 = Permutation([((u*j) - 2*k - m) % n for j in range(n)])
    h2 = b
    h3 = b if m % 2 == 0 else Permutation([b(s(j)) for j in range(n)])
    hs = (h1, h2, h3)

    gt = g.to_triple()
    lhs_x = xbar(n)**u
    lhs_y = gt.inverse() * ybar(n)**u * gt
    for h, xc, yc, lx, ly in zip(hs, xbar(n).components, ybar(n).components,
                                 lhs_x.components, lhs_y.components):
        if as_permutation(lx) != _conjugate(h, as_permutation(xc)):
            raise VerificationError("Conjugation of x fails for n=%i, m=%i, %s" % (n, m, g))
        if as_permutation(ly) != _conjugate(h, as_permutation(yc)):
            raise VerificationError("Conjugation of y fails for n=%i, m=%i, %s" % (n, m, g))
    logger.debug("Lemma witness for n=%i, m=%i, %s verified", n, m, g)
    return hs
