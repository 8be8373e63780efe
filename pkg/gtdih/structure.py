"""
The isomorphism rho of a shadow group onto a group of affine type, the index
two subgroup H_n, and the decomposition

    GT(K^(n)) = Aff(Z/n0) x Z2          if 4 does not divide n
    GT(K^(n)) = Aff(Z/n0) x Htilde(a)   if n = 2^a n0 with a >= 2
"""

import json
import math
import logging
from dataclasses import dataclass

from sympy.ntheory.modular import crt

from gtdih.common import ShadowError, canonicalize, two_adic_split, totient, mod_inverse
from gtdih.shadows import Shadow

__all__ = ['AffCoord', 'StructureDescriptor', 'nu', 'rho', 'rho_inv', 'hn_membership',
           'affine_group', 'structure_of', 'components', 'from_components',
           'index_pb3', 'arith_lower_bound']


logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class AffCoord(object):
    """
    Element (k, u) of Z/(n/2) x| (Z/2n)^x with the law
    (k1, u1)(k2, u2) = (k1 + u1 k2, u1 u2).
    """

    n: int
    k: int
    u: int

    def __post_init__(self):
        if self.n < 4 or self.n % 2:
            raise ShadowError("Affine coordinates need an even modulus >= 4, got %i" % self.n)
        object.__setattr__(self, 'k', self.k % (self.n // 2))
        object.__setattr__(self, 'u', self.u % (2*self.n))
        if math.gcd(self.u, 2*self.n) != 1:
            raise ShadowError("%i is not a unit modulo %i" % (self.u, 2*self.n))

    def __mul__(self, other):
        if self.n != other.n:
            raise ShadowError("Modulus mismatch: %i vs. %i" % (self.n, other.n))
        return AffCoord(self.n, self.k + self.u*other.k, self.u*other.u)

    def inverse(self):
        uinv = mod_inverse(self.u, 2*self.n)
        return AffCoord(self.n, -uinv*self.k, uinv)

    def as_dict(self):
        return {'n': self.n, 'k': self.k, 'u': self.u}


@dataclass(frozen=True)
class StructureDescriptor(object):
    n: int
    n0: int
    alpha: int
    factors: tuple
    order: int

    def as_dict(self):
        return {'n': self.n, 'n0': self.n0, 'alpha': self.alpha,
                'factors': list(self.factors), 'order': self.order}

    def as_json(self):
        return json.dumps(self.as_dict(), sort_keys=True)


def nu(u):
    """
    (u-1)/4 if u = 1 mod 4, (u+1)/4 otherwise.
    """

    if u % 2 == 0:
        raise ValueError("nu is only defined on odd integers, got %i" % u)
    if u % 4 == 1:
        return (u - 1) // 4
    return (u + 1) // 4


def rho(s):
    return AffCoord(s.n, s.k, s.u)


def hn_membership(a):
    """
    Whether k = nu(u) mod 2, for a modulus divisible by 4.
    """

    if a.n % 4:
        raise ShadowError("H_n is only a proper subgroup when 4 divides n, got %i" % a.n)
    return (a.k - nu(a.u)) % 2 == 0


def rho_inv(a):
    if a.n % 4 == 0 and not hn_membership(a):
        raise ShadowError("(%i, %i) is not in H_%i" % (a.k, a.u, a.n))
    return Shadow(a.n, (a.u - 1) // 2, a.k)


def affine_group(n):
    """
    Every element of Z/(n/2) x| (Z/2n)^x for a canonical modulus n.
    """

    n = canonicalize(n)
    units = [u for u in range(2*n) if math.gcd(u, 2*n) == 1]
    return [AffCoord(n, k, u) for u in units for k in range(n // 2)]


def structure_of(n):
    n = canonicalize(n)
    n0, alpha = two_adic_split(n)
    phi = totient(n0)
    if alpha < 2:
        factors = (f"Aff(Z/{n0})", "Z2")
        order = 2*n0*phi
    else:
        factors = (f"Aff(Z/{n0})", f"Htilde({alpha})")
        order = n0*phi*2**(2*alpha - 2)
    return StructureDescriptor(n, n0, alpha, factors, order)


def components(s):
    """
    Split a shadow along the decomposition of its group.  Returns
    ((k mod n0, u mod n0), two) where two is (u mod 4,) when 4 does not divide
    n and (k mod 2^(a-1), u mod 2^(a+1)) otherwise.
    """

    n0, alpha = two_adic_split(s.n)
    aff = (s.k % n0, s.u % n0)
    if alpha < 2:
        two = (s.u % 4,)
    else:
        two = (s.k % 2**(alpha - 1), s.u % 2**(alpha + 1))
    return aff, two


def _crt(moduli, residues):
    moduli, residues = zip(*[(m, r) for m, r in zip(moduli, residues) if m > 1])
    value, _ = crt(moduli, residues)
    return int(value)


def from_components(n, aff, two):
    """
    Reassemble a shadow from the output of `components`.
    """

    n = canonicalize(n)
    n0, alpha = two_adic_split(n)
    if alpha < 2:
        k = aff[0]
        u = _crt((n0, 4), (aff[1], two[0]))
    else:
        k = _crt((n0, 2**(alpha - 1)), (aff[0], two[0]))
        u = _crt((n0, 2**(alpha + 1)), (aff[1], two[1]))
    return Shadow(n, (u - 1) // 2, k)


def index_pb3(n):
    """
    Index of K^(n) in PB_3: 4n^3 for odd n and 4(n/2)^3 for even n.
    """

    return 4*n**3 if n % 2 else 4*(n // 2)**3


def arith_lower_bound(n):
    """
    Lower bound on the number of arithmetical shadows: 2 phi(n0) for
    a in {0, 1} and 2^(2a-2) phi(n0) otherwise.
    """

    n0, alpha = two_adic_split(n)
    if alpha < 2:
        return 2*totient(n0)
    return 2**(2*alpha - 2)*totient(n0)
