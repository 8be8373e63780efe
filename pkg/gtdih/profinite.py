"""
Finite truncations of Aff(Z_2).

Level a of the tower is F(a) = Z/2^(a-1) x| (Z/2^(a+1))^x.  The shadow group
of K^(2^a) is isomorphic to the index two subgroup Ftilde(a) of elements
(k, (-1)^c 5^b) with k = b mod 2, and the limit of these groups is the kernel
of the map Psi(k, u) = k + b mod 2 on Aff(Z_2).
"""

import json
import logging
from dataclasses import dataclass
from functools import lru_cache

from gtdih.common import (LevelError, ShadowError, TowerError, BoundError, PROFINITE_BOUND,
                          mod_inverse, bfs_closure, is_power_of_two, two_adic_split)

__all__ = ['AffTrunc', 'Tower', 'aff_mul', 'aff_inv', 'project', 'unit_decompose',
           'psi_map', 'ftilde_membership', 'full_group', 'ftilde_elements',
           'generator_closure', 'shadow_to_trunc', 'tower_build', 'tower_check',
           'tower_first_failure', 'tower_from_element', 'tower_from_shadows']


logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class AffTrunc(object):
    """
    Element (k, u) of F(alpha) with k mod 2^(alpha-1) and u an odd residue
    mod 2^(alpha+1).
    """

    alpha: int
    k: int
    u: int

    def __post_init__(self):
        if self.alpha < 2:
            raise LevelError("Levels start at 2, got %i" % self.alpha)
        if self.u % 2 == 0:
            raise ShadowError("Unit part must be odd, got %i" % self.u)
        object.__setattr__(self, 'k', self.k % 2**(self.alpha - 1))
        object.__setattr__(self, 'u', self.u % 2**(self.alpha + 1))

    @classmethod
    def identity(cls, alpha):
        return cls(alpha, 0, 1)

    def __mul__(self, other):
        return aff_mul(self, other)

    def as_dict(self):
        return {'alpha': self.alpha, 'k': self.k, 'u': self.u}


def aff_mul(a, b):
    if a.alpha != b.alpha:
        raise LevelError("Level mismatch: %i vs. %i" % (a.alpha, b.alpha))
    return AffTrunc(a.alpha, a.k + a.u*b.k, a.u*b.u)


def aff_inv(a):
    uinv = mod_inverse(a.u, 2**(a.alpha + 1))
    return AffTrunc(a.alpha, -uinv*a.k, uinv)


def project(a, alpha):
    if alpha < 2 or alpha > a.alpha:
        raise LevelError("Cannot project level %i to level %i" % (a.alpha, alpha))
    return AffTrunc(alpha, a.k, a.u)


@lru_cache(maxsize=None)
def _unit_table(alpha):
    modulus = 2**(alpha + 1)
    table = {}
    power = 1
    for b in range(2**(alpha - 1)):
        table[power] = (0, b)
        table[modulus - power] = (1, b)
        power = (power*5) % modulus
    return table


def unit_decompose(u, alpha):
    """
    Return (a, b) with u = (-1)^a 5^b mod 2^(alpha+1).
    """

    if alpha < 2:
        raise LevelError("Levels start at 2, got %i" % alpha)
    if u % 2 == 0:
        raise ShadowError("Only odd residues are units, got %i" % u)
    return _unit_table(alpha)[u % 2**(alpha + 1)]


def psi_map(a):
    """
    Psi(k, u) = k + b mod 2, evaluated at level 2.
    """

    low = project(a, 2)
    _, b = unit_decompose(low.u, 2)
    return (low.k + b) % 2


def ftilde_membership(a):
    _, b = unit_decompose(a.u, a.alpha)
    return (a.k - b) % 2 == 0


def full_group(alpha):
    return [AffTrunc(alpha, k, u) for u in range(1, 2**(alpha + 1), 2)
            for k in range(2**(alpha - 1))]


def ftilde_elements(alpha):
    return {a for a in full_group(alpha) if ftilde_membership(a)}


def generator_closure(alpha, bound=None):
    """
    Closure of the truncations of (2, 1), (1, 5) and (0, -1) at level alpha.
    """

    if bound is None:
        bound = PROFINITE_BOUND
    if alpha > bound:
        raise BoundError("Level %i exceeds the profinite bound of %i" % (alpha, bound))
    gens = [AffTrunc(alpha, 2, 1), AffTrunc(alpha, 1, 5), AffTrunc(alpha, 0, -1)]
    return bfs_closure(gens, AffTrunc.identity(alpha), limit=2**(2*alpha - 1))


def shadow_to_trunc(s):
    """
    Image of a shadow with target K^(2^alpha) in Ftilde(alpha).
    """

    if not is_power_of_two(s.n):
        raise ShadowError("Target %i is not a power of two" % s.n)
    _, alpha = two_adic_split(s.n)
    return AffTrunc(alpha, s.k, s.u)


@dataclass(frozen=True)
class Tower(object):
    """
    Finite prefix of an element of the inverse limit, one entry per level
    from 2 up to `top`.
    """

    entries: tuple

    @property
    def top(self):
        return self.entries[-1].alpha

    def as_dict(self):
        return {'levels': [a.as_dict() for a in self.entries]}

    def as_json(self):
        return json.dumps(self.as_dict(), sort_keys=True)


def tower_build(assignments):
    """
    Build a tower from AffTrunc entries or from a mapping of level to (k, u).
    Compatibility is not checked here; see `tower_check`.
    """

    if isinstance(assignments, dict):
        entries = [AffTrunc(alpha, k, u) for alpha, (k, u) in sorted(assignments.items())]
    else:
        entries = sorted(assignments, key=lambda a: a.alpha)
    if not entries:
        raise LevelError("A tower needs at least one level")
    levels = [a.alpha for a in entries]
    if levels != list(range(2, 2 + len(levels))):
        raise LevelError("Tower levels must run from 2 without gaps, got %s" % levels)
    return Tower(tuple(entries))


def tower_first_failure(t):
    """
    First level whose entry does not project onto the entry below it, or
    None.
    """

    for lower, upper in zip(t.entries[:-1], t.entries[1:]):
        if project(upper, lower.alpha) != lower:
            return upper.alpha
    return None


def tower_check(t, strict=False):
    level = tower_first_failure(t)
    if level is None:
        return True
    logger.warning("Tower is incompatible at level %i", level)
    if strict:
        raise TowerError("Tower is incompatible at level %i" % level, level=level)
    return False


def tower_from_element(k, u, top):
    """
    Tower of the projections of the 2-adic pair (k, u) to levels 2..top.
    """

    return tower_build([AffTrunc(alpha, k, u) for alpha in range(2, top + 1)])


def tower_from_shadows(shadows):
    """
    Tower of the images of shadows with targets 4, 8, ..., 2^top.
    """

    return tower_build([shadow_to_trunc(s) for s in shadows])
