"""
Lochak-Schneps conditions for shadows with target K^(n), 3 | n.

A shadow [m, f] satisfies the conditions if there are words g, h with

    f = theta(g)^-1 g                      and
    f x^m = tau(h)^-1 h        (2m+1 = 1 mod 3)   or
    f x^m = tau(h)^-1 x y h    (2m+1 = -1 mod 3)

modulo K^(n).  Witnesses are built from explicit formulas and checked
through psi_n; a brute force search over G_n decides solvability for any
datum (m, g).
"""

import logging
from collections import namedtuple
from functools import lru_cache

from gtdih.common import ShadowError
from gtdih.free_word import X, Y, Z, apply_theta, apply_tau
from gtdih.dihedral import xbar, ybar, psi_eval, gn_elements, gn_theta, gn_tau
from gtdih.shadows import as_comm

__all__ = ['TRIVIAL_COSET', 'XY_COSET', 'LSWitness', 'ls_case', 'ls_witness', 'ls_verify',
           'ls_exists_brute']


logger = logging.getLogger(__name__)


TRIVIAL_COSET = 'trivial-coset'
XY_COSET = 'xy-coset'

#: Witness words for the two conditions and the coset they use
LSWitness = namedtuple('LSWitness', ['g', 'h', 'case'])


def _require_three(n):
    if n % 3:
        raise ShadowError("Lochak-Schneps witnesses need 3 | n, got n=%i" % n)


def ls_case(m):
    """
    Coset used by the second condition, or None when 2m+1 = 0 mod 3.
    """

    return {0: TRIVIAL_COSET, 2: XY_COSET}.get(m % 3, None)


def ls_witness(s):
    _require_three(s.n)
    m, k = s.m, s.k
    case = ls_case(m)
    assert(case is not None), "m = 1 mod 3 cannot occur for a shadow when 3 | n"

    half = s.kappa // 2
    if s.kappa % 4 == 0:
        g = X**(2*k) * Z**half
    else:
        g = Y**(2*k + 2) * Z**half

    r = m % 6
    if r == 0:
        h = X**(2*k + m) * Y**m
    elif r == 2:
        h = X**(2*k - 1) * Z**(-m - 2)
    elif r == 3:
        h = X**(-2*k - m + 1) * Y**(-m)
    else:
        h = X**(-2*k) * Z**(-m)
    return LSWitness(g, h, case)


def ls_verify(s, g, h):
    """
    Check both conditions for the shadow s and the words g, h under psi_n.
    """

    _require_three(s.n)
    n, m = s.n, s.m
    case = ls_case(m)
    if case is None:
        return False

    f = s.word
    first = psi_eval(n, f) == psi_eval(n, apply_theta(g).inverse() * g)
    middle = X*Y if case == XY_COSET else X**0
    second = psi_eval(n, f * X**m) == psi_eval(n, apply_tau(h).inverse() * middle * h)
    return first and second


@lru_cache(maxsize=None)
def _theta_images(n):
    return frozenset(gn_theta(e).inverse() * e for e in gn_elements(n))


@lru_cache(maxsize=None)
def _tau_images(n, case):
    middle = xbar(n) * ybar(n) if case == XY_COSET else xbar(n)**0
    return frozenset(gn_tau(e).inverse() * middle * e for e in gn_elements(n))


def ls_exists_brute(n, m, g):
    """
    Search G_n for solutions of both conditions for the datum (m, g), with g
    in [G_n, G_n].
    """

    _require_three(n)
    case = ls_case(m)
    if case is None:
        return False
    gt = as_comm(n, g).to_triple()
    if gt not in _theta_images(n):
        logger.debug("No solution of the theta condition for m=%i, %s", m, gt)
        return False
    return gt * xbar(n)**m in _tau_images(n, case)
