"""
GT-shadows with dihedral targets K^(n).

A shadow with target K^(n) is stored in canonical coordinates (n, m, k) with
n even, m mod n and k mod n/2; its representative word is
x^(2k) y^(-2k) z^kappa(m) and its image in [G_n, G_n] is
(r^2k, r^-2k, r^kappa(m)).
"""

import json
import math
import logging
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import progressbar

from gtdih.common import (ShadowError, BoundError, NotMemberError, VerificationError,
                          canonicalize, mod_inverse, bfs_closure,
                          default_enumeration_bound)
from gtdih.free_word import X, Y, Z, endo_E, format_word
from gtdih.dihedral import (DihTriple, CommTriple, xbar, ybar, psi_eval, gn_order,
                            gn_theta, gn_tau, comm_membership, comm_triples)

__all__ = ['Shadow', 'kappa', 'hexagon_check', 'charming_check', 'enumerate_brute',
           'enumerate_closed', 'compose', 'compose_closed', 'inverse', 'identity',
           'endomorphism_images', 'is_isolated_witness', 'chi_vir_n', 'chi_2n',
           'complex_conjugation', 'shadow_order', 'cayley_table', 'cayley_rows',
           'sample_triples', 'check_bound', 'as_comm']


logger = logging.getLogger(__name__)


def kappa(m):
    """
    m+1 for odd m and -m for even m.
    """

    return m + 1 if m % 2 else -m


@dataclass(frozen=True, order=True)
class Shadow(object):
    """
    A GT-shadow with target K^(n).  Odd moduli are replaced by 2n, m is
    reduced mod n and k mod n/2.
    """

    n: int
    m: int
    k: int

    def __post_init__(self):
        n = canonicalize(self.n)
        m = int(self.m) % n
        k = int(self.k) % (n // 2)
        object.__setattr__(self, 'n', n)
        object.__setattr__(self, 'm', m)
        object.__setattr__(self, 'k', k)
        if math.gcd(2*m + 1, n) != 1:
            raise ShadowError("2m+1 = %i is not a unit modulo %i" % (2*m + 1, n))
        if n % 4 == 0 and (k - kappa(m) // 2) % 2:
            raise ShadowError("k = %i breaks the parity condition for m = %i at n = %i" % (k, m, n))

    @classmethod
    def parse(cls, n, text):
        """
        Build a shadow from the CLI form 'm,k'.
        """

        try:
            m, k = (int(v, 10) for v in text.split(','))
        except (AttributeError, ValueError):
            raise ShadowError("Cannot interpret '%s' as shadow coordinates m,k" % text)
        return cls(n, m, k)

    @property
    def n1(self):
        return self.n // 2

    @property
    def u(self):
        return (2*self.m + 1) % (2*self.n)

    @property
    def kappa(self):
        return kappa(self.m)

    @property
    def comm_triple(self):
        return CommTriple(self.n, (self.k, -self.k, self.kappa // 2))

    @property
    def word(self):
        return X**(2*self.k) * Y**(-2*self.k) * Z**self.kappa

    @property
    def label(self):
        return f"{self.m}.{self.k}"

    def __str__(self):
        return f"({self.m},{self.k})@{self.n}"

    def as_dict(self):
        return {'n': self.n, 'm': self.m, 'k': self.k, 'u': self.u,
                'word': format_word(self.word)}

    def as_json(self):
        return json.dumps(self.as_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, json_value):
        value = json.loads(json_value)
        return cls(value['n'], value['m'], value['k'])


def as_comm(n, g):
    """
    Coerce a CommTriple, DihTriple or exponent triple at modulus n to a
    CommTriple.
    """

    if isinstance(g, CommTriple):
        c = g
    elif isinstance(g, DihTriple):
        c = comm_membership(g)
    else:
        c = CommTriple(n, tuple(g))
    if c.n != n:
        raise ShadowError("Triple %s does not live at modulus %i" % (c, n))
    return c


def _hexagon_one(gt):
    return (gt * gn_theta(gt)).is_identity


def _hexagon_two(n, m, gt):
    t = ybar(n)**m * gt
    tt = gn_tau(t)
    return (gn_tau(tt) * tt * t).is_identity


def hexagon_check(n, m, g):
    """
    Check g theta(g) = 1 and tau^2(y^m g) tau(y^m g) y^m g = 1 in G_n for g
    in [G_n, G_n], given as a CommTriple, a DihTriple or an exponent triple.
    """

    gt = as_comm(n, g).to_triple()
    return _hexagon_one(gt) and _hexagon_two(n, m, gt)


def charming_check(n, m, g):
    """
    Check that 2m+1 is a unit modulo lcm(n, 2) and that g lies in [G_n, G_n].
    """

    if math.gcd(2*m + 1, math.lcm(n, 2)) != 1:
        return False
    try:
        as_comm(n, g)
    except NotMemberError:
        return False
    return True


def check_bound(n, bound):
    if bound is None:
        bound = default_enumeration_bound()
    if n > bound:
        raise BoundError("Modulus %i exceeds the enumeration bound of %i" % (n, bound))


def enumerate_brute(n, bound=None, progress=False):
    """
    Find every shadow with target K^(n) by testing all pairs (m, g) with g in
    [G_n, G_n] against the hexagon relations.  Odd n is searched in D_n
    directly.  Returns shadows in lexicographic (m, k) order.
    """

    check_bound(n, bound)
    kord = math.lcm(n, 2)
    units = [m for m in range(kord) if math.gcd(2*m + 1, kord) == 1]

    triples = list(comm_triples(n))
    if progress:
        pb = progressbar.ProgressBar(redirect_stdout=True)
        pb.start(max_value=len(triples))

    found = set()
    for g in triples:
        if progress:
            pb += 1
        gt = g.to_triple()
        if not _hexagon_one(gt):
            continue
        for m in units:
            if not _hexagon_two(n, m, gt):
                continue
            s = Shadow(n, m, g.e[0])
            if CommTriple(n, (s.k, -s.k, s.kappa // 2)) != g:
                raise VerificationError("Hexagon solution (%i, %s) is not in closed form" % (m, g))
            found.add(s)
    if progress:
        pb.finish()

    logger.debug("Brute force found %i shadows for n=%i", len(found), n)
    return sorted(found)


@lru_cache(maxsize=None)
def _closed(n):
    shadows = []
    for m in range(n):
        if math.gcd(2*m + 1, n) != 1:
            continue
        for k in range(n // 2):
            if n % 4 == 0 and (k - kappa(m) // 2) % 2:
                continue
            shadows.append(Shadow(n, m, k))
    return tuple(shadows)


def enumerate_closed(n):
    """
    All shadows with target K^(n) from the closed form, in lexicographic (m, k)
    order.
    """

    return list(_closed(canonicalize(n)))


def identity(n):
    return Shadow(n, 0, 0)


def compose_closed(s1, s2):
    """
    Compose two shadows with the semidirect coordinate law.
    """

    if s1.n != s2.n:
        raise ShadowError("Cannot compose shadows with targets %i and %i" % (s1.n, s2.n))
    return Shadow(s1.n, 2*s1.m*s2.m + s1.m + s2.m, s1.k + (2*s1.m + 1)*s2.k)


@lru_cache(maxsize=None)
def compose(s1, s2):
    """
    Compose two shadows at the word level: [m1, f1] o [m2, f2] is
    [2 m1 m2 + m1 + m2, f1 E_{m1,f1}(f2)].  The result is read back from
    psi_n and checked against the coordinate law.
    """

    if s1.n != s2.n:
        raise ShadowError("Cannot compose shadows with targets %i and %i" % (s1.n, s2.n))
    n = s1.n
    f1 = s1.word
    f = f1 * endo_E(s1.m, f1, s2.word)
    m = 2*s1.m*s2.m + s1.m + s2.m

    try:
        c = comm_membership(psi_eval(n, f))
        result = Shadow(n, m, c.e[0])
    except (NotMemberError, ShadowError) as e:
        raise VerificationError("Composite of %s and %s is not a shadow: %s" % (s1, s2, str(e)))
    if c != result.comm_triple:
        raise VerificationError("Composite of %s and %s has image %s" % (s1, s2, c))
    if result != compose_closed(s1, s2):
        raise VerificationError("Word and coordinate composition of %s and %s differ" % (s1, s2))
    return result


def inverse(s):
    """
    Inverse of a shadow, computed as (k, u)^-1 = (-u^-1 k, u^-1).
    """

    uinv = mod_inverse(s.u, 2*s.n)
    return Shadow(s.n, (uinv - 1) // 2, -uinv*s.k)


def endomorphism_images(s):
    """
    Images of psi(x) and psi(y) under the endomorphism of G_n induced by s.
    """

    gt = s.comm_triple.to_triple()
    return xbar(s.n)**s.u, gt.inverse() * ybar(s.n)**s.u * gt


def is_isolated_witness(s):
    """
    Check that the endomorphism of G_n induced by s is onto.
    """

    order = gn_order(s.n)
    image = bfs_closure(list(endomorphism_images(s)), DihTriple.identity(s.n), limit=order)
    return len(image) == order


def chi_vir_n(s):
    return (2*s.m + 1) % s.n


def chi_2n(s):
    return s.u


def complex_conjugation(n):
    """
    The shadow [-1, 1].
    """

    return Shadow(n, -1, 0)


def shadow_order(s):
    one = identity(s.n)
    current, order = s, 1
    while current != one:
        current = compose_closed(current, s)
        order += 1
    return order


def cayley_table(n):
    """
    Return the shadows at n in lexicographic order together with an integer
    matrix whose (i, j) entry is the index of compose(s_i, s_j).
    """

    shadows = enumerate_closed(n)
    index = {s: i for i, s in enumerate(shadows)}
    table = np.zeros((len(shadows), len(shadows)), dtype=np.int64)
    for i, a in enumerate(shadows):
        for j, b in enumerate(shadows):
            table[i, j] = index[compose(a, b)]
    logger.debug("Built %ix%i Cayley table for n=%i", len(shadows), len(shadows), n)
    return shadows, table


def cayley_rows(shadows, table):
    """
    Rows of a Cayley table labeled by m.k, header row first.
    """

    labels = [s.label for s in shadows]
    rows = [[''] + labels]
    for i, label in enumerate(labels):
        rows.append([label] + [labels[j] for j in table[i]])
    return rows


def sample_triples(shadows, count, seed):
    """
    Draw `count` triples of shadows uniformly with a seeded generator.
    """

    rng = np.random.default_rng(seed)
    picks = rng.integers(0, len(shadows), size=(count, 3))
    for i, j, k in picks:
        yield shadows[i], shadows[j], shadows[k]
