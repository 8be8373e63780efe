"""
The dihedral poset: kernels K^(n) ordered by inclusion, and the reduction
homomorphisms between their shadow groups.
"""

import math
import logging
from dataclasses import dataclass
from functools import lru_cache

from gtdih.common import ShadowError, VerificationError, NotMemberError, canonicalize
from gtdih.dihedral import psi_eval, comm_membership
from gtdih.shadows import Shadow, enumerate_closed, identity, check_bound

__all__ = ['PosetNode', 'canonicalize', 'poset_leq', 'reduce_shadow', 'fiber_report',
           'fibers_uniform', 'comparable_pairs', 'reduction_kernel']


logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class PosetNode(object):
    """
    The node K^(n) of the dihedral poset.  Nodes compare by their canonical
    (even) modulus.
    """

    n: int

    def __post_init__(self):
        canonicalize(self.n)

    @property
    def canonical(self):
        return canonicalize(self.n)

    def __eq__(self, other):
        if not isinstance(other, PosetNode):
            return NotImplemented
        return self.canonical == other.canonical

    def __hash__(self):
        return hash(self.canonical)

    def __le__(self, other):
        return poset_leq(self.n, other.n)


def poset_leq(q, n):
    """
    Whether K^(q) is contained in K^(n), i.e. n divides lcm(q, 2).
    """

    if q < 3 or n < 3:
        raise ShadowError("Moduli must be at least 3, got q=%i, n=%i" % (q, n))
    return math.lcm(q, 2) % n == 0


@lru_cache(maxsize=None)
def reduce_shadow(s, n):
    """
    Reduce a shadow with target K^(q) to the coarser target K^(n) by pushing
    its representative word through psi_n.
    """

    if not poset_leq(s.n, n):
        raise ShadowError("K^(%i) is not contained in K^(%i)" % (s.n, n))
    nc = canonicalize(n)
    try:
        c = comm_membership(psi_eval(nc, s.word))
        reduced = Shadow(nc, s.m, c.e[0])
    except (NotMemberError, ShadowError) as e:
        raise VerificationError("Reduction of %s to n=%i failed: %s" % (s, nc, str(e)))
    if c != reduced.comm_triple or reduced != Shadow(nc, s.m, s.k):
        raise VerificationError("Reduction of %s to n=%i disagrees with the coordinates" % (s, nc))
    return reduced


def fiber_report(q, n, bound=None):
    """
    Map every shadow at n to the number of shadows at q that reduce to it.
    """

    check_bound(q, bound)
    if not poset_leq(q, n):
        raise ShadowError("K^(%i) is not contained in K^(%i)" % (q, n))
    fibers = {t: 0 for t in enumerate_closed(n)}
    for s in enumerate_closed(q):
        fibers[reduce_shadow(s, n)] += 1
    logger.debug("Fibers of the reduction %i -> %i: %s", q, n, sorted(set(fibers.values())))
    return fibers


def fibers_uniform(q, fibers):
    """
    Check that a fiber report is nonempty everywhere and that every fiber has
    |GT(K^(q))| / |GT(K^(n))| elements.
    """

    expected, rem = divmod(len(enumerate_closed(q)), len(fibers))
    return rem == 0 and all(size == expected for size in fibers.values())


def comparable_pairs(bound):
    """
    All comparable pairs (q, n) with 3 <= q <= bound, as distinct pairs of
    canonical moduli.
    """

    pairs = set()
    for q in range(3, bound + 1):
        for n in range(3, math.lcm(q, 2) + 1):
            if poset_leq(q, n):
                pairs.add((canonicalize(q), canonicalize(n)))
    return sorted(pairs)


def reduction_kernel(q, n):
    """
    Shadows at q that reduce to the identity at n.
    """

    one = identity(n)
    return {s for s in enumerate_closed(q) if reduce_shadow(s, n) == one}
