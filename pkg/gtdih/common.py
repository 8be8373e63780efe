import os
import logging
from collections import deque
from logging.handlers import TimedRotatingFileHandler

from sympy import multiplicity
from sympy import totient as _totient
from sympy import mod_inverse as _mod_inverse


__all__ = ['ENUMERATION_BOUND', 'PROFINITE_BOUND', 'SAMPLE_SIZE', 'EXHAUSTIVE_LIMIT',
           'CLOSURE_LIMIT', 'RANDOM_SEED', 'BOUND_ENV_VAR', 'default_enumeration_bound',
           'NotMemberError', 'ShadowError', 'BoundError', 'LevelError', 'TowerError', 'VerificationError',
           'canonicalize', 'half_modulus', 'rot2_order', 'two_adic_split',
           'totient', 'mod_inverse', 'is_power_of_two', 'bfs_closure', 'LogFileHandler']


logger = logging.getLogger(__name__)


#: Largest modulus accepted by the exhaustive enumerations - can be overridden
#: with a 'ENUMERATION_BOUND = ...' line in 'gtdih.cfg' or the GTDIH_BOUND
#: environment variable
ENUMERATION_BOUND = 24

#: Largest 2-adic level accepted by the generator closure
PROFINITE_BOUND   = 10

#: Number of random triples drawn for the sampled associativity check
SAMPLE_SIZE       = 10000

#: Largest modulus for which all triples are checked for associativity
EXHAUSTIVE_LIMIT  = 8

#: Largest modulus for which the BFS closures in D_n^3 are rebuilt
CLOSURE_LIMIT     = 12

#: Seed for all sampled checks
RANDOM_SEED       = 20240611

#: Environment variable that overrides the default enumeration bound
BOUND_ENV_VAR     = 'GTDIH_BOUND'


_INT_KEYS = ('ENUMERATION_BOUND', 'PROFINITE_BOUND', 'SAMPLE_SIZE', 'EXHAUSTIVE_LIMIT',
             'CLOSURE_LIMIT', 'RANDOM_SEED')

# Try the gtdih.cfg file to see if we need to override any of the defaults
if os.path.exists('gtdih.cfg'):
    with open('gtdih.cfg', 'r') as fh:
        for line in fh:
            line = line.split('#', 1)[0].strip()
            if '=' not in line:
                continue
            key, value = line.split('=', 1)
            key = key.strip()
            if key in _INT_KEYS:
                globals()[key] = int(value.strip(), 10)


def default_enumeration_bound():
    """
    Return the enumeration bound, honoring the GTDIH_BOUND environment
    variable if it is set.
    """

    value = os.getenv(BOUND_ENV_VAR)
    if value:
        try:
            return int(value, 10)
        except ValueError:
            logger.warning("Ignoring non-integer %s='%s'", BOUND_ENV_VAR, value)
    return ENUMERATION_BOUND


class NotMemberError(ValueError):
    """
    Raised when a triple is not in the subgroup it was tested against.
    """


class ShadowError(ValueError):
    """
    Raised for invalid shadow or affine coordinates and mismatched targets.
    """


class BoundError(ValueError):
    """
    Raised when a request exceeds the configured enumeration or level bound.
    """


class LevelError(ValueError):
    """
    Raised for mismatched or out-of-range 2-adic levels.
    """


class TowerError(ValueError):
    """
    Raised when a tower is not projection compatible.  The first failing level
    is stored as `level`.
    """

    def __init__(self, message, level=None):
        super(TowerError, self).__init__(message)
        self.level = level


class VerificationError(RuntimeError):
    """
    Raised when two independent computations of the same quantity disagree.
    """


def canonicalize(n):
    """
    Return the even modulus that names the same node of the dihedral poset
    as n: n itself if n is even, 2n if n is odd.
    """

    n = int(n)
    if n < 3:
        raise ShadowError("Modulus must be at least 3, got %i" % n)
    return n if n % 2 == 0 else 2*n


def half_modulus(n):
    """
    Modulus n_1 = n/2 of the k coordinate for a canonical modulus n.
    """

    return canonicalize(n) // 2


def rot2_order(n):
    """
    Order of r^2 in D_n.
    """

    return n if n % 2 else n // 2


def two_adic_split(n):
    """
    Split n into (n0, alpha) with n = 2**alpha * n0 and n0 odd.
    """

    n = int(n)
    if n <= 0:
        raise ValueError("Cannot split non-positive integer %i" % n)
    alpha = int(multiplicity(2, n))
    return n // 2**alpha, alpha


def is_power_of_two(n):
    return n > 0 and (n & (n - 1)) == 0


def totient(n):
    """
    Euler's phi function.
    """

    return int(_totient(n))


def mod_inverse(a, m):
    """
    Inverse of a modulo m as a least non-negative residue.  Returns 0 when m
    is 1.
    """

    if m == 1:
        return 0
    return int(_mod_inverse(a % m, m))


def bfs_closure(generators, identity, limit=None):
    """
    Return the set of all products of the given generators, found by a
    breadth first search from the identity.  Elements must be hashable and
    support `*`.  If the closure grows past `limit` elements a RuntimeError
    is raised.
    """

    seen = {identity}
    queue = deque([identity])
    while queue:
        current = queue.popleft()
        for gen in generators:
            nxt = current * gen
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
                if limit is not None and len(seen) > limit:
                    raise RuntimeError("Closure exceeded its bound of %i elements" % limit)
    logger.debug("BFS closure of %i generators has %i elements", len(generators), len(seen))
    return seen


class LogFileHandler(TimedRotatingFileHandler):
    """
    Sub-class of TimedRotatingFileHandler that rolls over files daily and keeps
    the last 21 days.
    """

    def __init__(self, filename):
        days_per_file =  1
        file_count    = 21
        TimedRotatingFileHandler.__init__(self, filename, when='D',
                                          interval=days_per_file,
                                          backupCount=file_count)
        self.filename = filename
