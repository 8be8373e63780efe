"""
The invariant suite run by `verify-all`.  Every check takes a modulus and a
VerifySettings instance and returns a Boolean; a VerificationError raised
inside a check counts as a failure.
"""

import logging
import itertools
from dataclasses import dataclass, field
from collections import OrderedDict

import numpy as np
import progressbar
from sympy import divisors

from gtdih import common
from gtdih.common import VerificationError, canonicalize, is_power_of_two, two_adic_split
from gtdih.free_word import apply_theta, apply_tau, abelianize, random_word
from gtdih.dihedral import (psi_eval, gn_order, gn_closure, gn_elements, gn_membership,
                            gn_theta, gn_tau, comm_closure, comm_triples, comm_word,
                            lemma_witness)
from gtdih.shadows import (enumerate_brute, enumerate_closed, compose, compose_closed,
                           inverse, identity, chi_2n, chi_vir_n, is_isolated_witness,
                           sample_triples)
from gtdih.poset import reduce_shadow, fiber_report, fibers_uniform
from gtdih.structure import (rho, rho_inv, hn_membership, affine_group, structure_of,
                             index_pb3, arith_lower_bound)
from gtdih.lochak_schneps import ls_witness, ls_verify, ls_exists_brute, ls_case
from gtdih.profinite import (project, psi_map, full_group, ftilde_elements,
                             generator_closure, shadow_to_trunc)

__all__ = ['VerifySettings', 'CHECKS', 'run_suite']


logger = logging.getLogger(__name__)


@dataclass
class VerifySettings(object):
    bound: int = field(default_factory=common.default_enumeration_bound)
    profinite_bound: int = field(default_factory=lambda: common.PROFINITE_BOUND)
    sample_size: int = field(default_factory=lambda: common.SAMPLE_SIZE)
    seed: int = field(default_factory=lambda: common.RANDOM_SEED)
    exhaustive_limit: int = field(default_factory=lambda: common.EXHAUSTIVE_LIMIT)
    closure_limit: int = field(default_factory=lambda: common.CLOSURE_LIMIT)


def _pairs(shadows, settings):
    """
    All pairs when there are few enough, a seeded sample otherwise.
    """

    if len(shadows)**2 <= settings.sample_size:
        return list(itertools.product(shadows, repeat=2))
    return [(a, b) for a, b, _ in sample_triples(shadows, settings.sample_size, settings.seed)]


def check_enumeration(n, settings):
    return set(enumerate_brute(n, bound=settings.bound)) == set(enumerate_closed(n))


def check_orders(n, settings):
    count = len(enumerate_closed(n))
    ok = count == structure_of(n).order and arith_lower_bound(n) <= count
    if is_power_of_two(n):
        _, alpha = two_adic_split(n)
        ok = ok and count == 2**(2*alpha - 2) == arith_lower_bound(n)
    return ok


def check_group_axioms(n, settings):
    shadows = enumerate_closed(n)
    members = set(shadows)
    one = identity(n)
    for a in shadows:
        inv = inverse(a)
        if inv not in members or compose(one, a) != a or compose(a, one) != a:
            return False
        if compose(a, inv) != one or compose(inv, a) != one:
            return False
    for a, b in itertools.product(shadows, repeat=2):
        if compose(a, b) not in members:
            return False

    if canonicalize(n) <= settings.exhaustive_limit:
        triples = itertools.product(shadows, repeat=3)
    else:
        triples = sample_triples(shadows, settings.sample_size, settings.seed)
    return all(compose(compose(a, b), c) == compose(a, compose(b, c)) for a, b, c in triples)


def check_characters(n, settings):
    shadows = enumerate_closed(n)
    n = canonicalize(n)
    for a, b in itertools.product(shadows, repeat=2):
        ab = compose(a, b)
        if ab != compose_closed(a, b):
            return False
        if chi_2n(ab) != (chi_2n(a)*chi_2n(b)) % (2*n):
            return False
        if chi_vir_n(ab) != (chi_vir_n(a)*chi_vir_n(b)) % n or chi_vir_n(ab) != chi_2n(ab) % n:
            return False
    return True


def check_isolation(n, settings):
    return all(is_isolated_witness(s) for s in enumerate_closed(n))


def check_lemma_witnesses(n, settings):
    for s in enumerate_closed(n):
        lemma_witness(s.n, s.m, s.comm_triple)
    return True


def check_rho(n, settings):
    shadows = enumerate_closed(n)
    n = canonicalize(n)
    image = {rho(s) for s in shadows}
    if len(image) != len(shadows) or any(rho_inv(rho(s)) != s for s in shadows):
        return False
    if any(rho(compose(a, b)) != rho(a)*rho(b) for a, b in _pairs(shadows, settings)):
        return False
    group = affine_group(n)
    if n % 4:
        return image == set(group)
    hn = {a for a in group if hn_membership(a)}
    return image == hn and 2*len(hn) == len(group)


def check_gn(n, settings):
    closure = gn_closure(n)
    if not len(closure) == gn_order(n) == index_pb3(n):
        return False
    return closure == set(gn_elements(n)) and all(gn_membership(t) for t in closure)


def check_commutator(n, settings):
    expected = {c.to_triple() for c in comm_triples(n)}
    if comm_closure(n) != expected:
        return False
    for c in comm_triples(n):
        w = comm_word(c)
        if psi_eval(n, w) != c.to_triple() or abelianize(w) != (0, 0):
            return False
    return True


def check_automorphisms(n, settings):
    rng = np.random.default_rng(settings.seed)
    for _ in range(200):
        w = random_word(rng, 16)
        t = psi_eval(n, w)
        if gn_theta(t) != psi_eval(n, apply_theta(w)) or gn_tau(t) != psi_eval(n, apply_tau(w)):
            return False
    return True


def _targets(n):
    return sorted({canonicalize(d) for d in divisors(canonicalize(n)) if d >= 3})


def check_reductions(n, settings):
    shadows = enumerate_closed(n)
    targets = _targets(n)
    for d in targets:
        if not fibers_uniform(n, fiber_report(n, d, bound=settings.bound)):
            return False
        for a, b in _pairs(shadows, settings):
            if reduce_shadow(compose(a, b), d) != compose(reduce_shadow(a, d), reduce_shadow(b, d)):
                return False
        for e in _targets(d):
            if any(reduce_shadow(reduce_shadow(s, d), e) != reduce_shadow(s, e) for s in shadows):
                return False
    return True


def check_lochak_schneps(n, settings):
    shadows = enumerate_closed(n)
    for s in shadows:
        g, h, case = ls_witness(s)
        if case != ls_case(s.m) or not ls_verify(s, g, h):
            return False
    if canonicalize(n) <= settings.closure_limit:
        return all(ls_exists_brute(s.n, s.m, s.comm_triple) for s in shadows)
    return True


def check_profinite(n, settings):
    _, alpha = two_adic_split(n)
    closure = generator_closure(alpha, bound=settings.profinite_bound)
    members = ftilde_elements(alpha)
    group = full_group(alpha)
    kernel = {a for a in group if psi_map(a) == 0}
    if not closure == members == kernel:
        return False
    if len(members) != 2**(2*alpha - 2) or 2*len(members) != len(group):
        return False

    shadows = enumerate_closed(n)
    if {shadow_to_trunc(s) for s in shadows} != members:
        return False
    for a, b in _pairs(shadows, settings):
        if shadow_to_trunc(compose(a, b)) != shadow_to_trunc(a)*shadow_to_trunc(b):
            return False
    if alpha > 2:
        for s in shadows:
            if shadow_to_trunc(reduce_shadow(s, n // 2)) != project(shadow_to_trunc(s), alpha - 1):
                return False
    return True


def _always(n, settings):
    return True


def _small(n, settings):
    return n <= settings.closure_limit


def _small_canonical(n, settings):
    return canonicalize(n) <= settings.closure_limit


#: (name, check, applicability) in the order they run
CHECKS = [('enumeration',       check_enumeration,     _always),
          ('orders',            check_orders,          _always),
          ('group_axioms',      check_group_axioms,    _always),
          ('characters',        check_characters,      _always),
          ('rho',               check_rho,             _always),
          ('gn_closure',        check_gn,              _small),
          ('commutator',        check_commutator,      _small),
          ('automorphisms',     check_automorphisms,   _always),
          ('isolation',         check_isolation,       _small_canonical),
          ('lemma_witnesses',   check_lemma_witnesses, _always),
          ('reductions',        check_reductions,      _always),
          ('lochak_schneps',    check_lochak_schneps,  lambda n, st: n % 3 == 0),
          ('profinite',         check_profinite,       lambda n, st: n >= 4 and is_power_of_two(n)),
         ]


def run_suite(n, settings=None, progress=False):
    """
    Run every applicable check at modulus n, stopping at the first failure.
    Returns (ok, results) where results maps check names to 'pass', 'fail' or
    'skipped' in run order.
    """

    if settings is None:
        settings = VerifySettings()
    canonicalize(n)

    if progress:
        pb = progressbar.ProgressBar(redirect_stdout=True)
        pb.start(max_value=len(CHECKS))

    results = OrderedDict()
    ok = True
    for name, check, applies in CHECKS:
        if progress:
            pb += 1
        if not applies(n, settings):
            results[name] = 'skipped'
            continue
        try:
            passed = bool(check(n, settings))
        except VerificationError as e:
            logger.error("Check '%s' raised at n=%i: %s", name, n, str(e))
            passed = False
        results[name] = 'pass' if passed else 'fail'
        if not passed:
            logger.error("Check '%s' failed at n=%i", name, n)
            ok = False
            break
        logger.info("Check '%s' passed at n=%i", name, n)

    if progress:
        pb.finish()
    return ok, results
