"""
Reduced words in the free group on x and y.

Words are sympy free group elements, which store a reduced word as a run
length encoded tuple of (generator, exponent) pairs and cancel at the seam
on multiplication.  The derived letter z = y^-1 x^-1 is never stored; the
parser expands it as it reads.
"""

import re

from sympy.combinatorics.free_groups import free_group, FreeGroupElement

__all__ = ['Word', 'FREE_GROUP', 'X', 'Y', 'Z', 'IDENTITY', 'word', 'letters',
           'concat', 'invert', 'apply_theta', 'apply_tau', 'endo_E', 'abelianize',
           'commutator', 'parse_word', 'format_word', 'random_word']


#: Type of a word
Word = FreeGroupElement

FREE_GROUP, X, Y = free_group("x, y")

#: The derived letter z = y^-1 x^-1
Z = Y**-1 * X**-1

#: The empty word
IDENTITY = FREE_GROUP.identity

_SYMBOL_TO_GEN = {str(g): g for g in (X, Y)}

_TOKEN_RE = re.compile(r'^(?P<gen>[xyz])(\^(?P<exp>[+-]?\d+))?$')


def word(*pairs):
    """
    Build a word from (generator, exponent) pairs, where the generator is one
    of 'x', 'y' or 'z'.
    """

    w = IDENTITY
    for gen, exp in pairs:
        w = w * _generator(gen)**int(exp)
    return w


def _generator(name):
    if name == 'z':
        return Z
    try:
        return _SYMBOL_TO_GEN[name]
    except KeyError:
        raise ValueError("Unknown generator '%s'" % name)


def letters(w):
    """
    Return the run length encoded letters of w as a tuple of ('x'|'y', exponent)
    pairs.
    """

    return tuple((str(sym), int(exp)) for sym, exp in w.array_form)


def concat(a, b):
    return a * b


def invert(w):
    return w.inverse()


def _substitute(w, images):
    result = IDENTITY
    for sym, exp in w.array_form:
        result = result * images[str(sym)]**exp
    return result


def apply_theta(w):
    """
    Apply the automorphism x -> y, y -> x.
    """

    return _substitute(w, {'x': Y, 'y': X})


def apply_tau(w):
    """
    Apply the automorphism x -> y, y -> z.
    """

    return _substitute(w, {'x': Y, 'y': Z})


def endo_E(m, f, w):
    """
    Apply the endomorphism x -> x^(2m+1), y -> f^-1 y^(2m+1) f to w.
    """

    u = 2*m + 1
    return _substitute(w, {'x': X**u, 'y': f.inverse() * Y**u * f})


def abelianize(w):
    """
    Return the pair of exponent sums (x, y) of w.
    """

    return int(w.exponent_sum(X)), int(w.exponent_sum(Y))


def commutator(a, b):
    """
    Return the commutator a b a^-1 b^-1.
    """

    return a * b * a.inverse() * b.inverse()


def parse_word(text):
    """
    Parse the text form `x^2*y^-1*x` of a word.  The letter z is accepted and
    expanded, and the empty word is spelled `1`.
    """

    text = text.strip()
    if text in ('', '1'):
        return IDENTITY

    w = IDENTITY
    for token in text.split('*'):
        token = token.strip()
        if token == '1':
            continue
        mtch = _TOKEN_RE.match(token)
        if mtch is None:
            raise ValueError("Cannot interpret '%s' as a word factor" % token)
        exp = int(mtch.group('exp')) if mtch.group('exp') is not None else 1
        w = w * _generator(mtch.group('gen'))**exp
    return w


def format_word(w):
    """
    Return the text form of a word.
    """

    if w.is_identity:
        return '1'
    parts = []
    for gen, exp in letters(w):
        parts.append(gen if exp == 1 else f"{gen}^{exp}")
    return '*'.join(parts)


def random_word(rng, max_length):
    """
    Draw a reduced word with at most `max_length` letters from a numpy random
    generator.
    """

    length = int(rng.integers(0, max_length + 1))
    gens = rng.integers(0, 2, size=length)
    signs = rng.choice([-1, 1], size=length)
    w = IDENTITY
    for gen, sign in zip(gens, signs):
        w = w * (X if gen == 0 else Y)**int(sign)
    return w
