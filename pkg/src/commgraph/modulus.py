"""Factorisation and classification of the modulus."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import gcd

from .errors import PreconditionError


@dataclass(frozen=True)
class Prime:
    p: int

    @property
    def m(self):
        return self.p


@dataclass(frozen=True)
class PrimePower:
    p: int
    t: int

    @property
    def m(self):
        return self.p ** self.t


@dataclass(frozen=True)
class CoprimeSplit:
    s: int
    t: int

    @property
    def m(self):
        return self.s * self.t


ModulusClass = Prime | PrimePower | CoprimeSplit


@lru_cache(maxsize=1024)
def _factorize(m):
    factors = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            e = 0
            while m % d == 0:
                m //= d
                e += 1
            factors.append((d, e))
        d += 1 if d == 2 else 2
    if m > 1:
        factors.append((m, 1))
    return tuple(factors)


def factorize(m):
    """Prime factorisation of ``m`` as ascending ``(prime, exponent)`` pairs."""
    if m < 2:
        raise PreconditionError(f"factorize needs m >= 2, got {m}")
    return list(_factorize(m))


def is_prime(m):
    return m >= 2 and _factorize(m) == ((m, 1),)


@lru_cache(maxsize=1024)
def classify(m):
    """Prime, PrimePower, or CoprimeSplit with ``s`` the smallest prime's full power."""
    factors = factorize(m)
    if len(factors) == 1:
        p, e = factors[0]
        return Prime(p) if e == 1 else PrimePower(p, e)
    p, e = factors[0]
    s = p ** e
    return CoprimeSplit(s, m // s)


def check_units_lemma(u, v, s, t, k, l):
    """Return whether ``u*s**k + v*t**l`` is coprime to ``s*t``.

    Raises PreconditionError unless ``u, v, s, t`` are pairwise coprime and
    ``k, l >= 1``; on valid input the answer is always True.
    """
    if k < 1 or l < 1:
        raise PreconditionError(f"exponents must be natural numbers >= 1, got k={k}, l={l}")
    for a, b in combinations((u, v, s, t), 2):
        if gcd(a, b) != 1:
            raise PreconditionError(f"({u}, {v}, {s}, {t}) are not pairwise coprime")
    st = s * t
    if st in (1, -1):
        return True
    if st == 0:
        return gcd(u * s ** k + v * t ** l, 0) == 1
    return gcd(u * pow(s, k, abs(st)) + v * pow(t, l, abs(st)), st) == 1
