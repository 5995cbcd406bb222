"""Exact arithmetic for square matrices over Z_m.

Matrices are immutable; residues are normalised into ``[0, m)`` on
construction, so equality is plain tuple equality. Indices of matrix entries
are 0-based throughout (``unit(n, m, 0, 1)`` is the matrix unit E_{1,2}).
"""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from functools import lru_cache
from math import gcd, prod

import numpy as np

from . import kernels
from .batch import decode_batch, det_batch, unit_mask
from .errors import GuardExceeded, PreconditionError, ShapeMismatch

ENUMERATION_CHUNK = 1 << 18
DEFAULT_SCAN_LIMIT = 1 << 27


@dataclass(frozen=True, slots=True)
class Residue:
    value: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 2:
            raise PreconditionError(f"modulus must be >= 2, got {self.modulus}")
        object.__setattr__(self, "value", self.value % self.modulus)

    def __int__(self):
        return self.value

    def is_unit(self):
        return gcd(self.value, self.modulus) == 1


@dataclass(frozen=True, slots=True)
class ModMatrix:
    """An ``n x n`` matrix over Z_m stored as a row-major tuple of residues."""

    n: int
    m: int
    entries: tuple

    def __post_init__(self):
        if self.n < 1:
            raise PreconditionError(f"dimension must be >= 1, got {self.n}")
        if self.m < 2:
            raise PreconditionError(f"modulus must be >= 2, got {self.m}")
        entries = tuple(int(e) % self.m for e in self.entries)
        if len(entries) != self.n * self.n:
            raise PreconditionError(f"expected {self.n * self.n} entries, got {len(entries)}")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_rows(cls, rows, m):
        rows = [list(r) for r in rows]
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise PreconditionError("matrix must be square")
        return cls(n, m, tuple(e for r in rows for e in r))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.n + j]

    def rows(self):
        n = self.n
        return [list(self.entries[i * n:(i + 1) * n]) for i in range(n)]

    def __add__(self, other):
        return mat_add(self, other)

    def __sub__(self, other):
        return mat_sub(self, other)

    def __matmul__(self, other):
        return mat_mul(self, other)

    def __rmul__(self, k):
        return scalar_mul(k, self)

    def __neg__(self):
        return scalar_mul(-1, self)

    @property
    def T(self):
        return transpose(self)

    def __repr__(self):
        return f"ModMatrix({self.rows()}, m={self.m})"

    def __str__(self):
        return to_text(self)


def _raw(n, m, entries):
    # Skips validation; callers pass already-normalised tuples.
    obj = object.__new__(ModMatrix)
    object.__setattr__(obj, "n", n)
    object.__setattr__(obj, "m", m)
    object.__setattr__(obj, "entries", entries)
    return obj


def identity(n, m):
    return _raw(n, m, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))


def zero(n, m):
    return _raw(n, m, (0,) * (n * n))


def scalar(k, n, m):
    k %= m
    return _raw(n, m, tuple(k if i == j else 0 for i in range(n) for j in range(n)))


def unit(n, m, i, j):
    """The matrix unit with a single 1 at 0-based position ``(i, j)``."""
    entries = [0] * (n * n)
    entries[i * n + j] = 1
    return _raw(n, m, tuple(entries))


def _check_same(a, b):
    if a.n != b.n or a.m != b.m:
        raise ShapeMismatch(f"({a.n}, mod {a.m}) vs ({b.n}, mod {b.m})")


def mat_add(a, b):
    _check_same(a, b)
    m = a.m
    return _raw(a.n, m, tuple((x + y) % m for x, y in zip(a.entries, b.entries)))


def mat_sub(a, b):
    _check_same(a, b)
    m = a.m
    return _raw(a.n, m, tuple((x - y) % m for x, y in zip(a.entries, b.entries)))


def scalar_mul(k, a):
    """``k * a`` where the integer ``k`` acts through its residue class mod ``m``."""
    m = a.m
    k %= m
    return _raw(a.n, m, tuple(k * x % m for x in a.entries))


def _product(ea, eb, n, m):
    if n == 2:
        a0, a1, a2, a3 = ea
        b0, b1, b2, b3 = eb
        return ((a0 * b0 + a1 * b2) % m, (a0 * b1 + a1 * b3) % m,
                (a2 * b0 + a3 * b2) % m, (a2 * b1 + a3 * b3) % m)
    out = []
    for i in range(n):
        row = ea[i * n:(i + 1) * n]
        for j in range(n):
            out.append(sum(row[k] * eb[k * n + j] for k in range(n)) % m)
    return tuple(out)


def mat_mul(a, b):
    _check_same(a, b)
    return _raw(a.n, a.m, _product(a.entries, b.entries, a.n, a.m))


def transpose(a):
    n = a.n
    return _raw(n, a.m, tuple(a.entries[j * n + i] for i in range(n) for j in range(n)))


def _cofactor_det(rows):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = 0
    for j, pivot in enumerate(rows[0]):
        if pivot == 0:
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        total += (-1) ** j * pivot * _cofactor_det(minor)
    return total


def _bareiss_det(rows):
    # Fraction-free elimination over Z; every division below is exact.
    a = [list(r) for r in rows]
    n = len(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def determinant(a):
    """Determinant as a :class:`Residue`.

    Cofactor expansion for ``n <= 4``, Bareiss elimination over the integers
    beyond that; both reduce the integer determinant mod ``m`` at the end.
    """
    rows = a.rows()
    value = _cofactor_det(rows) if a.n <= 4 else _bareiss_det(rows)
    return Residue(value, a.m)


def is_invertible(a):
    return gcd(determinant(a).value, a.m) == 1


def commutes(a, b):
    _check_same(a, b)
    ea, eb, n, m = a.entries, b.entries, a.n, a.m
    if n == 2:
        a0, a1, a2, a3 = ea
        b0, b1, b2, b3 = eb
        # ab - ba for 2x2: off-diagonal and one diagonal condition suffice
        return ((a1 * b2 - b1 * a2) % m == 0
                and (a0 * b1 + a1 * b3 - b0 * a1 - b1 * a3) % m == 0
                and (a2 * b0 + a3 * b2 - b2 * a0 - b3 * a2) % m == 0)
    return _product(ea, eb, n, m) == _product(eb, ea, n, m)


def encode(a):
    """Base-``m`` integer of the row-major entries, entry (1,1) most significant."""
    idx = 0
    for e in a.entries:
        idx = idx * a.m + e
    return idx


def decode(idx, n, m):
    size = m ** (n * n)
    if not 0 <= idx < size:
        raise PreconditionError(f"index {idx} outside [0, {size})")
    digits = []
    for _ in range(n * n):
        idx, d = divmod(idx, m)
        digits.append(d)
    return _raw(n, m, tuple(reversed(digits)))


def to_text(a):
    return f"{a.n}:{a.m}:[{','.join(map(str, a.entries))}]"


_TEXT_RE = re.compile(r"^\s*(\d+):(\d+):\[([\d,\s]*)\]\s*$")


def parse_matrix(text, n=None, m=None):
    """Parse canonical text ``n:m:[e11,e12,...]`` or a decimal encoded index.

    A bare index needs ``n`` and ``m``; for text, given ``n``/``m`` must match.
    """
    text = str(text).strip()
    if text.isdigit():
        if n is None or m is None:
            raise PreconditionError("an encoded index needs n and m")
        return decode(int(text), n, m)
    match = _TEXT_RE.match(text)
    if not match:
        raise PreconditionError(f"cannot parse matrix {text!r}")
    tn, tm = int(match.group(1)), int(match.group(2))
    body = match.group(3).strip()
    entries = tuple(int(x) for x in body.split(",")) if body else ()
    if (n is not None and n != tn) or (m is not None and m != tm):
        raise ShapeMismatch(f"matrix {text!r} does not match n={n}, m={m}")
    if any(e >= tm for e in entries):
        raise PreconditionError(f"entries of {text!r} must be residues below {tm}")
    return ModMatrix(tn, tm, entries)


class DomainKind(enum.Enum):
    MATRIX_RING = "m"
    GENERAL_LINEAR = "gl"
    SPECIAL_LINEAR = "sl"


@dataclass(frozen=True)
class DomainSpec:
    kind: DomainKind
    n: int
    m: int

    def __post_init__(self):
        if isinstance(self.kind, str):
            object.__setattr__(self, "kind", DomainKind(self.kind))
        if self.n < 1 or self.m < 2:
            raise PreconditionError(f"need n >= 1 and m >= 2, got n={self.n}, m={self.m}")

    def contains(self, a):
        if a.n != self.n or a.m != self.m:
            return False
        if self.kind is DomainKind.MATRIX_RING:
            return True
        d = determinant(a).value
        if self.kind is DomainKind.GENERAL_LINEAR:
            return gcd(d, self.m) == 1
        return d == 1 % self.m

    def __str__(self):
        name = {"m": "M", "gl": "GL", "sl": "SL"}[self.kind.value]
        return f"{name}({self.n},Z_{self.m})"


def _prime_powers(m):
    from .modulus import factorize

    return factorize(m)


def domain_order(domain):
    """Exact number of elements of the domain, from the standard order formulas."""
    n, m = domain.n, domain.m
    if domain.kind is DomainKind.MATRIX_RING:
        return m ** (n * n)
    order = 1
    phi = 1
    for p, a in _prime_powers(m):
        order *= p ** ((a - 1) * n * n) * prod(p ** n - p ** i for i in range(n))
        phi *= p ** (a - 1) * (p - 1)
    if domain.kind is DomainKind.GENERAL_LINEAR:
        return order
    return order // phi


def enumerate_domain(domain, limit=DEFAULT_SCAN_LIMIT):
    """Encoded indices (ascending) and entry rows of every member of ``domain``."""
    n, m = domain.n, domain.m
    ambient = m ** (n * n)
    if ambient > limit:
        raise GuardExceeded(f"enumerating M({n},Z_{m})", ambient, limit)
    idx_parts, entry_parts = [], []
    for start in range(0, ambient, ENUMERATION_CHUNK):
        idx = np.arange(start, min(start + ENUMERATION_CHUNK, ambient), dtype=np.int64)
        rows = decode_batch(idx, n, m)
        if domain.kind is not DomainKind.MATRIX_RING:
            det = det_batch(rows, n, m)
            keep = unit_mask(det, m) if domain.kind is DomainKind.GENERAL_LINEAR else det == 1 % m
            idx, rows = idx[keep], rows[keep]
        idx_parts.append(idx)
        entry_parts.append(rows)
    return np.concatenate(idx_parts), np.concatenate(entry_parts)


def center_indices(entries, n, m, prefilter=32):
    """Row positions of ``entries`` that commute with every row.

    Candidates are first narrowed against a few members, then each survivor
    is checked against the whole set, so the result is exact.
    """
    count = entries.shape[0]
    cand = np.arange(count)
    for g in range(min(prefilter, count)):
        cand = cand[kernels.commute_mask(entries[cand], entries[g], n, m)]
    return np.array([c for c in cand if kernels.commute_mask(entries, entries[c], n, m).all()],
                    dtype=np.int64)


@lru_cache(maxsize=32)
def _center_cached(domain, limit):
    idx, entries = enumerate_domain(domain, limit)
    return frozenset(int(i) for i in idx[center_indices(entries, domain.n, domain.m)])


def center_of(domain, limit=DEFAULT_SCAN_LIMIT):
    """The center of the domain, found by enumeration (no closed form assumed)."""
    return frozenset(decode(i, domain.n, domain.m) for i in _center_cached(domain, limit))


def _require_member(a, domain):
    if not domain.contains(a):
        raise PreconditionError(f"{to_text(a)} is not an element of {domain}")


def is_central(a, domain):
    """Whether ``a`` lies in the center of ``domain``.

    For ``n >= 2`` this tests commutation with the transvections ``I + E_ij``
    (``i != j``): they lie in all three domains, and commuting with all of them
    forces a scalar matrix, which is central. Exact, and needs no enumeration.
    """
    _require_member(a, domain)
    n, m = a.n, a.m
    if n == 1:
        return True
    return all(commutes(a, t) for t in _transvections(n, m))


@lru_cache(maxsize=64)
def _transvections(n, m):
    one = identity(n, m)
    return tuple(mat_add(one, unit(n, m, i, j)) for i in range(n) for j in range(n) if i != j)


def centralizer(x, domain, limit=DEFAULT_SCAN_LIMIT):
    """All domain elements commuting with ``x``, by enumeration."""
    _require_member(x, domain)
    idx, entries = enumerate_domain(domain, limit)
    mask = kernels.commute_mask(entries, np.array(x.entries, dtype=np.int64), x.n, x.m)
    return frozenset(decode(int(i), x.n, x.m) for i in idx[mask])
