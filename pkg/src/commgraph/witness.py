"""Constructive commuting-path certificates over Z_m.

For composite ``m`` every pair of non-central matrices is joined by a path
of length at most three whose interior vertices have an explicit form:

* ``m = p**t``: the neighbour of ``X`` is ``p**(t-1) * Y + I``. Any two such
  matrices commute because ``p**(2t-2)`` vanishes mod ``p**t``.
* ``m = s*t`` with ``gcd(s, t) = 1``: the neighbour of ``X`` is ``s*Y + k*I``
  and the neighbour of the other endpoint is ``t*Y' + l*I``. Their product
  differs from the reversed product only by multiples of ``s*t``.

Every constructor re-checks its own output and raises
:class:`~commgraph.errors.WitnessCheckFailed` instead of returning a bad
witness. :func:`verify_path` is the independent certificate checker.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd

import numpy as np

from . import kernels
from .errors import (GuardExceeded, NotAVertex, OutOfScope, PreconditionError,
                     WitnessCheckFailed)
from .modulus import CoprimeSplit, Prime, PrimePower, classify, is_prime
from .zmod import (DomainKind, DomainSpec, ModMatrix, _bareiss_det, commutes,
                   decode, enumerate_domain, center_indices, encode, identity,
                   is_central, is_invertible, mat_add, mat_sub, scalar,
                   scalar_mul, to_text, transpose, unit)

DEFAULT_LOWER_BOUND_LIMIT = 1 << 30


@dataclass(frozen=True)
class NeighborWitness:
    base: ModMatrix
    witness: ModMatrix
    form: str


@dataclass(frozen=True)
class PathWitness:
    endpoints: tuple
    interior: tuple
    domain: DomainSpec
    verified: bool

    @property
    def vertices(self):
        x, y = self.endpoints
        if x == y and not self.interior:
            return (x,)
        return (x, *self.interior, y)

    @property
    def length(self):
        return len(self.vertices) - 1

    def serialize(self):
        body = " ~ ".join(to_text(v) for v in self.vertices)
        return f"len={self.length} verified={str(self.verified).lower()} {body}"


@dataclass(frozen=True)
class PathCheck:
    ok: bool
    reason: str

    def __bool__(self):
        return self.ok


def _off_diagonal_divisible(x, d):
    n = x.n
    return all(x.entries[i * n + j] % d == 0 for i in range(n) for j in range(n) if i != j)


def _ring(x):
    return DomainSpec(DomainKind.MATRIX_RING, x.n, x.m)


def _self_check(base, witness, need_invertible, form):
    if not commutes(base, witness):
        raise WitnessCheckFailed(f"{form}: witness {to_text(witness)} does not commute with {to_text(base)}")
    if is_central(witness, _ring(witness)):
        raise WitnessCheckFailed(f"{form}: witness {to_text(witness)} is central")
    if need_invertible and not is_invertible(witness):
        raise WitnessCheckFailed(f"{form}: witness {to_text(witness)} is not invertible")
    return NeighborWitness(base, witness, form)


@lru_cache(maxsize=1 << 16)
def prime_power_neighbor(x, p, t):
    """Invertible non-central matrix ``p**(t-1) * Y + I`` commuting with ``x``."""
    if not is_prime(p) or t < 2:
        raise PreconditionError(f"need p prime and t >= 2, got p={p}, t={t}")
    if x.m != p ** t:
        raise PreconditionError(f"matrix modulus {x.m} is not {p}**{t}")
    if x.n < 2:
        raise PreconditionError("n must be >= 2")
    q = p ** (t - 1)
    one = identity(x.n, x.m)
    if _off_diagonal_divisible(x, p):
        witness, form = mat_add(scalar_mul(q, unit(x.n, x.m, 0, 0)), one), "prime-power/case-1"
    else:
        witness, form = mat_add(scalar_mul(q, x), one), "prime-power/case-2"
    return _self_check(x, witness, True, form)


@lru_cache(maxsize=1 << 16)
def coprime_neighbor(x, s, t, require_invertible=False):
    """Non-central ``s * Y + k * I`` commuting with ``x`` over Z_{st}.

    With ``require_invertible`` the witness is invertible (``x`` must be) and
    ``k = t``; otherwise ``k = 1``.
    """
    if s < 2 or t < 2 or gcd(s, t) != 1:
        raise PreconditionError(f"need coprime s, t > 1, got s={s}, t={t}")
    if x.m != s * t:
        raise PreconditionError(f"matrix modulus {x.m} is not {s}*{t}")
    n, m = x.n, x.m
    if n < 2:
        raise PreconditionError("n must be >= 2")
    one = identity(n, m)
    e11 = unit(n, m, 0, 0)
    divisible = _off_diagonal_divisible(x, t)
    if not require_invertible:
        if divisible:
            witness, form = mat_add(scalar_mul(s, e11), one), "coprime/a"
        else:
            witness, form = mat_add(scalar_mul(s, x), one), "coprime/b"
        return _self_check(x, witness, False, form)
    if not is_invertible(x):
        raise PreconditionError(f"{to_text(x)} is not invertible")
    shift = scalar(t, n, m)
    if divisible and t == 2:
        y = mat_add(unit(n, m, 0, n - 1), one)
        form = "coprime-invertible/1"
    elif divisible:
        y = mat_sub(one, scalar_mul(2, e11))
        form = "coprime-invertible/2"
    else:
        y = x
        form = "coprime-invertible/3"
    witness = mat_add(scalar_mul(s, y), shift)
    return _self_check(x, witness, True, form)


@lru_cache(maxsize=1 << 16)
def _vertex_problem(v, domain):
    if v.n != domain.n or v.m != domain.m or not domain.contains(v):
        return "is not an element of"
    if is_central(v, domain):
        return "is central in"
    return None


def _collapse(seq):
    # drop any cycle so the path visits each vertex once
    out = []
    for v in seq:
        if v in out:
            del out[out.index(v) + 1:]
        else:
            out.append(v)
    return out


_invertible = lru_cache(maxsize=1 << 16)(is_invertible)


def path3(x, y, domain):
    """Certified commuting path of length at most 3 between two vertices.

    Covers the matrix ring and the general linear group for composite ``m``.
    """
    if domain.kind is DomainKind.SPECIAL_LINEAR:
        raise OutOfScope("no constructive path oracle for SL; use BFS")
    for v in (x, y):
        problem = _vertex_problem(v, domain)
        if problem:
            raise NotAVertex(f"{to_text(v)} {problem} {domain}")
    cls = classify(domain.m)
    if isinstance(cls, Prime):
        raise OutOfScope(f"m = {domain.m} is prime; the constructive oracle needs composite m")
    if x == y:
        return PathWitness((x, y), (), domain, True)
    if commutes(x, y):
        seq = [x, y]
    else:
        gl = domain.kind is DomainKind.GENERAL_LINEAR
        if isinstance(cls, PrimePower):
            a = prime_power_neighbor(x, cls.p, cls.t).witness
            b = prime_power_neighbor(y, cls.p, cls.t).witness
        else:
            a = coprime_neighbor(x, cls.s, cls.t, gl or _invertible(x)).witness
            b = coprime_neighbor(y, cls.t, cls.s, gl or _invertible(y)).witness
        seq = _collapse([x, a, b, y])
    for u, v in zip(seq, seq[1:]):
        if not commutes(u, v):
            raise WitnessCheckFailed(f"path edge {to_text(u)} ~ {to_text(v)} does not commute")
    return PathWitness((seq[0], seq[-1]), tuple(seq[1:-1]), domain, True)


def _plain_product(a, b, n, m):
    cols = [b[j::n] for j in range(n)]
    return [sum(x * y for x, y in zip(a[i * n:(i + 1) * n], col)) % m
            for i in range(n) for col in cols]


@lru_cache(maxsize=1 << 18)
def _plain_commute(a, b, n, m):
    return _plain_product(a, b, n, m) == _plain_product(b, a, n, m)


def _commutes_with_unit(a, i, j, n, m):
    # a E_ij has column j equal to column i of a; E_ij a has row i equal to row j of a
    for r in range(n):
        for c in range(n):
            lhs = a[r * n + i] if c == j else 0
            rhs = a[j * n + c] if r == i else 0
            if (lhs - rhs) % m:
                return False
    return True


@lru_cache(maxsize=1 << 16)
def _vertex_verdict(a, n, m, kind):
    if kind is not DomainKind.MATRIX_RING:
        det = _bareiss_det([list(a[i * n:(i + 1) * n]) for i in range(n)]) % m
        if (kind is DomainKind.GENERAL_LINEAR and gcd(det, m) != 1) or \
                (kind is DomainKind.SPECIAL_LINEAR and det != 1 % m):
            return "not in domain"
    # central in M, GL and SL alike iff it commutes with every matrix unit
    if all(_commutes_with_unit(a, i, j, n, m) for i in range(n) for j in range(n)):
        return "central"
    return None


def verify_path(w):
    """Re-check every certificate property from scratch."""
    dom = w.domain
    n, m = dom.n, dom.m
    verts = w.vertices
    if any(v.n != n or v.m != m for v in verts):
        return PathCheck(False, "shape mismatch")
    if len(verts) - 1 > 3:
        return PathCheck(False, "too long")
    if len({v.entries for v in verts}) != len(verts):
        return PathCheck(False, "repeated vertex")
    for k, v in enumerate(verts):
        verdict = _vertex_verdict(v.entries, n, m, dom.kind)
        if verdict == "central":
            inner = 0 < k < len(verts) - 1
            return PathCheck(False, "central interior" if inner else "central endpoint")
        if verdict:
            return PathCheck(False, verdict)
    for u, v in zip(verts, verts[1:]):
        if not _plain_commute(u.entries, v.entries, n, m):
            return PathCheck(False, "not commuting")
    return PathCheck(True, "ok")


def p_matrix(n, m):
    """Identity plus the full superdiagonal."""
    if n < 2:
        raise PreconditionError("n must be >= 2")
    if m < 2:
        raise PreconditionError("m must be >= 2")
    return ModMatrix(n, m, tuple(1 if j in (i, i + 1) else 0 for i in range(n) for j in range(n)))


@dataclass(frozen=True)
class LowerBoundReport:
    n: int
    m: int
    intersection_size: int
    intersection_is_scalar: bool
    p_noncentral: bool
    p_commutes_with_transpose: bool
    common_ring_neighbors: int
    common_gl_neighbors: int

    @property
    def ok(self):
        return (self.intersection_is_scalar and self.p_noncentral
                and not self.p_commutes_with_transpose
                and self.common_ring_neighbors == 0 and self.common_gl_neighbors == 0)


def lower_bound_report(n, m, limit=DEFAULT_LOWER_BOUND_LIMIT):
    """Exhaustively compute the centralizer of ``P`` intersected with that of ``P^T``."""
    ambient = m ** (n * n)
    if ambient > limit:
        raise GuardExceeded(f"scan of M({n},Z_{m})", ambient, limit)
    p = p_matrix(n, m)
    pt = transpose(p)
    fixed = np.array([p.entries, pt.entries], dtype=np.int64)
    hits = [decode(int(i), n, m) for i in kernels.scan_commuting(n, m, fixed, 0, ambient)]
    scalars = {scalar(k, n, m) for k in range(m)}
    ring = DomainSpec(DomainKind.MATRIX_RING, n, m)
    gl = DomainSpec(DomainKind.GENERAL_LINEAR, n, m)
    ring_common = sum(1 for h in hits if not is_central(h, ring))
    gl_common = sum(1 for h in hits if gl.contains(h) and not is_central(h, gl))
    return LowerBoundReport(
        n=n, m=m,
        intersection_size=len(hits),
        intersection_is_scalar=set(hits) == scalars,
        p_noncentral=not is_central(p, gl) and not is_central(pt, gl),
        p_commutes_with_transpose=commutes(p, pt),
        common_ring_neighbors=ring_common,
        common_gl_neighbors=gl_common,
    )


def verify_lower_bound(n, m, limit=DEFAULT_LOWER_BOUND_LIMIT):
    """Whether ``P`` and ``P^T`` are at distance at least 3 in the M and GL graphs."""
    return lower_bound_report(n, m, limit).ok


def field_isolated_component(p):
    """The set ``{a*I + b*E_12 : b != 0}`` of M(2, Z_p), checked to be a closed component."""
    if not is_prime(p):
        raise PreconditionError(f"Z_{p} is not an integral domain (p must be prime)")
    n = 2
    ring = DomainSpec(DomainKind.MATRIX_RING, n, p)
    idx, entries = enumerate_domain(ring)
    central = np.zeros(idx.shape[0], dtype=bool)
    central[center_indices(entries, n, p)] = True
    members = {a * p ** 3 + b * p ** 2 + a for a in range(p) for b in range(1, p)}
    for i in sorted(members):
        mask = kernels.commute_mask(entries, entries[i], n, p) & ~central
        mask[i] = False
        stray = set(int(v) for v in idx[mask]) - members
        if stray:
            raise WitnessCheckFailed(f"{to_text(decode(i, n, p))} has neighbours outside the component")
    b_mat = ModMatrix.from_rows([[1, 1], [0, 1]], p)
    c_mat = ModMatrix.from_rows([[1, 0], [1, 1]], p)
    if encode(b_mat) not in members or encode(c_mat) in members:
        raise WitnessCheckFailed("B must lie in the component and C outside it")
    return frozenset(decode(i, n, p) for i in members)
