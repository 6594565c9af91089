"""Tight sets and m-ovoids: exact classification of point sets by their
perp-intersection numbers, plus the order/divisibility feasibility filters
and the primitive-prime-divisor (Zsigmondy) test.

A set M is intriguing when |P^perp ∩ M| takes a single value h1 on M and a
single value h2 off M.  The two parameter families are i-tight sets
(size i(q^r-1)/(q-1)) and m-ovoids (size m·theta_r); the full point set is
the unique set matching both.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import polar as pl


@dataclass(frozen=True)
class IntriguingReport:
    size: int
    h1: object            # on-set intersection constant (None if not constant)
    h2: object            # off-set constant (None if not constant or no off-set)
    is_intriguing: bool
    tight_i: object = None
    ovoid_m: object = None

    def serialize(self):
        out = {"size": self.size, "h1": self.h1, "h2": self.h2}
        if self.tight_i is not None:
            out["tight_i"] = self.tight_i
        if self.ovoid_m is not None:
            out["ovoid_m"] = self.ovoid_m
        return out


def classify(space, M):
    """Exact IntriguingReport for a point set, by computing |P^perp ∩ M| for
    every point P of the space (streamed in exact float32/float64 blocks on
    prime fields, pure field arithmetic otherwise)."""
    if len(M) == 0:
        raise ValueError("cannot classify the empty set")
    if M.space is not space:
        raise ValueError("point set belongs to a different space")
    counts = _perp_counts(space, M)
    n = space.num_points
    size = len(M)
    off_empty = size == n
    inside = np.zeros(n, dtype=bool)
    inside[list(M.members)] = True
    on_vals = set(int(c) for c in counts[inside])
    off_vals = set(int(c) for c in counts[~inside])
    h1 = on_vals.pop() if len(on_vals) == 1 else None
    h2 = off_vals.pop() if len(off_vals) == 1 else None
    intr = h1 is not None and (off_empty or h2 is not None)
    tight_i = ovoid_m = None
    if intr:
        q, r = space.q, space.rank
        u = (q ** r - 1) // (q - 1)
        th, th1 = space.ovoid_number, space.theta_j(space.rank - 1)
        if size % u == 0:
            i = size // u
            if (h1 == q ** (r - 1) + i * (q ** (r - 1) - 1) // (q - 1)
                    and (off_empty or h2 == i * (q ** (r - 1) - 1) // (q - 1))):
                tight_i = i
        if size % th == 0:
            m = size // th
            if (h1 == (m - 1) * th1 + 1
                    and (off_empty or h2 == m * th1)):
                ovoid_m = m
    return IntriguingReport(size, h1, h2, intr, tight_i, ovoid_m)


def _perp_counts(space, M):
    # For a set covering more than half the space, count against the
    # complement instead and subtract: |x^perp ∩ M| = c - |x^perp ∩ M^c|
    # with c the (point-independent) collinearity constant.
    n = space.num_points
    members = list(M.members)
    if 2 * len(members) > n:
        inside = np.zeros(n, dtype=bool)
        inside[members] = True
        comp = np.flatnonzero(~inside).tolist()
        return _collinear_constant(space) - _raw_counts(space, comp)
    return _raw_counts(space, members)


def _collinear_constant(space):
    """|x^perp ∩ P| for a point x; the isometry group is transitive on
    points so this is constant, which we spot-check on three samples."""
    n = space.num_points
    vals = {int(_raw_counts(space, [i]).sum()) for i in {0, n // 2, n - 1}}
    assert len(vals) == 1, "collinear count is not constant across points"
    return vals.pop()


def _raw_counts(space, members):
    F = space.field
    if F.f == 1:
        return _perp_counts_np(space, members)
    form = space.form
    counts = np.zeros(space.num_points, dtype=np.int64)
    mvecs = [space.points[i] for i in members]
    for i, pt in enumerate(space.points):
        counts[i] = sum(1 for w in mvecs if form.evaluate_pair(pt, w) == 0)
    return counts


_ROW_BLOCK = 2048
_COL_BLOCK = 32768
_F32_SAFE = 2 ** 24


def _perp_counts_np(space, members):
    """Zero-counts of B(P, Q) over Q in the member list, for all P.  Blocked
    matmuls; the accumulated dot products are small integers, exactly
    representable in float32 at desk scale, so the zero test is exact."""
    p = space.field.p
    d = space.d
    pts = space.points_np
    B = np.array(space.form.bilinear_gram, dtype=np.int64)
    G = (B @ pts[members].T % p)
    dtype = np.float32 if d * (p - 1) ** 2 < _F32_SAFE else np.float64
    Gf = np.ascontiguousarray(G, dtype=dtype)
    ptsf = np.ascontiguousarray(pts, dtype=dtype)
    n, m = len(pts), G.shape[1]
    counts = np.zeros(n, dtype=np.int64)
    pinv = dtype(1.0) / dtype(p)
    for r0 in range(0, n, _ROW_BLOCK):
        A = ptsf[r0:r0 + _ROW_BLOCK]
        acc = np.zeros(len(A), dtype=np.int64)
        for c0 in range(0, m, _COL_BLOCK):
            S = A @ Gf[:, c0:c0 + _COL_BLOCK]
            T = np.rint(S * pinv)
            T *= p
            acc += np.count_nonzero(S == T, axis=1)
        counts[r0:r0 + len(A)] = acc
    return counts


# -- feasibility -----------------------------------------------------------


@dataclass(frozen=True)
class FeasibilityQuery:
    kind: object
    d: int
    q: int
    group_order: int

    @property
    def epsilon(self):
        return pl.epsilon_of(self.kind)


@dataclass(frozen=True)
class FeasibilityReport:
    dim_bound: float
    dim_ok: bool
    divisibility_ok: bool
    witness_i: object = None


def feasibility(query):
    """The two necessary conditions for a two-orbit group of order |H0|:

    dim(V) < 1 + epsilon + log_q(2|H0|), and some split of the trivial tight
    parameter theta_r into i + (theta_r - i) whose orbit sizes have an lcm
    dividing |H0| (orbit sizes divide the group order)."""
    if query.group_order < 1:
        raise ValueError("group order must be positive")
    q, d = query.q, query.d
    bound = float(1 + query.epsilon) + math.log(2 * query.group_order, q)
    r = pl.rank_of(query.kind, d)
    th = pl.theta(query.kind, d, q, r)
    u = (q ** r - 1) // (q - 1)
    witness = None
    for i in range(1, th):
        a, b = i * u, (th - i) * u
        if query.group_order % math.lcm(a, b) == 0:
            witness = i
            break
    return FeasibilityReport(dim_bound=bound, dim_ok=d < bound,
                             divisibility_ok=witness is not None,
                             witness_i=witness)


# -- Zsigmondy -------------------------------------------------------------


_ZS_BUDGET = 2 ** 63


def zsigmondy(n, k):
    """Smallest primitive prime divisor of n^k - 1, or None.

    Computed from the cyclotomic value Phi_k(n) with the intrinsic prime
    (the one dividing k) stripped out; what survives is exactly the product
    of primitive primes, so the exceptional pairs — k = 2 with n + 1 a power
    of two, and (n, k) = (2, 6) — fall out with no special-casing.
    """
    if n <= 1 or k < 1:
        raise ValueError("need n > 1 and k >= 1")
    if n ** k >= _ZS_BUDGET:
        raise ValueError("n^k exceeds the 63-bit budget")
    phi = _cyclotomic_value(n, k)
    for p in _prime_factors(k):
        while phi % p == 0:
            phi //= p
    if phi == 1:
        return None
    return _smallest_prime_factor(phi)


def _cyclotomic_value(n, k):
    num = den = 1
    for d in _divisors(k):
        mu = _mobius(k // d)
        if mu == 1:
            num *= n ** d - 1
        elif mu == -1:
            den *= n ** d - 1
    assert num % den == 0
    return num // den


def _divisors(k):
    out = [d for d in range(1, k + 1) if k % d == 0]
    return out


def _prime_factors(k):
    out = []
    d = 2
    while d * d <= k:
        if k % d == 0:
            out.append(d)
            while k % d == 0:
                k //= d
        d += 1
    if k > 1:
        out.append(k)
    return out


def _mobius(k):
    fs = _prime_factors(k)
    m = k
    for p in fs:
        if m % (p * p) == 0:
            return 0
        m //= p
    return -1 if len(fs) % 2 else 1


def _is_prime(n):
    """Deterministic Miller-Rabin for n < 2^64."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n):
    if n % 2 == 0:
        return 2
    import random
    rng = random.Random(0xC0FFEE ^ n)
    while True:
        c = rng.randrange(1, n)
        x = y = rng.randrange(2, n)
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d


def _smallest_prime_factor(n):
    """Smallest prime factor via trial division then recursive rho splitting."""
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47):
        if n % p == 0:
            return p
    if _is_prime(n):
        return n
    d = _pollard_rho(n)
    a = _smallest_prime_factor(d)
    b = _smallest_prime_factor(n // d)
    return min(a, b)
