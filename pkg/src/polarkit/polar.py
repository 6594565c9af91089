"""Finite classical polar spaces as explicit, indexed point lists.

A PolarSpace materializes every singular/isotropic projective point of a
nondegenerate form in a canonical order (first nonzero coordinate 1, sorted
lexicographically), so downstream set machinery can work with dense integer
indices.  Rank is recomputed greedily and cross-checked against the expected
parameter table at construction time.
"""

from dataclasses import dataclass
from fractions import Fraction
import itertools
import math

import numpy as np

from . import _linalg as la
from . import forms as fm
from .forms import FormKind, Subspace

POINT_CAP = 2_000_000

#: exponent e with theta_j = q^(j-1+e) + 1, in units of sqrt(q) for Hermitian
#: (stored as (numerator over 2) so Hermitian half-integers stay exact)


def rank_of(kind, d):
    kind = fm.parse_kind(kind)
    if kind is FormKind.SYMPLECTIC or kind is FormKind.PLUS:
        if d % 2:
            raise ValueError("even dimension required")
        return d // 2
    if kind is FormKind.MINUS:
        if d % 2:
            raise ValueError("even dimension required")
        return d // 2 - 1
    if kind is FormKind.PARABOLIC:
        if d % 2 == 0:
            raise ValueError("odd dimension required")
        return (d - 1) // 2
    return d // 2  # Hermitian


def theta(kind, d, q, j):
    """theta_j for the rank-j space of the same kind (and dimension parity).

    theta_j = q^(j-1+e) + 1 with e = 1 (W), 0 (Q+), 1 (Q), 2 (Q-),
    1/2 (H, even d), 3/2 (H, odd d).  Exact integers throughout; Hermitian
    half-integer exponents use sqrt(q), which is an integer there.
    """
    kind = fm.parse_kind(kind)
    if j < 0:
        raise ValueError("negative rank")
    if kind is FormKind.HERMITIAN:
        q0 = math.isqrt(q)
        if q0 * q0 != q:
            raise ValueError("Hermitian spaces need square q")
        e2 = 1 if d % 2 == 0 else 3  # twice the exponent e
        return q0 ** (2 * (j - 1) + e2) + 1
    e = {FormKind.SYMPLECTIC: 1, FormKind.PLUS: 0,
         FormKind.PARABOLIC: 1, FormKind.MINUS: 2}[kind]
    return q ** (j - 1 + e) + 1


def epsilon_of(kind):
    """The 0 / 1/2 / 1 constant of the dimension bound, by form family."""
    kind = fm.parse_kind(kind)
    if kind is FormKind.SYMPLECTIC:
        return Fraction(0)
    if kind is FormKind.HERMITIAN:
        return Fraction(1, 2)
    return Fraction(1)


def expected_point_count(kind, d, q):
    r = rank_of(kind, d)
    return (q ** r - 1) // (q - 1) * theta(kind, d, q, r)


def space_name(kind, d, q):
    return f"{fm.parse_kind(kind).value}({d - 1},{q})"


class PolarSpace:
    """Immutable: form, rank, ovoid number, and the full canonical point list."""

    def __init__(self, form, points, ts_basis, _token=None):
        if _token is not _BUILD:
            raise TypeError("use polar.build(form)")
        self.form = form
        self.kind = form.kind
        self.field = form.field
        self.d = form.dim
        self.q = form.field.q
        self.points = points
        self.rank = len(ts_basis)
        self.ts_basis = ts_basis
        self.ovoid_number = theta(self.kind, self.d, self.q, self.rank)
        self.epsilon = epsilon_of(self.kind)
        self._index = None
        self._codes = None
        self._pts_np = None

    # -- dense lookups -----------------------------------------------------

    @property
    def index(self):
        if self._index is None:
            self._index = {p: i for i, p in enumerate(self.points)}
        return self._index

    def point_code(self, v):
        q = self.q
        c = 0
        for x in v:
            c = c * q + x
        return c

    @property
    def codes(self):
        """Sorted big-endian base-q codes of the points (numpy uint64)."""
        if self._codes is None:
            self._codes = np.array([self.point_code(p) for p in self.points],
                                   dtype=np.uint64)
        return self._codes

    @property
    def points_np(self):
        if self._pts_np is None:
            self._pts_np = np.array(self.points, dtype=np.int64)
        return self._pts_np

    def theta_j(self, j):
        return theta(self.kind, self.d, self.q, j)

    @property
    def num_points(self):
        return len(self.points)

    @property
    def name(self):
        return space_name(self.kind, self.d, self.q)

    def descriptor(self):
        return {"kind": self.kind.value, "d": self.d, "q": self.q}

    # -- geometry ----------------------------------------------------------

    def collinear(self, i, j):
        """Perpendicularity of points i and j (true on the diagonal)."""
        return self.form.evaluate_pair(self.points[i], self.points[j]) == 0

    def __repr__(self):
        return (f"PolarSpace({self.name}, rank={self.rank}, "
                f"theta={self.ovoid_number}, points={self.num_points})")


_BUILD = object()


def build(form, cap=POINT_CAP, allow_grid=False, force_method=None):
    """Enumerate the polar space of a nondegenerate form.

    The hyperbolic-quadric surface in projective 3-space (a grid, not a thick
    generalized quadrangle) degenerates most of the counting arguments here
    and is refused unless allow_grid is set (field reduction needs it as a
    source space).
    """
    kind, d, q = form.kind, form.dim, form.q
    if kind is FormKind.PLUS and d == 4 and not allow_grid:
        raise ValueError(f"{space_name(kind, d, q)} is a grid and is not supported")
    expected = expected_point_count(kind, d, q)
    if expected > cap:
        raise ValueError(f"space too large: {expected} points exceeds cap {cap}")
    if force_method is None:
        method = "scan" if d <= 10 else "solve"
    else:
        method = force_method
    if method == "scan":
        points = _enumerate_scan(form)
    elif method == "solve":
        points = _enumerate_solve(form)
    else:
        raise ValueError(f"unknown enumeration method {method!r}")
    if len(points) != expected:
        raise AssertionError(
            f"enumerated {len(points)} points, formula gives {expected}")
    ts = _greedy_ts_basis(form, points)
    r = rank_of(kind, d)
    if len(ts) != r:
        raise AssertionError(f"greedy rank {len(ts)} != expected rank {r}")
    return PolarSpace(form, points, ts, _token=_BUILD)


# -- enumeration ----------------------------------------------------------


def _enumerate_scan(form):
    """All canonical singular points by direct scan, in sorted order.

    Canonical = first nonzero coordinate 1; sorting key is the big-endian
    base-q digit code, which equals lexicographic order on coordinate tuples.
    Generating by ascending leading-zero count yields sorted output directly.
    """
    F, d = form.field, form.dim
    if F.f == 1:
        return _scan_prime(form)
    pts = []
    elems = F.elements()
    for lead in range(d - 1, -1, -1):
        for tail in itertools.product(elems, repeat=d - 1 - lead):
            v = (0,) * lead + (1,) + tail
            if form.evaluate(v) == 0:
                pts.append(v)
    return tuple(pts)


def _scan_prime(form):
    """Vectorized scan over prime fields; exact in float64/int64 arithmetic."""
    F, d, p = form.field, form.dim, form.field.p
    pts = []
    for lead in range(d - 1, -1, -1):
        ntail = d - 1 - lead
        n = p ** ntail
        block = np.zeros((n, d), dtype=np.int64)
        block[:, lead] = 1
        rem = np.arange(n, dtype=np.int64)
        for col in range(d - 1, lead, -1):
            rem, digit = np.divmod(rem, p)
            block[:, col] = digit
        vals = _eval_np(form, block)
        for row in block[vals == 0]:
            pts.append(tuple(int(x) for x in row))
    return tuple(pts)


def _eval_np(form, block):
    """Evaluate the form on each row (prime field).  Returns values mod p."""
    p = form.field.p
    if form.kind.is_quadratic:
        C = np.array(form.data, dtype=np.int64)
        return np.einsum("ij,jk,ik->i", block, C, block) % p
    B = np.array(form.bilinear_gram, dtype=np.int64)
    return np.einsum("ij,jk,ik->i", block, B, block) % p


def _enumerate_solve(form):
    """Enumerate by solving for the last coordinate; prime quadratic forms.

    For each of the q^(d-1) prefixes the form is a*x^2 + b*x + c in the last
    coordinate; the standard models keep a = 0 so each prefix contributes a
    unique, three, or zero solutions.  Output is normalized, deduplicated and
    sorted by code — identical to the scan (tested against it).
    """
    F, d, p = form.field, form.dim, form.field.p
    if not form.kind.is_quadratic or F.f != 1:
        return _enumerate_scan(form)
    C = np.array(form.data, dtype=np.int64)
    a = int(C[d - 1][d - 1])
    if a != 0:
        return _enumerate_scan(form)
    n = p ** (d - 1)
    prefix = np.zeros((n, d - 1), dtype=np.int64)
    rem = np.arange(n, dtype=np.int64)
    for col in range(d - 2, -1, -1):
        rem, digit = np.divmod(rem, p)
        prefix[:, col] = digit
    b = prefix @ C[: d - 1, d - 1] % p
    c = np.einsum("ij,jk,ik->i", prefix, C[: d - 1, : d - 1], prefix) % p
    inv = np.zeros(p, dtype=np.int64)
    for x in range(1, p):
        inv[x] = pow(x, -1, p)
    sols = []
    m = b != 0
    if m.any():
        x = (-c[m] * inv[b[m]]) % p
        sols.append(np.concatenate([prefix[m], x[:, None]], axis=1))
    m0 = (b == 0) & (c == 0)
    if m0.any():
        base = prefix[m0]
        for x in range(p):
            col = np.full((len(base), 1), x, dtype=np.int64)
            sols.append(np.concatenate([base, col], axis=1))
    vs = np.concatenate(sols, axis=0)
    vs = vs[np.any(vs != 0, axis=1)]
    # normalize: divide by the first nonzero coordinate
    first = vs[np.arange(len(vs)), np.argmax(vs != 0, axis=1)]
    vs = vs * inv[first][:, None] % p
    codes = np.zeros(len(vs), dtype=np.int64)
    for col in range(d):
        codes = codes * p + vs[:, col]
    codes = np.unique(codes)
    out = np.zeros((len(codes), d), dtype=np.int64)
    rem = codes.copy()
    for col in range(d - 1, -1, -1):
        rem, digit = np.divmod(rem, p)
        out[:, col] = digit
    return tuple(tuple(int(x) for x in row) for row in out)


# -- rank ------------------------------------------------------------------


def _greedy_ts_basis(form, points):
    """A maximal totally singular subspace, grown greedily through the point
    list.  Maximality is certified by exhausting all points; the resulting
    dimension is the rank (all maximal TS subspaces share it)."""
    F = form.field
    if F.f == 1 and len(points) > 5000:
        return _greedy_ts_np(form, points)
    basis = []
    rref_rows = []
    for pt in points:
        if any(form.evaluate_pair(pt, x) != 0 for x in basis):
            continue
        if la.in_rowspace(F, rref_rows, pt):
            continue
        basis.append(pt)
        rref_rows, _ = la.rref(F, basis)
    return tuple(basis)


def _greedy_ts_np(form, points):
    """Numpy variant: filter candidates by B-perpendicularity in bulk, and
    strike span members by code (the span is tiny: at most theta-many points)."""
    p = form.field.p
    d = form.dim
    pts = np.array(points, dtype=np.int64)
    codes = np.zeros(len(pts), dtype=np.int64)
    for col in range(d):
        codes = codes * p + pts[:, col]
    B = np.array(form.bilinear_gram, dtype=np.int64)
    basis = []
    alive = np.ones(len(pts), dtype=bool)
    while alive.any():
        i = int(np.argmax(alive))
        basis.append(tuple(int(x) for x in pts[i]))
        bb = np.array(basis, dtype=np.int64)
        alive &= (pts @ (B @ bb.T) % p == 0).all(axis=1)
        span_codes = set()
        for cs in itertools.product(range(p), repeat=len(basis)):
            if any(cs):
                w = np.array(cs, dtype=np.int64) @ bb % p
                first = int(w[np.argmax(w != 0)])
                w = w * pow(first, -1, p) % p
                code = 0
                for x in w:
                    code = code * p + int(x)
                span_codes.add(code)
        alive &= ~np.isin(codes, np.fromiter(span_codes, dtype=np.int64))
    return tuple(basis)


# -- point sets ------------------------------------------------------------


@dataclass(frozen=True)
class PointSet:
    """A subset of a polar space's points, as a sorted tuple of indices."""

    space: PolarSpace
    members: tuple

    def __post_init__(self):
        ms = tuple(sorted(set(self.members)))
        if ms != tuple(self.members):
            object.__setattr__(self, "members", ms)
        if ms and (ms[0] < 0 or ms[-1] >= self.space.num_points):
            raise ValueError("point index out of range")

    def __len__(self):
        return len(self.members)

    def __contains__(self, i):
        import bisect
        j = bisect.bisect_left(self.members, i)
        return j < len(self.members) and self.members[j] == i

    def complement(self):
        inside = set(self.members)
        return PointSet(self.space, tuple(i for i in range(self.space.num_points)
                                          if i not in inside))

    def vectors(self):
        return tuple(self.space.points[i] for i in self.members)

    def serialize(self):
        return {"space_descriptor": self.space.descriptor(),
                "indices": list(self.members)}

    def __repr__(self):
        return f"PointSet({self.space.name}, {len(self.members)} points)"


def full_set(space):
    return PointSet(space, tuple(range(space.num_points)))


def perp_residual(space, W):
    """The points of the space lying in W^perp (the whole space for W = 0)."""
    if W.ambient != space.d:
        raise ValueError("subspace ambient dimension mismatch")
    if W.dim == 0:
        return full_set(space)
    F = space.field
    if F.f == 1 and space.num_points > 2000:
        p = F.p
        pts = space.points_np
        funcs = np.array([space.form.pair_functional(s) for s in W.rows],
                         dtype=np.int64)
        ok = (pts @ funcs.T % p == 0).all(axis=1)
        return PointSet(space, tuple(int(i) for i in np.flatnonzero(ok)))
    members = []
    for i, pt in enumerate(space.points):
        if all(space.form.evaluate_pair(pt, s) == 0 for s in W.rows):
            members.append(i)
    return PointSet(space, tuple(members))


def maximal_ts_points(space):
    """The points of the standard (greedily built) maximal TS subspace."""
    F = space.field
    members = []
    sub = Subspace.span(F, space.ts_basis, ambient=space.d)
    for v in sub.vectors():
        first = next(x for x in v if x)
        if first != 1:
            v = tuple(F.div(x, first) for x in v)
        members.append(space.index[v])
    return PointSet(space, tuple(sorted(set(members))))


def nonsingular_point_with_residual(space, sign):
    """First canonical nonsingular projective point whose perp meets the form
    in a nondegenerate restriction of the given kind (e.g. MINUS for an
    elliptic residual).  Deterministic; used by the constructive examples."""
    sign = fm.parse_kind(sign)
    F, d = space.field, space.d
    for lead in range(d - 1, -1, -1):
        for tail in itertools.product(F.elements(), repeat=d - 1 - lead):
            v = (0,) * lead + (1,) + tail
            if space.form.evaluate(v) == 0:
                continue
            S = Subspace.span(F, [v])
            rep = fm.classify_restriction(space.form, fm.perp(space.form, S))
            if rep.kind is sign and rep.nondegenerate:
                return S
    raise ValueError(f"no nonsingular point with {sign.name} residual")


def first_subspace_of_type(space, dim, sign, anisotropic=False):
    """First dim-subspace (in the canonical projective-vector order) whose
    restriction is nondegenerate of the given kind; with anisotropic=True it
    must also contain no singular point (e.g. an elliptic line of Q^-(5,2)).
    Scans combinations, so only meant for dim <= 3 at desk scale."""
    sign = fm.parse_kind(sign)
    F, d = space.field, space.d
    vecs = []
    for lead in range(d - 1, -1, -1):
        for tail in itertools.product(F.elements(), repeat=d - 1 - lead):
            vecs.append((0,) * lead + (1,) + tail)
    if dim > 3:
        raise ValueError("subspace scan is limited to dim <= 3")
    for combo in itertools.combinations(vecs, dim):
        S = Subspace.span(F, list(combo))
        if S.dim != dim:
            continue
        rep = fm.classify_restriction(space.form, S)
        if rep.kind is not sign or not rep.nondegenerate:
            continue
        if anisotropic and any(
                space.form.evaluate(v) == 0 for v in S.vectors() if any(v)):
            continue
        return S
    raise ValueError(f"no {sign.name} subspace of dimension {dim} found")
