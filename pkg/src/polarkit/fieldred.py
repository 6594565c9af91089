"""Field reduction: regard a GF(q^b)-space with a form as a GF(q)-space with
the traced form, build the blow-up point set M1, and translate point sets
between the two polar spaces.

Supported reductions (row numbers follow the construction table used
throughout; rows not listed are out of scope here):

  1   W  (d/b-1, q^b) -> W  (d-1, q)    d/b even
  2   Q+ (d/b-1, q^b) -> Q+ (d-1, q)    d/b even
  3   Q- (d/b-1, q^b) -> Q- (d-1, q)    d/b even
  9   H  (d/b-1, q^b) -> Q- (d-1, q)    b even, d/b odd
  10  H  (d/b-1, q^b) -> Q+ (d-1, q)    b even, d/b even

Rows 1-3 trace the form value (kappa = Tr_{q^b/q} of alpha*kappa'; alpha = 1
here); rows 9-10 take the Hermitian length kappa'(v,v) — which lies in
GF(q^{b/2}) — through the half trace Tr_{q^{b/2}/q}, with the polarized
bilinear values going through the full trace.
"""

from dataclasses import dataclass

from . import _linalg as la
from . import forms as fm
from . import gf
from . import polar as pl
from .forms import FormKind
from .polar import PointSet

_ROWS = {
    1: (FormKind.SYMPLECTIC, FormKind.SYMPLECTIC),
    2: (FormKind.PLUS, FormKind.PLUS),
    3: (FormKind.MINUS, FormKind.MINUS),
    9: (FormKind.HERMITIAN, FormKind.MINUS),
    10: (FormKind.HERMITIAN, FormKind.PLUS),
}

# (large kind, small kind) per supported recipe row, for callers
ROW_KINDS = dict(_ROWS)


def table_point_counts(row, q, b, d):
    """(|P'|, |P|) from the reduction table's closed formulas; d = dim over GF(q)."""
    if row == 1:
        return (q ** d - 1) // (q ** b - 1), (q ** d - 1) // (q - 1)
    h = d // 2
    if row == 2:
        return ((q ** (h - b) + 1) * (q ** h - 1) // (q ** b - 1),
                (q ** (h - 1) + 1) * (q ** h - 1) // (q - 1))
    if row == 3:
        return ((q ** h + 1) * (q ** (h - b) - 1) // (q ** b - 1),
                (q ** h + 1) * (q ** (h - 1) - 1) // (q - 1))
    if row == 9:
        return ((q ** h + 1) * (q ** ((d - b) // 2) - 1) // (q ** b - 1),
                (q ** h + 1) * (q ** (h - 1) - 1) // (q - 1))
    if row == 10:
        return ((q ** ((d - b) // 2) + 1) * (q ** h - 1) // (q ** b - 1),
                (q ** (h - 1) + 1) * (q ** h - 1) // (q - 1))
    raise ValueError(f"row {row} is not supported")


class _Flattener:
    """Coordinate transport GF(q^b)^m <-> GF(q)^(mb) over the polynomial-power
    basis {1, G, ..., G^(b-1)} of the large field (G its generator)."""

    def __init__(self, emb, m):
        L, S = emb.large, emb.small
        self.emb = emb
        self.m = m
        self.b = emb.b
        e = S.f
        Fp = gf.field(L.p)
        rows = []
        for j in range(self.b):
            gj = L.pow(L.generator, j)
            for t in range(e):
                # small basis element with p-digit vector e_t is the code p^t
                w = L.mul(emb.up(S.p ** t), gj)
                rows.append(tuple(L.coeffs(w)))
        self._to_digits = tuple(rows)
        self._from_digits = la.mat_inv(Fp, rows)
        self._Fp = Fp
        self._e = e

    def split(self, y):
        """One large-field element -> b small-field elements."""
        L, S = self.emb.large, self.emb.small
        digits = L.coeffs(y)
        digits = tuple(digits) + (0,) * (L.f - len(digits))
        coeffs = la.vec_mat(self._Fp, digits, self._from_digits)
        e = self._e
        out = []
        for j in range(self.b):
            code = 0
            for t in reversed(range(e)):
                code = code * S.p + coeffs[j * e + t]
            out.append(code)
        return tuple(out)

    def join(self, cs):
        """b small-field elements -> one large-field element."""
        L = self.emb.large
        acc = 0
        for j, c in enumerate(cs):
            if c:
                acc = L.add(acc, L.mul(self.emb.up(c), L.pow(L.generator, j)))
        return acc

    def flatten(self, vlarge):
        out = []
        for y in vlarge:
            out.extend(self.split(y))
        return tuple(out)

    def unflatten(self, vsmall):
        b = self.b
        return tuple(self.join(vsmall[i * b:(i + 1) * b]) for i in range(self.m))


@dataclass(frozen=True, eq=False)
class FieldReduction:
    row: int
    b: int
    alpha: int
    small_space: object
    large_space: object
    flattener: object

    @property
    def small_field(self):
        return self.small_space.field

    @property
    def large_field(self):
        return self.large_space.field

    def serialize(self):
        return {"row": self.row, "q": self.small_field.q, "b": self.b,
                "d": self.small_space.d,
                "alpha": self.large_field.coeffs(self.alpha)}


def reduce(row, large_form, small_field, alpha=None):
    """Build the FieldReduction of `large_form` (over GF(q^b)) down to
    `small_field` = GF(q).  Checks the row's applicability conditions, builds
    the traced small form, and verifies both point counts against the
    table formulas.

    `alpha` scales the large form before tracing (default 1).  All choices
    give isomorphic small spaces, but the embedded point graph on the common
    PG(d-1, q) genuinely depends on alpha, so subsets flattened from the
    large space can classify differently under different alphas."""
    if row not in _ROWS:
        raise ValueError(f"row {row} is not supported (have {sorted(_ROWS)})")
    src_kind, dst_kind = _ROWS[row]
    L = large_form.field
    S = small_field
    emb = gf.embedding(S, L)  # raises on incompatibility
    b = emb.b
    m = large_form.dim
    d = m * b
    q = S.q
    if b < 2:
        raise ValueError("field reduction needs a proper subfield (b >= 2)")
    if large_form.kind is not src_kind:
        raise ValueError(f"row {row} starts from a {src_kind.value} form, "
                         f"got {large_form.kind.value}")
    if row in (1, 2, 3) and m % 2:
        raise ValueError(f"row {row} needs even dimension over the large field")
    if row in (9, 10):
        if b % 2:
            raise ValueError(f"row {row} needs even b")
        if row == 9 and m % 2 == 0:
            raise ValueError("row 9 needs odd dimension over the large field")
        if row == 10 and m % 2:
            raise ValueError("row 10 needs even dimension over the large field")
    if alpha is None:
        alpha = 1
    if alpha == 0:
        raise ValueError("alpha must be a unit of the large field")
    n_large, n_small = table_point_counts(row, q, b, d)
    if n_small > pl.POINT_CAP:
        raise ValueError(f"space too large: {n_small} points")
    fl = _Flattener(emb, m)
    basis = []
    for i in range(m):
        for j in range(b):
            v = [0] * m
            v[i] = L.pow(L.generator, j)
            basis.append(tuple(v))
    small_form = _traced_form(row, large_form, emb, basis, dst_kind, alpha)
    large_space = pl.build(large_form, allow_grid=True)
    small_space = pl.build(small_form)
    if large_space.num_points != n_large:
        raise AssertionError(f"large point count {large_space.num_points} != "
                             f"table value {n_large}")
    if small_space.num_points != n_small:
        raise AssertionError(f"small point count {small_space.num_points} != "
                             f"table value {n_small}")
    return FieldReduction(row=row, b=b, alpha=alpha, small_space=small_space,
                          large_space=large_space, flattener=fl)


def _traced_form(row, large_form, emb, basis, dst_kind, alpha):
    L, S = emb.large, emb.small
    d = len(basis)
    if row == 1:
        gram = [[emb.trace(L.mul(alpha, large_form.evaluate_pair(basis[u],
                                                                 basis[v])))
                 for v in range(d)] for u in range(d)]
        return fm.Form(FormKind.SYMPLECTIC, S, gram)
    C = [[0] * d for _ in range(d)]
    if row in (2, 3):
        for u in range(d):
            C[u][u] = emb.trace(L.mul(alpha, large_form.evaluate(basis[u])))
            for v in range(u + 1, d):
                C[u][v] = emb.trace(L.mul(alpha,
                    large_form.evaluate_pair(basis[u], basis[v])))
    else:  # rows 9, 10: Hermitian lengths through the half trace
        mid = gf.field(L.p, L.f // 2)
        mid_in_large = gf.embedding(mid, L)
        small_in_mid = gf.embedding(S, mid)
        # alpha*kappa' stays Hermitian only for alpha fixed by the involution,
        # i.e. alpha in the index-2 midfield; .down raises otherwise.
        alpha_mid = mid_in_large.down(alpha)
        for u in range(d):
            val = large_form.evaluate(basis[u])   # kappa'(v,v), in GF(q^(b/2))
            C[u][u] = small_in_mid.trace(mid.mul(alpha_mid,
                                                 mid_in_large.down(val)))
            for v in range(u + 1, d):
                C[u][v] = emb.trace(L.mul(alpha,
                    large_form.evaluate_pair(basis[u], basis[v])))
    form = fm.quadratic_form(S, C)
    if form.kind is not dst_kind:
        raise AssertionError(f"traced form has type {form.kind.value}, "
                             f"row {row} expects {dst_kind.value}")
    return form


def _small_point(fr, vlarge):
    """Canonical small-space point under a large vector."""
    S = fr.small_field
    v = fr.flattener.flatten(vlarge)
    first = next(x for x in v if x)
    if first != 1:
        inv = S.inv(first)
        v = tuple(S.mul(inv, x) for x in v)
    return v


def blow_up(fr):
    """M1: every GF(q)-point lying on a GF(q^b)-singular point."""
    L = fr.large_field
    members = set()
    for w in fr.large_space.points:
        for eta in L.units():
            vw = tuple(L.mul(eta, x) for x in w)
            members.add(fr.small_space.index[_small_point(fr, vw)])
    return PointSet(fr.small_space, tuple(sorted(members)))


def push_down(fr, large_set):
    """The GF(q)-points lying on the given GF(q^b)-points."""
    if large_set.space is not fr.large_space:
        raise ValueError("point set does not live in the large space")
    L = fr.large_field
    members = set()
    for i in large_set.members:
        w = fr.large_space.points[i]
        for eta in L.units():
            vw = tuple(L.mul(eta, x) for x in w)
            members.add(fr.small_space.index[_small_point(fr, vw)])
    return PointSet(fr.small_space, tuple(sorted(members)))


def lift_up(fr, small_set):
    """The GF(q^b)-points spanned by the given GF(q)-points.

    Meaningful only when the set is a union of full GF(q^b)-scalar classes;
    this is checked, and a violation reports a witnessing pair of small
    points (one inside the set, one outside, on the same large point).
    """
    if small_set.space is not fr.small_space:
        raise ValueError("point set does not live in the small space")
    L = fr.large_field
    inside = set(small_set.members)
    out = set()
    for i in small_set.members:
        v = fr.small_space.points[i]
        w = fr.flattener.unflatten(v)
        first = next(x for x in w if x)
        winv = L.inv(first)
        w = tuple(L.mul(winv, x) for x in w)
        j = fr.large_space.index.get(w)
        if j is None:
            raise ValueError(
                f"small point {i} lies on a non-singular GF({L.q})-point "
                "and cannot be lifted")
        if j in out:
            continue
        for eta in L.units():
            vw = tuple(L.mul(eta, x) for x in w)
            k = fr.small_space.index[_small_point(fr, vw)]
            if k not in inside:
                raise ValueError(
                    f"set is not closed under GF({L.q}) scalars: small points "
                    f"{i} (in) and {k} (out) lie on large point {j}")
        out.add(j)
    return PointSet(fr.large_space, tuple(sorted(out)))
