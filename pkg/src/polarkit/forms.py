"""Nondegenerate reflexive/quadratic forms in their standard coordinate models.

Five kinds: symplectic, hyperbolic/elliptic/parabolic quadratic, Hermitian.
Quadratic forms are stored as upper-triangular coefficient matrices (the Gram
of the polarized bilinear form does not determine Q in characteristic 2), the
other two as Gram matrices.  The parabolic kind is restricted to odd q; in
even characteristic an odd-dimensional quadratic space degenerates to a
symplectic one and is not modelled here.
"""

import enum
from dataclasses import dataclass

from . import _linalg as la
from . import gf


class FormKind(enum.Enum):
    SYMPLECTIC = "W"
    PLUS = "Q+"
    MINUS = "Q-"
    PARABOLIC = "Q"
    HERMITIAN = "H"

    @property
    def is_quadratic(self):
        return self in (FormKind.PLUS, FormKind.MINUS, FormKind.PARABOLIC)

    @property
    def is_orthogonal(self):
        return self.is_quadratic


_KIND_ALIASES = {
    "w": FormKind.SYMPLECTIC, "sp": FormKind.SYMPLECTIC, "symplectic": FormKind.SYMPLECTIC,
    "q+": FormKind.PLUS, "plus": FormKind.PLUS, "hyperbolic": FormKind.PLUS,
    "q-": FormKind.MINUS, "minus": FormKind.MINUS, "elliptic": FormKind.MINUS,
    "q": FormKind.PARABOLIC, "parabolic": FormKind.PARABOLIC,
    "h": FormKind.HERMITIAN, "u": FormKind.HERMITIAN, "hermitian": FormKind.HERMITIAN,
}


def parse_kind(s):
    if isinstance(s, FormKind):
        return s
    try:
        return _KIND_ALIASES[s.strip().lower()]
    except KeyError:
        raise ValueError(f"unknown form kind {s!r}") from None


_SIGN_SCAN_CAP = 2_000_000


class Form:
    """A nondegenerate form on GF(q)^d.

    ``data`` is the upper-triangular coefficient matrix for quadratic kinds
    (Q(v) = v C v^T) and the Gram matrix otherwise.  Construction validates
    shape, nondegeneracy _and_ that the computed type matches the declared
    kind, so a Form that exists is a certificate.
    """

    def __init__(self, kind, field, data):
        kind = parse_kind(kind)
        data = tuple(tuple(row) for row in data)
        d = len(data)
        if any(len(row) != d for row in data):
            raise ValueError("form matrix must be square")
        self.kind = kind
        self.field = field
        self.dim = d
        self.data = data
        self.sigma = field.f // 2 if kind is FormKind.HERMITIAN else 0
        self._validate()
        if kind.is_quadratic:
            C = data
            self.bilinear_gram = tuple(
                tuple(field.add(C[i][j], C[j][i]) for j in range(d)) for i in range(d))
        else:
            self.bilinear_gram = data

    # -- validation --------------------------------------------------------

    def _validate(self):
        F, d, K, M = self.field, self.dim, self.kind, self.data
        if K is FormKind.SYMPLECTIC:
            if d % 2:
                raise ValueError("symplectic forms need even dimension")
            if any(M[i][i] != 0 for i in range(d)):
                raise ValueError("symplectic Gram must have zero diagonal")
            if any(M[i][j] != F.neg(M[j][i]) for i in range(d) for j in range(d)):
                raise ValueError("symplectic Gram must be alternating")
            if la.det(F, M) == 0:
                raise ValueError("degenerate symplectic form")
        elif K is FormKind.HERMITIAN:
            if F.f % 2:
                raise ValueError("Hermitian forms need a square field")
            s = F.f // 2
            if any(M[i][j] != F.frobenius(M[j][i], s) for i in range(d) for j in range(d)):
                raise ValueError("Hermitian Gram must be conjugate-symmetric")
            if la.det(F, M) == 0:
                raise ValueError("degenerate Hermitian form")
        else:
            if any(M[i][j] != 0 for i in range(d) for j in range(i)):
                raise ValueError("quadratic forms are stored upper-triangular")
            if K is FormKind.PARABOLIC:
                if d % 2 == 0:
                    raise ValueError("parabolic quadratic forms need odd dimension")
                if F.p == 2:
                    raise ValueError("parabolic quadratic spaces are only supported for odd q")
            elif d % 2:
                raise ValueError(f"{K.name} quadratic forms need even dimension")
            B = tuple(tuple(F.add(M[i][j], M[j][i]) for j in range(d)) for i in range(d))
            if la.det(F, B) == 0:
                raise ValueError("degenerate quadratic form (polarized radical nonzero)")
            if d % 2 == 0:
                sign = _quadratic_sign(F, M, B)
                want = FormKind.PLUS if K is FormKind.PLUS else FormKind.MINUS
                if sign is not want:
                    raise ValueError(f"declared {K.name} but computed type is {sign.name}")

    # -- evaluation --------------------------------------------------------

    def evaluate(self, v):
        """Q(v) for quadratic kinds, kappa(v, v) otherwise."""
        F = self.field
        if len(v) != self.dim:
            raise ValueError("dimension mismatch")
        if self.kind.is_quadratic:
            acc = 0
            C = self.data
            for i, x in enumerate(v):
                if x:
                    row = C[i]
                    acc = F.add(acc, F.mul(x, F.mul(x, row[i])))
                    for j in range(i + 1, self.dim):
                        y = v[j]
                        if y and row[j]:
                            acc = F.add(acc, F.mul(row[j], F.mul(x, y)))
            return acc
        return self.evaluate_pair(v, v)

    def evaluate_pair(self, u, v):
        """kappa(u, v); for quadratic kinds the polarized form B(u, v)."""
        F = self.field
        if len(u) != self.dim or len(v) != self.dim:
            raise ValueError("dimension mismatch")
        if self.kind is FormKind.HERMITIAN:
            s = self.sigma
            acc = 0
            G = self.data
            for i, x in enumerate(u):
                if x:
                    for j, y in enumerate(v):
                        if y and G[i][j]:
                            acc = F.add(acc, F.mul(F.mul(x, G[i][j]), F.frobenius(y, s)))
            return acc
        B = self.bilinear_gram
        acc = 0
        for i, x in enumerate(u):
            if x:
                row = B[i]
                for j, y in enumerate(v):
                    if y and row[j]:
                        acc = F.add(acc, F.mul(x, F.mul(row[j], y)))
        return acc

    def pair_functional(self, s):
        """Coefficients w with kappa(x, s) = sum_i x_i w_i (linear in x)."""
        F = self.field
        if self.kind is FormKind.HERMITIAN:
            sc = tuple(F.frobenius(y, self.sigma) for y in s)
            return tuple(la.dot(F, self.data[i], sc) for i in range(self.dim))
        return tuple(la.dot(F, self.bilinear_gram[i], s) for i in range(self.dim))

    def is_singular(self, v):
        return self.evaluate(v) == 0

    # -- misc --------------------------------------------------------------

    @property
    def q(self):
        return self.field.q

    def serialize(self):
        F = self.field
        return {
            "kind": self.kind.value,
            "q": F.q,
            "d": self.dim,
            "matrix": [[F.coeffs(x) for x in row] for row in self.data],
        }

    def __repr__(self):
        return f"Form({self.kind.value}, d={self.dim}, {self.field!r})"


def _quadratic_sign(F, C, B=None):
    """PLUS or MINUS for a nondegenerate even-dimensional quadratic form.

    Odd q: discriminant test on the polarized Gram ((-1)^k det B a square iff
    hyperbolic; the factor 2^d between B and the halved Gram is a square).
    Even q: count singular vectors — exact and basis-independent.
    """
    d = len(C)
    k = d // 2
    if F.p != 2:
        if B is None:
            B = tuple(tuple(F.add(C[i][j], C[j][i]) for j in range(d)) for i in range(d))
        disc = la.det(F, B)
        m1 = F.neg(1)
        ref = disc
        for _ in range(k):
            ref = F.mul(ref, m1)
        return FormKind.PLUS if F.is_square(ref) else FormKind.MINUS
    q = F.q
    if q ** d > _SIGN_SCAN_CAP:
        raise ValueError("even-characteristic sign determination too large")
    count = _count_singular(F, C)
    plus = (q ** (k - 1) + 1) * (q ** k - 1)
    minus = (q ** k + 1) * (q ** (k - 1) - 1)
    if count == plus:
        return FormKind.PLUS
    if count == minus:
        return FormKind.MINUS
    raise ValueError(f"singular-vector count {count} matches neither type")


def _count_singular(F, C):
    import itertools
    d = len(C)
    n = 0
    for v in itertools.product(F.elements(), repeat=d):
        if any(v):
            acc = 0
            for i, x in enumerate(v):
                if x:
                    row = C[i]
                    acc = F.add(acc, F.mul(x, F.mul(x, row[i])))
                    for j in range(i + 1, d):
                        if v[j] and row[j]:
                            acc = F.add(acc, F.mul(row[j], F.mul(x, v[j])))
            if acc == 0:
                n += 1
    return n


def standard_form(kind, d, field):
    """The fixed coordinate model for each (kind, d, q).

    Symplectic: kappa(e_i, e_{i+m}) = 1 (m = d/2).  Plus: Q = sum of products
    over coordinate pairs (2i, 2i+1).  Minus: hyperbolic pairs plus the norm
    form of GF(q^2)/GF(q) on the last two coordinates.  Parabolic: x_0^2 plus
    hyperbolic pairs.  Hermitian: identity Gram.
    """
    kind = parse_kind(kind)
    F = field
    if kind is FormKind.SYMPLECTIC:
        if d % 2:
            raise ValueError("symplectic dimension must be even")
        m = d // 2
        gram = [[0] * d for _ in range(d)]
        for i in range(m):
            gram[i][m + i] = 1
            gram[m + i][i] = F.neg(1)
        return Form(kind, F, gram)
    if kind is FormKind.HERMITIAN:
        return Form(kind, F, la.identity(F, d))
    C = [[0] * d for _ in range(d)]
    if kind is FormKind.PLUS:
        if d % 2:
            raise ValueError("hyperbolic dimension must be even")
        for i in range(d // 2):
            C[2 * i][2 * i + 1] = 1
    elif kind is FormKind.MINUS:
        if d % 2:
            raise ValueError("elliptic dimension must be even")
        for i in range(d // 2 - 1):
            C[2 * i][2 * i + 1] = 1
        s, n = _norm_form_coefficients(F)
        C[d - 2][d - 2] = 1
        C[d - 2][d - 1] = s
        C[d - 1][d - 1] = n
    elif kind is FormKind.PARABOLIC:
        if d % 2 == 0:
            raise ValueError("parabolic dimension must be odd")
        C[0][0] = 1
        for i in range((d - 1) // 2):
            C[2 * i + 1][2 * i + 2] = 1
    return Form(kind, F, C)


def _norm_form_coefficients(F):
    """(s, n) with x^2 + s x y + n y^2 the GF(q^2)/GF(q) norm form, anisotropic."""
    big = gf.field(F.p, 2 * F.f)
    emb = gf.embedding(F, big)
    w = big.generator
    return emb.trace(w), emb.norm(w)


def diagonal_form(field, entries):
    """Q = sum a_i x_i^2 (odd q), classified to the correct quadratic kind."""
    if field.p == 2:
        raise ValueError("diagonal quadratic forms need odd characteristic")
    d = len(entries)
    C = [[0] * d for _ in range(d)]
    for i, a in enumerate(entries):
        C[i][i] = a
    if d % 2:
        kind = FormKind.PARABOLIC
    else:
        kind = _quadratic_sign(field, tuple(tuple(r) for r in C))
    return Form(kind, field, C)


def quadratic_form(field, upper):
    """Build a quadratic Form from an upper-triangular matrix, computing its kind."""
    d = len(upper)
    if d % 2:
        kind = FormKind.PARABOLIC
    else:
        kind = _quadratic_sign(field, tuple(tuple(r) for r in upper))
    return Form(kind, field, upper)


class Subspace:
    """A subspace of GF(q)^d in canonical reduced-row-echelon coordinates."""

    __slots__ = ("field", "ambient", "rows", "dim")

    def __init__(self, field, ambient, rows):
        R, _ = la.rref(field, [tuple(r) for r in rows])
        if any(len(r) != ambient for r in R):
            raise ValueError("row length does not match ambient dimension")
        self.field = field
        self.ambient = ambient
        self.rows = R
        self.dim = len(R)

    @classmethod
    def span(cls, field, vectors, ambient=None):
        vectors = [tuple(v) for v in vectors]
        if ambient is None:
            if not vectors:
                raise ValueError("ambient dimension required for the zero subspace")
            ambient = len(vectors[0])
        return cls(field, ambient, vectors)

    @classmethod
    def zero(cls, field, ambient):
        return cls(field, ambient, [])

    def contains(self, v):
        return la.in_rowspace(self.field, self.rows, v)

    def contains_subspace(self, other):
        return all(self.contains(r) for r in other.rows)

    def vectors(self):
        """All nonzero vectors (small subspaces only)."""
        import itertools
        F = self.field
        for cs in itertools.product(F.elements(), repeat=self.dim):
            if any(cs):
                v = (0,) * self.ambient
                for c, row in zip(cs, self.rows):
                    if c:
                        v = la.add_vec(F, v, la.scale(F, c, row))
                yield v

    def __eq__(self, other):
        return (isinstance(other, Subspace) and self.field is other.field
                and self.ambient == other.ambient and self.rows == other.rows)

    def __hash__(self):
        return hash((id(self.field), self.ambient, self.rows))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient})"


def perp(form, S):
    """The polar subspace {x : kappa(x, s) = 0 for all s in S}."""
    if S.dim == 0:
        return Subspace(form.field, form.dim, la.identity(form.field, form.dim))
    functionals = [form.pair_functional(s) for s in S.rows]
    basis = la.nullspace(form.field, functionals, ncols=form.dim)
    return Subspace(form.field, form.dim, basis)


@dataclass(frozen=True)
class RestrictionReport:
    kind: object          # FormKind of the restriction, or None if degenerate/TS
    dim: int
    rank: object          # Witt index of the restriction (None when degenerate)
    radical_dim: int
    totally_singular: bool

    @property
    def nondegenerate(self):
        return self.radical_dim == 0


def classify_restriction(form, S):
    """Type of the form restricted to S: nondegenerate kind / totally singular /
    degenerate with its (singular) radical dimension.

    Sign of even-dimensional quadratic restrictions: discriminant for odd q,
    singular-vector count for even q (restrictions here have dim <= 8).
    """
    F = form.field
    k = S.dim
    if k == 0:
        return RestrictionReport(None, 0, 0, 0, True)
    rows = S.rows
    if form.kind.is_quadratic:
        C = tuple(tuple(form.evaluate(rows[i]) if i == j
                        else (form.evaluate_pair(rows[i], rows[j]) if i < j else 0)
                        for j in range(k)) for i in range(k))
        B = tuple(tuple(F.add(C[i][j], C[j][i]) for j in range(k)) for i in range(k))
        ts = all(C[i][j] == 0 for i in range(k) for j in range(k))
        if ts:
            return RestrictionReport(None, k, k, k, True)
        rad = la.nullspace(F, B, ncols=k)
        rad_dim = len(rad)
        if F.p == 2 and rad_dim:
            # singular radical: kernel of the semilinear functional Q on rad(B)
            qvals = [_eval_upper(F, C, r) for r in rad]
            if any(qvals):
                rad_dim -= 1
        if rad_dim > 0:
            return RestrictionReport(None, k, None, rad_dim, False)
        if k % 2:
            return RestrictionReport(FormKind.PARABOLIC, k, k // 2, 0, False)
        sign = _quadratic_sign(F, C, B if F.p != 2 else None)
        witt = k // 2 if sign is FormKind.PLUS else k // 2 - 1
        return RestrictionReport(sign, k, witt, 0, False)
    gram = tuple(tuple(form.evaluate_pair(rows[i], rows[j]) for j in range(k))
                 for i in range(k))
    ts = all(x == 0 for row in gram for x in row)
    if ts:
        return RestrictionReport(None, k, k, k, True)
    rad_dim = k - la.rank(F, gram)
    if rad_dim:
        return RestrictionReport(None, k, None, rad_dim, False)
    if form.kind is FormKind.SYMPLECTIC:
        return RestrictionReport(FormKind.SYMPLECTIC, k, k // 2, 0, False)
    return RestrictionReport(FormKind.HERMITIAN, k, k // 2, 0, False)


def _eval_upper(F, C, v):
    acc = 0
    k = len(v)
    for i, x in enumerate(v):
        if x:
            acc = F.add(acc, F.mul(x, F.mul(x, C[i][i])))
            for j in range(i + 1, k):
                if v[j] and C[i][j]:
                    acc = F.add(acc, F.mul(C[i][j], F.mul(x, v[j])))
    return acc
