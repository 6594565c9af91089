"""Semisimilarities, generator sets for the classical groups used in the
examples, and the orbit engine on polar-space points.

Actions are on row vectors: v.g = (v^sigma) M, with the field automorphism
applied entrywise first.  Composition is left-to-right, (A,s)(B,t) = (A^t B,
s+t), so v.(gh) = (v.g).h.
"""

import json
from dataclasses import dataclass, field as dc_field

import numpy as np

from . import _linalg as la
from . import gf
from . import polar as pl
from .forms import FormKind
from .polar import PointSet

VECTOR_CAP = 2_000_000


class Semisimilarity:
    """An invertible semilinear map recorded as (matrix, sigma_power).

    The multiplier is not stored by callers; it is recovered from a nonzero
    form value during validation, which leaves fewer ways to supply
    inconsistent data.
    """

    __slots__ = ("field", "matrix", "sigma_power")

    def __init__(self, field, matrix, sigma_power=0):
        matrix = tuple(tuple(row) for row in matrix)
        d = len(matrix)
        if any(len(r) != d for r in matrix):
            raise ValueError("matrix must be square")
        self.field = field
        self.matrix = matrix
        self.sigma_power = sigma_power % field.f
        la.mat_inv(field, matrix)  # raises if singular

    @property
    def dim(self):
        return len(self.matrix)

    def apply(self, v):
        F = self.field
        if self.sigma_power:
            v = tuple(F.frobenius(x, self.sigma_power) for x in v)
        return la.vec_mat(F, v, self.matrix)

    def __mul__(self, other):
        F = self.field
        if F is not other.field:
            raise ValueError("mismatched fields")
        A = (la.mat_frobenius(F, self.matrix, other.sigma_power)
             if other.sigma_power else self.matrix)
        return Semisimilarity(F, la.mat_mul(F, A, other.matrix),
                              self.sigma_power + other.sigma_power)

    def inverse(self):
        F = self.field
        k = (-self.sigma_power) % F.f
        Ainv = la.mat_inv(F, self.matrix)
        if k:
            Ainv = la.mat_frobenius(F, Ainv, k)
        return Semisimilarity(F, Ainv, k)

    def is_linear(self):
        return self.sigma_power == 0

    def serialize(self):
        F = self.field
        return {"matrix": [[F.coeffs(x) for x in row] for row in self.matrix],
                "sigma_power": self.sigma_power}

    def __eq__(self, other):
        return (isinstance(other, Semisimilarity) and self.field is other.field
                and self.matrix == other.matrix
                and self.sigma_power == other.sigma_power)

    def __hash__(self):
        return hash((id(self.field), self.matrix, self.sigma_power))

    def __repr__(self):
        return f"Semisimilarity(d={self.dim}, sigma={self.sigma_power})"


def multiplier(form, g):
    """The multiplier lambda of g for the form, or ValueError if g is not a
    semisimilarity.  Checks every basis pair (and basis Q-values for
    quadratic forms), which pins the identity on the whole space."""
    F = form.field
    d = form.dim
    if g.dim != d or g.field is not F:
        raise ValueError("dimension or field mismatch")
    basis = [tuple(1 if j == i else 0 for j in range(d)) for i in range(d)]
    images = [g.apply(b) for b in basis]
    s = g.sigma_power
    lam = None
    pairs = []
    for i in range(d):
        for j in range(d):
            val = form.evaluate_pair(basis[i], basis[j])
            got = form.evaluate_pair(images[i], images[j])
            pairs.append((val, got))
    if form.kind.is_quadratic:
        for i in range(d):
            pairs.append((form.evaluate(basis[i]), form.evaluate(images[i])))
    for val, got in pairs:
        if val == 0:
            if got != 0:
                raise ValueError("form invariance fails (zero value moved)")
        elif lam is None:
            lam = F.div(got, F.frobenius(val, s))
    if lam is None or lam == 0:
        raise ValueError("could not recover a multiplier")
    for val, got in pairs:
        if val != 0 and got != F.mul(lam, F.frobenius(val, s)):
            raise ValueError("form invariance fails")
    return lam


class GeneratorSet:
    """An immutable list of semisimilarities over one field and dimension,
    closed under inversion (inverses are appended if absent)."""

    def __init__(self, field, elements, label=""):
        elements = list(elements)
        if not elements:
            raise ValueError("empty generator set")
        d = elements[0].dim
        for g in elements:
            if g.field is not field or g.dim != d:
                raise ValueError("generators must share field and dimension")
        present = set(elements)
        for g in list(elements):
            gi = g.inverse()
            if gi not in present:
                elements.append(gi)
                present.add(gi)
        self.field = field
        self.dim = d
        self.elements = tuple(elements)
        self.label = label

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def serialize(self):
        return {"q": self.field.q, "d": self.dim,
                "generators": [g.serialize() for g in self.elements]}

    def save(self, path):
        with open(path, "w") as fh:
            json.dump(self.serialize(), fh, indent=1)

    @classmethod
    def load(cls, path, label=None):
        with open(path) as fh:
            data = json.load(fh)
        return cls.deserialize(data, label=label or str(path))

    @classmethod
    def deserialize(cls, data, label=""):
        F = gf.field_of_order(data["q"])
        d = data["d"]

        def decode(c):
            # entries are coefficient lists as written by serialize(), but a
            # hand-written file may use plain int codes
            if isinstance(c, list):
                return F.from_coeffs(c)
            if not 0 <= c < F.q:
                raise ValueError(f"element code {c} out of range for q={F.q}")
            return c

        gens = []
        for item in data["generators"]:
            if isinstance(item, list):
                item = {"matrix": item}
            M = [[decode(c) for c in row] for row in item["matrix"]]
            if len(M) != d:
                raise ValueError("matrix dimension disagrees with header")
            gens.append(Semisimilarity(F, M, item.get("sigma_power", 0)))
        return cls(F, gens, label=label)

    def __repr__(self):
        return f"GeneratorSet({len(self.elements)} elements, d={self.dim}, q={self.field.q})"


@dataclass(frozen=True)
class OrbitPartition:
    """Orbit labels per point; a label is the smallest point index in its orbit."""

    space: object
    labels: tuple

    @property
    def orbit_sizes(self):
        from collections import Counter
        return tuple(sorted(Counter(self.labels).values()))

    @property
    def orbit_labels(self):
        return tuple(sorted(set(self.labels)))

    def orbit(self, label):
        return PointSet(self.space,
                        tuple(i for i, l in enumerate(self.labels) if l == label))

    def orbit_sets(self):
        return [self.orbit(l) for l in self.orbit_labels]

    def orbit_of_point(self, i):
        return self.orbit(self.labels[i])

    @property
    def n_orbits(self):
        return len(set(self.labels))

    def serialize(self):
        return {"space_descriptor": self.space.descriptor(),
                "orbit_sizes": list(self.orbit_sizes),
                "labels": list(self.labels)}


def _validate_gens(form, gens):
    for i, g in enumerate(gens):
        try:
            multiplier(form, g)
        except ValueError as exc:
            raise ValueError(f"generator {i} rejected: {exc}") from None


def orbits(space, gens):
    """Exact orbit partition of the generated group on the space's points.

    Every generator is checked for form invariance first; a failure names the
    offending index and no orbit work happens.  Deterministic: labels are
    canonical (smallest member index), independent of generator order.
    """
    _validate_gens(space.form, gens.elements)
    n = space.num_points
    F = space.field
    if F.f == 1 and all(g.is_linear() for g in gens) and n * len(gens) > 20000:
        return _orbits_np(space, gens)
    index = space.index
    labels = [-1] * n
    for seed in range(n):
        if labels[seed] != -1:
            continue
        labels[seed] = seed
        frontier = [seed]
        while frontier:
            nxt = []
            for i in frontier:
                v = space.points[i]
                for g in gens:
                    w = _canonical(F, g.apply(v))
                    j = index[w]
                    if labels[j] == -1:
                        labels[j] = seed
                        nxt.append(j)
            frontier = nxt
    return OrbitPartition(space, tuple(labels))


def _canonical(F, v):
    first = next(x for x in v if x)
    if first == 1:
        return tuple(v)
    inv = F.inv(first)
    return tuple(F.mul(inv, x) for x in v)


def _orbits_np(space, gens):
    """Vectorized breadth-first closure for linear groups over prime fields.

    Frontier vectors are pushed through each generator with one exact
    float64 matmul, canonicalized in bulk, and located by binary search in
    the space's sorted code table.
    """
    p = space.field.p
    n = space.num_points
    d = space.d
    pts = space.points_np
    codes = space.codes.astype(np.int64)
    mats = [np.array(g.matrix, dtype=np.int64) for g in gens]
    invlut = np.zeros(p, dtype=np.int64)
    for x in range(1, p):
        invlut[x] = pow(x, -1, p)
    powvec = np.array([p ** (d - 1 - i) for i in range(d)], dtype=np.int64)
    labels = np.full(n, -1, dtype=np.int64)
    seed = 0
    while True:
        unseen = np.flatnonzero(labels == -1)
        if not len(unseen):
            break
        seed = int(unseen[0])
        labels[seed] = seed
        frontier = np.array([seed], dtype=np.int64)
        while len(frontier):
            V = pts[frontier]
            new = []
            for M in mats:
                W = la.mulmod(V, M, p)
                first = W[np.arange(len(W)), np.argmax(W != 0, axis=1)]
                W = W * invlut[first][:, None] % p
                wcodes = W @ powvec
                j = np.minimum(np.searchsorted(codes, wcodes), n - 1)
                if not np.array_equal(codes[j], wcodes):
                    raise AssertionError("image point missing from space")
                j = j[labels[j] == -1]
                if len(j):
                    # label immediately so later generators skip duplicates
                    labels[j] = seed
                    new.append(np.unique(j))
            frontier = np.concatenate(new) if new else np.empty(0, dtype=np.int64)
    return OrbitPartition(space, tuple(int(x) for x in labels))


def vector_orbits(form, gens):
    """Orbit sizes on the nonzero vectors of the form's space (capped)."""
    F = form.field
    d = form.dim
    total = F.q ** d - 1
    if total > VECTOR_CAP:
        raise ValueError(f"too many vectors: {total} exceeds cap {VECTOR_CAP}")
    _validate_gens(form, gens.elements)
    import itertools
    seen = {}
    sizes = []
    for v0 in itertools.product(F.elements(), repeat=d):
        if not any(v0) or v0 in seen:
            continue
        label = len(sizes)
        seen[v0] = label
        frontier = [v0]
        count = 1
        while frontier:
            nxt = []
            for v in frontier:
                for g in gens:
                    w = g.apply(v)
                    if w not in seen:
                        seen[w] = label
                        nxt.append(w)
                        count += 1
            frontier = nxt
        sizes.append(count)
    return tuple(sorted(sizes))


# -- classical generator sets ----------------------------------------------


_FAMILIES = ("Sp", "SU", "Omega", "OmegaPlus", "OmegaMinus", "GO1WrSym")

_KIND_TO_FAMILY = {
    FormKind.SYMPLECTIC: "Sp",
    FormKind.HERMITIAN: "SU",
    FormKind.PARABOLIC: "Omega",
    FormKind.PLUS: "OmegaPlus",
    FormKind.MINUS: "OmegaMinus",
}


def classical_generators(family, d, field, self_check=True):
    """Generators for the named isometry group on the standard form.

    Sp and SU are transvection floods (one transvection per singular/point
    direction and additive parameter); the Omega families use Eichler
    transformations anchored at the first hyperbolic pair.  All outputs are
    validated for form invariance, and — except for the reducible monomial
    family — checked to act transitively on the polar points (Witt).
    """
    from . import forms as fm
    if isinstance(family, FormKind) or family not in _FAMILIES:
        family = _KIND_TO_FAMILY.get(fm.parse_kind(family))
        if family is None:
            raise ValueError("unsupported family")
    if d > 14 or field.q > 9:
        raise ValueError("generator construction supported at desk scale only")
    if family == "Sp":
        form = fm.standard_form(FormKind.SYMPLECTIC, d, field)
        gens = _symplectic_transvections(form)
    elif family == "SU":
        form = fm.standard_form(FormKind.HERMITIAN, d, field)
        gens = _unitary_transvections(form)
    elif family == "GO1WrSym":
        return _monomial_group(d, field)
    else:
        kind = {"Omega": FormKind.PARABOLIC, "OmegaPlus": FormKind.PLUS,
                "OmegaMinus": FormKind.MINUS}[family]
        form = fm.standard_form(kind, d, field)
        gens = _eichler_generators(form)
    gs = GeneratorSet(field, gens, label=f"{family}({d},{field.q})")
    if self_check:
        allow_grid = family == "OmegaPlus" and d == 4
        space = pl.build(form, allow_grid=allow_grid)
        if orbits(space, gs).n_orbits != 1:
            raise AssertionError(f"{gs.label} failed the transitivity self-check")
    return gs


def _transvection(F, d, v, lam, gram_row):
    """x -> x + lam * kappa(x, v) * v given the functional row kappa(., v)."""
    rows = []
    for i in range(d):
        e = [0] * d
        e[i] = 1
        c = F.mul(lam, gram_row[i])
        if c:
            for j in range(d):
                e[j] = F.add(e[j], F.mul(c, v[j]))
        rows.append(tuple(e))
    return Semisimilarity(F, rows)


def _proj_vectors(F, d):
    import itertools
    for lead in range(d - 1, -1, -1):
        for tail in itertools.product(F.elements(), repeat=d - 1 - lead):
            yield (0,) * lead + (1,) + tail


def _symplectic_transvections(form):
    F, d = form.field, form.dim
    gens = []
    for v in _proj_vectors(F, d):
        row = form.pair_functional(v)
        gens.append(_transvection(F, d, v, 1, row))
    return gens


def _unitary_transvections(form):
    F, d = form.field, form.dim
    s = form.sigma
    lams = [x for x in F.elements() if x and F.add(x, F.frobenius(x, s)) == 0]
    gens = []
    for v in _proj_vectors(F, d):
        if form.evaluate(v) != 0:
            continue
        row = form.pair_functional(v)
        for lam in lams:
            gens.append(_transvection(F, d, v, lam, row))
    if not gens:
        raise ValueError("no isotropic directions: unitary transvections need rank >= 1")
    return gens


def _eichler_generators(form):
    """Eichler (Siegel) transformations rho_{u,v} for u in the first
    hyperbolic pair and v running over a spanning set of u^perp:
    x -> x + B(x,v)u - B(x,u)v - Q(v)B(x,u)u."""
    from . import forms as fm
    F, d = form.field, form.dim
    us = [_first_hyperbolic_pair(form)[k] for k in (0, 1)]
    gens = []
    for u in us:
        U = fm.Subspace.span(F, [u])
        perp_basis = fm.perp(form, U).rows
        vs = list(perp_basis)
        for i in range(len(perp_basis)):
            for j in range(i + 1, len(perp_basis)):
                vs.append(la.add_vec(F, perp_basis[i], perp_basis[j]))
        for v in vs:
            gens.append(_eichler(form, u, v))
    return gens


def _first_hyperbolic_pair(form):
    """(u, w) singular with B(u, w) = 1, from the standard model layout."""
    F, d = form.field, form.dim
    for i in range(d):
        ei = tuple(1 if k == i else 0 for k in range(d))
        if form.evaluate(ei) != 0:
            continue
        for j in range(d):
            if j == i:
                continue
            ej = tuple(1 if k == j else 0 for k in range(d))
            if form.evaluate(ej) != 0:
                continue
            b = form.evaluate_pair(ei, ej)
            if b != 0:
                return ei, tuple(F.div(x, b) for x in ej)
    raise ValueError("no hyperbolic pair among basis vectors (rank 0?)")


def _eichler(form, u, v):
    F, d = form.field, form.dim
    qv = form.evaluate(v)
    fu = form.pair_functional(u)
    fv = form.pair_functional(v)
    rows = []
    for i in range(d):
        e = [0] * d
        e[i] = 1
        bu, bv = fu[i], fv[i]
        for j in range(d):
            t = F.mul(bv, u[j])
            t = F.sub(t, F.mul(bu, v[j]))
            t = F.sub(t, F.mul(qv, F.mul(bu, u[j])))
            e[j] = F.add(e[j], t)
        rows.append(tuple(e))
    return Semisimilarity(F, rows)


def _monomial_group(d, field):
    """The monomial group of the identity-Gram form: coordinate permutations
    crossed with per-coordinate scalings of multiplier 1 (signs for odd q,
    norm-one scalars for Hermitian square q)."""
    F = field
    gens = []
    if d >= 2:
        swap = [[0] * d for _ in range(d)]
        swap[0][1] = swap[1][0] = 1
        for i in range(2, d):
            swap[i][i] = 1
        gens.append(Semisimilarity(F, swap))
        if d > 2:
            cyc = [[0] * d for _ in range(d)]
            for i in range(d):
                cyc[i][(i + 1) % d] = 1
            gens.append(Semisimilarity(F, cyc))
    if F.f % 2 == 0:
        q0 = F.p ** (F.f // 2)
        eta = F.pow(F.generator, q0 - 1)  # norm-one scalar of order q0+1
    elif F.p != 2:
        eta = F.neg(1)
    else:
        raise ValueError("no nontrivial coordinate stabilizer for prime even q")
    diag = la.identity(F, d)
    diag = [list(r) for r in diag]
    diag[0][0] = eta
    gens.append(Semisimilarity(F, diag))
    label = f"GO1WrSym({d},{F.q})"
    return GeneratorSet(F, gens, label=label)
