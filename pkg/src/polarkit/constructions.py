"""Explicit two-orbit constructions on polar spaces.

Four families, each returning exact objects that the classifier can check:

* ``adjoint_sl3`` -- SL3(q) conjugating trace-zero 3x3 matrices modulo
  scalars (char 3), which carries a parabolic quadratic form in dimension 7;
* ``extsq_sp6`` -- Sp6(q) on the 13-dimensional section of the exterior
  square (char 3), a parabolic quadric in dimension 13;
* ``dlength_partition`` -- coordinate-support classes of a diagonal or
  Hermitian-identity form, invariant under the full monomial group;
* ``sl2_5_in_sl2_9`` -- a deterministic search for a copy of SL2(5) inside
  SL2(9) with two vector orbits of size 40.
"""

import itertools
from dataclasses import dataclass

from . import _linalg as la
from . import forms, gf, group, polar
from .forms import FormKind


# -- quotient-of-subspace machinery ----------------------------------------


class _Quotient:
    """Coordinates on a complement basis modulo a killed subspace.

    ``vbasis`` spans the complement, ``killed`` the subspace being factored
    out; together they must be independent.  project() solves exactly for the
    coordinates of an ambient vector (raising if it lies outside the span)
    and drops the killed components; lift() maps coordinates back.
    """

    def __init__(self, F, vbasis, killed):
        self.F = F
        self.vbasis = [tuple(r) for r in vbasis]
        self.killed = [tuple(r) for r in killed]
        self.k = len(self.vbasis)
        self.rows = self.vbasis + self.killed
        R, piv = la.rref(F, self.rows)
        if len(R) != len(self.rows):
            raise ValueError("quotient basis rows are dependent")
        # the pivot columns of the rref cut out an invertible submatrix of
        # the *original* rows, giving exact coordinates by one inversion
        self.piv = tuple(piv)
        sub = [[row[j] for j in self.piv] for row in self.rows]
        self.subinv = la.mat_inv(F, sub)

    def project(self, vec):
        x = la.vec_mat(self.F, [vec[j] for j in self.piv], self.subinv)
        if tuple(la.vec_mat(self.F, x, self.rows)) != tuple(vec):
            raise ValueError("vector does not lie in the subspace")
        return tuple(x[: self.k])

    def lift(self, coords):
        padded = tuple(coords) + (0,) * len(self.killed)
        return tuple(la.vec_mat(self.F, padded, self.rows))


# -- SL3(q) on its adjoint module ------------------------------------------


def _flat3(X):
    return tuple(X[0]) + tuple(X[1]) + tuple(X[2])


def _unflat3(v):
    return (tuple(v[0:3]), tuple(v[3:6]), tuple(v[6:9]))


def adjoint_quadratic(F, X):
    """Q(A) = sum_{i<j} (A_ij A_ji - A_ii A_jj) on 3x3 matrices; equals minus
    the linear coefficient of the characteristic polynomial (the second
    elementary symmetric function of the eigenvalues, negated)."""
    tot = 0
    for i in range(3):
        for j in range(i + 1, 3):
            tot = F.add(tot, F.sub(F.mul(X[i][j], X[j][i]),
                                   F.mul(X[i][i], X[j][j])))
    return tot


@dataclass(frozen=True)
class AdjointModel:
    q: int
    space: object
    orbits: object
    gens: object
    quotient: object          # _Quotient from flattened 3x3 matrices

    @property
    def form(self):
        return self.space.form


def adjoint_sl3(q):
    """SL3(q), char 3, acting on trace-zero matrices modulo scalars.

    In characteristic 3 the identity is trace-zero, so V = U/<I> has
    dimension 7 and Q descends to it (Q(A + tI) = Q(A) exactly when tr A = 0
    and p = 3).  The resulting space is the parabolic quadric Q(6,q) and
    SL3(q) splits its points into two orbits, tight sets with parameters
    q+1 and q^3-q.
    """
    F = gf.field_of_order(q)
    if F.p != 3:
        raise ValueError(
            "two-orbit case requires p=3 (scalars are trace-zero only then)")
    if F.f > 2:
        raise ValueError(f"q={q} exceeds the desk budget (q <= 9)")

    # basis of the trace-zero matrices: six off-diagonal units, then
    # H = E00 - E11; the identity (= H0 + 2*H1 here) is the killed line
    offs = [(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)]
    vbasis = []
    for (i, j) in offs:
        X = [[0] * 3 for _ in range(3)]
        X[i][j] = 1
        vbasis.append(_flat3(X))
    H = [[1, 0, 0], [0, F.neg(1), 0], [0, 0, 0]]
    vbasis.append(_flat3(H))
    I3 = _flat3([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    quo = _Quotient(F, vbasis, [I3])

    C = [[0] * 7 for _ in range(7)]
    bq = [adjoint_quadratic(F, _unflat3(b)) for b in vbasis]
    for u in range(7):
        C[u][u] = bq[u]
        for v in range(u + 1, 7):
            s = tuple(F.add(a, b) for a, b in zip(vbasis[u], vbasis[v]))
            C[u][v] = F.sub(F.sub(adjoint_quadratic(F, _unflat3(s)), bq[u]),
                            bq[v])
    form = forms.quadratic_form(F, C)
    assert form.kind is FormKind.PARABOLIC, "adjoint form should be parabolic"
    space = polar.build(form)

    # SL3(q) = < x_01(lam) over an F_p-basis, 3-cycle Weyl element >:
    # conjugating the transvection around the cycle gives x_12 and x_20,
    # and commutators fill in the remaining root subgroups.
    gens3 = []
    for t in range(F.f):
        X = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
        X[0][1] = F.exp[t]
        gens3.append(X)
    gens3.append([[0, 1, 0], [0, 0, 1], [1, 0, 0]])
    sgens = [group.Semisimilarity(F, _conjugation_matrix(F, quo, g))
             for g in gens3]
    gset = group.GeneratorSet(F, sgens, label=f"SL3({q}) on the adjoint module")
    orb = group.orbits(space, gset)
    if orb.n_orbits != 2:
        raise AssertionError(f"expected two orbits, got {orb.n_orbits}")
    return AdjointModel(q=q, space=space, orbits=orb, gens=gset, quotient=quo)


def _conjugation_matrix(F, quo, g):
    """Matrix of X -> g^-1 X g on the quotient, rows = images of the basis."""
    ginv = la.mat_inv(F, g)
    rows = []
    for b in quo.vbasis:
        Y = la.mat_mul(F, la.mat_mul(F, ginv, _unflat3(b)), g)
        rows.append(quo.project(_flat3(Y)))
    return rows


# -- Sp6(q) on the exterior-square section ---------------------------------


WEDGE_PAIRS = tuple((i, j) for i in range(6) for j in range(i + 1, 6))


def _beta1(F, K, pq, rs):
    """Induced bilinear form on wedges: beta1(a^b, c^d) =
    K(a,c)K(b,d) - K(a,d)K(b,c)."""
    (a, b), (c, d) = pq, rs
    return F.sub(F.mul(K[a][c], K[b][d]), F.mul(K[a][d], K[b][c]))


def _wedge_matrix(F, g, pairs):
    """The induced action of g on the 15-dimensional exterior square."""
    rows = []
    for (i, j) in pairs:
        row = [F.sub(F.mul(g[i][a], g[j][b]), F.mul(g[i][b], g[j][a]))
               for (a, b) in pairs]
        rows.append(row)
    return rows


@dataclass(frozen=True)
class ExtSquareModel:
    q: int
    space: object
    orbits: object
    gens: object
    quotient: object          # _Quotient from wedge coordinates
    h: tuple                  # the invariant bivector, wedge coordinates

    @property
    def form(self):
        return self.space.form


def extsq_sp6(q):
    """Sp6(q), char 3, on the section h-perp / <h> of the exterior square.

    h is the invariant bivector with beta1(h, u^v) = kappa1(u,v); for p = 3
    it lies in its own perp, so the section V has dimension 13 and carries
    the parabolic form kappa(x) = beta1(x,x)/2.  Sp6(q) has two orbits on
    the quadric's points, tight sets with parameters q^2+1 and q^6-q^2.
    Only q = 3 fits the desk budget (q = 9 would mean ~2*10^8 points).
    """
    if q != 3:
        raise ValueError("only q=3 is within the desk budget")
    F = gf.field(3, 1)
    kappa1 = forms.standard_form("W", 6, F)
    K = kappa1.data
    pairs = WEDGE_PAIRS
    B15 = [[_beta1(F, K, s, t) for t in pairs] for s in pairs]

    # solve beta1(h, e_c ^ e_d) = kappa1(e_c, e_d) for h
    rhs = [K[c][d] for (c, d) in pairs]
    h = tuple(la.vec_mat(F, rhs, la.mat_inv(F, B15)))

    # U = h-perp under beta1; h itself lies in U (char 3), and the section
    # basis is any complement of <h> inside U
    functional = la.vec_mat(F, h, B15)
    perp_rows, _ = la.rref(F, la.nullspace(F, [functional], 15))
    vbasis = []
    for r in perp_rows:
        cand = vbasis + [r, h]
        if len(la.rref(F, cand)[0]) == len(cand):
            vbasis.append(r)
    assert len(vbasis) == 13, "section should have dimension 13"
    quo = _Quotient(F, vbasis, [h])

    inv2 = F.inv(F.add(1, 1))
    C = [[0] * 13 for _ in range(13)]
    for u in range(13):
        bu = quo.vbasis[u]
        C[u][u] = F.mul(inv2, _beta_apply(F, B15, bu, bu))
        for v in range(u + 1, 13):
            C[u][v] = _beta_apply(F, B15, bu, quo.vbasis[v])
    form = forms.quadratic_form(F, C)
    assert form.kind is FormKind.PARABOLIC, "section form should be parabolic"
    space = polar.build(form)

    sp_gens = group.classical_generators("Sp", 6, F)
    induced = []
    for g in sp_gens:
        M15 = _wedge_matrix(F, g.matrix, pairs)
        rows = [quo.project(la.vec_mat(F, quo.lift(_unit(13, u)), M15))
                for u in range(13)]
        induced.append(group.Semisimilarity(F, rows))
    gset = group.GeneratorSet(F, induced,
                              label=f"Sp6({q}) on the exterior-square section")
    orb = group.orbits(space, gset)
    if orb.n_orbits != 2:
        raise AssertionError(f"expected two orbits, got {orb.n_orbits}")
    return ExtSquareModel(q=q, space=space, orbits=orb, gens=gset,
                          quotient=quo, h=h)


def _beta_apply(F, B, u, v):
    return la.dot(F, u, la.mat_vec(F, B, v))


def _unit(n, i):
    e = [0] * n
    e[i] = 1
    return tuple(e)


def wedge_point(model, u, v):
    """Index of <(u^v + <h>)> in the section's polar space, for vectors u, v
    of the symplectic 6-space with kappa1(u,v) = 0 and u^v not in <h>."""
    F = model.space.field
    w = [0] * 15
    for t, (a, b) in enumerate(WEDGE_PAIRS):
        w[t] = F.sub(F.mul(u[a], v[b]), F.mul(u[b], v[a]))
    coords = group._canonical(F, model.quotient.project(tuple(w)))
    return model.space.index[coords]


# -- D-length partitions ----------------------------------------------------


@dataclass(frozen=True)
class DlengthPartition:
    space: object
    lengths: tuple
    classes: dict             # length -> PointSet

    def serialize(self):
        return {"space": self.space.descriptor(),
                "lengths": list(self.lengths),
                "class_sizes": {str(w): len(s) for w, s in self.classes.items()}}


def dlength_partition(kind, q, t):
    """Partition of the points of a coordinate-diagonal polar space by the
    number of nonzero coordinates (the length with respect to the invariant
    decomposition into t perpendicular lines).

    Orthogonal kinds take the all-ones diagonal form (odd q); Hermitian takes
    the identity Gram (square q).  The requested kind must match what that
    form actually is in dimension t.
    """
    kind = forms.parse_kind(kind)
    F = gf.field_of_order(q)
    if kind is FormKind.SYMPLECTIC:
        raise ValueError("no coordinate decomposition preserves a symplectic form")
    if kind is FormKind.HERMITIAN:
        form = forms.standard_form("H", t, F)
    else:
        if F.p == 2:
            raise ValueError("diagonal quadratic forms need odd q")
        form = forms.diagonal_form(F, (1,) * t)
        if form.kind is not kind:
            raise ValueError(
                f"the diagonal form on {t} coordinates over GF({q}) is "
                f"{form.kind.value}, not {kind.value}")
    space = polar.build(form)
    buckets = {}
    for i, v in enumerate(space.points):
        w = sum(1 for c in v if c)
        buckets.setdefault(w, []).append(i)
    classes = {w: polar.PointSet(space, tuple(ix))
               for w, ix in sorted(buckets.items())}
    return DlengthPartition(space=space, lengths=tuple(sorted(classes)),
                            classes=classes)


def monomial_map(F, perm, signs):
    """The monomial semisimilarity x_i -> signs[i] * x_perm[i]."""
    d = len(perm)
    rows = [[0] * d for _ in range(d)]
    for i in range(d):
        rows[i][perm[i]] = signs[i]
    return group.Semisimilarity(F, rows)


def q43_monomial_splits():
    """Two subgroups of the monomial group of the diagonal Q(4,3) quadric.

    Every point of x0^2+...+x4^2 = 0 over GF(3) has exactly three nonzero
    coordinates, so the length partition is trivial; but the monomial group
    has subgroups acting with two orbits.  The generator tuples below were
    found by enumerating small subgroups (few monomial generators) and are
    reverified on every call: a 5-cycle with one sign flip gives a 20+20
    split into two 2-ovoids, and the stabilizer of the coordinate split
    {0,1,2,3} | {4} (with sign flips) gives 16+24, a 4- and a 6-tight set.
    """
    F = gf.field(3, 1)
    form = forms.diagonal_form(F, (1,) * 5)
    space = polar.build(form)
    neg = F.neg(1)
    ovoid_gens = group.GeneratorSet(F, [
        monomial_map(F, (1, 2, 3, 4, 0), (1, 1, 1, 1, 1)),
        monomial_map(F, (0, 1, 2, 3, 4), (1, 1, 1, 1, neg)),
    ], label="C2^5:C5 inside the monomial group")
    tight_gens = group.GeneratorSet(F, [
        monomial_map(F, (1, 2, 3, 0, 4), (1, 1, 1, 1, 1)),
        monomial_map(F, (1, 0, 2, 3, 4), (1, 1, 1, 1, 1)),
        monomial_map(F, (0, 1, 2, 3, 4), (neg, 1, 1, 1, 1)),
        monomial_map(F, (0, 1, 2, 3, 4), (1, 1, 1, 1, neg)),
    ], label="coordinate-split stabilizer")
    return {
        "space": space,
        "ovoid_split": group.orbits(space, ovoid_gens),
        "tight_split": group.orbits(space, tight_gens),
    }


# -- SL2(5) inside SL2(9) ---------------------------------------------------


def _mat_order(F, M, cap=12):
    P = tuple(tuple(row) for row in M)
    I2 = la.identity(F, 2)
    for k in range(1, cap + 1):
        if P == I2:
            return k
        P = la.mat_mul(F, P, M)
    return None


def _sl2_elements(F):
    """All of SL2(q) in lexicographic order of the flattened code tuple."""
    out = []
    for a, b, c, d in itertools.product(range(F.q), repeat=4):
        if F.sub(F.mul(a, d), F.mul(b, c)) == 1:
            out.append([[a, b], [c, d]])
    return out


def sl2_5_in_sl2_9():
    """First pair (a of order 4, b of order 5) in lexicographic matrix order
    such that <a, b> has exactly two orbits, of size 40 each, on the nonzero
    vectors of GF(9)^2.  Such a pair generates a copy of SL2(5) (any proper
    overgroup inside SL2(9) is transitive on the 80 vectors), and the search
    is deterministic, so the output is reproducible without hard-coding
    matrices.  Every 2x2 determinant-1 matrix is symplectic, so the result
    is a valid generator set for the W(1,9) form.
    """
    F = gf.field(3, 2)
    wform = forms.standard_form("W", 2, F)
    elems = _sl2_elements(F)
    for a in elems:
        if _mat_order(F, a) != 4:
            continue
        for b in elems:
            if _mat_order(F, b) != 5:
                continue
            gset = group.GeneratorSet(
                F, [group.Semisimilarity(F, a), group.Semisimilarity(F, b)],
                label="SL2(5) < SL2(9)")
            if group.vector_orbits(wform, gset) == (40, 40):
                return gset
    raise AssertionError("search exhausted: SL2(9) arithmetic is broken")


def vector_orbit_reps(gset, dim):
    """The orbits of a matrix-generator set on the nonzero vectors of F^dim,
    as a list of vector tuples per orbit (deterministic order)."""
    F = gset.field
    seen = set()
    orbits = []
    for v0 in itertools.product(F.elements(), repeat=dim):
        if not any(v0) or v0 in seen:
            continue
        frontier = [v0]
        seen.add(v0)
        members = [v0]
        while frontier:
            nxt = []
            for v in frontier:
                for g in gset:
                    w = g.apply(v)
                    if w not in seen:
                        seen.add(w)
                        members.append(w)
                        nxt.append(w)
            frontier = nxt
        orbits.append(members)
    return orbits


def sl2_5_reduced_sets():
    """The two SL2(5) vector orbits on GF(9)^2, pushed down to W(3,3) points
    through the symplectic field reduction with alpha = a nonsquare.

    Each orbit has 40 vectors closed under negation (-I is the square of the
    order-4 generator), so it covers 20 of the 40 points of W(3,3); both
    sets are 5-tight.  The orbits are *not* closed under GF(9) scalars, so
    they do not arise from blowing up GF(9)-point sets.

    The partition of PG(3,3) does not depend on alpha, but the perp relation
    of the traced form Tr(alpha*kappa') does, through alpha mod squares: a
    nonsquare alpha makes both orbits 5-tight, a square alpha makes both
    2-ovoids.  (Rescaling vectors by s sends the alpha-graph to the
    alpha*s^2-graph, so only the two square classes can differ, and they do.)
    We take alpha = the field generator, which also makes the traced Gram
    literally equal to the standard alternating form on GF(3)^4.
    Returns (reduction, [set1, set2]).
    """
    from . import fieldred

    gset = sl2_5_in_sl2_9()
    F9 = gset.field
    F3 = gf.field(3, 1)
    wform = forms.standard_form("W", 2, F9)
    fr = fieldred.reduce(1, wform, F3, alpha=F9.generator)
    sets = []
    for orbit in vector_orbit_reps(gset, 2):
        idx = {fr.small_space.index[group._canonical(F3, fr.flattener.flatten(v))]
               for v in orbit}
        sets.append(polar.PointSet(fr.small_space, tuple(sorted(idx))))
    return fr, sets
