"""Exact arithmetic in small finite fields GF(p^f).

Elements are plain ints in ``range(q)``: the int's base-p digits, little-endian,
are the coefficients of the element in the polynomial basis ``1, g, ..., g^(f-1)``
where ``g`` is the residue class of x modulo the defining polynomial.  Keeping
elements as ints makes them free to hash, compare and pack into numpy arrays;
all structure lives in the :class:`FiniteField` object (discrete-log tables,
addition tables, Frobenius tables).

Defining polynomials come from a frozen table of Conway polynomials so that the
same (p, f) always produces the same field on every machine, and so that the
subfield embedding ``g0 -> G^((q^b-1)/(q0-1))`` is an honest ring homomorphism
(norm-compatibility of the Conway family).  Pairs outside the table fall back
to the lexicographically minimal primitive polynomial under the same ordering.
"""

from functools import lru_cache

__all__ = [
    "FiniteField", "SubfieldEmbedding", "field", "embedding",
    "frobenius", "rel_trace", "rel_norm",
]

# Conway polynomials, little-endian coefficient tuples (monic, degree f).
# Generated offline by the standard recursive lex-minimal search and frozen.
_CONWAY = {
    (2, 1): (1, 1),
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (2, 6): (1, 1, 0, 1, 1, 0, 1),
    (2, 7): (1, 1, 0, 0, 0, 0, 0, 1),
    (2, 8): (1, 0, 1, 1, 1, 0, 0, 0, 1),
    (2, 9): (1, 0, 0, 0, 1, 0, 0, 0, 0, 1),
    (2, 10): (1, 1, 1, 1, 0, 1, 1, 0, 0, 0, 1),
    (3, 1): (1, 1),
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
    (3, 4): (2, 0, 0, 2, 1),
    (3, 5): (1, 2, 0, 0, 0, 1),
    (3, 6): (2, 2, 1, 0, 2, 0, 1),
    (5, 1): (3, 1),
    (5, 2): (2, 4, 1),
    (5, 3): (3, 3, 0, 1),
    (5, 4): (2, 4, 4, 0, 1),
    (7, 1): (4, 1),
    (7, 2): (3, 6, 1),
    (7, 3): (4, 0, 6, 1),
    (7, 4): (3, 4, 5, 0, 1),
    (11, 1): (9, 1),
    (11, 2): (2, 7, 1),
    (13, 1): (11, 1),
    (13, 2): (2, 12, 1),
}

_Q_CAP = 2 ** 20          # refuse anything bigger outright
_LOG_CAP = 2 ** 16        # precompute exp/log tables up to here
_ADD_TABLE_CAP = 512      # full q x q addition table below this


def _is_probable_prime(n):
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
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


class FiniteField:
    """GF(p^f) with table-driven exact arithmetic.

    Do not call the constructor directly; use :func:`field` so that the same
    (p, f) always returns the same shared instance.
    """

    def __init__(self, p, f, _token=None):
        if _token is not _FIELD_TOKEN:
            raise TypeError("use field(p, f) to construct fields")
        if not _is_probable_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        q = p ** f
        if q > _Q_CAP:
            raise ValueError(f"field size {q} exceeds the configured cap {_Q_CAP}")
        self.p = p
        self.f = f
        self.q = q
        self.defining_polynomial = self._pick_polynomial()
        self.generator = p if f > 1 else (-self.defining_polynomial[0]) % p
        self._build_tables()

    # -- construction ------------------------------------------------------

    def _pick_polynomial(self):
        try:
            return _CONWAY[(self.p, self.f)]
        except KeyError:
            return self._search_polynomial()

    def _search_polynomial(self):
        # lex-minimal primitive polynomial under the Conway ordering; no
        # subfield-compatibility pass (embeddings then fall back to root search)
        p, f = self.p, self.f
        import itertools
        best = None
        best_key = None
        for tail in itertools.product(range(p), repeat=f):
            poly = tuple(tail) + (1,)
            if not _poly_is_primitive(poly, p, f):
                continue
            key = tuple(((-1) ** (f - i) * poly[i]) % p for i in range(f - 1, -1, -1))
            if best is None or key < best_key:
                best, best_key = poly, key
        if best is None:
            raise RuntimeError(f"no primitive polynomial found for GF({p}^{f})")
        return best

    def _build_tables(self):
        p, f, q = self.p, self.f, self.q
        if q > _LOG_CAP:
            raise ValueError(f"fields with q > {_LOG_CAP} are not supported by the table backend")
        # exp/log via repeated multiplication by the generator in coefficient form
        exp = [0] * (2 * (q - 1))
        log = [-1] * q
        coeffs = [0] * f
        coeffs[0] = 1
        gen_c = self._code_to_coeffs(self.generator)
        for i in range(q - 1):
            code = self._coeffs_to_code(coeffs)
            exp[i] = code
            exp[i + q - 1] = code
            log[code] = i
            coeffs = self._coeff_mul(coeffs, gen_c)
        if self._coeffs_to_code(coeffs) != 1:
            raise RuntimeError(f"generator of GF({p}^{f}) does not have order q-1")
        if any(l < 0 for l in log[1:]):
            raise RuntimeError(f"defining polynomial for GF({p}^{f}) is not primitive/irreducible")
        self.exp = exp
        self.log = log
        # frobenius x -> x^p as a flat table
        frob = [0] * q
        for a in range(1, q):
            frob[a] = exp[(log[a] * p) % (q - 1)]
        self._frob = frob
        # negation table
        self._neg = [self._coeffs_to_code([(-c) % p for c in self._code_to_coeffs(a)])
                     for a in range(q)]
        # inverse table
        inv = [0] * q
        for a in range(1, q):
            inv[a] = exp[(q - 1 - log[a]) % (q - 1)]
        self._inv = inv
        # addition: full table for small q, digitwise otherwise (XOR for p=2)
        if p != 2 and q <= _ADD_TABLE_CAP:
            tbl = []
            for a in range(q):
                ca = self._code_to_coeffs(a)
                row = bytearray(q) if q <= 256 else [0] * q
                for b in range(q):
                    cb = self._code_to_coeffs(b)
                    row[b] = self._coeffs_to_code([(x + y) % p for x, y in zip(ca, cb)])
                tbl.append(bytes(row) if q <= 256 else row)
            self._add_tbl = tbl
        else:
            self._add_tbl = None

    def _coeff_mul(self, a, b):
        p, f = self.p, self.f
        prod = [0] * (2 * f - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] = (prod[i + j] + x * y) % p
        red = self.defining_polynomial
        for k in range(2 * f - 2, f - 1, -1):
            c = prod[k]
            if c:
                prod[k] = 0
                for i in range(f):
                    prod[k - f + i] = (prod[k - f + i] - c * red[i]) % p
        return prod[:f]

    # -- element codecs ----------------------------------------------------

    def _code_to_coeffs(self, a):
        p = self.p
        out = []
        for _ in range(self.f):
            out.append(a % p)
            a //= p
        return out

    def _coeffs_to_code(self, cs):
        code = 0
        for c in reversed(cs):
            code = code * self.p + (c % self.p)
        return code

    def coeffs(self, a):
        """Little-endian coefficient list of an element (the serialization form)."""
        return self._code_to_coeffs(a)

    def from_coeffs(self, cs):
        if len(cs) > self.f:
            raise ValueError(f"coefficient list longer than f={self.f}")
        cs = list(cs) + [0] * (self.f - len(cs))
        return self._coeffs_to_code(cs)

    # -- arithmetic --------------------------------------------------------

    def add(self, a, b):
        if self.p == 2:
            return a ^ b
        if self._add_tbl is not None:
            return self._add_tbl[a][b]
        return self._coeffs_to_code([(x + y) % self.p for x, y in
                                     zip(self._code_to_coeffs(a), self._code_to_coeffs(b))])

    def neg(self, a):
        return self._neg[a]

    def sub(self, a, b):
        return self.add(a, self._neg[b])

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self.exp[self.log[a] + self.log[b]]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverting 0")
        return self._inv[a]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e):
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("0 to a negative power")
            return 0 if e else 1
        return self.exp[(self.log[a] * e) % (self.q - 1)]

    def frobenius(self, a, k=1):
        """a^(p^k); k is reduced mod f."""
        k %= self.f
        x = a
        for _ in range(k):
            x = self._frob[x]
        return x

    def elements(self):
        return range(self.q)

    def units(self):
        return range(1, self.q)

    def in_subfield(self, a, q0):
        """Membership in the subfield of size q0, by the fixed-point test a^q0 = a."""
        return self.pow(a, q0) == a

    # -- misc --------------------------------------------------------------

    def is_square(self, a):
        if a == 0:
            return True
        if self.p == 2:
            return True
        return self.log[a] % 2 == 0

    def sqrt(self, a):
        """A square root, or None.  Deterministic: the even-log root of smaller code."""
        if a == 0:
            return 0
        if self.p == 2:
            return self.pow(a, self.q // 2)  # squaring is bijective
        l = self.log[a]
        if l % 2:
            return None
        r = self.exp[l // 2]
        return min(r, self._neg[r])

    def __repr__(self):
        return f"GF({self.q})" if self.f > 1 else f"GF({self.p})"

    def __reduce__(self):
        return (field, (self.p, self.f))


_FIELD_TOKEN = object()


def _poly_is_primitive(poly, p, f):
    q = p ** f
    n = q - 1
    if f == 1:
        r = (-poly[0]) % p
        if r == 0:
            return False
        o, v = 1, r
        while v != 1:
            v = v * r % p
            o += 1
        return o == n

    def pmulmod(a, b):
        res = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    res[i + j] = (res[i + j] + x * y) % p
        for k in range(len(res) - 1, f - 1, -1):
            c = res[k]
            if c:
                res[k] = 0
                for i in range(f):
                    res[k - f + i] = (res[k - f + i] - c * poly[i]) % p
        del res[f:]
        while len(res) > 1 and res[-1] == 0:
            res.pop()
        return res

    def ppow(e):
        r, b = [1], [0, 1]
        while e:
            if e & 1:
                r = pmulmod(r, b)
            b = pmulmod(b, b)
            e >>= 1
        return r

    if ppow(n) != [1]:
        return False
    m, facs, d = n, set(), 2
    while d * d <= m:
        while m % d == 0:
            facs.add(d)
            m //= d
        d += 1
    if m > 1:
        facs.add(m)
    return all(ppow(n // l) != [1] for l in facs)


@lru_cache(maxsize=None)
def field(p, f=1):
    """The shared GF(p^f) instance."""
    return FiniteField(p, f, _token=_FIELD_TOKEN)


def field_of_order(q):
    """GF(q) from the prime-power order (e.g. 9 -> GF(3^2))."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    p = 2
    while p * p <= q and q % p:
        p += 1
    if q % p:
        p = q
    f = 0
    m = q
    while m % p == 0:
        m //= p
        f += 1
    if m != 1:
        raise ValueError(f"{q} is not a prime power")
    return field(p, f)


class SubfieldEmbedding:
    """The canonical embedding GF(q0) -> GF(q0^b).

    The image of the small generator is G^((Q-1)/(q0-1)) with G the large
    generator; for Conway-table fields this is a root of the small defining
    polynomial, which makes composed embeddings agree with direct ones.  If the
    power image fails the root test (non-table fallback polynomials) the
    smallest root of the small polynomial in the large field is used instead.
    """

    def __init__(self, small, large):
        if small.p != large.p or large.f % small.f != 0:
            raise ValueError("incompatible fields")
        self.small = small
        self.large = large
        self.b = large.f // small.f
        self.index = self.b
        img = large.exp[(large.q - 1) // (small.q - 1) * small.log[small.generator]] \
            if small.q > 2 else 1
        if not self._is_root(img):
            img = next(a for a in range(1, large.q) if self._is_root(a))
        self.image_of_generator = img
        # forward table on the small field, inverse dict on the image
        up = [0] * small.q
        for k in range(small.q - 1):
            up[small.exp[k]] = large.exp[(large.log[img] * k) % (large.q - 1)]
        self._up = up
        self._down = {v: a for a, v in enumerate(up)}

    def _is_root(self, a):
        L, acc, x = self.large, 0, 1
        for c in self.small.defining_polynomial:
            if c:
                acc = L.add(acc, L.mul(c % L.p, x))
            x = L.mul(x, a)
        return acc == 0

    def up(self, a):
        return self._up[a]

    def down(self, y):
        try:
            return self._down[y]
        except KeyError:
            raise ValueError(f"element {y} of {self.large!r} is not in the subfield image") from None

    def contains(self, y):
        return y in self._down

    def trace(self, y):
        """Relative trace sum_{i<b} y^(q0^i), expressed in the small field."""
        L, q0 = self.large, self.small.q
        acc, t = 0, y
        for _ in range(self.b):
            acc = L.add(acc, t)
            t = L.pow(t, q0)
        return self.down(acc)

    def norm(self, y):
        """Relative norm y^((Q-1)/(q0-1)), expressed in the small field."""
        return self.down(self.large.pow(y, (self.large.q - 1) // (self.small.q - 1)))

    def __repr__(self):
        return f"Embedding({self.small!r} -> {self.large!r})"


@lru_cache(maxsize=None)
def embedding(small, large):
    """Memoized canonical embedding; raises ValueError('incompatible fields') otherwise."""
    return SubfieldEmbedding(small, large)


def frobenius(F, a, k=1):
    return F.frobenius(a, k)


def rel_trace(F, a, to):
    """Trace of a (element of F) down to the subfield `to`."""
    return embedding(to, F).trace(a)


def rel_norm(F, a, to):
    return embedding(to, F).norm(a)
