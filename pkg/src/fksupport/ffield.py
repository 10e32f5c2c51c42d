"""Small finite fields, exact matrix arithmetic, and truncated-polynomial
matrices over them.

Fields of order p and p**2 are represented by full operation tables, which
is fast and exact at the desk scales used here (q <= 49).  Elements are
plain ints in [0, q); for the quadratic extension the element a0 + a1*t is
encoded as a0 + a1*p.  Matrices are lists of row lists of such ints; a
truncated polynomial is a dense coefficient list of length trunc+1 in the
ring F[s]/(s^(trunc+1)).
"""

from __future__ import annotations

from functools import lru_cache

from .errors import DomainError


class Field:
    """Finite field with tabulated operations.

    ``add``/``mul`` are q x q tables, ``neg``/``inv``/``frob`` are length-q
    tables (``inv[0]`` is a 0 sentinel and must not be used).
    """

    __slots__ = ("p", "q", "ext", "add", "mul", "neg", "inv", "frob")

    def __init__(self, p, q, ext, add, mul, neg, inv, frob):
        self.p = p
        self.q = q
        self.ext = ext
        self.add = add
        self.mul = mul
        self.neg = neg
        self.inv = inv
        self.frob = frob

    def from_int(self, n):
        return n % self.p

    def sub(self, a, b):
        return self.add[a][self.neg[b]]

    def __repr__(self):
        return f"Field(q={self.q})"


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@lru_cache(maxsize=None)
def prime_field(p):
    if not _is_prime(p):
        raise DomainError(f"{p} is not prime")
    rng = range(p)
    add = tuple(tuple((a + b) % p for b in rng) for a in rng)
    mul = tuple(tuple((a * b) % p for b in rng) for a in rng)
    neg = tuple((-a) % p for a in rng)
    inv = tuple(pow(a, p - 2, p) if a else 0 for a in rng)
    frob = tuple(rng)
    return Field(p, p, 1, add, mul, neg, inv, frob)


@lru_cache(maxsize=None)
def quadratic_field(p):
    """The field of order p**2, built over an irreducible t**2 + c*t + d."""
    if not _is_prime(p):
        raise DomainError(f"{p} is not prime")
    c = d = None
    for cc in range(p):
        for dd in range(p):
            if all((x * x + cc * x + dd) % p for x in range(p)):
                c, d = cc, dd
                break
        if c is not None:
            break
    q = p * p

    def mul_pair(a, b):
        a0, a1 = a % p, a // p
        b0, b1 = b % p, b // p
        # (a0 + a1 t)(b0 + b1 t) with t^2 = -c t - d
        hi = a1 * b1
        lo = (a0 * b0 - hi * d) % p
        mid = (a0 * b1 + a1 * b0 - hi * c) % p
        return lo + mid * p

    rng = range(q)
    add = tuple(tuple((a % p + b % p) % p + (((a // p + b // p) % p) * p)
                      for b in rng) for a in rng)
    mul = tuple(tuple(mul_pair(a, b) for b in rng) for a in rng)
    neg = tuple(((-a) % p) + (((-(a // p)) % p) * p) for a in rng)
    inv_list = [0] * q
    for a in range(1, q):
        for b in range(1, q):
            if mul[a][b] == 1:
                inv_list[a] = b
                break
    frob_list = [0] * q
    for a in rng:
        acc = 1
        for _ in range(p):
            acc = mul[acc][a]
        frob_list[a] = acc
    return Field(p, q, 2, add, mul, neg, tuple(inv_list), tuple(frob_list))


def field_of(p, ext=1):
    if ext == 1:
        return prime_field(p)
    if ext == 2:
        return quadratic_field(p)
    raise DomainError(f"field extension degree {ext} is not supported")


# ---------------------------------------------------------------------------
# scalar matrices

def identity_rows(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zero_rows(n, m=None):
    return [[0] * (m if m is not None else n) for _ in range(n)]


def mat_is_zero(a):
    return all(not x for row in a for x in row)


def mat_add(a, b, field):
    add = field.add
    return [[add[x][y] for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_mul(a, b, field):
    add, mul = field.add, field.mul
    n, m = len(a), len(b[0])
    out = [[0] * m for _ in range(n)]
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for k, aik in enumerate(ai):
            if aik:
                bk = b[k]
                mrow = mul[aik]
                for j in range(m):
                    bkj = bk[j]
                    if bkj:
                        oi[j] = add[oi[j]][mrow[bkj]]
    return out


def mat_pow(a, k, field):
    n = len(a)
    out = identity_rows(n)
    for _ in range(k):
        out = mat_mul(out, a, field)
    return out


def mat_rank(a, field):
    if not a:
        return 0
    m = [list(row) for row in a]
    rows, cols = len(m), len(m[0])
    add, mul, neg, inv = field.add, field.mul, field.neg, field.inv
    rank = 0
    for c in range(cols):
        piv = next((i for i in range(rank, rows) if m[i][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        pinv = inv[m[rank][c]]
        mrow = mul[pinv]
        m[rank] = [mrow[x] for x in m[rank]]
        top = m[rank]
        for i in range(rank + 1, rows):
            f = m[i][c]
            if f:
                mf = mul[f]
                mi = m[i]
                m[i] = [add[mi[j]][neg[mf[top[j]]]] for j in range(cols)]
        rank += 1
        if rank == rows:
            break
    return rank


def freeze(rows):
    return tuple(tuple(row) for row in rows)


# ---------------------------------------------------------------------------
# truncated-polynomial matrices

def poly_zero(trunc):
    return [0] * (trunc + 1)


def poly_mul(a, b, field, trunc):
    add, mul = field.add, field.mul
    out = [0] * (trunc + 1)
    for i, ai in enumerate(a):
        if ai:
            mi = mul[ai]
            top = trunc + 1 - i
            for j in range(min(len(b), top)):
                bj = b[j]
                if bj:
                    out[i + j] = add[out[i + j]][mi[bj]]
    return out


def poly_add(a, b, field):
    add = field.add
    return [add[x][y] for x, y in zip(a, b)]


class PolyMatrix:
    """Square matrix over F[s]/(s^(trunc+1)); rows of coefficient lists."""

    __slots__ = ("field", "trunc", "rows")

    def __init__(self, field, trunc, rows):
        self.field = field
        self.trunc = trunc
        self.rows = rows

    @classmethod
    def identity(cls, n, field, trunc):
        rows = [[poly_zero(trunc) for _ in range(n)] for _ in range(n)]
        for i in range(n):
            rows[i][i][0] = 1
        return cls(field, trunc, rows)

    @classmethod
    def from_scalar(cls, scalar_rows, field, trunc):
        rows = []
        for srow in scalar_rows:
            row = []
            for x in srow:
                poly = poly_zero(trunc)
                poly[0] = x
                row.append(poly)
            rows.append(row)
        return cls(field, trunc, rows)

    @property
    def size(self):
        return len(self.rows)

    def mul(self, other):
        field, trunc = self.field, self.trunc
        add = field.add
        n = self.size
        m = len(other.rows[0])
        out = [[poly_zero(trunc) for _ in range(m)] for _ in range(n)]
        for i in range(n):
            arow = self.rows[i]
            orow = out[i]
            for k in range(n):
                aik = arow[k]
                if any(aik):
                    brow = other.rows[k]
                    for j in range(m):
                        bkj = brow[j]
                        if any(bkj):
                            prod = poly_mul(aik, bkj, field, trunc)
                            acc = orow[j]
                            orow[j] = [add[x][y] for x, y in zip(acc, prod)]
        return PolyMatrix(field, trunc, out)

    def coeff(self, k):
        """The k-th coefficient matrix, as scalar rows."""
        return [[entry[k] if k < len(entry) else 0 for entry in row]
                for row in self.rows]

    def coeff_support(self):
        """Sparse list of (degree, scalar rows) over all nonzero degrees."""
        out = []
        for k in range(self.trunc + 1):
            mat = self.coeff(k)
            if not mat_is_zero(mat):
                out.append((k, mat))
        return out

    def key(self):
        return tuple(tuple(tuple(entry) for entry in row) for row in self.rows)
