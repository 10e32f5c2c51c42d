"""Brute-force rank-one-type-A ground truth over small finite fields.

Simple modules of SL2 are realized explicitly as twisted tensor products of
symmetric powers of the natural module, induced modules as plain symmetric
powers (the natural module is self-dual, and support data cannot tell the
two apart).  A one-parameter subgroup attached to a commuting p-nilpotent
r-tuple acts through matrices over a truncated polynomial ring; the u-action
is the coefficient matrix at degree p**j, and freeness over k[u]/(u**p) is
decided by the Jordan criterion (all blocks of size p, equivalently
rank(U**(p-1)) = dim/p).

`run_sweep` exhausts every restricted weight against every commuting tuple,
recording both the joint-action verdict and the slotwise-sum verdict, and
the verify_* functions compare those point sets with the symbolic
descriptors.  Everything is deterministic: tuples are enumerated in
lexicographic order and reports list witnesses sorted.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache

from . import linkage, varieties
from .errors import DomainError, InvariantError
from .ffield import (PolyMatrix, field_of, freeze, identity_rows, mat_add,
                     mat_is_zero, mat_mul, mat_rank, poly_mul, zero_rows)
from .rootsys import Weight, build_root_system

_ORACLE_PRIMES = (2, 3, 5, 7)
_ORACLE_DEPTHS = (1, 2, 3)


# ---------------------------------------------------------------------------
# commuting p-nilpotent tuples

@dataclass(frozen=True)
class NilpotentTuple:
    """Validated r-tuple of commuting p-nilpotent trace-zero matrices."""

    mats: tuple
    q: int

    @property
    def arity(self):
        return len(self.mats)

    def is_origin(self):
        return all(mat_is_zero(m) for m in self.mats)

    def as_lists(self):
        return [[list(row) for row in m] for m in self.mats]

    def __str__(self):
        return "; ".join("[" + " ".join(",".join(str(x) for x in row)
                                        for row in m) + "]" for m in self.mats)


def make_tuple(mats, field):
    """Validate and freeze a tuple; raises naming the violated condition."""
    frozen = tuple(freeze(m) for m in mats)
    p = field.p
    for idx, m in enumerate(frozen):
        n = len(m)
        if any(len(row) != n for row in m):
            raise DomainError(f"matrix {idx} is not square")
        if any(not 0 <= x < field.q for row in m for x in row):
            raise DomainError(f"matrix {idx} has entries outside the field")
        tr = 0
        for i in range(n):
            tr = field.add[tr][m[i][i]]
        if tr:
            raise DomainError(f"matrix {idx} has nonzero trace")
        power = [list(row) for row in m]
        for _ in range(p - 1):
            power = mat_mul(power, m, field)
        if not mat_is_zero(power):
            raise DomainError(f"matrix {idx} is not p-nilpotent")
    lists = [[list(row) for row in m] for m in frozen]
    for i in range(len(lists)):
        for j in range(i + 1, len(lists)):
            if mat_mul(lists[i], lists[j], field) != mat_mul(lists[j], lists[i], field):
                raise DomainError(f"matrices {i} and {j} do not commute")
    return NilpotentTuple(frozen, field.q)


def natural_nilpotents(field):
    """All square-zero trace-zero 2x2 matrices, in lexicographic order."""
    add, mul, neg = field.add, field.mul, field.neg
    out = []
    for a in range(field.q):
        aa = mul[a][a]
        for b in range(field.q):
            for c in range(field.q):
                if add[aa][mul[b][c]] == 0:
                    out.append(((a, b), (c, neg[a])))
    return out


def enumerate_tuples(p, r, ext=1):
    """All commuting r-tuples over the (possibly extended) field, sorted.

    Desk-scale guard rails: p in {2,3,5,7} and r in {1,2,3} over the prime
    field; over the quadratic extension only p in {2,3,5} with r in {1,2}.
    """
    if p not in _ORACLE_PRIMES or r not in _ORACLE_DEPTHS:
        raise DomainError(
            f"oracle enumeration supports p in {_ORACLE_PRIMES} and "
            f"r in {_ORACLE_DEPTHS}, got p={p}, r={r}")
    if ext == 2 and (p > 5 or r > 2):
        raise DomainError(
            "quadratic-extension sweeps are limited to p <= 5 and r <= 2")
    field = field_of(p, ext)
    singles = natural_nilpotents(field)
    lists = [[list(row) for row in m] for m in singles]
    tuples = [[i] for i in range(len(singles))]
    for _ in range(r - 1):
        extended = []
        for chosen in tuples:
            for j, cand in enumerate(lists):
                if all(mat_mul(lists[i], cand, field) == mat_mul(cand, lists[i], field)
                       for i in chosen):
                    extended.append(chosen + [j])
        tuples = extended
    return tuple(make_tuple([singles[i] for i in chosen], field)
                 for chosen in tuples)


# ---------------------------------------------------------------------------
# module representations

def sym_power(g, d):
    """Symmetric power of a 2x2 truncated-polynomial matrix, size d+1."""
    field, trunc = g.field, g.trunc
    if d == 0:
        return PolyMatrix.identity(1, field, trunc)
    ax, cx = g.rows[0][0], g.rows[1][0]
    by, dy = g.rows[0][1], g.rows[1][1]

    def lin_powers(a, c):
        vecs = [[_one_poly(trunc)]]
        for _ in range(d):
            prev = vecs[-1]
            nxt = []
            for t in range(len(prev) + 1):
                acc = _zero_poly(trunc)
                if t < len(prev):
                    acc = poly_add_into(acc, poly_mul(a, prev[t], field, trunc), field)
                if t > 0:
                    acc = poly_add_into(acc, poly_mul(c, prev[t - 1], field, trunc), field)
                nxt.append(acc)
            vecs.append(nxt)
        return vecs

    xs = lin_powers(ax, cx)
    ys = lin_powers(by, dy)
    rows = [[_zero_poly(trunc) for _ in range(d + 1)] for _ in range(d + 1)]
    for k in range(d + 1):
        u, v = xs[d - k], ys[k]
        for i, ui in enumerate(u):
            if any(ui):
                for j, vj in enumerate(v):
                    if any(vj):
                        rows[i + j][k] = poly_add_into(
                            rows[i + j][k], poly_mul(ui, vj, field, trunc), field)
    return PolyMatrix(field, trunc, rows)


def _zero_poly(trunc):
    return [0] * (trunc + 1)


def _one_poly(trunc):
    poly = [0] * (trunc + 1)
    poly[0] = 1
    return poly


def poly_add_into(a, b, field):
    add = field.add
    return [add[x][y] for x, y in zip(a, b)]


def frobenius_image(g, i):
    """Entrywise p**i-power Frobenius: degree scaled, coefficients twisted."""
    if i == 0:
        return g
    field, trunc = g.field, g.trunc
    step = field.p ** i
    frob = field.frob
    rows = []
    for row in g.rows:
        new_row = []
        for entry in row:
            poly = _zero_poly(trunc)
            for m, coeff in enumerate(entry):
                if coeff and m * step <= trunc:
                    x = coeff
                    for _ in range(i):
                        x = frob[x]
                    poly[m * step] = x
            new_row.append(poly)
        rows.append(new_row)
    return PolyMatrix(field, trunc, rows)


def kron_poly(a, b):
    field, trunc = a.field, a.trunc
    na, nb = a.size, b.size
    rows = [[None] * (na * nb) for _ in range(na * nb)]
    for i1 in range(na):
        for i2 in range(nb):
            for j1 in range(na):
                for j2 in range(nb):
                    rows[i1 * nb + i2][j1 * nb + j2] = poly_mul(
                        a.rows[i1][j1], b.rows[i2][j2], field, trunc)
    return PolyMatrix(field, trunc, rows)


def kron_scalar(a, b, field):
    mul = field.mul
    na, nb = len(a), len(b)
    out = []
    for i1 in range(na):
        for i2 in range(nb):
            row = []
            arow = a[i1]
            brow = b[i2]
            for entry in arow:
                if entry:
                    m = mul[entry]
                    row.extend(m[x] for x in brow)
                else:
                    row.extend([0] * nb)
            out.append(row)
    return out


class ModuleRep:
    """Matrix realization of an SL2 module, evaluable on group elements
    with truncated-polynomial entries.

    ``factors`` is a tuple of (degree, twist) pairs: the module is the
    tensor product of the twist-th Frobenius twists of symmetric powers.
    """

    def __init__(self, label, p, field, factors):
        self.label = label
        self.p = p
        self.field = field
        self.factors = tuple(factors)
        dim = 1
        for d, _ in self.factors:
            dim *= d + 1
        self.dim = dim

    def act(self, g):
        """Full image of a 2x2 group element, as a dim x dim PolyMatrix."""
        mats = [sym_power(frobenius_image(g, tw), d) for d, tw in self.factors]
        out = mats[0]
        for m in mats[1:]:
            out = kron_poly(out, m)
        return out

    def _factor_support(self, g, gkey, d, tw, memo):
        if memo is None:
            return sym_power(frobenius_image(g, tw), d).coeff_support()
        key = (gkey, tw, d)
        hit = memo.get(key)
        if hit is None:
            hit = sym_power(frobenius_image(g, tw), d).coeff_support()
            memo[key] = hit
        return hit

    def act_coeff(self, g, k, memo=None):
        """Coefficient matrix of s**k in the image of g, without expanding
        the full Kronecker product beyond degree k."""
        field = self.field
        gkey = g.key() if memo is not None else None
        cur = [(0, [[1]])]
        for d, tw in self.factors:
            sup = self._factor_support(g, gkey, d, tw, memo)
            nxt = {}
            for da, ma in cur:
                for db, mb in sup:
                    dd = da + db
                    if dd > k:
                        break
                    piece = kron_scalar(ma, mb, field)
                    if dd in nxt:
                        nxt[dd] = mat_add(nxt[dd], piece, field)
                    else:
                        nxt[dd] = piece
            cur = sorted(nxt.items())
        for deg, mat in cur:
            if deg == k:
                return mat
        return zero_rows(self.dim)

    def __repr__(self):
        return f"ModuleRep({self.label}, dim={self.dim})"


def sl2_simple(lam, p, ext=1):
    """Simple SL2 module of a dominant weight, via twisted symmetric powers."""
    if isinstance(lam, int):
        lam = Weight((lam,))
    if lam.rank != 1:
        raise DomainError("the matrix oracle models SL2 only (rank-one weights)")
    if not lam.is_dominant():
        raise DomainError(f"weight {lam} is not dominant")
    from .rootsys import weight_digits
    digits = weight_digits(lam, p)
    factors = [(digit.coords[0], i) for i, digit in enumerate(digits)]
    return ModuleRep(f"L({lam.coords[0]})", p, field_of(p, ext), factors)


def sl2_induced(lam, p, ext=1):
    """Induced SL2 module of a dominant weight: one plain symmetric power."""
    if isinstance(lam, int):
        lam = Weight((lam,))
    if lam.rank != 1:
        raise DomainError("the matrix oracle models SL2 only (rank-one weights)")
    if not lam.is_dominant():
        raise DomainError(f"weight {lam} is not dominant")
    d = lam.coords[0]
    return ModuleRep(f"H0({d})", p, field_of(p, ext), [(d, 0)])


# ---------------------------------------------------------------------------
# one-parameter actions

def exp_factor(beta, step, field, trunc):
    """exp of a p-nilpotent matrix evaluated at s**step, truncated."""
    p = field.p
    n = len(beta)
    out = PolyMatrix.identity(n, field, trunc)
    beta_list = [list(row) for row in beta]
    power = identity_rows(n)
    fact = 1
    add, mul = field.add, field.mul
    for m in range(1, p):
        power = mat_mul(power, beta_list, field)
        fact = (fact * m) % p
        deg = m * step
        if mat_is_zero(power) or deg > trunc:
            break
        inv_fact = field.inv[field.from_int(fact)]
        for i in range(n):
            for j in range(n):
                x = power[i][j]
                if x:
                    cell = out.rows[i][j]
                    cell[deg] = add[cell[deg]][mul[inv_fact][x]]
    return out


def joint_exponential(t, field, trunc):
    """Product of the slotwise exponentials at degrees 1, p, p**2, ..."""
    p = field.p
    out = exp_factor(t.mats[0], 1, field, trunc)
    for i in range(1, t.arity):
        out = out.mul(exp_factor(t.mats[i], p ** i, field, trunc))
    return out


def one_param_action(rep, t):
    """Image of the tuple's one-parameter subgroup on the module."""
    trunc = rep.p ** (t.arity - 1)
    g = joint_exponential(t, rep.field, trunc)
    return rep.act(g)


def coefficient_action(rep, t, j, memo=None):
    """Action of the degree-p**j generator: coefficient matrix at s**(p**j).

    The result is checked to be p-nilpotent; a failure is an internal error.
    """
    r = t.arity
    if not 0 <= j <= r - 1:
        raise DomainError(f"slot index {j} out of range for an {r}-tuple")
    trunc = rep.p ** (r - 1)
    g = joint_exponential(t, rep.field, trunc)
    u = rep.act_coeff(g, rep.p ** j, memo)
    _free_verdict(u, rep.p, rep.field, errcls=InvariantError, verdict=False)
    return u


def sum_action(rep, t, memo=None):
    """Sum over slots of the single-exponential coefficient actions."""
    r = t.arity
    p = rep.p
    trunc = p ** (r - 1)
    total = zero_rows(rep.dim)
    for i in range(r):
        g = exp_factor(t.mats[i], 1, rep.field, trunc)
        total = mat_add(total, rep.act_coeff(g, p ** (r - 1 - i), memo), rep.field)
    return total


def _free_verdict(u, p, field, errcls=DomainError, verdict=True):
    """Jordan-type freeness test over k[u]/(u**p), with invariant checks."""
    d = len(u)
    if d == 0:
        return True
    powers = [None, [list(row) for row in u]]
    for _ in range(p - 1):
        powers.append(mat_mul(powers[-1], u, field))
    if not mat_is_zero(powers[p]):
        raise errcls("matrix is not p-nilpotent: U^p != 0")
    if not verdict:
        return True
    if d % p:
        return False
    if mat_rank(powers[p - 1], field) != d // p:
        return False
    for j in range(1, p):
        if mat_rank(powers[j], field) != d * (p - j) // p:
            raise InvariantError("free verdict with a broken rank profile")
    return True


def is_free(u, p, field=None):
    """Whether the module is free over k[u]/(u**p) for this u-action."""
    if field is None:
        field = field_of(p)
    return _free_verdict(u, p, field, errcls=DomainError)


def support_points(rep, p, r, ext=1, tuples=None):
    """Tuples at which the module fails to be free: its support point set."""
    if tuples is None:
        tuples = enumerate_tuples(p, r, ext)
    memo = {}
    return [t for t in tuples
            if not is_free(coefficient_action(rep, t, r - 1, memo), p, rep.field)]


# ---------------------------------------------------------------------------
# exhaustive sweeps and verification reports

@dataclass(frozen=True)
class Sweep:
    """Exhaustive freeness data for one (p, r, field): per restricted weight,
    the support point set from the joint action and from the slotwise sum."""

    p: int
    r: int
    ext: int
    tuples: tuple
    weights: tuple
    support: dict
    sum_support: dict

    @property
    def field(self):
        return field_of(self.p, self.ext)


@lru_cache(maxsize=None)
def run_sweep(p, r, ext=1):
    field = field_of(p, ext)
    tuples = enumerate_tuples(p, r, ext)
    trunc = p ** (r - 1)
    weights = tuple(range(p ** r))
    reps = {d: sl2_simple(Weight((d,)), p, ext) for d in weights}
    support = {d: set() for d in weights}
    sum_support = {d: set() for d in weights}
    memo = {}
    for ti, t in enumerate(tuples):
        g = joint_exponential(t, field, trunc)
        singles = [exp_factor(t.mats[i], 1, field, trunc) for i in range(r)]
        for d in weights:
            rep = reps[d]
            u_joint = rep.act_coeff(g, trunc, memo)
            if not _free_verdict(u_joint, p, field, errcls=InvariantError):
                support[d].add(ti)
            u_sum = zero_rows(rep.dim)
            for i in range(r):
                u_sum = mat_add(
                    u_sum, rep.act_coeff(singles[i], p ** (r - 1 - i), memo), field)
            if not _free_verdict(u_sum, p, field, errcls=InvariantError):
                sum_support[d].add(ti)
    return Sweep(p, r, ext, tuples, weights,
                 {d: frozenset(s) for d, s in support.items()},
                 {d: frozenset(s) for d, s in sum_support.items()})


@dataclass
class OracleReport:
    """Outcome of one verification sweep, with sorted mismatch witnesses."""

    check: str
    p: int
    r: int
    ext: int
    cases: int
    mismatches: list = dc_field(default_factory=list)
    informational: bool = False
    notes: list = dc_field(default_factory=list)

    @property
    def passed(self):
        return not self.mismatches

    def as_dict(self):
        return {
            "check": self.check,
            "p": self.p,
            "r": self.r,
            "field": self.p ** self.ext,
            "cases": self.cases,
            "passed": self.passed,
            "informational": self.informational,
            "mismatches": list(self.mismatches),
            "notes": list(self.notes),
        }

    def summary(self):
        status = "pass" if self.passed else "FAIL"
        if self.informational:
            status = "info"
        return (f"oracle {self.check} p={self.p} r={self.r} q={self.p ** self.ext}: "
                f"{status} ({self.cases} cases, {len(self.mismatches)} mismatches)")


def _set_mismatch(d, got, expected, tuples):
    only_oracle = sorted(got - expected)
    only_descriptor = sorted(expected - got)
    return {
        "weight": d,
        "oracle_only": [str(tuples[i]) for i in only_oracle],
        "descriptor_only": [str(tuples[i]) for i in only_descriptor],
    }


def verify_simple(p, r, ext=1):
    """Oracle support of every restricted simple vs. its tuple descriptor."""
    sweep = run_sweep(p, r, ext)
    rs = build_root_system("A", 1)
    registry = varieties.SimpleRegistry()
    mismatches = []
    cases = 0
    for d in sweep.weights:
        tv = varieties.simple_variety(rs, Weight((d,)), p, r, registry)
        expected = frozenset(
            ti for ti, t in enumerate(sweep.tuples)
            if varieties.contains_point(tv, t.mats, sweep.field, rs))
        cases += len(sweep.tuples)
        if expected != sweep.support[d]:
            mismatches.append(_set_mismatch(d, sweep.support[d], expected,
                                            sweep.tuples))
    return OracleReport("simple", p, r, ext, cases, mismatches)


def verify_equal(p, r, ext=1):
    """Joint-action freeness vs. slotwise-sum freeness, pointwise."""
    sweep = run_sweep(p, r, ext)
    mismatches = []
    cases = 0
    for d in sweep.weights:
        cases += len(sweep.tuples)
        if sweep.support[d] != sweep.sum_support[d]:
            mismatches.append(_set_mismatch(d, sweep.support[d],
                                            sweep.sum_support[d], sweep.tuples))
    return OracleReport("equal", p, r, ext, cases, mismatches)


def verify_block(p, r, ext=1):
    """Union of oracle supports over each linkage class vs. block descriptor."""
    sweep = run_sweep(p, r, ext)
    rs = build_root_system("A", 1)
    classes = linkage.enumerate_classes(rs, p, r)
    mismatches = []
    cases = 0
    notes = [f"classes: {len(classes)}"]
    for cls in classes:
        union = frozenset().union(
            *(sweep.support[w.coords[0]] for w in cls.members))
        tv = varieties.block_variety(rs, cls.base_weight, p, r)
        expected = frozenset(
            ti for ti, t in enumerate(sweep.tuples)
            if varieties.contains_point(tv, t.mats, sweep.field, rs))
        cases += len(sweep.tuples)
        if union != expected:
            mismatches.append({
                "class": [list(w.coords) for w in cls.members],
                "oracle_only": [str(sweep.tuples[i]) for i in sorted(union - expected)],
                "descriptor_only": [str(sweep.tuples[i]) for i in sorted(expected - union)],
            })
    return OracleReport("block", p, r, ext, cases, mismatches, notes=notes)


def h0_remark(p, r, ext=1):
    """Exploratory comparison: induced-module support vs. block descriptor.

    Reports agreement per restricted weight and asserts nothing; the report
    is informational and never fails.
    """
    sweep = run_sweep(p, r, ext)
    rs = build_root_system("A", 1)
    notes = []
    cases = 0
    memo = {}
    trunc = p ** (r - 1)
    for d in sweep.weights:
        rep = sl2_induced(Weight((d,)), p, ext)
        got = set()
        for ti, t in enumerate(sweep.tuples):
            g = joint_exponential(t, sweep.field, trunc)
            u = rep.act_coeff(g, trunc, memo)
            if not _free_verdict(u, p, sweep.field, errcls=InvariantError):
                got.add(ti)
        tv = varieties.block_variety(rs, Weight((d,)), p, r)
        expected = frozenset(
            ti for ti, t in enumerate(sweep.tuples)
            if varieties.contains_point(tv, t.mats, sweep.field, rs))
        cases += len(sweep.tuples)
        notes.append(f"weight {d}: {'agree' if got == expected else 'differ'}")
    return OracleReport("h0-remark", p, r, ext, cases, informational=True,
                        notes=notes)
