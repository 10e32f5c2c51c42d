"""Root systems and weight combinatorics for the classical families A-D.

Everything here is exact: Cartan data are integers, the inverse Cartan
matrix and the family constant c are Fractions.  Roots are built from the
standard orthonormal-coordinate model of each family and then stored in
simple-root and simple-coroot coordinates; the orthonormal model itself is
internal and never serialized.  Weights live in the fundamental-weight
basis.  Weyl-group elements are words in simple reflections and act through
the Cartan matrix; orbit computations are breadth-first closures, refused
above a configurable rank cap.

Index conventions: simple roots are 0-based throughout the library
(``alpha_0 .. alpha_{l-1}``); serialized output uses 1-based labels.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import ConstructionError, DomainError, RankCapError, UnsupportedGroupError

FAMILIES = ("A", "B", "C", "D")

#: Largest rank at which Weyl-group searches (orbits, Levi conjugation) run.
DEFAULT_RANK_CAP = 6

_MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 3}


@dataclass(frozen=True)
class Weight:
    """Integral weight in fundamental-weight coordinates."""

    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(int(c) for c in self.coords))

    @property
    def rank(self):
        return len(self.coords)

    def __add__(self, other):
        return Weight(tuple(a + b for a, b in zip(self.coords, other.coords, strict=True)))

    def __sub__(self, other):
        return Weight(tuple(a - b for a, b in zip(self.coords, other.coords, strict=True)))

    def __neg__(self):
        return Weight(tuple(-a for a in self.coords))

    def scaled(self, k):
        return Weight(tuple(k * a for a in self.coords))

    def is_dominant(self):
        return all(c >= 0 for c in self.coords)

    def is_restricted(self, p, r=1):
        """Whether every coordinate lies in [0, p**r)."""
        bound = p ** r
        return all(0 <= c < bound for c in self.coords)

    def __str__(self):
        return "(" + ",".join(str(c) for c in self.coords) + ")"


def zero_weight(rank):
    return Weight((0,) * rank)


def rho_weight(rank):
    """Half-sum of positive roots: all fundamental coordinates equal 1."""
    return Weight((1,) * rank)


def fundamental_weight(rank, i):
    """The i-th fundamental weight (0-based i)."""
    return Weight(tuple(1 if j == i else 0 for j in range(rank)))


def steinberg_weight(rank, p, r):
    """(p**r - 1) * rho, the unique weight alone in its linkage class."""
    return rho_weight(rank).scaled(p ** r - 1)


def restricted_weights(rank, p, r):
    """All weights with coordinates in [0, p**r), in lexicographic order."""
    for coords in itertools.product(range(p ** r), repeat=rank):
        yield Weight(coords)


@dataclass(frozen=True)
class Root:
    """A root, stored by its simple-root and simple-coroot expansions."""

    simple_coords: tuple
    coroot_coords: tuple
    positive: bool

    @property
    def height(self):
        return sum(self.simple_coords)

    @property
    def coheight(self):
        """Sum of coroot coordinates; equals the pairing with rho."""
        return sum(self.coroot_coords)

    def __str__(self):
        return "(" + ",".join(str(c) for c in self.simple_coords) + ")"


@dataclass(frozen=True)
class WeylElement:
    """Word in simple reflections; the rightmost letter acts first."""

    word: tuple

    @classmethod
    def identity(cls):
        return cls(())

    def __len__(self):
        return len(self.word)


def pairing(lam, root):
    """<lam, root^v>: integer pairing of a weight against a coroot."""
    return sum(d * c for d, c in zip(root.coroot_coords, lam.coords, strict=True))


# ---------------------------------------------------------------------------
# orthonormal-coordinate construction (internal)

def _eps_simple(family, rank):
    l = rank
    if family == "A":
        dim = l + 1
        return [_unit(dim, i, 1, i + 1, -1) for i in range(l)]
    if family == "B":
        alphas = [_unit(l, i, 1, i + 1, -1) for i in range(l - 1)]
        alphas.append(_unit(l, l - 1, 1))
        return alphas
    if family == "C":
        alphas = [_unit(l, i, 1, i + 1, -1) for i in range(l - 1)]
        alphas.append(_unit(l, l - 1, 2))
        return alphas
    if family == "D":
        alphas = [_unit(l, i, 1, i + 1, -1) for i in range(l - 1)]
        alphas.append(_unit(l, l - 2, 1, l - 1, 1))
        return alphas
    raise ConstructionError(f"unknown family {family!r}")


def _eps_positive(family, rank):
    l = rank
    pos = []
    if family == "A":
        dim = l + 1
        for i in range(dim):
            for j in range(i + 1, dim):
                pos.append(_unit(dim, i, 1, j, -1))
        return pos
    for i in range(l):
        for j in range(i + 1, l):
            pos.append(_unit(l, i, 1, j, -1))
            pos.append(_unit(l, i, 1, j, 1))
    if family == "B":
        pos.extend(_unit(l, i, 1) for i in range(l))
    elif family == "C":
        pos.extend(_unit(l, i, 2) for i in range(l))
    elif family != "D":
        raise ConstructionError(f"unknown family {family!r}")
    return pos


def _unit(dim, *assignments):
    v = [0] * dim
    for pos, val in zip(assignments[::2], assignments[1::2], strict=True):
        v[pos] = val
    return tuple(v)


def _dot(u, v):
    return sum(a * b for a, b in zip(u, v, strict=True))


def _solve_combination(basis, target):
    """Solve sum_k c_k basis[k] = target exactly; the c_k must be integers."""
    dim = len(target)
    n = len(basis)
    rows = [[Fraction(basis[k][d]) for k in range(n)] + [Fraction(target[d])]
            for d in range(dim)]
    pivot_row = 0
    pivots = []
    for col in range(n):
        piv = next((i for i in range(pivot_row, dim) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[pivot_row], rows[piv] = rows[piv], rows[pivot_row]
        inv = 1 / rows[pivot_row][col]
        rows[pivot_row] = [x * inv for x in rows[pivot_row]]
        for i in range(dim):
            if i != pivot_row and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[pivot_row])]
        pivots.append(col)
        pivot_row += 1
    sol = [Fraction(0)] * n
    for row_i, col in enumerate(pivots):
        sol[col] = rows[row_i][n]
    for i in range(pivot_row, dim):
        if rows[i][n] != 0:
            raise ConstructionError("inconsistent coordinate system")
    out = []
    for c in sol:
        if c.denominator != 1:
            raise ConstructionError(f"non-integral expansion coefficient {c}")
        out.append(int(c))
    return tuple(out)


def _invert_fraction_matrix(mat):
    n = len(mat)
    aug = [[Fraction(mat[i][j]) for j in range(n)] +
           [Fraction(1 if j == i else 0) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next(i for i in range(col, n) if aug[i][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for i in range(n):
            if i != col and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


_ROOT_COUNT = {
    "A": lambda l: l * (l + 1),
    "B": lambda l: 2 * l * l,
    "C": lambda l: 2 * l * l,
    "D": lambda l: 2 * l * (l - 1),
}


def coxeter_number_value(family, rank):
    if family == "A":
        return rank + 1
    if family in ("B", "C"):
        return 2 * rank
    if family == "D":
        return 2 * rank - 2
    raise UnsupportedGroupError(f"unknown family {family!r}")


def cln_value(family, rank):
    """The family constant c used by the admissibility gate, as a Fraction."""
    l = rank
    if family == "A":
        return Fraction(l + 1, 2) ** 2
    if family == "B":
        return Fraction(l * (l + 1), 2)
    if family == "C":
        return Fraction(l * l, 2)
    if family == "D":
        return Fraction(l * (l - 1), 2)
    raise UnsupportedGroupError(f"unknown family {family!r}")


def weyl_order(family, rank):
    l = rank
    fact = 1
    for k in range(2, l + 1):
        fact *= k
    if family == "A":
        return fact * (l + 1)
    if family in ("B", "C"):
        return (2 ** l) * fact
    if family == "D":
        return (2 ** (l - 1)) * fact
    raise UnsupportedGroupError(f"unknown family {family!r}")


class RootSystem:
    """Immutable root datum for one classical family and rank.

    Built through :func:`build_root_system`; all attributes are fixed after
    construction, so instances are safe to share between threads.
    """

    __slots__ = (
        "family", "rank", "roots", "cartan", "inverse_cartan", "highest_root",
        "coxeter_number", "cln_constant", "n_positive",
        "_simple_index", "_neg_index", "_reflection", "_coord_index",
        "_support_mask", "_eps_simple_roots",
    )

    def __init__(self, family, rank):
        if family not in FAMILIES:
            raise ConstructionError(
                f"family must be one of {FAMILIES}, got {family!r}")
        if rank < _MIN_RANK[family]:
            raise ConstructionError(
                f"type {family} requires rank >= {_MIN_RANK[family]}, got {rank}")
        self.family = family
        self.rank = rank

        simple_eps = _eps_simple(family, rank)
        pos_eps = _eps_positive(family, rank)
        cartan = tuple(
            tuple(_exact_div(2 * _dot(simple_eps[i], simple_eps[j]),
                             _dot(simple_eps[j], simple_eps[j]))
                  for j in range(rank))
            for i in range(rank))
        coroot_basis = [tuple(2 * Fraction(x, _dot(a, a)) for x in a)
                        for a in simple_eps]

        built = []
        for eps in pos_eps:
            simple_coords = _solve_combination(simple_eps, eps)
            norm = _dot(eps, eps)
            cov = tuple(2 * Fraction(x, norm) for x in eps)
            coroot_coords = _solve_combination(coroot_basis, cov)
            built.append(Root(simple_coords, coroot_coords, True))
        built.sort(key=lambda r: (r.height, r.simple_coords))
        negatives = [Root(tuple(-c for c in r.simple_coords),
                          tuple(-c for c in r.coroot_coords), False)
                     for r in built]
        roots = tuple(built + negatives)

        expected = _ROOT_COUNT[family](rank)
        if len(roots) != expected:
            raise ConstructionError(
                f"{family}{rank}: built {len(roots)} roots, expected {expected}")

        self.roots = roots
        self.n_positive = len(built)
        self.cartan = cartan
        self.inverse_cartan = _invert_fraction_matrix(cartan)
        for i in range(rank):
            for j in range(rank):
                s = sum(cartan[i][k] * self.inverse_cartan[k][j] for k in range(rank))
                if s != (1 if i == j else 0):
                    raise ConstructionError("Cartan matrix inversion failed")

        self._coord_index = {r.simple_coords: idx for idx, r in enumerate(roots)}
        self._neg_index = tuple(
            self._coord_index[tuple(-c for c in r.simple_coords)] for r in roots)
        self._simple_index = tuple(
            self._coord_index[tuple(1 if j == i else 0 for j in range(rank))]
            for i in range(rank))
        self._reflection = tuple(
            tuple(self._reflect_root_coords(i, r) for r in roots)
            for i in range(rank))
        self._support_mask = tuple(
            _mask(r.simple_coords) for r in roots)
        self._eps_simple_roots = tuple(simple_eps)

        rho = rho_weight(rank)
        coheights = [pairing(rho, roots[i]) for i in range(self.n_positive)]
        h = coxeter_number_value(family, rank)
        top = max(coheights)
        if top != h - 1 or coheights.count(top) != 1:
            raise ConstructionError(
                f"{family}{rank}: expected a unique positive root pairing {h - 1} with rho")
        self.highest_root = coheights.index(top)
        self.coxeter_number = h
        self.cln_constant = cln_value(family, rank)
        for ch in coheights:
            if not 1 <= ch <= h - 1:
                raise ConstructionError("rho-pairing outside [1, h-1]")

    # -- elementary accessors ------------------------------------------------

    @property
    def rho(self):
        return rho_weight(self.rank)

    def simple_root(self, i):
        return self.roots[self._simple_index[i]]

    def simple_root_index(self, i):
        return self._simple_index[i]

    def root_index(self, root):
        return self._coord_index[root.simple_coords]

    def negative_index(self, idx):
        return self._neg_index[idx]

    def positive_roots(self):
        return self.roots[:self.n_positive]

    def describe(self):
        return {
            "family": self.family,
            "rank": self.rank,
            "roots": len(self.roots),
            "coxeter_number": self.coxeter_number,
            "c": str(self.cln_constant),
        }

    # -- reflections and Weyl words -------------------------------------------

    def _reflect_root_coords(self, i, root):
        t = sum(c * self.cartan[k][i] for k, c in enumerate(root.simple_coords))
        coords = list(root.simple_coords)
        coords[i] -= t
        return self._coord_index[tuple(coords)]

    def reflect_weight(self, i, lam):
        """Linear action of the i-th simple reflection on a weight."""
        t = lam.coords[i]
        row = self.cartan[i]
        return Weight(tuple(c - t * row[j] for j, c in enumerate(lam.coords)))

    def reflect_root_index(self, i, idx):
        return self._reflection[i][idx]

    def apply(self, w, lam):
        """Linear action of a Weyl word on a weight (rightmost letter first)."""
        for i in reversed(w.word):
            lam = self.reflect_weight(i, lam)
        return lam

    def apply_to_root_index(self, w, idx):
        for i in reversed(w.word):
            idx = self._reflection[i][idx]
        return idx

    def dot_apply(self, w, lam):
        """Dot action w . lam = w(lam + rho) - rho."""
        return self.apply(w, lam + self.rho) - self.rho

    def __repr__(self):
        return f"RootSystem({self.family}{self.rank})"


def _exact_div(a, b):
    q = Fraction(a, b)
    if q.denominator != 1:
        raise ConstructionError("non-integral Cartan entry")
    return int(q)


def _mask(coords):
    m = 0
    for i, c in enumerate(coords):
        if c:
            m |= 1 << i
    return m


@lru_cache(maxsize=None)
def build_root_system(family, rank):
    """Construct (and cache) the root system of the given family and rank."""
    return RootSystem(family, int(rank))


def dot_action(rs, w, lam):
    return rs.dot_apply(w, lam)


def weyl_orbit(rs, lam, rank_cap=DEFAULT_RANK_CAP):
    """Orbit of a weight under the linear Weyl action, sorted by coordinates.

    Breadth-first closure under the simple reflections; refuses to run when
    the rank exceeds ``rank_cap`` since the group order grows too fast.
    """
    if rs.rank > rank_cap:
        raise RankCapError(
            f"rank {rs.rank} exceeds the configured Weyl-orbit cap {rank_cap}")
    seen = {lam.coords}
    frontier = [lam]
    while frontier:
        new = []
        for w in frontier:
            for i in range(rs.rank):
                img = rs.reflect_weight(i, w)
                if img.coords not in seen:
                    seen.add(img.coords)
                    new.append(img)
        frontier = new
    return tuple(Weight(c) for c in sorted(seen))


def dot_orbit(rs, lam, rank_cap=DEFAULT_RANK_CAP):
    """Orbit of a weight under the dot action, sorted by coordinates."""
    rho = rs.rho
    shifted = weyl_orbit(rs, lam + rho, rank_cap)
    return tuple(w - rho for w in shifted)


def weight_digits(lam, p, length=None):
    """Base-p digits of a dominant weight, coordinatewise.

    Returns weights d_0, d_1, ... with every coordinate in [0, p-1] and
    lam = sum d_i * p**i.  With ``length`` given, the list is padded with
    zero weights up to that length (it is an error if the digits do not fit).
    """
    if not lam.is_dominant():
        raise DomainError(f"weight {lam} is not dominant")
    if p < 2:
        raise DomainError(f"base {p} is not a valid prime")
    coords = lam.coords
    natural = 1
    for c in coords:
        n = 1
        while c >= p ** n:
            n += 1
        natural = max(natural, n)
    if length is not None and length < natural:
        raise DomainError(
            f"weight {lam} needs {natural} base-{p} digits, got length={length}")
    total = length if length is not None else natural
    digits = []
    rest = list(coords)
    for _ in range(total):
        digits.append(Weight(tuple(c % p for c in rest)))
        rest = [c // p for c in rest]
    return tuple(digits)


@dataclass(frozen=True)
class GateReport:
    """Result of the admissibility check p > h*c."""

    passed: bool
    p: int
    coxeter_number: int
    constant: Fraction
    bound: Fraction

    def as_dict(self):
        return {
            "passed": self.passed,
            "p": self.p,
            "h": self.coxeter_number,
            "c": str(self.constant),
            "hc": str(self.bound),
        }


def gate_check(p, rs):
    """Check the prime admissibility gate p > h*c, exactly in rationals."""
    bound = rs.coxeter_number * rs.cln_constant
    return GateReport(Fraction(p) > bound, p, rs.coxeter_number,
                      rs.cln_constant, bound)


# ---------------------------------------------------------------------------
# group names

@dataclass(frozen=True)
class GroupSpec:
    """A named classical group resolved to a root-system family and rank.

    ``simply_connected`` is False exactly for the SO_n forms (and for the
    bare B/D family names, which are modeled as SO).  Their weight lattice is
    still taken to be the full fundamental-weight lattice of the root system;
    block-theoretic operations are refused for them.
    """

    name: str
    family: str
    rank: int
    simply_connected: bool

    def root_system(self):
        return build_root_system(self.family, self.rank)

    @property
    def supports_blocks(self):
        return self.family in ("A", "C") and self.simply_connected


_NAME_RE = re.compile(r"^(SL|SP|SO|A|B|C|D)\s*(\d+)$", re.IGNORECASE)


def parse_group(name):
    """Resolve a group name ("A3", "SL4", "Sp4", "SO7", ...) to a GroupSpec."""
    m = _NAME_RE.match(name.strip())
    if not m:
        raise UnsupportedGroupError(
            f"cannot parse group name {name!r}; expected e.g. A3, SL4, Sp6, SO7")
    kind = m.group(1).upper()
    n = int(m.group(2))
    if kind in FAMILIES:
        family, rank, sc = kind, n, kind in ("A", "C")
    elif kind == "SL":
        if n < 2:
            raise UnsupportedGroupError("SL requires n >= 2")
        family, rank, sc = "A", n - 1, True
    elif kind == "SP":
        if n < 4 or n % 2:
            raise UnsupportedGroupError("Sp requires even n >= 4")
        family, rank, sc = "C", n // 2, True
    else:  # SO
        if n < 5:
            raise UnsupportedGroupError("SO requires n >= 5")
        if n % 2:
            family, rank, sc = "B", (n - 1) // 2, False
        else:
            family, rank, sc = "D", n // 2, False
    if rank < _MIN_RANK[family]:
        raise UnsupportedGroupError(
            f"{name!r} resolves to {family}{rank}, below the minimum rank "
            f"{_MIN_RANK[family]} for type {family}")
    return GroupSpec(name.strip(), family, rank, sc)
