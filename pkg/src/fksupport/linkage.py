"""Linkage classes of restricted weights for the r-th Frobenius kernel.

Two dominant weights lie in the same block of the kernel's distribution
algebra when one sits in the dot-Weyl orbit of the other, shifted by the
lattice p**m * (root lattice) + p**r * (weight lattice), where m is the
p-adic depth of lam + rho against the coroots.  Membership in that lattice
is decided exactly through a Smith normal form of the simple-root coordinate
matrix; when m <= r and p does not divide the index of the root lattice in
the weight lattice the shift collapses to p**m * (weight lattice), which is
used as a fast path.  Both routes are exposed so they can be compared.

Only the simply-connected families A (SL_n) and C (Sp_2n) are supported;
SO-type groups are refused.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd

from .errors import DomainError, RankCapError, UnsupportedGroupError
from .rootsys import (DEFAULT_RANK_CAP, Weight, dot_orbit, pairing,
                      restricted_weights, rho_weight, weight_digits)


def _vp(n, p):
    if n == 0:
        raise ValueError("valuation of zero")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def pairing_depth(lam, p, rs):
    """Smallest m >= 1 such that some coroot pairing of lam+rho misses p**m Z.

    Always finite for dominant lam: the simple-root pairings of lam+rho are
    strictly positive.
    """
    if not lam.is_dominant():
        raise DomainError(f"weight {lam} is not dominant")
    shifted = lam + rs.rho
    v = min(_vp(pairing(shifted, alpha), p) for alpha in rs.positive_roots())
    return v + 1


def digit_depth(lam, p, r):
    """Smallest m in [1, r] whose digit lam_{m-1} differs from (p-1)*rho.

    Returns r+1 when every digit equals (p-1)*rho, i.e. for the Steinberg
    weight (p**r - 1)*rho; under that convention the block descriptor
    degenerates to the all-zero tuple.
    """
    if not lam.is_restricted(p, r):
        raise DomainError(f"weight {lam} is not p^{r}-restricted")
    top = rho_weight(lam.rank).scaled(p - 1)
    digits = weight_digits(lam, p, length=r)
    for m in range(1, r + 1):
        if digits[m - 1] != top:
            return m
    return r + 1


def lattice_index(rs):
    """Index of the root lattice in the weight lattice (types A and C only)."""
    if rs.family == "A":
        return rs.rank + 1
    if rs.family == "C":
        return 2
    raise UnsupportedGroupError(
        f"the root-lattice index is only used for types A and C, not {rs.family}")


# ---------------------------------------------------------------------------
# Smith-normal-form membership in p**m * ZPhi + p**r * X

_SNF_CACHE = {}


def _smith_left(mat):
    """Diagonalize an integer matrix: returns (diag, U) with U unimodular
    and U * mat * V diagonal for some untracked unimodular V."""
    a = [list(row) for row in mat]
    m, n = len(a), len(a[0])
    u = [[int(i == j) for j in range(m)] for i in range(m)]
    t = 0
    while t < min(m, n):
        pivot = None
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if a[i][j] and (best is None or abs(a[i][j]) < best):
                    best = abs(a[i][j])
                    pivot = (i, j)
        if pivot is None:
            break
        pi, pj = pivot
        if pi != t:
            a[t], a[pi] = a[pi], a[t]
            u[t], u[pi] = u[pi], u[t]
        if pj != t:
            for row in a:
                row[t], row[pj] = row[pj], row[t]
        cleared = True
        for i in range(t + 1, m):
            q = a[i][t] // a[t][t]
            if q:
                for j in range(n):
                    a[i][j] -= q * a[t][j]
                for j in range(m):
                    u[i][j] -= q * u[t][j]
            if a[i][t]:
                cleared = False
        for j in range(t + 1, n):
            q = a[t][j] // a[t][t]
            if q:
                for i in range(m):
                    a[i][j] -= q * a[i][t]
            if a[t][j]:
                cleared = False
        if cleared:
            t += 1
    return [a[i][i] for i in range(min(m, n))], u


def _root_lattice_snf(rs):
    key = (rs.family, rs.rank)
    if key not in _SNF_CACHE:
        l = rs.rank
        # column j = simple root alpha_j in fundamental coordinates
        mat = [[rs.cartan[j][i] for j in range(l)] for i in range(l)]
        _SNF_CACHE[key] = _smith_left(mat)
    return _SNF_CACHE[key]


def _in_shift_lattice(rs, nu, p, m, r):
    """Whether nu lies in p**m * ZPhi + p**r * X(T), coordinatewise exact."""
    pr = p ** r
    if m >= r:
        return all(c % pr == 0 for c in nu.coords)
    pm = p ** m
    if any(c % pm for c in nu.coords):
        return False
    reduced = [c // pm for c in nu.coords]
    pk = p ** (r - m)
    diag, u = _root_lattice_snf(rs)
    for i in range(rs.rank):
        t = sum(u[i][j] * reduced[j] for j in range(rs.rank)) % pk
        g = gcd(diag[i], pk) if diag[i] else pk
        if t % g:
            return False
    return True


def linked_general(rs, lam, mu, p, r, m=None, rank_cap=DEFAULT_RANK_CAP):
    """Membership of mu in (W . lam + p**m ZPhi + p**r X) via the full lattice."""
    if m is None:
        m = pairing_depth(lam, p, rs)
    return any(_in_shift_lattice(rs, mu - w, p, m, r)
               for w in dot_orbit(rs, lam, rank_cap))


def linked_reduced(rs, lam, mu, p, r, m=None, rank_cap=DEFAULT_RANK_CAP):
    """Membership of mu in (W . lam + p**m X), the collapsed form."""
    if m is None:
        m = pairing_depth(lam, p, rs)
    pm = p ** m
    return any(all((a - b) % pm == 0 for a, b in zip(mu.coords, w.coords))
               for w in dot_orbit(rs, lam, rank_cap))


def same_block(rs, lam, mu, p, r, rank_cap=DEFAULT_RANK_CAP):
    """Whether the simple modules of lam and mu lie in the same block.

    Uses the collapsed lattice when it provably agrees with the full one
    (m <= r and p coprime to the lattice index), otherwise the full route.
    """
    if rs.family not in ("A", "C"):
        raise UnsupportedGroupError(
            "block membership is only defined here for the simply-connected "
            f"types A and C, not {rs.family} (SO forms are excluded)")
    if not lam.is_dominant() or not mu.is_dominant():
        raise DomainError("block membership expects dominant weights")
    m = pairing_depth(lam, p, rs)
    if m <= r and lattice_index(rs) % p != 0:
        return linked_reduced(rs, lam, mu, p, r, m, rank_cap)
    return linked_general(rs, lam, mu, p, r, m, rank_cap)


@dataclass(frozen=True)
class BlockClass:
    """One linkage class inside the restricted region.

    ``base_weight`` is the lexicographically smallest member; ``m`` is the
    shared depth invariant of the class.
    """

    base_weight: Weight
    p: int
    r: int
    m: int
    members: tuple

    def member_coords(self):
        return [list(w.coords) for w in self.members]

    def as_dict(self):
        return {
            "representative": list(self.base_weight.coords),
            "m": self.m,
            "size": len(self.members),
            "members": self.member_coords(),
        }


def block_class(rs, lam, p, r, rank_cap=DEFAULT_RANK_CAP, box_cap=1_000_000):
    """Enumerate the linkage class of lam inside the restricted region.

    Complete for the p**r-restricted box only; the scan is refused when the
    box has more than ``box_cap`` weights.
    """
    if rs.family not in ("A", "C"):
        raise UnsupportedGroupError(
            f"block enumeration is restricted to types A and C, not {rs.family}")
    if not lam.is_restricted(p, r):
        raise DomainError(f"weight {lam} is not p^{r}-restricted")
    if p ** (r * rs.rank) > box_cap:
        raise RankCapError(
            f"restricted box of size {p}^{r * rs.rank} exceeds cap {box_cap}")
    m = pairing_depth(lam, p, rs)
    orbit = dot_orbit(rs, lam, rank_cap)
    members = [mu for mu in restricted_weights(rs.rank, p, r)
               if any(_in_shift_lattice(rs, mu - w, p, m, r) for w in orbit)]
    members.sort(key=lambda w: w.coords)
    return BlockClass(members[0], p, r, m, tuple(members))


def enumerate_classes(rs, p, r, rank_cap=DEFAULT_RANK_CAP, box_cap=1_000_000):
    """Partition the restricted region into linkage classes, deterministically."""
    seen = set()
    classes = []
    for lam in restricted_weights(rs.rank, p, r):
        if lam.coords in seen:
            continue
        cls = block_class(rs, lam, p, r, rank_cap, box_cap)
        seen.update(w.coords for w in cls.members)
        classes.append(cls)
    return classes
