"""Symbolic support-variety descriptors and their finite-field membership.

A single kernel-one descriptor is Zero, FullCone, the closure of a
Richardson orbit attached to a Levi subset of the simple roots, or Unknown.
Descriptors are normalized (the full Levi collapses to Zero, the empty one
to FullCone) so that equality is syntactic.  Tuple descriptors constrain the
coordinates of commuting nilpotent r-tuples one slot at a time; descriptor
membership over a finite field is decided exactly, in type A through the
rank profile of the Richardson partition.

Kernel-one support data for simple modules is not computed here: it is
looked up in a registry that ships complete only for rank-one type A (Zero
at the top restricted weight, FullCone below it) plus the trivial weight in
every type; everything else is user-supplied.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from . import ffield, linkage
from .errors import (DomainError, LeviSearchError, RankCapError, RegistryError,
                     UndecidableError, UnsupportedGroupError)
from .rootsys import (DEFAULT_RANK_CAP, Weight, WeylElement, pairing,
                      rho_weight, weight_digits, zero_weight)

ZERO = "zero"
FULL_CONE = "full_cone"
ORBIT_CLOSURE = "orbit_closure"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class G1Variety:
    """Descriptor of a conical subvariety of the p-nilpotent cone.

    ``levi`` is a sorted tuple of 0-based simple-root indices, present only
    for the orbit-closure kind.  Use the factory functions below so that the
    normalization invariants hold.
    """

    kind: str
    levi: tuple = None

    @property
    def is_zero(self):
        return self.kind == ZERO

    @property
    def is_full(self):
        return self.kind == FULL_CONE

    @property
    def is_unknown(self):
        return self.kind == UNKNOWN

    def as_dict(self):
        if self.kind == ORBIT_CLOSURE:
            return {"kind": ORBIT_CLOSURE, "levi": [i + 1 for i in self.levi]}
        return {"kind": self.kind}

    def __str__(self):
        if self.kind == ORBIT_CLOSURE:
            return f"orbit_closure({','.join(str(i + 1) for i in self.levi)})"
        return self.kind


def zero_variety():
    return G1Variety(ZERO)


def full_cone():
    return G1Variety(FULL_CONE)


def unknown_variety():
    return G1Variety(UNKNOWN)


def orbit_closure(levi, rank):
    """Normalizing constructor: the full Levi is Zero, the empty one FullCone."""
    levi = tuple(sorted(set(int(i) for i in levi)))
    if any(i < 0 or i >= rank for i in levi):
        raise DomainError(f"Levi indices {levi} out of range for rank {rank}")
    if len(levi) == rank:
        return zero_variety()
    if not levi:
        return full_cone()
    return G1Variety(ORBIT_CLOSURE, levi)


def variety_from_dict(data, rank):
    kind = data.get("kind")
    if kind in (ZERO, FULL_CONE, UNKNOWN):
        return G1Variety(kind)
    if kind == ORBIT_CLOSURE:
        levi = data.get("levi")
        if not isinstance(levi, list):
            raise RegistryError("orbit_closure entry needs a 'levi' list")
        return orbit_closure([i - 1 for i in levi], rank)
    raise RegistryError(f"unknown descriptor kind {kind!r}")


@dataclass(frozen=True)
class TupleVariety:
    """Coordinatewise descriptor for commuting nilpotent r-tuples.

    Membership always presumes the ambient constraints (each coordinate
    p-nilpotent, all coordinates pairwise commuting); slot i constrains the
    i-th coordinate of the tuple.
    """

    coords: tuple

    @property
    def arity(self):
        return len(self.coords)

    def as_dict(self):
        return {"kind": "tuple", "coords": [v.as_dict() for v in self.coords]}

    def __str__(self):
        return "(" + ", ".join(str(v) for v in self.coords) + ")"


def tuple_variety_from_dict(data, rank):
    if data.get("kind") != "tuple":
        raise RegistryError("expected a tuple descriptor")
    return TupleVariety(tuple(variety_from_dict(d, rank)
                              for d in data.get("coords", [])))


# ---------------------------------------------------------------------------
# registry of kernel-one support varieties of simple modules

def _registry_key(family, rank, p, coords):
    return f"{family}{rank}|p={p}|({','.join(str(c) for c in coords)})"


_KEY_FORMAT = "<family><rank>|p=<prime>|(<coords>)"


def _parse_registry_key(key):
    try:
        head, pspec, coords = key.split("|")
        family, rank = head[0].upper(), int(head[1:])
        p = int(pspec.removeprefix("p="))
        inner = coords.strip()
        if not (inner.startswith("(") and inner.endswith(")")):
            raise ValueError
        parts = tuple(int(c) for c in inner[1:-1].split(","))
    except (ValueError, IndexError):
        raise RegistryError(
            f"malformed registry key {key!r}; expected {_KEY_FORMAT}") from None
    return family, rank, p, parts


class SimpleRegistry:
    """Map from (family, rank, p, restricted weight) to kernel-one descriptors.

    Built-ins: the zero weight maps to FullCone in every type, and rank-one
    type A carries its complete table (Zero at p-1, FullCone below).  The top
    restricted weight (p-1)*rho must map to Zero in every explicit entry,
    since its simple module is projective over the first kernel.
    """

    def __init__(self):
        self._entries = {}

    def add(self, family, rank, p, coords, variety):
        coords = tuple(int(c) for c in coords)
        if len(coords) != rank:
            raise RegistryError(
                f"entry {_registry_key(family, rank, p, coords)}: arity != rank")
        if not all(0 <= c < p for c in coords):
            raise RegistryError(
                f"entry {_registry_key(family, rank, p, coords)}: "
                "coordinates must be restricted (in [0, p))")
        if all(c == p - 1 for c in coords) and not variety.is_zero:
            raise RegistryError(
                f"entry {_registry_key(family, rank, p, coords)} must be "
                "'zero': the simple module at (p-1)*rho is projective over "
                "the first Frobenius kernel")
        self._entries[(family, rank, p, coords)] = variety

    def lookup(self, family, rank, p, coords):
        """Descriptor for one restricted weight, or None when unknown."""
        coords = tuple(int(c) for c in coords)
        hit = self._entries.get((family, rank, p, coords))
        if hit is not None:
            return hit
        if all(c == 0 for c in coords):
            return full_cone()
        if family == "A" and rank == 1 and 0 <= coords[0] < p:
            return zero_variety() if coords[0] == p - 1 else full_cone()
        return None

    def __len__(self):
        return len(self._entries)

    def as_dict(self):
        return {_registry_key(*k): v.as_dict()
                for k, v in sorted(self._entries.items())}


def load_registry(path=None, text=None):
    """Load a registry from a JSON file (or raw text), validating entries."""
    reg = SimpleRegistry()
    if path is None and text is None:
        return reg
    if text is None:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    if not text.strip():
        return reg
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise RegistryError(f"registry is not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise RegistryError("registry must be a JSON object of key -> descriptor")
    for key in sorted(data):
        family, rank, p, coords = _parse_registry_key(key)
        try:
            variety = variety_from_dict(data[key], rank)
        except RegistryError as exc:
            raise RegistryError(f"entry {key!r}: {exc}") from None
        reg.add(family, rank, p, coords, variety)
    return reg


# ---------------------------------------------------------------------------
# divisible-pairing root sets and Levi conjugation

def p_divisible_roots(rs, lam, p):
    """Roots whose coroot pairing with lam+rho is divisible by p.

    Closed under negation by construction; returned in root-list order.
    """
    shifted = lam + rs.rho
    return tuple(alpha for alpha in rs.roots if pairing(shifted, alpha) % p == 0)


def levi_conjugate(rs, roots, rank_cap=DEFAULT_RANK_CAP):
    """Find (w, I) with w mapping the given root set onto the span of I.

    Breadth-first search over all Weyl images of the set.  Several Levi
    subsets can appear in one orbit; the lexicographically smallest is
    returned so that conjugate inputs yield syntactically equal descriptors.
    The pair is verified by set equality before being returned; search
    exhaustion means the input was not conjugate to a Levi subsystem (for
    example because the defining prime is inadmissible).
    """
    if rs.rank > rank_cap:
        raise RankCapError(
            f"rank {rs.rank} exceeds the configured Weyl-search cap {rank_cap}")
    start = frozenset(rs.root_index(alpha) for alpha in roots)
    simple_idx = rs._simple_index
    masks = rs._support_mask

    def levi_subset(state):
        levi = [i for i in range(rs.rank) if simple_idx[i] in state]
        mask = 0
        for i in levi:
            mask |= 1 << i
        span = frozenset(idx for idx in range(len(rs.roots))
                         if masks[idx] & ~mask == 0)
        return tuple(levi) if span == state else None

    seen = {start: ()}
    frontier = [start]
    hits = []
    while frontier:
        new = []
        for state in frontier:
            levi = levi_subset(state)
            if levi is not None:
                hits.append((levi, state, seen[state]))
            for i in range(rs.rank):
                table = rs._reflection[i]
                nxt = frozenset(table[idx] for idx in state)
                if nxt not in seen:
                    seen[nxt] = (i,) + seen[state]
                    new.append(nxt)
        frontier = new
    if not hits:
        raise LeviSearchError(
            f"no Weyl conjugate of {sorted(str(rs.roots[i]) for i in start)} "
            "is a Levi subsystem; the defining prime is likely inadmissible")
    levi, state, word = min(hits, key=lambda h: (h[0], len(h[2])))
    w = WeylElement(word)
    image = frozenset(rs.apply_to_root_index(w, rs.root_index(a))
                      for a in roots)
    if image != state:  # word bookkeeping broke; treat as a bug
        raise LeviSearchError("reconstructed word disagrees with search")
    return w, levi


def induced_variety(rs, lam, p, rank_cap=DEFAULT_RANK_CAP):
    """Kernel-one support of the induced module of a dominant weight."""
    _, levi = levi_conjugate(rs, p_divisible_roots(rs, lam, p), rank_cap)
    return orbit_closure(levi, rs.rank)


def orbit_dim(rs, variety):
    """Dimension of the descriptor's underlying variety; None for Unknown."""
    if variety.is_unknown:
        return None
    if variety.is_zero:
        return 0
    if variety.is_full:
        return len(rs.roots)
    mask = 0
    for i in variety.levi:
        mask |= 1 << i
    inside = sum(1 for idx in range(rs.n_positive)
                 if rs._support_mask[idx] & ~mask == 0)
    return 2 * (rs.n_positive - inside)


# ---------------------------------------------------------------------------
# descriptors of simple modules and blocks

def simple_variety(rs, lam, p, r, registry):
    """Tuple descriptor for the simple module of a dominant weight.

    Slot i is the registry descriptor of digit r-1-i; digits beyond the
    expansion are zero and therefore contribute FullCone; digits missing
    from the registry contribute Unknown.
    """
    if not lam.is_dominant():
        raise DomainError(f"weight {lam} is not dominant")
    digits = weight_digits(lam, p)
    coords = []
    for i in range(r):
        j = r - 1 - i
        digit = digits[j] if j < len(digits) else zero_weight(rs.rank)
        hit = registry.lookup(rs.family, rs.rank, p, digit.coords)
        coords.append(hit if hit is not None else unknown_variety())
    return TupleVariety(tuple(coords))


def block_variety(rs, lam, p, r, rank_cap=DEFAULT_RANK_CAP):
    """Tuple descriptor for the block of a restricted weight.

    With m the digit depth of lam: slots below r-m are unconstrained, slot
    r-m carries the induced-module descriptor of digit m-1, and the slots
    above it force zero.  At depth r+1 (the Steinberg weight) every slot is
    zero.
    """
    if rs.family not in ("A", "C"):
        raise UnsupportedGroupError(
            f"block descriptors need a simply-connected group (types A, C), "
            f"not {rs.family}")
    m = linkage.digit_depth(lam, p, r)
    if m == r + 1:
        return TupleVariety(tuple(zero_variety() for _ in range(r)))
    digits = weight_digits(lam, p, length=r)
    pivot = induced_variety(rs, digits[m - 1], p, rank_cap)
    coords = []
    for i in range(r):
        if i < r - m:
            coords.append(full_cone())
        elif i == r - m:
            coords.append(pivot)
        else:
            coords.append(zero_variety())
    return TupleVariety(tuple(coords))


def complexity_upper(rs, lam, p, r, registry):
    """Upper bound for the complexity: sum of digit descriptor dimensions.

    Returns None when any of the first r digits is missing from the registry.
    """
    if not lam.is_dominant():
        raise DomainError(f"weight {lam} is not dominant")
    digits = weight_digits(lam, p)
    total = 0
    for i in range(r):
        digit = digits[i] if i < len(digits) else zero_weight(rs.rank)
        hit = registry.lookup(rs.family, rs.rank, p, digit.coords)
        if hit is None or hit.is_unknown:
            return None
        total += orbit_dim(rs, hit)
    return total


# ---------------------------------------------------------------------------
# finite-field membership

def levi_block_sizes(levi, rank):
    """Composition of rank+1 cut by the simple roots missing from the Levi."""
    sizes = []
    current = 1
    for i in range(rank):
        if i in levi:
            current += 1
        else:
            sizes.append(current)
            current = 1
    sizes.append(current)
    return sizes


def conjugate_partition(parts):
    parts = sorted((x for x in parts if x), reverse=True)
    if not parts:
        return []
    return [sum(1 for x in parts if x > i) for i in range(parts[0])]


def richardson_rank_profile(levi, rank):
    """Rank bounds rank(x**j) <= R[j-1] cutting out the orbit closure (type A)."""
    partition = conjugate_partition(levi_block_sizes(levi, rank))
    n = rank + 1
    return [sum(max(part - j, 0) for part in partition) for j in range(1, n)]


def contains_point(tv, mats, field_or_p, rs):
    """Exact membership of a commuting nilpotent tuple in a tuple descriptor.

    The tuple is assumed to satisfy the ambient constraints already.  Zero
    and FullCone slots are decidable in every type; orbit-closure slots only
    in type A (via Richardson rank profiles); Unknown slots raise.
    """
    if len(mats) != tv.arity:
        raise DomainError(
            f"tuple has {len(mats)} coordinates, descriptor expects {tv.arity}")
    field = (ffield.field_of(field_or_p) if isinstance(field_or_p, int)
             else field_or_p)
    for variety, mat in zip(tv.coords, mats):
        if variety.is_full:
            continue
        if variety.is_zero:
            if not ffield.mat_is_zero(mat):
                return False
            continue
        if variety.is_unknown:
            raise UndecidableError("descriptor has an Unknown coordinate")
        if rs.family != "A":
            raise UndecidableError(
                f"orbit-closure membership is only decidable in type A, "
                f"not {rs.family}")
        profile = richardson_rank_profile(variety.levi, rs.rank)
        power = [list(row) for row in mat]
        for j, bound in enumerate(profile, start=1):
            if j > 1:
                power = ffield.mat_mul(power, [list(row) for row in mat], field)
            if ffield.mat_rank(power, field) > bound:
                return False
    return True


# ---------------------------------------------------------------------------
# comparison helpers (used by property tests and by block/simple containment)

def variety_contains(rs, outer, inner):
    """Whether outer's point set contains inner's; None when undecidable."""
    if outer.is_unknown or inner.is_unknown:
        return None
    if outer.is_full or inner.is_zero or outer == inner:
        return True
    if outer.is_zero:
        return False  # inner is not Zero here
    if inner.is_full:
        return False
    if rs.family != "A":
        return None
    po = richardson_rank_profile(outer.levi, rs.rank)
    pi = richardson_rank_profile(inner.levi, rs.rank)
    return all(a >= b for a, b in zip(po, pi))


def variety_intersect(rs, a, b):
    """Coordinatewise intersection where the lattice structure decides it."""
    if a.is_unknown or b.is_unknown:
        return unknown_variety()
    if a.is_full:
        return b
    if b.is_full:
        return a
    if a.is_zero or b.is_zero:
        return zero_variety()
    if a == b:
        return a
    inc = variety_contains(rs, a, b)
    if inc:
        return b
    if variety_contains(rs, b, a):
        return a
    return unknown_variety()
