"""Symbolic divided-power calculus on tensor powers of the additive group's
distribution algebra.

Basis functionals D(m) are dual to t**m; the generator u_j is D(p**j), and
these satisfy D(i) * D(j) = binom(i+j, i) * D(i+j) with the binomial reduced
mod p (Lucas).  Elements of the r-fold tensor power are finitely supported
maps from exponent r-tuples to nonzero mod-p coefficients, with a hard
degree cap per slot: exceeding it is an error, never a silent truncation.

The splitting map sends s to (s, s**p, ..., s**(p**(r-1))); its differential
is computed slot by slot through comultiplication followed by a Frobenius
differential, and `verify_split_identity` checks mechanically that on
u_{r-1} it is the sum of the r slotwise generators plus terms that factor
into two or more nilpotent generators (detected by digit weight).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import CapOverflowError, DomainError


def binom_mod(n, k, p):
    """Binomial coefficient mod p by Lucas' rule on base-p digits."""
    if k < 0 or k > n:
        return 0
    out = 1
    while n or k:
        ni, ki = n % p, k % p
        if ki > ni:
            return 0
        num = den = 1
        for t in range(ki):
            num = (num * (ni - t)) % p
            den = (den * (t + 1)) % p
        out = (out * num * pow(den, p - 2, p)) % p if p > 2 else (out * num) % p
        n //= p
        k //= p
    return out


def digit_sum(m, p):
    s = 0
    while m:
        s += m % p
        m //= p
    return s


def digit_weight(exps, p):
    """Number of nilpotent generators in the monomial: total base-p digit sum."""
    return sum(digit_sum(m, p) for m in exps)


class DPTensor:
    """Element of the r-fold tensor power of the divided-power algebra."""

    __slots__ = ("arity", "p", "cap", "terms")

    def __init__(self, arity, p, cap, terms=None):
        self.arity = arity
        self.p = p
        self.cap = cap
        clean = {}
        for exps, coeff in (terms or {}).items():
            coeff %= p
            if coeff:
                exps = tuple(int(m) for m in exps)
                if len(exps) != arity:
                    raise DomainError(f"term {exps} has wrong arity")
                for slot, m in enumerate(exps):
                    if m < 0 or m > cap:
                        raise CapOverflowError(
                            f"degree {m} in slot {slot} exceeds cap {cap}")
                clean[exps] = coeff
        self.terms = clean

    @classmethod
    def basis(cls, p, exps, cap=None):
        exps = tuple(exps)
        if cap is None:
            cap = max(exps, default=0)
        return cls(len(exps), p, cap, {exps: 1})

    @classmethod
    def zero(cls, arity, p, cap):
        return cls(arity, p, cap, {})

    def is_zero(self):
        return not self.terms

    def coefficient(self, exps):
        return self.terms.get(tuple(exps), 0)

    def items(self):
        """Terms in canonical (descending exponent-tuple) order."""
        return sorted(self.terms.items(), reverse=True)

    def __eq__(self, other):
        return (isinstance(other, DPTensor) and self.arity == other.arity
                and self.p == other.p and self.terms == other.terms)

    def __add__(self, other):
        self._check_compatible(other)
        merged = dict(self.terms)
        for exps, coeff in other.terms.items():
            merged[exps] = (merged.get(exps, 0) + coeff) % self.p
        return DPTensor(self.arity, self.p, self.cap, merged)

    def scale(self, k):
        return DPTensor(self.arity, self.p, self.cap,
                        {e: (c * k) % self.p for e, c in self.terms.items()})

    def _check_compatible(self, other):
        if (self.arity, self.p, self.cap) != (other.arity, other.p, other.cap):
            raise DomainError("mismatched arity, characteristic, or cap")

    # -- algebra operations ---------------------------------------------------

    def multiply(self, other):
        """Componentwise divided-power product, bilinear over both terms."""
        self._check_compatible(other)
        p, cap = self.p, self.cap
        out = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                coeff = (ca * cb) % p
                for i, j in zip(ea, eb):
                    if coeff == 0:
                        break
                    coeff = (coeff * binom_mod(i + j, i, p)) % p
                if coeff == 0:
                    continue
                exps = tuple(i + j for i, j in zip(ea, eb))
                for slot, m in enumerate(exps):
                    if m > cap:
                        raise CapOverflowError(
                            f"product term {exps} exceeds cap {cap} in slot {slot}")
                out[exps] = (out.get(exps, 0) + coeff) % p
        return DPTensor(self.arity, p, cap, out)

    def comultiply(self, slot):
        """Split one slot: D(n) becomes the sum of D(i) (x) D(n-i)."""
        if not 0 <= slot < self.arity:
            raise DomainError(f"slot {slot} out of range")
        out = {}
        for exps, coeff in self.terms.items():
            n = exps[slot]
            head, tail = exps[:slot], exps[slot + 1:]
            for i in range(n + 1):
                new = head + (i, n - i) + tail
                out[new] = (out.get(new, 0) + coeff) % self.p
        return DPTensor(self.arity + 1, self.p, self.cap, out)

    def frobenius_diff(self, slot, i=1):
        """Frobenius differential in one slot: D(m) -> D(m / p**i) or dies."""
        if i < 0:
            raise DomainError("Frobenius differential needs i >= 0")
        if not 0 <= slot < self.arity:
            raise DomainError(f"slot {slot} out of range")
        q = self.p ** i
        out = {}
        for exps, coeff in self.terms.items():
            m = exps[slot]
            if m % q:
                continue
            new = exps[:slot] + (m // q,) + exps[slot + 1:]
            out[new] = (out.get(new, 0) + coeff) % self.p
        return DPTensor(self.arity, self.p, self.cap, out)

    def __repr__(self):
        return f"DPTensor({to_text(self)})"


def u_exponent(p, j):
    return p ** j


def u_tensor(p, arity, slot, j, cap=None):
    """The generator u_j placed in one slot of an identity tensor."""
    exps = tuple(u_exponent(p, j) if s == slot else 0 for s in range(arity))
    return DPTensor.basis(p, exps, cap)


def split_diff(r, p, n, cap=None):
    """Differential of s -> (s, s**p, ..., s**(p**(r-1))) on D(n).

    Built literally from the recursion: apply comultiplication followed by a
    single Frobenius differential to the last unexpanded slot, r-1 times.
    """
    if r < 1:
        raise DomainError("arity must be >= 1")
    if cap is None:
        cap = max(n, 1) + 1
    out = DPTensor.basis(p, (n,), cap)
    for slot in range(r - 1):
        out = out.comultiply(slot).frobenius_diff(slot + 1, 1)
    return out


def _slot_text(m, p):
    if m == 0:
        return "1"
    j = 0
    q = 1
    while q < m:
        q *= p
        j += 1
    if q == m:
        return f"u{j}"
    return f"D({m})"


def to_text(tensor):
    """Stable text rendering, e.g. ``u1(x)1 + 1(x)u0 + 2.D(2)(x)D(1)``."""
    if tensor.is_zero():
        return "0"
    parts = []
    for exps, coeff in tensor.items():
        body = "(x)".join(_slot_text(m, tensor.p) for m in exps)
        parts.append(body if coeff == 1 else f"{coeff}.{body}")
    return " + ".join(parts)


@dataclass
class SplitReport:
    """Outcome of checking the linear-plus-higher decomposition at one (r, p)."""

    r: int
    p: int
    degree: int
    linear_ok: bool
    weight_ok: bool
    residual_terms: int
    failures: list = field(default_factory=list)
    expansion_text: str = ""

    @property
    def passed(self):
        return self.linear_ok and self.weight_ok

    def as_dict(self):
        return {
            "r": self.r,
            "p": self.p,
            "degree": self.degree,
            "passed": self.passed,
            "linear_ok": self.linear_ok,
            "weight_ok": self.weight_ok,
            "residual_terms": self.residual_terms,
            "failures": list(self.failures),
        }

    def summary(self):
        status = "pass" if self.passed else "FAIL"
        return (f"split identity r={self.r} p={self.p}: {status} "
                f"(residual terms: {self.residual_terms})")


def verify_split_identity(r, p, keep_text=False):
    """Check that the split differential of u_{r-1} is the sum of the r
    slotwise generators with unit coefficients plus digit-weight >= 2 terms."""
    n = p ** (r - 1)
    expansion = split_diff(r, p, n)
    failures = []
    expected = set()
    for k in range(r):
        exps = tuple(p ** (r - 1 - k) if s == k else 0 for s in range(r))
        expected.add(exps)
        coeff = expansion.coefficient(exps)
        if coeff != 1:
            failures.append(
                {"term": list(exps), "coefficient": coeff, "reason": "linear"})
    linear_ok = not failures
    residual = 0
    weight_ok = True
    for exps, coeff in expansion.items():
        if exps in expected:
            continue
        residual += 1
        if digit_weight(exps, p) < 2:
            weight_ok = False
            failures.append(
                {"term": list(exps), "coefficient": coeff, "reason": "weight"})
    return SplitReport(r, p, n, linear_ok, weight_ok, residual, failures,
                       to_text(expansion) if keep_text else "")
