"""Divided-power arithmetic and the splitting-map expansion."""

import random

import pytest

from fksupport.dpalg import (DPTensor, binom_mod, digit_weight, split_diff,
                             to_text, u_tensor, verify_split_identity)
from fksupport.errors import CapOverflowError, DomainError


def D(p, m, cap=None):
    return DPTensor.basis(p, (m,), cap if cap is not None else max(m, 1))


def test_binom_mod_matches_direct():
    from math import comb
    for p in (2, 3, 5, 7):
        for n in range(0, 40):
            for k in range(0, n + 1):
                assert binom_mod(n, k, p) == comb(n, k) % p


def test_multiply_examples():
    for p in (3, 5, 7):
        u0 = D(p, 1, cap=2)
        prod = u0.multiply(u0)
        assert prod.terms == {(2,): 2 % p}
    # u0^p = 0
    for p in (2, 3, 5):
        acc = D(p, 1, cap=p)
        for _ in range(p - 1):
            acc = acc.multiply(D(p, 1, cap=p))
        assert acc.is_zero()
    # D(1) * D(p-1) = 0
    for p in (3, 5, 7):
        assert D(p, 1, cap=p).multiply(D(p, p - 1, cap=p)).is_zero()


def test_multiply_overflow_is_an_error():
    # D(5) * D(1) = 6 * D(6) over F_5 carries a nonzero term above the cap;
    # products whose binomial vanishes mod p produce no term and no error
    with pytest.raises(CapOverflowError):
        D(5, 5, cap=5).multiply(D(5, 1, cap=5))
    assert D(5, 3, cap=4).multiply(D(5, 2, cap=4)).is_zero()


def test_multiply_associative_commutative():
    rng = random.Random(3)
    for p in (2, 3, 5):
        cap = p ** 2
        for _ in range(25):
            a, b, c = (D(p, rng.randrange(0, cap // 3 + 1), cap=cap)
                       for _ in range(3))
            assert a.multiply(b).terms == b.multiply(a).terms
            assert a.multiply(b).multiply(c) == a.multiply(b.multiply(c))


def test_generator_p_th_powers_vanish():
    for p in (2, 3, 5):
        cap = p ** 3
        for j in range(3):
            if p ** (j + 1) > cap:
                continue
            acc = u_tensor(p, 1, 0, j, cap=cap)
            for _ in range(p - 1):
                acc = acc.multiply(u_tensor(p, 1, 0, j, cap=cap))
            assert acc.is_zero(), (p, j)


def test_comultiply_examples():
    t = D(5, 1).comultiply(0)
    assert t.terms == {(1, 0): 1, (0, 1): 1}
    t = D(5, 2).comultiply(0)
    assert t.terms == {(2, 0): 1, (1, 1): 1, (0, 2): 1}
    t = D(5, 0).comultiply(0)
    assert t.terms == {(0, 0): 1}


def test_comultiply_coassociative():
    for p in (2, 3, 5):
        for n in range(0, 9):
            t = DPTensor.basis(p, (n,), cap=9)
            left = t.comultiply(0).comultiply(0)
            right = t.comultiply(0).comultiply(1)
            assert left == right


def test_frobenius_diff_examples():
    p = 5
    u1 = DPTensor.basis(p, (p,), cap=2 * p)
    assert u1.frobenius_diff(0).terms == {(1,): 1}
    assert D(p, 1, cap=p).frobenius_diff(0).is_zero()
    assert DPTensor.basis(p, (2 * p,), cap=2 * p).frobenius_diff(0).terms \
        == {(2,): 1}


def test_frobenius_diff_composes():
    for p in (2, 3, 5):
        cap = p ** 2
        for n in range(cap + 1):
            t = DPTensor.basis(p, (n,), cap=cap)
            assert t.frobenius_diff(0, 1).frobenius_diff(0, 1) == \
                t.frobenius_diff(0, 2)


def test_digit_weight_examples():
    for p in (3, 5, 7):
        assert digit_weight((p ** 2, 0, 0), p) == 1
        assert digit_weight((2, 0), p) == 2
        assert digit_weight((1, p), p) == 2
    assert digit_weight((0, 0), 5) == 0


def test_digit_weight_matches_explicit_factorization():
    # weight >= 2 iff the basis functional splits as a product of two
    # non-units with nonzero coefficient; single generators never split
    for p in (2, 3, 5):
        cap = p ** 2
        for m in range(1, cap):
            splits = any(
                not D(p, a, cap=cap).multiply(D(p, m - a, cap=cap)).is_zero()
                for a in range(1, m))
            assert splits == (digit_weight((m,), p) >= 2), (p, m)


def test_split_diff_identity_at_arity_one():
    for p in (2, 3, 5):
        for n in (0, 1, p, p + 2):
            assert split_diff(1, p, n) == DPTensor.basis(p, (n,), cap=n + 1)


def test_split_diff_two_slots_is_exact_on_u1():
    for p in (2, 3, 5, 7):
        got = split_diff(2, p, p)
        assert got.terms == {(p, 0): 1, (0, 1): 1}


def test_split_diff_collects_all_carries():
    t = split_diff(2, 3, 9)
    assert t.coefficient((9, 0)) == 1
    assert t.coefficient((0, 3)) == 1
    for exps, _ in t.items():
        if exps not in ((9, 0), (0, 3)):
            assert digit_weight(exps, 3) >= 2
    # every term re-assembles the original degree
    for exps, _ in t.items():
        assert exps[0] + 3 * exps[1] == 9


def test_split_diff_rejects_bad_arity():
    with pytest.raises(DomainError):
        split_diff(0, 3, 1)


def test_verify_split_identity_small_grid():
    rep = verify_split_identity(2, 5)
    assert rep.passed and rep.residual_terms == 0
    rep = verify_split_identity(3, 3)
    assert rep.passed and rep.residual_terms > 0
    rep = verify_split_identity(3, 2)
    assert rep.passed


def test_report_dict_shape():
    rep = verify_split_identity(2, 3)
    doc = rep.as_dict()
    assert doc["passed"] is True
    assert doc["residual_terms"] == 0
    assert doc["failures"] == []


def test_to_text_stable_form():
    assert to_text(split_diff(2, 3, 3)) == "u1(x)1 + 1(x)u0"
    two = D(3, 1, cap=2).multiply(D(3, 1, cap=2))
    assert to_text(two) == "2.D(2)"
    assert to_text(DPTensor.zero(2, 3, 1)) == "0"


def test_term_order_is_canonical():
    t = split_diff(2, 3, 9)
    listed = [exps for exps, _ in t.items()]
    assert listed == sorted(listed, reverse=True)
