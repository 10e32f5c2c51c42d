"""The SL2 matrix oracle: module construction, one-parameter actions,
freeness, enumeration, and the sweep-level invariants (at p = 3)."""

import pytest

from fksupport.errors import DomainError
from fksupport.ffield import (field_of, mat_is_zero, mat_pow, mat_rank,
                              prime_field, quadratic_field)
from fksupport.oracle import (NilpotentTuple, coefficient_action,
                              enumerate_tuples, exp_factor, h0_remark,
                              is_free, joint_exponential, make_tuple,
                              natural_nilpotents, one_param_action, run_sweep,
                              sl2_induced, sl2_simple, sum_action,
                              support_points, verify_block, verify_equal,
                              verify_simple)
from fksupport.rootsys import Weight

F3 = prime_field(3)
F5 = prime_field(5)
E = ((0, 1), (0, 0))
ZERO2 = ((0, 0), (0, 0))


def _tuple(field, *mats):
    return make_tuple(mats, field)


# ---------------------------------------------------------------------------
# fields

def test_quadratic_field_tables():
    f = quadratic_field(3)
    assert f.q == 9
    for a in range(9):
        for b in range(9):
            assert f.mul[a][b] == f.mul[b][a]
            if a and f.mul[a][f.inv[a]] != 1:
                pytest.fail("broken inverse")
    # frobenius fixes the prime subfield and is an automorphism
    for a in range(3):
        assert f.frob[a] == a
    for a in range(9):
        for b in range(9):
            assert f.frob[f.mul[a][b]] == f.mul[f.frob[a]][f.frob[b]]


def test_field_of_rejects_silly_input():
    with pytest.raises(DomainError):
        field_of(4)
    with pytest.raises(DomainError):
        field_of(3, 3)


# ---------------------------------------------------------------------------
# modules

def test_sl2_simple_dimensions():
    assert sl2_simple(Weight((0,)), 5).dim == 1
    assert sl2_simple(Weight((1,)), 5).dim == 2
    for d0 in range(5):
        for d1 in range(5):
            rep = sl2_simple(Weight((d0 + 5 * d1,)), 5)
            assert rep.dim == (d0 + 1) * (d1 + 1)


def test_sl2_simple_natural_module_acts_as_itself():
    rep = sl2_simple(Weight((1,)), 3)
    t = _tuple(F3, E)
    g = joint_exponential(t, F3, 1)
    assert rep.act(g).rows == g.rows


def test_sl2_induced_matches_simple_below_p():
    doubled = tuple(tuple(2 * x % 5 for x in row) for row in E)
    for d in range(5):
        left = sl2_induced(Weight((d,)), 5)
        right = sl2_simple(Weight((d,)), 5)
        assert left.dim == d + 1
        t = _tuple(F5, E, doubled)
        g = joint_exponential(t, F5, 5)
        assert left.act(g).rows == right.act(g).rows


def test_rep_is_multiplicative_on_samples():
    rep = sl2_simple(Weight((4,)), 3)
    a = exp_factor(E, 1, F3, 3)
    b = exp_factor(((0, 0), (1, 0)), 1, F3, 3)
    left = rep.act(a.mul(b))
    right = rep.act(a).mul(rep.act(b))
    assert left.rows == right.rows


def test_act_coeff_agrees_with_full_action():
    rep = sl2_simple(Weight((7,)), 3)  # digits (1, 2)
    t = _tuple(F3, E, tuple(tuple(2 * x % 3 for x in row) for row in E))
    g = joint_exponential(t, F3, 3)
    full = rep.act(g)
    for k in range(4):
        assert rep.act_coeff(g, k) == full.coeff(k)


def test_sl2_rejects_bad_weights():
    with pytest.raises(DomainError):
        sl2_simple(Weight((-1,)), 3)
    with pytest.raises(DomainError):
        sl2_simple(Weight((1, 0)), 3)


# ---------------------------------------------------------------------------
# one-parameter actions

def test_one_param_action_examples():
    rep = sl2_simple(Weight((1,)), 3)
    ident = one_param_action(rep, _tuple(F3, ZERO2))
    assert ident.rows == joint_exponential(_tuple(F3, ZERO2), F3, 1).rows
    act = one_param_action(rep, _tuple(F3, E))
    assert act.coeff(0) == [[1, 0], [0, 1]]
    assert act.coeff(1) == [[0, 1], [0, 0]]

    act = one_param_action(rep, _tuple(F3, ZERO2, E))
    assert act.coeff(0) == [[1, 0], [0, 1]]
    assert act.coeff(1) == [[0, 0], [0, 0]]
    assert act.coeff(3) == [[0, 1], [0, 0]]


def test_coefficient_action_examples():
    rep = sl2_simple(Weight((1,)), 3)
    assert coefficient_action(rep, _tuple(F3, ZERO2), 0) == [[0, 0], [0, 0]]
    assert coefficient_action(rep, _tuple(F3, E), 0) == [[0, 1], [0, 0]]
    with pytest.raises(DomainError):
        coefficient_action(rep, _tuple(F3, E), 1)


def test_steinberg_action_has_maximal_rank():
    rep = sl2_simple(Weight((8,)), 3)  # dim 9
    t = _tuple(F3, E, E)
    u = coefficient_action(rep, t, 1)
    assert mat_rank(u, F3) == 6  # = dim * (p-1) / p
    assert is_free(u, 3, F3)


def test_sum_action_reduces_to_coefficient_at_depth_one():
    rep = sl2_simple(Weight((2,)), 3)
    for beta in natural_nilpotents(F3):
        t = _tuple(F3, beta)
        assert sum_action(rep, t) == coefficient_action(rep, t, 0)


def test_single_slot_tuples_reduce_to_one_exponential():
    # with every other slot zero, the joint action is one exponential at s**(p**i)
    rep = sl2_simple(Weight((4,)), 3)  # digits (1, 1)
    for beta in natural_nilpotents(F3)[:6]:
        for slot in (0, 1):
            mats = [ZERO2, ZERO2]
            mats[slot] = beta
            t = _tuple(F3, *mats)
            g = exp_factor(beta, 3 ** slot, F3, 3)
            full = rep.act(g)
            for j in (0, 1):
                assert coefficient_action(rep, t, j) == full.coeff(3 ** j)


# ---------------------------------------------------------------------------
# freeness

def _jordan_block(n):
    return [[1 if j == i + 1 else 0 for j in range(n)] for i in range(n)]


def test_is_free_examples():
    assert not is_free([[0, 0], [0, 0]], 3)
    assert is_free(_jordan_block(3), 3)
    assert is_free(_jordan_block(5), 5)
    # Jordan type (3, 1) in dimension 4
    jordan_31 = [[1 if j == i + 1 and i != 2 else 0 for j in range(4)]
                 for i in range(4)]
    assert not is_free(jordan_31, 3)


def test_is_free_rejects_non_nilpotent():
    with pytest.raises(DomainError):
        is_free([[1, 0], [0, 1]], 3)


# ---------------------------------------------------------------------------
# enumeration

def test_nilpotent_counts():
    assert len(natural_nilpotents(F3)) == 9
    assert len(natural_nilpotents(F5)) == 25
    assert len(enumerate_tuples(5, 1)) == 25
    assert len(enumerate_tuples(3, 2)) == 33
    assert len(enumerate_tuples(3, 2, ext=2)) == 801


def test_commuting_pairs_share_a_line():
    f = F5
    for t in enumerate_tuples(5, 2):
        x, y = t.mats
        if mat_is_zero(x) or mat_is_zero(y):
            continue
        assert any(all(f.mul[c][x[i][j]] == y[i][j]
                       for i in range(2) for j in range(2))
                   for c in range(1, 5)), t


def test_enumeration_guard_rails():
    with pytest.raises(DomainError):
        enumerate_tuples(11, 1)
    with pytest.raises(DomainError):
        enumerate_tuples(3, 4)
    with pytest.raises(DomainError):
        enumerate_tuples(7, 2, ext=2)


def test_make_tuple_validation_messages():
    with pytest.raises(DomainError, match="trace"):
        make_tuple([((1, 0), (0, 1))], F3)
    with pytest.raises(DomainError, match="nilpotent"):
        make_tuple([((1, 0), (0, 2))], F3)
    with pytest.raises(DomainError, match="commute"):
        make_tuple([E, ((0, 0), (1, 0))], F3)
    with pytest.raises(DomainError, match="field"):
        make_tuple([((0, 7), (0, 0))], F3)


# ---------------------------------------------------------------------------
# support sweeps (kept at p = 3 here; the wide grids run in acceptance)

def test_support_points_examples():
    trivial = sl2_simple(Weight((0,)), 3)
    assert len(support_points(trivial, 3, 1)) == 9  # every point

    steinberg = sl2_simple(Weight((8,)), 3)
    pts = support_points(steinberg, 3, 2)
    assert len(pts) == 1 and pts[0].is_origin()

    # a first-kernel Steinberg digit pins the second slot to zero
    rep = sl2_simple(Weight((2,)), 3)
    pts = support_points(rep, 3, 2)
    assert all(mat_is_zero(t.mats[1]) for t in pts)
    assert len(pts) == 9


def test_rank_profiles_monotone_and_nilpotent():
    sweep = run_sweep(3, 2)
    rep = sl2_simple(Weight((5,)), 3)
    for t in sweep.tuples[:12]:
        u = coefficient_action(rep, t, 1)
        ranks = [mat_rank(mat_pow(u, j, F3), F3) for j in range(1, 4)]
        assert ranks == sorted(ranks, reverse=True)
        assert ranks[-1] == 0


def test_twist_identity_support_depends_on_one_slot():
    # modules pulled back through the Frobenius see only the matching slot
    sweep1 = run_sweep(3, 1)
    sweep2 = run_sweep(3, 2)
    single_support = {d: {sweep1.tuples[i].mats[0] for i in sweep1.support[d]}
                      for d in range(3)}
    for d in range(3):
        twisted = 3 * d  # digits (0, d)
        expected = {ti for ti, t in enumerate(sweep2.tuples)
                    if t.mats[0] in single_support[d]}
        assert sweep2.support[twisted] == expected


def test_steinberg_factor_absorption():
    # a top digit in slot j forces the conjugate coordinate to vanish
    sweep1 = run_sweep(3, 1)
    sweep2 = run_sweep(3, 2)
    single_support = {d: {sweep1.tuples[i].mats[0] for i in sweep1.support[d]}
                      for d in range(3)}
    for d in range(3):
        lam = d + 3 * 2  # digits (d, 2): slot 0 must vanish
        expected = {ti for ti, t in enumerate(sweep2.tuples)
                    if mat_is_zero(t.mats[0]) and t.mats[1] in single_support[d]}
        assert sweep2.support[lam] == expected
        lam = 2 + 3 * d  # digits (2, d): slot 1 must vanish
        expected = {ti for ti, t in enumerate(sweep2.tuples)
                    if mat_is_zero(t.mats[1]) and t.mats[0] in single_support[d]}
        assert sweep2.support[lam] == expected


def test_verifiers_pass_at_p3():
    for check in (verify_simple, verify_equal, verify_block):
        for r in (1, 2):
            rep = check(3, r)
            assert rep.passed, rep.as_dict()


def test_verify_simple_over_quadratic_extension():
    rep = verify_simple(3, 1, ext=2)
    assert rep.passed and rep.cases == 3 * 81


def test_h0_remark_reports_agreement():
    rep = h0_remark(3, 1)
    assert rep.informational
    assert all(note.endswith("agree") for note in rep.notes)


def test_report_serialization():
    rep = verify_simple(3, 1)
    doc = rep.as_dict()
    assert doc["check"] == "simple"
    assert doc["passed"] is True and doc["mismatches"] == []
    assert "pass" in rep.summary()
