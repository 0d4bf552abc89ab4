import cmath

import numpy as np
import pytest

from cczcz import CyclotomicValue, PhaseSequence, accf, code_accf, pccf
from cczcz.correlation import (
    AperiodicCorrelator,
    PeriodicCorrelator,
    accf_profile,
    aperiodic_code_counts,
    counts_are_zero,
    factor_prime_power,
    pccf_profile,
    pccf_profile_fast,
    periodic_rowpair_counts,
)


def brute_accf(a, b, tau, lam):
    """Independent oracle: literal two-branch summation."""
    L = len(a)
    w = cmath.exp(2j * cmath.pi / lam)
    if tau >= 0:
        return sum(w ** int(a[i]) * (w ** int(b[i + tau])).conjugate() for i in range(L - tau))
    return sum(w ** int(a[i - tau]) * (w ** int(b[i])).conjugate() for i in range(L + tau))


def brute_pccf(a, b, tau, lam):
    L = len(a)
    w = cmath.exp(2j * cmath.pi / lam)
    return sum(
        w ** int(a[i]) * (w ** int(b[(i + tau) % L])).conjugate() for i in range(L)
    )


def seq(vals, lam):
    return PhaseSequence(np.array(vals, dtype=np.int64), lam)


# ---------------------------------------------------------------- cyclotomic


def test_factor_prime_power():
    assert factor_prime_power(8) == (2, 3)
    assert factor_prime_power(27) == (3, 3)
    assert factor_prime_power(5) == (5, 1)
    for bad in (1, 6, 12, 100):
        with pytest.raises(ValueError):
            factor_prime_power(bad)


def test_cyclotomic_zero_iff_classes_equal():
    # lam = 9: zero iff the three coefficients of each residue class mod 3 agree
    v = CyclotomicValue(np.array([1, 2, 0, 1, 2, 0, 1, 2, 0]), 9)
    assert v.is_zero
    v2 = CyclotomicValue(np.array([1, 2, 0, 1, 2, 0, 1, 2, 1]), 9)
    assert not v2.is_zero
    assert abs(v.embed()) < 1e-12
    assert abs(v2.embed()) > 1e-9


def test_cyclotomic_random_embedding_agreement():
    rng = np.random.default_rng(2024)
    for _ in range(500):
        lam = int(rng.choice([2, 3, 4, 8, 9, 27]))
        p, n = factor_prime_power(lam)
        coeffs = rng.integers(-100, 101, size=lam)
        if rng.random() < 0.5:
            # exact zero: random multiple of the cyclotomic polynomial
            q = lam // p
            mult = np.zeros(lam, dtype=np.int64)
            for s in range(q):
                c = rng.integers(-100, 101)
                mult[s::q] += c
            coeffs = mult
        v = CyclotomicValue(coeffs, lam)
        assert v.is_zero == (abs(v.embed()) < 1e-9 * (1 + np.abs(coeffs).sum()))


def test_cyclotomic_embedding_tolerance():
    rng = np.random.default_rng(5)
    for lam in (3, 8, 9):
        coeffs = rng.integers(-100, 101, size=lam)
        v = CyclotomicValue(coeffs, lam)
        direct = sum(int(c) * cmath.exp(2j * cmath.pi * j / lam) for j, c in enumerate(coeffs))
        assert abs(v.embed() - direct) < 1e-9 * np.abs(coeffs).sum()


def test_cyclotomic_arithmetic_and_conjugate():
    a = CyclotomicValue(np.array([3, -1, 2]), 3)
    b = CyclotomicValue(np.array([0, 1, 1]), 3)
    assert abs((a + b).embed() - (a.embed() + b.embed())) < 1e-12
    assert abs((a - b).embed() - (a.embed() - b.embed())) < 1e-12
    assert abs(a.conjugate().embed() - a.embed().conjugate()) < 1e-12
    assert a == a and not (a == b)
    assert CyclotomicValue.from_integer(4, 3) == 4


def test_cyclotomic_reduced_is_canonical():
    v = CyclotomicValue(np.array([5, 2, 2]), 3)
    r = v.reduced()
    assert r[2] == 0 and abs(v.embed() - CyclotomicValue(r + 0, 3).embed()) < 1e-12


# ---------------------------------------------------------------- accf/pccf


def test_accf_energy_peak():
    a = seq([0, 1, 1, 0, 2], 3)
    v = accf(a, a, 0)
    assert v == 5
    assert v.coeffs[0] == 5


def test_accf_hand_values():
    a = seq([0, 0, 0, 1], 2)
    b = seq([0, 0, 1, 0], 2)
    assert abs(accf(a, b, 1).embed() - 1) < 1e-12
    assert abs(accf(b, b, 1).embed() + 1) < 1e-12
    # the pairwise sums cancel: this is the complementary-pair relation
    assert (accf(a, a, 1) + accf(b, b, 1)).is_zero


def test_accf_cross_rows_at_zero(ex1_set):
    rows = ex1_set.codes[0].rows
    assert accf(rows[0], rows[1], 0).is_zero


def test_accf_errors():
    a = seq([0, 1, 0, 1], 2)
    with pytest.raises(ValueError):
        accf(a, seq([0, 1], 2), 0)
    with pytest.raises(ValueError):
        accf(a, a, 4)
    with pytest.raises(ValueError):
        accf(a, a, -4)
    with pytest.raises(ValueError):
        accf(a, seq([0, 1, 0, 1], 4), 0)


def test_accf_matches_brute_force_both_branches():
    rng = np.random.default_rng(42)
    for lam in (2, 3, 4, 9):
        a = rng.integers(0, lam, size=12)
        b = rng.integers(0, lam, size=12)
        sa, sb = seq(a, lam), seq(b, lam)
        for tau in range(-11, 12):
            assert abs(accf(sa, sb, tau).embed() - brute_accf(a, b, tau, lam)) < 1e-9


def test_pccf_peak_and_hand_value():
    a = seq([0, 0, 0, 1], 2)
    assert pccf(a, a, 0) == 4
    assert pccf(a, a, 1).is_zero  # 1 + 1 - 1 - 1


def test_pccf_matches_brute_force_any_tau():
    rng = np.random.default_rng(43)
    for lam in (2, 3, 9):
        a = rng.integers(0, lam, size=10)
        b = rng.integers(0, lam, size=10)
        sa, sb = seq(a, lam), seq(b, lam)
        for tau in (-13, -1, 0, 1, 5, 9, 10, 23):
            assert abs(pccf(sa, sb, tau).embed() - brute_pccf(a, b, tau, lam)) < 1e-9


def test_pccf_splits_into_aperiodic_parts():
    # P(a,b)(tau) = A(a,b)(tau) + conj-coefficients of A(b,a)(L-tau)
    rng = np.random.default_rng(44)
    for lam in (2, 3, 4):
        a = rng.integers(0, lam, size=9)
        b = rng.integers(0, lam, size=9)
        sa, sb = seq(a, lam), seq(b, lam)
        for tau in range(1, 9):
            lhs = pccf(sa, sb, tau)
            rhs = accf(sa, sb, tau) + accf(sb, sa, 9 - tau).conjugate()
            assert (lhs - rhs).is_zero


def test_conjugate_symmetry():
    rng = np.random.default_rng(45)
    for lam in (2, 3, 9):
        a = rng.integers(0, lam, size=8)
        b = rng.integers(0, lam, size=8)
        sa, sb = seq(a, lam), seq(b, lam)
        for tau in range(-7, 8):
            lhs = accf(sa, sb, -tau)
            rhs = accf(sb, sa, tau).conjugate()
            assert (lhs - rhs).is_zero


def test_constant_offset_invariance():
    # adding constants c1, c2 rotates cross-correlations by w**(c1-c2) and
    # leaves autocorrelations unchanged -- exact, at the count level
    rng = np.random.default_rng(46)
    for lam in (2, 3, 9):
        a = rng.integers(0, lam, size=10)
        b = rng.integers(0, lam, size=10)
        c1, c2 = int(rng.integers(0, lam)), int(rng.integers(0, lam))
        sa, sb = seq(a, lam), seq(b, lam)
        sa2, sb2 = seq((a + c1) % lam, lam), seq((b + c2) % lam, lam)
        for tau in range(-9, 10):
            base = accf(sa, sb, tau).coeffs
            rotated = accf(sa2, sb2, tau).coeffs
            assert np.array_equal(rotated, np.roll(base, (c1 - c2) % lam))
            assert np.array_equal(accf(sa2, sa2, tau).coeffs, accf(sa, sa, tau).coeffs)


def test_linear_difference_orthogonal_at_zero_shift():
    # rows differing by a nonzero linear form are orthogonal at shift 0
    from cczcz import MultivariableFunction, realize_phase

    rng = np.random.default_rng(47)
    for p, m in ((2, 4), (3, 3), (5, 2)):
        prm_kwargs = dict(p=p, m=m, k=1)
        from cczcz import Params

        prm = Params(**prm_kwargs)
        for _ in range(5):
            g1 = rng.integers(0, p, size=m)
            g2 = rng.integers(0, p, size=m)
            if np.array_equal(g1, g2):
                g2 = (g2 + np.eye(m, dtype=int)[0]) % p
            f1 = MultivariableFunction(prm, frozenset({(1, 2)}), tuple(g1.tolist()), 0)
            f2 = MultivariableFunction(prm, frozenset({(1, 2)}), tuple(g2.tolist()), 0)
            assert pccf(realize_phase(f1), realize_phase(f2), 0).is_zero


# ---------------------------------------------------------------- code level


def test_code_accf_examples(ex1_set):
    C0, C1 = ex1_set.codes[0], ex1_set.codes[1]
    assert code_accf(C0, C0, 0) == 128
    assert code_accf(C0, C0, 5).is_zero
    assert code_accf(C0, C1, 0).is_zero


def test_code_accf_row_count_mismatch(ex1_set):
    C0 = ex1_set.codes[0]
    with pytest.raises(ValueError):
        code_accf(C0.rows, C0.rows[:2], 0)


# ---------------------------------------------------------------- profiles


def test_profiles_match_single_shift_calls():
    rng = np.random.default_rng(48)
    a = seq(rng.integers(0, 3, size=9), 3)
    b = seq(rng.integers(0, 3, size=9), 3)
    ap = accf_profile(a, b)
    assert ap.shifts == tuple(range(-8, 9))
    for s, v in zip(ap.shifts, ap.values):
        assert (v - accf(a, b, s)).is_zero
    pp = pccf_profile(a, b)
    for s, v in zip(pp.shifts, pp.values):
        assert (v - pccf(a, b, s)).is_zero


def test_pccf_profile_fast_agrees(ex1_set):
    rows = ex1_set.codes[0].rows
    for a, b in [(rows[0], rows[1]), (rows[2], rows[3]), (rows[0], rows[0])]:
        shifts, fast = pccf_profile_fast(a, b)
        exact = pccf_profile(a, b).embed()
        assert np.abs(fast - exact).max() < 1e-6 * len(a)


def test_pccf_profile_fast_random_ternary():
    rng = np.random.default_rng(49)
    a = seq(rng.integers(0, 3, size=27), 3)
    b = seq(rng.integers(0, 3, size=27), 3)
    _, fast = pccf_profile_fast(a, b)
    exact = pccf_profile(a, b).embed()
    assert np.abs(fast - exact).max() < 1e-6 * 27


def test_pccf_profile_fast_all_ones():
    a = seq(np.zeros(16, dtype=int), 2)
    _, fast = pccf_profile_fast(a, a)
    assert np.abs(fast - 16).max() < 1e-6 * 16


# ---------------------------------------------------------------- engines


def test_aperiodic_code_counts_matches_direct():
    rng = np.random.default_rng(50)
    for lam in (2, 3, 4):
        M, L, K = 3, 11, 4
        rows1 = rng.integers(0, lam, size=(M, L))
        many = rng.integers(0, lam, size=(K, M, L))
        taus, counts = aperiodic_code_counts(rows1, many, lam)
        for x in range(K):
            for s, tau in enumerate(taus):
                direct = code_accf(
                    [seq(r, lam) for r in rows1],
                    [seq(r, lam) for r in many[x]],
                    int(tau),
                )
                assert np.array_equal(counts[x, s], direct.coeffs)


def test_periodic_rowpair_counts_matches_direct():
    rng = np.random.default_rng(51)
    for lam in (2, 3, 9):
        M, L = 4, 9
        rows = rng.integers(0, lam, size=(M, L))
        counts = periodic_rowpair_counts(rows, lam)
        for i in range(M):
            for j in range(M):
                for u in range(L):
                    direct = pccf(seq(rows[i], lam), seq(rows[j], lam), u)
                    assert np.array_equal(counts[i, j, u], direct.coeffs)


def test_periodic_correlator_lazy_and_table_paths_agree():
    rng = np.random.default_rng(52)
    rows = rng.integers(0, 3, size=(5, 27))
    lazy = PeriodicCorrelator(rows, 3)
    few = lazy.counts_at([0, 1, 2, 26])
    table = PeriodicCorrelator(rows, 3)
    table._build_table()
    assert np.array_equal(few, table.counts_at([0, 1, 2, 26]))


def test_counts_are_zero_matches_cyclotomic():
    rng = np.random.default_rng(53)
    for lam in (2, 3, 4, 9):
        counts = rng.integers(0, 6, size=(40, lam))
        flags = counts_are_zero(counts, lam)
        for row, flag in zip(counts, flags):
            assert flag == CyclotomicValue(row, lam).is_zero


def test_correlator_shape_validation():
    with pytest.raises(ValueError):
        AperiodicCorrelator(np.zeros((2, 4), dtype=int), 2)
