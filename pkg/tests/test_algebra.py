import numpy as np
import pytest

from cczcz import (
    MultivariableFunction,
    ParameterError,
    Params,
    digits,
    realize_complex,
    realize_phase,
    theta,
    undigits,
)


def test_params_validation():
    Params(2, 5, 2)
    Params(3, 3, 2, n=2)
    with pytest.raises(ParameterError):
        Params(4, 3, 1)  # composite p
    with pytest.raises(ParameterError):
        Params(2, 1, 1)  # m too small
    with pytest.raises(ParameterError):
        Params(2, 3, 3)  # k = m
    with pytest.raises(ParameterError):
        Params(2, 3, 0)


def test_lam_and_sizes():
    prm = Params(3, 4, 2, n=2)
    assert prm.lam == 9
    assert prm.length == 81
    assert prm.family_size == 9


@pytest.mark.parametrize(
    "i,p,m,want",
    [
        (0, 3, 3, (0, 0, 0)),
        (10, 3, 3, (1, 0, 1)),
        (31, 2, 5, (1, 1, 1, 1, 1)),
    ],
)
def test_digits_examples(i, p, m, want):
    assert tuple(digits(i, Params(p, m, 1))) == want


def test_digits_range_error():
    with pytest.raises(ParameterError):
        digits(27, Params(3, 3, 1))
    with pytest.raises(ParameterError):
        digits(-1, Params(3, 3, 1))


def test_undigits_examples():
    assert undigits((1, 0, 1), 3) == 10
    assert undigits((0, 0, 0, 0), 5) == 0
    assert undigits((2, 2, 2), 3) == 26


@pytest.mark.parametrize("p,m", [(2, 5), (3, 4), (5, 2), (3, 6)])
def test_digits_roundtrip_exhaustive(p, m):
    prm = Params(p, m, 1)
    for i in range(p**m):
        assert undigits(digits(i, prm), p) == i


def _ex1_function():
    prm = Params(2, 5, 2)
    return MultivariableFunction(
        prm, frozenset({(5, 3), (3, 1), (4, 2)}), (1, 0, 1, 0, 0), 0
    )


def test_evaluate_printed_entry():
    # 6th entry (index 5) of the reference first row is 1
    f = _ex1_function()
    assert f.evaluate((1, 0, 1, 0, 0)) == 1


def test_evaluate_zero_gives_constant():
    prm = Params(3, 3, 1, n=2)
    f = MultivariableFunction(prm, frozenset({(1, 2)}), (4, 5, 6), 7)
    assert f.evaluate((0, 0, 0)) == 7


def test_evaluate_ternary_hand_value():
    prm = Params(3, 3, 2)
    f = MultivariableFunction(prm, frozenset({(3, 2)}))
    assert f.evaluate((1, 1, 2)) == 2  # x3*x2 = 2*1 mod 3
    assert f.evaluate(digits(22, prm)) == 2


def test_evaluate_shape_error():
    f = _ex1_function()
    with pytest.raises(ParameterError):
        f.evaluate((1, 0, 1))


def test_integer_products_before_reduction():
    # digit product 2*2 = 4 contributes (lam/p)*4 mod lam; with p=2, lam=4
    # the coefficient is 2 and the term is 8 mod 4 = 0, not (2*(4 mod 4)) etc.
    prm = Params(2, 2, 1, n=2)
    f = MultivariableFunction(prm, frozenset({(1, 2)}))
    assert f.evaluate((1, 1)) == 2
    prm3 = Params(3, 2, 1, n=2)
    f3 = MultivariableFunction(prm3, frozenset({(1, 2)}))
    assert f3.evaluate((2, 2)) == (3 * 4) % 9


def test_realize_phase_printed_row(ex1_set):
    got = "".join(str(int(x)) for x in realize_phase(_ex1_function()).phases)
    assert got == "01011111011011000101000001100011"


def test_realize_phase_constant_function():
    prm = Params(3, 3, 1)
    f = MultivariableFunction(prm, frozenset(), (0, 0, 0), 2)
    assert np.array_equal(realize_phase(f).phases, np.full(27, 2))


def test_realize_phase_single_variable_alternates():
    prm = Params(2, 2, 1)
    assert tuple(theta(prm, 1).phases) == (0, 1, 0, 1)
    assert tuple(theta(prm, 2).phases) == (0, 0, 1, 1)


def test_realize_complex_examples():
    from cczcz import PhaseSequence

    s = PhaseSequence(np.array([0, 1]), 2)
    assert np.allclose(realize_complex(s), [1, -1])
    s3 = PhaseSequence(np.array([0, 1, 2]), 3)
    w = np.exp(2j * np.pi / 3)
    assert np.allclose(realize_complex(s3), [1, w, w**2])
    z = PhaseSequence(np.zeros(8, dtype=int), 4)
    assert np.allclose(realize_complex(z), np.ones(8))


def test_realize_complex_unit_magnitude():
    rng = np.random.default_rng(7)
    from cczcz import PhaseSequence

    for lam in (2, 3, 4, 9):
        s = PhaseSequence(rng.integers(0, lam, size=50), lam)
        assert np.abs(np.abs(realize_complex(s)) - 1).max() < 1e-12


def test_constant_shift_property():
    from dataclasses import replace

    rng = np.random.default_rng(3)
    prm = Params(3, 3, 1, n=2)
    for _ in range(10):
        pairs = frozenset({(1, 2), (2, 3)})
        g = tuple(rng.integers(0, 9, size=3).tolist())
        c = int(rng.integers(0, 9))
        f = MultivariableFunction(prm, pairs, g, 0)
        base = realize_phase(f).phases
        shifted = realize_phase(replace(f, constant=c)).phases
        assert np.array_equal(shifted, (base + c) % 9)


def test_linear_function_is_combination_of_single_variables():
    rng = np.random.default_rng(11)
    prm = Params(3, 4, 1)
    for _ in range(10):
        g = rng.integers(0, 3, size=4)
        f = MultivariableFunction(prm, frozenset(), tuple(g.tolist()), 0)
        combo = sum(int(g[a]) * theta(prm, a + 1).phases for a in range(4)) % 3
        assert np.array_equal(realize_phase(f).phases, combo)


@pytest.mark.parametrize("p,m", [(2, 4), (3, 3), (5, 2)])
def test_single_variable_balance(p, m):
    # each single-variable sequence takes every residue p**(m-1) times
    prm = Params(p, m, 1)
    for alpha in range(1, m + 1):
        counts = np.bincount(theta(prm, alpha).phases, minlength=p)
        assert (counts == p ** (m - 1)).all()
