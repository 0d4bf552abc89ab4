"""Generalized Reed-Muller machinery: generator matrices, dimension and
minimum-distance formulas, anchored second-order coset representatives with
their counting formulas, and exact coset membership over a prime field.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .algebra import ParameterError, PhaseSequence, is_prime
from .construct import _compositions, _distributions
from .correlation import factor_prime_power


@dataclass(frozen=True)
class Monomial:
    """Exponent vector of x_1**e_1 * ... * x_m**e_m with entries <= lam-1."""

    exponents: tuple

    @property
    def degree(self) -> int:
        return sum(self.exponents)


def monomials(lam: int, m: int, r: int):
    """The monomial basis of degree <= r with per-variable exponent cap lam-1."""
    out = []
    for exps in itertools.product(range(min(lam - 1, r) + 1), repeat=m):
        if sum(exps) <= r:
            out.append(Monomial(exps))
    return sorted(out, key=lambda mo: (mo.degree, mo.exponents))


def grm_dimension(lam: int, m: int, r: int) -> int:
    """Code dimension sum_{d=0}^{r} C(m-1+d, d)."""
    if not 0 <= r <= lam:
        raise ParameterError(f"order r = {r} outside 0..lam = {lam}")
    return sum(math.comb(m - 1 + d, d) for d in range(r + 1))


def grm_min_distance(lam: int, m: int, r: int) -> int:
    """Minimum Hamming distance (R+1) * p**Q, where m(p-1) - r = Q(p-1) + R."""
    p, _ = factor_prime_power(lam)
    if not 0 <= r <= m * (p - 1):
        raise ParameterError(f"order r = {r} outside 0..m(p-1) = {m * (p - 1)}")
    q, rem = divmod(m * (p - 1) - r, p - 1)
    return (rem + 1) * p**q


def generator_matrix(lam: int, m: int, r: int) -> np.ndarray:
    """Rows are the evaluations of the degree-<=r monomials over all lam**m
    points (digits base lam, least significant first), entries mod lam."""
    pts = np.stack(
        [(np.arange(lam**m) // lam**s) % lam for s in range(m)], axis=1
    ).astype(np.int64)
    rows = []
    for mo in monomials(lam, m, r):
        val = np.ones(lam**m, dtype=np.int64)
        for s, e in enumerate(mo.exponents):
            for _ in range(e):
                val = (val * pts[:, s]) % lam
        rows.append(val)
    return np.stack(rows)


@dataclass(frozen=True)
class CosetRep:
    """Canonical second-order coset representative: a disjoint path system,
    stored as its sorted adjacent-pair set."""

    pairs: frozenset
    source: str  # "theorem1" | "theorem2"


def _anchored_path_systems(p: int, m: int, k: int, source: str):
    """Yield path systems (tuples of paths) matching the source's anchors."""
    anchors_head = [m - beta + 1 for beta in range(1, k + 1)]
    anchors_tail = [m - k + beta for beta in range(1, k + 1)]
    if source == "theorem1":
        # heads fixed: block beta starts at m-beta+1, block 1 continues at m-k
        free = [x for x in range(1, m + 1) if x not in anchors_head and x != m - k]
        for sizes in _compositions(len(free), k):
            for groups in _distributions(free, sizes):
                for tails in itertools.product(*(itertools.permutations(g) for g in groups)):
                    yield tuple(
                        (anchors_head[0], m - k) + tails[0]
                        if b == 0
                        else (anchors_head[b],) + tails[b]
                        for b in range(k)
                    )
    elif source == "theorem2":
        # tails fixed: block beta ends at m-k+beta, block k arrives via m-k
        free = [x for x in range(1, m + 1) if x not in anchors_tail and x != m - k]
        for sizes in _compositions(len(free), k):
            for groups in _distributions(free, sizes):
                for heads in itertools.product(*(itertools.permutations(g) for g in groups)):
                    yield tuple(
                        heads[b] + (m - k, anchors_tail[b])
                        if b == k - 1
                        else heads[b] + (anchors_tail[b],)
                        for b in range(k)
                    )
    else:
        raise ParameterError(f"unknown source {source!r}")


def enumerate_coset_reps(p: int, m: int, k: int, source: str = "theorem1") -> set:
    """All distinct quadratic forms of anchored path systems, as pair sets.

    Distinctness is polynomial identity: two systems with the same unordered
    adjacent-pair set give the same form.
    """
    if not (is_prime(p) and 1 <= k <= m - 1):
        raise ParameterError(f"bad parameters p={p}, m={m}, k={k}")
    reps = set()
    for system in _anchored_path_systems(p, m, k, source):
        pairs = frozenset(
            tuple(sorted((path[i], path[i + 1])))
            for path in system
            for i in range(len(path) - 1)
        )
        reps.add(CosetRep(pairs, source))
    return reps


def _multinomial(total: int, parts) -> int:
    if any(x < 0 for x in parts) or sum(parts) != total:
        return 0
    out = math.factorial(total)
    for x in parts:
        out //= math.factorial(x)
    return out


def count_coset_reps(p: int, m: int, k: int, source: str = "theorem1") -> int:
    """Closed-form count of anchored coset representatives.

    Sums, over block-size compositions n_1 + ... + n_k = m, the multinomial
    placement of the unanchored variables times the interior orderings of
    each block.  Must agree with len(enumerate_coset_reps).
    """
    if not (is_prime(p) and 1 <= k <= m - 1):
        raise ParameterError(f"bad parameters p={p}, m={m}, k={k}")
    total = 0
    for comp in _all_compositions(m, k):
        n = list(comp)
        if source == "theorem1":
            if n[0] < 2 or any(x < 1 for x in n[1:]):
                continue
            parts = [n[0] - 2] + [x - 1 for x in n[1:]]
            orderings = math.factorial(n[0] - 2)
            for x in n[1:]:
                orderings *= math.factorial(x - 1)
        elif source == "theorem2":
            if n[-1] < 2 or any(x < 1 for x in n[:-1]):
                continue
            parts = [x - 1 for x in n[:-1]] + [n[-1] - 2]
            orderings = math.factorial(n[-1] - 2)
            for x in n[:-1]:
                orderings *= math.factorial(x - 1)
        else:
            raise ParameterError(f"unknown source {source!r}")
        total += _multinomial(m - k - 1, parts) * orderings
    return total


def _all_compositions(total: int, k: int):
    for cuts in itertools.combinations(range(1, total), k - 1):
        bounds = (0,) + cuts + (total,)
        yield tuple(bounds[i + 1] - bounds[i] for i in range(k))


def count_sets_in_coset(p: int, m: int, k: int) -> tuple[int, int]:
    """(number of zone code sets, number of zone sequence sets) inside one
    second-order coset, in the pi_1(2) = m-k regime."""
    return p ** (m - k + 1), p ** (m + 1)


def coset_membership(s: PhaseSequence, rep: CosetRep) -> bool:
    """True iff s minus the representative's quadratic form is an affine
    codeword, i.e. lies in the first-order code's row space over Z_p.

    Supported for prime alphabets only; membership is decided by solving the
    affine system exactly and checking consistency at every point.
    """
    p = s.lam
    if not is_prime(p):
        raise ParameterError(f"coset membership needs a prime alphabet, got {p}")
    L = len(s)
    m = round(math.log(L, p))
    if p**m != L:
        raise ParameterError(f"length {L} is not a power of {p}")
    pts = np.stack([(np.arange(L) // p**t) % p for t in range(m)], axis=1)
    quad = np.zeros(L, dtype=np.int64)
    for a, b in rep.pairs:
        quad += pts[:, a - 1] * pts[:, b - 1]
    resid = (s.phases - quad) % p
    # solve resid = c0 + sum c_t x_t: unit-vector points give the system's
    # triangular part, then every point is checked
    c0 = int(resid[0])
    coef = np.array([(int(resid[p**t]) - c0) % p for t in range(m)], dtype=np.int64)
    return bool(np.array_equal((c0 + pts @ coef) % p, resid))
