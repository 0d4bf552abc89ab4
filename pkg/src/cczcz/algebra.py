"""p-ary index arithmetic, second-order multivariable functions, and their
realization as phase / complex sequences.

Index convention: an index 0 <= i < p**m is identified with its base-p digit
vector (i_1, ..., i_m), least significant digit first, so variable x_s reads
the coefficient of p**(s-1).  All sequences produced here are indexed this way.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import lru_cache

import numpy as np


class ParameterError(ValueError):
    """Invalid construction parameter."""


def is_prime(x: int) -> bool:
    """Primality by trial division (parameters here are tiny)."""
    if x < 2:
        return False
    d = 2
    while d * d <= x:
        if x % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class Params:
    """Global parameters: p prime, m variables, k partition blocks, alphabet p**n."""

    p: int
    m: int
    k: int
    n: int = 1

    def __post_init__(self):
        if not is_prime(self.p):
            raise ParameterError(f"p = {self.p} is not prime")
        if self.m < 2:
            raise ParameterError(f"m = {self.m} must be >= 2")
        if not 1 <= self.k <= self.m - 1:
            raise ParameterError(f"k = {self.k} outside 1..m-1 = 1..{self.m - 1}")
        if self.n < 1:
            raise ParameterError(f"n = {self.n} must be >= 1")

    @property
    def lam(self) -> int:
        """Alphabet size p**n."""
        return self.p**self.n

    @property
    def length(self) -> int:
        """Sequence length p**m."""
        return self.p**self.m

    @property
    def family_size(self) -> int:
        """Number of codes / rows per code, p**k."""
        return self.p**self.k


@lru_cache(maxsize=None)
def digit_matrix(p: int, m: int) -> np.ndarray:
    """(p**m, m) matrix whose row i is the digit vector of i (read-only)."""
    i = np.arange(p**m)
    d = np.stack([(i // p**s) % p for s in range(m)], axis=1)
    d.flags.writeable = False
    return d


def digits(i: int, params: Params) -> np.ndarray:
    """Base-p digit vector of i, least significant first, length m."""
    if not 0 <= i < params.length:
        raise ParameterError(f"index {i} outside 0..{params.length - 1}")
    return np.array([(i // params.p**s) % params.p for s in range(params.m)])


def undigits(v, p: int) -> int:
    """Inverse of :func:`digits`: sum of v[s] * p**s."""
    v = np.asarray(v)
    return int(v @ p ** np.arange(len(v)))


@dataclass(frozen=True)
class MultivariableFunction:
    """Second-order function Z_p^m -> Z_lam.

    quad_pairs holds unordered variable index pairs (1-based); every quadratic
    term carries the fixed coefficient lam/p.  linear is the coefficient
    vector g over Z_lam, constant the additive offset.
    """

    params: Params
    quad_pairs: frozenset = field(default_factory=frozenset)
    linear: tuple = ()
    constant: int = 0

    def __post_init__(self):
        m, lam = self.params.m, self.params.lam
        pairs = frozenset(tuple(sorted(pr)) for pr in self.quad_pairs)
        for a, b in pairs:
            if a == b or not (1 <= a <= m and 1 <= b <= m):
                raise ParameterError(f"bad quadratic pair ({a}, {b})")
        object.__setattr__(self, "quad_pairs", pairs)
        g = tuple(int(c) % lam for c in self.linear) if self.linear else (0,) * m
        if len(g) != m:
            raise ParameterError(f"linear coefficient vector has length {len(g)}, want {m}")
        object.__setattr__(self, "linear", g)
        object.__setattr__(self, "constant", int(self.constant) % lam)

    def evaluate(self, x) -> int:
        """Value at a digit vector x; digit products are taken over the
        integers before reduction mod lam."""
        x = np.asarray(x, dtype=np.int64)
        if x.shape != (self.params.m,):
            raise ParameterError(f"argument has shape {x.shape}, want ({self.params.m},)")
        lam, p = self.params.lam, self.params.p
        quad = sum(int(x[a - 1]) * int(x[b - 1]) for a, b in self.quad_pairs)
        lin = int(np.asarray(self.linear, dtype=np.int64) @ x)
        return ((lam // p) * quad + lin + self.constant) % lam

    def plus_constant(self, c: int) -> "MultivariableFunction":
        return replace(self, constant=(self.constant + c) % self.params.lam)


@dataclass(frozen=True, eq=False)
class PhaseSequence:
    """Sequence of residues mod lam (immutable int array)."""

    phases: np.ndarray
    lam: int

    def __post_init__(self):
        ph = np.ascontiguousarray(np.asarray(self.phases, dtype=np.int64) % self.lam)
        ph.flags.writeable = False
        object.__setattr__(self, "phases", ph)

    def __len__(self) -> int:
        return len(self.phases)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PhaseSequence)
            and self.lam == other.lam
            and np.array_equal(self.phases, other.phases)
        )

    def __hash__(self):
        return hash((self.lam, self.phases.tobytes()))


def realize_phase(f: MultivariableFunction) -> PhaseSequence:
    """Phase sequence of f over all p**m indices (digit convention above)."""
    prm = f.params
    D = digit_matrix(prm.p, prm.m)
    quad = np.zeros(prm.length, dtype=np.int64)
    for a, b in f.quad_pairs:
        quad = quad + D[:, a - 1] * D[:, b - 1]
    g = np.asarray(f.linear, dtype=np.int64)
    phases = ((prm.lam // prm.p) * quad + D @ g + f.constant) % prm.lam
    return PhaseSequence(phases, prm.lam)


def realize_complex(s: PhaseSequence) -> np.ndarray:
    """Unit-circle realization exp(2*pi*i*phase/lam) as a complex128 vector."""
    return np.exp(2j * np.pi * s.phases / s.lam)


def theta(params: Params, alpha: int) -> PhaseSequence:
    """Phase sequence of the single variable x_alpha (coefficient 1)."""
    g = [0] * params.m
    g[alpha - 1] = 1
    return realize_phase(MultivariableFunction(params, frozenset(), tuple(g), 0))
