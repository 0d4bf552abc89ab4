"""Builders for the code families: seed CCC, the two anchored-permutation
CC-ZCZ constructions, and the column-PMEPR-reduced variant.

A partition is given as ordered paths: path beta lists
pi_beta(1), ..., pi_beta(n_beta), i.e. the block E_beta together with its
bijection.  Code u has p**k rows indexed by v; both u and v expand to base-p
digit vectors least significant digit first, matching the sequence index
convention.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .algebra import (
    MultivariableFunction,
    ParameterError,
    Params,
    PhaseSequence,
    realize_phase,
)


class ConstraintError(ValueError):
    """A builder precondition on the partition is violated."""


@dataclass(frozen=True)
class Partition:
    """Ordered partition of {1..m}: disjoint paths covering all variables."""

    params: Params
    paths: tuple

    def __post_init__(self):
        paths = tuple(tuple(int(x) for x in path) for path in self.paths)
        object.__setattr__(self, "paths", paths)
        m, k = self.params.m, self.params.k
        if len(paths) != k:
            raise ConstraintError(f"{len(paths)} blocks given, k = {k}")
        seen = [x for path in paths for x in path]
        if sorted(seen) != list(range(1, m + 1)):
            raise ConstraintError(f"paths {paths} do not partition 1..{m}")
        if len(paths[0]) < 2:
            raise ConstraintError("first block must have at least 2 elements")
        if any(len(path) == 0 for path in paths):
            raise ConstraintError("empty block")

    @property
    def block_sizes(self) -> tuple:
        return tuple(len(path) for path in self.paths)

    def quad_pairs(self) -> frozenset:
        """Adjacent-pair set of the path system (the quadratic form)."""
        return frozenset(
            tuple(sorted((path[i], path[i + 1])))
            for path in self.paths
            for i in range(len(path) - 1)
        )


@dataclass(frozen=True, eq=False)
class CodeMatrix:
    """One code: p**k phase rows of length p**m, labelled by u."""

    rows: tuple
    label: int
    provenance: dict

    def __post_init__(self):
        lams = {r.lam for r in self.rows}
        lens = {len(r) for r in self.rows}
        if len(lams) != 1 or len(lens) != 1:
            raise ValueError("rows disagree in alphabet or length")

    @property
    def lam(self) -> int:
        return self.rows[0].lam

    @property
    def shape(self) -> tuple:
        return (len(self.rows), len(self.rows[0]))

    def phase_matrix(self) -> np.ndarray:
        return np.stack([r.phases for r in self.rows])


@dataclass(frozen=True, eq=False)
class CodeSet:
    """Family of p**k codes; claimed_Z is set by the zone builders."""

    codes: tuple
    claimed_Z: int | None
    provenance: dict

    def __post_init__(self):
        shapes = {c.shape for c in self.codes}
        if len(shapes) != 1:
            raise ValueError("codes disagree in shape")

    @property
    def lam(self) -> int:
        return self.codes[0].lam

    def phase_array(self) -> np.ndarray:
        """(K, M, L) integer phase array of the whole family."""
        return np.stack([c.phase_matrix() for c in self.codes])


def _norm_g(params: Params, g) -> tuple:
    if g is None:
        return (0,) * params.m
    g = tuple(int(x) % params.lam for x in g)
    if len(g) != params.m:
        raise ParameterError(f"g has length {len(g)}, want {params.m}")
    return g


def build_seed_function(part: Partition, g=None, b0: int = 0) -> MultivariableFunction:
    """Seed function: path quadratics with coefficient lam/p, plus g and b0."""
    return MultivariableFunction(part.params, part.quad_pairs(), _norm_g(part.params, g), b0)


def _label_digits(params: Params, label: int, name: str) -> list:
    if not 0 <= label < params.family_size:
        raise ParameterError(f"{name} = {label} outside 0..{params.family_size - 1}")
    return [(label // params.p**s) % params.p for s in range(params.k)]


def build_row(part: Partition, g, b0: int, u_k: int, v_k: int) -> PhaseSequence:
    """Row v_k of code u_k: seed plus (lam/p) * (u on block heads, v on block tails)."""
    prm = part.params
    ud = _label_digits(prm, u_k, "u_k")
    vd = _label_digits(prm, v_k, "v_k")
    c = prm.lam // prm.p
    g2 = list(_norm_g(prm, g))
    for beta, path in enumerate(part.paths):
        g2[path[0] - 1] += c * ud[beta]
        g2[path[-1] - 1] += c * vd[beta]
    return realize_phase(MultivariableFunction(prm, part.quad_pairs(), tuple(g2), b0))


def _provenance(builder: str, part: Partition, g, b0: int, **extra) -> dict:
    prm = part.params
    prov = {
        "builder": builder,
        "p": prm.p,
        "n": prm.n,
        "m": prm.m,
        "k": prm.k,
        "paths": [list(path) for path in part.paths],
        "g": list(_norm_g(prm, g)),
        "b0": int(b0) % prm.lam,
    }
    prov.update(extra)
    return prov


def build_ccc(part: Partition, g=None, b0: int = 0) -> CodeSet:
    """The seed family {C_u : 0 <= u < p**k}, a (p**k, p**k, p**m) CCC."""
    prm = part.params
    K = prm.family_size
    prov = _provenance("ccc", part, g, b0)
    codes = tuple(
        CodeMatrix(
            tuple(build_row(part, g, b0, u, v) for v in range(K)),
            label=u,
            provenance=prov,
        )
        for u in range(K)
    )
    return CodeSet(codes, claimed_Z=None, provenance=prov)


def _with_claim(base: CodeSet, claimed_Z: int, prov: dict) -> CodeSet:
    codes = tuple(
        CodeMatrix(c.rows, c.label, prov) for c in base.codes
    )
    return CodeSet(codes, claimed_Z=claimed_Z, provenance=prov)


def build_cczcz_theorem1(part: Partition, g=None, b0: int = 0, strict: bool = True) -> CodeSet:
    """Head-anchored zone construction: pi_beta(1) = m - beta + 1.

    Claimed zone width (p-1) * p**(pi_1(2)-1) is recorded from the formula;
    with strict=False any partition is accepted and the claim is still
    computed but not guaranteed.
    """
    prm = part.params
    if strict:
        for beta, path in enumerate(part.paths, start=1):
            want = prm.m - beta + 1
            if path[0] != want:
                raise ConstraintError(
                    f"block {beta} starts at {path[0]}, strict head anchor requires {want}"
                )
    claimed = (prm.p - 1) * prm.p ** (part.paths[0][1] - 1)
    prov = _provenance("thm1", part, g, b0, strict=bool(strict), claimed_Z=claimed)
    return _with_claim(build_ccc(part, g, b0), claimed, prov)


def build_cczcz_theorem2(part: Partition, g=None, b0: int = 0, strict: bool = True) -> CodeSet:
    """Tail-anchored zone construction: pi_beta(n_beta) = m - k + beta.

    The zone width (p-1) * p**(pi_k(n_k - 1) - 1) is delivered by grouping
    rows over the head labels, which is the same thing as the head-anchored
    construction on the reversed, relabelled paths; the builder realizes it
    that way (the quadratic form is reversal-invariant, so the seed function
    is unchanged).
    """
    prm = part.params
    if len(part.paths[-1]) < 2:
        raise ConstraintError("last block needs >= 2 elements for the zone width")
    if strict:
        for beta, path in enumerate(part.paths, start=1):
            want = prm.m - prm.k + beta
            if path[-1] != want:
                raise ConstraintError(
                    f"block {beta} ends at {path[-1]}, strict tail anchor requires {want}"
                )
    claimed = (prm.p - 1) * prm.p ** (part.paths[-1][-2] - 1)
    prov = _provenance("thm2", part, g, b0, strict=bool(strict), claimed_Z=claimed)
    flipped = Partition(prm, tuple(tuple(reversed(path)) for path in reversed(part.paths)))
    return _with_claim(build_ccc(flipped, g, b0), claimed, prov)


def build_pmepr_reduced(
    part: Partition,
    g=None,
    b0: int = 0,
    pi_prime=None,
    t: int = 0,
    l: int = 0,
) -> CodeSet:
    """Head-anchored construction with quadratic column coupling.

    Row v gains a quadratic form in the digits of v (path pi_prime over the
    block indices 1..k) plus offsets t, l; every column sequence then joins a
    complementary set of p sequences of length p**k, capping column PMEPR
    at p.  Row correlations change only by per-row constants.
    """
    prm = part.params
    k, p, lam = prm.k, prm.p, prm.lam
    if pi_prime is None:
        pi_prime = tuple(range(1, k + 1))
    pi_prime = tuple(int(x) for x in pi_prime)
    if sorted(pi_prime) != list(range(1, k + 1)):
        raise ConstraintError(f"pi_prime {pi_prime} is not a permutation of 1..{k}")
    if not (0 <= t < p and 0 <= l < p):
        raise ParameterError("t and l must be residues mod p")
    for beta, path in enumerate(part.paths, start=1):
        want = prm.m - beta + 1
        if path[0] != want:
            raise ConstraintError(
                f"block {beta} starts at {path[0]}, head anchor requires {want}"
            )

    c = lam // p
    claimed = (p - 1) * p ** (part.paths[0][1] - 1)
    prov = _provenance(
        "pmepr-reduced", part, g, b0,
        strict=True, claimed_Z=claimed, pi_prime=list(pi_prime), t=int(t), l=int(l),
    )
    g0 = _norm_g(prm, g)
    K = prm.family_size
    codes = []
    for u in range(K):
        ud = _label_digits(prm, u, "u_k")
        rows = []
        for v in range(K):
            vd = _label_digits(prm, v, "v_k")
            g2 = list(g0)
            for beta, path in enumerate(part.paths):
                g2[path[0] - 1] += c * ud[beta]
                g2[path[-1] - 1] += vd[beta]  # column coupling: coefficient v, not (lam/p) v
            vq = sum(vd[pi_prime[b] - 1] * vd[pi_prime[b + 1] - 1] for b in range(k - 1))
            const = b0 + c * (vq + vd[pi_prime[0] - 1] * t + vd[pi_prime[-1] - 1] * l)
            rows.append(
                realize_phase(MultivariableFunction(prm, part.quad_pairs(), tuple(g2), const))
            )
        codes.append(CodeMatrix(tuple(rows), label=u, provenance=prov))
    return CodeSet(tuple(codes), claimed_Z=claimed, provenance=prov)


# ---------------------------------------------------------------------------
# strict partition enumeration (for sweeps and counting oracles)


def _distributions(free, sizes):
    """All ways to split the list `free` into ordered groups of given sizes."""
    if not sizes:
        yield ()
        return
    head, rest = sizes[0], sizes[1:]
    for pick in itertools.combinations(free, head):
        remaining = [x for x in free if x not in pick]
        for tail in _distributions(remaining, rest):
            yield (pick,) + tail


def strict_theorem1_partitions(params: Params):
    """All partitions with pi_beta(1) = m - beta + 1 (head anchors)."""
    m, k = params.m, params.k
    anchors = [m - beta + 1 for beta in range(1, k + 1)]
    free = [x for x in range(1, m + 1) if x not in anchors]
    out = []
    for sizes in _compositions(len(free), k, first_min=1):
        for groups in _distributions(free, sizes):
            for tails in itertools.product(*(itertools.permutations(gr) for gr in groups)):
                out.append(Partition(params, tuple((anchors[b],) + tails[b] for b in range(k))))
    return out


def strict_theorem2_partitions(params: Params):
    """All partitions with pi_beta(n_beta) = m - k + beta (tail anchors) and a
    last block of size >= 2."""
    m, k = params.m, params.k
    anchors = [m - k + beta for beta in range(1, k + 1)]
    free = [x for x in range(1, m + 1) if x not in anchors]
    out = []
    for sizes in _compositions(len(free), k, first_min=1, last_min=1):
        for groups in _distributions(free, sizes):
            for heads in itertools.product(*(itertools.permutations(gr) for gr in groups)):
                paths = tuple(heads[b] + (anchors[b],) for b in range(k))
                if len(paths[0]) < 2:
                    continue
                out.append(Partition(params, paths))
    return out


def _compositions(total, k, first_min=0, last_min=0):
    """Compositions of `total` into k nonnegative parts with floor constraints
    on the first and last part."""
    if k == 1:
        lo = max(first_min, last_min)
        if total >= lo:
            yield (total,)
        return
    for first in range(first_min, total - last_min + 1):
        for rest in _compositions(total - first, k - 1, first_min=0, last_min=last_min):
            yield (first,) + rest
