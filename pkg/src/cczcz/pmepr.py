"""OFDM envelope synthesis and peak-to-mean envelope power ratio.

The continuous-time peak is estimated on an oversampled grid via a
zero-padded FFT; the estimate is a lower bound on the true supremum and is
nondecreasing in the oversampling factor.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import ParameterError, realize_complex
from .construct import CodeMatrix


@dataclass(frozen=True)
class OFDMConfig:
    """oversampling: grid points per subcarrier spacing (>= 4);
    zeta: carrier index offset (does not affect the envelope magnitude)."""

    oversampling: int = 16
    zeta: float = 0.0

    def __post_init__(self):
        if self.oversampling < 4:
            raise ParameterError(
                f"oversampling {self.oversampling} below minimum 4"
            )


def pmepr(values, cfg: OFDMConfig = OFDMConfig()) -> float:
    """Peak-to-mean envelope power ratio of a complex modulating word.

    Evaluates |sum_i B_i exp(2*pi*j*(i+zeta)*tau)|**2 / N on the grid
    tau = t / (oversampling * N), t = 0..oversampling*N - 1.
    """
    b = np.asarray(values, dtype=np.complex128).reshape(-1)
    n = b.size
    if n == 0:
        raise ParameterError("empty sequence")
    grid = cfg.oversampling * n
    envelope = np.abs(np.fft.ifft(b, n=grid)) * grid  # |sum B_i e^{+2pi i i t/grid}|
    return float(envelope.max() ** 2 / n)


@dataclass(frozen=True)
class PmeprReport:
    per_sequence: tuple  # (index, estimate) pairs
    max: float
    bound: float | None
    within_bound: bool | None

    @classmethod
    def build(cls, estimates, bound, tol: float = 0.05):
        per = tuple((i, float(e)) for i, e in enumerate(estimates))
        mx = max(e for _, e in per)
        within = None if bound is None else bool(mx <= bound + tol)
        return cls(per, mx, bound, within)


def row_pmepr_report(C: CodeMatrix, cfg: OFDMConfig = OFDMConfig()) -> PmeprReport:
    """PMEPR of every row sequence against the complementary-set bound M."""
    bound = float(len(C.rows))
    return PmeprReport.build([pmepr(realize_complex(r), cfg) for r in C.rows], bound)


def column_pmepr_report(C: CodeMatrix, cfg: OFDMConfig = OFDMConfig()) -> PmeprReport:
    """PMEPR of every column sequence (length p**k words).

    The bound p applies only to codes from the column-coupled builder; other
    codes get a report with no bound verdict.
    """
    lam = C.lam
    cols = C.phase_matrix().T  # (L, M)
    ests = [pmepr(np.exp(2j * np.pi * col / lam), cfg) for col in cols]
    prov = C.provenance
    bound = float(prov["p"]) if prov.get("builder") == "pmepr-reduced" else None
    return PmeprReport.build(ests, bound)


def column_companions(C: CodeMatrix, j: int) -> list[np.ndarray]:
    """The p phase words (length p**k) obtained from column j by sweeping the
    final coupling offset; the column itself is the member at its own offset.

    Every such family is a complementary set: the row-summed aperiodic
    autocorrelation vanishes at all nonzero shifts.
    """
    prov = C.provenance
    if prov.get("builder") != "pmepr-reduced":
        raise ParameterError("column companions exist only for column-coupled codes")
    p, k, lam = prov["p"], prov["k"], C.lam
    pi_prime = prov["pi_prime"]
    col = C.phase_matrix()[:, j]  # entries over v = 0..p**k-1
    c = lam // p
    vd = np.stack([(np.arange(p**k) // p**s) % p for s in range(k)], axis=1)
    words = []
    for dl in range(p):
        words.append((col + c * vd[:, pi_prime[-1] - 1] * dl) % lam)
    return words
