"""Aperiodic and periodic correlation with exact zero detection.

Correlation values of phase sequences over Z_lam (lam = p**n) are integer
combinations of lam-th roots of unity.  They are carried exactly as
coefficient-count vectors (:class:`CyclotomicValue`) and tested for zero by
reduction modulo the prime-power cyclotomic polynomial
Phi(x) = 1 + x**q + x**(2q) + ... + x**((p-1)q) with q = p**(n-1):
a value is zero iff, for every s < q, the p counts at exponents s, s+q, ...,
s+(p-1)q coincide.  No floating-point tolerance enters the zero test.

The batched count routines at the bottom recover the same integer counts for
whole profiles at once: character streams exp(2*pi*i*t*phase/lam) are
correlated via FFT and the counts reconstructed by an inverse DFT over Z_lam.
Counts are integers and the FFT roundoff at the sizes handled here is below
1e-8, so rounding recovers them exactly; a guard rejects any result whose
distance from the integer lattice exceeds 1e-6.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import PhaseSequence, is_prime


def factor_prime_power(lam: int) -> tuple[int, int]:
    """Return (p, n) with lam = p**n, or raise ValueError."""
    if lam < 2:
        raise ValueError(f"alphabet {lam} is not a prime power")
    p = 2
    while lam % p:
        p += 1
    n = 0
    x = lam
    while x % p == 0:
        x //= p
        n += 1
    if x != 1 or not is_prime(p):
        raise ValueError(f"alphabet {lam} is not a prime power")
    return p, n


@dataclass(frozen=True, eq=False)
class CyclotomicValue:
    """Integer combination sum_j coeffs[j] * omega**j of lam-th roots of unity."""

    coeffs: np.ndarray
    lam: int

    def __post_init__(self):
        c = np.ascontiguousarray(np.asarray(self.coeffs, dtype=np.int64))
        if c.shape != (self.lam,):
            raise ValueError(f"coefficient vector has shape {c.shape}, want ({self.lam},)")
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)
        p, n = factor_prime_power(self.lam)
        object.__setattr__(self, "_p", p)
        object.__setattr__(self, "_q", self.lam // p)

    @classmethod
    def zero(cls, lam: int) -> "CyclotomicValue":
        return cls(np.zeros(lam, dtype=np.int64), lam)

    @classmethod
    def from_integer(cls, value: int, lam: int) -> "CyclotomicValue":
        c = np.zeros(lam, dtype=np.int64)
        c[0] = value
        return cls(c, lam)

    @classmethod
    def from_phase_counts(cls, counts, lam: int) -> "CyclotomicValue":
        return cls(np.asarray(counts, dtype=np.int64), lam)

    def reduced(self) -> np.ndarray:
        """Canonical representative mod Phi: top residue class subtracted out."""
        m = self.coeffs.reshape(self._p, self._q)
        return (m - m[-1:, :]).reshape(self.lam)

    @property
    def is_zero(self) -> bool:
        m = self.coeffs.reshape(self._p, self._q)
        return bool((m == m[0:1, :]).all())

    def embed(self) -> complex:
        """Floating-point value sum coeffs[j] * exp(2*pi*i*j/lam)."""
        j = np.arange(self.lam)
        return complex(self.coeffs @ np.exp(2j * np.pi * j / self.lam))

    def conjugate(self) -> "CyclotomicValue":
        idx = (-np.arange(self.lam)) % self.lam
        return CyclotomicValue(self.coeffs[idx], self.lam)

    def __add__(self, other: "CyclotomicValue") -> "CyclotomicValue":
        if self.lam != other.lam:
            raise ValueError("alphabet mismatch")
        return CyclotomicValue(self.coeffs + other.coeffs, self.lam)

    def __neg__(self) -> "CyclotomicValue":
        return CyclotomicValue(-self.coeffs, self.lam)

    def __sub__(self, other: "CyclotomicValue") -> "CyclotomicValue":
        return self + (-other)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = CyclotomicValue.from_integer(other, self.lam)
        if not isinstance(other, CyclotomicValue) or self.lam != other.lam:
            return NotImplemented
        return (self - other).is_zero

    def __hash__(self):
        return hash((self.lam, self.reduced().tobytes()))

    def __repr__(self):
        return f"CyclotomicValue({self.coeffs.tolist()}, lam={self.lam})"


def _check_pair(a: PhaseSequence, b: PhaseSequence) -> int:
    if a.lam != b.lam:
        raise ValueError(f"alphabet mismatch: {a.lam} vs {b.lam}")
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} vs {len(b)}")
    return len(a)


def accf(a: PhaseSequence, b: PhaseSequence, tau: int) -> CyclotomicValue:
    """Aperiodic cross-correlation at shift tau, -L < tau < L.

    Conjugation of the second sequence is phase negation mod lam; the
    positive and negative branches are both evaluated literally.
    """
    L = _check_pair(a, b)
    if not -L < tau < L:
        raise ValueError(f"shift {tau} outside -{L - 1}..{L - 1}")
    if tau >= 0:
        d = (a.phases[: L - tau] - b.phases[tau:]) % a.lam
    else:
        d = (a.phases[-tau:] - b.phases[: L + tau]) % a.lam
    return CyclotomicValue(np.bincount(d, minlength=a.lam), a.lam)


def pccf(a: PhaseSequence, b: PhaseSequence, tau: int) -> CyclotomicValue:
    """Periodic cross-correlation at shift tau (any integer, reduced mod L)."""
    L = _check_pair(a, b)
    d = (a.phases - np.roll(b.phases, -(tau % L))) % a.lam
    return CyclotomicValue(np.bincount(d, minlength=a.lam), a.lam)


def code_accf(C1, C2, u: int) -> CyclotomicValue:
    """Code-level ACCF: row-wise aperiodic correlations summed over rows.

    Accepts CodeMatrix objects or plain sequences of PhaseSequence.
    """
    rows1 = getattr(C1, "rows", C1)
    rows2 = getattr(C2, "rows", C2)
    if len(rows1) != len(rows2):
        raise ValueError(f"row count mismatch: {len(rows1)} vs {len(rows2)}")
    total = CyclotomicValue.zero(rows1[0].lam)
    for ra, rb in zip(rows1, rows2):
        total = total + accf(ra, rb, u)
    return total


@dataclass(frozen=True)
class CorrelationProfile:
    """Exact correlation values over a contiguous range of shifts."""

    shifts: tuple
    values: tuple

    def embed(self) -> np.ndarray:
        return np.array([v.embed() for v in self.values])


def accf_profile(a: PhaseSequence, b: PhaseSequence) -> CorrelationProfile:
    """Aperiodic profile over shifts -(L-1)..(L-1)."""
    L = _check_pair(a, b)
    shifts = tuple(range(-L + 1, L))
    return CorrelationProfile(shifts, tuple(accf(a, b, t) for t in shifts))


def pccf_profile(a: PhaseSequence, b: PhaseSequence) -> CorrelationProfile:
    """Periodic profile over shifts 0..L-1."""
    L = _check_pair(a, b)
    shifts = tuple(range(L))
    return CorrelationProfile(shifts, tuple(pccf(a, b, t) for t in shifts))


def pccf_profile_fast(a: PhaseSequence, b: PhaseSequence):
    """Full periodic profile via FFT, floating point only.

    Returns (shifts, values) with values a complex128 vector.  Each entry
    agrees with the exact pccf embedding to ~1e-6*L; the exact zero test is
    not available on this path.
    """
    L = _check_pair(a, b)
    za = np.exp(2j * np.pi * a.phases / a.lam)
    zb = np.exp(2j * np.pi * b.phases / b.lam)
    # ifft(fft(za) * conj(fft(zb)))[s] = sum_i za[i] * conj(zb[(i-s) % L])
    conv = np.fft.ifft(np.fft.fft(za) * np.conj(np.fft.fft(zb)))
    values = conv[(-np.arange(L)) % L]
    return np.arange(L), values


# ---------------------------------------------------------------------------
# batched exact count engines
#
# For phases a, b the correlation value at a shift is determined by the
# count vector  counts[j] = #{i : a_i - b_{i+shift} = j (mod lam)}.  With
# character streams z_t = exp(2*pi*i*t*phases/lam) the complex correlations
# V_t of the streams are the DFT of counts over Z_lam (V_0 = overlap size),
# so counts = idft(V_0..V_{lam-1}) and V_{lam-t} = conj(V_t).

_ROUND_GUARD = 1e-6


def _certified_int(x: np.ndarray) -> np.ndarray:
    r = np.rint(x)
    err = np.abs(x - r).max(initial=0.0)
    if err > _ROUND_GUARD:
        raise ArithmeticError(f"count reconstruction off integer lattice by {err:.3e}")
    return r.astype(np.int64)


def _stream_ffts(phases: np.ndarray, lam: int, nfft: int) -> list[np.ndarray]:
    """FFTs of the character streams for t = 1..lam//2 along the last axis."""
    return [
        np.fft.fft(np.exp(2j * np.pi * t * phases / lam), n=nfft, axis=-1)
        for t in range(1, lam // 2 + 1)
    ]


def _counts_from_values(v0: np.ndarray, v_half: list[np.ndarray], lam: int) -> np.ndarray:
    """Integer counts (..., lam) from V_0 (real) and V_1..V_{lam//2}.

    counts_j = (1/lam) * sum_t V_t w**(-t*j) with V_{lam-t} = conj(V_t), so
    the inverse DFT collapses to a real combination of Re/Im parts.
    """
    j = np.arange(lam)
    rows = [np.broadcast_to(v0, v_half[0].shape) if v_half else v0]
    cols = [np.ones(lam)]
    for t, v in enumerate(v_half, start=1):
        if t == lam - t:  # self-conjugate middle stream (lam even): V real
            rows.append(v.real)
            cols.append(np.where(j % 2 == 0, 1.0, -1.0))
        else:
            rows.append(2.0 * v.real)
            cols.append(np.cos(2 * np.pi * t * j / lam))
            rows.append(2.0 * v.imag)
            cols.append(np.sin(2 * np.pi * t * j / lam))
    stack = np.stack(rows, axis=-1)
    basis = np.stack(cols, axis=0) / lam
    return _certified_int(stack @ basis)


class AperiodicCorrelator:
    """Row-summed aperiodic correlation counts across a family of codes.

    Character-stream FFTs of all rows are computed once; counts_vs(x) then
    yields the exact integer count profiles of code x against every code in
    the family at every shift.
    """

    def __init__(self, codes: np.ndarray, lam: int):
        codes = np.asarray(codes, dtype=np.int64)
        if codes.ndim != 3:
            raise ValueError("codes must be a (K, M, L) phase array")
        self.K, self.M, self.L = codes.shape
        self.lam = lam
        self.nfft = 1 << int(np.ceil(np.log2(2 * self.L)))
        self.taus = np.arange(-self.L + 1, self.L)
        # ifft(F_a * conj(F_b))[s] = sum_i a_i conj(b_{(i-s) % nfft}); with
        # zero padding to nfft >= 2L, aperiodic shift tau sits at s = -tau.
        self._idx = (-self.taus) % self.nfft
        self._ffts_conj = [np.conj(f.reshape(self.K, self.M, self.nfft))
                           for f in _stream_ffts(codes.reshape(-1, self.L), lam, self.nfft)]
        self._v0 = (self.M * (self.L - np.abs(self.taus))).astype(float)

    def counts_vs(self, x1: int) -> np.ndarray:
        """(K, 2L-1, lam) exact counts of code x1 correlated against all codes."""
        v_half = []
        for ftc in self._ffts_conj:
            spec = np.einsum("mn,kmn->kn", np.conj(ftc[x1]), ftc)
            v_half.append(np.fft.ifft(spec, axis=-1)[:, self._idx])
        v0 = np.broadcast_to(self._v0, (self.K, 2 * self.L - 1))
        return _counts_from_values(v0, v_half, self.lam)


def aperiodic_code_counts(rows1: np.ndarray, many: np.ndarray, lam: int):
    """Row-summed aperiodic counts of one code against many (one-shot form).

    rows1 is (M, L), many is (K, M, L); returns (taus, counts) with counts of
    shape (K, 2L-1, lam).  counts[x, s] is the count vector of
    sum over rows r of accf(rows1[r], many[x, r], taus[s]).
    """
    rows1 = np.asarray(rows1, dtype=np.int64)
    many = np.asarray(many, dtype=np.int64)
    if rows1.shape != many.shape[1:]:
        raise ValueError(f"shape mismatch: {rows1.shape} vs {many.shape[1:]}")
    corr = AperiodicCorrelator(np.concatenate([rows1[None], many]), lam)
    return corr.taus, corr.counts_vs(0)[1:]


class PeriodicCorrelator:
    """Periodic correlation counts for all ordered row pairs of one matrix.

    counts_at(shifts) reconstructs exact integer counts for just the
    requested shifts.  Few shifts are served by one matrix product each;
    once a third of all shifts have been touched, a full shift-domain table
    is built via FFT and further requests become slices.
    """

    def __init__(self, rows: np.ndarray, lam: int):
        rows = np.asarray(rows, dtype=np.int64)
        self.M, self.L = rows.shape
        self.lam = lam
        self._streams = [
            np.exp(2j * np.pi * t * rows / lam) for t in range(1, lam // 2 + 1)
        ]
        self._table = None
        self._touched = 0

    def _build_table(self):
        idx = (-np.arange(self.L)) % self.L
        self._table = []
        for s in self._streams:
            ft = np.fft.fft(s, axis=-1)
            spec = np.einsum("in,jn->ijn", ft, np.conj(ft))
            self._table.append(np.fft.ifft(spec, axis=-1)[:, :, idx])

    def _values_at(self, shifts: np.ndarray) -> list[np.ndarray]:
        self._touched += len(shifts)
        if self._table is None and self._touched > self.L // 3:
            self._build_table()
        if self._table is not None:
            return [v[:, :, shifts] for v in self._table]
        out = []
        for s in self._streams:
            v = np.empty((self.M, self.M, len(shifts)), dtype=complex)
            for col, u in enumerate(shifts):
                v[:, :, col] = s @ np.conj(np.roll(s, -int(u), axis=1)).T
            out.append(v)
        return out

    def counts_at(self, shifts) -> np.ndarray:
        """(M, M, len(shifts), lam) exact counts at the given shifts."""
        shifts = np.asarray(shifts, dtype=np.int64) % self.L
        v0 = np.full((self.M, self.M, len(shifts)), float(self.L))
        return _counts_from_values(v0, self._values_at(shifts), self.lam)


def periodic_rowpair_counts(rows: np.ndarray, lam: int) -> np.ndarray:
    """(M, M, L, lam) exact periodic counts for all ordered row pairs."""
    rows = np.asarray(rows, dtype=np.int64)
    return PeriodicCorrelator(rows, lam).counts_at(np.arange(rows.shape[1]))


def counts_are_zero(counts: np.ndarray, lam: int) -> np.ndarray:
    """Exact zero test (reduction mod Phi) on an (..., lam) count array."""
    p, _ = factor_prime_power(lam)
    m = counts.reshape(counts.shape[:-1] + (p, lam // p))
    return (m == m[..., 0:1, :]).all(axis=(-2, -1))
