"""Exact arithmetic over p-th roots of unity: codes, matrices, correlations.

Every correlation value is carried as an integer coefficient vector over the
p-th roots of unity (:class:`CycSum`) and zero tests reduce modulo the p-th
cyclotomic polynomial, so membership decisions (complementarity, diagonal
regularity) are exact integer arithmetic.  Floating point appears only in
cross-check tests, never in any decision path.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

DIGITS = "0123456789abcdefghijklmnopqrstuvwxyz"


# ---------------------------------------------------------------------------
# integer polynomial helpers (coefficients ascending, trailing zeros trimmed)
# ---------------------------------------------------------------------------

def _poly_trim(c: list[int]) -> list[int]:
    n = len(c)
    while n and c[n - 1] == 0:
        n -= 1
    return c[:n]


def _poly_divmod(num: Sequence[int], den: Sequence[int]) -> tuple[list[int], list[int]]:
    """Exact integer polynomial division, quotient and remainder."""
    num = list(num)
    den = _poly_trim(list(den))
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    qlen = max(len(num) - len(den) + 1, 0)
    q = [0] * qlen
    lead = den[-1]
    for i in range(qlen - 1, -1, -1):
        coeff = num[i + len(den) - 1]
        if coeff % lead:
            raise ValueError("division is not exact")
        coeff //= lead
        q[i] = coeff
        if coeff:
            for j, d in enumerate(den):
                num[i + j] -= coeff * d
    return q, _poly_trim(num)


@lru_cache(maxsize=None)
def cyclotomic_polynomial(p: int) -> tuple[int, ...]:
    """Coefficients (ascending) of the p-th cyclotomic polynomial.

    Computed by exact division of x^p - 1 by the cyclotomic polynomials of
    the proper divisors of p.
    """
    if p < 1:
        raise ValueError("p must be a positive integer")
    if p == 1:
        return (-1, 1)
    num: list[int] = [-1] + [0] * (p - 1) + [1]
    for d in range(1, p):
        if p % d == 0:
            num, rem = _poly_divmod(num, cyclotomic_polynomial(d))
            if rem:
                raise AssertionError("cyclotomic factor did not divide exactly")
    return tuple(num)


@lru_cache(maxsize=None)
def _reduction_rows(p: int) -> tuple[tuple[int, ...], ...]:
    """Row k is the remainder of x^k modulo the p-th cyclotomic polynomial."""
    phi = cyclotomic_polynomial(p)
    deg = len(phi) - 1
    rows = []
    cur = [0] * deg
    if deg:
        cur[0] = 1
    rows.append(tuple(cur))
    for _ in range(1, p):
        # multiply by x, then fold the overflow term x^deg back in
        shifted = [0] + cur
        over = shifted.pop()
        nxt = shifted
        if over:
            for i in range(deg):
                nxt[i] -= over * phi[i]
        rows.append(tuple(nxt))
        cur = nxt
    return tuple(rows)


def _reduce_coeffs(p: int, coeffs: Sequence[int]) -> tuple[int, ...]:
    rows = _reduction_rows(p)
    deg = len(rows[0])
    out = [0] * deg
    for k, c in enumerate(coeffs):
        if c:
            row = rows[k]
            for i in range(deg):
                out[i] += c * row[i]
    return tuple(out)


# ---------------------------------------------------------------------------
# cyclotomic sums
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class CycSum:
    """Integer combination sum_k coeffs[k] * w^k with w = exp(2*pi*i/p).

    The representation is not unique; equality and hashing go through the
    canonical remainder modulo the p-th cyclotomic polynomial.
    """

    p: int
    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))
        if self.p < 1:
            raise ValueError("p must be positive")
        if len(self.coeffs) != self.p:
            raise ValueError("coefficient vector must have length p")

    @classmethod
    def zero(cls, p: int) -> "CycSum":
        return cls(p, (0,) * p)

    @classmethod
    def root(cls, p: int, k: int) -> "CycSum":
        c = [0] * p
        c[k % p] = 1
        return cls(p, tuple(c))

    @classmethod
    def integer(cls, p: int, n: int) -> "CycSum":
        c = [0] * p
        c[0] = n
        return cls(p, tuple(c))

    @classmethod
    def gauss(cls, a: int, b: int) -> "CycSum":
        """The Gaussian integer a + b*i as a 4-phase sum."""
        return cls(4, (a, b, 0, 0))

    def _check(self, other: "CycSum") -> None:
        if self.p != other.p:
            raise ValueError("mixed moduli")

    def __add__(self, other: "CycSum") -> "CycSum":
        self._check(other)
        return CycSum(self.p, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "CycSum") -> "CycSum":
        self._check(other)
        return CycSum(self.p, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "CycSum":
        return CycSum(self.p, tuple(-a for a in self.coeffs))

    def __mul__(self, other: "CycSum") -> "CycSum":
        self._check(other)
        p = self.p
        out = [0] * p
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[(i + j) % p] += a * b
        return CycSum(p, tuple(out))

    def conjugate(self) -> "CycSum":
        p = self.p
        return CycSum(p, tuple(self.coeffs[(-k) % p] for k in range(p)))

    def reduced(self) -> tuple[int, ...]:
        """Canonical remainder coefficients modulo the cyclotomic polynomial."""
        return _reduce_coeffs(self.p, self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.reduced())

    def to_gaussian(self) -> tuple[int, int]:
        """Exact (real, imag) integer pair; only defined when p divides 4."""
        c = self.coeffs
        if self.p == 1:
            return (c[0], 0)
        if self.p == 2:
            return (c[0] - c[1], 0)
        if self.p == 4:
            return (c[0] - c[2], c[1] - c[3])
        raise ValueError("Gaussian form requires p in {1, 2, 4}")

    def to_complex(self) -> complex:
        p = self.p
        return sum(c * cmath.exp(2j * cmath.pi * k / p) for k, c in enumerate(self.coeffs))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CycSum):
            return NotImplemented
        return self.p == other.p and self.reduced() == other.reduced()

    def __hash__(self) -> int:
        return hash((self.p, self.reduced()))

    def __repr__(self) -> str:
        return f"CycSum(p={self.p}, coeffs={self.coeffs})"


def cyc_is_zero(s: CycSum) -> bool:
    """Exact zero test: remainder modulo the cyclotomic polynomial vanishes."""
    return s.is_zero()


def taxicab_norm(s: CycSum) -> int:
    """|a| + |b| for Gaussian values; otherwise the reduced coefficient 1-norm.

    For p not dividing 4 the coefficient 1-norm is only a pruning surrogate;
    it vanishes exactly when the sum is zero.
    """
    if s.p in (1, 2, 4):
        a, b = s.to_gaussian()
        return abs(a) + abs(b)
    return sum(abs(c) for c in s.reduced())


# ---------------------------------------------------------------------------
# codes and matrices
# ---------------------------------------------------------------------------

def _validate_exps(p: int, exps: Sequence[int]) -> tuple[int, ...]:
    out = tuple(int(e) for e in exps)
    if any(e < 0 or e >= p for e in out):
        raise ValueError("exponents must lie in [0, p)")
    return out


@dataclass(frozen=True)
class PhaseCode:
    """A code of p-th roots of unity stored as an exponent vector."""

    p: int
    exps: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.p < 1:
            raise ValueError("p must be positive")
        object.__setattr__(self, "exps", _validate_exps(self.p, self.exps))
        if not self.exps:
            raise ValueError("code must be non-empty")

    def __len__(self) -> int:
        return len(self.exps)


@dataclass(frozen=True)
class PhaseMatrix:
    """N x K matrix of p-th roots of unity stored as exponents mod p."""

    p: int
    exps: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.p < 1:
            raise ValueError("p must be positive")
        rows = tuple(_validate_exps(self.p, r) for r in self.exps)
        if not rows or not rows[0]:
            raise ValueError("matrix dimensions must be positive")
        if len({len(r) for r in rows}) != 1:
            raise ValueError("ragged rows")
        object.__setattr__(self, "exps", rows)

    @property
    def n_rows(self) -> int:
        return len(self.exps)

    @property
    def n_cols(self) -> int:
        return len(self.exps[0])

    def row(self, n: int) -> tuple[int, ...]:
        return self.exps[n]

    def column(self, k: int) -> PhaseCode:
        return PhaseCode(self.p, tuple(r[k] for r in self.exps))

    def columns(self) -> list[PhaseCode]:
        return [self.column(k) for k in range(self.n_cols)]


@dataclass(frozen=True)
class TernaryMatrix:
    """N x K matrix over {-1, 0, +1}."""

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        rows = tuple(tuple(int(v) for v in r) for r in self.entries)
        if not rows or not rows[0]:
            raise ValueError("matrix dimensions must be positive")
        if len({len(r) for r in rows}) != 1:
            raise ValueError("ragged rows")
        for r in rows:
            if any(v not in (-1, 0, 1) for v in r):
                raise ValueError("entries must be -1, 0 or +1")
        object.__setattr__(self, "entries", rows)

    @property
    def n_rows(self) -> int:
        return len(self.entries)

    @property
    def n_cols(self) -> int:
        return len(self.entries[0])


# ---------------------------------------------------------------------------
# correlation functions
# ---------------------------------------------------------------------------

def autocorrelation(x: PhaseCode, j: int) -> CycSum:
    """Aperiodic autocorrelation at lag j: sum_i a_i * conj(a_{i+j}).

    Negative lags are the conjugates of the positive ones; the center value
    is the code length.
    """
    n = len(x.exps)
    if abs(j) > n - 1:
        raise ValueError(f"lag {j} out of range for length {n}")
    if j < 0:
        return autocorrelation(x, -j).conjugate()
    p = x.p
    coeffs = [0] * p
    for i in range(n - j):
        coeffs[(x.exps[i] - x.exps[i + j]) % p] += 1
    return CycSum(p, tuple(coeffs))


def composite_autocorrelation(M: PhaseMatrix, j: int) -> CycSum:
    """Sum of the column autocorrelations of M at lag j."""
    n = M.n_rows
    if abs(j) > n - 1:
        raise ValueError(f"lag {j} out of range for {n} rows")
    if j < 0:
        return composite_autocorrelation(M, -j).conjugate()
    p = M.p
    coeffs = [0] * p
    for k in range(M.n_cols):
        for i in range(n - j):
            coeffs[(M.exps[i][k] - M.exps[i + j][k]) % p] += 1
    return CycSum(p, tuple(coeffs))


def _row_product(M: PhaseMatrix, a: int, b: int) -> CycSum:
    """Inner product of row a with the conjugate of row b."""
    p = M.p
    coeffs = [0] * p
    ra, rb = M.exps[a], M.exps[b]
    for ea, eb in zip(ra, rb):
        coeffs[(ea - eb) % p] += 1
    return CycSum(p, tuple(coeffs))


def row_gramian(M: PhaseMatrix) -> tuple[tuple[CycSum, ...], ...]:
    """The N x N matrix of row inner products M . M*."""
    n = M.n_rows
    return tuple(tuple(_row_product(M, a, b) for b in range(n)) for a in range(n))


def row_correlation(M: PhaseMatrix, j: int) -> CycSum:
    """Sum of the j-th diagonal of the row Gramian of M."""
    n = M.n_rows
    if abs(j) > n - 1:
        raise ValueError(f"lag {j} out of range for {n} rows")
    if j < 0:
        return row_correlation(M, -j).conjugate()
    p = M.p
    coeffs = [0] * p
    for a in range(n - j):
        ra, rb = M.exps[a], M.exps[a + j]
        for ea, eb in zip(ra, rb):
            coeffs[(ea - eb) % p] += 1
    return CycSum(p, tuple(coeffs))


def _entry_is_zero(v) -> bool:
    if isinstance(v, CycSum):
        return v.is_zero()
    return v == 0


def is_diagonally_regular(Q: Sequence[Sequence]) -> bool:
    """True iff every off-diagonal of the square matrix Q sums to zero.

    Entries may be CycSum values or plain integers.
    """
    n = len(Q)
    if any(len(row) != n for row in Q):
        raise ValueError("matrix must be square")
    for d in range(1, n):
        upper = Q[0][d]
        lower = Q[d][0]
        for i in range(1, n - d):
            upper = upper + Q[i][i + d]
            lower = lower + Q[i + d][i]
        if not (_entry_is_zero(upper) and _entry_is_zero(lower)):
            return False
    return True


def is_ccm(M: PhaseMatrix) -> bool:
    """True iff the row correlation of M vanishes at every nonzero lag."""
    return all(row_correlation(M, j).is_zero() for j in range(1, M.n_rows))


def ternary_gramian(A: TernaryMatrix) -> tuple[tuple[int, ...], ...]:
    """Integer row Gramian A . A^T of a ternary matrix."""
    rows = A.entries
    n = len(rows)
    return tuple(
        tuple(sum(x * y for x, y in zip(rows[a], rows[b])) for b in range(n))
        for a in range(n)
    )


def ternary_is_ccm(A: TernaryMatrix) -> bool:
    """True iff the integer row Gramian of A is diagonally regular."""
    return is_diagonally_regular(ternary_gramian(A))


# ---------------------------------------------------------------------------
# correlation profiles
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CorrelationProfile:
    """Map from lag to exact correlation value for a code or a matrix."""

    values: dict[int, CycSum]

    @classmethod
    def from_code(cls, x: PhaseCode) -> "CorrelationProfile":
        n = len(x)
        return cls({j: autocorrelation(x, j) for j in range(-(n - 1), n)})

    @classmethod
    def from_matrix(cls, M: PhaseMatrix) -> "CorrelationProfile":
        n = M.n_rows
        return cls({j: composite_autocorrelation(M, j) for j in range(-(n - 1), n)})

    def lags(self) -> list[int]:
        return sorted(self.values)

    def center(self) -> CycSum:
        return self.values[0]
