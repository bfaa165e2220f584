"""The complementarity-preserving symmetry group of phase matrices.

Five families generate the group: matrix conjugation, column permutation,
per-column scaling by roots of unity, per-column conjugate reversal and
progressive row multiplication.  Every element is stored in the normal form

    conjugation . permutation . column-scaling . reversal . progressive

with the rightmost factor acting first.  Composition rewrites products back
into this order using the exchange rules between the families, so the set of
normal forms is closed under multiplication.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import permutations, product
from math import factorial

import numpy as np

from .algebra import DIGITS, PhaseMatrix, is_ccm

_GUARD_ENV = "CCM_GUARD_OVERRIDE"


class FeasibilityError(RuntimeError):
    """Raised when an enumeration would exceed the configured guard."""


def _guard_lifted() -> bool:
    return os.environ.get(_GUARD_ENV) == "1"


def group_order_bound(p: int, K: int) -> int:
    """Number of distinct normal forms: 2^(K+1) * p^(K+1) * K!."""
    return 2 ** (K + 1) * p ** (K + 1) * factorial(K)


# ---------------------------------------------------------------------------
# elements
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SymmetryElement:
    """One group element in normal form.

    perm maps result column k to source column perm[k]; col_mult holds the
    scaling exponents; rev_mask flags conjugate-reversed columns; prog is the
    exponent of the progressive row multiplier.
    """

    p: int
    n_rows: int
    n_cols: int
    conj: int
    perm: tuple[int, ...]
    col_mult: tuple[int, ...]
    rev_mask: tuple[int, ...]
    prog: int

    def __post_init__(self) -> None:
        K, p = self.n_cols, self.p
        if sorted(self.perm) != list(range(K)):
            raise ValueError("perm is not a permutation")
        if len(self.col_mult) != K or any(u < 0 or u >= p for u in self.col_mult):
            raise ValueError("bad column multipliers")
        if len(self.rev_mask) != K or any(t not in (0, 1) for t in self.rev_mask):
            raise ValueError("bad reversal mask")
        if self.conj not in (0, 1) or not 0 <= self.prog < p:
            raise ValueError("bad conjugation bit or progressive exponent")

    def __str__(self) -> str:
        perm = ",".join(str(i + 1) for i in self.perm)
        u = "".join(DIGITS[x] for x in self.col_mult)
        t = "".join(str(x) for x in self.rev_mask)
        return f"S:{self.conj} P:{perm} U:{u} T:{t} Q:{DIGITS[self.prog]}"


def parse_element(text: str, p: int, n_rows: int) -> SymmetryElement:
    """Parse the textual form produced by str(SymmetryElement)."""
    fields = dict(tok.split(":", 1) for tok in text.split())
    perm = tuple(int(i) - 1 for i in fields["P"].split(","))
    return SymmetryElement(
        p,
        n_rows,
        len(perm),
        int(fields["S"]),
        perm,
        tuple(DIGITS.index(c) for c in fields["U"]),
        tuple(int(c) for c in fields["T"]),
        DIGITS.index(fields["Q"]),
    )


def identity(p: int, n_rows: int, n_cols: int) -> SymmetryElement:
    return SymmetryElement(
        p, n_rows, n_cols, 0, tuple(range(n_cols)), (0,) * n_cols, (0,) * n_cols, 0
    )


def conjugation(p: int, n_rows: int, n_cols: int) -> SymmetryElement:
    e = identity(p, n_rows, n_cols)
    return SymmetryElement(p, n_rows, n_cols, 1, e.perm, e.col_mult, e.rev_mask, 0)


def column_permutation(p: int, n_rows: int, perm: tuple[int, ...]) -> SymmetryElement:
    K = len(perm)
    return SymmetryElement(p, n_rows, K, 0, tuple(perm), (0,) * K, (0,) * K, 0)


def column_scaling(p: int, n_rows: int, col_mult: tuple[int, ...]) -> SymmetryElement:
    K = len(col_mult)
    return SymmetryElement(
        p, n_rows, K, 0, tuple(range(K)), tuple(u % p for u in col_mult), (0,) * K, 0
    )


def column_reversal(p: int, n_rows: int, rev_mask: tuple[int, ...]) -> SymmetryElement:
    K = len(rev_mask)
    return SymmetryElement(p, n_rows, K, 0, tuple(range(K)), (0,) * K, tuple(rev_mask), 0)


def progressive(p: int, n_rows: int, n_cols: int, prog: int) -> SymmetryElement:
    e = identity(p, n_rows, n_cols)
    return SymmetryElement(p, n_rows, n_cols, 0, e.perm, e.col_mult, e.rev_mask, prog % p)


def random_element(rng, p: int, n_rows: int, n_cols: int) -> SymmetryElement:
    perm = list(range(n_cols))
    rng.shuffle(perm)
    return SymmetryElement(
        p,
        n_rows,
        n_cols,
        rng.randrange(2),
        tuple(perm),
        tuple(rng.randrange(p) for _ in range(n_cols)),
        tuple(rng.randrange(2) for _ in range(n_cols)),
        rng.randrange(p),
    )


def enumerate_group(p: int, n_rows: int, n_cols: int):
    """Yield every normal-form element, in a fixed deterministic order."""
    K = n_cols
    for conj in (0, 1):
        for perm in permutations(range(K)):
            for col_mult in product(range(p), repeat=K):
                for rev_mask in product((0, 1), repeat=K):
                    for prog in range(p):
                        yield SymmetryElement(
                            p, n_rows, K, conj, perm, col_mult, rev_mask, prog
                        )


# ---------------------------------------------------------------------------
# action
# ---------------------------------------------------------------------------

def _apply_exps(g: SymmetryElement, exps) -> tuple[tuple[int, ...], ...]:
    p, N, K = g.p, g.n_rows, g.n_cols
    # progressive factor acts first: row n picks up prog*(n+1)
    work = [[(exps[n][k] + g.prog * (n + 1)) % p for k in range(K)] for n in range(N)]
    for k in range(K):
        if g.rev_mask[k]:
            col = [(-work[N - 1 - n][k]) % p for n in range(N)]
            for n in range(N):
                work[n][k] = col[n]
        u = g.col_mult[k]
        if u:
            for n in range(N):
                work[n][k] = (work[n][k] + u) % p
    if g.perm != tuple(range(K)):
        work = [[row[g.perm[k]] for k in range(K)] for row in work]
    if g.conj:
        work = [[(-v) % p for v in row] for row in work]
    return tuple(tuple(row) for row in work)


def apply(g: SymmetryElement, M: PhaseMatrix) -> PhaseMatrix:
    """Act on a matrix; factors apply in normal-form order, rightmost first."""
    if (g.p, g.n_rows, g.n_cols) != (M.p, M.n_rows, M.n_cols):
        raise ValueError("element and matrix dimensions do not match")
    return PhaseMatrix(M.p, _apply_exps(g, M.exps))


def ccm_preservation_check(g: SymmetryElement, M: PhaseMatrix) -> bool:
    """Test hook: the image of a complementary matrix must stay complementary."""
    return is_ccm(apply(g, M))


# ---------------------------------------------------------------------------
# composition
# ---------------------------------------------------------------------------

def _invert_perm(perm: tuple[int, ...]) -> tuple[int, ...]:
    inv = [0] * len(perm)
    for i, v in enumerate(perm):
        inv[v] = i
    return tuple(inv)


def compose(g: SymmetryElement, h: SymmetryElement) -> SymmetryElement:
    """Normal form of g*h, with h acting first.

    Factors of h are pushed left through the factors of g one family at a
    time; conjugation negates scaling exponents, permutations reindex the
    scaling and reversal vectors, and moving a reversal past the progressive
    factor leaves behind an extra column scaling with exponent (N+1)*prog on
    the reversed columns.
    """
    if (g.p, g.n_rows, g.n_cols) != (h.p, h.n_rows, h.n_cols):
        raise ValueError("elements act on different spaces")
    p, N, K = g.p, g.n_rows, g.n_cols

    conj = g.conj ^ h.conj
    if h.conj:
        ug = tuple((-u) % p for u in g.col_mult)
        qg = (-g.prog) % p
    else:
        ug, qg = g.col_mult, g.prog

    hp_inv = _invert_perm(h.perm)
    ug = tuple(ug[hp_inv[k]] for k in range(K))
    tg = tuple(g.rev_mask[hp_inv[k]] for k in range(K))
    perm = tuple(h.perm[g.perm[k]] for k in range(K))

    col_mult = list(ug)
    for k in range(K):
        u = h.col_mult[k]
        col_mult[k] = (col_mult[k] + (-u if tg[k] else u)) % p

    w = (N + 1) * qg % p
    for k in range(K):
        if h.rev_mask[k]:
            col_mult[k] = (col_mult[k] + (-w if tg[k] else w)) % p

    rev_mask = tuple(tg[k] ^ h.rev_mask[k] for k in range(K))
    prog = (qg + h.prog) % p
    return SymmetryElement(p, N, K, conj, perm, tuple(col_mult), rev_mask, prog)


def inverse(g: SymmetryElement) -> SymmetryElement:
    p, N, K = g.p, g.n_rows, g.n_cols
    factors = [
        progressive(p, N, K, -g.prog),
        column_reversal(p, N, g.rev_mask),
        column_scaling(p, N, tuple((-u) % p for u in g.col_mult)),
        column_permutation(p, N, _invert_perm(g.perm)),
    ]
    if g.conj:
        factors.append(conjugation(p, N, K))
    acc = identity(p, N, K)
    for f in factors:
        acc = compose(acc, f)
    return acc


# ---------------------------------------------------------------------------
# normalization
# ---------------------------------------------------------------------------

def normalize(M: PhaseMatrix) -> tuple[PhaseMatrix, SymmetryElement]:
    """Scale to an equivalent matrix with an all-ones first row and, for
    N >= 2, a one in position (2, 1); returns the witness element as well."""
    p, N, K = M.p, M.n_rows, M.n_cols
    u1 = tuple((-M.exps[0][k]) % p for k in range(K))
    witness = column_scaling(p, N, u1)
    if N >= 2:
        b = (-((M.exps[1][0] - M.exps[0][0]) % p)) % p
        witness = compose(column_scaling(p, N, ((-b) % p,) * K),
                          compose(progressive(p, N, K, b), witness))
    return apply(witness, M), witness


# ---------------------------------------------------------------------------
# orbits and canonical forms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Orbit:
    """The set of matrices reachable from one matrix under the group."""

    members: tuple[PhaseMatrix, ...]
    canonical: PhaseMatrix
    size: int


def _pack(exps, p: int) -> int:
    key = 0
    for row in exps:
        for e in row:
            key = key * p + e
    return key


def canonical_form(M: PhaseMatrix) -> PhaseMatrix:
    """Lexicographically least orbit member under row-major exponent order.

    Minimization is closed-form rather than enumerative: for each choice of
    conjugation, progressive exponent and reversal mask, the best column
    scaling forces a zero first row and the best column permutation sorts
    the scaled columns, which minimizes the row-major reading.
    """
    p, N, K = M.p, M.n_rows, M.n_cols
    # variants[k][(a, rev)][q] = normalized column k under that choice
    cols = [tuple(M.exps[n][k] for n in range(N)) for k in range(K)]
    variants = []
    for c in cols:
        table = {}
        for a in (0, 1):
            for rev in (0, 1):
                for q in range(p):
                    if rev:
                        raw = [(-(c[N - 1 - n] + q * (N - n))) % p for n in range(N)]
                    else:
                        raw = [(c[n] + q * (n + 1)) % p for n in range(N)]
                    if a:
                        raw = [(-v) % p for v in raw]
                    base = raw[0]
                    table[(a, rev, q)] = tuple((v - base) % p for v in raw)
        variants.append(table)

    best = None
    for a in (0, 1):
        for q in range(p):
            for mask in range(1 << K):
                chosen = sorted(
                    variants[k][(a, (mask >> k) & 1, q)] for k in range(K)
                )
                cand = tuple(zip(*chosen))
                if best is None or cand < best:
                    best = cand
    return PhaseMatrix(p, best)


def orbit_size(M: PhaseMatrix) -> int:
    """Number of distinct images of M under all normal-form elements."""
    return len(_image_keys(M))


def _image_keys(M: PhaseMatrix) -> np.ndarray:
    """Sorted packed keys of every normal-form image (vectorized)."""
    p, N, K = M.p, M.n_rows, M.n_cols
    if N * K * max(p - 1, 1).bit_length() > 62:
        raise FeasibilityError("matrix too large to pack orbit keys")
    u_grid = np.array(list(product(range(p), repeat=K)), dtype=np.int64)
    perms = [np.array(s, dtype=np.int64) for s in permutations(range(K))]
    pows = p ** np.arange(N * K - 1, -1, -1, dtype=np.int64)
    keys = []
    cols = np.array([[M.exps[n][k] for n in range(N)] for k in range(K)], dtype=np.int64)
    for a in (0, 1):
        for q in range(p):
            for mask in range(1 << K):
                base = np.empty_like(cols)
                for k in range(K):
                    if (mask >> k) & 1:
                        base[k] = (-(cols[k][::-1] + q * np.arange(N, 0, -1))) % p
                    else:
                        base[k] = (cols[k] + q * np.arange(1, N + 1)) % p
                if a:
                    base = (-base) % p
                # scale column k by every exponent, then arrange by permutation
                scaled = (base[None, :, :] + np.arange(p)[:, None, None]) % p
                for perm in perms:
                    sel = scaled[u_grid[:, :, None], perm[None, :, None],
                                 np.arange(N)[None, None, :]]
                    mats = sel.transpose(0, 2, 1).reshape(len(u_grid), N * K)
                    keys.append(mats @ pows)
    return np.unique(np.concatenate(keys))


def _generators(p: int, N: int, K: int) -> list[SymmetryElement]:
    gens = [conjugation(p, N, K), progressive(p, N, K, 1)]
    for k in range(K):
        u = [0] * K
        u[k] = 1
        gens.append(column_scaling(p, N, tuple(u)))
        t = [0] * K
        t[k] = 1
        gens.append(column_reversal(p, N, tuple(t)))
    for k in range(K - 1):
        perm = list(range(K))
        perm[k], perm[k + 1] = perm[k + 1], perm[k]
        gens.append(column_permutation(p, N, tuple(perm)))
    return gens


def orbit(M: PhaseMatrix) -> Orbit:
    """Full orbit of M, computed two independent ways.

    The closure under the five generator families is the returned set; the
    image set of all normal-form elements must coincide with it, which is
    asserted (a mismatch would mean the normal forms do not exhaust the
    group and is reported loudly rather than papered over).
    """
    p, N, K = M.p, M.n_rows, M.n_cols
    bound = group_order_bound(p, K)
    if bound > 10 ** 7 and not _guard_lifted():
        raise FeasibilityError(
            f"normal-form enumeration of size {bound} exceeds the guard"
        )
    gens = _generators(p, N, K)
    seen = {M.exps}
    frontier = [M.exps]
    while frontier:
        nxt = []
        for exps in frontier:
            for g in gens:
                img = _apply_exps(g, exps)
                if img not in seen:
                    seen.add(img)
                    nxt.append(img)
        frontier = nxt
    bfs_keys = sorted(_pack(e, p) for e in seen)
    image_keys = _image_keys(M).tolist()
    if bfs_keys != image_keys:
        raise AssertionError(
            "normal-form image set differs from generator closure "
            f"({len(image_keys)} vs {len(bfs_keys)} members)"
        )
    members = tuple(PhaseMatrix(p, e) for e in sorted(seen))
    return Orbit(members=members, canonical=members[0], size=len(members))
