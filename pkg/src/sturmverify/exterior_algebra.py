"""Compound-matrix linear algebra on exterior powers.

The q-th exterior power of an m x m matrix M is the binom(m, q)-square
matrix M^[q] whose rows and columns are labelled by the q-element subsets
of {1..m} in strict lexicographic order; entry (a, b) is the q x q minor
of M with rows a and columns b.  Extreme degrees collapse to scalars:
M^[0] = [1] and M^[m] = [det M].

Beyond plain exterior powers the module provides the induced product of
endomorphisms acting on different exterior degrees (``sqcap``) and the
trace of sandwiched exterior powers on the SPD cone (``trace_sandwich``),
which the cone integrals are built from.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import NotPositiveDefiniteError

# eigenvalues of an SPD matrix are clamped at this relative floor before
# square roots; anything more negative than the floor raises
EIG_REL_FLOOR = 1e-14


@lru_cache(maxsize=None)
def q_subsets(m: int, q: int) -> tuple:
    """q-element subsets of {1..m} (1-based), in lexicographic order."""
    if not 0 <= q <= m:
        raise ValueError(f"subset size q={q} out of range 0..{m}")
    return tuple(itertools.combinations(range(1, m + 1), q))


@lru_cache(maxsize=None)
def _subset_pos(m: int, q: int) -> dict:
    return {a: i for i, a in enumerate(q_subsets(m, q))}


@dataclass(frozen=True)
class SubsetBasis:
    """Lexicographic basis of q-subsets of {1..m} indexing an exterior power."""

    m: int
    q: int

    def __post_init__(self):
        if not 0 <= self.q <= self.m:
            raise ValueError(f"subset size q={self.q} out of range 0..{self.m}")

    @property
    def subsets(self) -> tuple:
        return q_subsets(self.m, self.q)

    def index(self, subset) -> int:
        return _subset_pos(self.m, self.q)[tuple(subset)]

    def __len__(self) -> int:
        return math.comb(self.m, self.q)


@dataclass(frozen=True)
class ExteriorMatrix:
    """A binom(m, q)-square matrix indexed by the lexicographic q-subset basis."""

    m: int
    q: int
    entries: np.ndarray

    def __post_init__(self):
        entries = np.asarray(self.entries)
        dim = math.comb(self.m, self.q)
        if entries.shape != (dim, dim):
            raise ValueError(
                f"entries shape {entries.shape} does not match binom({self.m},{self.q})={dim}"
            )
        object.__setattr__(self, "entries", entries)

    @property
    def basis(self) -> SubsetBasis:
        return SubsetBasis(self.m, self.q)

    @property
    def dim(self) -> int:
        return math.comb(self.m, self.q)

    def transpose(self) -> "ExteriorMatrix":
        return ExteriorMatrix(self.m, self.q, self.entries.T)

    def trace(self) -> float:
        return self.entries.trace()

    def __matmul__(self, other):
        if not isinstance(other, ExteriorMatrix):
            return NotImplemented
        if (other.m, other.q) != (self.m, self.q):
            raise ValueError("exterior degrees do not match")
        return ExteriorMatrix(self.m, self.q, self.entries @ other.entries)


def eps(a_prime, a_double_prime) -> int:
    """Sign of the permutation sorting the concatenation (a', a'') ascending.

    Both blocks must be strictly increasing and disjoint; the sign is
    (-1)^inversions with inversions counted across the two blocks only.
    """
    a1 = tuple(a_prime)
    a2 = tuple(a_double_prime)
    for block in (a1, a2):
        if any(block[i] >= block[i + 1] for i in range(len(block) - 1)):
            raise ValueError(f"subset {block} is not strictly increasing")
    if set(a1) & set(a2):
        raise ValueError(f"subsets {a1} and {a2} overlap")
    inversions = sum(1 for x in a1 for y in a2 if x > y)
    return -1 if inversions % 2 else 1


def exterior_power(mat, q: int) -> ExteriorMatrix:
    """q-th exterior power (matrix of all q x q minors) of a square matrix."""
    mat = np.asarray(mat)
    m = mat.shape[0]
    if mat.shape != (m, m):
        raise ValueError("matrix must be square")
    if not 0 <= q <= m:
        raise ValueError(f"exterior degree q={q} out of range 0..{m}")
    subs = q_subsets(m, q)
    rows = [np.asarray(a, dtype=int) - 1 for a in subs]
    dtype = complex if np.iscomplexobj(mat) else float
    out = np.empty((len(subs), len(subs)), dtype=dtype)
    for i, ra in enumerate(rows):
        for j, cb in enumerate(rows):
            out[i, j] = np.linalg.det(mat[np.ix_(ra, cb)])
    return ExteriorMatrix(m, q, out)


def exterior_power_batch(mats, q: int) -> np.ndarray:
    """Exterior powers of a batch of matrices: (n, m, m) -> (n, C, C)."""
    mats = np.asarray(mats, dtype=float)
    m = mats.shape[-1]
    subs = q_subsets(m, q)
    out = np.empty((mats.shape[0], len(subs), len(subs)))
    for i, a in enumerate(subs):
        ra = [x - 1 for x in a]
        for j, b in enumerate(subs):
            cb = [x - 1 for x in b]
            out[:, i, j] = np.linalg.det(mats[:, ra][:, :, cb])
    return out


def sqcap(a_op: ExteriorMatrix, b_op: ExteriorMatrix) -> ExteriorMatrix:
    """Induced product of endomorphisms of exterior powers.

    For A acting on degree p and B on degree q, the product acts on degree
    h = p + q.  Entry (a, b) averages the sign-weighted products
    A_{a', b'} B_{a'', b''} over all splittings of a into an increasing
    p-block a' and q-block a'' (same for b), normalized by binom(h, p).
    Restricted to exterior powers it is multiplicative:
    M^[p] sqcap M^[q] = M^[p+q].
    """
    if a_op.m != b_op.m:
        raise ValueError("ambient dimensions differ")
    m = a_op.m
    p, q = a_op.q, b_op.q
    h = p + q
    if h > m:
        raise ValueError(f"total degree p+q={h} exceeds ambient dimension m={m}")
    basis_h = q_subsets(m, h)
    pos_p = _subset_pos(m, p)
    pos_q = _subset_pos(m, q)

    splittings = []
    for a in basis_h:
        a_set = set(a)
        opts = []
        for a1 in itertools.combinations(a, p):
            a2 = tuple(sorted(a_set - set(a1)))
            opts.append((eps(a1, a2), pos_p[a1], pos_q[a2]))
        splittings.append(opts)

    dtype = (
        complex
        if (np.iscomplexobj(a_op.entries) or np.iscomplexobj(b_op.entries))
        else float
    )
    out = np.zeros((len(basis_h), len(basis_h)), dtype=dtype)
    for i, row_opts in enumerate(splittings):
        for j, col_opts in enumerate(splittings):
            tot = 0.0
            for sa, ia1, ia2 in row_opts:
                for sb, jb1, jb2 in col_opts:
                    tot += sa * sb * a_op.entries[ia1, jb1] * b_op.entries[ia2, jb2]
            out[i, j] = tot
    out /= math.comb(h, p)
    return ExteriorMatrix(m, h, out)


def sym_sqrt(mat) -> np.ndarray:
    """Symmetric square root of an SPD matrix (or batch) via eigendecomposition.

    Eigenvalues are clamped at the relative floor EIG_REL_FLOOR * max
    eigenvalue; an eigenvalue below -floor raises NotPositiveDefiniteError.
    """
    y = np.asarray(mat, dtype=float)
    w, u = np.linalg.eigh(y)
    top = w[..., -1]
    if np.any(top <= 0.0):
        raise NotPositiveDefiniteError("matrix has no positive eigenvalue")
    floor = EIG_REL_FLOOR * top
    if np.any(w < -floor[..., None]):
        raise NotPositiveDefiniteError("matrix has a negative eigenvalue beyond tolerance")
    w = np.maximum(w, floor[..., None])
    return (u * np.sqrt(w)[..., None, :]) @ np.swapaxes(u, -1, -2)


def _esp_table(values: np.ndarray, qmax: int) -> np.ndarray:
    """Elementary symmetric polynomials e_0..e_qmax over the last axis."""
    e = np.zeros(values.shape[:-1] + (qmax + 1,))
    e[..., 0] = 1.0
    m = values.shape[-1]
    for i in range(m):
        hi = min(i + 1, qmax)
        for k in range(hi, 0, -1):
            e[..., k] += values[..., i] * e[..., k - 1]
    return e


def elementary_symmetric(values, q: int):
    """Elementary symmetric polynomial e_q of the entries along the last axis."""
    values = np.asarray(values, dtype=float)
    if not 0 <= q <= values.shape[-1]:
        raise ValueError(f"q={q} out of range 0..{values.shape[-1]}")
    out = _esp_table(values, q)[..., q]
    return float(out) if out.ndim == 0 else out


def sandwich_eigenvalues(y, t) -> np.ndarray:
    """Eigenvalues of Y^{1/2} T Y^{1/2} (same as those of Y T); Y may be a batch."""
    root = sym_sqrt(y)
    t = np.asarray(t, dtype=float)
    s = root @ t @ root
    s = 0.5 * (s + np.swapaxes(s, -1, -2))
    return np.linalg.eigvalsh(s)


def sandwich_esp_all(y, t, qmax: int) -> np.ndarray:
    """e_0..e_qmax of the sandwiched eigenvalues, stacked along the last axis."""
    return _esp_table(sandwich_eigenvalues(y, t), qmax)


def trace_sandwich(y, t, q: int):
    """trace((Y^{1/2} T Y^{1/2})^[q]) = e_q of the eigenvalues of Y T.

    ``y`` must be SPD, a single (m, m) matrix or a batch (n, m, m); ``t``
    must be symmetric but need not be definite.  Degree q = 0 gives 1 and
    q = m gives det(Y) det(T).
    """
    vals = sandwich_eigenvalues(y, t)
    if not 0 <= q <= vals.shape[-1]:
        raise ValueError(f"q={q} out of range 0..{vals.shape[-1]}")
    return elementary_symmetric(vals, q)
