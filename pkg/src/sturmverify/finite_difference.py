"""Central-difference oracles for symmetric-matrix derivatives.

Deliberately independent of every closed form they validate: derivatives
are built by nesting one-coordinate central differences of the symmetric
(or complex symmetric) matrix variable.  The symmetric convention is

    (dF)_{mu nu} = 1/2 (1 + delta_{mu nu}) dF / dy_{mu nu} ,

realized numerically by perturbing the (mu, nu) and (nu, mu) entries
together (one symmetric coordinate) and applying the half factor
analytically, so e.g. the derivative of tr(TY) is exactly T.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import UnsupportedRegimeError
from .exterior_algebra import ExteriorMatrix, q_subsets

_STENCILS = {
    2: ((1, 0.5), (-1, -0.5)),
    4: ((2, -1.0 / 12.0), (1, 8.0 / 12.0), (-1, -8.0 / 12.0), (-2, 1.0 / 12.0)),
}
# step-halving extrapolation weights: order 2 -> (4 f_{h/2} - f_h)/3, order 4 -> (16 f_{h/2} - f_h)/15
_RICHARDSON = {2: (4.0, 3.0), 4: (16.0, 15.0)}


@dataclass(frozen=True)
class FDScheme:
    """Step control for the difference oracles.

    ``h = None`` selects 1e-2 * (1 + max |entry|) at the evaluation point.
    With ``richardson`` the scheme combines steps h and h/2.
    """

    h: float | None = None
    richardson: bool = True
    order: int = 2

    def __post_init__(self):
        if self.order not in _STENCILS:
            raise ValueError(f"stencil order must be one of {sorted(_STENCILS)}")
        if self.h is not None and self.h <= 0:
            raise ValueError("step h must be positive")

    def step_for(self, mat) -> float:
        if self.h is not None:
            return self.h
        return 1e-2 * (1.0 + float(np.max(np.abs(mat))))


def _perm_sign(perm) -> int:
    inversions = 0
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                inversions += 1
    return -1 if inversions % 2 else 1


def _pair_delta(n: int, mu: int, nu: int, dtype=float) -> np.ndarray:
    delta = np.zeros((n, n), dtype=dtype)
    delta[mu, nu] = 1.0
    delta[nu, mu] = 1.0
    return delta


def _coord_diff(g, base, delta, h, order):
    """Raw central difference of g along the matrix direction ``delta``."""
    acc = None
    for off, coeff in _STENCILS[order]:
        term = coeff * g(base + (off * h) * delta)
        acc = term if acc is None else acc + term
    return acc / h


def _extrapolate(scheme: FDScheme, h: float, evaluate):
    if not scheme.richardson:
        return evaluate(h)
    big = evaluate(h)
    small = evaluate(0.5 * h)
    lead, den = _RICHARDSON[scheme.order]
    return (lead * small - big) / den


def sym_partial(f, y, mu: int, nu: int, scheme: FDScheme = FDScheme()):
    """Entry (mu, nu) of the symmetric-matrix derivative of scalar f at y."""
    y = np.asarray(y, dtype=float)
    delta = _pair_delta(y.shape[0], mu, nu)
    factor = 1.0 if mu == nu else 0.5
    h = scheme.step_for(y)
    return factor * _extrapolate(scheme, h, lambda hh: _coord_diff(f, y, delta, hh, scheme.order))


def _nested_diff(f, base, deltas, h, order):
    if not deltas:
        return f(base)
    first = deltas[0]
    rest = deltas[1:]
    return _coord_diff(lambda yy: _nested_diff(f, yy, rest, h, order), base, first, h, order)


def exterior_derivative_num(f, y, q: int, scheme: FDScheme = FDScheme()) -> ExteriorMatrix:
    """Numeric exterior-power derivative matrix of a scalar function of a
    symmetric matrix: entry (a, b) expands det over the symmetric-derivative
    operators with rows a and columns b,

        sum_{sigma} sgn(sigma) prod_i (d)_{a_i, b_sigma(i)} f .

    Mixed partials above order 3 are refused (cost and roundoff).
    """
    y = np.asarray(y, dtype=float)
    m = y.shape[0]
    if q > 3:
        raise UnsupportedRegimeError("mixed partials above order 3 are not supported")
    if not 0 <= q <= m:
        raise ValueError(f"q={q} out of range 0..{m}")
    subs = q_subsets(m, q)
    h = scheme.step_for(y)

    def entry(a, b, hh):
        total = 0.0
        for perm in itertools.permutations(range(q)):
            deltas = []
            factor = 1.0
            for i in range(q):
                row, col = a[i] - 1, b[perm[i]] - 1
                deltas.append(_pair_delta(m, row, col))
                factor *= 1.0 if row == col else 0.5
            total += _perm_sign(perm) * factor * _nested_diff(f, y, deltas, hh, scheme.order)
        return total

    def matrix_at(hh):
        out = np.empty((len(subs), len(subs)))
        for i, a in enumerate(subs):
            for j, b in enumerate(subs):
                out[i, j] = entry(a, b, hh)
        return out

    if not scheme.richardson:
        return ExteriorMatrix(m, q, matrix_at(h))
    big = matrix_at(h)
    small = matrix_at(0.5 * h)
    lead, den = _RICHARDSON[scheme.order]
    spread = np.abs(small - big)
    ref = np.maximum(np.abs(small), np.abs(big))
    if np.any(spread > 0.5 * ref + 1e-9):
        warnings.warn(
            "step halving moved some derivative entries by more than 50%; "
            "the difference scheme may be unstable at this point",
            RuntimeWarning,
            stacklevel=2,
        )
    return ExteriorMatrix(m, q, (lead * small - big) / den)


def det_dz_numeric(f, z, scheme: FDScheme = FDScheme()) -> complex:
    """Numeric determinant of the complex symmetric derivative applied to f:

        det(d/dZ) f,   (d/dZ)_{mu nu} = 1/2 (1 + delta_{mu nu}) 1/2 (d/dx - i d/dy)

    expanded over permutations with nested central differences in the real
    and imaginary parts.  Supports m <= 3.
    """
    z = np.asarray(z, dtype=complex)
    m = z.shape[0]
    if m > 3:
        raise UnsupportedRegimeError("determinant expansion above dimension 3 is not supported")
    h = scheme.step_for(z)

    def dz_nested(zz, pairs, hh):
        if not pairs:
            return f(zz)
        (mu, nu), rest = pairs[0], pairs[1:]
        delta = _pair_delta(m, mu, nu, dtype=complex)

        def g(w):
            return dz_nested(w, rest, hh)

        dx = _coord_diff(g, zz, delta, hh, scheme.order)
        dy = _coord_diff(g, zz, 1j * delta, hh, scheme.order)
        factor = 1.0 if mu == nu else 0.5
        return factor * 0.5 * (dx - 1j * dy)

    def full(hh):
        total = 0.0 + 0.0j
        for perm in itertools.permutations(range(m)):
            pairs = [(i, perm[i]) for i in range(m)]
            total += _perm_sign(perm) * dz_nested(z, pairs, hh)
        return total

    return _extrapolate(scheme, h, full)
