"""Monte Carlo integration over the cone of SPD matrices against the
invariant measure det(Y)^{-(m+1)/2} prod_{j<=k} dY_jk, and the closed
forms of the exterior-trace integrals it cross-checks.

Sampling strategy
-----------------
The proposal is a Wishart(nu, V) distribution built by the Bartlett
construction: Y = (L A)(L A)^T with V = L L^T, A lower triangular,
A_ii^2 ~ chi^2(nu - i) (0-based i) and standard normal subdiagonal.  The
importance weight is the invariant-measure density divided by the Wishart
density, with det powers and tr(V^{-1} Y) read off the Cholesky factors
(log det Y = log det V + 2 sum log A_ii, tr(V^{-1} Y) = sum A_ij^2).

Reproducibility: samples are drawn in fixed-size chunks, chunk c from the
substream SeedSequence(seed, spawn_key=(c,)), and per-chunk partial sums
are combined pairwise in chunk order.  The estimate therefore depends on
(seed, params, integrand) only; never on the worker count, which the
environment variable STURM_THREADS merely caps for speed.

Diagnostics: samples with non-finite weight or integrand are rejected and
counted; the estimate is flagged ``diverged`` unless the standard error
shrinks roughly like 1/sqrt(N) across three sample doublings.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .exterior_algebra import exterior_power_batch, trace_sandwich
from .special_functions import FOUR_PI, c_poch, gamma_m, log_gamma_m

# a doubling counts against convergence when stderr shrinks by less than this
_DOUBLING_FACTOR = 0.95


@dataclass(frozen=True)
class MonteCarloParams:
    """Sampling budget and reproducibility knobs for cone integrals."""

    samples: int = 1_000_000
    seed: int = 0
    nu: float | None = None  # proposal degrees of freedom; None = per-integral default
    chunk_size: int = 65_536

    def __post_init__(self):
        if self.samples < 1:
            raise ValueError("samples must be >= 1")
        if self.chunk_size < 1:
            raise ValueError("chunk_size must be >= 1")


@dataclass
class IntegralEstimate:
    """Importance-sampling estimate with per-entry standard error."""

    value: object
    stderr: object
    samples: int
    effective_samples: float
    rejected: int = 0
    diverged: bool = False


def _worker_count() -> int:
    raw = os.environ.get("STURM_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _chunk_partials(f, m, nu, chol_scale, log_norm, seed, chunk_index, count):
    rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(chunk_index,)))
    a = np.zeros((count, m, m))
    for i in range(m):
        a[:, i, i] = np.sqrt(2.0 * rng.standard_gamma(0.5 * (nu - i), size=count))
    tril = np.tril_indices(m, k=-1)
    if tril[0].size:
        a[:, tril[0], tril[1]] = rng.standard_normal((count, tril[0].size))
    b = np.einsum("ij,njk->nik", chol_scale, a)
    y = np.einsum("nik,njk->nij", b, b)
    diag = np.einsum("nii->ni", b)
    logdet_y = 2.0 * np.sum(np.log(diag), axis=1)
    tr_viy = np.einsum("nij,nij->n", a, a)
    log_q = 0.5 * (nu - m - 1.0) * logdet_y - 0.5 * tr_viy - log_norm
    log_w = -0.5 * (m + 1.0) * logdet_y - log_q
    w = np.exp(log_w)
    fx = np.asarray(f(y), dtype=float)
    x = fx * (w if fx.ndim == 1 else w[:, None, None])
    finite = np.isfinite(w)
    finite &= np.isfinite(x) if x.ndim == 1 else np.isfinite(x).all(axis=(1, 2))
    rejected = int(count - np.count_nonzero(finite))
    if rejected:
        mask = finite if x.ndim == 1 else finite[:, None, None]
        x = np.where(mask, x, 0.0)
        w = np.where(finite, w, 0.0)
    return (
        x.sum(axis=0),
        (x * x).sum(axis=0),
        float(w.sum()),
        float((w * w).sum()),
        count,
        rejected,
    )


def _pairwise_sum(items):
    if len(items) == 1:
        return items[0]
    half = len(items) // 2
    left = _pairwise_sum(items[:half])
    right = _pairwise_sum(items[half:])
    return tuple(l + r for l, r in zip(left, right))


def _prefix_stderr(partials, upto):
    sum_x, sum_x2, _, _, n, _ = _pairwise_sum(partials[:upto])
    mean = sum_x / n
    var = np.maximum(sum_x2 / n - mean * mean, 0.0)
    return float(np.max(np.atleast_1d(np.sqrt(var / n))))


def _diverged(partials) -> bool:
    """True when stderr fails to shrink ~1/sqrt(N) over three doublings."""
    k = len(partials)
    if k < 8:
        return False
    marks = [k // 8, k // 4, k // 2, k]
    errs = [_prefix_stderr(partials, u) for u in marks]
    bad = 0
    for lo, hi in zip(errs, errs[1:]):
        if lo > 0.0 and hi >= _DOUBLING_FACTOR * lo:
            bad += 1
    final_stalled = errs[-2] > 0.0 and errs[-1] >= errs[-2]
    return bad >= 2 or final_stalled


def integrate_invariant(f, m: int, params: MonteCarloParams, *, scale=None, nu_default=None) -> IntegralEstimate:
    """Estimate the invariant-measure integral of ``f`` over SPD matrices.

    ``f`` receives a batch (n, m, m) of SPD samples and must return (n,)
    scalars or (n, d, d) matrices.  The proposal scale ``V`` defaults to
    E/2, matched to exp(-trace Y) targets; callers with a different
    exponential factor pass their own.  Degrees of freedom: ``params.nu``
    overrides ``nu_default`` overrides m + 1, and must exceed m - 1.
    """
    nu = params.nu if params.nu is not None else (nu_default if nu_default is not None else m + 1.0)
    if nu <= m - 1:
        raise ValueError(f"proposal degrees of freedom nu={nu} must exceed m-1={m - 1}")
    scale_mat = np.asarray(scale, dtype=float) if scale is not None else 0.5 * np.eye(m)
    chol = np.linalg.cholesky(scale_mat)
    logdet_scale = 2.0 * float(np.sum(np.log(np.diag(chol))))
    log_norm = (
        0.5 * nu * m * math.log(2.0) + 0.5 * nu * logdet_scale + log_gamma_m(m, 0.5 * nu)[0]
    )

    chunks = []
    remaining = params.samples
    index = 0
    while remaining > 0:
        count = min(params.chunk_size, remaining)
        chunks.append((index, count))
        remaining -= count
        index += 1

    def run(job):
        chunk_index, count = job
        return _chunk_partials(f, m, nu, chol, log_norm, params.seed, chunk_index, count)

    workers = _worker_count()
    if workers == 1 or len(chunks) == 1:
        partials = [run(job) for job in chunks]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            partials = list(pool.map(run, chunks))

    sum_x, sum_x2, sum_w, sum_w2, n_total, n_rej = _pairwise_sum(partials)
    mean = sum_x / n_total
    var = np.maximum(sum_x2 / n_total - mean * mean, 0.0)
    stderr = np.sqrt(var / n_total)
    ess = (sum_w * sum_w / sum_w2) if sum_w2 > 0.0 else 0.0
    return IntegralEstimate(
        value=float(mean) if np.ndim(mean) == 0 else mean,
        stderr=float(stderr) if np.ndim(stderr) == 0 else stderr,
        samples=int(n_total),
        effective_samples=float(ess),
        rejected=int(n_rej),
        diverged=_diverged(partials),
    )


def i_q_closed(m: int, q: int, s) -> float:
    """Closed form of the exterior-trace cone integral:

        (-4 pi)^{-q} (4 pi)^{-m s} binom(m, q) C_q(-s) Gamma_m(s).
    """
    if not 0 <= q <= m:
        raise ValueError(f"q={q} out of range 0..{m}")
    g = gamma_m(m, s)
    sf = float(s)
    return (-FOUR_PI) ** (-q) * FOUR_PI ** (-m * sf) * math.comb(m, q) * c_poch(q, -sf) * g


def i_q_numeric(m: int, q: int, s, t_mat, params: MonteCarloParams) -> IntegralEstimate:
    """Monte Carlo oracle for the exterior-trace integral

        int trace((Y^{1/2} T Y^{1/2})^[q]) det(TY)^s exp(-4 pi tr(TY)) dY_inv .

    The estimand is independent of the SPD matrix ``t_mat`` (invariance of
    the measure); distinct choices must agree within error.
    """
    t = np.asarray(t_mat, dtype=float)
    det_t = float(np.linalg.det(t))
    sf = float(s)

    def integrand(y):
        ts = trace_sandwich(y, t, q)
        dets = np.linalg.det(y)
        tr = np.einsum("ij,nji->n", t, y)
        return ts * (det_t * dets) ** sf * np.exp(-FOUR_PI * tr)

    scale = np.linalg.inv(t) / (2.0 * FOUR_PI)
    return integrate_invariant(integrand, m, params, scale=scale, nu_default=m + 2.0 * sf)


def q_trace_integral_num(m: int, q: int, s, params: MonteCarloParams) -> IntegralEstimate:
    """Monte Carlo oracle for the matrix-valued integral

        int Y^[q] exp(-trace Y) det(Y)^s dY_inv = (-1)^q C_q(-s) Gamma_m(s) E .
    """
    sf = float(s)

    def integrand(y):
        pw = exterior_power_batch(y, q)
        dets = np.linalg.det(y)
        tr = np.trace(y, axis1=1, axis2=2)
        return pw * (dets ** sf * np.exp(-tr))[:, None, None]

    return integrate_invariant(integrand, m, params, scale=0.5 * np.eye(m), nu_default=m + 2.0 * sf)
