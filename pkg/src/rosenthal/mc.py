"""Monte-Carlo validation of the Poisson-moment identities.

Sampling runs on a counter-based generator (Philox) keyed per fixed-size
chunk, so estimates are bit-reproducible and independent of how the chunks
might be partitioned across workers.  The Poisson sampler itself is exact:
sequential-search inversion for small rates, transformed rejection (PTRS)
above.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from rosenthal._backend import kernels
from rosenthal.config import GENERATOR_NAME
from rosenthal.constants import G_value
from rosenthal.errors import DomainError, InconsistencyError
from rosenthal.special import generalized_bell

#: Samples per chunk; each chunk draws from its own Philox key, which is
#: what makes the merged stream independent of any worker partitioning.
CHUNK = 1 << 15

#: Rate threshold between inversion and PTRS sampling.
INVERSION_MAX_LAM = 30.0

MC_P_MAX = 12.0


def _chunk_rng(seed: int, stream_id: int, chunk: int) -> np.random.Generator:
    ss = np.random.SeedSequence(entropy=seed, spawn_key=(stream_id, chunk))
    return np.random.Generator(np.random.Philox(ss))


class UniformStream:
    """Buffered scalar view of one chunk's uniform sequence."""

    def __init__(self, seed: int, stream_id: int = 0, chunk: int = 0,
                 block: int = 4096):
        self._gen = _chunk_rng(seed, stream_id, chunk)
        self._block = block
        self._buf = self._gen.random(block)
        self._pos = 0

    def next(self) -> float:
        if self._pos >= self._buf.shape[0]:
            self._buf = self._gen.random(self._block)
            self._pos = 0
        v = float(self._buf[self._pos])
        self._pos += 1
        return v


@dataclass(frozen=True)
class McEstimate:
    mean: float
    stderr: float
    n_samples: int
    seed: int
    generator: str = GENERATOR_NAME


def sample_poisson(lam: float, stream: UniformStream) -> int:
    """One exact Poisson draw from the uniform stream.

    Inversion by sequential search for lam <= 30, PTRS rejection above;
    consumes uniforms in the same pattern as the batch kernels.
    """
    if not 0.0 < lam <= 1e3:
        raise DomainError(f"sample_poisson requires 0 < lam <= 1e3, got {lam}")
    if lam <= INVERSION_MAX_LAM:
        u = stream.next()
        q = math.exp(-lam)
        cdf = q
        k = 0
        while u > cdf and k < 4000:
            k += 1
            q *= lam / k
            cdf += q
        return k
    b = 0.931 + 2.53 * math.sqrt(lam)
    a = -0.059 + 0.02483 * b
    inv_alpha = 1.1239 + 1.1328 / (b - 3.4)
    v_r = 0.9277 - 3.6224 / (b - 2.0)
    log_lam = math.log(lam)
    while True:
        uu = stream.next() - 0.5
        v = stream.next()
        us = 0.5 - abs(uu)
        if us <= 0.0:  # u exactly on the edge; reject the attempt
            continue
        k = math.floor((2.0 * a / us + b) * uu + lam + 0.43)
        if us >= 0.07 and v <= v_r:
            return int(k)
        if k < 0 or (us < 0.013 and v > us):
            continue
        if math.log(v * inv_alpha / (a / (us * us) + b)) \
                <= k * log_lam - lam - math.lgamma(k + 1.0):
            return int(k)


def poisson_draws(lam: float, n: int, seed: int,
                  stream_id: int = 0) -> np.ndarray:
    """n exact Poisson draws; chunked so the result only depends on
    (lam, n, seed, stream_id)."""
    if not 0.0 < lam <= 1e3:
        raise DomainError(f"poisson_draws requires 0 < lam <= 1e3, got {lam}")
    out = np.empty(n, dtype=np.int64)
    for c in range((n + CHUNK - 1) // CHUNK):
        start = c * CHUNK
        m = min(CHUNK, n - start)
        gen = _chunk_rng(seed, stream_id, c)
        view = out[start:start + m]
        if lam <= INVERSION_MAX_LAM:
            kernels.poisson_inversion(lam, gen.random(m), view)
        else:
            filled = 0
            leftover = np.empty(0)
            while filled < m:
                need = m - filled
                fresh = gen.random(max(64, 2 * need + (need & 1)))
                u = np.concatenate([leftover, fresh]) if leftover.size else fresh
                filled, consumed = kernels.poisson_ptrs_fill(lam, u, view, filled)
                leftover = u[consumed:]
    return out


def _moment_estimate(x: np.ndarray, n: int, seed: int) -> McEstimate:
    mean = float(x.mean())
    stderr = float(x.std(ddof=1) / math.sqrt(n))
    return McEstimate(mean=mean, stderr=stderr, n_samples=n, seed=seed)


def _check_mc_args(p: float, n_samples: int) -> None:
    if not 2.0 <= p <= MC_P_MAX:
        raise DomainError(
            f"MC moments support p in [2, {MC_P_MAX:g}], got {p}")
    if n_samples < 10_000:
        raise DomainError("need at least 1e4 samples")


def mc_L(p: float, n_samples: int, seed: int) -> McEstimate:
    """Empirical E|theta-1|^p over Poisson(1) draws."""
    _check_mc_args(p, n_samples)
    theta = poisson_draws(1.0, n_samples, seed, stream_id=0)
    x = np.abs(theta - 1.0) ** p
    return _moment_estimate(x, n_samples, seed)


def mc_K(p: float, n_samples: int, seed: int) -> McEstimate:
    """Empirical E|tau1-tau2|^p over independent Poisson(1/2) pairs."""
    _check_mc_args(p, n_samples)
    tau1 = poisson_draws(0.5, n_samples, seed, stream_id=1)
    tau2 = poisson_draws(0.5, n_samples, seed, stream_id=2)
    x = np.abs(tau1 - tau2).astype(np.float64) ** p
    return _moment_estimate(x, n_samples, seed)


def poisson_abs_moment(lam: float, p: float) -> float:
    """Exact E|pi - lam|^p for pi ~ Poisson(lam), lam <= 1."""
    if not 0.0 < lam <= 1.0:
        raise DomainError("exact Poisson moment implemented for lam <= 1")
    sv = generalized_bell(lam, p, lam)
    return math.exp(sv.log_value + 1.0 - lam)


_FAMILIES = ("centered-poisson", "rademacher", "two-point")


def mc_rosenthal_ratio(family: str, n_terms: int, p: float, n_samples: int,
                       seed: int, lam: float | None = None, a: float = 1.0,
                       q: float = 0.5) -> McEstimate:
    """Empirical ratio ||sum xi||_p / max(||sum xi||_2, (sum ||xi||_p^p)^{1/p})
    for one centered family; the denominator uses exact per-family moments.

    For p >= 4 the estimate is checked against the centered-case root G(p),
    which bounds the ratio for every centered family.
    """
    if family not in _FAMILIES:
        raise DomainError(f"unknown family {family!r}; pick from {_FAMILIES}")
    if n_terms < 1 or n_terms > 10_000:
        raise DomainError("n_terms must be in [1, 1e4]")
    if not 2.0 <= p <= MC_P_MAX:
        raise DomainError(f"ratio MC supports p in [2, {MC_P_MAX:g}]")
    if n_samples < 10_000:
        raise DomainError("need at least 1e4 samples")

    if family == "centered-poisson":
        lam = 1.0 / n_terms if lam is None else lam
        if not 0.0 < lam <= 1.0:
            raise DomainError("centered-poisson family needs 0 < lam <= 1")
        # The sum of n independent Poisson(lam) is Poisson(n*lam) exactly.
        total = poisson_draws(n_terms * lam, n_samples, seed, stream_id=3)
        sums = total - n_terms * lam
        l2 = math.sqrt(n_terms * lam)
        sum_p = (n_terms * poisson_abs_moment(lam, p)) ** (1.0 / p)
    elif family == "rademacher":
        sums = _signed_sums(n_samples, n_terms, seed, prob_up=0.5,
                            up=1.0, down=-1.0)
        l2 = math.sqrt(n_terms)
        sum_p = float(n_terms) ** (1.0 / p)
    else:  # two-point: a w.p. q, -a*q/(1-q) w.p. 1-q (centered)
        if not 0.0 < q < 1.0:
            raise DomainError("two-point family needs q in (0, 1)")
        down = -a * q / (1.0 - q)
        sums = _signed_sums(n_samples, n_terms, seed, prob_up=q,
                            up=a, down=down)
        l2 = math.sqrt(n_terms * a * a * q / (1.0 - q))
        moment_p = (a ** p) * q + abs(down) ** p * (1.0 - q)
        sum_p = (n_terms * moment_p) ** (1.0 / p)

    denom = max(l2, sum_p)
    x = np.abs(sums) ** p
    mean_p = float(x.mean())
    std_p = float(x.std(ddof=1))
    estimate = mean_p ** (1.0 / p) / denom
    # Delta method for the p-th root of the estimated p-th moment.
    stderr = (mean_p ** (1.0 / p - 1.0) / p) * std_p \
        / math.sqrt(n_samples) / denom
    est = McEstimate(mean=estimate, stderr=stderr,
                     n_samples=n_samples, seed=seed)
    if p >= 4.0:
        cap = G_value(p) * (1.0 + 5.0 * stderr / max(estimate, 1e-300))
        if estimate > cap:
            raise InconsistencyError(
                f"ratio estimate {estimate} above the centered-case root cap {cap}")
    return est


def _signed_sums(n_samples: int, n_terms: int, seed: int, prob_up: float,
                 up: float, down: float) -> np.ndarray:
    """Per-sample sums of i.i.d. two-valued variables, chunked like
    poisson_draws (stream 4)."""
    sums = np.empty(n_samples)
    rows_per_block = max(1, (1 << 22) // n_terms)
    for c in range((n_samples + CHUNK - 1) // CHUNK):
        start = c * CHUNK
        m = min(CHUNK, n_samples - start)
        gen = _chunk_rng(seed, 4, c)
        done = 0
        while done < m:
            rows = min(rows_per_block, m - done)
            u = gen.random((rows, n_terms))
            vals = np.where(u < prob_up, up, down)
            sums[start + done:start + done + rows] = vals.sum(axis=1)
            done += rows
    return sums
