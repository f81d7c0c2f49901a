"""Monte Carlo checks of the probabilistic machinery.

Torus-wrapped Brownian paths make the integral identities finite: with a
uniform start the walk stays uniform, so space averages of a function
along paths must match its grid mean. The discrete stochastic integral of
a heat-extension gradient telescopes to the terminal-minus-smoothed-start
difference up to an Euler error of strong order ~ 1/2. The transform
experiment checks the (p* - 1) moment domination for subordinated
martingale transforms.

Randomness comes from counter-based Philox streams keyed by
(seed, block index) over fixed-size path blocks, so ensembles are
bit-reproducible no matter how the path loop is scheduled.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import StatisticalPowerError
from .fields import FormField, TrigSeries

PATH_BLOCK = 4096


def _philox(seed: int, stream: int) -> np.random.Generator:
    mask = (1 << 64) - 1
    key = np.array([seed & mask, stream & mask], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


@dataclass
class PathEnsemble:
    """Gaussian increments and uniform torus starts for many paths."""

    n: int
    h: float
    steps: int
    paths: int
    seed: int
    L: float
    starts: np.ndarray  # (paths, n)
    increments: np.ndarray  # (paths, steps, n)

    def positions(self, step: int) -> np.ndarray:
        """Torus position of every path after `step` increments."""
        if not 0 <= step <= self.steps:
            raise ValueError("step out of range")
        pos = self.starts + self.increments[:, :step, :].sum(axis=1)
        return np.mod(pos, self.L)

    def increment_stats(self):
        flat = self.increments.reshape(-1, self.n)
        return flat.mean(axis=0), np.cov(flat, rowvar=False).reshape(self.n, self.n)


def simulate_paths(n, h, steps, paths, seed, L=1.0) -> PathEnsemble:
    """Euler ensemble: N(0, h I) increments, uniform starts, torus wrap."""
    if h <= 0:
        raise ValueError("step size must be positive")
    if steps < 1 or paths < 1:
        raise ValueError("counts must be at least 1")
    starts = np.empty((paths, n))
    increments = np.empty((paths, steps, n))
    scale = np.sqrt(h)
    for block_idx, lo in enumerate(range(0, paths, PATH_BLOCK)):
        hi = min(lo + PATH_BLOCK, paths)
        # draw the full block even when only part is used, so the ensemble
        # is a bitwise prefix of any larger one with the same seed
        rng = _philox(seed, block_idx)
        starts[lo:hi] = rng.uniform(0.0, L, size=(PATH_BLOCK, n))[: hi - lo]
        increments[lo:hi] = (
            scale * rng.standard_normal((PATH_BLOCK, steps, n))[: hi - lo]
        )
    return PathEnsemble(n, h, steps, paths, seed, L, starts, increments)


@dataclass(frozen=True)
class MarkovCheck:
    mc_value: float
    exact_value: float
    std_error: float

    @property
    def z_score(self) -> float:
        if self.std_error == 0.0:
            return 0.0
        return (self.mc_value - self.exact_value) / self.std_error


def markov_identity_check(grid, L, t, ensemble: PathEnsemble) -> MarkovCheck:
    """Space-averaged path expectation of g versus the grid mean of g."""
    k = round(t / ensemble.h)
    if abs(k * ensemble.h - t) > 1e-9 * max(t, ensemble.h):
        raise ValueError("t must be an integer multiple of the step size")
    if k > ensemble.steps:
        raise ValueError("t exceeds the simulated horizon")
    series = TrigSeries.from_grid(grid, L)
    values = series.value(ensemble.positions(k))
    se = float(values.std(ddof=1) / np.sqrt(len(values))) if len(values) > 1 else 0.0
    return MarkovCheck(
        mc_value=float(values.mean()), exact_value=series.mean(), std_error=se
    )


def ito_terminal_check(field: FormField, tau, ensemble: PathEnsemble) -> float:
    """RMS gap between the Euler stochastic integral and its closed form.

    Along each path, accumulate grad u(X_k, tau - t_k) . dX_k per
    component, where u is the heat extension of the field; the limit is
    f(X_tau) - (heat extension at tau)(X_0). Decays like sqrt(h).
    """
    if abs(ensemble.steps * ensemble.h - tau) > 1e-9 * max(tau, ensemble.h):
        raise ValueError("tau must equal steps * h")
    series = {m: TrigSeries.from_grid(c, field.L) for m, c in field.components.items()}
    masks = sorted(series)
    paths = ensemble.paths
    accum = np.zeros((paths, len(masks)))
    pos = ensemble.starts.copy()
    for k in range(ensemble.steps):
        remaining = tau - k * ensemble.h
        step = ensemble.increments[:, k, :]
        for idx, m in enumerate(masks):
            grad = series[m].gradient(pos, t=remaining)
            accum[:, idx] += np.einsum("pa,pa->p", grad, step)
        pos = np.mod(pos + step, field.L)
    closed = np.stack(
        [
            series[m].value(pos) - series[m].value(ensemble.starts, t=tau)
            for m in masks
        ],
        axis=1,
    )
    gap_sq = np.sum((accum - closed) ** 2, axis=1)
    return float(np.sqrt(gap_sq.mean()))


def ito_convergence_study(field, tau, step_counts, paths, seed, seeds_per_h=10):
    """Pooled RMS per step size and the log-log slope across them."""
    hs, rmss = [], []
    for idx, steps in enumerate(step_counts):
        h = tau / steps
        pooled = 0.0
        for rep in range(seeds_per_h):
            ensemble = simulate_paths(
                field.n, h, steps, paths, seed + 1000 * idx + rep, L=field.L
            )
            pooled += ito_terminal_check(field, tau, ensemble) ** 2
        hs.append(h)
        rmss.append(np.sqrt(pooled / seeds_per_h))
    slope = float(np.polyfit(np.log(hs), np.log(rmss), 1)[0])
    return np.array(hs), np.array(rmss), slope


# Predictable transforms. Each is called as transform(k, u_prev) with the
# running sum before step k (shape (trials, d)) and must return per-trial
# scalars in [-1, 1] (or a constant), so the subordination check below is
# exact in floating point.


def identity_transform(k, u_prev):
    return 1.0


def alternating_transform(k, u_prev):
    return -1.0 if k % 2 else 1.0


def sign_transform(k, u_prev):
    s = np.sign(u_prev[:, 0])
    s[s == 0.0] = 1.0
    return s


TRANSFORMS = {
    "identity": identity_transform,
    "alternating": alternating_transform,
    "sign": sign_transform,
}


@dataclass
class MartingalePair:
    """A walk and its predictable transform with running variations.

    base/transformed hold the terminal values U_T, Y_T; the quadratic
    variation gap <U> - <Y> is accumulated per step and every increment is
    checked to be nonnegative with zero tolerance while the pair is
    built. gap_history (optional) keeps the running gap per step.
    """

    base: np.ndarray  # (trials, d) terminal U
    transformed: np.ndarray  # (trials, d) terminal Y
    base_qv: np.ndarray  # (trials,) <U>_T
    transformed_qv: np.ndarray  # (trials,) <Y>_T
    gap_history: np.ndarray | None = None  # (trials, steps) running <U> - <Y>

    def subordination_holds(self) -> bool:
        """Exact pathwise check: the gap starts >= 0 and never decreases."""
        if self.gap_history is not None:
            if np.any(self.gap_history[:, 0] < 0.0):
                return False
            return not np.any(np.diff(self.gap_history, axis=1) < 0.0)
        return not np.any(self.base_qv - self.transformed_qv < 0.0)


def transform_walk(steps, trials, transform, seed, d=1, keep_history=False) -> MartingalePair:
    """Run a Gaussian walk through a predictable transform.

    The transform is called per step with the running sum so far and must
    return coefficients of modulus <= 1; any quadratic-variation increment
    of the transformed walk exceeding the base one aborts the run.
    """
    if callable(transform):
        fn = transform
    else:
        fn = TRANSFORMS[transform]
    rng = _philox(seed, 0)
    incs = rng.standard_normal((trials, steps, d))
    u = np.zeros((trials, d))
    y = np.zeros((trials, d))
    qv_u = np.zeros(trials)
    qv_y = np.zeros(trials)
    history = np.empty((trials, steps)) if keep_history else None
    for k in range(steps):
        coeff = np.asarray(fn(k, u), dtype=float)
        if np.any(np.abs(coeff) > 1.0):
            raise ValueError("transform coefficients must have modulus <= 1")
        step = incs[:, k, :]
        scaled = coeff[..., None] * step if coeff.ndim else coeff * step
        inc_u = np.sum(step**2, axis=1)
        inc_y = np.sum(scaled**2, axis=1)
        if np.any(inc_u - inc_y < 0.0):
            raise AssertionError("quadratic variation domination violated")
        qv_u += inc_u
        qv_y += inc_y
        u += step
        y += scaled
        if history is not None:
            history[:, k] = qv_u - qv_y
    return MartingalePair(u, y, qv_u, qv_y, history)


@dataclass(frozen=True)
class TransformResult:
    ratio: float
    rel_ci_half_width: float
    ceiling: float  # p* - 1
    trials: int

    @property
    def passed(self) -> bool:
        return self.ratio <= self.ceiling * (1.0 + 3.0 * self.rel_ci_half_width)


def martingale_transform_experiment(
    p,
    steps,
    trials,
    transform,
    seed,
    d=1,
    n_boot=200,
    max_rel_ci=0.05,
) -> TransformResult:
    """Moment ratio of a transformed walk against the (p* - 1) ceiling.

    Builds the pair via transform_walk (which enforces subordination
    pathwise) and bootstraps a confidence interval for
    (E|Y|^p / E|U|^p)^(1/p). Raises StatisticalPowerError when the
    interval is too wide to support a ceiling comparison.
    """
    p = float(p)
    if not p > 1.0:
        raise ValueError("exponent must lie in (1, inf)")
    pair = transform_walk(steps, trials, transform, seed, d=d)
    u_p = np.sum(pair.base**2, axis=1) ** (p / 2.0)
    y_p = np.sum(pair.transformed**2, axis=1) ** (p / 2.0)
    ratio = float((y_p.mean() / u_p.mean()) ** (1.0 / p))
    boot_rng = _philox(seed, 1)
    boots = np.empty(n_boot)
    for b in range(n_boot):
        idx = boot_rng.integers(0, trials, trials)
        boots[b] = (y_p[idx].mean() / u_p[idx].mean()) ** (1.0 / p)
    half = float((np.quantile(boots, 0.975) - np.quantile(boots, 0.025)) / 2.0)
    rel_half = half / ratio if ratio > 0 else np.inf
    if rel_half > max_rel_ci:
        raise StatisticalPowerError(
            f"relative CI half-width {rel_half:.3e} exceeds {max_rel_ci}; raise trials"
        )
    p_star = max(p, p / (p - 1.0))
    return TransformResult(
        ratio=ratio, rel_ci_half_width=rel_half, ceiling=p_star - 1.0, trials=trials
    )
