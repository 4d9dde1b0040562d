"""Precision-configurable quadrature and series-summation engines.

Everything downstream (the classical special-function stack, the
w-deformed zeta/digamma family, the identity verifiers) is built on the
four engines in this module:

  * ``integrate_finite``        -- adaptive tanh-sinh on a finite interval
  * ``integrate_semi_infinite`` -- truncation by decay-class tail bound,
                                   then ``integrate_finite``
  * ``integrate_iterated``      -- 2- or 3-fold iterated quadrature
  * ``sum_with_tail``           -- partial sum plus analytic tail estimate
  * ``mellin_barnes_line``      -- (1/2*pi*i) * integral over Re(s)=c

All arithmetic is mpmath software floating point at a configurable
number of decimal digits (``PrecisionConfig.working_digits``); the
identity residuals downstream cancel ~10 digits, so machine doubles are
not enough.  Every engine is pure and deterministic: identical inputs
and config produce bit-identical outputs (fixed summation order, no
randomness, caches are write-once and keyed by precision).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from mpmath import mp, mpf, mpc

__all__ = [
    "PrecisionConfig",
    "QuadratureResult",
    "SeriesResult",
    "DecayHint",
    "EvaluationFailure",
    "TailDivergenceError",
    "TailModelMismatch",
    "DomainError",
    "working_precision",
    "integrate_finite",
    "integrate_semi_infinite",
    "integrate_iterated",
    "sum_with_tail",
    "mellin_barnes_line",
]

# Guard digits added on top of working_digits for all internal work.
GUARD_DIGITS = 10


class DomainError(ValueError):
    """An argument violates a documented precondition."""


class EvaluationFailure(ArithmeticError):
    """An integrand returned NaN or could not be evaluated."""


class TailDivergenceError(ArithmeticError):
    """Sampled tail magnitude exceeds the bound implied by the decay hint."""


class TailModelMismatch(ArithmeticError):
    """Observed term decay contradicts the declared tail model."""


@dataclass(frozen=True)
class PrecisionConfig:
    """Working precision and convergence targets for one computation.

    ``target_abs_tol``/``target_rel_tol`` default to ``10**(5 - working_digits)``
    which leaves five digits of headroom below the working precision.
    """

    working_digits: int = 30
    target_abs_tol: Optional[float] = None
    target_rel_tol: Optional[float] = None
    max_evals: int = 2_000_000

    def __post_init__(self):
        if self.working_digits < 16:
            raise DomainError("working_digits must be >= 16")
        if self.max_evals <= 0:
            raise DomainError("max_evals must be positive")
        for name in ("target_abs_tol", "target_rel_tol"):
            v = getattr(self, name)
            if v is not None and not v > 0:
                raise DomainError(f"{name} must be positive")

    @property
    def abs_tol(self) -> mpf:
        if self.target_abs_tol is not None:
            return mpf(self.target_abs_tol)
        return mpf(10) ** (5 - self.working_digits)

    @property
    def rel_tol(self) -> mpf:
        if self.target_rel_tol is not None:
            return mpf(self.target_rel_tol)
        return mpf(10) ** (5 - self.working_digits)

    def tightened(self, extra_digits: int = 1) -> "PrecisionConfig":
        """Config with tolerances shrunk by ``extra_digits`` decades.

        Used by the iterated integrator: inner axes run one digit tighter
        per nesting level.
        """
        return PrecisionConfig(
            working_digits=self.working_digits,
            target_abs_tol=float(self.abs_tol / mpf(10) ** extra_digits),
            target_rel_tol=float(self.rel_tol / mpf(10) ** extra_digits),
            max_evals=self.max_evals,
        )


DEFAULT_CONFIG = PrecisionConfig()


def working_precision(cfg: PrecisionConfig):
    """Context manager setting mpmath precision (plus guard digits)."""
    return mp.workdps(cfg.working_digits + GUARD_DIGITS)


@dataclass(frozen=True)
class QuadratureResult:
    value: mpc
    error_estimate: mpf
    evals: int
    converged: bool

    def __post_init__(self):
        if self.error_estimate < 0 or self.evals < 0:
            raise DomainError("error_estimate and evals must be non-negative")


@dataclass(frozen=True)
class SeriesResult:
    value: mpc
    tail_estimate: mpf
    terms_used: int

    def __post_init__(self):
        if not mp.isfinite(self.tail_estimate):
            raise DomainError("tail_estimate must be finite")
        if self.terms_used <= 0:
            raise DomainError("terms_used must be positive")


@dataclass(frozen=True)
class DecayHint:
    """Decay class of an integrand on a semi-infinite axis.

    kind='gaussian':     |f(t)| <~ C exp(-rate * t^2)
    kind='exponential':  |f(t)| <~ C exp(-rate * t)
    kind='power':        |f(t)| <~ C t^(-power),  power > 1
    """

    kind: str = "exponential"
    rate: float = 1.0
    power: float = 2.0

    def __post_init__(self):
        if self.kind not in ("gaussian", "exponential", "power"):
            raise DomainError(f"unknown decay kind {self.kind!r}")
        if self.rate <= 0:
            raise DomainError("decay rate must be positive")
        if self.kind == "power" and self.power <= 1:
            raise DomainError("power decay needs power > 1")


def _count_calls(f, counter):
    def wrapped(*args):
        counter[0] += 1
        v = f(*args)
        if v is None or (hasattr(v, "real") and not mp.isfinite(v)):
            raise EvaluationFailure(f"integrand returned non-finite value at {args}")
        return v

    return wrapped


def integrate_finite(
    f: Callable,
    a,
    b,
    cfg: PrecisionConfig = DEFAULT_CONFIG,
    breakpoints: Optional[Sequence] = None,
) -> QuadratureResult:
    """Adaptive tanh-sinh integration of ``f`` on (a, b).

    Endpoint singularities up to integrable (logarithmic/algebraic) order
    are handled by the double-exponential transform.  ``breakpoints``
    inserts interior panel boundaries (used for oscillatory integrands).
    The returned error estimate is the tanh-sinh level-to-level change,
    i.e. a verified-by-refinement bound.
    """
    a, b = mpf(a), mpf(b)
    if not a < b:
        raise DomainError(f"need a < b, got ({a}, {b})")
    counter = [0]
    g = _count_calls(f, counter)
    points = [a]
    if breakpoints:
        points.extend(mpf(p) for p in breakpoints if a < mpf(p) < b)
    points.append(b)
    with working_precision(cfg):
        value = mpc(0)
        err = mpf(0)
        for maxdeg in (6, 8, 10):
            value, err = mp.quad(
                g, points, maxdegree=maxdeg, error=True, method="tanh-sinh"
            )
            tol = cfg.abs_tol + cfg.rel_tol * abs(value)
            if err <= tol or counter[0] >= cfg.max_evals:
                break
        converged = bool(err <= cfg.abs_tol + cfg.rel_tol * abs(value))
    return QuadratureResult(value, mpf(err), counter[0], converged)


def _truncation_point(f, a, hint: DecayHint, tol) -> mpf:
    """Pick T so the decay-hint tail bound beyond T is below tol/10.

    The constant C of the envelope is calibrated from |f| samples at
    geometrically spaced points; a sample beyond T is then checked
    against the envelope (tail-divergence guard).
    """
    a = mpf(a)
    samples = [a + mpf(s) for s in (0.5, 1, 2, 4, 8)]
    C = mpf(0)
    for t in samples:
        ft = abs(f(t))
        if not mp.isfinite(ft):
            raise EvaluationFailure(f"integrand not finite at sample point {t}")
        if hint.kind == "gaussian":
            env = mp.exp(-mpf(hint.rate) * (t - a) ** 2)
        elif hint.kind == "exponential":
            env = mp.exp(-mpf(hint.rate) * (t - a))
        else:
            env = t ** mpf(-hint.power) if t > 0 else mpf(1)
        C = max(C, ft / env)
    C = max(C, mpf(10) ** (-mp.dps))  # avoid zero envelope for tiny integrands
    target = mpf(tol) / 10
    r = mpf(hint.rate)
    if hint.kind == "exponential":
        # C e^{-rT'} / r <= target
        T = a + mp.log(C / (r * target)) / r
    elif hint.kind == "gaussian":
        T = a + mp.sqrt(max(mp.log(C / target), mpf(1))) / mp.sqrt(r)
        # refine: tail <= C e^{-rT'^2}/(2 r T')
        for _ in range(4):
            T = a + mp.sqrt(mp.log(C / (2 * r * max(T - a, mpf(1)) * target))) / mp.sqrt(r)
    else:
        p = mpf(hint.power)
        # integral_T^inf C t^-p dt = C T^{1-p}/(p-1) <= target
        T = (C / ((p - 1) * target)) ** (1 / (p - 1))
        T = max(T, a + 1)
    T = max(T, a + 2)
    # decay-hint sanity check: sample halfway past T must obey the envelope
    probe = T * mpf("1.25") if hint.kind == "power" else T + (T - a) / 4
    fp = abs(f(probe))
    if hint.kind == "gaussian":
        bound = C * mp.exp(-r * (probe - a) ** 2)
    elif hint.kind == "exponential":
        bound = C * mp.exp(-r * (probe - a))
    else:
        bound = C * probe ** (-mpf(hint.power))
    if fp > 100 * bound + target:
        raise TailDivergenceError(
            f"tail sample at t={mp.nstr(probe, 8)} exceeds decay envelope: "
            f"|f|={mp.nstr(fp, 8)} vs bound={mp.nstr(bound, 8)}"
        )
    return T


def integrate_semi_infinite(
    f: Callable,
    a,
    decay: DecayHint,
    cfg: PrecisionConfig = DEFAULT_CONFIG,
    breakpoints: Optional[Sequence] = None,
) -> QuadratureResult:
    """Integrate f on (a, infinity) given its decay class.

    The truncation point T comes from the decay-hint tail bound (kept
    below tol/10), after which the finite engine runs on (a, T).  The
    tail bound is folded into the reported error estimate.
    """
    a = mpf(a)
    if a < 0:
        raise DomainError("semi-infinite axis starts at a >= 0")
    with working_precision(cfg):
        tol = cfg.abs_tol
        T = _truncation_point(f, a, decay, tol)
        pts = list(breakpoints) if breakpoints else None
        res = integrate_finite(f, a, T, cfg, breakpoints=pts)
        err = res.error_estimate + tol / 10
        converged = bool(err <= cfg.abs_tol + cfg.rel_tol * abs(res.value))
    return QuadratureResult(res.value, mpf(err), res.evals, converged)


def integrate_iterated(
    f: Callable,
    axes: Sequence,
    cfg: PrecisionConfig = DEFAULT_CONFIG,
) -> QuadratureResult:
    """Iterated integration over 2 or 3 axes.

    Each axis is either ``(a, b)`` for a finite range or ``(a, None, hint)``
    for a semi-infinite range with a :class:`DecayHint`.  Inner axes run
    with tolerances tightened by one digit per nesting level.  The
    integrand receives the axis variables in order ``f(x0, x1, ...)``.
    """
    if len(axes) not in (2, 3):
        raise DomainError("integrate_iterated supports 2 or 3 axes")
    evals = [0]

    def run(level: int, fixed: tuple):
        # axes[0] is the outermost axis; inner axes run one digit tighter
        # per nesting level so their noise stays below the outer tolerance.
        level_cfg = cfg.tightened(level)
        axis = axes[level]
        if level == len(axes) - 1:
            def g(x):
                return f(*fixed, x)
        else:
            def g(x):
                return run(level + 1, fixed + (x,)).value

        if len(axis) == 2 or axis[1] is not None:
            res = integrate_finite(g, axis[0], axis[1], level_cfg)
        else:
            res = integrate_semi_infinite(g, axis[0], axis[2], level_cfg)
        evals[0] += res.evals
        return res

    top = run(0, ())
    return QuadratureResult(top.value, top.error_estimate, evals[0], top.converged)


def sum_with_tail(
    term: Callable[[int], mpc],
    tail_model: str = "power",
    cfg: PrecisionConfig = DEFAULT_CONFIG,
    power: float = 2.0,
    ratio: Optional[float] = None,
    max_terms: int = 10000,
    min_terms: int = 8,
    custom_tail: Optional[Callable[[int], mpc]] = None,
    start: int = 1,
) -> SeriesResult:
    """Sum ``term(m)`` for m >= start with an analytic tail estimate.

    tail_model='power':     |term(m)| ~ c/m^power; the constant c is fitted
                            from the last few computed terms and the tail
                            is c * zeta(power, M+1).
    tail_model='geometric': |term(m)| ~ c r^m with the ratio fitted (or
                            given); tail = t_M * r/(1-r).
    tail_model='custom':    ``custom_tail(M)`` supplies the tail bound.

    Terms are accumulated in fixed ascending order (deterministic).  The
    sum stops once the tail estimate falls below the configured
    tolerance, or at ``max_terms``.  A model contradiction (observed term
    ratios growing where the model says they must shrink) raises
    :class:`TailModelMismatch`.
    """
    if tail_model not in ("power", "geometric", "custom"):
        raise DomainError(f"unknown tail model {tail_model!r}")
    with working_precision(cfg):
        total = mpc(0)
        window: list = []
        m = start
        used = 0
        tail = mpf("inf")
        while used < max_terms:
            t = term(m)
            total += t
            window.append((m, t))
            if len(window) > 6:
                window.pop(0)
            used += 1
            m += 1
            if used < min_terms:
                continue
            tail = _tail_estimate(
                tail_model, window, m - 1, power, ratio, custom_tail
            )
            if tail <= cfg.abs_tol + cfg.rel_tol * abs(total):
                break
        value = total + _tail_correction(tail_model, window, m - 1, power, ratio, custom_tail)
        tail = _tail_estimate(tail_model, window, m - 1, power, ratio, custom_tail)
    return SeriesResult(value, mpf(abs(tail)), used)


def _fit_power_constant(window, power):
    vals = [abs(t) * mpf(m) ** mpf(power) for m, t in window]
    return sum(vals) / len(vals)


def _tail_correction(model, window, M, power, ratio, custom_tail):
    """Signed analytic tail added to the partial sum."""
    if model == "custom":
        return mpc(custom_tail(M))
    if model == "geometric":
        m_last, t_last = window[-1]
        r = mpf(ratio) if ratio is not None else _fit_ratio(window)
        if not r < 1:
            raise TailModelMismatch(f"fitted geometric ratio {mp.nstr(r, 6)} >= 1")
        return t_last * r / (1 - r)
    # power model: fit signed constant from the last terms
    m_last, t_last = window[-1]
    consts = [t * mpf(m) ** mpf(power) for m, t in window]
    c = sum(consts) / len(consts)
    _check_power_model(window, power)
    return c * mp.zeta(mpf(power), M + 1)


def _tail_estimate(model, window, M, power, ratio, custom_tail):
    if model == "custom":
        return abs(mpc(custom_tail(M)))
    if model == "geometric":
        m_last, t_last = window[-1]
        r = mpf(ratio) if ratio is not None else _fit_ratio(window)
        if not r < 1:
            raise TailModelMismatch(f"fitted geometric ratio {mp.nstr(r, 6)} >= 1")
        return abs(t_last) * r / (1 - r)
    c = _fit_power_constant(window, power)
    # after the signed correction the residual error is at most ~the spread
    consts = [t * mpf(m) ** mpf(power) for m, t in window]
    spread = max(abs(x - sum(consts) / len(consts)) for x in consts)
    return (spread + mpf(10) ** (-mp.dps) * abs(c)) * mp.zeta(mpf(power), M + 1)


def _fit_ratio(window):
    ratios = []
    for (m0, t0), (m1, t1) in zip(window, window[1:]):
        if abs(t0) > 0:
            ratios.append(abs(t1) / abs(t0))
    if not ratios:
        return mpf("0.5")
    return sum(ratios) / len(ratios)


def _check_power_model(window, power):
    # ratios |t_{m+1}/t_m| must approach (m/(m+1))^power, not exceed ~1
    for (m0, t0), (m1, t1) in zip(window, window[1:]):
        if abs(t0) == 0:
            continue
        r = abs(t1) / abs(t0)
        if r > mpf("1.5"):
            raise TailModelMismatch(
                f"term ratio {mp.nstr(r, 4)} at m={m1} contradicts power-law decay"
            )


def mellin_barnes_line(
    g: Callable,
    c,
    cfg: PrecisionConfig = DEFAULT_CONFIG,
    decay_rate: float = math.pi / 2,
) -> QuadratureResult:
    """Evaluate (1/2*pi*i) * integral of g(s) ds over the line Re(s)=c.

    Needs g to decay exponentially in |Im s| (Gamma-factor decay along
    vertical lines); ``decay_rate`` is that exponential rate.  The two
    half-lines are folded into one semi-infinite integral of
    g(c+it) + g(c-it).
    """
    c = mpf(c)

    def folded(t):
        return g(mpc(c, t)) + g(mpc(c, -t))

    with working_precision(cfg):
        res = integrate_semi_infinite(
            folded, 0, DecayHint("exponential", rate=decay_rate), cfg
        )
        value = res.value / (2 * mp.pi)
        err = res.error_estimate / (2 * mp.pi)
    return QuadratureResult(value, mpf(err), res.evals, res.converged)
