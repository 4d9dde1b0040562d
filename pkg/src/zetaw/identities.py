"""Residual verification of the modular relations and asymptotic scans.

Each identity equates two or three independently computable expressions:
theta-type series, digamma/Hurwitz-type series, and integrals of
Gamma * Xi products against cosine-like kernels along the critical
line.  ``verify_identity`` evaluates every side from scratch (series
sides never reuse integral machinery and vice versa), assembles the
pairwise residuals, and reports pass/fail against a per-identity
tolerance.  ``scan_asymptotic`` sweeps the alpha grid of the
large-alpha expansion of the Delta_2-kernel integral and fits the
log-log decay slope of the defect.

Conventions used throughout:

  * beta is never an input: it is derived as 1/alpha so that
    alpha*beta = 1 holds exactly in binary floating point.
  * the beta side of the w-deformed relations carries iw wherever the
    alpha side carries w (the F(alpha, w) = F(beta, iw) pairing).
  * series are truncated at M = 200 terms plus an analytic power-law
    tail; theta series stop on term underflow.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

from mpmath import mp, mpf, mpc

from . import classical as cf
from . import generalized as gf
from .numerics import (
    DecayHint,
    DomainError,
    PrecisionConfig,
    QuadratureResult,
    SeriesResult,
    integrate_finite,
    integrate_semi_infinite,
    sum_with_tail,
    working_precision,
)

__all__ = [
    "IDENTITY_NAMES",
    "IdentityCase",
    "ResidualReport",
    "AsymptoticScanReport",
    "identity_catalog",
    "verify_identity",
    "scan_asymptotic",
    "emit_report",
    "parse_report",
]

SERIES_TERMS = 200  # direct terms before the analytic tail kicks in

# name -> (needs, default tolerance, default digits, summary)
_CATALOG = {
    "jacobi-theta": ((), "1e-10", 30, "theta series at alpha equals theta series at 1/alpha"),
    "hardy-theta": ((), "1e-10", 30, "theta series pair plus the Xi/(1+t^2) cosine integral"),
    "generalized-theta": (("w",), "1e-8", 30, "w-deformed theta pair plus the nabla-kernel integral"),
    "ramanujan-1915": (("n",), "1e-6", 25, "|Gamma Xi|^2 cos(nt) integral equals a Bose-kernel product integral"),
    "ramanujan-lost": ((), "1e-10", 30, "digamma-series pair plus the |Gamma Xi|^2 cosine integral"),
    "hurwitz-modular": (("z",), "1e-10", 30, "Hurwitz-phi series pair plus the Gamma Gamma Xi Xi cosine integral"),
    "generalized-ramanujan": (("w",), "1e-3", 20, "lambda_w series pair (w <-> iw) plus the 1F1-kernel integral"),
    "full-modular": (("z", "w"), "1e-4", 20, "phi_w series pair (w <-> iw) plus the Delta_2-kernel integral"),
    "bessel-sum": (("z", "w"), "1e-4", 18, "divisor-weighted 1K integrals against the phi_w series"),
}

IDENTITY_NAMES = tuple(_CATALOG)


def identity_catalog():
    """Identity id -> (required params, default tolerance, default digits, summary)."""
    return dict(_CATALOG)


@dataclass(frozen=True)
class IdentityCase:
    name: str
    alpha: float = 1.0
    w: complex = 0.0
    z: complex = 0.0
    n: float = 0.0
    cfg: Optional[PrecisionConfig] = None
    tolerance: Optional[float] = None

    def __post_init__(self):
        if self.name not in _CATALOG:
            raise DomainError(
                f"unknown identity {self.name!r}; valid: {', '.join(IDENTITY_NAMES)}"
            )
        if not self.alpha > 0:
            raise DomainError("hypothesis violated: alpha must be positive (beta = 1/alpha)")

    def resolved(self):
        needs, tol, digits, _ = _CATALOG[self.name]
        cfg = self.cfg or PrecisionConfig(working_digits=digits)
        tolerance = mpf(self.tolerance) if self.tolerance is not None else mpf(tol)
        return cfg, tolerance


@dataclass
class ResidualReport:
    identity: str
    params: Dict[str, str]
    sides: List[Tuple[str, mpc]]
    abs_residuals: Dict[str, mpf]
    rel_residual: mpf
    tolerance: mpf
    passed: bool
    truncation: Dict[str, SeriesResult] = field(default_factory=dict)
    quadrature: Dict[str, QuadratureResult] = field(default_factory=dict)
    digits: int = 30

    def __eq__(self, other):
        if not isinstance(other, ResidualReport):
            return NotImplemented
        return emit_report(self, "json") == emit_report(other, "json")


@dataclass
class AsymptoticScanReport:
    z: mpc
    w: mpc
    m: int
    alpha_grid: List[mpf]
    integral_values: List[mpc]
    expansion_values: List[mpc]
    defects: List[mpf]
    fitted_slope: float
    predicted_slope: float
    digits: int = 30


# --------------------------------------------------------------------------
# shared side builders
# --------------------------------------------------------------------------

def _theta_series(alpha, q, hyperbolic: bool):
    """sum_{n>=1} e^(-pi alpha^2 n^2) cos(sqrt(pi) alpha n w)  (cosh on the
    conjugate side).  Terms die super-exponentially; stop on underflow."""
    total = mpc(0)
    eps = mpf(10) ** (-mp.dps - 8)
    n = 1
    terms = 0
    while True:
        # cos(sqrt(pi) a n w) via q = w^2 stays exact at w = 0
        arg2 = mp.pi * alpha * alpha * n * n * (-1) * 0  # placeholder keeps n int
        wfac = _cos_sqrtq(mp.pi * alpha * alpha * n * n, q, hyperbolic)
        t = mp.exp(-mp.pi * alpha * alpha * n * n) * wfac
        total += t
        terms = n
        if abs(t) < eps:
            break
        n += 1
    return total, terms


def _cos_sqrtq(pan2, q, hyperbolic):
    """cos(sqrt(pi) alpha n w) expressed through (pi alpha^2 n^2) * q.

    cos(y w) with y = sqrt(pi) alpha n is even in w, hence a function of
    y^2 q = pi alpha^2 n^2 q; cosh for the hyperbolic side flips the sign.
    """
    u = pan2 * q
    if hyperbolic:
        u = -u
    # cos(sqrt(u)); for u < 0 this is cosh(sqrt(-u)); mp.cos of a complex
    # sqrt does both, but the real forms avoid spurious imaginaries
    if isinstance(u, mpc) and u.imag != 0:
        return mp.cos(mp.sqrt(u))
    u = u.real if isinstance(u, mpc) else u
    if u >= 0:
        return mp.cos(mp.sqrt(u))
    return mp.cosh(mp.sqrt(-u))


def _theta_side(alpha, w, deformed: bool, conjugate: bool):
    """sqrt(alpha) ( e^(-+w^2/8)/(2 alpha) - e^(+-w^2/8) * theta-series ).

    ``conjugate`` marks the beta side, which swaps the two e^(w^2/8)
    prefactors and turns cos into cosh.
    """
    alpha = mpf(alpha)
    q = gf._realify(mpc(w) ** 2)
    if not deformed:
        q = mpf(0)
    e = mp.exp(q / 8)
    series, terms = _theta_series(alpha, q, hyperbolic=conjugate)
    if conjugate:
        val = mp.sqrt(alpha) * (e / (2 * alpha) - series / e)
    else:
        val = mp.sqrt(alpha) * (1 / (e * 2 * alpha) - e * series)
    return gf._realify(val), SeriesResult(gf._realify(series), mpf(10) ** (-mp.dps - 8), terms)


def _osc_breakpoints(rate_osc, upto):
    """Panel boundaries every half-period of the oscillatory factor."""
    if rate_osc <= mpf("0.3"):
        step = mpf(4)
    else:
        step = mp.pi / rate_osc / 2
    pts = []
    x = step
    while x < upto:
        pts.append(x)
        x += step
    return pts


def _xi_single_integral(kernel: Callable, alpha, cfg) -> QuadratureResult:
    """integral_0^inf Xi(t/2)/(1+t^2) * kernel(t) dt; decay rate pi/8."""
    def f(t):
        return cf.Xi(t / 2) / (1 + t * t) * kernel(t)

    rate = float(mp.pi) / 8 * 0.9
    tmax = (cfg.working_digits + 14) * 2.40 / rate
    pts = _osc_breakpoints(abs(mp.log(alpha)) / 2, tmax)
    return integrate_semi_infinite(f, 0, DecayHint("exponential", rate=rate), cfg, breakpoints=pts)


def _xi_pair_integral(z, kernel: Callable, alpha, cfg, osc=None) -> QuadratureResult:
    """integral of Gamma((z-1+it)/4) Gamma((z-1-it)/4) Xi((t+iz)/2) Xi((t-iz)/2)
    / ((z+1)^2 + t^2) * kernel(t); decay rate pi/2."""
    z = mpc(z)
    real_out = z.imag == 0

    def f(t):
        gg = mp.gamma((z - 1 + mpc(0, 1) * t) / 4) * mp.gamma((z - 1 - mpc(0, 1) * t) / 4)
        xx = cf.Xi((t + mpc(0, 1) * z) / 2) * cf.Xi((t - mpc(0, 1) * z) / 2)
        v = gg * xx / ((z + 1) ** 2 + t * t) * kernel(t)
        if real_out and isinstance(v, mpc):
            return v.real
        return v

    rate = float(mp.pi) / 2 * 0.9
    tmax = (cfg.working_digits + 14) * 2.40 / rate
    pts = _osc_breakpoints(osc if osc is not None else abs(mp.log(alpha)) / 2, tmax)
    return integrate_semi_infinite(f, 0, DecayHint("exponential", rate=rate), cfg, breakpoints=pts)


def _phi_series_side(alpha, cfg) -> Tuple[mpf, SeriesResult]:
    """sqrt(alpha) { (gamma - log 2 pi alpha)/(2 alpha) + sum phi(n alpha) },
    phi(x) = psi(x) + 1/(2x) - log x  (terms ~ -1/(12 x^2))."""
    alpha = mpf(alpha)

    def term(m):
        x = m * alpha
        return cf.digamma(x) + 1 / (2 * x) - mp.log(x)

    sr = sum_with_tail(term, "power", cfg, power=2.0,
                       max_terms=SERIES_TERMS, min_terms=SERIES_TERMS)
    head = (mp.euler - mp.log(2 * mp.pi * alpha)) / (2 * alpha)
    return mp.sqrt(alpha) * (head + sr.value.real), sr


def _hurwitz_phi_side(z, alpha, cfg) -> Tuple[mpc, SeriesResult]:
    alpha = mpf(alpha)
    z = gf._realify(mpc(z))

    def term(m):
        return gf.phi_classical(z, m * alpha)

    sr = sum_with_tail(term, "power", cfg, power=float(mp.re(z)) + 2.0,
                       max_terms=SERIES_TERMS, min_terms=SERIES_TERMS)
    bracket = sr.value - cf.zeta_complex(z + 1) / (2 * alpha ** (z + 1)) \
        - cf.zeta_complex(z) / (alpha * z)
    return gf._realify(alpha ** ((z + 1) / 2) * bracket), sr


def _lambda_series_side(alpha, w, cfg) -> Tuple[mpc, SeriesResult]:
    """sqrt(alpha) { (gamma - log 2 pi alpha)/(2 alpha) C(w) + B(w)/(2 alpha)
    + sum lambda_w(m alpha) }  -- the alpha side of the deformed relation."""
    alpha = mpf(alpha)

    def term(m):
        return gf.lambda_w(m * alpha, w, cfg)

    sr = sum_with_tail(term, "power", cfg, power=2.0,
                       max_terms=SERIES_TERMS, min_terms=SERIES_TERMS)
    head = gf.l1_limit(w, alpha)
    return gf._realify(mp.sqrt(alpha) * (head + sr.value)), sr


def _phi_w_series_side(z, alpha, w, cfg) -> Tuple[mpc, SeriesResult]:
    alpha = mpf(alpha)
    z = gf._realify(mpc(z))

    def term(m):
        return gf.phi_w(z, m * alpha, w, cfg)

    sr = sum_with_tail(term, "power", cfg, power=float(mp.re(z)) + 2.0,
                       max_terms=SERIES_TERMS, min_terms=SERIES_TERMS)
    q = gf._realify(mpc(w) ** 2)
    Az = gf.coefficient_A(z, w)
    Amz = gf.coefficient_A(-z, w)
    bracket = sr.value - cf.zeta_complex(z + 1) * Az / (2 * alpha ** (z + 1)) \
        - cf.zeta_complex(z) * Amz / (alpha * z)
    return gf._realify(alpha ** ((z + 1) / 2) * bracket), sr


# --------------------------------------------------------------------------
# per-identity verifiers
# --------------------------------------------------------------------------

def _verify_theta(case: IdentityCase, deformed: bool, with_integral: bool):
    cfg, tol = case.resolved()
    alpha = mpf(case.alpha)
    beta = 1 / alpha
    w = mpc(case.w) if deformed else mpf(0)
    with working_precision(cfg):
        sides = []
        trunc = {}
        quad = {}
        va, sa = _theta_side(alpha, w, deformed, conjugate=False)
        vb, sb = _theta_side(beta, w, deformed, conjugate=True)
        sides.append(("series-alpha", va))
        sides.append(("series-beta", vb))
        trunc["series-alpha"] = sa
        trunc["series-beta"] = sb
        if with_integral:
            if deformed:
                def kernel(t):
                    return gf.kernel_nabla(alpha, w, (1 + mpc(0, 1) * t) / 2)
                pref = 1 / mp.pi
            else:
                def kernel(t):
                    return 2 * mp.cos(t / 2 * mp.log(alpha))
                pref = 1 / mp.pi
            qr = _xi_single_integral(kernel, alpha, cfg)
            sides.append(("xi-integral", gf._realify(pref * qr.value)))
            quad["xi-integral"] = qr
    return _assemble(case, cfg, tol, sides, trunc, quad)


def _verify_ramanujan_1915(case: IdentityCase):
    cfg, tol = case.resolved()
    n = mpf(case.n)
    if n < 0:
        raise DomainError("hypothesis violated: ramanujan-1915 needs n >= 0")
    with working_precision(cfg):
        lhs = _xi_pair_integral(
            0, lambda t: mp.cos(n * t), mp.exp(2 * n), cfg, osc=max(n, mpf("0.1"))
        )

        # right side: pi^(3/2) * int of the paired Bose kernels; the
        # integrand decays only like 1/x^2, so integrate to T and add the
        # exact 1/T tail of the product of the -1/y parts.
        en, emn = mp.exp(n), mp.exp(-n)

        def bose(y):
            if y < mpf("1e-4"):
                return -mpf(1) / 2 + y / 12 - y ** 3 / 720
            return 1 / mp.expm1(y) - 1 / y

        def f(x):
            return bose(x * en) * bose(x * emn)

        T = (cfg.working_digits + 12) * mpf("2.31") * mp.exp(abs(n))
        qr = integrate_finite(f, 0, T, cfg, breakpoints=[1, 5, 20, T / 4])
        rhs_val = mp.pi ** mpf("1.5") * (qr.value + 1 / T)
        sides = [
            ("xi-integral", gf._realify(lhs.value)),
            ("bose-product-integral", gf._realify(rhs_val)),
        ]
        quad = {"xi-integral": lhs, "bose-product-integral": qr}
    return _assemble(case, cfg, tol, sides, {}, quad)


def _verify_ramanujan_lost(case: IdentityCase):
    cfg, tol = case.resolved()
    alpha = mpf(case.alpha)
    beta = 1 / alpha
    with working_precision(cfg):
        va, sa = _phi_series_side(alpha, cfg)
        vb, sb = _phi_series_side(beta, cfg)
        qr = _xi_pair_integral(0, lambda t: mp.cos(t / 2 * mp.log(alpha)), alpha, cfg)
        vi = -qr.value / mp.pi ** mpf("1.5")
        sides = [
            ("series-alpha", va),
            ("series-beta", vb),
            ("xi-integral", gf._realify(vi)),
        ]
    return _assemble(case, cfg, tol, sides,
                     {"series-alpha": sa, "series-beta": sb}, {"xi-integral": qr})


def _verify_hurwitz_modular(case: IdentityCase):
    cfg, tol = case.resolved()
    alpha = mpf(case.alpha)
    beta = 1 / alpha
    z = gf._realify(mpc(case.z))
    if z == 0:
        raise DomainError("hypothesis violated: z=0 is the ramanujan-lost case")
    if not (-1 < mp.re(z) < 1):
        raise DomainError("hypothesis violated: hurwitz-modular needs -1 < Re z < 1")
    with working_precision(cfg):
        va, sa = _hurwitz_phi_side(z, alpha, cfg)
        vb, sb = _hurwitz_phi_side(z, beta, cfg)
        qr = _xi_pair_integral(z, lambda t: mp.cos(t / 2 * mp.log(alpha)), alpha, cfg)
        pref = 8 * (4 * mp.pi) ** ((z - 3) / 2) / mp.gamma(z + 1)
        sides = [
            ("series-alpha", va),
            ("series-beta", vb),
            ("xi-integral", gf._realify(pref * qr.value)),
        ]
    return _assemble(case, cfg, tol, sides,
                     {"series-alpha": sa, "series-beta": sb}, {"xi-integral": qr})


def _verify_generalized_ramanujan(case: IdentityCase):
    cfg, tol = case.resolved()
    alpha = mpf(case.alpha)
    beta = 1 / alpha
    w = gf._realify(mpc(case.w))
    iw = gf._realify(mpc(0, 1) * w)
    with working_precision(cfg):
        va, sa = _lambda_series_side(alpha, w, cfg)
        vb, sb = _lambda_series_side(beta, iw, cfg)
        q = gf._realify(mpc(w) ** 2)

        def kernel(t):
            f_plus = cf.hyp1f1((3 + mpc(0, 1) * t) / 4, mpf(3) / 2, -q / 4)
            f_minus = cf.hyp1f1((3 - mpc(0, 1) * t) / 4, mpf(3) / 2, -q / 4)
            v = alpha ** (mpc(0, 1) * t / 2) * f_plus ** 2 \
                + alpha ** (-mpc(0, 1) * t / 2) * f_minus ** 2
            return v.real if (isinstance(v, mpc) and not isinstance(q, mpc)) else v

        qr = _xi_pair_integral(0, kernel, alpha, cfg, osc=max(abs(mp.log(alpha)) / 2, mpf("0.5")))
        vi = -mp.exp(q / 4) / (2 * mp.pi ** mpf("1.5")) * qr.value
        sides = [
            ("series-alpha-w", va),
            ("series-beta-iw", vb),
            ("xi-integral", gf._realify(vi)),
        ]
    return _assemble(case, cfg, tol, sides,
                     {"series-alpha-w": sa, "series-beta-iw": sb}, {"xi-integral": qr})


def _verify_full_modular(case: IdentityCase):
    cfg, tol = case.resolved()
    alpha = mpf(case.alpha)
    beta = 1 / alpha
    z = gf._realify(mpc(case.z))
    w = gf._realify(mpc(case.w))
    iw = gf._realify(mpc(0, 1) * w)
    if not (0 < mp.re(z) < 1):
        raise DomainError(
            "hypothesis violated: full-modular runs on 0 < Re z < 1 "
            "(direct-series reachability of zeta_w)"
        )
    with working_precision(cfg):
        va, sa = _phi_w_series_side(z, alpha, w, cfg)
        vb, sb = _phi_w_series_side(z, beta, iw, cfg)

        def kernel(t):
            return gf.kernel_delta2(alpha, z / 2, w, (1 + mpc(0, 1) * t) / 2)

        qr = _xi_pair_integral(z, kernel, alpha, cfg)
        pref = 2 ** (z - 1) * mp.pi ** ((z - 3) / 2) / mp.gamma(z + 1)
        sides = [
            ("series-alpha-w", va),
            ("series-beta-iw", vb),
            ("xi-integral", gf._realify(pref * qr.value)),
        ]
    return _assemble(case, cfg, tol, sides,
                     {"series-alpha-w": sa, "series-beta-iw": sb}, {"xi-integral": qr})


def _verify_bessel_sum(case: IdentityCase):
    cfg, tol = case.resolved()
    alpha = mpf(case.alpha)
    z = gf._realify(mpc(case.z))
    w = gf._realify(mpc(case.w))
    iw = gf._realify(mpc(0, 1) * w)
    if not (0 < mp.re(z) < 1):
        raise DomainError("hypothesis violated: bessel-sum needs 0 < Re z < 1")
    with working_precision(cfg):
        q = gf._realify(mpc(w) ** 2)
        # -- left side: the n-sum is folded inside the x-integral so each
        #    (expensive) 1K value is shared by all n; truncation at N with
        #    the exact sigma-tail sum_{n>N} sigma_{-z}(n) n^{-2k}
        #    = zeta(2k) zeta(2k+z) - partial.
        T = (cfg.working_digits + 10) * mpf("2.31") / (2 * alpha)
        N = max(20, int(1.4 * T / float(mp.pi)) + 1)
        sig = [cf.divisor_sigma(z, n) for n in range(1, N + 1)]
        sig_partial = {}

        def sigma_tail_weight(k):
            # sum_{n>N} sigma_{-z}(n) n^(-2k)
            got = sig_partial.get(k)
            if got is None:
                got = cf.zeta_complex(2 * k) * cf.zeta_complex(2 * k + z) \
                    - mp.fsum(sig[n - 1] * mpf(n) ** (-2 * k) for n in range(1, N + 1))
                sig_partial[k] = got
            return got

        def inner_sum(x):
            y2 = x * x / (mp.pi * mp.pi)
            total = mpc(0)
            for n in range(1, N + 1):
                total += sig[n - 1] * (cf.hyp2f1(1, z / 2, mpf(1) / 2, -y2 / (n * n)) - 1)
            # tail over n > N via the 2F1 series in 1/n^2
            ck = mpf(1)
            yk = mpf(1)
            for k in range(1, 200):
                ck = ck * (z / 2 + k - 1) / ((mpf(1) / 2 + k - 1))  # (1)_k(z/2)_k/((1/2)_k k!) stepwise
                yk = yk * (-y2)
                t = ck * yk * sigma_tail_weight(k)
                total += t
                if abs(t) < mpf(10) ** (-mp.dps - 4):
                    break
            return total

        k_cfg = PrecisionConfig(working_digits=max(16, cfg.working_digits - 2))

        def f(x):
            kval = gf.k1_bessel(z / 2, iw, 2 * alpha * x, k_cfg)
            return mp.exp(-q / 2) * kval * inner_sum(x) * x ** ((z - 2) / 2)

        qr = integrate_finite(f, 0, T, cfg, breakpoints=[T / 16, T / 4, T / 2])
        lhs = -mp.gamma(z / 2) / mp.pi * qr.value

        # -- right side: phi_w series
        sr = None

        def term(m):
            return gf.phi_w(z, m * alpha, w, cfg)

        sr = sum_with_tail(term, "power", cfg, power=float(mp.re(z)) + 2.0,
                           max_terms=SERIES_TERMS, min_terms=SERIES_TERMS)
        rhs = alpha ** (z / 2) * mp.gamma(z + 1) * mp.exp(-q / 4) / 2 ** (z + 1) * sr.value
        sides = [
            ("bessel-integral-sum", gf._realify(lhs)),
            ("phi-w-series", gf._realify(rhs)),
        ]
    return _assemble(case, cfg, tol, sides, {"phi-w-series": sr},
                     {"bessel-integral-sum": qr})


_VERIFIERS = {
    "jacobi-theta": lambda c: _verify_theta(c, deformed=False, with_integral=False),
    "hardy-theta": lambda c: _verify_theta(c, deformed=False, with_integral=True),
    "generalized-theta": lambda c: _verify_theta(c, deformed=True, with_integral=True),
    "ramanujan-1915": _verify_ramanujan_1915,
    "ramanujan-lost": _verify_ramanujan_lost,
    "hurwitz-modular": _verify_hurwitz_modular,
    "generalized-ramanujan": _verify_generalized_ramanujan,
    "full-modular": _verify_full_modular,
    "bessel-sum": _verify_bessel_sum,
}


def verify_identity(case: IdentityCase) -> ResidualReport:
    """Evaluate every side of the named identity and report residuals."""
    return _VERIFIERS[case.name](case)


def _assemble(case, cfg, tol, sides, trunc, quad) -> ResidualReport:
    scale = max(abs(v) for _, v in sides)
    abs_res = {}
    for i in range(len(sides)):
        for j in range(i + 1, len(sides)):
            li, vi = sides[i]
            lj, vj = sides[j]
            abs_res[f"{li}|{lj}"] = abs(vi - vj)
    rel = max(abs_res.values()) / scale if scale > 0 else max(abs_res.values())
    params = {"alpha": _numstr(mpf(case.alpha), cfg.working_digits)}
    needs = _CATALOG[case.name][0]
    if "w" in needs:
        params["w"] = _numstr(mpc(case.w), cfg.working_digits)
    if "z" in needs:
        params["z"] = _numstr(mpc(case.z), cfg.working_digits)
    if "n" in needs:
        params["n"] = _numstr(mpf(case.n), cfg.working_digits)
    return ResidualReport(
        identity=case.name,
        params=params,
        sides=sides,
        abs_residuals=abs_res,
        rel_residual=mpf(rel),
        tolerance=mpf(tol),
        passed=bool(rel <= tol),
        truncation=trunc,
        quadrature=quad,
        digits=cfg.working_digits,
    )


# --------------------------------------------------------------------------
# asymptotic scan
# --------------------------------------------------------------------------

def scan_asymptotic(z, w, m: int, alpha_grid, cfg: Optional[PrecisionConfig] = None
                    ) -> AsymptoticScanReport:
    """Defect scan of the large-alpha expansion of the Delta_2 integral.

    For each alpha in the grid the integral

        J(alpha) = int_0^inf GG XiXi Delta_2(alpha, z/2, w, (1+it)/2)
                   / ((z+1)^2 + t^2) dt

    is compared with the m-term expansion (leading bracket plus the
    k = 1..m-1 correction sum); the defect decay slope is fitted by
    least squares in log-log coordinates.  The reported predicted slope
    is -Re(z)/2 - 2m.  z = 0 is allowed: the leading bracket goes
    through its removable-singularity value -2 pi^(3/2) sqrt(alpha) L1(w, alpha).
    """
    if cfg is None:
        cfg = PrecisionConfig(working_digits=18)
    alpha_grid = [mpf(a) for a in alpha_grid]
    if len(alpha_grid) < 3:
        raise DomainError("alpha grid needs at least 3 points for a slope fit")
    if sorted(alpha_grid) != alpha_grid:
        raise DomainError("alpha grid must be increasing")
    if alpha_grid[0] < 4:
        raise DomainError("alpha grid minimum is 4 (expansion regime)")
    z = gf._realify(mpc(z))
    if not (-1 < mp.re(z) < 1):
        raise DomainError("scan needs -1 < Re z < 1 (z = 0 allowed)")
    if m < 1:
        raise DomainError("expansion order m must be >= 1")
    integrals = []
    expansions = []
    defects = []
    with working_precision(cfg):
        for alpha in alpha_grid:
            def kernel(t, alpha=alpha):
                return gf.kernel_delta2(alpha, z / 2, w, (1 + mpc(0, 1) * t) / 2)

            qr = _xi_pair_integral(z, kernel, alpha, cfg)
            J = gf._realify(qr.value)
            E = expansion_value(z, w, alpha, m)
            integrals.append(J)
            expansions.append(E)
            defects.append(abs(J - E))
        xs = [float(mp.log(a)) for a in alpha_grid]
        ys = [float(mp.log(d)) if d > 0 else float(mp.log(mpf(10) ** (-mp.dps))) for d in defects]
        n = len(xs)
        xbar = sum(xs) / n
        ybar = sum(ys) / n
        slope = sum((x - xbar) * (y - ybar) for x, y in zip(xs, ys)) / sum(
            (x - xbar) ** 2 for x in xs
        )
    return AsymptoticScanReport(
        z=z,
        w=gf._realify(mpc(w)),
        m=m,
        alpha_grid=alpha_grid,
        integral_values=integrals,
        expansion_values=expansions,
        defects=defects,
        fitted_slope=float(slope),
        predicted_slope=float(-mp.re(z) / 2 - 2 * m),
        digits=cfg.working_digits,
    )


def expansion_value(z, w, alpha, m: int):
    """The m-term large-alpha expansion of the Delta_2-kernel integral."""
    z = gf._realify(mpc(z))
    alpha = mpf(alpha)
    q = gf._realify(mpc(w) ** 2)
    if z == 0:
        lead = -2 * mp.pi ** mpf("1.5") * mp.sqrt(alpha) * gf.l1_limit(w, alpha)
    else:
        bracket = cf.zeta_complex(z + 1) * gf.coefficient_A(z, w) / (2 * alpha ** ((z + 1) / 2)) \
            + cf.zeta_complex(z) * gf.coefficient_A(-z, w) / (z * alpha ** ((1 - z) / 2))
        lead = -mp.gamma(z + 1) / (2 ** (z - 1) * mp.pi ** ((z - 3) / 2)) * bracket
    corr = mpc(0)
    for k in range(1, m):
        corr += (
            (-1) ** k
            * mp.gamma(z + 2 * k)
            / (2 * mp.pi * alpha) ** (2 * k)
            * cf.zeta_complex(2 * k)
            * cf.zeta_complex(z + 2 * k)
            * cf.hyp1f1((z + 1) / 2 + k, mpf(3) / 2, q / 4)
            * cf.hyp1f1(mpf(1) / 2 + k, mpf(3) / 2, q / 4)
        )
    corr *= -mp.exp(-q / 4) * alpha ** ((1 - z) / 2) / (2 ** (z - 2) * mp.pi ** ((z - 3) / 2))
    return gf._realify(lead + corr)


# --------------------------------------------------------------------------
# serialization
# --------------------------------------------------------------------------

def _numstr(v, digits):
    """Decimal string of an mp number (no binary float loss at that size)."""
    return mp.nstr(mpf(v) if not isinstance(v, (mpc, complex)) else mpc(v),
                   digits, strip_zeros=True)


def _complex_fields(v, digits):
    v = mpc(v)
    return {
        "re": mp.nstr(v.real, digits, strip_zeros=True),
        "im": mp.nstr(v.imag, digits, strip_zeros=True),
    }


def emit_report(report, fmt: str = "json") -> str:
    """Serialize a report deterministically (decimal-string numerics)."""
    if fmt not in ("json", "csv"):
        raise DomainError(f"unknown format {fmt!r}")
    if isinstance(report, AsymptoticScanReport):
        return _emit_scan(report, fmt)
    if isinstance(report, ResidualReport):
        return _emit_residual(report, fmt)
    raise DomainError(f"cannot emit {type(report).__name__}")


def _emit_residual(r: ResidualReport, fmt: str) -> str:
    d = r.digits
    if fmt == "csv":
        buf = io.StringIO()
        wtr = csv.writer(buf, lineterminator="\n")
        wtr.writerow(["identity", "side", "re", "im", "rel_residual", "pass"])
        for label, v in r.sides:
            cfs = _complex_fields(v, d)
            wtr.writerow([r.identity, label, cfs["re"], cfs["im"],
                          mp.nstr(r.rel_residual, 6), str(r.passed).lower()])
        return buf.getvalue()
    diagnostics = {
        "tolerance": mp.nstr(r.tolerance, 6),
        "digits": r.digits,
        "abs_residuals": {k: mp.nstr(v, 6) for k, v in sorted(r.abs_residuals.items())},
        "truncation": {
            k: {"terms_used": s.terms_used, "tail_estimate": mp.nstr(s.tail_estimate, 6)}
            for k, s in sorted(r.truncation.items())
        },
        "quadrature": {
            k: {
                "error_estimate": mp.nstr(qr.error_estimate, 6),
                "evals": qr.evals,
                "converged": qr.converged,
            }
            for k, qr in sorted(r.quadrature.items())
        },
    }
    payload = {
        "identity": r.identity,
        "params": r.params,
        "sides": [dict(label=label, **_complex_fields(v, d)) for label, v in r.sides],
        "rel_residual": mp.nstr(r.rel_residual, 6),
        "pass": r.passed,
        "diagnostics": diagnostics,
    }
    return json.dumps(payload, indent=2, sort_keys=False) + "\n"


def _emit_scan(r: AsymptoticScanReport, fmt: str) -> str:
    d = r.digits
    if fmt == "json":
        payload = {
            "z": _complex_fields(r.z, d),
            "w": _complex_fields(r.w, d),
            "m": r.m,
            "alpha": [mp.nstr(a, d) for a in r.alpha_grid],
            "integral": [mp.nstr(mpc(v).real, d) for v in r.integral_values],
            "expansion": [mp.nstr(mpc(v).real, d) for v in r.expansion_values],
            "defect": [mp.nstr(v, 6) for v in r.defects],
            "fitted_slope": repr(r.fitted_slope),
            "predicted_slope": repr(r.predicted_slope),
        }
        return json.dumps(payload, indent=2) + "\n"
    buf = io.StringIO()
    wtr = csv.writer(buf, lineterminator="\n")
    wtr.writerow(["alpha", "integral", "expansion", "defect", "slope_fit"])
    for a, j, e, df in zip(r.alpha_grid, r.integral_values, r.expansion_values, r.defects):
        wtr.writerow([
            mp.nstr(a, d),
            mp.nstr(mpc(j).real, d),
            mp.nstr(mpc(e).real, d),
            mp.nstr(df, 6),
            repr(r.fitted_slope),
        ])
    return buf.getvalue()


def parse_report(text: str) -> ResidualReport:
    """Inverse of emit_report(..., 'json') for residual reports."""
    payload = json.loads(text)
    diag = payload["diagnostics"]
    digits = int(diag["digits"])
    with mp.workdps(digits + 10):
        sides = [
            (s["label"], mpc(mpf(s["re"]), mpf(s["im"]))) for s in payload["sides"]
        ]
        report = ResidualReport(
            identity=payload["identity"],
            params=dict(payload["params"]),
            sides=[(l, gf._realify(v)) for l, v in sides],
            abs_residuals={k: mpf(v) for k, v in diag["abs_residuals"].items()},
            rel_residual=mpf(payload["rel_residual"]),
            tolerance=mpf(diag["tolerance"]),
            passed=bool(payload["pass"]),
            truncation={
                k: SeriesResult(mpf(0), mpf(v["tail_estimate"]), int(v["terms_used"]))
                for k, v in diag["truncation"].items()
            },
            quadrature={
                k: QuadratureResult(
                    mpf(0), mpf(v["error_estimate"]), int(v["evals"]), bool(v["converged"])
                )
                for k, v in diag["quadrature"].items()
            },
            digits=digits,
        )
    return report
