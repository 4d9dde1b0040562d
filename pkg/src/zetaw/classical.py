"""The classical special-function stack.

Gamma, digamma, erf/erfi, confluent and Gauss hypergeometrics, Riemann
and Hurwitz zeta, the completed xi/Xi pair, J0 and K_nu Bessel
functions, and the divisor sum sigma_{-z}(n).  These are the building
blocks every formula downstream references.

Evaluation is delegated to mpmath (principal branches throughout, which
is also where x^{-s} for x > 0 means exp(-s log x) with the real log);
this module owns the argument contracts, the pole/parameter errors, and
a fast power-series path for the confluent hypergeometric which the
integral kernels call thousands of times per quadrature.
"""

from __future__ import annotations

from mpmath import mp, mpf, mpc

from .numerics import DomainError

__all__ = [
    "PoleError",
    "ParameterError",
    "gamma_complex",
    "digamma",
    "erf_family",
    "erf",
    "erfi",
    "hyp1f1",
    "hyp1f1_param_derivative",
    "hyp2f1",
    "zeta_complex",
    "hurwitz_zeta",
    "xi_function",
    "Xi",
    "bessel_j0",
    "bessel_k",
    "bessel_family",
    "divisor_sigma",
    "harmonic",
]


class PoleError(DomainError):
    """Evaluation requested exactly at a pole."""

    def __init__(self, where, message=None):
        self.pole = where
        super().__init__(message or f"argument is a pole (at {where})")


class ParameterError(DomainError):
    """A function parameter (not the main argument) is out of domain."""


def _is_nonpositive_integer(s) -> bool:
    s = mpc(s)
    if s.imag != 0:
        return False
    r = s.real
    return r <= 0 and r == mp.floor(r)


def gamma_complex(s):
    """Principal-branch Gamma; rejects the poles at 0, -1, -2, ..."""
    if _is_nonpositive_integer(s):
        raise PoleError(s, f"Gamma pole at s={s}")
    return mp.gamma(s)


def digamma(a):
    """psi(a) = Gamma'(a)/Gamma(a); satisfies psi(a+1) = psi(a) + 1/a."""
    if _is_nonpositive_integer(a):
        raise PoleError(a, f"digamma pole at a={a}")
    return mp.digamma(a)


def erf(w):
    return mp.erf(w)


def erfi(w):
    """Imaginary error function; erfi(w) = -i erf(iw)."""
    return mp.erfi(w)


def erf_family(w):
    """Both error functions at once: (erf(w), erfi(w))."""
    return mp.erf(w), mp.erfi(w)


_HYP1F1_SERIES_CAP = 600


def hyp1f1(a, c, x):
    """Confluent hypergeometric 1F1(a; c; x).

    For the small arguments that dominate this codebase (|x| <= 4, which
    covers every kernel: the arguments are w^2/4-sized) a direct
    power-series loop is used -- it is an order of magnitude faster than
    the generic mpmath machinery and exact at x = 0.  Larger arguments
    and series stalls fall back to mpmath.  Large imaginary parameters a
    (the (3+it)/4 of the Xi-integrands) cost only a mild precision guard
    because |a*x| stays desk-scale small.
    """
    if _is_nonpositive_integer(c):
        raise ParameterError(f"1F1 parameter c={c} is a non-positive integer")
    a, c, x = mpc(a), mpc(c), mpc(x)
    if x == 0:
        return mpf(1) if (a.imag == 0 and c.imag == 0) else mpc(1)
    if abs(x) <= 4:
        v = _hyp1f1_series(a, c, x)
        if v is not None:
            return v
    return mp.hyp1f1(a, c, x)


def _hyp1f1_series(a, c, x):
    eps = mpf(10) ** (-mp.dps - 3)
    with mp.extradps(8):
        term = mpc(1)
        total = mpc(1)
        biggest = mpf(1)
        for n in range(_HYP1F1_SERIES_CAP):
            term = term * (a + n) / (c + n) * x / (n + 1)
            total += term
            biggest = max(biggest, abs(term))
            if abs(term) <= eps * (abs(total) + eps) and n >= 3:
                # guard against cancellation eating the extra digits
                if biggest > abs(total) * mpf(10) ** 6:
                    return None
                if total.imag == 0 and a.imag == 0 and c.imag == 0 and x.imag == 0:
                    return total.real
                return +total
        return None


def hyp1f1_param_derivative(sign: int, x):
    """d/dz 1F1(1 + sign*z/2; 3/2; x) at z = 0.

    Equals sign * (1/2) * sum_{n>=0} x^n / (3/2)_n * H_n with the
    harmonic numbers H_n = psi(n+1) + gamma (the n = 0 term vanishes).
    """
    if sign not in (1, -1):
        raise ParameterError("sign must be +1 or -1")
    x = mpc(x)
    eps = mpf(10) ** (-mp.dps - 5)
    poch = mpf(3) / 2  # (3/2)_1
    xn = x
    H = mpf(1)
    total = xn / poch * H
    for n in range(2, 700):
        poch *= mpf(2 * n + 1) / 2
        xn *= x
        H += mpf(1) / n
        t = xn / poch * H
        total += t
        if abs(t) <= eps * (abs(total) + eps):
            break
    total = total / 2
    if x.imag == 0:
        total = total.real
    return sign * total


def hyp2f1(a, b, c, x):
    """Gauss hypergeometric 2F1(a, b; c; x), principal branch.

    mpmath supplies the analytic continuation; the branch cut [1, inf)
    on the real axis is rejected since no formula here needs it.
    """
    if _is_nonpositive_integer(c):
        raise ParameterError(f"2F1 parameter c={c} is a non-positive integer")
    x = mpc(x)
    if x.imag == 0 and x.real >= 1:
        raise DomainError(f"2F1 argument x={x} on the branch cut [1, inf)")
    v = mp.hyp2f1(a, b, c, x)
    if x.imag == 0 and mpc(a).imag == 0 and mpc(b).imag == 0 and mpc(c).imag == 0:
        return v.real if isinstance(v, mpc) else v
    return v


def zeta_complex(s):
    """Riemann zeta, every s except the simple pole at s = 1."""
    if mpc(s) == 1:
        raise PoleError(1, "zeta pole at s=1")
    return mp.zeta(s)


def hurwitz_zeta(s, a):
    """Hurwitz zeta(s, a) for real a > 0; zeta(s, 1) = zeta(s)."""
    if mpc(s) == 1:
        raise PoleError(1, "Hurwitz zeta pole at s=1")
    a = mpf(a)
    if not a > 0:
        raise DomainError(f"hurwitz_zeta needs a > 0, got a={a}")
    return mp.zeta(s, a)


def xi_function(s):
    """Completed zeta  xi(s) = (1/2) s (s-1) pi^(-s/2) Gamma(s/2) zeta(s).

    Entire: the zeta pole at s=1 is killed by (s-1) and the Gamma pole at
    s=0 by s, with xi(0) = xi(1) = 1/2.
    """
    s = mpc(s)
    if s == 0 or s == 1:
        return mpf("0.5")
    v = s * (s - 1) / 2 * mp.pi ** (-s / 2) * mp.gamma(s / 2) * mp.zeta(s)
    return v


def Xi(t):
    """Xi(t) = xi(1/2 + it): real and even for real t.

    Real t returns a real number (the imaginary part of xi on the
    critical line vanishes identically; it is dropped after an internal
    sanity cap).  Complex t is accepted because the pair integrands need
    Xi((t +- iz)/2).
    """
    t = mpc(t)
    v = xi_function(mpf(1) / 2 + mpc(0, 1) * t)
    if t.imag == 0:
        return v.real if isinstance(v, mpc) else v
    return v


def bessel_j0(x):
    """Bessel J0 on the positive axis."""
    x = mpf(x)
    if not x > 0:
        if x == 0:
            return mpf(1)
        raise DomainError(f"bessel_j0 needs x >= 0, got {x}")
    return mp.besselj(0, x)


def bessel_k(nu, x):
    """Modified Bessel K_nu for x > 0 (complex order allowed)."""
    x = mpf(x)
    if not x > 0:
        raise DomainError(f"bessel_k needs x > 0, got {x}")
    return mp.besselk(nu, x)


def bessel_family(kind: str, nu, x):
    """Dispatcher mirroring the library surface: kind in {'J0', 'K'}."""
    if kind == "J0":
        return bessel_j0(x)
    if kind == "K":
        return bessel_k(nu, x)
    raise ParameterError(f"unknown Bessel kind {kind!r}")


def divisor_sigma(z, n: int):
    """sigma_{-z}(n) = sum over divisors d of n of d^(-z), exactly enumerated."""
    if n < 1 or n != int(n):
        raise DomainError(f"divisor_sigma needs a positive integer n, got {n}")
    n = int(n)
    z = mpc(z)
    total = mpc(0)
    d = 1
    while d * d <= n:
        if n % d == 0:
            total += mpf(d) ** (-z)
            e = n // d
            if e != d:
                total += mpf(e) ** (-z)
        d += 1
    if z.imag == 0:
        return total.real
    return total


def harmonic(n: int):
    """H_n = 1 + 1/2 + ... + 1/n = psi(n+1) + gamma (H_0 = 0)."""
    total = mpf(0)
    for k in range(1, n + 1):
        total += mpf(1) / k
    return total
