"""Symbols ``sigma(x, xi)`` of Hermite pseudo-multipliers and a named registry."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np


@dataclass(frozen=True)
class PseudoSymbol:
    """Symbol with declared class parameters ``(m, K, N, rho, delta)``.

    Attributes
    ----------
    func : callable
        ``func(x, xi) -> (Nx, P)`` for points ``x`` of shape ``(Nx, n)``
        and integer multi-indices ``xi`` of shape ``(P, n)``.
    spectral : callable, optional
        ``spectral(lam)`` when the symbol depends on ``lambda_xi`` only.
    dx : callable, optional
        ``dx(x, xi, nu) -> (Nx, P)`` analytic x-derivatives.
    """

    func: Callable
    m: float = 0.0
    K: int = 2
    N: int = 2
    rho: float = 1.0
    delta: float = 0.0
    name: str = "symbol"
    spectral: Optional[Callable] = None
    dx: Optional[Callable] = None

    def __call__(self, x, xi):
        return self.func(np.asarray(x, dtype=float), np.asarray(xi))

    @property
    def x_independent(self):
        return self.spectral is not None


def _lam(xi):
    xi = np.asarray(xi)
    return 2.0 * xi.sum(axis=-1) + xi.shape[-1]


def spectral_symbol(g, name, m=0.0, complex_valued=False):
    """Wrap a function of the eigenvalue as an x-independent symbol."""

    def func(x, xi):
        vals = g(_lam(xi))
        return np.broadcast_to(vals, (x.shape[0], vals.shape[-1])).copy()

    def dx(x, xi, nu):
        if sum(nu) == 0:
            return func(x, xi)
        dtype = complex if complex_valued else float
        return np.zeros((x.shape[0], np.asarray(xi).shape[0]), dtype=dtype)

    return PseudoSymbol(func, m=m, K=4, N=4, name=name, spectral=g, dx=dx)


def constant(value=1.0):
    v = float(value)
    return spectral_symbol(lambda lam: np.full_like(lam, v, dtype=float), f"constant({v:g})", m=0.0)


def power(s):
    """``lambda^s``; class order ``m = 2s``."""
    s = float(s)
    return spectral_symbol(lambda lam: lam ** s, f"power({s:g})", m=2.0 * s)


def riesz_symbol(order):
    """``lambda^{-order/2}``; class order ``m = -order``."""
    a = float(order)
    return spectral_symbol(lambda lam: lam ** (-a / 2), f"riesz({a:g})", m=-a)


def imaginary_power(tau):
    """``lambda^{i tau}``; class order 0."""
    tau = float(tau)
    return spectral_symbol(lambda lam: np.exp(1j * tau * np.log(lam)), f"imaginary-power({tau:g})", 0.0, True)


def heat_symbol(t):
    t = float(t)
    return spectral_symbol(lambda lam: np.exp(-t * lam), f"heat({t:g})", m=0.0)


def hormander(tau=1.0):
    """``(1 + sin(x_1)/2) lambda^{i tau}``: x-dependent, class ``S^0_{1,0}``."""
    tau = float(tau)

    def func(x, xi):
        return (1.0 + 0.5 * np.sin(x[:, :1])) * np.exp(1j * tau * np.log(_lam(xi)))[None, :]

    def dx(x, xi, nu):
        k = nu[0]
        rest = sum(nu) - k
        if rest:
            return np.zeros((x.shape[0], np.asarray(xi).shape[0]), dtype=complex)
        # derivatives of sin cycle with period 4
        dsin = [np.sin, np.cos, lambda u: -np.sin(u), lambda u: -np.cos(u)][k % 4]
        base = 0.5 * dsin(x[:, :1])
        if k == 0:
            base = base + 1.0
        return base * np.exp(1j * tau * np.log(_lam(xi)))[None, :]

    return PseudoSymbol(func, m=0.0, K=4, N=4, name=f"hormander({tau:g})", dx=dx)


def modulation():
    """``exp(i x_1)``: multiplication by a character."""

    def func(x, xi):
        return np.exp(1j * x[:, :1]) * np.ones(np.asarray(xi).shape[0])[None, :]

    def dx(x, xi, nu):
        k = nu[0]
        if sum(nu) - k:
            return np.zeros((x.shape[0], np.asarray(xi).shape[0]), dtype=complex)
        return (1j ** k) * func(x, xi)

    return PseudoSymbol(func, m=0.0, K=4, N=4, name="modulation", dx=dx)


REGISTRY = {
    "constant": constant,
    "power": power,
    "riesz": riesz_symbol,
    "imaginary-power": imaginary_power,
    "heat": heat_symbol,
    "hormander": hormander,
    "modulation": modulation,
}


def get_symbol(key, *params):
    """Look up a built-in symbol by key.

    Raises
    ------
    KeyError
        Listing the available keys.
    """
    try:
        factory = REGISTRY[key]
    except KeyError:
        raise KeyError(f"unknown symbol {key!r}; available: {', '.join(sorted(REGISTRY))}") from None
    return factory(*params)
