"""The Dirichlet polynomial ``sum_{n <= X} a(n) n**-s`` and its derivative.

Only indices with ``a(n) != 0`` are stored.  Complex values are plain Python
``complex``; ``s`` may be given as a complex number or as ``(sigma, t)``.
"""
from __future__ import annotations

import math
from functools import cached_property
from dataclasses import dataclass, field as dc_field

import mpmath
import numpy as np

from . import kernels
from .coefficients import CoefficientTable, build_coefficient_table
from .cyclotomic import CyclotomicField
from .errors import DomainError, RangeError

# above this |t * log n| the phase is reduced mod 2*pi in extended precision
PHASE_REDUCTION_THRESHOLD = 2.0**50
_EXP_LIMIT = 709.0


@dataclass(frozen=True)
class PartialSum:
    n: np.ndarray = dc_field(repr=False)
    coef: np.ndarray = dc_field(repr=False)
    log_n: np.ndarray = dc_field(repr=False)
    X: float
    q: int | None = None

    def __post_init__(self):
        if self.n.size == 0 or self.n[0] != 1:
            raise DomainError("a partial sum must start with the term n = 1")
        if np.any(np.diff(self.n) <= 0):
            raise DomainError("indices must be strictly increasing")
        for arr in (self.n, self.coef, self.log_n):
            arr.flags.writeable = False

    @classmethod
    def from_table(cls, table: CoefficientTable) -> "PartialSum":
        idx = table.nonzero_indices()
        return cls.from_terms(idx, table.values[idx], table.X, q=table.q)

    @classmethod
    def from_terms(cls, n, coef, X=None, q=None) -> "PartialSum":
        n = np.asarray(n, dtype=np.int64)
        coef = np.asarray(coef, dtype=np.int64)
        keep = coef != 0
        n, coef = n[keep], coef[keep]
        return cls(
            n=n,
            coef=coef.astype(np.float64),
            log_n=np.log(n.astype(np.float64)),
            X=float(n[-1]) if X is None else X,
            q=q,
        )

    @property
    def N(self) -> int:
        return int(self.n[-1])

    @property
    def a_N(self) -> int:
        return int(self.coef[-1])

    def __len__(self):
        return int(self.n.size)

    @cached_property
    def _log_coef_mass(self) -> float:
        return math.log(float(self.coef.max())) + math.log(len(self))

    def terms(self):
        """Iterate ``(n, a_n, log n)``."""
        for n, a, ln in zip(self.n.tolist(), self.coef.tolist(), self.log_n.tolist()):
            yield n, int(a), ln

    def __call__(self, s):
        return evaluate(self, s)


def build_partial_sum(field: CyclotomicField, X) -> PartialSum:
    return PartialSum.from_table(build_coefficient_table(field, X))


def leading_index(P: PartialSum) -> int:
    """Largest retained ``n``, i.e. the largest ``n <= X`` with ``a(n) != 0``."""
    return P.N


def _split(s) -> tuple[float, float]:
    if isinstance(s, tuple):
        sigma, t = s
    else:
        s = complex(s)
        sigma, t = s.real, s.imag
    sigma, t = float(sigma), float(t)
    if not (math.isfinite(sigma) and math.isfinite(t)):
        raise DomainError("s must be finite")
    return sigma, t


def _check_range(P: PartialSum, sigma: float):
    # largest term magnitude is a(n) n**-sigma at n = N (sigma < 0) or n = 1
    worst = max(0.0, -sigma * float(P.log_n[-1])) + P._log_coef_mass
    if worst > _EXP_LIMIT:
        raise RangeError(f"|zeta_K,X| overflows double precision at sigma = {sigma}")


def _reduced_eval(P: PartialSum, power: int, sigma: float, t: float) -> complex:
    with mpmath.workprec(53 + 128):
        two_pi = 2 * mpmath.pi
        tt = mpmath.mpf(t)
        phases = [float(mpmath.fmod(tt * mpmath.log(int(n)), two_pi)) for n in P.n.tolist()]
    mag = P.coef * np.exp(-sigma * P.log_n)
    if power:
        mag = mag * (-P.log_n) ** power
    ph = np.asarray(phases)
    return complex(math.fsum((mag * np.cos(ph)).tolist()), -math.fsum((mag * np.sin(ph)).tolist()))


def _eval(P: PartialSum, power: int, s) -> complex:
    sigma, t = _split(s)
    _check_range(P, sigma)
    if abs(t) * float(P.log_n[-1]) > PHASE_REDUCTION_THRESHOLD:
        return _reduced_eval(P, power, sigma, t)
    re, im = kernels.active.eval_sum(P.log_n, P.coef, power, sigma, t)
    return complex(re, im)


def evaluate(P: PartialSum, s) -> complex:
    """``zeta_{K,X}(s)`` with compensated accumulation of real and imaginary parts.

    >>> P = PartialSum.from_terms([1, 2], [1, 1])
    >>> evaluate(P, 1)
    (1.5+0j)
    """
    return _eval(P, 0, s)


def evaluate_derivative(P: PartialSum, s) -> complex:
    """Termwise derivative ``-sum a(n) log(n) n**-s``."""
    return _eval(P, 1, s)


def imag_on_horizontal(P: PartialSum, sigma, T) -> float:
    """``Im zeta_{K,X}(sigma + iT) = -sum a(n) sin(T log n) n**-sigma``."""
    return _eval(P, 0, (sigma, T)).imag


def abs_moment(P: PartialSum, power: int, sigma) -> float:
    """``sum a(n) (log n)**power n**-sigma``; bounds ``|zeta^(power)|`` on ``Re s = sigma``."""
    _check_range(P, float(sigma))
    return kernels.active.abs_moment(P.log_n, P.coef, power, float(sigma))
